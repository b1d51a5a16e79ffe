// Index-2 covers: Schreier rewriting, cover identification, kernel
// verification, and equivalence orbits of characters.
#include <catch2/catch_amalgamated.hpp>

#include "s2xr/covers.hpp"
#include "testutil.hpp"

using s2xr::AutGenerator;
using s2xr::GroupHom2;
using s2xr::KernelPresentation;
using s2xr::ManifoldModel;
using s2xr::Word;

namespace {

ManifoldModel make_model(const std::string& name, const std::string& pres_text,
                         std::vector<std::uint8_t> w1) {
    ManifoldModel m;
    m.name = name;
    m.presentation = s2xr::parse_presentation(pres_text);
    m.w1 = GroupHom2(std::move(w1));
    return m;
}

AutGenerator make_aut(const ManifoldModel& m, const std::vector<std::string>& images,
                      const std::vector<std::string>& inverses) {
    AutGenerator aut;
    for (const std::string& s : images) aut.images.push_back(s2xr::parse_word(s, m.presentation));
    for (const std::string& s : inverses)
        aut.inverse_images.push_back(s2xr::parse_word(s, m.presentation));
    return aut;
}

ManifoldModel model_s2xs1() { return make_model(s2xr::kS2xS1, "<h | >", {0}); }
ManifoldModel model_e() { return make_model(s2xr::kE, "<v, h | v^2 h^-1>", {1, 0}); }
ManifoldModel model_rp2xs1() {
    return make_model(s2xr::kRP2xS1, "<v, h | v^2, v h v^-1 h^-1>", {1, 0});
}
ManifoldModel model_rp3rp3() {
    return make_model(s2xr::kRP3RP3, "<v, h | v^2, (v h)^2>", {0, 0});
}

Word parsed(const ManifoldModel& m, const std::string& text) {
    return s2xr::parse_word(text, m.presentation);
}

}  // namespace

TEST_CASE("catalog_normal_form solves the word problem of each model group") {
    const ManifoldModel e = model_e();
    CHECK(s2xr::is_trivial_in_model(e, parsed(e, "v^2 h^-1")));
    CHECK(s2xr::catalog_normal_form(e, parsed(e, "v h v^-1")) ==
          s2xr::catalog_normal_form(e, parsed(e, "h")));
    CHECK_FALSE(s2xr::is_trivial_in_model(e, parsed(e, "v")));

    const ManifoldModel rp2 = model_rp2xs1();
    CHECK(s2xr::is_trivial_in_model(rp2, parsed(rp2, "v h v^-1 h^-1")));
    CHECK(s2xr::is_trivial_in_model(rp2, parsed(rp2, "v^2")));
    CHECK(s2xr::catalog_normal_form(rp2, parsed(rp2, "h v h^-1")) ==
          s2xr::catalog_normal_form(rp2, parsed(rp2, "v")));

    const ManifoldModel rp3 = model_rp3rp3();
    CHECK(s2xr::is_trivial_in_model(rp3, parsed(rp3, "(v h)^2")));
    CHECK(s2xr::is_trivial_in_model(rp3, parsed(rp3, "v^2")));
    // v h v^-1 = v h v = h^-1 in this group.
    CHECK(s2xr::catalog_normal_form(rp3, parsed(rp3, "v h v^-1")) ==
          s2xr::catalog_normal_form(rp3, parsed(rp3, "h^-1")));
    CHECK_FALSE(s2xr::is_trivial_in_model(rp3, parsed(rp3, "h^2")));
    // Distinct kinds never collide, even with equal payloads.
    CHECK(s2xr::catalog_normal_form(model_s2xs1(), Word()) !=
          s2xr::catalog_normal_form(rp2, Word()));

    ManifoldModel foreign = make_model("L(7,1)", "<a | a^7>", {0});
    CHECK_THROWS_AS(s2xr::catalog_normal_form(foreign, Word()), std::domain_error);
}

TEST_CASE("reidemeister_schreier_index2 yields 2n-1 generators and 2m relators") {
    struct Case {
        ManifoldModel model;
        GroupHom2 phi;
    };
    const std::vector<Case> cases = {
        {model_s2xs1(), GroupHom2({1})},      {model_e(), GroupHom2({1, 0})},
        {model_rp2xs1(), GroupHom2({0, 1})},  {model_rp2xs1(), GroupHom2({1, 0})},
        {model_rp2xs1(), GroupHom2({1, 1})},  {model_rp3rp3(), GroupHom2({0, 1})},
        {model_rp3rp3(), GroupHom2({1, 0})},  {model_rp3rp3(), GroupHom2({1, 1})},
    };
    for (const Case& c : cases) {
        const KernelPresentation k =
            s2xr::reidemeister_schreier_index2(c.model.presentation, c.phi);
        const int n = c.model.presentation.generator_count();
        const std::size_t m = c.model.presentation.relators().size();
        CHECK(k.presentation.generator_count() == 2 * n - 1);
        CHECK(k.presentation.relators().size() == 2 * m);
        CHECK(k.inclusion.size() == static_cast<std::size_t>(2 * n - 1));

        // Every inclusion word lies in the kernel of phi.
        for (const Word& w : k.inclusion) CHECK(s2xr::evaluate_hom2(c.phi, w) == 0);

        // Each rewritten relator, spelled back through the inclusion words,
        // is a conjugate of an original relator, hence trivial in the group.
        for (const Word& r : k.presentation.relators()) {
            Word spelled;
            for (const s2xr::Letter& l : r.letters()) {
                const Word& inc = k.inclusion[static_cast<std::size_t>(l.gen)];
                spelled = spelled * (l.sign > 0 ? inc : inc.inverse());
            }
            CHECK(s2xr::is_trivial_in_model(c.model, spelled));
        }
    }
}

TEST_CASE("reidemeister_schreier_index2 worked example") {
    // E = <v,h | v^2 h^-1>, phi(v)=1: transversal {1,v}, so the kernel sees
    // h, v^2, and v h v^-1, all equal to h in the group.
    const ManifoldModel e = model_e();
    const KernelPresentation k = s2xr::reidemeister_schreier_index2(e.presentation, s2xr::GroupHom2({1, 0}));
    REQUIRE(k.inclusion.size() == 3);
    CHECK(k.inclusion[0] == parsed(e, "h"));
    CHECK(k.inclusion[1] == parsed(e, "v^2"));
    CHECK(k.inclusion[2] == parsed(e, "v h v^-1"));

    const KernelPresentation simplified = s2xr::simplify_kernel(k);
    REQUIRE(simplified.presentation.generator_count() == 1);
    CHECK(simplified.presentation.relators().empty());
    CHECK(s2xr::catalog_normal_form(e, simplified.inclusion[0]) ==
          s2xr::catalog_normal_form(e, parsed(e, "v^2")));
}

TEST_CASE("reidemeister_schreier_index2 rejects bad characters") {
    const ManifoldModel e = model_e();
    CHECK_THROWS_AS(s2xr::reidemeister_schreier_index2(e.presentation, GroupHom2({0, 0})),
                    std::invalid_argument);  // not surjective
    CHECK_THROWS_AS(s2xr::reidemeister_schreier_index2(e.presentation, GroupHom2({0, 1})),
                    std::invalid_argument);  // does not kill v^2 h^-1
    CHECK_THROWS_AS(s2xr::reidemeister_schreier_index2(e.presentation, GroupHom2({1})),
                    std::invalid_argument);  // generator count mismatch
}

TEST_CASE("identify_cover names all eight double covers") {
    auto cover = [](const ManifoldModel& m, std::vector<std::uint8_t> phi) {
        return s2xr::identify_cover(m, GroupHom2(std::move(phi)));
    };
    CHECK(cover(model_s2xs1(), {1}) == s2xr::kS2xS1);
    CHECK(cover(model_e(), {1, 0}) == s2xr::kS2xS1);
    CHECK(cover(model_rp2xs1(), {0, 1}) == s2xr::kRP2xS1);
    CHECK(cover(model_rp2xs1(), {1, 0}) == s2xr::kS2xS1);
    CHECK(cover(model_rp2xs1(), {1, 1}) == s2xr::kE);
    CHECK(cover(model_rp3rp3(), {0, 1}) == s2xr::kRP3RP3);
    CHECK(cover(model_rp3rp3(), {1, 0}) == s2xr::kS2xS1);
    CHECK(cover(model_rp3rp3(), {1, 1}) == s2xr::kRP3RP3);
}

TEST_CASE("identify_cover rejects a kernel outside the catalog") {
    // Kernel of <a,b | a^3> -> Z/2, b -> 1 abelianizes to Z + Z/3 + Z/3.
    const ManifoldModel odd = make_model("X", "<a, b | a^3>", {0, 0});
    CHECK_THROWS_AS(s2xr::identify_cover(odd, GroupHom2({0, 1})), std::domain_error);
}

TEST_CASE("cover_orientable evaluates w1 on the subgroup") {
    const ManifoldModel rp2 = model_rp2xs1();
    const auto k01 = s2xr::reidemeister_schreier_index2(rp2.presentation, s2xr::GroupHom2({0, 1}));
    CHECK_FALSE(s2xr::cover_orientable(rp2, k01));  // contains v, w1(v) = 1
    const auto k10 = s2xr::reidemeister_schreier_index2(rp2.presentation, s2xr::GroupHom2({1, 0}));
    CHECK(s2xr::cover_orientable(rp2, k10));

    const ManifoldModel e = model_e();
    CHECK(s2xr::cover_orientable(e, s2xr::reidemeister_schreier_index2(e.presentation, s2xr::GroupHom2({1, 0}))));
}

TEST_CASE("verify_stated_kernel confirms the catalog generating sets") {
    using s2xr::KernelVerification;
    const ManifoldModel s2 = model_s2xs1();
    CHECK(s2xr::verify_stated_kernel(s2, GroupHom2({1}), {parsed(s2, "h^2")}) ==
          KernelVerification::VERIFIED);

    const ManifoldModel e = model_e();
    CHECK(s2xr::verify_stated_kernel(e, GroupHom2({1, 0}), {parsed(e, "v^2")}) ==
          KernelVerification::VERIFIED);

    const ManifoldModel rp2 = model_rp2xs1();
    CHECK(s2xr::verify_stated_kernel(rp2, GroupHom2({0, 1}),
                                     {parsed(rp2, "v"), parsed(rp2, "h^2")}) ==
          KernelVerification::VERIFIED);
    CHECK(s2xr::verify_stated_kernel(rp2, GroupHom2({1, 0}), {parsed(rp2, "h")}) ==
          KernelVerification::VERIFIED);
    CHECK(s2xr::verify_stated_kernel(rp2, GroupHom2({1, 1}), {parsed(rp2, "v h")}) ==
          KernelVerification::VERIFIED);

    const ManifoldModel rp3 = model_rp3rp3();
    CHECK(s2xr::verify_stated_kernel(rp3, GroupHom2({1, 0}), {parsed(rp3, "h")}) ==
          KernelVerification::VERIFIED);
    // h^2 = (h v h^-1) v needs a product of two stated generators.
    CHECK(s2xr::verify_stated_kernel(rp3, GroupHom2({0, 1}),
                                     {parsed(rp3, "v"), parsed(rp3, "h v h^-1")}) ==
          KernelVerification::VERIFIED);
    CHECK(s2xr::verify_stated_kernel(rp3, GroupHom2({1, 1}),
                                     {parsed(rp3, "v h"), parsed(rp3, "h v")}) ==
          KernelVerification::VERIFIED);
}

TEST_CASE("verify_stated_kernel rejects non-members and reports short searches") {
    const ManifoldModel rp2 = model_rp2xs1();
    CHECK_THROWS_AS(s2xr::verify_stated_kernel(rp2, GroupHom2({0, 1}), {parsed(rp2, "h")}),
                    std::domain_error);

    // {h^2} only spans even powers of the circle factor inside ker(phi2), so
    // the generator v of the kernel is out of reach: inconclusive, not false.
    const ManifoldModel rp3 = model_rp3rp3();
    CHECK(s2xr::verify_stated_kernel(rp3, GroupHom2({0, 1}), {parsed(rp3, "h^2")}) ==
          s2xr::KernelVerification::INCONCLUSIVE);
}

TEST_CASE("pullback_hom2 composes a character with generator images") {
    const ManifoldModel rp3 = model_rp3rp3();
    const std::vector<Word> swap_images = {parsed(rp3, "v h"), parsed(rp3, "v h v")};
    CHECK(s2xr::pullback_hom2(GroupHom2({0, 1}), swap_images) == GroupHom2({1, 1}));
    CHECK(s2xr::pullback_hom2(GroupHom2({1, 1}), swap_images) == GroupHom2({0, 1}));
    CHECK(s2xr::pullback_hom2(GroupHom2({1, 0}), swap_images) == GroupHom2({1, 0}));
}

TEST_CASE("validate_aut_generator accepts involutions and rejects defects") {
    const ManifoldModel rp3 = model_rp3rp3();
    const AutGenerator swap_vh = make_aut(rp3, {"v h", "v h v"}, {"v h", "v h v"});
    CHECK_NOTHROW(s2xr::validate_aut_generator(rp3, swap_vh));

    // Wrong arity.
    AutGenerator short_aut = swap_vh;
    short_aut.images.pop_back();
    CHECK_THROWS_AS(s2xr::validate_aut_generator(rp3, short_aut), std::domain_error);

    // v -> h does not kill v^2.
    const ManifoldModel rp2 = model_rp2xs1();
    CHECK_THROWS_AS(s2xr::validate_aut_generator(rp2, make_aut(rp2, {"h", "v"}, {"h", "v"})),
                    std::domain_error);

    // Homomorphism with a wrong stated inverse.
    CHECK_THROWS_AS(
        s2xr::validate_aut_generator(rp2, make_aut(rp2, {"v", "h"}, {"v", "h^-1"})),
        std::domain_error);
}

TEST_CASE("preserves_w1 separates the two character-twisting automorphisms") {
    const ManifoldModel rp2 = model_rp2xs1();
    CHECK(s2xr::preserves_w1(rp2, make_aut(rp2, {"v", "h^-1"}, {"v", "h^-1"})));
    // h -> v h twists the orientation character: w1(v h) = 1 but w1(h) = 0.
    const AutGenerator twist = make_aut(rp2, {"v", "v h"}, {"v", "v^-1 h"});
    CHECK_NOTHROW(s2xr::validate_aut_generator(rp2, twist));
    CHECK_FALSE(s2xr::preserves_w1(rp2, twist));
    // Were it admitted, it would merge the (1,0) and (1,1) classes.
    CHECK(s2xr::pullback_hom2(GroupHom2({1, 0}), twist.images) == GroupHom2({1, 1}));
}

TEST_CASE("equivalence_orbits partitions the characters of each model") {
    using Orbits = std::vector<std::vector<GroupHom2>>;

    ManifoldModel s2 = model_s2xs1();
    s2.auts.push_back(make_aut(s2, {"h^-1"}, {"h^-1"}));
    CHECK(s2xr::equivalence_orbits(s2, s2xr::enumerate_epis_z2(s2.presentation)) ==
          Orbits{{GroupHom2({1})}});

    ManifoldModel e = model_e();
    e.auts.push_back(make_aut(e, {"v^-1", "h^-1"}, {"v^-1", "h^-1"}));
    CHECK(s2xr::equivalence_orbits(e, s2xr::enumerate_epis_z2(e.presentation)) ==
          Orbits{{GroupHom2({1, 0})}});

    // The w1-twisting automorphism is listed but filtered out, so the three
    // characters stay in distinct classes.
    ManifoldModel rp2 = model_rp2xs1();
    rp2.auts.push_back(make_aut(rp2, {"v", "h^-1"}, {"v", "h^-1"}));
    rp2.auts.push_back(make_aut(rp2, {"v", "v h"}, {"v", "v^-1 h"}));
    CHECK(s2xr::equivalence_orbits(rp2, s2xr::enumerate_epis_z2(rp2.presentation)) ==
          Orbits{{GroupHom2({0, 1})}, {GroupHom2({1, 0})}, {GroupHom2({1, 1})}});

    // Swapping the two order-two letters merges (0,1) with (1,1).
    ManifoldModel rp3 = model_rp3rp3();
    rp3.auts.push_back(make_aut(rp3, {"v h", "v h v"}, {"v h", "v h v"}));
    CHECK(s2xr::equivalence_orbits(rp3, s2xr::enumerate_epis_z2(rp3.presentation)) ==
          Orbits{{GroupHom2({0, 1}), GroupHom2({1, 1})}, {GroupHom2({1, 0})}});

    // Acting outside the supplied character set is a hard error.
    CHECK_THROWS_AS(s2xr::equivalence_orbits(rp3, {GroupHom2({0, 1})}), std::logic_error);
}
