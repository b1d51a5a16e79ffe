// covers.hpp: index-2 covers from Reidemeister-Schreier rewriting, cover
// identification, kernel verification, and equivalence of Z/2 characters.
#ifndef S2XR_COVERS_HPP
#define S2XR_COVERS_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "s2xr/presentation.hpp"
#include "s2xr/recipe.hpp"
#include "s2xr/smith.hpp"
#include "s2xr/tietze.hpp"
#include "s2xr/word.hpp"

namespace s2xr {

// The four closed manifolds carrying this geometry, by catalog name.
inline constexpr const char* kS2xS1 = "S2xS1";
inline constexpr const char* kE = "E";          // nonorientable S^2 bundle over S^1
inline constexpr const char* kRP2xS1 = "RP2xS1";
inline constexpr const char* kRP3RP3 = "RP3#RP3";

/// Seifert symbol {b;(eps,g)} as carried by the catalog.
struct SeifertSymbol {
    int b = 0;
    std::string eps;  // "o1", "n1", "n2", ...
    int g = 0;
    friend bool operator==(const SeifertSymbol&, const SeifertSymbol&) = default;
};

/// Automorphism of the fundamental group given by generator images, together
/// with its stated inverse (validated against the catalog normal form).
struct AutGenerator {
    std::vector<Word> images;
    std::vector<Word> inverse_images;
};

/// One manifold entry of the catalog: group data plus an optional
/// triangulation recipe and named marked-loop references per generator.
struct ManifoldModel {
    std::string name;
    SeifertSymbol seifert;
    Presentation presentation;
    GroupHom2 w1;  // orientation character (zero map for orientable manifolds)
    std::optional<RecipeExpr> recipe;
    // generator name -> loop names inside the built space; a list denotes the
    // formal Z/2 sum of the named loops.
    std::map<std::string, std::vector<std::string>> loop_refs;
    std::vector<AutGenerator> auts;
};

// --- catalog word problems ---------------------------------------------------
//
// Each catalog fundamental group has a solvable word problem with an explicit
// normal form:
//   S2xS1:   <h>              = Z             nf = exponent sum of h
//   E:       <v,h | v^2 h^-1> = Z via v->1    nf = (v-sum) + 2 (h-sum)
//   RP2xS1:  <v,h | v^2, [v,h]> = Z/2 x Z     nf = (v-sum mod 2, h-sum)
//   RP3#RP3: <v,h | v^2, (vh)^2> = Z/2 * Z/2  nf = alternating word in
//            a = v, b = vh (both of order two)
// Encodings carry a leading kind tag so values of different kinds never
// compare equal.

enum class WordProblemKind { Z_WEIGHTED, Z2_X_Z, Z2_STAR_Z2 };

inline std::optional<WordProblemKind> word_problem_kind(const std::string& model_name) {
    if (model_name == kS2xS1 || model_name == kE) return WordProblemKind::Z_WEIGHTED;
    if (model_name == kRP2xS1) return WordProblemKind::Z2_X_Z;
    if (model_name == kRP3RP3) return WordProblemKind::Z2_STAR_Z2;
    return std::nullopt;
}

/// Normal form of a word in the model's group, as a comparable encoding.
inline std::vector<std::int64_t> catalog_normal_form(const ManifoldModel& model, const Word& w) {
    const auto kind = word_problem_kind(model.name);
    if (!kind)
        throw std::domain_error("catalog_normal_form: no word problem for '" + model.name + "'");
    switch (*kind) {
        case WordProblemKind::Z_WEIGHTED: {
            // Weight of each generator under the isomorphism to Z.
            std::vector<std::int64_t> weights =
                model.name == kS2xS1 ? std::vector<std::int64_t>{1}
                                     : std::vector<std::int64_t>{1, 2};  // E: v -> 1, h = v^2 -> 2
            std::int64_t s = 0;
            for (const Letter& l : w.letters())
                s += weights.at(static_cast<std::size_t>(l.gen)) * l.sign;
            return {0, s};
        }
        case WordProblemKind::Z2_X_Z:
            return {1, ((w.exponent_sum(0) % 2) + 2) % 2, w.exponent_sum(1)};
        case WordProblemKind::Z2_STAR_Z2: {
            // Rewrite over the order-two letters a = v, b = vh and cancel.
            std::vector<std::int64_t> letters;
            auto push = [&](std::int64_t x) {
                if (!letters.empty() && letters.back() == x)
                    letters.pop_back();
                else
                    letters.push_back(x);
            };
            for (const Letter& l : w.letters()) {
                if (l.gen == 0) {
                    push(0);  // v and v^-1 are both a
                } else if (l.sign > 0) {
                    push(0);  // h = a b
                    push(1);
                } else {
                    push(1);  // h^-1 = b a
                    push(0);
                }
            }
            letters.insert(letters.begin(), 2);  // kind tag
            return letters;
        }
    }
    throw std::logic_error("catalog_normal_form: unreachable");
}

inline bool is_trivial_in_model(const ManifoldModel& model, const Word& w) {
    return catalog_normal_form(model, w) == catalog_normal_form(model, Word());
}

// --- Reidemeister-Schreier for index-2 subgroups ------------------------------

/// Kernel presentation plus the inclusion word of each kernel generator in
/// the ambient group.
struct KernelPresentation {
    Presentation presentation;
    std::vector<Word> inclusion;  // parallel to presentation generators
};

namespace detail {

inline std::string kernel_generator_name(std::size_t i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "g" + std::to_string(i);
}

}  // namespace detail

/// Rewrite the kernel of a surjection phi: G -> Z/2 with Schreier transversal
/// {1, t}, t the first generator with phi(t) = 1.  The raw output has 2n-1
/// generators (the Schreier generator of (coset 1, t) is freely trivial and
/// dropped) and 2m relators, unsimplified.
inline KernelPresentation reidemeister_schreier_index2(const Presentation& pres,
                                                       const GroupHom2& phi) {
    const std::int32_t n = pres.generator_count();
    if (phi.generator_count() != n)
        throw std::invalid_argument("reidemeister_schreier_index2: generator count mismatch");
    if (!phi.is_surjective())
        throw std::invalid_argument("reidemeister_schreier_index2: phi is not surjective");
    if (!kills_all_relators(phi, pres))
        throw std::invalid_argument("reidemeister_schreier_index2: phi is not a homomorphism");

    std::int32_t t = 0;
    while (phi.value(t) == 0) ++t;

    // Schreier generator table sigma[coset][generator]; -1 marks the freely
    // trivial generator sigma(coset 0, t) = t t^-1.
    std::array<std::vector<std::int32_t>, 2> sigma;
    std::vector<std::string> names;
    std::vector<Word> inclusion;
    const Word tw = Word::power(t, 1);
    for (int c = 0; c < 2; ++c) {
        sigma[c].assign(static_cast<std::size_t>(n), -1);
        for (std::int32_t x = 0; x < n; ++x) {
            if (c == 0 && x == t) continue;
            sigma[c][static_cast<std::size_t>(x)] = static_cast<std::int32_t>(names.size());
            names.push_back(detail::kernel_generator_name(names.size()));
            // Inclusion u x rep(u x)^-1 for coset representative u in {1, t}.
            Word w = (c == 1) ? tw * Word::power(x, 1) : Word::power(x, 1);
            if ((c ^ phi.value(x)) == 1) w = w * tw.inverse();
            inclusion.push_back(free_reduce(w));
        }
    }

    // Rewrite u r u^-1 for each relator r and coset u; a positive letter is
    // read at the current coset, a negative letter at the coset it points
    // back from.
    std::vector<Word> relators;
    for (const Word& r : pres.relators()) {
        for (int c0 = 0; c0 < 2; ++c0) {
            Word out;
            int c = c0;
            for (const Letter& l : r.letters()) {
                if (l.sign > 0) {
                    const std::int32_t g = sigma[c][static_cast<std::size_t>(l.gen)];
                    if (g >= 0) out.push(Letter{g, 1});
                    c ^= phi.value(l.gen);
                } else {
                    c ^= phi.value(l.gen);
                    const std::int32_t g = sigma[c][static_cast<std::size_t>(l.gen)];
                    if (g >= 0) out.push(Letter{g, -1});
                }
            }
            if (c != c0)
                throw std::logic_error("reidemeister_schreier_index2: rewrite left the coset");
            relators.push_back(std::move(out));
        }
    }

    return KernelPresentation{Presentation(std::move(names), std::move(relators)),
                              std::move(inclusion)};
}

/// Tietze simplification carrying the inclusion words of surviving generators.
inline KernelPresentation simplify_kernel(const KernelPresentation& k) {
    std::vector<std::string> names = k.presentation.generator_names();
    std::vector<Word> relators = k.presentation.relators();
    std::vector<Word> inclusion = k.inclusion;
    detail::tietze_core(names, relators, &inclusion);
    return KernelPresentation{Presentation(std::move(names), std::move(relators)),
                              std::move(inclusion)};
}

/// A double cover is orientable iff w1 of the base vanishes on the subgroup,
/// i.e. on every kernel generator's inclusion word.
inline bool cover_orientable(const ManifoldModel& model, const KernelPresentation& kernel) {
    for (const Word& w : kernel.inclusion)
        if (evaluate_hom2(model.w1, w)) return false;
    return true;
}

/// Name the total space of the double cover classified by phi:
/// pi_1 = Z and orientable -> S2xS1, Z nonorientable -> E, Z/2 x Z -> RP2xS1,
/// Z/2 * Z/2 -> RP3#RP3.
inline std::string identify_cover(const ManifoldModel& model, const GroupHom2& phi) {
    const KernelPresentation raw = reidemeister_schreier_index2(model.presentation, phi);
    const KernelPresentation simplified = simplify_kernel(raw);
    const CatalogGroup tag = recognize_catalog_group(simplified.presentation);
    const bool orientable = cover_orientable(model, raw);
    switch (tag) {
        case CatalogGroup::INF_CYCLIC: return orientable ? kS2xS1 : kE;
        case CatalogGroup::Z2_X_Z: return kRP2xS1;
        case CatalogGroup::Z2_STAR_Z2: return kRP3RP3;
        case CatalogGroup::UNKNOWN: break;
    }
    throw std::domain_error("identify_cover: kernel of '" + model.name +
                            "' is not a catalog group");
}

// --- verification of stated kernel generators --------------------------------

enum class KernelVerification { VERIFIED, INCONCLUSIVE };

/// Check a claimed generating set of ker(phi): (a) every stated word must lie
/// in the kernel (hard failure otherwise); (b) every Reidemeister-Schreier
/// inclusion word must equal some product of at most four stated generators
/// or their inverses, compared in the catalog normal form.  Search exhaustion
/// is reported as INCONCLUSIVE, never as refutation.
inline KernelVerification verify_stated_kernel(const ManifoldModel& model, const GroupHom2& phi,
                                               const std::vector<Word>& stated) {
    for (const Word& w : stated)
        if (evaluate_hom2(phi, w))
            throw std::domain_error("verify_stated_kernel: stated generator '" +
                                    model.presentation.word_to_string(w) +
                                    "' is not in the kernel");

    std::vector<Word> alphabet;
    for (const Word& w : stated) {
        alphabet.push_back(w);
        alphabet.push_back(w.inverse());
    }

    const KernelPresentation raw = reidemeister_schreier_index2(model.presentation, phi);
    for (const Word& incl : raw.inclusion) {
        const auto target = catalog_normal_form(model, incl);
        bool found = false;
        // Breadth-first over products of length 0..4.
        std::vector<Word> layer{Word()};
        for (int len = 0; len <= 4 && !found; ++len) {
            for (const Word& w : layer)
                if (catalog_normal_form(model, w) == target) {
                    found = true;
                    break;
                }
            if (found || len == 4) break;
            std::vector<Word> next;
            next.reserve(layer.size() * alphabet.size());
            for (const Word& w : layer)
                for (const Word& a : alphabet) next.push_back(w * a);
            layer = std::move(next);
        }
        if (!found) return KernelVerification::INCONCLUSIVE;
    }
    return KernelVerification::VERIFIED;
}

// --- equivalence of characters under w1-preserving automorphisms -------------

/// phi composed with the endomorphism mapping generator g to images[g]; valid
/// on Z/2 characters because they factor through H_1(.; Z/2).
inline GroupHom2 pullback_hom2(const GroupHom2& phi, const std::vector<Word>& images) {
    std::vector<std::uint8_t> vals(images.size());
    for (std::size_t g = 0; g < images.size(); ++g) vals[g] = evaluate_hom2(phi, images[g]);
    return GroupHom2(std::move(vals));
}

/// Homomorphism + two-sided inverse checks for a catalog automorphism, via
/// the model's normal form.
inline void validate_aut_generator(const ManifoldModel& model, const AutGenerator& aut) {
    const std::size_t n = static_cast<std::size_t>(model.presentation.generator_count());
    if (aut.images.size() != n || aut.inverse_images.size() != n)
        throw std::domain_error("automorphism of '" + model.name +
                                "': image list does not match the generators");
    auto apply = [&](const std::vector<Word>& images, const Word& w) {
        Word out;
        for (const Letter& l : w.letters()) {
            const Word& im = images[static_cast<std::size_t>(l.gen)];
            out = out * (l.sign > 0 ? im : im.inverse());
        }
        return out;
    };
    for (const Word& r : model.presentation.relators())
        if (!is_trivial_in_model(model, apply(aut.images, r)))
            throw std::domain_error("automorphism of '" + model.name +
                                    "' does not kill the relator " +
                                    model.presentation.word_to_string(r));
    for (std::size_t g = 0; g < n; ++g) {
        const Word gen = Word::power(static_cast<std::int32_t>(g), 1);
        const auto nf_g = catalog_normal_form(model, gen);
        if (catalog_normal_form(model, apply(aut.inverse_images, aut.images[g])) != nf_g ||
            catalog_normal_form(model, apply(aut.images, aut.inverse_images[g])) != nf_g)
            throw std::domain_error("automorphism of '" + model.name +
                                    "': stated inverse fails on generator " +
                                    model.presentation.generator_names()[g]);
    }
}

inline bool preserves_w1(const ManifoldModel& model, const AutGenerator& aut) {
    for (std::int32_t g = 0; g < model.presentation.generator_count(); ++g)
        if (evaluate_hom2(model.w1, aut.images[static_cast<std::size_t>(g)]) !=
            model.w1.value(g))
            return false;
    return true;
}

/// Partition the given characters into orbits of the group generated by the
/// w1-preserving catalog automorphisms.  Orbits come out sorted by their
/// lexicographically least member; members sorted likewise.
inline std::vector<std::vector<GroupHom2>> equivalence_orbits(const ManifoldModel& model,
                                                              const std::vector<GroupHom2>& epis) {
    for (const AutGenerator& aut : model.auts) validate_aut_generator(model, aut);

    std::vector<const AutGenerator*> usable;
    for (const AutGenerator& aut : model.auts)
        if (preserves_w1(model, aut)) usable.push_back(&aut);

    const std::set<GroupHom2> universe(epis.begin(), epis.end());
    std::set<GroupHom2> visited;
    std::vector<std::vector<GroupHom2>> orbits;
    for (const GroupHom2& seed : std::set<GroupHom2>(epis.begin(), epis.end())) {
        if (visited.count(seed)) continue;
        std::set<GroupHom2> orbit{seed};
        std::vector<GroupHom2> frontier{seed};
        while (!frontier.empty()) {
            std::vector<GroupHom2> next;
            for (const GroupHom2& phi : frontier)
                for (const AutGenerator* aut : usable)
                    for (const auto* images : {&aut->images, &aut->inverse_images}) {
                        GroupHom2 moved = pullback_hom2(phi, *images);
                        if (!universe.count(moved))
                            throw std::logic_error(
                                "equivalence_orbits: automorphism left the character set");
                        if (orbit.insert(moved).second) next.push_back(std::move(moved));
                    }
            frontier = std::move(next);
        }
        orbits.emplace_back(orbit.begin(), orbit.end());
        visited.insert(orbit.begin(), orbit.end());
    }
    return orbits;
}

}  // namespace s2xr

#endif  // S2XR_COVERS_HPP
