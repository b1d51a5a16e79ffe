// Ordered complexes, products, subdivisions, free quotients, connected sums,
// and the recipe evaluator, checked against independent counting oracles.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "s2xr/constructions.hpp"
#include "s2xr/recipe.hpp"
#include "testutil.hpp"

using s2xr::BuiltSpace;
using s2xr::EdgeLoop;
using s2xr::OrderedComplex;
using s2xr::Simplex;
using s2xr::SimplicialInvolution;
using s2xr::VertexId;

namespace {

std::vector<std::size_t> counts(const OrderedComplex& k) {
    std::vector<std::size_t> out;
    for (int d = 0; d <= k.dim(); ++d) out.push_back(k.count(d));
    return out;
}

/// Oracle for the ordered product: simplices are the strictly increasing
/// chains of pairs (a, b) whose two projections are simplices.  Counts the
/// chains of each size directly, without building any complex.
std::vector<std::size_t> product_chain_counts(const OrderedComplex& k, const OrderedComplex& l) {
    const int dim = k.dim() + l.dim();
    std::vector<std::size_t> tally(static_cast<std::size_t>(dim) + 1, 0);
    std::vector<std::pair<VertexId, VertexId>> chain;
    std::vector<VertexId> as, bs;

    const auto supports_ok = [&]() {
        as.clear();
        bs.clear();
        for (const auto& [a, b] : chain) {
            if (as.empty() || as.back() != a) as.push_back(a);
            if (bs.empty() || bs.back() != b) bs.push_back(b);
        }
        return k.contains(static_cast<int>(as.size()) - 1, as) &&
               l.contains(static_cast<int>(bs.size()) - 1, bs);
    };

    auto extend = [&](auto&& self) -> void {
        if (supports_ok()) ++tally[chain.size() - 1];
        if (static_cast<int>(chain.size()) == dim + 1) return;
        const auto [a0, b0] = chain.back();
        for (VertexId a = a0; a < k.vertex_count(); ++a)
            for (VertexId b = b0; b < l.vertex_count(); ++b) {
                if (a == a0 && b == b0) continue;
                chain.emplace_back(a, b);
                if (supports_ok()) self(self);
                chain.pop_back();
            }
    };

    for (VertexId a = 0; a < k.vertex_count(); ++a)
        for (VertexId b = 0; b < l.vertex_count(); ++b) {
            chain.assign(1, {a, b});
            extend(extend);
        }
    while (!tally.empty() && tally.back() == 0) tally.pop_back();
    return tally;
}

/// Oracle for barycentric subdivision sizes: chains in the face poset.
std::vector<std::size_t> face_chain_counts(const OrderedComplex& k) {
    // Collect all simplices, then count strict chains under inclusion.
    std::vector<Simplex> all;
    for (int d = 0; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) all.push_back(k.simplex(d, i));
    const auto subset = [](const Simplex& a, const Simplex& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end()) && a.size() < b.size();
    };
    std::vector<std::size_t> tally(static_cast<std::size_t>(k.dim()) + 1, 0);
    std::vector<std::size_t> chain;
    auto extend = [&](auto&& self, std::size_t last) -> void {
        ++tally[chain.size() - 1];
        if (static_cast<int>(chain.size()) == k.dim() + 1) return;
        for (std::size_t j = 0; j < all.size(); ++j)
            if (subset(all[last], all[j])) {
                chain.push_back(j);
                self(self, j);
                chain.pop_back();
            }
    };
    for (std::size_t i = 0; i < all.size(); ++i) {
        chain.assign(1, i);
        extend(extend, i);
    }
    return tally;
}

OrderedComplex point() { return OrderedComplex(1, {{0}}); }

}  // namespace

TEST_CASE("complex validation rejects malformed input") {
    REQUIRE_THROWS_WITH(OrderedComplex(0, {}), Catch::Matchers::ContainsSubstring("no vertices"));
    REQUIRE_THROWS_WITH(OrderedComplex(2, {{0}, {1}, {}}),
                        Catch::Matchers::ContainsSubstring("dimension out of range"));
    REQUIRE_THROWS_WITH(OrderedComplex(5, {{0, 1, 2, 3, 4}}),
                        Catch::Matchers::ContainsSubstring("dimension out of range"));
    REQUIRE_THROWS_WITH(OrderedComplex(2, {{0}, {2}}),
                        Catch::Matchers::ContainsSubstring("vertex out of range"));
    REQUIRE_THROWS_WITH(OrderedComplex(2, {{0}, {1}, {1, 0}}),
                        Catch::Matchers::ContainsSubstring("not strictly increasing"));
    REQUIRE_THROWS_WITH(OrderedComplex(2, {{0}, {1}, {1, 1}}),
                        Catch::Matchers::ContainsSubstring("not strictly increasing"));
    REQUIRE_THROWS_WITH(OrderedComplex(3, {{0}, {1}, {2}, {0, 1}, {0, 2}, {0, 1, 2}}),
                        Catch::Matchers::ContainsSubstring("not closed under faces"));
    REQUIRE_THROWS_WITH(OrderedComplex(3, {{0}, {1}, {0, 1}}),
                        Catch::Matchers::ContainsSubstring("vertex 2 has no 0-simplex"));
}

TEST_CASE("from_maximal closes under faces and deduplicates") {
    const OrderedComplex tet = OrderedComplex::from_maximal(4, {{0, 1, 2, 3}});
    REQUIRE(counts(tet) == std::vector<std::size_t>{4, 6, 4, 1});
    REQUIRE(tet.euler() == 1);

    // Overlapping maximal simplices are merged, not duplicated.
    const OrderedComplex two = OrderedComplex::from_maximal(4, {{0, 1, 2}, {0, 1, 3}});
    REQUIRE(counts(two) == std::vector<std::size_t>{4, 5, 2});
}

TEST_CASE("index_of round-trips and rejects foreign tuples") {
    const OrderedComplex k = s2xr::make_cross_polytope_boundary(3);
    for (int d = 0; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i)
            REQUIRE(k.index_of(d, k.simplex(d, i)) == i);
    REQUIRE_FALSE(k.index_of(1, {0, 3}).has_value());  // antipodal pair, no edge
    REQUIRE_FALSE(k.index_of(0, {6}).has_value());
    REQUIRE_FALSE(k.index_of(2, {0, 1}).has_value());  // wrong width
    REQUIRE(k.count(3) == 0);
}

TEST_CASE("primitive builders have the classical face counts") {
    REQUIRE(counts(s2xr::make_cycle(3)) == std::vector<std::size_t>{3, 3});
    REQUIRE(counts(s2xr::make_cycle(7)) == std::vector<std::size_t>{7, 7});
    REQUIRE(s2xr::make_cycle(5).euler() == 0);
    REQUIRE_THROWS_AS(s2xr::make_cycle(2), std::invalid_argument);

    REQUIRE(counts(s2xr::make_simplex_boundary(3)) == std::vector<std::size_t>{4, 6, 4});
    REQUIRE(s2xr::make_simplex_boundary(3).euler() == 2);
    REQUIRE(counts(s2xr::make_simplex_boundary(4)) == std::vector<std::size_t>{5, 10, 10, 5});
    REQUIRE(s2xr::make_simplex_boundary(4).euler() == 0);

    REQUIRE(counts(s2xr::make_cross_polytope_boundary(2)) == std::vector<std::size_t>{4, 4});
    REQUIRE(counts(s2xr::make_cross_polytope_boundary(3)) == std::vector<std::size_t>{6, 12, 8});
    REQUIRE(s2xr::make_cross_polytope_boundary(3).euler() == 2);
    REQUIRE(counts(s2xr::make_cross_polytope_boundary(4)) ==
            std::vector<std::size_t>{8, 24, 32, 16});
    REQUIRE(s2xr::make_cross_polytope_boundary(4).euler() == 0);
}

TEST_CASE("cross-polytope antipode is a free simplicial involution") {
    for (int d = 2; d <= 4; ++d) {
        const OrderedComplex k = s2xr::make_cross_polytope_boundary(d);
        const SimplicialInvolution tau = s2xr::cross_polytope_antipode(d);
        REQUIRE(s2xr::is_involution(tau, k.vertex_count()));
        REQUIRE(s2xr::is_fixed_point_free(tau));
        REQUIRE(s2xr::is_simplicial_map(k, tau));
        // No simplex contains an antipodal pair.
        for (std::size_t i = 0; i < k.count(k.dim()); ++i) {
            const Simplex s = k.simplex(k.dim(), i);
            for (VertexId v : s)
                REQUIRE_FALSE(std::binary_search(s.begin(), s.end(), tau.image[std::size_t(v)]));
        }
    }
    REQUIRE_FALSE(s2xr::is_involution(SimplicialInvolution{{1, 2, 0}}, 3));
    REQUIRE_FALSE(s2xr::is_involution(SimplicialInvolution{{0, 1}}, 3));
    REQUIRE_FALSE(s2xr::is_fixed_point_free(SimplicialInvolution{{0, 2, 1}}));
}

TEST_CASE("loop validation") {
    const OrderedComplex k = s2xr::make_cycle(4);
    s2xr::validate_loop(k, EdgeLoop{{0, 1, 2, 3}});
    REQUIRE_THROWS_WITH(s2xr::validate_loop(k, EdgeLoop{{0}}),
                        Catch::Matchers::ContainsSubstring("fewer than two"));
    REQUIRE_THROWS_WITH(s2xr::validate_loop(k, EdgeLoop{{0, 1, 1, 2, 3}}),
                        Catch::Matchers::ContainsSubstring("repeated consecutive"));
    REQUIRE_THROWS_WITH(s2xr::validate_loop(k, EdgeLoop{{0, 2}}),
                        Catch::Matchers::ContainsSubstring("edge {0,2} not in complex"));
}

TEST_CASE("dump is a stable byte-level description") {
    const OrderedComplex k = s2xr::make_cycle(3);
    REQUIRE(k.dump() ==
            "vertices 3\n"
            "dim 0 count 3\n0\n1\n2\n"
            "dim 1 count 3\n0 1\n0 2\n1 2\n");
    // Same complex built along two different routes compares equal.
    const OrderedComplex again = OrderedComplex(3, {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}});
    REQUIRE(k == again);
    REQUIRE(k.dump() == again.dump());
}

TEST_CASE("ordered product matches the chain-counting oracle") {
    const OrderedComplex c3 = s2xr::make_cycle(3);
    const OrderedComplex c4 = s2xr::make_cycle(4);
    const OrderedComplex s2 = s2xr::make_simplex_boundary(3);
    const OrderedComplex path = OrderedComplex::from_maximal(3, {{0, 1}, {1, 2}});
    const OrderedComplex fan = OrderedComplex::from_maximal(4, {{0, 1, 2}, {1, 2, 3}});

    const auto check = [&](const OrderedComplex& a, const OrderedComplex& b) {
        const OrderedComplex p = s2xr::ordered_product(a, b);
        REQUIRE(counts(p) == product_chain_counts(a, b));
        REQUIRE(p.euler() == a.euler() * b.euler());
    };
    check(c3, c3);
    check(c4, path);
    check(s2, c3);
    check(fan, path);
    check(fan, c4);

    REQUIRE(counts(s2xr::ordered_product(c3, c3)) == std::vector<std::size_t>{9, 27, 18});
    REQUIRE(counts(s2xr::ordered_product(s2, c3)) == std::vector<std::size_t>{12, 48, 72, 36});
}

TEST_CASE("product with a point is the identity") {
    const OrderedComplex k = s2xr::make_cross_polytope_boundary(3);
    REQUIRE(s2xr::ordered_product(k, point()) == k);
    REQUIRE(s2xr::ordered_product(point(), k) == k);
}

TEST_CASE("product of two 2-complexes overflows the dimension cap") {
    const OrderedComplex s2 = s2xr::make_simplex_boundary(3);
    REQUIRE_THROWS_WITH(s2xr::ordered_product(s2, s2),
                        Catch::Matchers::ContainsSubstring("exceeds 3"));
}

TEST_CASE("product space re-roots loops on both factors") {
    BuiltSpace a;
    a.complex = s2xr::make_cycle(3);
    a.loops["core"] = EdgeLoop{{0, 1, 2}};
    BuiltSpace b;
    b.complex = s2xr::make_cycle(4);
    b.loops["core"] = EdgeLoop{{0, 1, 2, 3}};

    const BuiltSpace p = s2xr::product_space(a, b);
    REQUIRE(p.loops.size() == 2);
    REQUIRE(p.loops.at("left.core").vertices == std::vector<VertexId>{0, 4, 8});
    REQUIRE(p.loops.at("right.core").vertices == std::vector<VertexId>{0, 1, 2, 3});
    REQUIRE_FALSE(p.involution.has_value());
}

TEST_CASE("barycentric subdivision matches the face-chain oracle") {
    const auto check = [](const OrderedComplex& k) {
        BuiltSpace s;
        s.complex = k;
        const BuiltSpace sd = s2xr::barycentric_subdivision(s);
        REQUIRE(counts(sd.complex) == face_chain_counts(k));
        REQUIRE(sd.complex.euler() == k.euler());
    };
    check(s2xr::make_cycle(3));
    check(s2xr::make_simplex_boundary(3));
    check(s2xr::make_cross_polytope_boundary(3));
    check(OrderedComplex::from_maximal(4, {{0, 1, 2, 3}}));

    BuiltSpace s;
    s.complex = s2xr::make_simplex_boundary(3);
    REQUIRE(counts(s2xr::barycentric_subdivision(s).complex) ==
            std::vector<std::size_t>{14, 36, 24});
    s.complex = s2xr::make_cycle(3);
    REQUIRE(counts(s2xr::barycentric_subdivision(s).complex) == std::vector<std::size_t>{6, 6});
}

TEST_CASE("subdivision transports loops and involutions") {
    BuiltSpace s;
    s.complex = s2xr::make_cross_polytope_boundary(3);
    s.involution = s2xr::cross_polytope_antipode(3);
    s.loops["eq"] = EdgeLoop{{0, 1, 3, 4}};  // equatorial square

    const BuiltSpace sd = s2xr::barycentric_subdivision(s);
    REQUIRE(sd.loops.at("eq").vertices.size() == 8);
    s2xr::validate_loop(sd.complex, sd.loops.at("eq"));
    REQUIRE(sd.involution.has_value());
    REQUIRE(s2xr::is_involution(*sd.involution, sd.complex.vertex_count()));
    REQUIRE(s2xr::is_fixed_point_free(*sd.involution));
    REQUIRE(s2xr::is_simplicial_map(sd.complex, *sd.involution));
    // Original vertices keep their ids, and the involution restricts to them.
    for (VertexId v = 0; v < 6; ++v) REQUIRE(sd.involution->image[std::size_t(v)] == (v + 3) % 6);
}

TEST_CASE("free quotient rejects non-free or non-simplicial data") {
    const OrderedComplex c4 = s2xr::make_cycle(4);
    REQUIRE_THROWS_WITH(s2xr::free_quotient(c4, SimplicialInvolution{{1, 2, 3, 0}}),
                        Catch::Matchers::ContainsSubstring("not an involution"));
    REQUIRE_THROWS_WITH(s2xr::free_quotient(c4, SimplicialInvolution{{0, 1, 3, 2}}),
                        Catch::Matchers::ContainsSubstring("fixed vertex"));
    const OrderedComplex path = OrderedComplex::from_maximal(4, {{0, 1}, {1, 2}, {2, 3}});
    REQUIRE_THROWS_WITH(s2xr::free_quotient(path, SimplicialInvolution{{2, 3, 0, 1}}),
                        Catch::Matchers::ContainsSubstring("not simplicial"));
    REQUIRE_THROWS_AS(s2xr::free_quotient(c4, SimplicialInvolution{{2, 3, 0, 1}}, 9),
                      std::invalid_argument);
}

TEST_CASE("free quotient reports simplex-level obstructions") {
    // Swapping neighbors: the edge {0,1} maps to itself.
    const OrderedComplex c4 = s2xr::make_cycle(4);
    const auto meets = s2xr::free_quotient(c4, SimplicialInvolution{{1, 0, 3, 2}});
    REQUIRE_FALSE(meets.valid);
    REQUIRE(meets.failure ==
            "simplex {0,1} meets its involution image {0,1}");

    // Antipode of the square: all four edges land on the same orbit pair.
    const auto crowded = s2xr::free_quotient(c4, SimplicialInvolution{{2, 3, 0, 1}});
    REQUIRE_FALSE(crowded.valid);
    REQUIRE(crowded.failure ==
            "4 simplices share the orbit set {0,1}, first {0,1}");

    // The unsubdivided cross-polytope boundaries fail the two-to-one check.
    for (int d = 3; d <= 4; ++d) {
        const auto q = s2xr::free_quotient(s2xr::make_cross_polytope_boundary(d),
                                           s2xr::cross_polytope_antipode(d));
        REQUIRE_FALSE(q.valid);
        REQUIRE_THAT(q.failure, Catch::Matchers::ContainsSubstring("share the orbit set"));
    }
}

TEST_CASE("free quotient of an even cycle is a cycle of half length") {
    const auto q = s2xr::free_quotient(s2xr::make_cycle(6), SimplicialInvolution{{3, 4, 5, 0, 1, 2}});
    REQUIRE(q.valid);
    REQUIRE(counts(q.complex) == std::vector<std::size_t>{3, 3});
    REQUIRE(q.orbit_of == std::vector<VertexId>{0, 1, 2, 0, 1, 2});
    REQUIRE(q.order2_loop.vertices == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("free quotient throws when the base point cannot reach its antipode") {
    const OrderedComplex two = OrderedComplex::from_maximal(4, {{0, 1}, {2, 3}});
    REQUIRE_THROWS_AS(s2xr::free_quotient(two, SimplicialInvolution{{2, 3, 0, 1}}),
                      std::logic_error);
}

TEST_CASE("quotient of the subdivided octahedron is a projective plane") {
    BuiltSpace s;
    s.complex = s2xr::make_cross_polytope_boundary(3);
    s.involution = s2xr::cross_polytope_antipode(3);
    const BuiltSpace sd = s2xr::barycentric_subdivision(s);
    const auto q = s2xr::free_quotient(sd.complex, *sd.involution);
    REQUIRE(q.valid);
    REQUIRE(counts(q.complex) == std::vector<std::size_t>{13, 36, 24});
    REQUIRE(q.complex.euler() == 1);

    // The orbit map is exactly two-to-one on vertices and on simplices.
    std::map<VertexId, int> fiber;
    for (VertexId v : q.orbit_of) ++fiber[v];
    REQUIRE(fiber.size() == 13);
    for (const auto& [o, n] : fiber) REQUIRE(n == 2);
    for (int d = 0; d <= 2; ++d) {
        std::map<Simplex, int> down;
        for (std::size_t i = 0; i < sd.complex.count(d); ++i) {
            Simplex img;
            for (VertexId v : sd.complex.simplex(d, i)) img.push_back(q.orbit_of[std::size_t(v)]);
            std::sort(img.begin(), img.end());
            ++down[img];
        }
        REQUIRE(down.size() == q.complex.count(d));
        for (const auto& [img, n] : down) REQUIRE(n == 2);
    }

    REQUIRE(q.order2_loop.vertices.size() == 4);
    s2xr::validate_loop(q.complex, q.order2_loop);
}

TEST_CASE("quotient of the subdivided 4-dimensional cross-polytope boundary") {
    BuiltSpace s;
    s.complex = s2xr::make_cross_polytope_boundary(4);
    s.involution = s2xr::cross_polytope_antipode(4);
    const BuiltSpace sd = s2xr::barycentric_subdivision(s);
    REQUIRE(counts(sd.complex) == std::vector<std::size_t>{80, 464, 768, 384});
    const auto q = s2xr::free_quotient(sd.complex, *sd.involution);
    REQUIRE(q.valid);
    REQUIRE(counts(q.complex) == std::vector<std::size_t>{40, 232, 384, 192});
    REQUIRE(q.complex.euler() == 0);
    REQUIRE(q.order2_loop.vertices.size() == 4);
    s2xr::validate_loop(q.complex, q.order2_loop);
}

TEST_CASE("connected sum glues along a shared facet boundary") {
    const OrderedComplex s3 = s2xr::make_simplex_boundary(4);
    const OrderedComplex sum = s2xr::connected_sum(s3, s3, 0, 0, s3.simplex(3, 0));
    REQUIRE(counts(sum) == std::vector<std::size_t>{6, 14, 16, 8});
    REQUIRE(sum.euler() == 0);

    REQUIRE_THROWS_AS(s2xr::connected_sum(s2xr::make_cross_polytope_boundary(3), s3, 0, 0,
                                          s3.simplex(3, 0)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(s2xr::connected_sum(s3, s3, 99, 0, s3.simplex(3, 0)),
                      std::invalid_argument);
}

TEST_CASE("recipe evaluation produces the catalog spaces") {
    const BuiltSpace s2xs1 = s2xr::evaluate_recipe(s2xr::parse_recipe(
        "product(simplexbdry(3), cycle(3))"));
    REQUIRE(counts(s2xs1.complex) == std::vector<std::size_t>{12, 48, 72, 36});
    REQUIRE(s2xs1.loops.size() == 1);
    REQUIRE(s2xs1.loops.at("right.core").vertices.size() == 3);

    const BuiltSpace rp2xs1 = s2xr::evaluate_recipe(s2xr::parse_recipe(
        "product(quotient(subdiv(crosspoly(3)), antipode), cycle(3))"));
    REQUIRE(counts(rp2xs1.complex) == std::vector<std::size_t>{39, 255, 432, 216});
    REQUIRE(rp2xs1.loops.size() == 2);
    s2xr::validate_loop(rp2xs1.complex, rp2xs1.loops.at("left.core"));
    s2xr::validate_loop(rp2xs1.complex, rp2xs1.loops.at("right.core"));

    const BuiltSpace rp3rp3 = s2xr::evaluate_recipe(s2xr::parse_recipe(
        "consum(quotient(subdiv(crosspoly(4)), antipode), quotient(subdiv(crosspoly(4)), antipode))"));
    REQUIRE(counts(rp3rp3.complex) == std::vector<std::size_t>{76, 458, 764, 382});
    REQUIRE(rp3rp3.loops.size() == 2);
    s2xr::validate_loop(rp3rp3.complex, rp3rp3.loops.at("left.core"));
    s2xr::validate_loop(rp3rp3.complex, rp3rp3.loops.at("right.core"));
}

TEST_CASE("recipe quotient retries with extra subdivisions") {
    // Without an explicit subdiv the first attempt fails and is retried.
    const BuiltSpace q = s2xr::evaluate_recipe(s2xr::parse_recipe("quotient(crosspoly(3), antipode)"));
    REQUIRE(counts(q.complex) == std::vector<std::size_t>{13, 36, 24});
    REQUIRE(q.loops.count("core") == 1);
    REQUIRE_FALSE(q.involution.has_value());

    REQUIRE_THROWS_WITH(s2xr::evaluate_recipe(s2xr::parse_recipe("quotient(cycle(4), antipode)")),
                        Catch::Matchers::ContainsSubstring("carries no involution"));
}

TEST_CASE("recipe evaluation is deterministic") {
    const auto r = s2xr::parse_recipe("product(quotient(subdiv(crosspoly(3)), antipode), cycle(3))");
    const BuiltSpace a = s2xr::evaluate_recipe(r);
    const BuiltSpace b = s2xr::evaluate_recipe(r);
    REQUIRE(a.complex == b.complex);
    REQUIRE(a.complex.dump() == b.complex.dump());
    REQUIRE(a.loops.at("left.core") == b.loops.at("left.core"));
    REQUIRE(a.loops.at("right.core") == b.loops.at("right.core"));
}
