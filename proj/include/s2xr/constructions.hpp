// constructions.hpp: building triangulated spaces from recipes -- ordered
// simplicial products, barycentric subdivision, free quotients by an
// involution, and connected sums -- with named edge loops carried along.
#ifndef S2XR_CONSTRUCTIONS_HPP
#define S2XR_CONSTRUCTIONS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "s2xr/complex.hpp"
#include "s2xr/recipe.hpp"

namespace s2xr {

/// A complex together with named edge loops and, when one exists, a free
/// simplicial involution (available as quotient input further up a recipe).
struct BuiltSpace {
    OrderedComplex complex;
    std::map<std::string, EdgeLoop> loops;
    std::optional<SimplicialInvolution> involution;
};

namespace detail {

/// Simplices not properly contained in any other simplex of the complex.
inline std::vector<Simplex> maximal_simplices(const OrderedComplex& k) {
    std::array<std::vector<bool>, kMaxComplexDim + 1> is_face;
    for (int d = 0; d <= k.dim(); ++d) is_face[d].assign(k.count(d), false);
    for (int d = 1; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            const Simplex s = k.simplex(d, i);
            Simplex face;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                face.clear();
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (j != drop) face.push_back(s[j]);
                is_face[d - 1][*k.index_of(d - 1, face)] = true;
            }
        }
    std::vector<Simplex> out;
    for (int d = 0; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i)
            if (!is_face[d][i]) out.push_back(k.simplex(d, i));
    return out;
}

/// All monotone staircase paths through the (p+1) x (q+1) grid sigma x tau,
/// flattened to product vertex ids u * right_verts + w.
inline void staircase_paths(const Simplex& sigma, const Simplex& tau, VertexId right_verts,
                            std::vector<Simplex>& out) {
    Simplex path;
    path.reserve(sigma.size() + tau.size() - 1);
    auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> void {
        path.push_back(sigma[i] * right_verts + tau[j]);
        if (i + 1 == sigma.size() && j + 1 == tau.size()) {
            out.push_back(path);
        } else {
            if (i + 1 < sigma.size()) self(self, i + 1, j);
            if (j + 1 < tau.size()) self(self, i, j + 1);
        }
        path.pop_back();
    };
    rec(rec, 0, 0);
}

}  // namespace detail

/// Ordered (staircase) triangulation of |K| x |L|.  Vertex (u, w) gets id
/// u * L.vertex_count() + w; simplices are the monotone chains in sigma x tau
/// over all pairs of maximal simplices.  Contains K x {w} and {u} x L as
/// subcomplexes for every fixed vertex.
inline OrderedComplex ordered_product(const OrderedComplex& k, const OrderedComplex& l) {
    if (k.dim() + l.dim() > kMaxComplexDim)
        throw std::invalid_argument("ordered_product: product dimension exceeds 3");
    const VertexId nl = l.vertex_count();
    const std::vector<Simplex> mk = detail::maximal_simplices(k);
    const std::vector<Simplex> ml = detail::maximal_simplices(l);
    std::vector<Simplex> maximal;
    for (const Simplex& sigma : mk)
        for (const Simplex& tau : ml) detail::staircase_paths(sigma, tau, nl, maximal);
    return OrderedComplex::from_maximal(k.vertex_count() * nl, maximal);
}

/// Product of two built spaces.  Loops are re-rooted: "left.<name>" runs in
/// K x {0}, "right.<name>" in {0} x L.  Any involutions are not carried over.
inline BuiltSpace product_space(const BuiltSpace& left, const BuiltSpace& right) {
    BuiltSpace out;
    out.complex = ordered_product(left.complex, right.complex);
    const VertexId nl = right.complex.vertex_count();
    for (const auto& [name, loop] : left.loops) {
        EdgeLoop img;
        for (VertexId v : loop.vertices) img.vertices.push_back(v * nl + 0);
        validate_loop(out.complex, img);
        out.loops["left." + name] = std::move(img);
    }
    for (const auto& [name, loop] : right.loops) {
        EdgeLoop img;
        for (VertexId w : loop.vertices) img.vertices.push_back(0 * nl + w);
        validate_loop(out.complex, img);
        out.loops["right." + name] = std::move(img);
    }
    return out;
}

/// Barycentric subdivision.  The barycenter of the i-th k-simplex gets id
/// (number of simplices of dimension < k) + i, so original vertices keep
/// their ids.  Simplices of the subdivision are chains in the face poset.
inline BuiltSpace barycentric_subdivision(const BuiltSpace& space) {
    const OrderedComplex& k = space.complex;
    std::array<std::size_t, kMaxComplexDim + 2> offset{};
    offset[0] = 0;
    for (int d = 0; d <= kMaxComplexDim; ++d) offset[d + 1] = offset[d] + k.count(d);
    const auto bary_id = [&](int d, std::size_t i) {
        return static_cast<VertexId>(offset[d] + i);
    };
    const auto bary_of = [&](const Simplex& s) {
        const int d = static_cast<int>(s.size()) - 1;
        return bary_id(d, *k.index_of(d, s));
    };

    // Every chain in the face poset extends through a full flag of some
    // maximal simplex, so the closure of all such flags is the subdivision.
    std::vector<Simplex> flags;
    for (const Simplex& top : detail::maximal_simplices(k)) {
        Simplex perm = top;
        std::sort(perm.begin(), perm.end());
        do {
            Simplex flag;
            Simplex partial;
            for (VertexId v : perm) {
                partial.push_back(v);
                Simplex sorted = partial;
                std::sort(sorted.begin(), sorted.end());
                flag.push_back(bary_of(sorted));
            }
            std::sort(flag.begin(), flag.end());
            flags.push_back(std::move(flag));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    BuiltSpace out;
    out.complex = OrderedComplex::from_maximal(static_cast<VertexId>(offset[k.dim() + 1]), flags);
    for (const auto& [name, loop] : space.loops) {
        EdgeLoop img;
        const std::size_t m = loop.vertices.size();
        for (std::size_t i = 0; i < m; ++i) {
            VertexId a = loop.vertices[i];
            VertexId b = loop.vertices[(i + 1) % m];
            img.vertices.push_back(a);
            img.vertices.push_back(bary_of({std::min(a, b), std::max(a, b)}));
        }
        validate_loop(out.complex, img);
        out.loops[name] = std::move(img);
    }
    if (space.involution) {
        SimplicialInvolution tau;
        tau.image.resize(static_cast<std::size_t>(out.complex.vertex_count()));
        for (int d = 0; d <= k.dim(); ++d)
            for (std::size_t i = 0; i < k.count(d); ++i)
                tau.image[static_cast<std::size_t>(bary_id(d, i))] =
                    bary_of(map_simplex(*space.involution, k.simplex(d, i)));
        if (!is_involution(tau, out.complex.vertex_count()) ||
            !is_simplicial_map(out.complex, tau))
            throw std::logic_error("barycentric_subdivision: involution transport failed");
        out.involution = std::move(tau);
    }
    return out;
}

/// Outcome of attempting the quotient of a complex by a free involution.
/// The quotient is usable only when `valid`; otherwise `failure` names the
/// simplex-level obstruction.  `orbit_of` maps each vertex upstairs to its
/// orbit id, and `order2_loop` projects a shortest path from vertex 0 to its
/// antipode, giving a loop that generates the deck Z/2 downstairs.
struct QuotientResult {
    bool valid = false;
    std::string failure;
    OrderedComplex complex;
    std::vector<VertexId> orbit_of;
    EdgeLoop order2_loop;
};

inline QuotientResult free_quotient(const OrderedComplex& k, const SimplicialInvolution& tau,
                                    VertexId base_point = 0) {
    if (!is_involution(tau, k.vertex_count()))
        throw std::invalid_argument("free_quotient: not an involution of the vertex set");
    if (!is_fixed_point_free(tau))
        throw std::invalid_argument("free_quotient: involution has a fixed vertex");
    if (!is_simplicial_map(k, tau))
        throw std::invalid_argument("free_quotient: involution is not simplicial");
    if (base_point < 0 || base_point >= k.vertex_count())
        throw std::invalid_argument("free_quotient: base point out of range");

    QuotientResult res;

    // Orbit ids: rank of min(v, tau v) among the orbit representatives.
    std::vector<VertexId> reps;
    for (VertexId v = 0; v < k.vertex_count(); ++v)
        if (v < tau.image[static_cast<std::size_t>(v)]) reps.push_back(v);
    std::vector<VertexId> rank(static_cast<std::size_t>(k.vertex_count()), -1);
    for (std::size_t i = 0; i < reps.size(); ++i)
        rank[static_cast<std::size_t>(reps[i])] = static_cast<VertexId>(i);
    res.orbit_of.resize(static_cast<std::size_t>(k.vertex_count()));
    for (VertexId v = 0; v < k.vertex_count(); ++v)
        res.orbit_of[static_cast<std::size_t>(v)] =
            rank[static_cast<std::size_t>(std::min(v, tau.image[static_cast<std::size_t>(v)]))];

    const auto describe = [&](const Simplex& s) {
        std::string t = "{";
        for (std::size_t j = 0; j < s.size(); ++j) t += (j ? "," : "") + std::to_string(s[j]);
        return t + "}";
    };

    // (i) No simplex may meet its image, else its orbit-set degenerates.
    for (int d = 0; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            const Simplex s = k.simplex(d, i);
            const Simplex t = map_simplex(tau, s);
            std::vector<VertexId> meet;
            std::set_intersection(s.begin(), s.end(), t.begin(), t.end(),
                                  std::back_inserter(meet));
            if (!meet.empty()) {
                res.failure = "simplex " + describe(s) + " meets its involution image " +
                              describe(t);
                return res;
            }
        }

    // (ii) The orbit-set map must be exactly two-to-one in every dimension.
    std::vector<Simplex> downstairs;
    for (int d = 0; d <= k.dim(); ++d) {
        std::map<Simplex, std::vector<std::size_t>> fibers;
        for (std::size_t i = 0; i < k.count(d); ++i) {
            Simplex img;
            for (VertexId v : k.simplex(d, i))
                img.push_back(res.orbit_of[static_cast<std::size_t>(v)]);
            std::sort(img.begin(), img.end());
            fibers[img].push_back(i);
        }
        for (const auto& [img, pre] : fibers) {
            if (pre.size() != 2) {
                res.failure = std::to_string(pre.size()) + " simplices share the orbit set " +
                              describe(img) + ", first " + describe(k.simplex(d, pre[0]));
                return res;
            }
            downstairs.push_back(img);
        }
    }

    res.complex = OrderedComplex(static_cast<VertexId>(reps.size()), downstairs);

    // Shortest path from the base point to its antipode, projected downstairs.
    // Deterministic: neighbors scanned in ascending order, first parent kept.
    std::vector<std::vector<VertexId>> adj(static_cast<std::size_t>(k.vertex_count()));
    for (std::size_t i = 0; i < k.count(1); ++i) {
        const Simplex e = k.simplex(1, i);
        adj[static_cast<std::size_t>(e[0])].push_back(e[1]);
        adj[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    std::vector<VertexId> parent(static_cast<std::size_t>(k.vertex_count()), -1);
    std::queue<VertexId> frontier;
    parent[static_cast<std::size_t>(base_point)] = base_point;
    frontier.push(base_point);
    const VertexId goal = tau.image[static_cast<std::size_t>(base_point)];
    while (!frontier.empty() && parent[static_cast<std::size_t>(goal)] < 0) {
        const VertexId u = frontier.front();
        frontier.pop();
        for (VertexId w : adj[static_cast<std::size_t>(u)])
            if (parent[static_cast<std::size_t>(w)] < 0) {
                parent[static_cast<std::size_t>(w)] = u;
                frontier.push(w);
            }
    }
    if (parent[static_cast<std::size_t>(goal)] < 0)
        throw std::logic_error("free_quotient: base point and its antipode are disconnected");
    std::vector<VertexId> path;
    for (VertexId v = goal; v != base_point; v = parent[static_cast<std::size_t>(v)])
        path.push_back(v);
    path.push_back(base_point);
    std::reverse(path.begin(), path.end());
    path.pop_back();  // endpoint projects to the start vertex
    for (VertexId v : path)
        res.order2_loop.vertices.push_back(res.orbit_of[static_cast<std::size_t>(v)]);
    validate_loop(res.complex, res.order2_loop);

    res.valid = true;
    return res;
}

/// Connected sum along two 3-simplices: drop both, keep their boundaries, and
/// identify the boundary spheres via `matching` (i-th vertex of L's facet to
/// matching[i], a vertex of K's facet).  Remaining L vertices are renumbered
/// in ascending order starting at K's vertex count.
inline OrderedComplex connected_sum(const OrderedComplex& k, const OrderedComplex& l,
                                    std::size_t facet_k, std::size_t facet_l,
                                    const std::vector<VertexId>& matching) {
    if (k.dim() != 3 || l.dim() != 3)
        throw std::invalid_argument("connected_sum: both summands must be 3-complexes");
    if (facet_k >= k.count(3) || facet_l >= l.count(3))
        throw std::invalid_argument("connected_sum: facet index out of range");
    const Simplex fk = k.simplex(3, facet_k);
    const Simplex fl = l.simplex(3, facet_l);
    if (matching.size() != 4)
        throw std::invalid_argument("connected_sum: matching must list 4 vertices");
    for (VertexId v : matching)
        if (std::find(fk.begin(), fk.end(), v) == fk.end())
            throw std::invalid_argument("connected_sum: matching target not in the K facet");
    if (std::set<VertexId>(matching.begin(), matching.end()).size() != 4)
        throw std::invalid_argument("connected_sum: matching is not injective");

    std::vector<VertexId> lmap(static_cast<std::size_t>(l.vertex_count()), -1);
    for (std::size_t i = 0; i < 4; ++i) lmap[static_cast<std::size_t>(fl[i])] = matching[i];
    VertexId next = k.vertex_count();
    for (VertexId v = 0; v < l.vertex_count(); ++v)
        if (lmap[static_cast<std::size_t>(v)] < 0) lmap[static_cast<std::size_t>(v)] = next++;

    std::vector<Simplex> simplices;
    for (int d = 0; d <= 3; ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            if (d == 3 && i == facet_k) continue;
            simplices.push_back(k.simplex(d, i));
        }
    for (int d = 0; d <= 3; ++d)
        for (std::size_t i = 0; i < l.count(d); ++i) {
            if (d == 3 && i == facet_l) continue;
            Simplex img;
            for (VertexId v : l.simplex(d, i)) img.push_back(lmap[static_cast<std::size_t>(v)]);
            std::sort(img.begin(), img.end());
            simplices.push_back(std::move(img));
        }
    return OrderedComplex(next, simplices);
}

/// Connected sum of two built spaces.  Picks in each summand the first
/// 3-simplex disjoint from every named loop, drops the pair, and glues the
/// boundary spheres by matching sorted vertex tuples.  Loops are re-rooted
/// as "left.<name>" / "right.<name>".  Involutions are not carried over.
inline BuiltSpace consum_space(const BuiltSpace& left, const BuiltSpace& right) {
    const auto pick_facet = [](const BuiltSpace& s) -> std::size_t {
        std::set<VertexId> used;
        for (const auto& [name, loop] : s.loops)
            used.insert(loop.vertices.begin(), loop.vertices.end());
        for (std::size_t i = 0; i < s.complex.count(3); ++i) {
            const Simplex f = s.complex.simplex(3, i);
            if (std::none_of(f.begin(), f.end(), [&](VertexId v) { return used.count(v); }))
                return i;
        }
        throw std::domain_error("consum_space: every 3-simplex touches a named loop");
    };
    const std::size_t fk = pick_facet(left);
    const std::size_t fl = pick_facet(right);

    BuiltSpace out;
    out.complex =
        connected_sum(left.complex, right.complex, fk, fl, left.complex.simplex(3, fk));

    std::vector<VertexId> lmap(static_cast<std::size_t>(right.complex.vertex_count()), -1);
    const Simplex flv = right.complex.simplex(3, fl);
    const Simplex fkv = left.complex.simplex(3, fk);
    for (std::size_t i = 0; i < 4; ++i) lmap[static_cast<std::size_t>(flv[i])] = fkv[i];
    VertexId next = left.complex.vertex_count();
    for (VertexId v = 0; v < right.complex.vertex_count(); ++v)
        if (lmap[static_cast<std::size_t>(v)] < 0) lmap[static_cast<std::size_t>(v)] = next++;

    for (const auto& [name, loop] : left.loops) {
        validate_loop(out.complex, loop);
        out.loops["left." + name] = loop;
    }
    for (const auto& [name, loop] : right.loops) {
        EdgeLoop img;
        for (VertexId v : loop.vertices)
            img.vertices.push_back(lmap[static_cast<std::size_t>(v)]);
        validate_loop(out.complex, img);
        out.loops["right." + name] = std::move(img);
    }
    return out;
}

/// Evaluate a recipe expression to a built space.  Quotients retry after up
/// to two extra barycentric subdivisions before giving up; the "core" loop of
/// a quotient is the projected shortest path from vertex 0 to its antipode.
inline BuiltSpace evaluate_recipe(const RecipeExpr& e) {
    switch (e.kind) {
        case RecipeExpr::Kind::Cycle: {
            BuiltSpace out;
            out.complex = make_cycle(e.arg);
            EdgeLoop core;
            for (VertexId v = 0; v < e.arg; ++v) core.vertices.push_back(v);
            out.loops["core"] = std::move(core);
            return out;
        }
        case RecipeExpr::Kind::SimplexBoundary: {
            BuiltSpace out;
            out.complex = make_simplex_boundary(e.arg);
            return out;
        }
        case RecipeExpr::Kind::CrossPolytope: {
            BuiltSpace out;
            out.complex = make_cross_polytope_boundary(e.arg);
            out.involution = cross_polytope_antipode(e.arg);
            return out;
        }
        case RecipeExpr::Kind::Subdiv: return barycentric_subdivision(evaluate_recipe(e.children[0]));
        case RecipeExpr::Kind::Quotient: {
            BuiltSpace upstairs = evaluate_recipe(e.children[0]);
            if (!upstairs.involution)
                throw std::domain_error("quotient: operand carries no involution");
            std::string last_failure;
            for (int extra = 0; extra <= 2; ++extra) {
                if (extra > 0) upstairs = barycentric_subdivision(upstairs);
                QuotientResult q = free_quotient(upstairs.complex, *upstairs.involution);
                if (!q.valid) {
                    last_failure = q.failure;
                    continue;
                }
                BuiltSpace out;
                out.complex = std::move(q.complex);
                for (const auto& [name, loop] : upstairs.loops) {
                    EdgeLoop img;
                    for (VertexId v : loop.vertices)
                        img.vertices.push_back(q.orbit_of[static_cast<std::size_t>(v)]);
                    validate_loop(out.complex, img);
                    out.loops[name] = std::move(img);
                }
                out.loops["core"] = std::move(q.order2_loop);
                return out;
            }
            throw std::domain_error("quotient: no valid quotient within two subdivisions (" +
                                    last_failure + ")");
        }
        case RecipeExpr::Kind::Product:
            return product_space(evaluate_recipe(e.children[0]), evaluate_recipe(e.children[1]));
        case RecipeExpr::Kind::ConSum:
            return consum_space(evaluate_recipe(e.children[0]), evaluate_recipe(e.children[1]));
    }
    throw std::logic_error("evaluate_recipe: unhandled recipe kind");
}

}  // namespace s2xr

#endif  // S2XR_CONSTRUCTIONS_HPP
