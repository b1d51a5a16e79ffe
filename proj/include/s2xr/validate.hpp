// validate.hpp: sanity report for triangulations that should be closed
// connected 3-manifolds.
#ifndef S2XR_VALIDATE_HPP
#define S2XR_VALIDATE_HPP

#include <queue>
#include <string>
#include <vector>

#include "s2xr/cohomology.hpp"
#include "s2xr/complex.hpp"

namespace s2xr {

struct ValidationReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Checks the combinatorial signature of a closed connected 3-manifold:
/// pure dimension 3, every triangle in exactly two tetrahedra, connected
/// 1-skeleton, one top cohomology class, and the mod-2 Betti palindrome.
inline ValidationReport validate_closed_3complex(const OrderedComplex& k) {
    ValidationReport rep;
    if (k.dim() != 3) {
        rep.failures.push_back("dimension is " + std::to_string(k.dim()) + ", expected 3");
        return rep;
    }

    std::vector<int> tet_count(k.count(2), 0);
    for (std::size_t i = 0; i < k.count(3); ++i) {
        const Simplex s = k.simplex(3, i);
        Simplex face;
        for (std::size_t drop = 0; drop < 4; ++drop) {
            face.clear();
            for (std::size_t j = 0; j < 4; ++j)
                if (j != drop) face.push_back(s[j]);
            ++tet_count[*k.index_of(2, face)];
        }
    }
    for (std::size_t i = 0; i < k.count(2); ++i)
        if (tet_count[i] != 2) {
            const Simplex t = k.simplex(2, i);
            rep.failures.push_back("triangle {" + std::to_string(t[0]) + "," +
                                   std::to_string(t[1]) + "," + std::to_string(t[2]) + "} lies in " +
                                   std::to_string(tet_count[i]) + " tetrahedra, expected 2");
            break;
        }

    std::vector<std::vector<VertexId>> adj(static_cast<std::size_t>(k.vertex_count()));
    for (std::size_t i = 0; i < k.count(1); ++i) {
        const Simplex e = k.simplex(1, i);
        adj[static_cast<std::size_t>(e[0])].push_back(e[1]);
        adj[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }
    std::vector<bool> seen(static_cast<std::size_t>(k.vertex_count()), false);
    std::queue<VertexId> frontier;
    seen[0] = true;
    frontier.push(0);
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const VertexId u = frontier.front();
        frontier.pop();
        for (VertexId w : adj[static_cast<std::size_t>(u)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++reached;
                frontier.push(w);
            }
    }
    if (reached != static_cast<std::size_t>(k.vertex_count()))
        rep.failures.push_back("1-skeleton is disconnected (" + std::to_string(reached) + " of " +
                               std::to_string(k.vertex_count()) + " vertices reachable)");

    CochainCalculator cc(k);
    if (cc.betti(3) != 1)
        rep.failures.push_back("dim H^3 is " + std::to_string(cc.betti(3)) + ", expected 1");
    for (int d = 0; d <= 1; ++d)
        if (cc.betti(d) != cc.betti(3 - d))
            rep.failures.push_back("dim H^" + std::to_string(d) + " = " +
                                   std::to_string(cc.betti(d)) + " differs from dim H^" +
                                   std::to_string(3 - d) + " = " + std::to_string(cc.betti(3 - d)));
    return rep;
}

}  // namespace s2xr

#endif  // S2XR_VALIDATE_HPP
