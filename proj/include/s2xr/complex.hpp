// complex.hpp: finite ordered simplicial complexes of dimension at most 3,
// with primitive models (cycle, simplex boundary, cross-polytope boundary),
// edge loops, and simplicial involutions.
#ifndef S2XR_COMPLEX_HPP
#define S2XR_COMPLEX_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace s2xr {

using VertexId = std::int32_t;
/// Strictly increasing vertex tuple.
using Simplex = std::vector<VertexId>;

inline constexpr int kMaxComplexDim = 3;

/// Ordered simplicial complex: per dimension k, the k-simplices are stored as
/// a flat, lexicographically sorted array of (k+1)-tuples over the global
/// vertex order 0..n-1.  Validated invariants: strictly increasing tuples,
/// closure under faces, every vertex used, dimension at most 3.
class OrderedComplex {
  public:
    OrderedComplex() = default;

    OrderedComplex(VertexId vertex_count, const std::vector<Simplex>& simplices)
        : n_(vertex_count) {
        if (n_ <= 0) throw std::invalid_argument("OrderedComplex: no vertices");
        std::array<std::set<Simplex>, kMaxComplexDim + 1> by_dim;
        for (const Simplex& s : simplices) {
            if (s.empty() || s.size() > kMaxComplexDim + 1)
                throw std::invalid_argument("OrderedComplex: simplex dimension out of range");
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (s[i] < 0 || s[i] >= n_)
                    throw std::invalid_argument("OrderedComplex: vertex out of range");
                if (i > 0 && s[i - 1] >= s[i])
                    throw std::invalid_argument("OrderedComplex: tuple not strictly increasing");
            }
            by_dim[s.size() - 1].insert(s);
        }
        for (int k = 0; k <= kMaxComplexDim; ++k) {
            flat_[k].reserve(by_dim[k].size() * static_cast<std::size_t>(k + 1));
            for (const Simplex& s : by_dim[k])
                flat_[k].insert(flat_[k].end(), s.begin(), s.end());
            if (!by_dim[k].empty()) dim_ = k;
        }
        for (VertexId v = 0; v < n_; ++v)
            if (!contains(0, {v}))
                throw std::invalid_argument("OrderedComplex: vertex " + std::to_string(v) +
                                            " has no 0-simplex");
        for (int k = 1; k <= dim_; ++k)
            for (std::size_t i = 0; i < count(k); ++i) {
                const Simplex s = simplex(k, i);
                Simplex face(s.size() - 1);
                for (std::size_t drop = 0; drop < s.size(); ++drop) {
                    face.clear();
                    for (std::size_t j = 0; j < s.size(); ++j)
                        if (j != drop) face.push_back(s[j]);
                    if (!contains(k - 1, face))
                        throw std::invalid_argument("OrderedComplex: not closed under faces");
                }
            }
    }

    /// Closure of the given simplices: all nonempty subsets are added.
    static OrderedComplex from_maximal(VertexId vertex_count, const std::vector<Simplex>& maximal) {
        std::vector<Simplex> all;
        for (const Simplex& s : maximal) {
            if (s.empty() || s.size() > kMaxComplexDim + 1)
                throw std::invalid_argument("OrderedComplex: simplex dimension out of range");
            const std::size_t m = s.size();
            for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
                Simplex sub;
                for (std::size_t j = 0; j < m; ++j)
                    if (mask & (std::size_t(1) << j)) sub.push_back(s[j]);
                all.push_back(std::move(sub));
            }
        }
        return OrderedComplex(vertex_count, all);
    }

    VertexId vertex_count() const { return n_; }
    int dim() const { return dim_; }

    std::size_t count(int k) const {
        if (k < 0 || k > kMaxComplexDim) return 0;
        return flat_[k].size() / static_cast<std::size_t>(k + 1);
    }

    Simplex simplex(int k, std::size_t i) const {
        const std::size_t w = static_cast<std::size_t>(k + 1);
        return Simplex(flat_[k].begin() + static_cast<std::ptrdiff_t>(i * w),
                       flat_[k].begin() + static_cast<std::ptrdiff_t>((i + 1) * w));
    }

    /// Position of the tuple in the sorted k-simplex array, by binary search.
    std::optional<std::size_t> index_of(int k, const Simplex& s) const {
        if (k < 0 || k > kMaxComplexDim || s.size() != static_cast<std::size_t>(k + 1))
            return std::nullopt;
        const std::size_t w = s.size();
        std::size_t lo = 0, hi = count(k);
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const VertexId* t = flat_[k].data() + mid * w;
            if (std::lexicographical_compare(t, t + w, s.data(), s.data() + w))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo < count(k) &&
            std::equal(s.begin(), s.end(), flat_[k].begin() + static_cast<std::ptrdiff_t>(lo * w)))
            return lo;
        return std::nullopt;
    }

    bool contains(int k, const Simplex& s) const { return index_of(k, s).has_value(); }

    std::int64_t euler() const {
        std::int64_t chi = 0;
        for (int k = 0; k <= dim_; ++k)
            chi += (k % 2 == 0) ? static_cast<std::int64_t>(count(k))
                                : -static_cast<std::int64_t>(count(k));
        return chi;
    }

    /// Byte-stable text form: one simplex per line, grouped by dimension.
    std::string dump() const {
        std::ostringstream out;
        out << "vertices " << n_ << "\n";
        for (int k = 0; k <= dim_; ++k) {
            out << "dim " << k << " count " << count(k) << "\n";
            for (std::size_t i = 0; i < count(k); ++i) {
                const Simplex s = simplex(k, i);
                for (std::size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j];
                out << "\n";
            }
        }
        return out.str();
    }

    friend bool operator==(const OrderedComplex&, const OrderedComplex&) = default;

  private:
    VertexId n_ = 0;
    int dim_ = 0;
    std::array<std::vector<VertexId>, kMaxComplexDim + 1> flat_;
};

/// Closed edge path: vertices v0..v_{m-1} with edges {v_i, v_{i+1}} and the
/// wrap-around edge {v_{m-1}, v0} all present in the owning complex.
struct EdgeLoop {
    std::vector<VertexId> vertices;
    friend bool operator==(const EdgeLoop&, const EdgeLoop&) = default;
};

inline void validate_loop(const OrderedComplex& k, const EdgeLoop& loop) {
    const std::size_t m = loop.vertices.size();
    if (m < 2) throw std::invalid_argument("EdgeLoop: fewer than two vertices");
    for (std::size_t i = 0; i < m; ++i) {
        VertexId a = loop.vertices[i];
        VertexId b = loop.vertices[(i + 1) % m];
        if (a == b) throw std::invalid_argument("EdgeLoop: repeated consecutive vertex");
        if (a > b) std::swap(a, b);
        if (!k.contains(1, {a, b}))
            throw std::invalid_argument("EdgeLoop: edge {" + std::to_string(a) + "," +
                                        std::to_string(b) + "} not in complex");
    }
}

/// Vertex permutation of order at most 2 that sends simplices to simplices.
struct SimplicialInvolution {
    std::vector<VertexId> image;  // image[v] = tau(v)
    friend bool operator==(const SimplicialInvolution&, const SimplicialInvolution&) = default;
};

inline Simplex map_simplex(const SimplicialInvolution& tau, const Simplex& s) {
    Simplex out;
    out.reserve(s.size());
    for (VertexId v : s) out.push_back(tau.image.at(static_cast<std::size_t>(v)));
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_involution(const SimplicialInvolution& tau, VertexId n) {
    if (tau.image.size() != static_cast<std::size_t>(n)) return false;
    for (VertexId v = 0; v < n; ++v) {
        const VertexId w = tau.image[static_cast<std::size_t>(v)];
        if (w < 0 || w >= n || tau.image[static_cast<std::size_t>(w)] != v) return false;
    }
    return true;
}

inline bool is_fixed_point_free(const SimplicialInvolution& tau) {
    for (std::size_t v = 0; v < tau.image.size(); ++v)
        if (tau.image[v] == static_cast<VertexId>(v)) return false;
    return true;
}

inline bool is_simplicial_map(const OrderedComplex& k, const SimplicialInvolution& tau) {
    for (int d = 0; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i)
            if (!k.contains(d, map_simplex(tau, k.simplex(d, i)))) return false;
    return true;
}

// --- primitive models ---------------------------------------------------------

/// n-gon model of the circle: vertices 0..n-1, edges between cyclic neighbors.
inline OrderedComplex make_cycle(VertexId n) {
    if (n < 3) throw std::invalid_argument("make_cycle: need at least 3 vertices");
    std::vector<Simplex> maximal;
    for (VertexId i = 0; i + 1 < n; ++i) maximal.push_back({i, i + 1});
    maximal.push_back({0, n - 1});
    return OrderedComplex::from_maximal(n, maximal);
}

/// Boundary of the d-simplex, a model of the (d-1)-sphere.
inline OrderedComplex make_simplex_boundary(int d) {
    if (d < 2 || d > 4) throw std::invalid_argument("make_simplex_boundary: d must be 2..4");
    std::vector<Simplex> maximal;
    for (VertexId drop = 0; drop <= d; ++drop) {
        Simplex facet;
        for (VertexId v = 0; v <= d; ++v)
            if (v != drop) facet.push_back(v);
        maximal.push_back(std::move(facet));
    }
    return OrderedComplex::from_maximal(d + 1, maximal);
}

/// Boundary of the d-dimensional cross-polytope: vertices 0..2d-1 with
/// antipodal pairs {i, i+d}; the 2^d facets pick one vertex from each pair.
inline OrderedComplex make_cross_polytope_boundary(int d) {
    if (d < 2 || d > 4) throw std::invalid_argument("make_cross_polytope_boundary: d must be 2..4");
    std::vector<Simplex> maximal;
    for (std::size_t signs = 0; signs < (std::size_t(1) << d); ++signs) {
        Simplex facet;
        for (int axis = 0; axis < d; ++axis)
            facet.push_back(static_cast<VertexId>(axis) +
                            ((signs >> axis) & 1 ? static_cast<VertexId>(d) : 0));
        std::sort(facet.begin(), facet.end());
        maximal.push_back(std::move(facet));
    }
    return OrderedComplex::from_maximal(2 * d, maximal);
}

/// The antipodal map i <-> i+d of the cross-polytope boundary.
inline SimplicialInvolution cross_polytope_antipode(int d) {
    if (d < 2 || d > 4) throw std::invalid_argument("cross_polytope_antipode: d must be 2..4");
    SimplicialInvolution tau;
    tau.image.resize(static_cast<std::size_t>(2 * d));
    for (VertexId v = 0; v < 2 * d; ++v)
        tau.image[static_cast<std::size_t>(v)] = (v + d) % (2 * d);
    return tau;
}

}  // namespace s2xr

#endif  // S2XR_COMPLEX_HPP
