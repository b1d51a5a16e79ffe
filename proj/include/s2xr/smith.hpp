// smith.hpp: exact integer Smith normal form and abelian invariants of a
// presentation's relator matrix.
#ifndef S2XR_SMITH_HPP
#define S2XR_SMITH_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "s2xr/presentation.hpp"

namespace s2xr {

/// Overflow-checked 64-bit arithmetic; the matrices here are tiny, so any
/// overflow means a logic error rather than a capacity problem.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow (add)");
    return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow (mul)");
    return r;
}

/// Dense row-major integer matrix.
class IntMat {
  public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static IntMat identity(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::int64_t& at(std::size_t i, std::size_t j) {
        bounds(i, j);
        return a_[i * cols_ + j];
    }
    std::int64_t at(std::size_t i, std::size_t j) const {
        bounds(i, j);
        return a_[i * cols_ + j];
    }

    friend IntMat operator*(const IntMat& x, const IntMat& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("IntMat: shape mismatch");
        IntMat z(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const std::int64_t v = x.at(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    z.at(i, j) = checked_add(z.at(i, j), checked_mul(v, y.at(k, j)));
            }
        return z;
    }

    friend bool operator==(const IntMat&, const IntMat&) = default;

  private:
    void bounds(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMat: index");
    }
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> a_;
};

/// D = P * R * Q with P, Q unimodular, D diagonal with non-negative entries
/// satisfying the divisibility chain d1 | d2 | ... .
struct SmithResult {
    IntMat d;
    IntMat p;  // rows x rows
    IntMat q;  // cols x cols
};

/// Classical elimination with the smallest-absolute-value pivot rule; all row
/// and column operations are mirrored into P and Q so D = P*R*Q exactly.
inline SmithResult smith_normal_form(const IntMat& r) {
    const std::size_t m = r.rows(), n = r.cols();
    SmithResult res{r, IntMat::identity(m), IntMat::identity(n)};
    IntMat& a = res.d;
    IntMat& p = res.p;
    IntMat& q = res.q;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < n; ++k) std::swap(a.at(i, k), a.at(j, k));
        for (std::size_t k = 0; k < m; ++k) std::swap(p.at(i, k), p.at(j, k));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < m; ++k) std::swap(a.at(k, i), a.at(k, j));
        for (std::size_t k = 0; k < n; ++k) std::swap(q.at(k, i), q.at(k, j));
    };
    auto add_row = [&](std::size_t dst, std::size_t src, std::int64_t c) {  // row dst += c*src
        for (std::size_t k = 0; k < n; ++k)
            a.at(dst, k) = checked_add(a.at(dst, k), checked_mul(c, a.at(src, k)));
        for (std::size_t k = 0; k < m; ++k)
            p.at(dst, k) = checked_add(p.at(dst, k), checked_mul(c, p.at(src, k)));
    };
    auto add_col = [&](std::size_t dst, std::size_t src, std::int64_t c) {  // col dst += c*src
        for (std::size_t k = 0; k < m; ++k)
            a.at(k, dst) = checked_add(a.at(k, dst), checked_mul(c, a.at(k, src)));
        for (std::size_t k = 0; k < n; ++k)
            q.at(k, dst) = checked_add(q.at(k, dst), checked_mul(c, q.at(k, src)));
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t k = 0; k < n; ++k) a.at(i, k) = -a.at(i, k);
        for (std::size_t k = 0; k < m; ++k) p.at(i, k) = -p.at(i, k);
    };

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Smallest-|.|-nonzero pivot in the trailing submatrix.
            std::size_t bi = t, bj = t;
            std::int64_t best = 0;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    const std::int64_t v = a.at(i, j);
                    if (v != 0 && (best == 0 || std::llabs(v) < std::llabs(best))) {
                        best = v;
                        bi = i;
                        bj = j;
                    }
                }
            if (best == 0) {
                for (std::size_t u = t; u < steps; ++u)
                    if (a.at(u, u) < 0) negate_row(u);
                return res;  // trailing submatrix exhausted
            }
            swap_rows(t, bi);
            swap_cols(t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a.at(i, t) == 0) continue;
                add_row(i, t, -(a.at(i, t) / a.at(t, t)));
                if (a.at(i, t) != 0) clean = false;  // remainder became the smaller entry
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a.at(t, j) == 0) continue;
                add_col(j, t, -(a.at(t, j) / a.at(t, t)));
                if (a.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Enforce the divisibility chain: fold a non-divisible entry into
            // column t and restart this step with a smaller pivot.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n && divides; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        add_col(t, j, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (a.at(t, t) < 0) negate_row(t);
    }
    return res;
}

/// Abelianization invariants: Z^rank + sum of Z/torsion[i].
struct AbelianizationData {
    std::int64_t rank = 0;
    std::vector<std::int64_t> torsion;  // entries >= 2, divisibility-ordered
    SmithResult snf;

    friend bool operator==(const AbelianizationData& a, const AbelianizationData& b) {
        return a.rank == b.rank && a.torsion == b.torsion;
    }
};

/// Relator exponent-sum matrix: one row per relator, one column per generator.
inline IntMat relator_matrix(const Presentation& pres) {
    const std::size_t m = pres.relators().size();
    const std::size_t n = static_cast<std::size_t>(pres.generator_count());
    IntMat r(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.at(i, j) = pres.relators()[i].exponent_sum(static_cast<std::int32_t>(j));
    return r;
}

inline AbelianizationData abelianization(const Presentation& pres) {
    AbelianizationData out;
    out.snf = smith_normal_form(relator_matrix(pres));
    const IntMat& d = out.snf.d;
    std::int64_t nonzero = 0;
    for (std::size_t t = 0; t < std::min(d.rows(), d.cols()); ++t) {
        const std::int64_t v = d.at(t, t);
        if (v == 0) continue;
        ++nonzero;
        if (v >= 2) out.torsion.push_back(v);
    }
    out.rank = static_cast<std::int64_t>(d.cols()) - nonzero;
    return out;
}

/// The three fundamental-group isomorphism types occurring among the double
/// covers in this geometry, or UNKNOWN.
enum class CatalogGroup { INF_CYCLIC, Z2_X_Z, Z2_STAR_Z2, UNKNOWN };

inline const char* to_string(CatalogGroup g) {
    switch (g) {
        case CatalogGroup::INF_CYCLIC: return "Z";
        case CatalogGroup::Z2_X_Z: return "Z2 x Z";
        case CatalogGroup::Z2_STAR_Z2: return "Z2 * Z2";
        default: return "unknown";
    }
}

/// Tag by abelian invariants alone: Z and Z2xZ are abelian, and Z2*Z2 is the
/// only group in this catalog with abelianization Z2+Z2.  The orientability
/// hint is accepted for interface symmetry but plays no role in the tag.
inline CatalogGroup recognize_catalog_group(const Presentation& pres,
                                            std::optional<std::uint8_t> /*orientable_hint*/ =
                                                std::nullopt) {
    const AbelianizationData ab = abelianization(pres);
    if (ab.rank == 1 && ab.torsion.empty()) return CatalogGroup::INF_CYCLIC;
    if (ab.rank == 1 && ab.torsion == std::vector<std::int64_t>{2}) return CatalogGroup::Z2_X_Z;
    if (ab.rank == 0 && ab.torsion == std::vector<std::int64_t>{2, 2})
        return CatalogGroup::Z2_STAR_Z2;
    return CatalogGroup::UNKNOWN;
}

}  // namespace s2xr

#endif  // S2XR_SMITH_HPP
