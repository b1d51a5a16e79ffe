// gf2.hpp: bit-packed vectors and Gaussian elimination over F2.
#ifndef S2XR_GF2_HPP
#define S2XR_GF2_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace s2xr {

/// Fixed-length vector over F2, packed 64 bits per word.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const {
        check(i);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v) {
        check(i);
        const std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) {
        check(i);
        w_[i >> 6] ^= std::uint64_t(1) << (i & 63);
    }

    void operator^=(const BitVec& o) {
        if (o.n_ != n_) throw std::invalid_argument("BitVec: size mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }

    bool any() const {
        for (std::uint64_t w : w_)
            if (w) return true;
        return false;
    }

    /// Index of the lowest set bit, or size() if zero.
    std::size_t first_set() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return (i << 6) + static_cast<std::size_t>(std::countr_zero(w_[i]));
        return n_;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    friend bool operator==(const BitVec&, const BitVec&) = default;

  private:
    void check(std::size_t i) const {
        if (i >= n_) throw std::out_of_range("BitVec: index");
    }
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Row-echelon accumulator over F2 with deterministic pivots: each stored row
/// is identified by its lowest set bit, and stored rows are kept fully reduced
/// against each other (unique reduced form for membership tests).
class Gf2Echelon {
  public:
    explicit Gf2Echelon(std::size_t width) : width_(width) {}

    std::size_t width() const { return width_; }
    std::size_t rank() const { return rows_.size(); }

    /// Remainder of v after reduction by the stored rows.
    BitVec reduce(BitVec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (v.get(pivots_[i])) v ^= rows_[i];
        return v;
    }

    bool contains(const BitVec& v) const { return !reduce(v).any(); }

    /// Insert v's residue; returns true if the rank grew.
    bool insert(const BitVec& v) {
        BitVec r = reduce(v);
        if (!r.any()) return false;
        const std::size_t p = r.first_set();
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].get(p)) rows_[i] ^= r;
        // Keep rows ordered by pivot so reduce() scans deterministically.
        std::size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < p) ++at;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(r));
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), p);
        return true;
    }

    const std::vector<BitVec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

  private:
    std::size_t width_;
    std::vector<BitVec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Basis of {x : M x = 0}, rows of M being vectors over the x-coordinates.
/// Deterministic: pivots are lowest-index columns; basis vectors come out in
/// increasing free-column order, each with a 1 in its own free column.
inline std::vector<BitVec> gf2_nullspace(const std::vector<BitVec>& rows, std::size_t ncols) {
    Gf2Echelon ech(ncols);
    for (const BitVec& r : rows) {
        if (r.size() != ncols) throw std::invalid_argument("gf2_nullspace: row width");
        ech.insert(r);
    }
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t p : ech.pivots()) is_pivot[p] = true;

    std::vector<BitVec> basis;
    for (std::size_t j = 0; j < ncols; ++j) {
        if (is_pivot[j]) continue;
        BitVec v(ncols);
        v.set(j, true);
        // Echelon rows are fully reduced, so row i constrains exactly its pivot:
        // pivot value = row's entry at column j.
        for (std::size_t i = 0; i < ech.rows().size(); ++i)
            if (ech.rows()[i].get(j)) v.set(ech.pivots()[i], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve sum_i x_i * basis[i] = target; returns coefficient vector or empty
/// optional-like flag via bool.  Small helper for square-ish systems.
inline bool gf2_solve_combination(const std::vector<BitVec>& basis, const BitVec& target,
                                  std::vector<bool>& coeffs_out) {
    if (basis.empty()) {
        coeffs_out.clear();
        return !target.any();
    }
    const std::size_t width = basis[0].size();
    // Augment each basis vector with an indicator of its own index.
    const std::size_t aug = width + basis.size();
    Gf2Echelon ech(aug);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].size() != width) throw std::invalid_argument("gf2_solve_combination: width");
        BitVec row(aug);
        for (std::size_t j = 0; j < width; ++j)
            if (basis[i].get(j)) row.set(j, true);
        row.set(width + i, true);
        ech.insert(row);
    }
    BitVec t(aug);
    for (std::size_t j = 0; j < width; ++j)
        if (target.get(j)) t.set(j, true);
    BitVec r = ech.reduce(t);
    for (std::size_t j = 0; j < width; ++j)
        if (r.get(j)) return false;  // target outside the span
    coeffs_out.assign(basis.size(), false);
    for (std::size_t i = 0; i < basis.size(); ++i) coeffs_out[i] = r.get(width + i);
    return true;
}

}  // namespace s2xr

#endif  // S2XR_GF2_HPP
