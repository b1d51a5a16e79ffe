// cohomology.hpp: simplicial cochains over F2 -- coboundary matrices, lazy
// cohomology bases, the ordered cup product, loop evaluation, and recovery of
// the cocycle realizing a Z/2 character of the fundamental group.
#ifndef S2XR_COHOMOLOGY_HPP
#define S2XR_COHOMOLOGY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "s2xr/complex.hpp"
#include "s2xr/gf2.hpp"
#include "s2xr/presentation.hpp"

namespace s2xr {

/// Dense F2 matrix as a list of bit-packed rows.
struct F2Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BitVec> row;

    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;
};

/// Cochain engine bound to one complex.  A k-cochain is a BitVec indexed by
/// the ordered k-simplices.  Bases and image spaces are computed on first use
/// and cached.
class CochainCalculator {
  public:
    explicit CochainCalculator(OrderedComplex complex) : k_(std::move(complex)) {
        basis_.resize(static_cast<std::size_t>(k_.dim()) + 1);
        image_.resize(static_cast<std::size_t>(k_.dim()) + 1);
    }

    const OrderedComplex& complex() const { return k_; }

    /// Matrix of delta^k : C^k -> C^{k+1}; row i lists the k-faces of the
    /// i-th (k+1)-simplex.  At k = dim the matrix has zero rows.
    F2Matrix coboundary_matrix(int k) const {
        if (k < 0 || k > k_.dim()) throw std::out_of_range("coboundary_matrix: degree");
        F2Matrix m;
        m.cols = k_.count(k);
        m.rows = (k == k_.dim()) ? 0 : k_.count(k + 1);
        for (std::size_t i = 0; i < m.rows; ++i) {
            BitVec r(m.cols);
            const Simplex s = k_.simplex(k + 1, i);
            Simplex face;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                face.clear();
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (j != drop) face.push_back(s[j]);
                r.set(*k_.index_of(k, face), true);
            }
            m.row.push_back(std::move(r));
        }
        return m;
    }

    /// Representatives of a basis of H^k = ker delta^k / im delta^{k-1},
    /// each reduced against the coboundary space (deterministic).
    const std::vector<BitVec>& cohomology_basis(int k) const {
        if (k < 0 || k > k_.dim()) throw std::out_of_range("cohomology_basis: degree");
        auto& slot = basis_[static_cast<std::size_t>(k)];
        if (!slot) {
            const F2Matrix dk = coboundary_matrix(k);
            const std::vector<BitVec> kernel = gf2_nullspace(dk.row, dk.cols);
            const Gf2Echelon& im = image_echelon(k);
            Gf2Echelon seen(k_.count(k));
            for (const BitVec& r : im.rows()) seen.insert(r);
            std::vector<BitVec> reps;
            for (const BitVec& z : kernel) {
                BitVec residue = seen.reduce(z);
                if (seen.insert(residue)) reps.push_back(std::move(residue));
            }
            slot = std::move(reps);
        }
        return *slot;
    }

    std::size_t betti(int k) const { return cohomology_basis(k).size(); }

    /// Whether the k-cochain lies in the image of delta^{k-1}.
    bool is_coboundary(int k, const BitVec& c) const {
        if (k < 0 || k > k_.dim()) throw std::out_of_range("is_coboundary: degree");
        if (c.size() != k_.count(k)) throw std::invalid_argument("is_coboundary: cochain width");
        return image_echelon(k).contains(c);
    }

    /// Ordered cup product of a p-cochain and a q-cochain: on a (p+q)-simplex
    /// the value is a(front p-face) * b(back q-face) in the vertex order.
    BitVec cup(int p, int q, const BitVec& a, const BitVec& b) const {
        if (p < 0 || q < 0 || p + q > k_.dim()) throw std::out_of_range("cup: degrees");
        if (a.size() != k_.count(p) || b.size() != k_.count(q))
            throw std::invalid_argument("cup: cochain width");
        const int n = p + q;
        BitVec out(k_.count(n));
        for (std::size_t i = 0; i < k_.count(n); ++i) {
            const Simplex s = k_.simplex(n, i);
            const Simplex front(s.begin(), s.begin() + p + 1);
            const Simplex back(s.begin() + p, s.end());
            if (a.get(*k_.index_of(p, front)) && b.get(*k_.index_of(q, back))) out.set(i, true);
        }
        return out;
    }

    /// Triple cup power of a 1-cochain, as a 3-cochain.
    BitVec cup_cube(const BitVec& c) const { return cup(2, 1, cup(1, 1, c, c), c); }

    /// Whether the cup cube of the 1-cocycle is nonzero in H^3.
    bool cup_cube_nonzero(const BitVec& c) const { return !is_coboundary(3, cup_cube(c)); }

    /// Z/2 pairing of a 1-cochain with a closed edge loop.
    std::uint8_t evaluate(const BitVec& cochain, const EdgeLoop& loop) const {
        if (cochain.size() != k_.count(1)) throw std::invalid_argument("evaluate: cochain width");
        std::uint8_t acc = 0;
        const std::size_t m = loop.vertices.size();
        for (std::size_t i = 0; i < m; ++i) {
            VertexId a = loop.vertices[i];
            VertexId b = loop.vertices[(i + 1) % m];
            if (a > b) std::swap(a, b);
            const auto idx = k_.index_of(1, {a, b});
            if (!idx) throw std::invalid_argument("evaluate: loop edge not in complex");
            acc = static_cast<std::uint8_t>(acc ^ (cochain.get(*idx) ? 1 : 0));
        }
        return acc;
    }

  private:
    /// Echelonized generators of im delta^{k-1} inside C^k (empty at k = 0).
    const Gf2Echelon& image_echelon(int k) const {
        auto& slot = image_[static_cast<std::size_t>(k)];
        if (!slot) {
            Gf2Echelon ech(k_.count(k));
            if (k > 0) {
                std::vector<BitVec> cols(k_.count(k - 1), BitVec(k_.count(k)));
                for (std::size_t i = 0; i < k_.count(k); ++i) {
                    const Simplex s = k_.simplex(k, i);
                    Simplex face;
                    for (std::size_t drop = 0; drop < s.size(); ++drop) {
                        face.clear();
                        for (std::size_t j = 0; j < s.size(); ++j)
                            if (j != drop) face.push_back(s[j]);
                        cols[*k_.index_of(k - 1, face)].set(i, true);
                    }
                }
                for (const BitVec& c : cols) ech.insert(c);
            }
            slot = std::move(ech);
        }
        return *slot;
    }

    OrderedComplex k_;
    mutable std::vector<std::optional<std::vector<BitVec>>> basis_;
    mutable std::vector<std::optional<Gf2Echelon>> image_;
};

/// The 1-cocycle whose loop evaluations realize the character phi: for each
/// generator, the sum of its reference loops must evaluate to phi(generator).
/// Requires the evaluation system to have exactly one solution over the
/// cohomology basis; otherwise the loop data cannot separate the classes.
inline BitVec cocycle_for_hom(const CochainCalculator& cc,
                              const std::map<std::string, EdgeLoop>& loops,
                              const std::vector<std::string>& generator_names,
                              const std::map<std::string, std::vector<std::string>>& loop_refs,
                              const GroupHom2& phi) {
    if (static_cast<std::size_t>(phi.generator_count()) != generator_names.size())
        throw std::invalid_argument("cocycle_for_hom: generator count mismatch");
    const std::vector<BitVec>& basis = cc.cohomology_basis(1);
    if (basis.size() > 20) throw std::domain_error("cocycle_for_hom: basis too large");

    // Evaluation matrix: rows = generators, columns = basis classes.
    std::vector<std::vector<std::uint8_t>> m(generator_names.size());
    for (std::size_t r = 0; r < generator_names.size(); ++r) {
        const auto refs = loop_refs.find(generator_names[r]);
        if (refs == loop_refs.end() || refs->second.empty())
            throw std::domain_error("cocycle_for_hom: no loop reference for generator '" +
                                    generator_names[r] + "'");
        m[r].assign(basis.size(), 0);
        for (const std::string& ref : refs->second) {
            const auto loop = loops.find(ref);
            if (loop == loops.end())
                throw std::domain_error("cocycle_for_hom: unknown loop '" + ref + "'");
            for (std::size_t c = 0; c < basis.size(); ++c)
                m[r][c] = static_cast<std::uint8_t>(m[r][c] ^ cc.evaluate(basis[c], loop->second));
        }
    }

    std::optional<std::size_t> solution;
    for (std::size_t y = 0; y < (std::size_t(1) << basis.size()); ++y) {
        bool ok = true;
        for (std::size_t r = 0; r < m.size() && ok; ++r) {
            std::uint8_t acc = 0;
            for (std::size_t c = 0; c < basis.size(); ++c)
                if (y & (std::size_t(1) << c)) acc ^= m[r][c];
            ok = (acc == phi.value(static_cast<std::int32_t>(r)));
        }
        if (!ok) continue;
        if (solution) throw std::domain_error("cocycle_for_hom: evaluation system is singular");
        solution = y;
    }
    if (!solution) throw std::domain_error("cocycle_for_hom: character is not realizable");

    BitVec out(cc.complex().count(1));
    for (std::size_t c = 0; c < basis.size(); ++c)
        if (*solution & (std::size_t(1) << c)) out ^= basis[c];
    return out;
}

}  // namespace s2xr

#endif  // S2XR_COHOMOLOGY_HPP
