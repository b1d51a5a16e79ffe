// buindex.hpp: the Z/2 index of the free involution attached to a double
// cover -- integer factorization witness, cup-cube escalation over the model
// triangulation, the closed-form table, and the cross-check report.
#ifndef S2XR_BUINDEX_HPP
#define S2XR_BUINDEX_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "s2xr/cohomology.hpp"
#include "s2xr/constructions.hpp"
#include "s2xr/covers.hpp"
#include "s2xr/smith.hpp"
#include "s2xr/validate.hpp"

namespace s2xr {

/// Basis of the lattice of homomorphisms G -> Z, as columns of the Smith Q
/// matrix at the zero diagonal positions of the relator matrix.
inline std::vector<std::vector<std::int64_t>> hom_to_z_lattice(const Presentation& pres) {
    const IntMat r = relator_matrix(pres);
    const SmithResult snf = smith_normal_form(r);
    const std::size_t n = r.cols();
    std::vector<std::vector<std::int64_t>> basis;
    for (std::size_t t = 0; t < n; ++t) {
        if (t < std::min(r.rows(), n) && snf.d.at(t, t) != 0) continue;
        std::vector<std::int64_t> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = snf.q.at(i, t);
        basis.push_back(std::move(col));
    }
    return basis;
}

/// An integer character psi: G -> Z reducing to phi mod 2, if one exists.
inline std::optional<std::vector<std::int64_t>> factors_through_Z(const Presentation& pres,
                                                                  const GroupHom2& phi) {
    if (phi.generator_count() != pres.generator_count())
        throw std::invalid_argument("factors_through_Z: generator count mismatch");
    const auto lattice = hom_to_z_lattice(pres);
    const std::size_t n = static_cast<std::size_t>(pres.generator_count());

    std::vector<BitVec> mod2;
    for (const auto& col : lattice) {
        BitVec b(n);
        for (std::size_t i = 0; i < n; ++i)
            if (col[i] % 2 != 0) b.set(i, true);
        mod2.push_back(std::move(b));
    }
    BitVec target(n);
    for (std::size_t i = 0; i < n; ++i)
        if (phi.value(static_cast<std::int32_t>(i))) target.set(i, true);

    std::vector<bool> coeffs;
    if (!gf2_solve_combination(mod2, target, coeffs)) return std::nullopt;
    std::vector<std::int64_t> psi(n, 0);
    for (std::size_t j = 0; j < lattice.size(); ++j)
        if (coeffs[j])
            for (std::size_t i = 0; i < n; ++i) psi[i] = checked_add(psi[i], lattice[j][i]);
    return psi;
}

/// Triangulation-side state for one model: the built space (when the catalog
/// provides a recipe) and its cochain engine.  Construction is deferred until
/// first use and memoized; the model must outlive this object.
class ModelGeometry {
  public:
    explicit ModelGeometry(const ManifoldModel& model) : model_(&model) {}

    const ManifoldModel& model() const { return *model_; }
    bool has_triangulation() const { return model_->recipe.has_value(); }

    const BuiltSpace& space() const {
        ensure();
        return *space_;
    }
    const CochainCalculator& cochains() const {
        ensure();
        return *cochains_;
    }

    /// The 1-cocycle whose marked-loop evaluations realize phi.
    BitVec character_cocycle(const GroupHom2& phi) const {
        ensure();
        return cocycle_for_hom(*cochains_, space_->loops, model_->presentation.generator_names(),
                               model_->loop_refs, phi);
    }

  private:
    void ensure() const {
        if (cochains_) return;
        if (!model_->recipe)
            throw std::domain_error("model " + model_->name + " carries no triangulation recipe");
        space_ = evaluate_recipe(*model_->recipe);
        const ValidationReport rep = validate_closed_3complex(space_->complex);
        if (!rep.ok())
            throw std::domain_error("triangulation of " + model_->name +
                                    " is not a closed 3-manifold: " + rep.failures.front());
        cochains_.emplace(space_->complex);
    }

    const ManifoldModel* model_;
    mutable std::optional<BuiltSpace> space_;
    mutable std::optional<CochainCalculator> cochains_;
};

/// How an index value was decided.
enum class IndexWitness { Z_FACTORIZATION, CUP_CUBE_NONZERO, DEFAULT_TWO };

inline const char* to_string(IndexWitness w) {
    switch (w) {
        case IndexWitness::Z_FACTORIZATION: return "factors through Z";
        case IndexWitness::CUP_CUBE_NONZERO: return "cup cube nonzero";
        case IndexWitness::DEFAULT_TWO: return "no escalation";
    }
    return "?";
}

struct IndexDecision {
    int index = 0;
    IndexWitness witness = IndexWitness::DEFAULT_TWO;
    std::optional<std::vector<std::int64_t>> psi;  // present for Z_FACTORIZATION
};

/// Decision procedure for the index of the pair (double cover, deck map)
/// attached to phi: index 1 iff phi lifts to an integer character; otherwise
/// 3 if the cocycle realizing phi has nonzero cup cube, else 2.
inline IndexDecision bu_index(const ManifoldModel& model, const GroupHom2& phi,
                              const ModelGeometry& geometry) {
    if (!phi.is_surjective()) throw std::invalid_argument("bu_index: character must be onto Z/2");
    IndexDecision out;
    if (auto psi = factors_through_Z(model.presentation, phi)) {
        out.index = 1;
        out.witness = IndexWitness::Z_FACTORIZATION;
        out.psi = std::move(psi);
        return out;
    }
    const BitVec c = geometry.character_cocycle(phi);
    if (geometry.cochains().cup_cube_nonzero(c)) {
        out.index = 3;
        out.witness = IndexWitness::CUP_CUBE_NONZERO;
    } else {
        out.index = 2;
        out.witness = IndexWitness::DEFAULT_TWO;
    }
    return out;
}

/// Closed-form index table for the four catalog manifolds, in terms of the
/// character values on the standard generators.
inline int closed_form_index(const ManifoldModel& model, const GroupHom2& phi) {
    const auto value_of = [&](const char* gen) -> std::uint8_t {
        const auto idx = model.presentation.generator_index(gen);
        if (!idx) throw std::domain_error("closed_form_index: missing generator");
        return phi.value(*idx);
    };
    if (model.name == kS2xS1 || model.name == kE) return 1;
    if (model.name == kRP2xS1) {
        if (value_of("v") == 0) return 1;
        return value_of("h") == 0 ? 2 : 3;
    }
    if (model.name == kRP3RP3) return value_of("h") == 0 ? 2 : 3;
    throw std::domain_error("closed_form_index: no closed form for model " + model.name);
}

/// One row of the cup-cube cross-check: the computed value next to the two
/// textual readings of the escalation criterion and the published table.
struct CrossCheckRow {
    GroupHom2 phi;
    std::string phi_text;         // e.g. "(v:0,h:1)"
    bool cube_computed = false;   // engine: cup cube of the realizing cocycle
    bool sum_reading = false;     // criterion read as phi(h)+phi(v) != 0
    bool product_reading = false; // criterion read as both values nonzero
    bool table_says_three = false;
};

struct CrossCheckReport {
    std::string model;
    bool skipped = false;
    std::string skip_reason;
    std::vector<CrossCheckRow> rows;
    std::vector<std::string> disagreements;
};

/// Compare the computed cup cube against both textual readings and the
/// published index table for every given character.  Discrepancies are
/// reported verbatim; nothing is reconciled.
inline CrossCheckReport cross_check(const ManifoldModel& model, const ModelGeometry& geometry,
                                    const std::vector<std::pair<GroupHom2, int>>& table) {
    CrossCheckReport rep;
    rep.model = model.name;
    if (!geometry.has_triangulation()) {
        rep.skipped = true;
        rep.skip_reason = "no triangulation recipe";
        return rep;
    }
    const auto value_of = [&](const GroupHom2& phi, const char* gen) -> std::uint8_t {
        const auto idx = model.presentation.generator_index(gen);
        return idx ? phi.value(*idx) : 0;
    };
    for (const auto& [phi, published_index] : table) {
        CrossCheckRow row;
        row.phi = phi;
        const BitVec c = geometry.character_cocycle(phi);
        row.cube_computed = geometry.cochains().cup_cube_nonzero(c);
        if (model.name == kRP2xS1) {
            row.sum_reading = ((value_of(phi, "v") + value_of(phi, "h")) % 2) != 0;
            row.product_reading = value_of(phi, "v") != 0 && value_of(phi, "h") != 0;
        } else if (model.name == kRP3RP3) {
            row.sum_reading = value_of(phi, "h") != 0;
            row.product_reading = row.sum_reading;
        }
        row.table_says_three = (published_index == 3);

        const auto& names = model.presentation.generator_names();
        for (std::int32_t g = 0; g < phi.generator_count(); ++g)
            row.phi_text += (g ? "," : "(") + names[static_cast<std::size_t>(g)] + ":" +
                            std::to_string(int(phi.value(g)));
        row.phi_text += ")";
        const auto word = [](bool b) { return b ? "nonzero" : "zero"; };
        if (row.sum_reading != row.cube_computed)
            rep.disagreements.push_back(model.name + " " + row.phi_text + ": computed cube is " +
                                        word(row.cube_computed) + " but the sum reading predicts " +
                                        word(row.sum_reading));
        if (row.product_reading != row.cube_computed)
            rep.disagreements.push_back(model.name + " " + row.phi_text + ": computed cube is " +
                                        word(row.cube_computed) +
                                        " but the product reading predicts " +
                                        word(row.product_reading));
        if (row.table_says_three != row.cube_computed)
            rep.disagreements.push_back(model.name + " " + row.phi_text + ": computed cube is " +
                                        word(row.cube_computed) + " but the published index is " +
                                        std::to_string(published_index));
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace s2xr

#endif  // S2XR_BUINDEX_HPP
