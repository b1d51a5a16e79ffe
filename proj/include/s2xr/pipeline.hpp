// pipeline.hpp: end-to-end classification -- enumerate characters, identify
// covers, decide indices, fold equivalence orbits -- and deterministic report
// rendering (csv, markdown, json, dot).
#ifndef S2XR_PIPELINE_HPP
#define S2XR_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "s2xr/buindex.hpp"
#include "s2xr/catalog.hpp"
#include "s2xr/covers.hpp"
#include "s2xr/presentation.hpp"

namespace s2xr {

/// One classified pair (base, [phi]): the row of the published table.
struct CoveringRecord {
    std::string theorem_case;
    std::string base;
    GroupHom2 phi;  // orbit representative, lexicographically least member
    std::vector<std::pair<std::string, std::uint8_t>> phi_values;  // named, generator order
    std::string cover;
    std::string tau;
    int index = 0;
    IndexWitness witness = IndexWitness::DEFAULT_TWO;
    std::optional<std::vector<std::int64_t>> psi;
    int equivalence_class = 0;
    std::vector<GroupHom2> orbit;  // sorted members
};

struct ClassificationReport {
    std::vector<std::string> model_names;  // graph nodes, catalog order
    std::vector<CoveringRecord> records;
    std::vector<CrossCheckReport> cross_checks;
    std::vector<std::string> warnings;
};

struct ClassifyOptions {
    bool cross_check = false;
    std::optional<std::string> manifold;  // restrict records to this base
};

inline std::vector<std::pair<std::string, std::uint8_t>> name_values(const ManifoldModel& model,
                                                                     const GroupHom2& phi) {
    std::vector<std::pair<std::string, std::uint8_t>> out;
    const auto& names = model.presentation.generator_names();
    for (std::int32_t g = 0; g < phi.generator_count(); ++g)
        out.emplace_back(names[static_cast<std::size_t>(g)], phi.value(g));
    return out;
}

/// Classify every character orbit of every catalog model: one record per
/// orbit, in catalog model order then representative order.  Cover name and
/// index must be constant on each orbit; the published label and index are
/// attached from the catalog, with disagreements surfaced as warnings.
inline ClassificationReport run_classification(const Catalog& catalog,
                                               const ClassifyOptions& opts = {}) {
    ClassificationReport rep;
    for (const ManifoldModel& m : catalog.models) rep.model_names.push_back(m.name);
    if (opts.manifold && !catalog.find_model(*opts.manifold))
        throw std::domain_error("no catalog model named '" + *opts.manifold + "'");

    for (const ManifoldModel& model : catalog.models) {
        const ModelGeometry geometry(model);
        const std::vector<GroupHom2> epis = enumerate_epis_z2(model.presentation);
        const std::vector<std::vector<GroupHom2>> orbits = equivalence_orbits(model, epis);

        std::map<std::vector<std::uint8_t>, int> published_index_of;
        for (std::size_t o = 0; o < orbits.size(); ++o) {
            const std::vector<GroupHom2>& orbit = orbits[o];

            CoveringRecord rec;
            rec.base = model.name;
            rec.phi = orbit.front();
            rec.orbit = orbit;
            rec.equivalence_class = static_cast<int>(o) + 1;
            rec.cover = identify_cover(model, rec.phi);
            const IndexDecision decision = bu_index(model, rec.phi, geometry);
            rec.index = decision.index;
            rec.witness = decision.witness;
            rec.psi = decision.psi;

            // The cover name and the index are orbit invariants; a violation
            // means the automorphism data is wrong, which is a hard stop.
            for (const GroupHom2& member : orbit) {
                if (identify_cover(model, member) != rec.cover)
                    throw std::logic_error("cover name varies inside an orbit of " + model.name);
                if (bu_index(model, member, geometry).index != rec.index)
                    throw std::logic_error("index varies inside an orbit of " + model.name);
            }

            const PairLabel* label = nullptr;
            for (const PairLabel& l : catalog.pairs)
                if (l.base == model.name && l.phi == rec.phi) label = &l;
            if (!label) {
                std::string text;
                for (const auto& [name, value] : name_values(model, rec.phi))
                    text += (text.empty() ? "(" : ",") + name + ":" + std::to_string(int(value));
                throw std::domain_error("no involution label for " + model.name + " " + text +
                                        ")");
            }
            rec.theorem_case = label->theorem_case;
            rec.tau = label->tau;
            if (label->index != rec.index)
                rep.warnings.push_back("computed index " + std::to_string(rec.index) + " for " +
                                       model.name + " " + label->tau +
                                       " differs from the published index " +
                                       std::to_string(label->index));
            for (const GroupHom2& member : orbit)
                published_index_of[member.values()] = label->index;

            if (!catalog.find_model(rec.cover))
                rep.warnings.push_back("cover '" + rec.cover + "' of " + model.name +
                                       " is not a catalog model (graph closure violated)");

            rec.phi_values = name_values(model, rec.phi);
            rep.records.push_back(std::move(rec));
        }

        if (opts.cross_check) {
            std::vector<std::pair<GroupHom2, int>> table;
            for (const GroupHom2& phi : epis)
                table.emplace_back(phi, published_index_of.at(phi.values()));
            rep.cross_checks.push_back(cross_check(model, geometry, table));
        }
    }

    if (opts.manifold) {
        std::vector<CoveringRecord> kept;
        for (CoveringRecord& r : rep.records)
            if (r.base == *opts.manifold) kept.push_back(std::move(r));
        rep.records = std::move(kept);
        std::vector<CrossCheckReport> kept_checks;
        for (CrossCheckReport& c : rep.cross_checks)
            if (c.model == *opts.manifold) kept_checks.push_back(std::move(c));
        rep.cross_checks = std::move(kept_checks);
    }
    return rep;
}

// --- rendering ----------------------------------------------------------------

namespace detail {

inline std::string phi_cell(const CoveringRecord& rec, const std::string& gen) {
    for (const auto& [name, value] : rec.phi_values)
        if (name == gen) return std::to_string(int(value));
    return "-";
}

inline std::string phi_inline(const std::vector<std::pair<std::string, std::uint8_t>>& values) {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? "," : "") + values[i].first + ":" + std::to_string(int(values[i].second));
    return out + ")";
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    static const char* hex = "0123456789abcdef";
                    out += "\\u00";
                    out += hex[(c >> 4) & 0xf];
                    out += hex[c & 0xf];
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string json_hom(const std::vector<std::pair<std::string, std::uint8_t>>& values) {
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? "," : "") + ("\"" + json_escape(values[i].first) + "\":" +
                                 std::to_string(int(values[i].second)));
    return out + "}";
}

}  // namespace detail

/// CSV table, one data row per record; characters are reported through the
/// fixed phi_v/phi_h columns ("-" when the model has no such generator).
inline std::string render_csv(const ClassificationReport& rep) {
    std::string out = "theorem_case,base,phi_v,phi_h,cover,involution,index,equiv_class\n";
    for (const CoveringRecord& r : rep.records)
        out += r.theorem_case + "," + r.base + "," + detail::phi_cell(r, "v") + "," +
               detail::phi_cell(r, "h") + "," + r.cover + "," + r.tau + "," +
               std::to_string(r.index) + "," + std::to_string(r.equivalence_class) + "\n";
    return out;
}

inline std::string render_cross_check_csv(const ClassificationReport& rep) {
    std::string out = "model,phi,cube_computed,sum_reading,product_reading,table_says_three\n";
    for (const CrossCheckReport& c : rep.cross_checks) {
        if (c.skipped) {
            out += c.model + ",skipped: " + c.skip_reason + ",-,-,-,-\n";
            continue;
        }
        for (const CrossCheckRow& row : c.rows)
            out += c.model + "," + row.phi_text + "," + std::to_string(int(row.cube_computed)) +
                   "," + std::to_string(int(row.sum_reading)) + "," +
                   std::to_string(int(row.product_reading)) + "," +
                   std::to_string(int(row.table_says_three)) + "\n";
    }
    return out;
}

inline std::string render_cross_check_text(const ClassificationReport& rep) {
    std::string out;
    for (const CrossCheckReport& c : rep.cross_checks) {
        out += "== " + c.model + " ==\n";
        if (c.skipped) {
            out += "skipped: " + c.skip_reason + "\n";
            continue;
        }
        const auto word = [](bool b) { return b ? "nonzero" : "zero"; };
        for (const CrossCheckRow& row : c.rows)
            out += "phi " + row.phi_text + ": computed=" + word(row.cube_computed) +
                   " sum_reading=" + word(row.sum_reading) +
                   " product_reading=" + word(row.product_reading) +
                   " table_index_three=" + (row.table_says_three ? "yes" : "no") + "\n";
        for (const std::string& d : c.disagreements) out += "disagreement: " + d + "\n";
    }
    return out;
}

inline std::string render_md(const ClassificationReport& rep) {
    std::string out = "# Free involutions over the four closed manifolds\n\n";
    out += "| case | base | character | cover | involution | index | class | witness |\n";
    out += "| --- | --- | --- | --- | --- | --- | --- | --- |\n";
    for (const CoveringRecord& r : rep.records)
        out += "| " + r.theorem_case + " | " + r.base + " | " +
               detail::phi_inline(r.phi_values) + " | " + r.cover + " | " + r.tau + " | " +
               std::to_string(r.index) + " | " + std::to_string(r.equivalence_class) + " | " +
               to_string(r.witness) + " |\n";
    if (!rep.warnings.empty()) {
        out += "\n## Warnings\n\n";
        for (const std::string& w : rep.warnings) out += "- " + w + "\n";
    }
    if (!rep.cross_checks.empty()) {
        out += "\n## Cup-cube cross-check\n\n";
        out += "| model | character | computed cube | sum reading | product reading | table index 3 |\n";
        out += "| --- | --- | --- | --- | --- | --- |\n";
        const auto word = [](bool b) { return b ? "nonzero" : "zero"; };
        for (const CrossCheckReport& c : rep.cross_checks) {
            if (c.skipped) {
                out += "| " + c.model + " | skipped: " + c.skip_reason + " | - | - | - | - |\n";
                continue;
            }
            for (const CrossCheckRow& row : c.rows)
                out += "| " + c.model + " | " + row.phi_text + " | " + word(row.cube_computed) +
                       " | " + word(row.sum_reading) + " | " + word(row.product_reading) + " | " +
                       (row.table_says_three ? "yes" : "no") + " |\n";
        }
        bool any = false;
        for (const CrossCheckReport& c : rep.cross_checks)
            for (const std::string& d : c.disagreements) {
                if (!any) out += "\nDisagreements:\n\n";
                any = true;
                out += "- " + d + "\n";
            }
        if (!any) out += "\nNo disagreements.\n";
    }
    return out;
}

inline std::string render_json(const ClassificationReport& rep) {
    using detail::json_escape;
    std::string out = "{\n  \"records\": [";
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        const CoveringRecord& r = rep.records[i];
        out += (i ? ",\n    " : "\n    ");
        out += "{\"theorem_case\":\"" + json_escape(r.theorem_case) + "\"";
        out += ",\"base\":\"" + json_escape(r.base) + "\"";
        out += ",\"phi\":" + detail::json_hom(r.phi_values);
        out += ",\"cover\":\"" + json_escape(r.cover) + "\"";
        out += ",\"involution\":\"" + json_escape(r.tau) + "\"";
        out += ",\"index\":" + std::to_string(r.index);
        out += ",\"equivalence_class\":" + std::to_string(r.equivalence_class);
        out += ",\"witness\":\"" + json_escape(to_string(r.witness)) + "\"";
        if (r.psi) {
            out += ",\"psi\":{";
            for (std::size_t g = 0; g < r.psi->size(); ++g)
                out += (g ? "," : "") + ("\"" + json_escape(r.phi_values[g].first) + "\":" +
                                         std::to_string((*r.psi)[g]));
            out += "}";
        }
        out += ",\"orbit\":[";
        for (std::size_t m = 0; m < r.orbit.size(); ++m) {
            std::vector<std::pair<std::string, std::uint8_t>> named;
            for (std::size_t g = 0; g < r.phi_values.size(); ++g)
                named.emplace_back(r.phi_values[g].first,
                                   r.orbit[m].value(static_cast<std::int32_t>(g)));
            out += (m ? "," : "") + detail::json_hom(named);
        }
        out += "]}";
    }
    out += rep.records.empty() ? "],\n" : "\n  ],\n";
    out += "  \"warnings\": [";
    for (std::size_t i = 0; i < rep.warnings.size(); ++i)
        out += (i ? "," : "") + ("\"" + json_escape(rep.warnings[i]) + "\"");
    out += "]";
    if (!rep.cross_checks.empty()) {
        out += ",\n  \"cross_check\": [";
        for (std::size_t i = 0; i < rep.cross_checks.size(); ++i) {
            const CrossCheckReport& c = rep.cross_checks[i];
            out += (i ? ",\n    " : "\n    ");
            out += "{\"model\":\"" + json_escape(c.model) + "\"";
            out += ",\"skipped\":" + std::string(c.skipped ? "true" : "false");
            if (c.skipped) {
                out += ",\"skip_reason\":\"" + json_escape(c.skip_reason) + "\"";
            } else {
                out += ",\"rows\":[";
                for (std::size_t j = 0; j < c.rows.size(); ++j) {
                    const CrossCheckRow& row = c.rows[j];
                    out += (j ? "," : "");
                    out += "{\"phi\":\"" + json_escape(row.phi_text) + "\"";
                    out += ",\"cube_computed\":" + std::string(row.cube_computed ? "true" : "false");
                    out += ",\"sum_reading\":" + std::string(row.sum_reading ? "true" : "false");
                    out += ",\"product_reading\":" +
                           std::string(row.product_reading ? "true" : "false");
                    out += ",\"table_says_three\":" +
                           std::string(row.table_says_three ? "true" : "false") + "}";
                }
                out += "],\"disagreements\":[";
                for (std::size_t j = 0; j < c.disagreements.size(); ++j)
                    out += (j ? "," : "") + ("\"" + json_escape(c.disagreements[j]) + "\"");
                out += "]";
            }
            out += "}";
        }
        out += "\n  ]";
    }
    out += "\n}\n";
    return out;
}

/// DOT digraph: one node per catalog model, one edge per record directed from
/// the covering space to the base, labeled with the index.
inline std::string render_dot(const ClassificationReport& rep) {
    std::string out = "digraph covers {\n";
    for (const std::string& name : rep.model_names) out += "  \"" + name + "\";\n";
    for (const CoveringRecord& r : rep.records)
        out += "  \"" + r.cover + "\" -> \"" + r.base + "\" [label=\"ind=" +
               std::to_string(r.index) + "\"];\n";
    out += "}\n";
    return out;
}

/// Write the reports for one format into out_dir; returns the file paths
/// written.  The cross-check, when present in the report, goes to a sibling
/// file for csv/dot and is embedded for md/json.
inline std::vector<std::string> emit_reports(const ClassificationReport& rep,
                                             const std::string& format,
                                             const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto write = [&](const std::string& name, const std::string& content) {
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
        return path.string();
    };

    std::vector<std::string> written;
    if (format == "csv") {
        written.push_back(write("classification.csv", render_csv(rep)));
        if (!rep.cross_checks.empty())
            written.push_back(write("cross_check.csv", render_cross_check_csv(rep)));
    } else if (format == "md") {
        written.push_back(write("classification.md", render_md(rep)));
    } else if (format == "json") {
        written.push_back(write("classification.json", render_json(rep)));
    } else if (format == "dot") {
        written.push_back(write("graph.dot", render_dot(rep)));
        if (!rep.cross_checks.empty())
            written.push_back(write("cross_check.txt", render_cross_check_text(rep)));
    } else {
        throw std::invalid_argument("unknown report format '" + format + "'");
    }
    return written;
}

}  // namespace s2xr

#endif  // S2XR_PIPELINE_HPP
