// catalog.hpp: the manifold/pair catalog file format -- parsing, consistency
// validation against the built-in group data, and warning collection.
#ifndef S2XR_CATALOG_HPP
#define S2XR_CATALOG_HPP

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "s2xr/covers.hpp"
#include "s2xr/presentation.hpp"
#include "s2xr/recipe.hpp"

namespace s2xr {

/// Published label of one classified pair: the base manifold, the character
/// cutting out the double cover, and the table entry it reproduces.
struct PairLabel {
    std::string base;
    GroupHom2 phi;
    std::string tau;           // involution label, e.g. "tau5"
    std::string theorem_case;  // table case, e.g. "B"
    int index = 0;
};

struct Catalog {
    std::vector<ManifoldModel> models;
    std::vector<PairLabel> pairs;

    const ManifoldModel* find_model(const std::string& name) const {
        for (const ManifoldModel& m : models)
            if (m.name == name) return &m;
        return nullptr;
    }
};

struct LoadedCatalog {
    Catalog catalog;
    std::vector<std::string> warnings;
};

class CatalogError : public std::runtime_error {
  public:
    CatalogError(std::string message, std::size_t line, std::size_t col = 0)
        : std::runtime_error("catalog:" + std::to_string(line) +
                             (col ? ":" + std::to_string(col) : "") + ": " + message),
          line_(line),
          col_(col) {}
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

  private:
    std::size_t line_;
    std::size_t col_;
};

inline std::string default_catalog_path() {
#ifdef S2XR_DEFAULT_CATALOG
    return S2XR_DEFAULT_CATALOG;
#else
    return "data/catalog.cfg";
#endif
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/// Reference group data for the four known manifolds.  Catalog entries using
/// these names must agree exactly; the normal-form word problems and the
/// closed-form index table key off the name.
struct KnownModel {
    const char* name;
    const char* presentation;
    int seifert_b;
    const char* seifert_eps;
    int seifert_g;
    std::vector<std::uint8_t> w1;
};

inline const std::vector<KnownModel>& known_models() {
    static const std::vector<KnownModel> table = {
        {kS2xS1, "<h | >", 0, "o1", 0, {0}},
        {kE, "<v, h | v^2 h^-1>", 1, "n1", 1, {1, 0}},
        {kRP2xS1, "<v, h | v^2, v h v^-1 h^-1>", 0, "n1", 1, {1, 0}},
        {kRP3RP3, "<v, h | v^2, (v h)^2>", 0, "n2", 1, {0, 0}},
    };
    return table;
}

/// `{b; (eps, g)}` with integer b, alphanumeric eps, non-negative integer g.
inline SeifertSymbol parse_seifert(const std::string& text, std::size_t line) {
    SeifertSymbol sym;
    std::size_t i = 0;
    const auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    const auto expect = [&](char c) {
        skip();
        if (i >= text.size() || text[i] != c)
            throw CatalogError(std::string("expected '") + c + "' in Seifert symbol", line, i + 1);
        ++i;
    };
    const auto integer = [&]() -> int {
        skip();
        std::size_t j = i;
        if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i || (j == i + 1 && !std::isdigit(static_cast<unsigned char>(text[i]))))
            throw CatalogError("expected an integer in Seifert symbol", line, i + 1);
        const int v = std::stoi(text.substr(i, j - i));
        i = j;
        return v;
    };
    expect('{');
    sym.b = integer();
    expect(';');
    expect('(');
    skip();
    std::size_t j = i;
    while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) throw CatalogError("expected a class symbol in Seifert symbol", line, i + 1);
    sym.eps = text.substr(i, j - i);
    i = j;
    expect(',');
    sym.g = integer();
    if (sym.g < 0) throw CatalogError("genus must be non-negative", line, i);
    expect(')');
    expect('}');
    skip();
    if (i != text.size())
        throw CatalogError("trailing characters after Seifert symbol", line, i + 1);
    return sym;
}

/// `gen:bit, gen:bit, ...` covering every generator exactly once.
inline GroupHom2 parse_character(const std::string& text, const Presentation& pres,
                                 std::size_t line) {
    std::vector<std::optional<std::uint8_t>> vals(
        static_cast<std::size_t>(pres.generator_count()));
    for (const std::string& piece : split(text, ',')) {
        const std::string entry = trim(piece);
        if (entry.empty()) throw CatalogError("empty entry in character list", line);
        const auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw CatalogError("expected gen:bit in character list, got '" + entry + "'", line);
        const std::string gen = trim(entry.substr(0, colon));
        const std::string bit = trim(entry.substr(colon + 1));
        const auto idx = pres.generator_index(gen);
        if (!idx) throw CatalogError("unknown generator '" + gen + "' in character list", line);
        if (bit != "0" && bit != "1")
            throw CatalogError("character value for '" + gen + "' must be 0 or 1", line);
        auto& slot = vals[static_cast<std::size_t>(*idx)];
        if (slot) throw CatalogError("generator '" + gen + "' listed twice", line);
        slot = static_cast<std::uint8_t>(bit == "1");
    }
    std::vector<std::uint8_t> packed;
    for (std::size_t g = 0; g < vals.size(); ++g) {
        if (!vals[g])
            throw CatalogError("character does not assign generator '" +
                                   pres.generator_names()[g] + "'",
                               line);
        packed.push_back(*vals[g]);
    }
    return GroupHom2(std::move(packed));
}

/// `gen: loop+loop, gen: loop, ...` -- the formal Z/2 sum of named loops.
inline std::map<std::string, std::vector<std::string>> parse_loop_refs(const std::string& text,
                                                                       const Presentation& pres,
                                                                       std::size_t line) {
    std::map<std::string, std::vector<std::string>> refs;
    for (const std::string& piece : split(text, ',')) {
        const std::string entry = trim(piece);
        if (entry.empty()) throw CatalogError("empty entry in loop list", line);
        const auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw CatalogError("expected gen:loop in loop list, got '" + entry + "'", line);
        const std::string gen = trim(entry.substr(0, colon));
        if (!pres.generator_index(gen))
            throw CatalogError("unknown generator '" + gen + "' in loop list", line);
        if (refs.count(gen)) throw CatalogError("generator '" + gen + "' listed twice", line);
        std::vector<std::string> names;
        for (const std::string& part : split(entry.substr(colon + 1), '+')) {
            const std::string name = trim(part);
            if (name.empty())
                throw CatalogError("empty loop name for generator '" + gen + "'", line);
            names.push_back(name);
        }
        refs[gen] = std::move(names);
    }
    return refs;
}

/// `(g -> word, ...) inverse (g -> word, ...)`.
inline AutGenerator parse_aut(const std::string& text, const Presentation& pres,
                              std::size_t line) {
    const auto parse_map = [&](const std::string& body) -> std::vector<Word> {
        std::vector<std::optional<Word>> images(
            static_cast<std::size_t>(pres.generator_count()));
        for (const std::string& piece : split(body, ',')) {
            const std::string entry = trim(piece);
            const auto arrow = entry.find("->");
            if (arrow == std::string::npos)
                throw CatalogError("expected gen -> word in automorphism, got '" + entry + "'",
                                   line);
            const std::string gen = trim(entry.substr(0, arrow));
            const std::string word_text = trim(entry.substr(arrow + 2));
            const auto idx = pres.generator_index(gen);
            if (!idx)
                throw CatalogError("unknown generator '" + gen + "' in automorphism", line);
            auto& slot = images[static_cast<std::size_t>(*idx)];
            if (slot) throw CatalogError("generator '" + gen + "' mapped twice", line);
            try {
                slot = parse_word(word_text, pres);
            } catch (const ParseError& e) {
                throw CatalogError("bad word for generator '" + gen + "': " +
                                       std::string(e.what()),
                                   line);
            }
        }
        std::vector<Word> out;
        for (std::size_t g = 0; g < images.size(); ++g) {
            if (!images[g])
                throw CatalogError("automorphism does not map generator '" +
                                       pres.generator_names()[g] + "'",
                                   line);
            out.push_back(*images[g]);
        }
        return out;
    };

    const auto open1 = text.find('(');
    const auto close1 = text.find(')', open1 == std::string::npos ? 0 : open1);
    if (open1 == std::string::npos || close1 == std::string::npos)
        throw CatalogError("automorphism must start with a parenthesized map", line);
    const auto kw = text.find("inverse", close1);
    if (kw == std::string::npos)
        throw CatalogError("automorphism is missing its 'inverse (...)' part", line);
    const auto open2 = text.find('(', kw);
    const auto close2 = text.find(')', open2 == std::string::npos ? 0 : open2);
    if (open2 == std::string::npos || close2 == std::string::npos)
        throw CatalogError("automorphism inverse must be parenthesized", line);
    if (!trim(text.substr(close2 + 1)).empty())
        throw CatalogError("trailing characters after automorphism", line);

    AutGenerator aut;
    aut.images = parse_map(text.substr(open1 + 1, close1 - open1 - 1));
    aut.inverse_images = parse_map(text.substr(open2 + 1, close2 - open2 - 1));
    return aut;
}

/// `<base> (gen:bit, ...) <tau> case <label> index <k>`; the character is
/// resolved against the base model after all manifolds are parsed.
struct RawPair {
    std::size_t line = 0;
    std::string base;
    std::string phi_text;
    std::string tau;
    std::string theorem_case;
    int index = 0;
};

inline RawPair parse_pair_line(const std::string& text, std::size_t line) {
    RawPair raw;
    raw.line = line;
    std::size_t i = 0;
    const auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    const auto token = [&]() -> std::string {
        skip();
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
               text[j] != '(')
            ++j;
        if (j == i) throw CatalogError("expected a token in pair entry", line, i + 1);
        std::string t = text.substr(i, j - i);
        i = j;
        return t;
    };
    raw.base = token();
    skip();
    if (i >= text.size() || text[i] != '(')
        throw CatalogError("expected '(' after the base manifold name", line, i + 1);
    const auto close = text.find(')', i);
    if (close == std::string::npos)
        throw CatalogError("unclosed character list in pair entry", line, i + 1);
    raw.phi_text = text.substr(i + 1, close - i - 1);
    i = close + 1;
    raw.tau = token();
    if (token() != "case") throw CatalogError("expected the keyword 'case'", line, i);
    raw.theorem_case = token();
    if (token() != "index") throw CatalogError("expected the keyword 'index'", line, i);
    skip();
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) throw CatalogError("expected an index value", line, i + 1);
    raw.index = std::stoi(text.substr(i, j - i));
    i = j;
    skip();
    if (i != text.size()) throw CatalogError("trailing characters after pair entry", line, i + 1);
    return raw;
}

struct PendingModel {
    std::size_t line = 0;  // line of the section header
    std::map<std::string, std::pair<std::string, std::size_t>> fields;
    std::vector<std::pair<std::string, std::size_t>> auts;
};

inline ManifoldModel finalize_model(const PendingModel& pending,
                                    std::vector<std::string>& warnings) {
    const auto field = [&](const char* key) -> const std::pair<std::string, std::size_t>* {
        const auto it = pending.fields.find(key);
        return it == pending.fields.end() ? nullptr : &it->second;
    };
    const auto required = [&](const char* key) -> const std::pair<std::string, std::size_t>& {
        const auto* f = field(key);
        if (!f)
            throw CatalogError(std::string("manifold section is missing '") + key + "'",
                               pending.line);
        return *f;
    };

    ManifoldModel model;
    model.name = trim(required("name").first);
    if (model.name.empty()) throw CatalogError("manifold name is empty", required("name").second);

    const auto& [pres_text, pres_line] = required("presentation");
    try {
        model.presentation = parse_presentation(pres_text);
    } catch (const ParseError& e) {
        throw CatalogError("bad presentation: " + std::string(e.what()), pres_line);
    }

    model.seifert = parse_seifert(required("seifert").first, required("seifert").second);

    const auto& [w1_text, w1_line] = required("w1");
    model.w1 = parse_character(w1_text, model.presentation, w1_line);
    for (const Word& r : model.presentation.relators())
        if (evaluate_hom2(model.w1, r) != 0)
            throw CatalogError("w1 does not kill the relator " +
                                   model.presentation.word_to_string(r),
                               w1_line);

    if (const auto* f = field("recipe")) {
        try {
            model.recipe = parse_recipe(f->first);
        } catch (const ParseError& e) {
            throw CatalogError("bad recipe: " + std::string(e.what()), f->second);
        }
    }
    if (const auto* f = field("loops"))
        model.loop_refs = parse_loop_refs(f->first, model.presentation, f->second);
    if (model.recipe)
        for (const std::string& gen : model.presentation.generator_names())
            if (!model.loop_refs.count(gen))
                throw CatalogError("recipe present but no loop reference for generator '" + gen +
                                       "'",
                                   pending.line);

    for (const auto& [aut_text, aut_line] : pending.auts)
        model.auts.push_back(parse_aut(aut_text, model.presentation, aut_line));

    // Consistency against the built-in table when the name is known; foreign
    // names get a warning and lose automorphisms (no normal form to validate
    // them with, and orbit closure must stay sound).
    const KnownModel* known = nullptr;
    for (const KnownModel& k : known_models())
        if (model.name == k.name) known = &k;
    if (known) {
        if (model.presentation != parse_presentation(known->presentation))
            throw CatalogError("presentation for " + model.name +
                                   " does not match the built-in group data",
                               pres_line);
        if (model.seifert.b != known->seifert_b || model.seifert.eps != known->seifert_eps ||
            model.seifert.g != known->seifert_g)
            throw CatalogError("Seifert symbol for " + model.name +
                                   " does not match the built-in table",
                               required("seifert").second);
        if (model.w1.values() != known->w1)
            throw CatalogError("orientation character for " + model.name +
                                   " does not match the built-in table",
                               w1_line);
        for (const AutGenerator& aut : model.auts)
            try {
                validate_aut_generator(model, aut);
            } catch (const std::domain_error& e) {
                throw CatalogError(e.what(), pending.line);
            }
    } else {
        warnings.push_back("model '" + model.name +
                           "' is not in the built-in table; automorphisms dropped and "
                           "normal-form checks skipped");
        model.auts.clear();
    }
    return model;
}

}  // namespace detail

/// Parse and validate a catalog from text.  Throws CatalogError on malformed
/// or inconsistent input; recoverable oddities are returned as warnings.
inline LoadedCatalog parse_catalog(const std::string& text) {
    LoadedCatalog loaded;
    std::vector<detail::RawPair> raw_pairs;
    std::optional<detail::PendingModel> pending;
    enum class Section { None, Manifold, Pairs } section = Section::None;
    bool saw_section = false;

    const auto finalize = [&] {
        if (!pending) return;
        loaded.catalog.models.push_back(detail::finalize_model(*pending, loaded.warnings));
        pending.reset();
    };

    std::istringstream in(text);
    std::string raw_line;
    std::size_t lineno = 0;
    while (std::getline(in, raw_line)) {
        ++lineno;
        const std::string line = detail::trim(raw_line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw CatalogError("unterminated section header", lineno);
            const std::string name = detail::trim(line.substr(1, line.size() - 2));
            finalize();
            if (name == "manifold") {
                section = Section::Manifold;
                pending.emplace();
                pending->line = lineno;
            } else if (name == "pairs") {
                section = Section::Pairs;
            } else {
                throw CatalogError("unknown section '" + name + "'", lineno);
            }
            saw_section = true;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CatalogError("expected 'key = value'", lineno);
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (section == Section::None)
            throw CatalogError("entry outside of any section", lineno);
        if (section == Section::Manifold) {
            if (key == "aut") {
                pending->auts.emplace_back(value, lineno);
            } else if (key == "name" || key == "seifert" || key == "presentation" ||
                       key == "w1" || key == "recipe" || key == "loops") {
                if (pending->fields.count(key))
                    throw CatalogError("duplicate key '" + key + "' in manifold section", lineno);
                pending->fields[key] = {value, lineno};
            } else {
                throw CatalogError("unknown key '" + key + "' in manifold section", lineno);
            }
        } else {
            if (key != "pair")
                throw CatalogError("unknown key '" + key + "' in pairs section", lineno);
            raw_pairs.push_back(detail::parse_pair_line(value, lineno));
        }
    }
    finalize();
    if (!saw_section) throw CatalogError("catalog has no sections", lineno ? lineno : 1);

    std::set<std::string> names;
    for (const ManifoldModel& m : loaded.catalog.models)
        if (!names.insert(m.name).second)
            throw CatalogError("duplicate manifold '" + m.name + "'", 1);

    std::set<std::string> taus;
    std::set<std::pair<std::string, std::vector<std::uint8_t>>> keys;
    for (const detail::RawPair& raw : raw_pairs) {
        const ManifoldModel* model = loaded.catalog.find_model(raw.base);
        if (!model)
            throw CatalogError("pair references unknown manifold '" + raw.base + "'", raw.line);
        PairLabel label;
        label.base = raw.base;
        label.phi = detail::parse_character(raw.phi_text, model->presentation, raw.line);
        if (!label.phi.is_surjective())
            throw CatalogError("pair character is trivial", raw.line);
        if (!kills_all_relators(label.phi, model->presentation))
            throw CatalogError("pair character does not kill the relators of " + raw.base,
                               raw.line);
        label.tau = raw.tau;
        label.theorem_case = raw.theorem_case;
        label.index = raw.index;
        if (label.index < 1 || label.index > 3)
            throw CatalogError("pair index must be 1, 2, or 3", raw.line);
        if (!taus.insert(label.tau).second)
            throw CatalogError("duplicate involution label '" + label.tau + "'", raw.line);
        if (!keys.insert({label.base, label.phi.values()}).second)
            throw CatalogError("duplicate pair for " + label.base, raw.line);
        loaded.catalog.pairs.push_back(std::move(label));
    }
    return loaded;
}

inline LoadedCatalog load_catalog(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogError("cannot open catalog file '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str());
}

}  // namespace s2xr

#endif  // S2XR_CATALOG_HPP
