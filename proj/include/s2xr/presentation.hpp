// presentation.hpp: finite group presentations, Z/2 characters, and the
// <gens | relators> text syntax.
#ifndef S2XR_PRESENTATION_HPP
#define S2XR_PRESENTATION_HPP

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "s2xr/word.hpp"

namespace s2xr {

/// Parse failure with a position (0-based offset into the parsed text; the
/// catalog loader converts offsets into file line/column).
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& msg)
        : std::runtime_error(msg), offset(off) {}
};

/// Finitely presented group: named generators plus relator words.
/// Relators are stored freely and cyclically reduced.
class Presentation {
  public:
    Presentation() = default;
    Presentation(std::vector<std::string> generator_names, std::vector<Word> relators)
        : names_(std::move(generator_names)) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw std::invalid_argument("Presentation: duplicate generator name");
        relators_.reserve(relators.size());
        for (const Word& r : relators) {
            if (r.max_generator() >= generator_count())
                throw std::invalid_argument("Presentation: relator uses unknown generator");
            relators_.push_back(cyclic_reduce(r));
        }
    }

    std::int32_t generator_count() const { return static_cast<std::int32_t>(names_.size()); }
    const std::vector<std::string>& generator_names() const { return names_; }
    const std::vector<Word>& relators() const { return relators_; }

    std::optional<std::int32_t> generator_index(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<std::int32_t>(i);
        return std::nullopt;
    }

    std::string word_to_string(const Word& w) const {
        if (w.empty()) return "1";
        std::string s;
        std::size_t i = 0;
        const auto& ls = w.letters();
        while (i < ls.size()) {
            std::size_t j = i;
            while (j < ls.size() && ls[j] == ls[i]) ++j;
            const std::int64_t e = static_cast<std::int64_t>(j - i) * ls[i].sign;
            if (!s.empty()) s += ' ';
            s += names_.at(static_cast<std::size_t>(ls[i].gen));
            if (e != 1) s += '^' + std::to_string(e);
            i = j;
        }
        return s;
    }

    friend bool operator==(const Presentation&, const Presentation&) = default;

  private:
    std::vector<std::string> names_;
    std::vector<Word> relators_;
};

/// Homomorphism to Z/2 given by generator values.  Also used for first
/// Stiefel-Whitney characters, which need not be surjective.
class GroupHom2 {
  public:
    GroupHom2() = default;
    explicit GroupHom2(std::vector<std::uint8_t> values) : v_(std::move(values)) {
        for (std::uint8_t b : v_)
            if (b > 1) throw std::invalid_argument("GroupHom2: values must be 0/1");
    }

    std::int32_t generator_count() const { return static_cast<std::int32_t>(v_.size()); }
    std::uint8_t value(std::int32_t gen) const {
        if (gen < 0 || gen >= generator_count()) throw std::out_of_range("GroupHom2: generator");
        return v_[static_cast<std::size_t>(gen)];
    }
    const std::vector<std::uint8_t>& values() const { return v_; }

    bool is_surjective() const {
        for (std::uint8_t b : v_)
            if (b) return true;
        return false;
    }

    friend bool operator==(const GroupHom2&, const GroupHom2&) = default;
    friend auto operator<=>(const GroupHom2&, const GroupHom2&) = default;

  private:
    std::vector<std::uint8_t> v_;
};

/// Image of a word under a Z/2 character: parity of the letter values.
inline std::uint8_t evaluate_hom2(const GroupHom2& phi, const Word& w) {
    std::uint8_t s = 0;
    for (const Letter& l : w.letters()) s ^= phi.value(l.gen);
    return s;
}

inline bool kills_all_relators(const GroupHom2& phi, const Presentation& p) {
    if (phi.generator_count() != p.generator_count()) return false;
    for (const Word& r : p.relators())
        if (evaluate_hom2(phi, r)) return false;
    return true;
}

/// All surjections onto Z/2, in lexicographic order of the value tuple
/// (phi(g0), phi(g1), ...).  Exhaustive scan over 2^n assignments.
inline std::vector<GroupHom2> enumerate_epis_z2(const Presentation& p) {
    const std::int32_t n = p.generator_count();
    if (n > 26) throw std::invalid_argument("enumerate_epis_z2: too many generators");
    std::vector<GroupHom2> out;
    for (std::uint32_t m = 1; m < (std::uint32_t(1) << n); ++m) {
        std::vector<std::uint8_t> vals(static_cast<std::size_t>(n));
        for (std::int32_t i = 0; i < n; ++i)
            vals[static_cast<std::size_t>(i)] = (m >> (n - 1 - i)) & 1u;  // g0 most significant
        GroupHom2 phi(std::move(vals));
        if (kills_all_relators(phi, p)) out.push_back(std::move(phi));
    }
    return out;
}

// --- text syntax ------------------------------------------------------------
//
//   presentation := '<' [ident (',' ident)*] '|' [word (',' word)*] '>'
//   word         := factor+
//   factor       := (ident | '(' word ')') ['^' ['-'] digits]
//
// Whitespace is insignificant.  Generator identifiers are [A-Za-z][A-Za-z0-9_]*.

namespace detail {

class WordScanner {
  public:
    WordScanner(const std::string& text, std::size_t pos, std::size_t end,
                const std::map<std::string, std::int32_t>& gens)
        : t_(text), pos_(pos), end_(end), gens_(gens) {}

    Word parse_word() {
        Word w = parse_factor();
        skip_ws();
        while (pos_ < end_ && t_[pos_] != ')' ) {
            Word f = parse_factor();
            w = w * f;
            skip_ws();
        }
        return w;
    }

    std::size_t position() const { return pos_; }

  private:
    Word parse_factor() {
        skip_ws();
        if (pos_ >= end_) throw ParseError(pos_, "expected a word factor");
        Word base;
        if (t_[pos_] == '(') {
            const std::size_t open = pos_++;
            base = parse_word();
            skip_ws();
            if (pos_ >= end_ || t_[pos_] != ')')
                throw ParseError(open, "unbalanced '(' in word");
            ++pos_;
        } else if (std::isalpha(static_cast<unsigned char>(t_[pos_]))) {
            const std::size_t start = pos_;
            std::string name = scan_ident();
            auto it = gens_.find(name);
            if (it == gens_.end())
                throw ParseError(start, "unknown generator '" + name + "'");
            base = Word::power(it->second, 1);
        } else {
            throw ParseError(pos_, std::string("unexpected character '") + t_[pos_] + "' in word");
        }
        skip_ws();
        if (pos_ < end_ && t_[pos_] == '^') {
            ++pos_;
            skip_ws();
            std::int64_t e = scan_int();
            Word powered;
            const Word& unit = e >= 0 ? base : base.inverse();
            for (std::int64_t i = 0; i < std::llabs(e); ++i) powered = powered * unit;
            return powered;
        }
        return base;
    }

    std::string scan_ident() {
        std::size_t j = pos_;
        while (j < end_ && (std::isalnum(static_cast<unsigned char>(t_[j])) || t_[j] == '_')) ++j;
        std::string s = t_.substr(pos_, j - pos_);
        pos_ = j;
        return s;
    }

    std::int64_t scan_int() {
        bool neg = false;
        if (pos_ < end_ && (t_[pos_] == '-' || t_[pos_] == '+')) neg = t_[pos_++] == '-';
        if (pos_ >= end_ || !std::isdigit(static_cast<unsigned char>(t_[pos_])))
            throw ParseError(pos_, "expected an integer exponent");
        std::int64_t v = 0;
        while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
            v = v * 10 + (t_[pos_] - '0');
            if (v > 1'000'000) throw ParseError(pos_, "exponent out of range");
            ++pos_;
        }
        return neg ? -v : v;
    }

    void skip_ws() {
        while (pos_ < end_ && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }

    const std::string& t_;
    std::size_t pos_;
    std::size_t end_;
    const std::map<std::string, std::int32_t>& gens_;
};

}  // namespace detail

/// Parse a word over the named generators of an existing presentation.
inline Word parse_word(const std::string& text, const Presentation& p) {
    std::map<std::string, std::int32_t> gens;
    for (std::int32_t i = 0; i < p.generator_count(); ++i)
        gens[p.generator_names()[static_cast<std::size_t>(i)]] = i;
    detail::WordScanner sc(text, 0, text.size(), gens);
    std::size_t pos = 0;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) throw ParseError(0, "empty word");
    Word w = sc.parse_word();
    for (std::size_t i = sc.position(); i < text.size(); ++i)
        if (!std::isspace(static_cast<unsigned char>(text[i])))
            throw ParseError(i, "trailing characters after word");
    return w;
}

/// Parse "<v, h | v^2, (v h)^2>".
inline Presentation parse_presentation(const std::string& text) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos >= text.size() || text[pos] != '<') throw ParseError(pos, "expected '<'");
    ++pos;
    const std::size_t bar = text.find('|', pos);
    if (bar == std::string::npos) throw ParseError(pos, "expected '|' in presentation");
    const std::size_t close = text.rfind('>');
    if (close == std::string::npos || close < bar)
        throw ParseError(text.size(), "expected closing '>'");
    for (std::size_t i = close + 1; i < text.size(); ++i)
        if (!std::isspace(static_cast<unsigned char>(text[i])))
            throw ParseError(i, "trailing characters after '>'");

    // Generator list.
    std::vector<std::string> names;
    std::map<std::string, std::int32_t> gens;
    while (true) {
        skip();
        if (pos >= bar) break;
        if (!std::isalpha(static_cast<unsigned char>(text[pos])))
            throw ParseError(pos, "expected a generator name");
        std::size_t j = pos;
        while (j < bar && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
            ++j;
        std::string name = text.substr(pos, j - pos);
        if (gens.count(name)) throw ParseError(pos, "duplicate generator '" + name + "'");
        gens[name] = static_cast<std::int32_t>(names.size());
        names.push_back(name);
        pos = j;
        skip();
        if (pos < bar) {
            if (text[pos] != ',') throw ParseError(pos, "expected ',' between generators");
            ++pos;
            skip();
            if (pos >= bar) throw ParseError(pos, "dangling ',' in generator list");
        }
    }

    // Relator list (possibly empty).
    std::vector<Word> relators;
    pos = bar + 1;
    while (true) {
        skip();
        if (pos >= close) break;
        // Cut the relator at the next top-level comma (parentheses tracked).
        std::size_t depth = 0, cut = pos;
        while (cut < close && !(depth == 0 && text[cut] == ',')) {
            if (text[cut] == '(') ++depth;
            if (text[cut] == ')') {
                if (depth == 0) throw ParseError(cut, "unbalanced ')'");
                --depth;
            }
            ++cut;
        }
        if (depth != 0) throw ParseError(pos, "unbalanced '(' in relator");
        detail::WordScanner rel(text, pos, cut, gens);
        relators.push_back(rel.parse_word());
        pos = cut;
        if (pos < close && text[pos] == ',') {
            ++pos;
            skip();
            if (pos >= close) throw ParseError(pos, "dangling ',' in relator list");
        }
    }

    return Presentation(std::move(names), std::move(relators));
}

}  // namespace s2xr

#endif  // S2XR_PRESENTATION_HPP
