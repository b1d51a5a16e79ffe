// word.hpp: letter sequences in a finitely generated free group.
#ifndef S2XR_WORD_HPP
#define S2XR_WORD_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace s2xr {

/// One letter of a word: generator index with exponent +1 or -1.
struct Letter {
    std::int32_t gen = 0;
    std::int32_t sign = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter inverse(Letter l) { return Letter{l.gen, -l.sign}; }

/// Word in a free group, stored as an explicit letter sequence.
/// Construction never reduces; free_reduce() produces the reduced form.
class Word {
  public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
        for (const Letter& l : letters_)
            if (l.gen < 0 || (l.sign != 1 && l.sign != -1))
                throw std::invalid_argument("Word: malformed letter");
    }

    /// g^e expanded into |e| letters (e may be any integer, 0 gives the empty word).
    static Word power(std::int32_t gen, std::int64_t e) {
        Word w;
        const std::int32_t s = e >= 0 ? 1 : -1;
        for (std::int64_t i = 0; i < std::llabs(e); ++i) w.letters_.push_back(Letter{gen, s});
        return w;
    }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    void push(Letter l) {
        if (l.gen < 0 || (l.sign != 1 && l.sign != -1))
            throw std::invalid_argument("Word::push: malformed letter");
        letters_.push_back(l);
    }

    Word inverse() const {
        Word w;
        w.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            w.letters_.push_back(s2xr::inverse(*it));
        return w;
    }

    friend Word operator*(const Word& a, const Word& b) {
        Word w;
        w.letters_.reserve(a.size() + b.size());
        w.letters_.insert(w.letters_.end(), a.letters_.begin(), a.letters_.end());
        w.letters_.insert(w.letters_.end(), b.letters_.begin(), b.letters_.end());
        return w;
    }

    /// Signed exponent sum of one generator (image under abelianization).
    std::int64_t exponent_sum(std::int32_t gen) const {
        std::int64_t s = 0;
        for (const Letter& l : letters_)
            if (l.gen == gen) s += l.sign;
        return s;
    }

    /// Number of letters (either sign) that use the generator.
    std::size_t occurrences(std::int32_t gen) const {
        std::size_t n = 0;
        for (const Letter& l : letters_)
            if (l.gen == gen) ++n;
        return n;
    }

    std::int32_t max_generator() const {  // -1 for the empty word
        std::int32_t m = -1;
        for (const Letter& l : letters_) m = std::max(m, l.gen);
        return m;
    }

    /// Replace every occurrence of `gen` by `repl` (inverse letters by the
    /// inverse of `repl`).  The result is not reduced.
    Word substituted(std::int32_t gen, const Word& repl) const {
        Word out;
        const Word repl_inv = repl.inverse();
        for (const Letter& l : letters_) {
            if (l.gen != gen) {
                out.letters_.push_back(l);
                continue;
            }
            const Word& r = l.sign > 0 ? repl : repl_inv;
            out.letters_.insert(out.letters_.end(), r.letters_.begin(), r.letters_.end());
        }
        return out;
    }

    /// Renumber generators; `table[g] < 0` asserts that g no longer occurs.
    Word remapped(const std::vector<std::int32_t>& table) const {
        Word out;
        out.letters_.reserve(letters_.size());
        for (const Letter& l : letters_) {
            if (l.gen >= static_cast<std::int32_t>(table.size()) || table[l.gen] < 0)
                throw std::logic_error("Word::remapped: generator not in table");
            out.letters_.push_back(Letter{table[l.gen], l.sign});
        }
        return out;
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

  private:
    std::vector<Letter> letters_;
};

/// Freely reduced form: no adjacent x x^-1.  Single stack pass.
inline Word free_reduce(const Word& w) {
    std::vector<Letter> stack;
    stack.reserve(w.size());
    for (const Letter& l : w.letters()) {
        if (!stack.empty() && stack.back() == inverse(l))
            stack.pop_back();
        else
            stack.push_back(l);
    }
    return Word(std::move(stack));
}

inline bool is_freely_reduced(const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w.letters()[i] == inverse(w.letters()[i + 1])) return false;
    return true;
}

/// Freely reduce, then strip conjugating prefix/suffix pairs (u^-1 r u -> r).
inline Word cyclic_reduce(const Word& w) {
    std::vector<Letter> ls = free_reduce(w).letters();
    std::size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo] == inverse(ls[hi - 1])) {
        ++lo;
        --hi;
    }
    return Word(std::vector<Letter>(ls.begin() + lo, ls.begin() + hi));
}

/// Canonical representative of a relator up to cyclic rotation and inversion:
/// lexicographic minimum over all rotations of the cyclically reduced word and
/// of its inverse.  Used to deduplicate relators.
inline Word cyclic_canonical(const Word& w) {
    const Word r = cyclic_reduce(w);
    if (r.empty()) return r;
    Word best = r;
    for (const Word& base : {r, r.inverse()}) {
        std::vector<Letter> ls = base.letters();
        for (std::size_t k = 0; k < ls.size(); ++k) {
            std::rotate(ls.begin(), ls.begin() + 1, ls.end());
            Word cand(ls);
            if (cand < best) best = cand;
        }
    }
    return best;
}

}  // namespace s2xr

#endif  // S2XR_WORD_HPP
