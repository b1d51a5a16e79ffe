// tietze.hpp: presentation simplification by generator elimination.
#ifndef S2XR_TIETZE_HPP
#define S2XR_TIETZE_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "s2xr/presentation.hpp"

namespace s2xr {
namespace detail {

/// One simplification pass over relators: cyclic reduction, removal of empty
/// relators, deduplication up to rotation and inversion.  Returns the cleaned
/// relator list (order preserved among survivors).
inline std::vector<Word> clean_relators(const std::vector<Word>& relators) {
    std::vector<Word> out;
    std::set<Word> seen;
    for (const Word& r : relators) {
        Word red = cyclic_reduce(r);
        if (red.empty()) continue;
        Word canon = cyclic_canonical(red);
        if (seen.insert(canon).second) out.push_back(std::move(red));
    }
    return out;
}

/// Simplify in place; `inclusions`, when present, is a parallel array of
/// ambient words for the generators and is restricted alongside eliminations.
inline void tietze_core(std::vector<std::string>& names, std::vector<Word>& relators,
                        std::vector<Word>* inclusions) {
    for (;;) {
        relators = clean_relators(relators);

        // Cheapest elimination: generator occurring exactly once in some
        // relator, preferring short relators, then relator order, then the
        // smallest generator index.  Deterministic.
        std::optional<std::pair<std::size_t, std::int32_t>> pick;  // (relator, generator)
        for (std::size_t ri = 0; ri < relators.size(); ++ri) {
            for (std::int32_t g = 0; g < static_cast<std::int32_t>(names.size()); ++g) {
                if (relators[ri].occurrences(g) != 1) continue;
                if (!pick || relators[ri].size() < relators[pick->first].size())
                    pick = {ri, g};
                break;  // smallest generator index within this relator
            }
        }
        if (!pick) return;

        const std::size_t ri = pick->first;
        const std::int32_t g = pick->second;
        const std::vector<Letter>& ls = relators[ri].letters();
        std::size_t at = 0;
        while (ls[at].gen != g) ++at;

        // r = u g^e w  =>  g = ((w u)^-1)^e  as an element of the other generators.
        Word wu(std::vector<Letter>(ls.begin() + static_cast<std::ptrdiff_t>(at) + 1, ls.end()));
        for (std::size_t i = 0; i < at; ++i) wu.push(ls[i]);
        Word solved = ls[at].sign > 0 ? wu.inverse() : wu;

        std::vector<Word> next;
        next.reserve(relators.size() - 1);
        for (std::size_t i = 0; i < relators.size(); ++i) {
            if (i == ri) continue;
            next.push_back(free_reduce(relators[i].substituted(g, solved)));
        }

        // Drop the generator and renumber the survivors.
        std::vector<std::int32_t> table(names.size());
        std::int32_t idx = 0;
        for (std::size_t i = 0; i < names.size(); ++i)
            table[i] = (static_cast<std::int32_t>(i) == g) ? -1 : idx++;
        names.erase(names.begin() + g);
        if (inclusions) inclusions->erase(inclusions->begin() + g);
        relators.clear();
        for (Word& r : next) relators.push_back(r.remapped(table));
    }
}

}  // namespace detail

/// Repeatedly remove empty relators, reduce, deduplicate, and eliminate
/// generators that occur exactly once in some relator.  Terminates because
/// every elimination removes a generator.  Preserves the isomorphism type
/// (hence the abelianization).
inline Presentation tietze_simplify(const Presentation& pres) {
    std::vector<std::string> names = pres.generator_names();
    std::vector<Word> relators = pres.relators();
    detail::tietze_core(names, relators, nullptr);
    return Presentation(std::move(names), std::move(relators));
}

}  // namespace s2xr

#endif  // S2XR_TIETZE_HPP
