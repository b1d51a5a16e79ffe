// recipe.hpp: the small construction language for model triangulations.
#ifndef S2XR_RECIPE_HPP
#define S2XR_RECIPE_HPP

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "s2xr/presentation.hpp"  // ParseError

namespace s2xr {

/// Expression tree for triangulation recipes:
///   cycle(n) | simplexbdry(d) | crosspoly(d)
///   | subdiv(e) | quotient(e, antipode) | product(e, e) | consum(e, e)
struct RecipeExpr {
    enum class Kind { Cycle, SimplexBoundary, CrossPolytope, Subdiv, Quotient, Product, ConSum };

    Kind kind;
    int arg = 0;  // n or d for the primitives
    std::vector<RecipeExpr> children;

    std::string to_string() const {
        switch (kind) {
            case Kind::Cycle: return "cycle(" + std::to_string(arg) + ")";
            case Kind::SimplexBoundary: return "simplexbdry(" + std::to_string(arg) + ")";
            case Kind::CrossPolytope: return "crosspoly(" + std::to_string(arg) + ")";
            case Kind::Subdiv: return "subdiv(" + children[0].to_string() + ")";
            case Kind::Quotient: return "quotient(" + children[0].to_string() + ",antipode)";
            case Kind::Product:
                return "product(" + children[0].to_string() + "," + children[1].to_string() + ")";
            case Kind::ConSum:
                return "consum(" + children[0].to_string() + "," + children[1].to_string() + ")";
        }
        return "?";
    }
};

namespace detail {

class RecipeScanner {
  public:
    explicit RecipeScanner(const std::string& t) : t_(t) {}

    RecipeExpr parse() {
        RecipeExpr e = expr();
        skip();
        if (pos_ < t_.size()) throw ParseError(pos_, "trailing characters after recipe");
        return e;
    }

  private:
    RecipeExpr expr() {
        skip();
        const std::size_t start = pos_;
        std::string head = ident();
        skip();
        expect('(');
        RecipeExpr e;
        if (head == "cycle" || head == "simplexbdry" || head == "crosspoly") {
            e.kind = head == "cycle"           ? RecipeExpr::Kind::Cycle
                     : head == "simplexbdry"   ? RecipeExpr::Kind::SimplexBoundary
                                               : RecipeExpr::Kind::CrossPolytope;
            e.arg = number();
        } else if (head == "subdiv") {
            e.kind = RecipeExpr::Kind::Subdiv;
            e.children.push_back(expr());
        } else if (head == "quotient") {
            e.kind = RecipeExpr::Kind::Quotient;
            e.children.push_back(expr());
            skip();
            expect(',');
            skip();
            if (ident() != "antipode")
                throw ParseError(pos_, "quotient expects the involution name 'antipode'");
        } else if (head == "product" || head == "consum") {
            e.kind = head == "product" ? RecipeExpr::Kind::Product : RecipeExpr::Kind::ConSum;
            e.children.push_back(expr());
            skip();
            expect(',');
            e.children.push_back(expr());
        } else {
            throw ParseError(start, "unknown recipe constructor '" + head + "'");
        }
        skip();
        expect(')');
        return e;
    }

    std::string ident() {
        skip();
        std::size_t j = pos_;
        while (j < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[j])) || t_[j] == '_'))
            ++j;
        if (j == pos_) throw ParseError(pos_, "expected an identifier in recipe");
        std::string s = t_.substr(pos_, j - pos_);
        pos_ = j;
        return s;
    }

    int number() {
        skip();
        std::size_t j = pos_;
        while (j < t_.size() && std::isdigit(static_cast<unsigned char>(t_[j]))) ++j;
        if (j == pos_) throw ParseError(pos_, "expected a number in recipe");
        int v = std::stoi(t_.substr(pos_, j - pos_));
        pos_ = j;
        return v;
    }

    void expect(char c) {
        skip();
        if (pos_ >= t_.size() || t_[pos_] != c)
            throw ParseError(pos_, std::string("expected '") + c + "' in recipe");
        ++pos_;
    }

    void skip() {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }

    const std::string& t_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline RecipeExpr parse_recipe(const std::string& text) {
    return detail::RecipeScanner(text).parse();
}

}  // namespace s2xr

#endif  // S2XR_RECIPE_HPP
