#pragma once

/**
 * @file exprgen.hpp
 * @brief Random expression text covering every production of the grammar in
 *        expr.hpp. Used by the derivative property suite.
 */

#include "diracinv/expr.hpp"
#include "diracinv/sampling.hpp"

#include <array>
#include <set>
#include <string>
#include <string_view>

namespace diracinv {

/// Production names tracked for coverage.
inline constexpr std::array<std::string_view, 25> kProductions{
    "number",   "imaginary", "coordinate", "const_i", "const_pi", "const_e", "parameter", "add",  "sub",
    "mul",      "div",       "neg",        "plus",    "pow",      "pow_neg", "paren",     "sin",  "cos",
    "tan",      "exp",       "log",        "sqrt",    "sinh",     "cosh",    "conj",
};

struct GeneratedExpr {
    std::string text;
    std::set<std::string, std::less<>> productions;
};

/// Parameters referenced by generated text, with fixed values.
[[nodiscard]] inline const Params& generator_params()
{
    static const Params p{{"k1", cplx(0.7, -0.2)}, {"k2", cplx(-1.3, 0.0)}};
    return p;
}

class ExprGenerator {
public:
    explicit ExprGenerator(Rng& rng, int max_depth = 3) : rng_(rng), max_depth_(max_depth) {}

    /// Random expression containing `forced` somewhere and at least one coordinate.
    [[nodiscard]] GeneratedExpr generate(std::string_view forced)
    {
        GeneratedExpr g;
        used_ = &g.productions;
        const std::string piece = emit(forced, max_depth_ - 1);
        const std::string rest = node(max_depth_ - 1);
        const std::string coord = leaf_coordinate();
        switch (rng_.index(3)) {
        case 0: g.text = "(" + piece + ") * (" + rest + ") + " + coord; break;
        case 1: g.text = coord + " * (" + piece + ") - (" + rest + ")"; break;
        default: g.text = "(" + piece + " + " + coord + ") * " + "(" + rest + ")"; break;
        }
        used_->insert("add");
        used_->insert("mul");
        used_->insert("paren");
        used_ = nullptr;
        return g;
    }

private:
    std::string emit(std::string_view prod, int depth)
    {
        used_->insert(std::string(prod));
        auto sub = [&] { return node(depth - 1); };
        if (prod == "number") {
            static constexpr std::array<const char*, 6> forms{"2", "0.5", "1.25", ".75", "3e-1", "2.5E0"};
            return forms[rng_.index(forms.size())];
        }
        if (prod == "imaginary") return rng_.index(2) ? "0.5i" : "2i";
        if (prod == "coordinate") return "x" + std::to_string(rng_.index(4));
        if (prod == "const_i") return "i";
        if (prod == "const_pi") return "pi";
        if (prod == "const_e") return "e";
        if (prod == "parameter") return rng_.index(2) ? "k1" : "k2";
        if (prod == "add") return sub() + " + " + sub();
        if (prod == "sub") return sub() + " - " + sub();
        if (prod == "mul") return sub() + "*" + sub();
        if (prod == "div") {
            used_->insert("paren");
            used_->insert("add");
            return "(" + sub() + ")/(2.5 + " + sub() + ")";
        }
        if (prod == "neg") return "-" + wrap(sub());
        if (prod == "plus") return "+" + wrap(sub());
        if (prod == "pow") {
            used_->insert("paren");
            static constexpr std::array<const char*, 4> ex{"^2", "^3", "^(2)", "^+1"};
            return "(" + sub() + ")" + ex[rng_.index(ex.size())];
        }
        if (prod == "pow_neg") {
            used_->insert("paren");
            used_->insert("add");
            return "(2 + " + sub() + ")" + (rng_.index(2) ? "^-1" : "^-2");
        }
        if (prod == "paren") return "(" + sub() + ")";
        // function call; keep arguments modest so the check is well conditioned
        if (prod == "log" || prod == "sqrt") {
            used_->insert("add");
            return std::string(prod) + "(3 + " + sub() + ")";
        }
        if (prod == "tan") return "tan(0.3*" + wrap(sub()) + ")";
        return std::string(prod) + "(" + sub() + ")";
    }

    std::string node(int depth)
    {
        if (depth <= 0 || rng_.index(4) == 0) return leaf();
        static constexpr std::array<std::string_view, 18> compound{"add", "sub", "mul", "div", "neg", "plus",
                                                                   "pow", "pow_neg", "paren", "sin", "cos", "tan",
                                                                   "exp", "log", "sqrt", "sinh", "cosh", "conj"};
        return emit(compound[rng_.index(compound.size())], depth);
    }

    std::string leaf()
    {
        // coordinates twice as likely as any other leaf
        static constexpr std::array<std::string_view, 9> leaves{"number",   "imaginary", "coordinate",
                                                                "coordinate", "const_i", "const_pi",
                                                                "const_e",  "parameter", "coordinate"};
        return emit(leaves[rng_.index(leaves.size())], 0);
    }

    std::string leaf_coordinate() { return emit("coordinate", 0); }

    static std::string wrap(const std::string& s) { return "(" + s + ")"; }

    Rng& rng_;
    int max_depth_;
    std::set<std::string, std::less<>>* used_ = nullptr;
};

}  // namespace diracinv
