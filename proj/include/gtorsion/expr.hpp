#pragma once

// Symbolic expression kernel.
//
// Expressions are immutable shared trees over exact rational constants,
// named symbols (chart coordinates, kappa, ...), opaque differentiable
// functions with an explicit derivative order (s1(t), n3''(t), ...), a
// small elementary-function set, rational powers, products and sums.
//
// The kernel provides parsing, deterministic canonical simplification,
// structural differentiation, IEEE-double evaluation under bindings, and
// probabilistic equivalence checking by seeded random probing.

#include "gtorsion/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gtorsion {

enum class Kind : std::uint8_t { Constant, Symbol, Apply, Func, Pow, Neg, Product, Sum };

// Elementary functions. `abs` is included so that |det g| is expressible
// for metrics of either signature (Lorentzian determinants are negative).
enum class Elem : std::uint8_t { Sin, Cos, Exp, Ln, Sqrt, Abs };

const char* elem_name(Elem f);
std::optional<Elem> elem_from_name(const std::string& name);

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    Kind kind = Kind::Constant;
    Rational value;        // Constant: the value; Pow: the exponent
    std::string name;      // Symbol and Apply
    int order = 0;         // Apply: derivative order (0 = the function itself)
    Elem elem = Elem::Sin; // Func
    std::vector<Expr> kids;
    std::uint64_t hash = 0;
};

// ---- node constructors (no normalization beyond argument checks) ----
Expr constant(const Rational& r);
Expr constant(long long n);
Expr symbol(const std::string& name);
Expr apply(const std::string& name, int order, const Expr& arg);
Expr func(Elem f, const Expr& arg);
Expr pow(const Expr& base, const Rational& exponent);
Expr neg(const Expr& e);
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);

Expr zero();
Expr one();

// Convenience builders used heavily by the tensor layers. They produce
// plain (unsimplified) nodes; the tensor operations simplify their outputs.
inline Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
inline Expr operator-(const Expr& a, const Expr& b) { return sum({a, neg(b)}); }
inline Expr operator-(const Expr& a) { return neg(a); }
inline Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
inline Expr operator/(const Expr& a, const Expr& b) { return product({a, pow(b, Rational(-1))}); }

bool is_zero(const Expr& e);
bool is_one(const Expr& e);

// Structural identity and a deterministic total order
// (node kind, then payload, then children, recursively).
bool struct_eq(const Expr& a, const Expr& b);
int struct_cmp(const Expr& a, const Expr& b);

// ---- errors ----
class ExprError : public std::runtime_error {
public:
    explicit ExprError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public ExprError {
public:
    ParseError(int line, int col, const std::string& msg)
        : ExprError(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    int line;
    int col;
};

class EvalError : public ExprError {
public:
    EvalError(const std::string& msg, const std::string& path)
        : ExprError(msg + " (at subexpression " + path + ")"), path(path) {}
    std::string path;
};

// ---- bindings ----
// Every symbol gets a point value. Opaque functions are closed either by
// point values per (name, derivative order) or by a closed-form body in a
// formal variable; closed forms are differentiated on demand, so one body
// serves all derivative orders.
class Bindings {
public:
    struct Closed {
        Expr body;
        std::string var;
    };

    Bindings& set(const std::string& symbol, double v) {
        symbols_[symbol] = v;
        return *this;
    }
    Bindings& set_func(const std::string& name, int order, double v) {
        func_values_[{name, order}] = v;
        return *this;
    }
    Bindings& set_closed(const std::string& name, const std::string& var, const Expr& body) {
        closed_[name] = Closed{body, var};
        return *this;
    }

    const double* find_symbol(const std::string& s) const {
        auto it = symbols_.find(s);
        return it == symbols_.end() ? nullptr : &it->second;
    }
    const double* find_func(const std::string& name, int order) const {
        auto it = func_values_.find({name, order});
        return it == func_values_.end() ? nullptr : &it->second;
    }
    const Closed* find_closed(const std::string& name) const {
        auto it = closed_.find(name);
        return it == closed_.end() ? nullptr : &it->second;
    }

    const std::map<std::string, double>& symbols() const { return symbols_; }
    const std::map<std::pair<std::string, int>, double>& func_values() const {
        return func_values_;
    }

    std::string describe() const;

private:
    std::map<std::string, double> symbols_;
    std::map<std::pair<std::string, int>, double> func_values_;
    std::map<std::string, Closed> closed_;
};

// ---- operations ----

// Parse per the expression grammar (see README). Returns the canonical
// (simplified) tree; throws ParseError with 1-based line/column.
Expr parse(const std::string& src);

// Deterministic plain-text form; parse(print(e)) structurally equals
// simplify(e).
std::string print(const Expr& e);

// Structural derivative with respect to a symbol. Opaque functions bump
// their derivative order via the chain rule; no simplification is applied
// beyond folding trivial zero/one factors that the rules themselves create.
Expr differentiate(const Expr& e, const std::string& sym);

// Canonical form: exact rational folding, 0/1 elimination, neg -> (-1)*x,
// flattening and deterministic sorting of sums/products, collection of like
// terms, power merging x^a*x^b -> x^(a+b), distribution of products over
// (bounded-size) sums. Idempotent.
Expr simplify(const Expr& e);

double evaluate(const Expr& e, const Bindings& b);

// Free variables of an expression: symbols plus (function, order) pairs.
struct VarSet {
    std::set<std::string> symbols;
    std::set<std::pair<std::string, int>> funcs;

    void merge(const VarSet& o) {
        symbols.insert(o.symbols.begin(), o.symbols.end());
        funcs.insert(o.funcs.begin(), o.funcs.end());
    }
};
VarSet collect_vars(const Expr& e);

// Probe seed: GTORSION_SEED from the environment, else 42.
std::uint64_t probe_seed();

enum class Verdict : std::uint8_t { Equal, Different, Inconclusive };

struct EquivResult {
    Verdict verdict = Verdict::Inconclusive;
    Bindings witness;     // first failing bindings when Different
    double max_dev = 0.0; // largest scaled deviation over successful probes

    explicit operator bool() const { return verdict == Verdict::Equal; }
};

// Samples `probes` random binding sets over [0.5, 2.0] (seeded, hence
// reproducible) and compares |a-b| <= tol*(1 + |a| + |b|) at each point.
// Probes that hit evaluation errors are redrawn up to three times; the
// result is Inconclusive only if every probe errored out.
EquivResult equivalent(const Expr& a, const Expr& b, int probes, double tol,
                       std::uint64_t seed = probe_seed());

inline bool probe_equal(const Expr& a, const Expr& b, int probes = 16, double tol = 1e-9,
                        std::uint64_t seed = probe_seed()) {
    return equivalent(a, b, probes, tol, seed).verdict == Verdict::Equal;
}

}  // namespace gtorsion
