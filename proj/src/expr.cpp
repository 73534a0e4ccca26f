#include "gtorsion/expr.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

namespace gtorsion {

// ------------------------------------------------------------------
// elementary-function names
// ------------------------------------------------------------------

const char* elem_name(Elem f) {
    switch (f) {
        case Elem::Sin: return "sin";
        case Elem::Cos: return "cos";
        case Elem::Exp: return "exp";
        case Elem::Ln: return "ln";
        case Elem::Sqrt: return "sqrt";
        case Elem::Abs: return "abs";
    }
    return "?";
}

std::optional<Elem> elem_from_name(const std::string& name) {
    if (name == "sin") return Elem::Sin;
    if (name == "cos") return Elem::Cos;
    if (name == "exp") return Elem::Exp;
    if (name == "ln") return Elem::Ln;
    if (name == "sqrt") return Elem::Sqrt;
    if (name == "abs") return Elem::Abs;
    return std::nullopt;
}

// ------------------------------------------------------------------
// construction and structural hashing
// ------------------------------------------------------------------

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    // FNV-1a style step, then an avalanche.
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t hash_string(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t node_hash(const Node& n) {
    std::uint64_t h = mix(0x6a5d39eae116586dULL, static_cast<std::uint64_t>(n.kind));
    if (n.kind == Kind::Constant || n.kind == Kind::Pow) {
        h = mix(h, static_cast<std::uint64_t>(n.value.num()));
        h = mix(h, static_cast<std::uint64_t>(n.value.den()));
    }
    if (n.kind == Kind::Symbol || n.kind == Kind::Apply) {
        h = mix(h, hash_string(n.name));
        h = mix(h, static_cast<std::uint64_t>(n.order));
    }
    if (n.kind == Kind::Func) h = mix(h, static_cast<std::uint64_t>(n.elem));
    for (const Expr& k : n.kids) h = mix(h, k->hash);
    return h;
}

Expr finish(Node n) {
    n.hash = node_hash(n);
    return std::make_shared<const Node>(std::move(n));
}

}  // namespace

Expr constant(const Rational& r) {
    Node n;
    n.kind = Kind::Constant;
    n.value = r;
    return finish(std::move(n));
}

Expr constant(long long v) { return constant(Rational(v)); }

Expr symbol(const std::string& name) {
    if (name.empty()) throw ExprError("symbol requires a nonempty name");
    Node n;
    n.kind = Kind::Symbol;
    n.name = name;
    return finish(std::move(n));
}

Expr apply(const std::string& name, int order, const Expr& arg) {
    if (name.empty()) throw ExprError("function application requires a nonempty name");
    if (order < 0) throw ExprError("derivative order must be nonnegative");
    if (!arg) throw ExprError("function application requires an argument");
    Node n;
    n.kind = Kind::Apply;
    n.name = name;
    n.order = order;
    n.kids = {arg};
    return finish(std::move(n));
}

Expr func(Elem f, const Expr& arg) {
    if (!arg) throw ExprError("elementary function requires an argument");
    Node n;
    n.kind = Kind::Func;
    n.elem = f;
    n.kids = {arg};
    return finish(std::move(n));
}

Expr pow(const Expr& base, const Rational& exponent) {
    if (!base) throw ExprError("power requires a base");
    Node n;
    n.kind = Kind::Pow;
    n.value = exponent;
    n.kids = {base};
    return finish(std::move(n));
}

Expr neg(const Expr& e) {
    if (!e) throw ExprError("negation requires an operand");
    Node n;
    n.kind = Kind::Neg;
    n.kids = {e};
    return finish(std::move(n));
}

Expr sum(std::vector<Expr> terms) {
    if (terms.empty()) return zero();
    if (terms.size() == 1) return terms[0];
    Node n;
    n.kind = Kind::Sum;
    n.kids = std::move(terms);
    return finish(std::move(n));
}

Expr product(std::vector<Expr> factors) {
    if (factors.empty()) return one();
    if (factors.size() == 1) return factors[0];
    Node n;
    n.kind = Kind::Product;
    n.kids = std::move(factors);
    return finish(std::move(n));
}

Expr zero() {
    static const Expr z = constant(0);
    return z;
}

Expr one() {
    static const Expr o = constant(1);
    return o;
}

bool is_zero(const Expr& e) { return e->kind == Kind::Constant && e->value.is_zero(); }
bool is_one(const Expr& e) { return e->kind == Kind::Constant && e->value.is_one(); }

// ------------------------------------------------------------------
// structural comparison
// ------------------------------------------------------------------

namespace {
int kind_rank(Kind k) { return static_cast<int>(k); }

int cmp_rational(const Rational& a, const Rational& b) {
    if (a == b) return 0;
    return a < b ? -1 : 1;
}
}  // namespace

int struct_cmp(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return 0;
    if (kind_rank(a->kind) != kind_rank(b->kind))
        return kind_rank(a->kind) < kind_rank(b->kind) ? -1 : 1;
    switch (a->kind) {
        case Kind::Constant:
            return cmp_rational(a->value, b->value);
        case Kind::Symbol:
            return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
        case Kind::Apply: {
            int c = a->name.compare(b->name);
            if (c != 0) return c < 0 ? -1 : 1;
            if (a->order != b->order) return a->order < b->order ? -1 : 1;
            return struct_cmp(a->kids[0], b->kids[0]);
        }
        case Kind::Func: {
            if (a->elem != b->elem)
                return static_cast<int>(a->elem) < static_cast<int>(b->elem) ? -1 : 1;
            return struct_cmp(a->kids[0], b->kids[0]);
        }
        case Kind::Pow: {
            int c = struct_cmp(a->kids[0], b->kids[0]);
            if (c != 0) return c;
            return cmp_rational(a->value, b->value);
        }
        case Kind::Neg:
            return struct_cmp(a->kids[0], b->kids[0]);
        case Kind::Product:
        case Kind::Sum: {
            std::size_t n = std::min(a->kids.size(), b->kids.size());
            for (std::size_t i = 0; i < n; ++i) {
                int c = struct_cmp(a->kids[i], b->kids[i]);
                if (c != 0) return c;
            }
            if (a->kids.size() != b->kids.size())
                return a->kids.size() < b->kids.size() ? -1 : 1;
            return 0;
        }
    }
    return 0;
}

bool struct_eq(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return true;
    if (a->hash != b->hash) return false;
    return struct_cmp(a, b) == 0;
}

// ------------------------------------------------------------------
// printing
// ------------------------------------------------------------------
//
// Grammar-faithful output: sums as a+b-c, products as coefficient times
// '*'-joined factors with negative-exponent factors moved after '/', and
// parentheses exactly where re-parsing needs them.

namespace {

// Precedence levels for parenthesization: sum < product < unary < power < atom.
enum Prec { PrecSum = 0, PrecProd = 1, PrecUnary = 2, PrecPow = 3, PrecAtom = 4 };

void print_rec(std::ostringstream& os, const Expr& e, int parent_prec);

void print_rational(std::ostringstream& os, const Rational& r, int parent_prec) {
    bool frac = !r.is_integer();
    bool negative = r.is_negative();
    int my_prec = frac ? PrecProd : (negative ? PrecUnary : PrecAtom);
    if (my_prec < parent_prec) {
        os << '(' << r.str() << ')';
    } else {
        os << r.str();
    }
}

// Splits a canonical product's factors into numerator/denominator lists by
// exponent sign. `coeff` handling is done by the caller.
void print_product(std::ostringstream& os, const std::vector<Expr>& kids, int parent_prec) {
    std::vector<const Expr*> num, den;
    const Rational* coeff = nullptr;
    for (const Expr& k : kids) {
        if (k->kind == Kind::Constant) {
            coeff = &k->value;
        } else if (k->kind == Kind::Pow && k->value.is_negative()) {
            den.push_back(&k);
        } else {
            num.push_back(&k);
        }
    }

    int my_prec = PrecProd;
    bool wrap = my_prec < parent_prec;
    if (wrap) os << '(';

    bool first = true;
    auto put_sep = [&] {
        if (!first) os << '*';
        first = false;
    };

    if (coeff && coeff->num() == -1 && coeff->den() == 1) {
        os << '-';  // -x*y instead of -1*x*y
        if (num.empty()) {
            put_sep();
            os << '1';  // -1/x
        }
    } else if (coeff) {
        put_sep();
        if (coeff->is_integer() && !coeff->is_negative()) {
            os << coeff->str();
        } else {
            os << '(' << coeff->str() << ')';
        }
    } else if (num.empty()) {
        put_sep();
        os << '1';  // 1/x
    }
    for (const Expr* f : num) {
        put_sep();
        print_rec(os, *f, PrecUnary);
    }
    if (!den.empty()) {
        os << '/';
        if (den.size() > 1) os << '(';
        bool first_den = true;
        for (const Expr* f : den) {
            if (!first_den) os << '*';
            first_den = false;
            // print base^(positive exponent); exponent 1 prints the bare base
            Rational flipped = -(*f)->value;
            if (flipped.is_one()) {
                print_rec(os, (*f)->kids[0], PrecPow);
            } else {
                print_rec(os, pow((*f)->kids[0], flipped), PrecPow);
            }
        }
        if (den.size() > 1) os << ')';
    }
    if (wrap) os << ')';
}

void print_rec(std::ostringstream& os, const Expr& e, int parent_prec) {
    switch (e->kind) {
        case Kind::Constant:
            print_rational(os, e->value, parent_prec);
            return;
        case Kind::Symbol:
            os << e->name;
            return;
        case Kind::Apply:
            os << e->name;
            for (int i = 0; i < e->order; ++i) os << '\'';
            os << '(';
            print_rec(os, e->kids[0], PrecSum);
            os << ')';
            return;
        case Kind::Func:
            os << elem_name(e->elem) << '(';
            print_rec(os, e->kids[0], PrecSum);
            os << ')';
            return;
        case Kind::Pow: {
            if (e->value.is_negative()) {
                // bare reciprocal: 1/x^2 instead of x^(-2)
                bool wrap = PrecProd < parent_prec;
                if (wrap) os << '(';
                os << "1/";
                Rational flipped = -e->value;
                if (flipped.is_one()) {
                    print_rec(os, e->kids[0], PrecPow);
                } else {
                    print_rec(os, pow(e->kids[0], flipped), PrecPow);
                }
                if (wrap) os << ')';
                return;
            }
            int my_prec = PrecPow;
            bool wrap = my_prec < parent_prec;
            if (wrap) os << '(';
            print_rec(os, e->kids[0], PrecAtom);
            os << '^';
            const Rational& r = e->value;
            if (r.is_integer() && !r.is_negative()) {
                os << r.str();
            } else {
                os << '(' << r.str() << ')';
            }
            if (wrap) os << ')';
            return;
        }
        case Kind::Neg: {
            bool wrap = PrecUnary < parent_prec;
            if (wrap) os << '(';
            os << '-';
            print_rec(os, e->kids[0], PrecUnary);
            if (wrap) os << ')';
            return;
        }
        case Kind::Product:
            print_product(os, e->kids, parent_prec);
            return;
        case Kind::Sum: {
            bool wrap = PrecSum < parent_prec;
            if (wrap) os << '(';
            bool first = true;
            for (const Expr& t : e->kids) {
                // fold a leading negative coefficient into the separator
                bool negative = false;
                Expr body = t;
                if (t->kind == Kind::Neg) {
                    negative = true;
                    body = t->kids[0];
                } else if (t->kind == Kind::Constant && t->value.is_negative()) {
                    negative = true;
                    body = constant(-t->value);
                } else if (t->kind == Kind::Product && t->kids[0]->kind == Kind::Constant &&
                           t->kids[0]->value.is_negative()) {
                    negative = true;
                    std::vector<Expr> kids = t->kids;
                    Rational c = -kids[0]->value;
                    if (c.is_one() && kids.size() >= 2) {
                        kids.erase(kids.begin());
                        body = kids.size() == 1 ? kids[0] : product(std::move(kids));
                    } else {
                        kids[0] = constant(c);
                        body = product(std::move(kids));
                    }
                }
                if (first) {
                    if (negative) os << '-';
                } else {
                    os << (negative ? '-' : '+');
                }
                first = false;
                print_rec(os, body, PrecProd);
            }
            if (wrap) os << ')';
            return;
        }
    }
}

}  // namespace

std::string print(const Expr& e) {
    if (!e) return "<null>";
    std::ostringstream os;
    print_rec(os, e, PrecSum);
    return os.str();
}

// ------------------------------------------------------------------
// differentiation
// ------------------------------------------------------------------

namespace {

// Light folding so that derivative output is readable without being a
// full simplify pass.
Expr fold_sum(std::vector<Expr> terms) {
    std::vector<Expr> kept;
    for (Expr& t : terms)
        if (!is_zero(t)) kept.push_back(std::move(t));
    if (kept.empty()) return zero();
    return sum(std::move(kept));
}

Expr fold_product(std::vector<Expr> factors) {
    std::vector<Expr> kept;
    for (Expr& f : factors) {
        if (is_zero(f)) return zero();
        if (!is_one(f)) kept.push_back(std::move(f));
    }
    if (kept.empty()) return one();
    return product(std::move(kept));
}

}  // namespace

Expr differentiate(const Expr& e, const std::string& sym) {
    switch (e->kind) {
        case Kind::Constant:
            return zero();
        case Kind::Symbol:
            return e->name == sym ? one() : zero();
        case Kind::Apply: {
            // d/dx f^(k)(u) = f^(k+1)(u) * u'
            Expr du = differentiate(e->kids[0], sym);
            if (is_zero(du)) return zero();
            return fold_product({apply(e->name, e->order + 1, e->kids[0]), du});
        }
        case Kind::Func: {
            const Expr& u = e->kids[0];
            Expr du = differentiate(u, sym);
            if (is_zero(du)) return zero();
            Expr outer;
            switch (e->elem) {
                case Elem::Sin: outer = func(Elem::Cos, u); break;
                case Elem::Cos: outer = neg(func(Elem::Sin, u)); break;
                case Elem::Exp: outer = func(Elem::Exp, u); break;
                case Elem::Ln: outer = pow(u, Rational(-1)); break;
                case Elem::Sqrt:
                    // d sqrt(u) = u' / (2 sqrt(u))
                    outer = fold_product({constant(Rational(1, 2)), pow(func(Elem::Sqrt, u), Rational(-1))});
                    break;
                case Elem::Abs:
                    // d|u| = u' * |u| / u  (valid away from u = 0)
                    outer = fold_product({func(Elem::Abs, u), pow(u, Rational(-1))});
                    break;
            }
            return fold_product({outer, du});
        }
        case Kind::Pow: {
            // d(u^r) = r * u^(r-1) * u'
            const Expr& u = e->kids[0];
            Expr du = differentiate(u, sym);
            if (is_zero(du) || e->value.is_zero()) return zero();
            Rational down = e->value - Rational(1);
            Expr base = down.is_zero() ? one() : (down.is_one() ? u : pow(u, down));
            return fold_product({constant(e->value), base, du});
        }
        case Kind::Neg: {
            Expr du = differentiate(e->kids[0], sym);
            if (is_zero(du)) return zero();
            return neg(du);
        }
        case Kind::Sum: {
            std::vector<Expr> terms;
            terms.reserve(e->kids.size());
            for (const Expr& t : e->kids) terms.push_back(differentiate(t, sym));
            return fold_sum(std::move(terms));
        }
        case Kind::Product: {
            // Leibniz over all factors.
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                Expr di = differentiate(e->kids[i], sym);
                if (is_zero(di)) continue;
                std::vector<Expr> factors;
                factors.reserve(e->kids.size());
                for (std::size_t j = 0; j < e->kids.size(); ++j)
                    factors.push_back(j == i ? di : e->kids[j]);
                terms.push_back(fold_product(std::move(factors)));
            }
            return fold_sum(std::move(terms));
        }
    }
    return zero();
}

// ------------------------------------------------------------------
// evaluation
// ------------------------------------------------------------------

namespace {

struct EvalCtx {
    const Bindings& b;
    std::vector<int> path;

    [[noreturn]] void fail(const std::string& msg, const Expr& at) const {
        std::ostringstream os;
        for (std::size_t i = 0; i < path.size(); ++i) {
            os << (i ? "." : "") << path[i];
        }
        std::string where = path.empty() ? "root" : os.str();
        throw EvalError(msg + ": " + print(at), where);
    }
};

double eval_rec(const Expr& e, EvalCtx& ctx);

double eval_kid(const Expr& e, std::size_t i, EvalCtx& ctx) {
    ctx.path.push_back(static_cast<int>(i));
    double v = eval_rec(e->kids[i], ctx);
    ctx.path.pop_back();
    return v;
}

double eval_apply(const Expr& e, EvalCtx& ctx) {
    double arg = eval_kid(e, 0, ctx);
    if (const double* v = ctx.b.find_func(e->name, e->order)) return *v;
    if (const Bindings::Closed* c = ctx.b.find_closed(e->name)) {
        Expr body = c->body;
        for (int i = 0; i < e->order; ++i) body = differentiate(body, c->var);
        Bindings inner;
        inner.set(c->var, arg);
        return evaluate(body, inner);
    }
    ctx.fail("unbound function '" + e->name + "' at derivative order " +
                 std::to_string(e->order),
             e);
}

double eval_rec(const Expr& e, EvalCtx& ctx) {
    double v = 0.0;
    switch (e->kind) {
        case Kind::Constant:
            v = e->value.to_double();
            break;
        case Kind::Symbol: {
            const double* s = ctx.b.find_symbol(e->name);
            if (!s) ctx.fail("unbound symbol '" + e->name + "'", e);
            v = *s;
            break;
        }
        case Kind::Apply:
            v = eval_apply(e, ctx);
            break;
        case Kind::Func: {
            double u = eval_kid(e, 0, ctx);
            switch (e->elem) {
                case Elem::Sin: v = std::sin(u); break;
                case Elem::Cos: v = std::cos(u); break;
                case Elem::Exp: v = std::exp(u); break;
                case Elem::Ln:
                    if (u <= 0.0) ctx.fail("ln of a nonpositive value", e);
                    v = std::log(u);
                    break;
                case Elem::Sqrt:
                    if (u < 0.0) ctx.fail("sqrt of a negative value", e);
                    v = std::sqrt(u);
                    break;
                case Elem::Abs: v = std::fabs(u); break;
            }
            break;
        }
        case Kind::Pow: {
            double u = eval_kid(e, 0, ctx);
            const Rational& r = e->value;
            if (r.is_integer()) {
                if (u == 0.0 && r.is_negative()) ctx.fail("zero raised to a negative power", e);
                v = std::pow(u, static_cast<double>(r.num()));
            } else {
                if (u < 0.0) ctx.fail("fractional power of a negative value", e);
                if (u == 0.0 && r.is_negative()) ctx.fail("zero raised to a negative power", e);
                v = std::pow(u, r.to_double());
            }
            break;
        }
        case Kind::Neg:
            v = -eval_kid(e, 0, ctx);
            break;
        case Kind::Product: {
            v = 1.0;
            for (std::size_t i = 0; i < e->kids.size(); ++i) v *= eval_kid(e, i, ctx);
            break;
        }
        case Kind::Sum: {
            v = 0.0;
            for (std::size_t i = 0; i < e->kids.size(); ++i) v += eval_kid(e, i, ctx);
            break;
        }
    }
    if (!std::isfinite(v)) ctx.fail("non-finite value", e);
    return v;
}

}  // namespace

double evaluate(const Expr& e, const Bindings& b) {
    EvalCtx ctx{b, {}};
    return eval_rec(e, ctx);
}

// ------------------------------------------------------------------
// free variables, probing, equivalence
// ------------------------------------------------------------------

namespace {
void collect_rec(const Expr& e, VarSet& out) {
    switch (e->kind) {
        case Kind::Symbol:
            out.symbols.insert(e->name);
            break;
        case Kind::Apply:
            out.funcs.insert({e->name, e->order});
            collect_rec(e->kids[0], out);
            break;
        default:
            for (const Expr& k : e->kids) collect_rec(k, out);
    }
}
}  // namespace

VarSet collect_vars(const Expr& e) {
    VarSet out;
    collect_rec(e, out);
    return out;
}

std::uint64_t probe_seed() {
    if (const char* env = std::getenv("GTORSION_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return static_cast<std::uint64_t>(v);
    }
    return 42;
}

std::string Bindings::describe() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, v] : symbols_) {
        os << (first ? "" : ", ") << name << "=" << v;
        first = false;
    }
    for (const auto& [key, v] : func_values_) {
        os << (first ? "" : ", ") << key.first;
        for (int i = 0; i < key.second; ++i) os << '\'';
        os << "=" << v;
        first = false;
    }
    return os.str();
}

EquivResult equivalent(const Expr& a, const Expr& b, int probes, double tol,
                       std::uint64_t seed) {
    VarSet vars = collect_vars(a);
    vars.merge(collect_vars(b));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> draw(0.5, 2.0);

    EquivResult res;
    int successful = 0;
    for (int p = 0; p < probes; ++p) {
        // On evaluation errors (domain issues from random points) redraw a
        // few times before declaring the probe void.
        for (int attempt = 0; attempt < 4; ++attempt) {
            Bindings bind;
            for (const std::string& s : vars.symbols) bind.set(s, draw(rng));
            for (const auto& [name, order] : vars.funcs) bind.set_func(name, order, draw(rng));
            double va, vb;
            try {
                va = evaluate(a, bind);
                vb = evaluate(b, bind);
            } catch (const EvalError&) {
                continue;
            }
            ++successful;
            double dev = std::fabs(va - vb) / (1.0 + std::fabs(va) + std::fabs(vb));
            if (dev > res.max_dev) res.max_dev = dev;
            if (dev > tol) {
                res.verdict = Verdict::Different;
                res.witness = bind;
                return res;
            }
            break;
        }
    }
    res.verdict = successful > 0 ? Verdict::Equal : Verdict::Inconclusive;
    return res;
}

}  // namespace gtorsion
