#include "gtorsion/expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>

// Canonical form invariants (each guaranteed by simplify, relied on by print
// and by the tensor layers):
//   * no Neg nodes (folded into rational coefficients)
//   * Sum: >= 2 children, none a Sum or a zero, like monomials collected,
//     children sorted, at most one Constant child (sorted first)
//   * Product: >= 2 children, none a Product/Neg, at most one Constant child
//     (first, never 0 or 1), equal bases merged into a single Pow, children
//     sorted; a Product never contains a Sum factor if distributing it would
//     stay under the expansion bound
//   * Pow: exponent nonzero and not one; base is not Pow/Product/Neg and not
//     a constant foldable exactly; integer powers (2..3) of small Sums are
//     expanded
//   * Constants fold exactly in rational arithmetic

namespace gtorsion {

namespace {

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return struct_cmp(a, b) < 0; }
};

Expr norm_pow(const Expr& base, const Rational& exponent);
Expr norm_product(std::vector<Expr> factors);
Expr norm_sum(std::vector<Expr> terms);

// Bound on the number of terms a product-over-sums distribution may create.
constexpr std::size_t kDistributionLimit = 1024;

// Largest integer power of a sum that gets expanded, and the widest sum
// eligible for expansion.
constexpr long long kMaxSumPower = 3;
constexpr std::size_t kMaxSumWidth = 5;

// ---- products ---------------------------------------------------------

// Splits a canonical (already normalized) term into coefficient * monomial.
// The monomial is nullptr for pure constants and never carries a Constant
// factor of its own.
struct Term {
    Rational coeff;
    Expr mono;  // nullptr == 1
};

Term split_term(const Expr& t) {
    if (t->kind == Kind::Constant) return {t->value, nullptr};
    if (t->kind == Kind::Product && t->kids[0]->kind == Kind::Constant) {
        Rational c = t->kids[0]->value;
        std::vector<Expr> rest(t->kids.begin() + 1, t->kids.end());
        Expr mono = rest.size() == 1 ? rest[0] : product(std::move(rest));
        return {c, mono};
    }
    return {Rational(1), t};
}

Expr join_term(const Rational& coeff, const Expr& mono) {
    if (!mono) return constant(coeff);
    if (coeff.is_one()) return mono;
    std::vector<Expr> kids;
    if (mono->kind == Kind::Product) {
        kids.reserve(mono->kids.size() + 1);
        kids.push_back(constant(coeff));
        kids.insert(kids.end(), mono->kids.begin(), mono->kids.end());
    } else {
        kids = {constant(coeff), mono};
    }
    return product(std::move(kids));
}

// Distributes (sum factors) x (everything else); callers have checked the
// size bound. Every generated term multiplies non-sum parts with one pick
// from each sum, which cannot re-trigger distribution (canonical sum terms
// are never sums).
Expr distribute(const Rational& coeff, const std::vector<Expr>& plain,
                const std::vector<Expr>& sums) {
    std::vector<std::vector<Expr>> partial;  // factor lists under construction
    {
        std::vector<Expr> seed;
        if (!coeff.is_one()) seed.push_back(constant(coeff));
        seed.insert(seed.end(), plain.begin(), plain.end());
        partial.push_back(std::move(seed));
    }
    for (const Expr& s : sums) {
        std::vector<std::vector<Expr>> next;
        next.reserve(partial.size() * s->kids.size());
        for (const std::vector<Expr>& p : partial) {
            for (const Expr& termpick : s->kids) {
                std::vector<Expr> ext = p;
                ext.push_back(termpick);
                next.push_back(std::move(ext));
            }
        }
        partial = std::move(next);
    }
    std::vector<Expr> terms;
    terms.reserve(partial.size());
    for (std::vector<Expr>& p : partial) terms.push_back(norm_product(std::move(p)));
    return norm_sum(std::move(terms));
}

Expr norm_product(std::vector<Expr> factors) {
    // Flatten and split off the rational coefficient.
    Rational coeff(1);
    std::vector<Expr> atoms;
    std::vector<Expr> work(std::move(factors));
    for (std::size_t i = 0; i < work.size(); ++i) {
        const Expr f = work[i];
        if (f->kind == Kind::Product) {
            work.insert(work.end(), f->kids.begin(), f->kids.end());
        } else if (f->kind == Kind::Constant) {
            coeff = coeff * f->value;
        } else {
            atoms.push_back(f);
        }
    }
    if (coeff.is_zero()) return zero();

    // Merge equal bases: x^a * x^b -> x^(a+b).
    std::map<Expr, Rational, ExprLess> powers;
    for (const Expr& a : atoms) {
        if (a->kind == Kind::Pow) {
            powers[a->kids[0]] += a->value;
        } else {
            powers[a] += Rational(1);
        }
    }

    std::vector<Expr> normalized;
    bool has_product = false;
    for (const auto& [base, e] : powers) {
        if (e.is_zero()) continue;
        Expr f = norm_pow(base, e);
        has_product = has_product || f->kind == Kind::Product;
        normalized.push_back(std::move(f));
    }
    if (has_product) {
        // a merged power re-expanded into several factors, e.g. the bases of
        // two canonical powers were equal products; flatten once more
        normalized.push_back(constant(coeff));
        return norm_product(std::move(normalized));
    }

    std::vector<Expr> plain, sums;
    std::size_t distribution_size = 1;
    bool overflow = false;
    for (Expr& f : normalized) {
        if (f->kind == Kind::Constant) {
            coeff = coeff * f->value;
            if (coeff.is_zero()) return zero();
        } else if (f->kind == Kind::Sum) {
            if (!overflow && distribution_size * f->kids.size() <= kDistributionLimit) {
                distribution_size *= f->kids.size();
            } else {
                overflow = true;
            }
            sums.push_back(std::move(f));
        } else {
            plain.push_back(std::move(f));
        }
    }

    if (!sums.empty() && !overflow) return distribute(coeff, plain, sums);
    plain.insert(plain.end(), sums.begin(), sums.end());

    std::sort(plain.begin(), plain.end(),
              [](const Expr& a, const Expr& b) { return struct_cmp(a, b) < 0; });

    if (plain.empty()) return constant(coeff);
    if (coeff.is_one()) return plain.size() == 1 ? plain[0] : product(std::move(plain));
    std::vector<Expr> kids;
    kids.reserve(plain.size() + 1);
    kids.push_back(constant(coeff));
    kids.insert(kids.end(), plain.begin(), plain.end());
    return product(std::move(kids));
}

// ---- powers ------------------------------------------------------------

Expr norm_pow(const Expr& base, const Rational& exponent) {
    if (exponent.is_zero()) return one();
    if (exponent.is_one()) return base;

    switch (base->kind) {
        case Kind::Constant: {
            const Rational& c = base->value;
            if (c.is_zero()) {
                if (exponent.is_negative())
                    throw ExprError("zero raised to a negative power");
                return zero();
            }
            if (c.is_one()) return one();
            if (exponent.is_integer()) return constant(c.pow_int(exponent.num()));
            return pow(base, exponent);  // e.g. 2^(1/2): kept exact
        }
        case Kind::Pow:
            // (u^a)^b -> u^(a*b)
            return norm_pow(base->kids[0], base->value * exponent);
        case Kind::Neg:
            return norm_product({constant(-1), norm_pow(base->kids[0], exponent)});
        case Kind::Product: {
            std::vector<Expr> factors;
            factors.reserve(base->kids.size());
            for (const Expr& k : base->kids) factors.push_back(norm_pow(k, exponent));
            return norm_product(std::move(factors));
        }
        case Kind::Sum: {
            // Confluence with printing: 1/(a+b)^2 reparses via (a+b)^2, so a
            // negative power of a small sum canonicalizes as the reciprocal
            // of the expanded positive power.
            if (exponent.is_integer() && exponent.num() <= -2 &&
                -exponent.num() <= kMaxSumPower && base->kids.size() <= kMaxSumWidth) {
                return norm_pow(norm_pow(base, -exponent), Rational(-1));
            }
            if (exponent.is_integer() && exponent.num() >= 2 && exponent.num() <= kMaxSumPower &&
                base->kids.size() <= kMaxSumWidth) {
                // direct term-by-term expansion (a canonical sum's terms are
                // never sums themselves, so this cannot re-enter this branch
                // with the same base)
                std::vector<Expr> acc(base->kids.begin(), base->kids.end());
                for (long long p = 1; p < exponent.num(); ++p) {
                    std::vector<Expr> next;
                    next.reserve(acc.size() * base->kids.size());
                    for (const Expr& t1 : acc)
                        for (const Expr& t2 : base->kids) next.push_back(norm_product({t1, t2}));
                    acc = std::move(next);
                }
                return norm_sum(std::move(acc));
            }
            return pow(base, exponent);
        }
        default:
            return pow(base, exponent);
    }
}

// ---- sums ---------------------------------------------------------------

Expr norm_sum(std::vector<Expr> terms) {
    Rational const_part(0);
    std::map<Expr, Rational, ExprLess> monomials;

    std::vector<Expr> work(std::move(terms));
    for (std::size_t i = 0; i < work.size(); ++i) {
        const Expr t = work[i];
        if (t->kind == Kind::Sum) {
            work.insert(work.end(), t->kids.begin(), t->kids.end());
            continue;
        }
        Term term = split_term(t);
        if (!term.mono) {
            const_part = const_part + term.coeff;
        } else {
            auto it = monomials.find(term.mono);
            if (it == monomials.end()) {
                monomials.emplace(term.mono, term.coeff);
            } else {
                it->second = it->second + term.coeff;
            }
        }
    }

    std::vector<Expr> out;
    if (!const_part.is_zero()) out.push_back(constant(const_part));
    for (const auto& [mono, c] : monomials) {
        if (c.is_zero()) continue;
        out.push_back(join_term(c, mono));
    }
    std::sort(out.begin(), out.end(),
              [](const Expr& a, const Expr& b) { return struct_cmp(a, b) < 0; });
    if (out.empty()) return zero();
    if (out.size() == 1) return out[0];
    return sum(std::move(out));
}

// ---- elementary-function folding ----------------------------------------

Expr norm_func(Elem f, const Expr& arg) {
    if (arg->kind == Kind::Constant) {
        const Rational& c = arg->value;
        switch (f) {
            case Elem::Sin:
                if (c.is_zero()) return zero();
                break;
            case Elem::Cos:
                if (c.is_zero()) return one();
                break;
            case Elem::Exp:
                if (c.is_zero()) return one();
                break;
            case Elem::Ln:
                if (c.is_one()) return zero();
                break;
            case Elem::Sqrt:
                if (c.is_zero()) return zero();
                if (c.is_one()) return one();
                if (!c.is_negative() && c.num() < (1LL << 40) && c.den() < (1LL << 40)) {
                    // exact square roots of (not too large) rationals fold
                    auto isqrt = [](long long v) -> long long {
                        if (v < 0) return -1;
                        long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
                        while (r > 0 && r * r > v) --r;
                        while ((r + 1) * (r + 1) <= v) ++r;
                        return r;
                    };
                    long long rn = isqrt(c.num()), rd = isqrt(c.den());
                    if (rn * rn == c.num() && rd * rd == c.den()) return constant(Rational(rn, rd));
                }
                break;
            case Elem::Abs:
                return constant(c.is_negative() ? -c : c);
        }
    }
    if (f == Elem::Abs && arg->kind == Kind::Func && arg->elem == Elem::Abs) return arg;
    return func(f, arg);
}

}  // namespace

Expr simplify(const Expr& e) {
    switch (e->kind) {
        case Kind::Constant:
        case Kind::Symbol:
            return e;
        case Kind::Apply: {
            Expr a = simplify(e->kids[0]);
            if (a.get() == e->kids[0].get()) return e;
            return apply(e->name, e->order, a);
        }
        case Kind::Func:
            return norm_func(e->elem, simplify(e->kids[0]));
        case Kind::Pow:
            return norm_pow(simplify(e->kids[0]), e->value);
        case Kind::Neg:
            return norm_product({constant(-1), simplify(e->kids[0])});
        case Kind::Product: {
            std::vector<Expr> kids;
            kids.reserve(e->kids.size());
            for (const Expr& k : e->kids) kids.push_back(simplify(k));
            return norm_product(std::move(kids));
        }
        case Kind::Sum: {
            std::vector<Expr> kids;
            kids.reserve(e->kids.size());
            for (const Expr& k : e->kids) kids.push_back(simplify(k));
            return norm_sum(std::move(kids));
        }
    }
    return e;
}

}  // namespace gtorsion
