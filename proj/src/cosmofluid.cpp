#include "gtorsion/cosmofluid.hpp"

#include <cmath>
#include <random>

namespace gtorsion {

namespace {

// Sign of an expression across probe bindings: +1/-1 when consistent,
// error when mixed or never evaluable.
int probed_sign(const Expr& e, const std::string& what) {
    VarSet vars = collect_vars(e);
    std::mt19937_64 rng(probe_seed());
    std::uniform_real_distribution<double> draw(0.5, 2.0);
    int sign = 0;
    int seen = 0;
    for (int p = 0; p < 16; ++p) {
        Bindings b;
        for (const std::string& s : vars.symbols) b.set(s, draw(rng));
        for (const auto& [name, order] : vars.funcs) b.set_func(name, order, draw(rng));
        double v;
        try {
            v = evaluate(e, b);
        } catch (const EvalError&) {
            continue;
        }
        if (std::fabs(v) < 1e-12) continue;
        int s = v > 0 ? 1 : -1;
        if (sign != 0 && s != sign)
            throw GeometryError(what + " has no consistent sign across probe points: " + print(e));
        sign = s;
        ++seen;
    }
    if (seen == 0)
        throw GeometryError(what + " could not be evaluated at any probe point: " + print(e));
    return sign;
}

Tensor lower_velocity(const MetricBundle& b, const Tensor& up) {
    return lower_index(up, 0, b.gsym);
}

}  // namespace

Velocity comoving_velocity(const MetricBundle& b) {
    const Expr& g00 = b.gsym.at({0, 0});
    int eps = probed_sign(g00, "g_00");

    Tensor up(b.dim, {Slot::Up});
    up.at({0}) = simplify(pow(func(Elem::Abs, g00), Rational(-1, 2)));
    Velocity u{up, lower_velocity(b, up), eps};
    return u;
}

Velocity velocity_from_components(const MetricBundle& b, const std::vector<Expr>& comps) {
    if (static_cast<int>(comps.size()) != b.dim)
        throw GeometryError("velocity needs exactly one component per dimension");
    Tensor raw(b.dim, {Slot::Up});
    for (int i = 0; i < b.dim; ++i) raw.at({i}) = simplify(comps[i]);

    // norm^2 = g_(ab) u^a u^b; eps is its sign, the components divide by
    // sqrt(|norm^2|)
    std::vector<Expr> terms;
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            terms.push_back(b.gsym.at({i, j}) * raw.at({i}) * raw.at({j}));
    Expr norm2 = simplify(sum(std::move(terms)));
    if (is_zero(norm2)) throw GeometryError("velocity is null: u.u vanishes identically");
    int eps = probed_sign(norm2, "velocity normalization u.u");

    Expr inv_norm = simplify(pow(func(Elem::Abs, norm2), Rational(-1, 2)));
    Tensor up(b.dim, {Slot::Up});
    for (int i = 0; i < b.dim; ++i) up.at({i}) = simplify(raw.at({i}) * inv_norm);
    return Velocity{up, lower_velocity(b, up), eps};
}

Tensor torsion_square(const Connection& c) {
    const Tensor& T = c.torsion;
    int n = T.dim();
    Tensor S(n, {Slot::Down, Slot::Down});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Expr> terms;
            for (int a = 0; a < n; ++a)
                for (int bb = 0; bb < n; ++bb)
                    terms.push_back(T.at({a, i, bb}) * T.at({bb, j, a}));
            S.at({i, j}) = simplify(sum(std::move(terms)));
        }
    return S;
}

Expr torsion_invariant(const MetricBundle& b, const Connection& c) {
    return trace_with_inverse(b, torsion_square(c));
}

Tensor stress_energy(const MetricBundle& b, const Connection& c) {
    Expr gtt = torsion_invariant(b, c);
    Tensor S = torsion_square(c);
    Tensor out(b.dim, {Slot::Down, Slot::Down});
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            out.at({i, j}) = simplify(constant(Rational(1, 4)) * gtt * b.gsym.at({i, j}) -
                                      constant(Rational(4, 3)) * S.at({i, j}));
    return out;
}

Expr stress_trace(const MetricBundle& b, const Tensor& stress) {
    return trace_with_inverse(b, stress);
}

FluidState fluid_decompose(const MetricBundle& b, const Tensor& stress, const Velocity& u) {
    int n = b.dim;
    if (stress.rank() != 2 || stress.valence()[0] != Slot::Down ||
        stress.valence()[1] != Slot::Down)
        throw GeometryError("fluid decomposition expects a rank-2 (Down,Down) stress tensor");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            EquivResult r = equivalent(stress.at({i, j}), stress.at({j, i}), 4, 1e-7);
            if (r.verdict == Verdict::Different)
                throw GeometryError("fluid decomposition expects a symmetric stress tensor");
        }

    Expr eps = constant(u.eps);

    // rho = T_ab u^a u^b
    std::vector<Expr> rho_terms;
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            rho_terms.push_back(stress.at({a, c}) * u.up.at({a}) * u.up.at({c}));
    Expr rho = simplify(sum(std::move(rho_terms)));

    // projector h_ij = g_(ij) - eps u_i u_j ; mixed form h^a_i = d^a_i - eps u^a u_i
    Tensor h(n, {Slot::Down, Slot::Down});
    Tensor hmix(n, {Slot::Up, Slot::Down});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            h.at({i, j}) =
                simplify(b.gsym.at({i, j}) - eps * u.down.at({i}) * u.down.at({j}));
            Expr delta = i == j ? one() : zero();
            hmix.at({i, j}) = simplify(delta - eps * u.up.at({i}) * u.down.at({j}));
        }

    // q_i = T_ab u^a h^b_i
    Tensor q(n, {Slot::Down});
    for (int i = 0; i < n; ++i) {
        std::vector<Expr> terms;
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c)
                terms.push_back(stress.at({a, c}) * u.up.at({a}) * hmix.at({c, i}));
        q.at({i}) = simplify(sum(std::move(terms)));
    }

    // Pi_ij = -T_ab h^a_i h^b_j
    Tensor Pi(n, {Slot::Down, Slot::Down});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Expr> terms;
            for (int a = 0; a < n; ++a)
                for (int c = 0; c < n; ++c)
                    terms.push_back(neg(stress.at({a, c}) * hmix.at({a, i}) * hmix.at({c, j})));
            Pi.at({i, j}) = simplify(sum(std::move(terms)));
        }

    // p = 1/3 Pi^a_a
    Expr trace_Pi = trace_with_inverse(b, Pi);
    Expr p = simplify(constant(Rational(1, 3)) * trace_Pi);

    FluidState f{rho, p, std::nullopt, std::nullopt, q, Pi, h, u.eps};

    // omega = p/rho unless rho is identically zero at the probes
    EquivResult rho_zero = equivalent(rho, zero(), 16, 1e-9);
    if (rho_zero.verdict == Verdict::Different) {
        Expr omega = simplify(p * pow(rho, Rational(-1)));
        f.omega = omega;
        if (omega->kind == Kind::Constant) {
            f.omega_exact = omega->value;
        } else {
            // probe for a constant rational ratio
            VarSet vars = collect_vars(omega);
            std::mt19937_64 rng(probe_seed() ^ 0x5ca1ab1eULL);
            std::uniform_real_distribution<double> draw(0.5, 2.0);
            std::optional<double> ratio;
            bool constant_ratio = true;
            for (int pr = 0; pr < 16 && constant_ratio; ++pr) {
                Bindings bind;
                for (const std::string& s : vars.symbols) bind.set(s, draw(rng));
                for (const auto& [name, order] : vars.funcs)
                    bind.set_func(name, order, draw(rng));
                try {
                    double v = evaluate(omega, bind);
                    if (!ratio) {
                        ratio = v;
                    } else if (std::fabs(v - *ratio) > 1e-9 * (1 + std::fabs(v))) {
                        constant_ratio = false;
                    }
                } catch (const EvalError&) {
                }
            }
            if (constant_ratio && ratio) {
                if (std::optional<Rational> r = rationalize(*ratio)) {
                    Expr residual = simplify(p - constant(*r) * rho);
                    if (equivalent(residual, zero(), 16, 1e-9).verdict == Verdict::Equal)
                        f.omega_exact = *r;
                }
            }
        }
    }
    return f;
}

namespace {

// The closed forms only make sense on the diagonal, t-dependent metric
// shape; reject anything else loudly.
void check_ansatz_shape(const MetricBundle& b) {
    if (b.dim != 4) throw GeometryError("comoving closed forms require a 4-dimensional metric");
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i != j && !is_zero(simplify(b.gsym.at({i, j}))))
                throw GeometryError(
                    "comoving closed forms require a diagonal metric symmetric part");
            for (std::size_t k = 1; k < b.coords.size(); ++k) {
                if (!is_zero(simplify(differentiate(b.g.at({i, j}), b.coords[k]))))
                    throw GeometryError(
                        "comoving closed forms require entries depending on the time "
                        "coordinate only");
            }
        }
}

}  // namespace

FluidState comoving_closed_forms(const MetricBundle& b) {
    check_ansatz_shape(b);
    const std::string& t = b.coords[0];

    Expr s0 = b.gsym.at({0, 0});
    Expr s1 = b.gsym.at({1, 1});
    Expr s2 = b.gsym.at({2, 2});
    Expr s3 = b.gsym.at({3, 3});
    Expr n3p = differentiate(b.galt.at({1, 2}), t);
    Expr n4p = differentiate(b.galt.at({1, 3}), t);
    Expr n5p = differentiate(b.galt.at({2, 3}), t);

    Expr sigma = simplify(s3 * pow(n3p, Rational(2)) + s2 * pow(n4p, Rational(2)) +
                          s1 * pow(n5p, Rational(2)));
    Expr det = b.det;

    Expr p = simplify(constant(Rational(-1, 18)) * (constant(21) + constant(8) * s0) * sigma *
                      pow(det, Rational(-1)));
    Expr rho = simplify(constant(Rational(-1, 6)) * (constant(9) - constant(16) * s0) * sigma *
                        pow(det, Rational(-1)));
    Expr omega = simplify(constant(Rational(1, 3)) * (constant(21) + constant(8) * s0) *
                          pow(constant(9) - constant(16) * s0, Rational(-1)));

    Velocity u = comoving_velocity(b);
    Tensor q(4, {Slot::Down});
    q.at({0}) = rho;  // printed as-is; the general pipeline gives an orthogonal q instead

    Tensor h(4, {Slot::Down, Slot::Down});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            h.at({i, j}) = simplify(b.gsym.at({i, j}) -
                                    constant(u.eps) * u.down.at({i}) * u.down.at({j}));

    FluidState f{rho,
                 p,
                 omega,
                 std::nullopt,
                 q,
                 Tensor(4, {Slot::Down, Slot::Down}),
                 h,
                 u.eps};
    // with no density the state parameter p/rho has no meaning even though
    // the printed formula stays finite
    if (equivalent(rho, zero(), 16, 1e-12).verdict == Verdict::Equal) {
        f.omega = std::nullopt;
    } else if (omega->kind == Kind::Constant) {
        f.omega_exact = omega->value;
    }
    return f;
}

Tensor einstein_vacuum(const MetricBundle& b, const Connection& c) {
    Tensor R = ricci_lc(b, c);
    Expr scal = trace_with_inverse(b, R);
    Tensor out(b.dim, {Slot::Down, Slot::Down});
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            out.at({i, j}) = simplify(R.at({i, j}) -
                                      constant(Rational(1, 2)) * scal * b.gsym.at({i, j}));
    return out;
}

Tensor einstein_residual(const MetricBundle& b, const Connection& c, const Expr& kappa) {
    Tensor vac = einstein_vacuum(b, c);
    Tensor stress = stress_energy(b, c);
    Tensor out(b.dim, {Slot::Down, Slot::Down});
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            out.at({i, j}) = simplify(vac.at({i, j}) - kappa * stress.at({i, j}));
    return out;
}

Expr lagrangian_density(const MetricBundle& b, const Connection& c, const Expr& kappa) {
    Expr R = scalar_lc(b, c);
    Expr gtt = torsion_invariant(b, c);
    Expr root = func(Elem::Sqrt, func(Elem::Abs, b.det));
    return simplify(root * (R * pow(constant(2) * kappa, Rational(-1)) +
                            constant(Rational(1, 4)) * gtt));
}

std::optional<Rational> rationalize(double x, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    // continued-fraction convergents
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(v);
        if (fl > 1e15 || fl < -1e15) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0;
        long long q2 = a * q1 + q0;
        if (q2 > 1000000) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::fabs(approx - x) <= tol * (1 + std::fabs(x))) return Rational(p1, q1);
        double frac = v - fl;
        if (std::fabs(frac) < 1e-15) break;
        v = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace gtorsion
