#include "gtorsion/geometry.hpp"

#include <string>
#include <vector>

namespace gtorsion {

namespace {

// determinant of an explicit matrix of expressions by cofactor expansion
Expr matrix_det(const std::vector<std::vector<Expr>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_zero(m[0][j])) continue;
        std::vector<std::vector<Expr>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Expr> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Expr term = m[0][j] * matrix_det(minor);
        terms.push_back(j % 2 == 0 ? term : neg(term));
    }
    return simplify(sum(std::move(terms)));
}

std::vector<std::vector<Expr>> as_matrix(const Tensor& t) {
    std::vector<std::vector<Expr>> m(t.dim(), std::vector<Expr>(t.dim()));
    for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j) m[i][j] = t.at({i, j});
    return m;
}

bool is_diagonal(const Tensor& t) {
    for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j)
            if (i != j && !is_zero(simplify(t.at({i, j})))) return false;
    return true;
}

void check_metric_shape(const Tensor& m) {
    if (m.rank() != 2 || m.valence()[0] != Slot::Down || m.valence()[1] != Slot::Down)
        throw GeometryError("metric must be a rank-2 (Down,Down) tensor");
}

}  // namespace

Expr det_expr(const Tensor& m) {
    check_metric_shape(m);
    if (m.dim() <= 4) return matrix_det(as_matrix(m));
    if (is_diagonal(m)) {
        std::vector<Expr> factors;
        for (int i = 0; i < m.dim(); ++i) factors.push_back(m.at({i, i}));
        return simplify(product(std::move(factors)));
    }
    throw CapabilityError("analytic determinant supported only for N <= 4 or diagonal metrics");
}

Tensor inverse_sym(const Tensor& m) {
    check_metric_shape(m);
    int n = m.dim();
    Tensor inv(n, {Slot::Up, Slot::Up});

    if (n > 4) {
        if (!is_diagonal(m))
            throw CapabilityError("analytic inverse supported only for N <= 4 or diagonal metrics");
        for (int i = 0; i < n; ++i) inv.at({i, i}) = simplify(pow(m.at({i, i}), Rational(-1)));
        return inv;
    }

    Expr det = matrix_det(as_matrix(m));
    if (is_zero(det)) throw GeometryError("metric symmetric part is identically singular");
    auto mat = as_matrix(m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // adjugate: inv[i][j] = (-1)^{i+j} minor(j,i) / det
            std::vector<std::vector<Expr>> minor;
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<Expr> row;
                for (int c = 0; c < n; ++c)
                    if (c != i) row.push_back(mat[r][c]);
                minor.push_back(std::move(row));
            }
            Expr cof = n == 1 ? one() : matrix_det(minor);
            if ((i + j) % 2 == 1) cof = neg(cof);
            inv.at({i, j}) = simplify(cof * pow(det, Rational(-1)));
        }
    }
    return inv;
}

MetricBundle bundle(const Tensor& metric, const std::vector<std::string>& coords) {
    check_metric_shape(metric);
    if (static_cast<int>(coords.size()) != metric.dim())
        throw GeometryError("coordinate list length must equal the metric dimension");

    MetricBundle b{metric.dim(), coords, simplified(metric),
                   symmetrize(metric, 0, 1), antisymmetrize(metric, 0, 1),
                   Tensor(metric.dim(), {Slot::Up, Slot::Up}), zero()};
    b.det = det_expr(b.gsym);
    b.ginv = inverse_sym(b.gsym);

    EquivResult singular = equivalent(b.det, zero(), 8, 1e-12);
    if (singular.verdict != Verdict::Different)
        throw GeometryError(
            "metric symmetric part looks singular: determinant " + print(b.det) +
            (singular.verdict == Verdict::Equal ? " vanished at every probe point"
                                                : " could not be evaluated at any probe point"));
    return b;
}

namespace {

// G_{i.jk} = 1/2 (d_k g_{ji} - d_i g_{jk} + d_j g_{ik}) for any rank-2 input
Tensor first_kind(const Tensor& g, const std::vector<std::string>& coords) {
    int n = g.dim();
    Tensor first(n, {Slot::Down, Slot::Down, Slot::Down});
    // precompute partials of every component once per coordinate
    std::vector<Tensor> dg;
    dg.reserve(n);
    for (int k = 0; k < n; ++k) dg.push_back(partial(g, coords[k]));
    const Rational half(1, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                first.at({i, j, k}) = simplify(
                    constant(half) *
                    (dg[k].at({j, i}) - dg[i].at({j, k}) + dg[j].at({i, k})));
    return first;
}

// anti-symmetric first-kind coefficients rebuilt from the metric's
// anti-symmetric part alone:
// G_{i.<jk>} = 1/2 (d_k a_{ji} + d_j a_{ik} - d_i a_{jk})
Tensor alt_first_kind(const Tensor& galt, const std::vector<std::string>& coords) {
    int n = galt.dim();
    Tensor out(n, {Slot::Down, Slot::Down, Slot::Down});
    std::vector<Tensor> da;
    da.reserve(n);
    for (int k = 0; k < n; ++k) da.push_back(partial(galt, coords[k]));
    const Rational half(1, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out.at({i, j, k}) = simplify(
                    constant(half) *
                    (da[k].at({j, i}) + da[j].at({i, k}) - da[i].at({j, k})));
    return out;
}

void cross_check(const Tensor& built, const Tensor& expected, const char* what) {
    for (std::size_t i = 0; i < built.size(); ++i) {
        EquivResult r = equivalent(built.flat(i), expected.flat(i), 4, 1e-7);
        if (r.verdict == Verdict::Different)
            throw GeometryError(std::string("connection self-check failed: ") + what +
                                " diverges at " + r.witness.describe());
    }
}

}  // namespace

Connection christoffel(const MetricBundle& b) {
    Connection c{Tensor(b.dim, {Slot::Down, Slot::Down, Slot::Down}),
                 Tensor(b.dim, {Slot::Up, Slot::Down, Slot::Down}),
                 Tensor(b.dim, {Slot::Up, Slot::Down, Slot::Down}),
                 Tensor(b.dim, {Slot::Up, Slot::Down, Slot::Down}),
                 Tensor(b.dim, {Slot::Up, Slot::Down, Slot::Down}),
                 Tensor(b.dim, {Slot::Down, Slot::Down, Slot::Down})};

    c.gamma_first = first_kind(b.g, b.coords);
    c.gamma = raise_index(c.gamma_first, 0, b.ginv);
    c.gamma_sym = symmetrize(c.gamma, 1, 2);
    c.gamma_alt = antisymmetrize(c.gamma, 1, 2);
    c.torsion = scale(c.gamma_alt, Rational(2));
    c.torsion_lower = scale(antisymmetrize(c.gamma_first, 1, 2), Rational(2));

    // The symmetric part must rebuild from gsym alone (Levi-Civita), the
    // anti-symmetric part from galt alone.
    cross_check(c.gamma_sym, raise_index(first_kind(b.gsym, b.coords), 0, b.ginv),
                "symmetric part vs. metric symmetric part");
    cross_check(c.gamma_alt, raise_index(alt_first_kind(b.galt, b.coords), 0, b.ginv),
                "anti-symmetric part vs. metric anti-symmetric part");
    return c;
}

Tensor cov_deriv(const Tensor& t, const MetricBundle& b, const Connection& c) {
    int n = b.dim;
    if (t.dim() != n) throw GeometryError("tensor dimension does not match the bundle");
    Valence v = t.valence();
    v.push_back(Slot::Down);
    Tensor out(n, v);

    std::vector<int> src(t.rank());
    out.for_each([&](const std::vector<int>& idx) {
        int k = idx.back();
        for (int i = 0; i < t.rank(); ++i) src[i] = idx[i];
        std::vector<Expr> terms;
        terms.push_back(differentiate(t.at(src), b.coords[k]));
        for (int slot = 0; slot < t.rank(); ++slot) {
            int own = src[slot];
            for (int a = 0; a < n; ++a) {
                std::vector<int> moved = src;
                moved[slot] = a;
                if (t.valence()[slot] == Slot::Up) {
                    terms.push_back(c.gamma_sym.at({own, a, k}) * t.at(moved));
                } else {
                    terms.push_back(neg(c.gamma_sym.at({a, own, k}) * t.at(moved)));
                }
            }
        }
        out.at(idx) = simplify(sum(std::move(terms)));
    });
    return out;
}

Tensor cov_deriv_kind(int kind, const Tensor& t, const MetricBundle& b, const Connection& c) {
    if (kind < 0 || kind > 3) throw GeometryError("covariant-derivative kind must be 0..3");
    if (t.rank() != 2 || t.valence()[0] != Slot::Up || t.valence()[1] != Slot::Down)
        throw GeometryError("the four covariant-derivative kinds are defined for (1,1) tensors");
    if (t.dim() != b.dim) throw GeometryError("tensor dimension does not match the bundle");

    // which Gamma has its lower pair transposed, per kind
    const bool up_transposed[4] = {false, true, false, true};
    const bool down_transposed[4] = {false, true, true, false};

    int n = b.dim;
    Tensor out(n, {Slot::Up, Slot::Down, Slot::Down});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                std::vector<Expr> terms;
                terms.push_back(differentiate(t.at({i, j}), b.coords[k]));
                for (int a = 0; a < n; ++a) {
                    Expr up = up_transposed[kind] ? c.gamma.at({i, k, a}) : c.gamma.at({i, a, k});
                    Expr down =
                        down_transposed[kind] ? c.gamma.at({a, k, j}) : c.gamma.at({a, j, k});
                    terms.push_back(up * t.at({a, j}));
                    terms.push_back(neg(down * t.at({i, a})));
                }
                out.at({i, j, k}) = simplify(sum(std::move(terms)));
            }
        }
    }
    return out;
}

Tensor riemann(const MetricBundle& b, const Connection& c) {
    int n = b.dim;
    const Tensor& G = c.gamma_sym;
    std::vector<Tensor> dG;
    dG.reserve(n);
    for (int k = 0; k < n; ++k) dG.push_back(partial(G, b.coords[k]));

    Tensor out(n, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m)
                for (int nn = 0; nn < n; ++nn) {
                    std::vector<Expr> terms;
                    terms.push_back(dG[nn].at({i, j, m}));
                    terms.push_back(neg(dG[m].at({i, j, nn})));
                    for (int a = 0; a < n; ++a) {
                        terms.push_back(G.at({a, j, m}) * G.at({i, a, nn}));
                        terms.push_back(neg(G.at({a, j, nn}) * G.at({i, a, m})));
                    }
                    out.at({i, j, m, nn}) = simplify(sum(std::move(terms)));
                }
    return out;
}

FamilyCoeffs kind_coeffs(int kind) {
    const Rational h(1, 2), q(1, 4);
    switch (kind) {
        case 0: return {h, -h, q, -q, Rational(0)};
        case 1: return {-h, h, q, -q, Rational(0)};
        case 2: return {h, h, -q, q, -h};
        case 3: return {h, h, -q, q, h};
        case 4: return {Rational(0), Rational(0), -q, q, Rational(0)};
        case 5: return {Rational(0), Rational(0), q, q, Rational(0)};
        default: throw GeometryError("curvature kind must be 0..5");
    }
}

Tensor curvature_family(const MetricBundle& b, const Connection& c, const FamilyCoeffs& fc) {
    int n = b.dim;
    Tensor R = riemann(b, c);
    const Tensor& T = c.torsion;

    bool need_dT = !fc.u.is_zero() || !fc.u2.is_zero();
    Tensor dT = need_dT ? cov_deriv(T, b, c) : Tensor(n, {});

    Tensor out(n, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m)
                for (int nn = 0; nn < n; ++nn) {
                    std::vector<Expr> terms;
                    terms.push_back(R.at({i, j, m, nn}));
                    if (!fc.u.is_zero())
                        terms.push_back(constant(fc.u) * dT.at({i, j, m, nn}));
                    if (!fc.u2.is_zero())
                        terms.push_back(constant(fc.u2) * dT.at({i, j, nn, m}));
                    for (int a = 0; a < n; ++a) {
                        if (!fc.v.is_zero())
                            terms.push_back(constant(fc.v) * T.at({a, j, m}) * T.at({i, a, nn}));
                        if (!fc.v2.is_zero())
                            terms.push_back(constant(fc.v2) * T.at({a, j, nn}) * T.at({i, a, m}));
                        if (!fc.w.is_zero())
                            terms.push_back(constant(fc.w) * T.at({a, m, nn}) * T.at({i, a, j}));
                    }
                    out.at({i, j, m, nn}) = simplify(sum(std::move(terms)));
                }
    return out;
}

Tensor curvature_kind(int kind, const MetricBundle& b, const Connection& c) {
    return curvature_family(b, c, kind_coeffs(kind));
}

Tensor ricci_family(const MetricBundle& b, const Connection& c, const FamilyCoeffs& fc) {
    return contract(curvature_family(b, c, fc), 0, 3);
}

Tensor ricci(const MetricBundle& b, const Connection& c, int kind) {
    return contract(curvature_kind(kind, b, c), 0, 3);
}

Tensor ricci_lc(const MetricBundle& b, const Connection& c) {
    return contract(riemann(b, c), 0, 3);
}

Expr trace_with_inverse(const MetricBundle& b, const Tensor& a) {
    if (a.rank() != 2 || a.valence()[0] != Slot::Down || a.valence()[1] != Slot::Down)
        throw GeometryError("trace_with_inverse expects a rank-2 (Down,Down) tensor");
    std::vector<Expr> terms;
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j) terms.push_back(b.ginv.at({i, j}) * a.at({i, j}));
    return simplify(sum(std::move(terms)));
}

Expr scalar_family(const MetricBundle& b, const Connection& c, const FamilyCoeffs& fc) {
    return trace_with_inverse(b, ricci_family(b, c, fc));
}

Expr scalar_curvature(const MetricBundle& b, const Connection& c, int kind) {
    return trace_with_inverse(b, ricci(b, c, kind));
}

Expr scalar_lc(const MetricBundle& b, const Connection& c) {
    return trace_with_inverse(b, ricci_lc(b, c));
}

}  // namespace gtorsion
