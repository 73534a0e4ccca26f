#include "gtorsion/paperlab.hpp"

#include <cmath>
#include <cstdlib>

namespace gtorsion {

namespace {

using Vec = std::vector<double>;

NumMat zeros2(int n) { return NumMat(n, Vec(n, 0.0)); }
NumTen3 zeros3(int n) { return NumTen3(n, zeros2(n)); }
NumTen4 zeros4(int n) { return NumTen4(n, zeros3(n)); }

// Gauss-Jordan with partial pivoting; the inputs here are small (dim <= a
// handful), so no scaling tricks are needed beyond the pivot check.
NumMat invert(const NumMat& m) {
    const int n = static_cast<int>(m.size());
    NumMat a = m;
    NumMat inv = zeros2(n);
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-12)
            throw GeometryError("symmetric part is numerically singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const double d = a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

double determinant(NumMat a) {
    const int n = static_cast<int>(a.size());
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-14) return 0.0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

// Evaluates the metric entries at arbitrary coordinate points by rebinding
// the coordinate symbols; every opaque function must be closed by the
// caller's bindings for shifted points to make sense.
class PointEvaluator {
public:
    PointEvaluator(const MetricBundle& b, const Bindings& bind, double step)
        : b_(&b), base_(bind), h_(step) {
        for (const std::string& c : b.coords) {
            const double* v = bind.find_symbol(c);
            if (!v) throw EvalError("coordinate has no bound value", c);
            x0_.push_back(*v);
        }
    }

    int dim() const { return b_->dim; }
    double step() const { return h_; }
    const Vec& origin() const { return x0_; }

    NumMat metric_at(const Vec& x) const {
        Bindings bb = base_;
        for (int i = 0; i < dim(); ++i) bb.set(b_->coords[i], x[i]);
        NumMat out = zeros2(dim());
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) out[i][j] = evaluate(b_->g.at({i, j}), bb);
        return out;
    }

    // d/dx_k of the full metric, central difference.
    NumTen3 metric_grad_at(const Vec& x) const {
        const int n = dim();
        NumTen3 dg = zeros3(n);
        for (int k = 0; k < n; ++k) {
            Vec xp = x, xm = x;
            xp[k] += h_;
            xm[k] -= h_;
            NumMat gp = metric_at(xp), gm = metric_at(xm);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) dg[k][i][j] = (gp[i][j] - gm[i][j]) / (2.0 * h_);
        }
        return dg;
    }

private:
    const MetricBundle* b_;
    Bindings base_;
    double h_;
    Vec x0_;
};

struct ConnPieces {
    NumMat gsym, galt, ginv;
    NumTen3 gamma_first, gamma, gamma_sym, gamma_alt, torsion, torsion_lower;
};

// G_{i.jk} = (d_k g_ji - d_i g_jk + d_j g_ik) / 2 on the full metric,
// raised with the inverse of the symmetric part.
ConnPieces connection_at(const PointEvaluator& pe, const Vec& x) {
    const int n = pe.dim();
    ConnPieces c;
    NumMat g = pe.metric_at(x);
    c.gsym = zeros2(n);
    c.galt = zeros2(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            c.gsym[i][j] = 0.5 * (g[i][j] + g[j][i]);
            c.galt[i][j] = 0.5 * (g[i][j] - g[j][i]);
        }
    c.ginv = invert(c.gsym);

    NumTen3 dg = pe.metric_grad_at(x);
    c.gamma_first = zeros3(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                c.gamma_first[i][j][k] = 0.5 * (dg[k][j][i] - dg[i][j][k] + dg[j][i][k]);

    c.gamma = zeros3(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a) acc += c.ginv[i][a] * c.gamma_first[a][j][k];
                c.gamma[i][j][k] = acc;
            }

    c.gamma_sym = zeros3(n);
    c.gamma_alt = zeros3(n);
    c.torsion = zeros3(n);
    c.torsion_lower = zeros3(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                c.gamma_sym[i][j][k] = 0.5 * (c.gamma[i][j][k] + c.gamma[i][k][j]);
                c.gamma_alt[i][j][k] = 0.5 * (c.gamma[i][j][k] - c.gamma[i][k][j]);
                c.torsion[i][j][k] = c.gamma[i][j][k] - c.gamma[i][k][j];
                c.torsion_lower[i][j][k] =
                    c.gamma_first[i][j][k] - c.gamma_first[i][k][j];
            }
    return c;
}

}  // namespace

NumericBundle numeric_oracle(const MetricBundle& b, const Bindings& bind, double step) {
    PointEvaluator pe(b, bind, step);
    const int n = pe.dim();
    const Vec& x0 = pe.origin();
    const double h = pe.step();

    NumericBundle nb;
    nb.dim = n;
    nb.g = pe.metric_at(x0);

    ConnPieces c0 = connection_at(pe, x0);
    nb.gsym = c0.gsym;
    nb.galt = c0.galt;
    nb.ginv = c0.ginv;
    nb.det = determinant(c0.gsym);
    nb.gamma_first = c0.gamma_first;
    nb.gamma = c0.gamma;
    nb.gamma_sym = c0.gamma_sym;
    nb.gamma_alt = c0.gamma_alt;
    nb.torsion = c0.torsion;
    nb.torsion_lower = c0.torsion_lower;

    // Nested central differences of the raised connection and the torsion;
    // one shifted-connection evaluation serves both.
    NumTen4 dGam = zeros4(n);  // dGam[k][i][j][m] = d_k Gbar^i_jm
    NumTen4 dTor = zeros4(n);  // dTor[k][i][j][m] = d_k T^i_jm
    for (int k = 0; k < n; ++k) {
        Vec xp = x0, xm = x0;
        xp[k] += h;
        xm[k] -= h;
        ConnPieces cp = connection_at(pe, xp);
        ConnPieces cm = connection_at(pe, xm);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int m = 0; m < n; ++m) {
                    dGam[k][i][j][m] =
                        (cp.gamma_sym[i][j][m] - cm.gamma_sym[i][j][m]) / (2.0 * h);
                    dTor[k][i][j][m] =
                        (cp.torsion[i][j][m] - cm.torsion[i][j][m]) / (2.0 * h);
                }
    }

    // R^i_jmn = d_n Gbar^i_jm - d_m Gbar^i_jn
    //         + Gbar^a_jm Gbar^i_an - Gbar^a_jn Gbar^i_am
    const NumTen3& G = c0.gamma_sym;
    nb.riemann = zeros4(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m)
                for (int nn = 0; nn < n; ++nn) {
                    double acc = dGam[nn][i][j][m] - dGam[m][i][j][nn];
                    for (int a = 0; a < n; ++a)
                        acc += G[a][j][m] * G[i][a][nn] - G[a][j][nn] * G[i][a][m];
                    nb.riemann[i][j][m][nn] = acc;
                }

    // D_n T^i_jm = d_n T^i_jm + Gbar^i_an T^a_jm - Gbar^a_jn T^i_am
    //            - Gbar^a_mn T^i_ja
    const NumTen3& T = c0.torsion;
    NumTen4 DT = zeros4(n);  // DT[i][j][m][n] = D_n T^i_jm
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m)
                for (int nn = 0; nn < n; ++nn) {
                    double acc = dTor[nn][i][j][m];
                    for (int a = 0; a < n; ++a)
                        acc += G[i][a][nn] * T[a][j][m] - G[a][j][nn] * T[i][a][m] -
                               G[a][m][nn] * T[i][j][a];
                    DT[i][j][m][nn] = acc;
                }

    for (int kind = 0; kind < 6; ++kind) {
        FamilyCoeffs fc = kind_coeffs(kind);
        const double u = fc.u.to_double(), u2 = fc.u2.to_double();
        const double v = fc.v.to_double(), v2 = fc.v2.to_double(), w = fc.w.to_double();
        NumTen4 R = zeros4(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int m = 0; m < n; ++m)
                    for (int nn = 0; nn < n; ++nn) {
                        double acc = nb.riemann[i][j][m][nn] + u * DT[i][j][m][nn] +
                                     u2 * DT[i][j][nn][m];
                        for (int a = 0; a < n; ++a)
                            acc += v * T[a][j][m] * T[i][a][nn] +
                                   v2 * T[a][j][nn] * T[i][a][m] +
                                   w * T[a][m][nn] * T[i][a][j];
                        R[i][j][m][nn] = acc;
                    }
        nb.curvature[kind] = R;
        NumMat ric = zeros2(n);
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a) acc += R[a][j][m][a];
                ric[j][m] = acc;
            }
        nb.ricci[kind] = ric;
        double sc = 0.0;
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) sc += nb.ginv[j][m] * ric[j][m];
        nb.scalar[kind] = sc;
    }

    nb.ricci_assoc = zeros2(n);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
            double acc = 0.0;
            for (int a = 0; a < n; ++a) acc += nb.riemann[a][j][m][a];
            nb.ricci_assoc[j][m] = acc;
        }
    nb.scalar_assoc = 0.0;
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) nb.scalar_assoc += nb.ginv[j][m] * nb.ricci_assoc[j][m];

    // S_ij = T^a_ib T^b_ja ; invariant g^{ij} S_ij ;
    // stress = invariant * gsym / 4 - (4/3) S
    nb.torsion_sq = zeros2(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int a = 0; a < n; ++a)
                for (int bb = 0; bb < n; ++bb) acc += T[a][i][bb] * T[bb][j][a];
            nb.torsion_sq[i][j] = acc;
        }
    nb.invariant = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) nb.invariant += nb.ginv[i][j] * nb.torsion_sq[i][j];

    nb.stress = zeros2(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            nb.stress[i][j] =
                0.25 * nb.invariant * nb.gsym[i][j] - (4.0 / 3.0) * nb.torsion_sq[i][j];
    nb.stress_trace = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) nb.stress_trace += nb.ginv[i][j] * nb.stress[i][j];

    // Comoving observer along the first coordinate; eps is the sign of the
    // squared length of u.
    NumericFluid& fl = nb.fluid;
    const double g00 = nb.gsym[0][0];
    if (std::fabs(g00) < 1e-12)
        throw GeometryError("comoving direction has numerically null length");
    fl.eps = g00 < 0.0 ? -1 : 1;
    Vec uup(n, 0.0), udown(n, 0.0);
    uup[0] = 1.0 / std::sqrt(std::fabs(g00));
    for (int i = 0; i < n; ++i) udown[i] = nb.gsym[i][0] * uup[0];

    fl.rho = 0.0;
    for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb) fl.rho += nb.stress[a][bb] * uup[a] * uup[bb];

    NumMat hmix = zeros2(n);  // h^a_i = delta^a_i - eps u^a u_i
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i)
            hmix[a][i] = (a == i ? 1.0 : 0.0) - fl.eps * uup[a] * udown[i];

    fl.q.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb)
                fl.q[i] += nb.stress[a][bb] * uup[a] * hmix[bb][i];

    fl.Pi = zeros2(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a)
                for (int bb = 0; bb < n; ++bb)
                    fl.Pi[i][j] -= nb.stress[a][bb] * hmix[a][i] * hmix[bb][j];

    fl.p = -(nb.stress_trace - fl.eps * fl.rho) / 3.0;
    fl.omega_defined = std::fabs(fl.rho) > 1e-12 * (1.0 + std::fabs(fl.p));
    fl.omega = fl.omega_defined ? fl.p / fl.rho : 0.0;
    return nb;
}

FdReport fd_variation_check(const MetricBundle& b, const Bindings& bind, int alpha,
                            int beta, double step) {
    if (alpha < 0 || alpha >= b.dim || beta < 0 || beta >= b.dim)
        throw GeometryError("perturbation index out of range");
    PointEvaluator pe(b, bind, 1e-5);
    const int n = pe.dim();
    const Vec& x0 = pe.origin();

    ConnPieces c0 = connection_at(pe, x0);
    const NumTen3& TL = c0.torsion_lower;  // covariant torsion, held fixed
    const NumMat a0 = c0.ginv;

    // F(a) = a^{ez} a^{rc} a^{sd} T_{r.ed} T_{s.zc}
    auto F = [&](const NumMat& a) {
        double acc = 0.0;
        for (int e = 0; e < n; ++e)
            for (int z = 0; z < n; ++z)
                for (int r = 0; r < n; ++r)
                    for (int cc = 0; cc < n; ++cc)
                        for (int s = 0; s < n; ++s)
                            for (int d = 0; d < n; ++d)
                                acc += a[e][z] * a[r][cc] * a[s][d] * TL[r][e][d] *
                                       TL[s][z][cc];
        return acc;
    };

    // Symmetric bump of the inverse entries: both (alpha,beta) and
    // (beta,alpha) move together, so a diagonal choice moves by 2h.
    auto bumped = [&](double h) {
        NumMat a = a0;
        a[alpha][beta] += h;
        a[beta][alpha] += h;
        return a;
    };

    FdReport rep;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.step = step;
    rep.fd_value = (F(bumped(step)) - F(bumped(-step))) / (2.0 * step);

    // 6 T^c_{ad} T^d_{bc} with the torsion raised by the unperturbed inverse
    NumTen3 Tup = zeros3(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a) acc += a0[i][a] * TL[a][j][k];
                Tup[i][j][k] = acc;
            }
    double S = 0.0;
    for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d) S += Tup[cc][alpha][d] * Tup[d][beta][cc];
    rep.analytic_value = 6.0 * S;

    const double plus = std::fabs(rep.fd_value - rep.analytic_value);
    const double minus = std::fabs(rep.fd_value + rep.analytic_value);
    rep.global_sign = plus <= minus ? 1 : -1;
    const double gap = rep.global_sign == 1 ? plus : minus;
    const double scale = std::fabs(rep.analytic_value);
    rep.rel_err = gap / (scale > 1e-12 ? scale : 1.0);
    return rep;
}

}  // namespace gtorsion
