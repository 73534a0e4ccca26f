#pragma once

// Torsion-sourced stress-energy, the generalized Einstein-equation
// residual, the model Lagrangian density, and the Madsen fluid
// decomposition (rho, p, q, Pi, omega) along an observer velocity.
//
// Two pipelines coexist deliberately:
//   * the general (derived) pipeline: stress_energy + fluid_decompose,
//     valid for any bundle and velocity;
//   * the comoving closed forms: the printed formulas for the diagonal
//     t-dependent ansatz, kept verbatim so the printed-value audit can
//     compare the two and surface disagreements instead of hiding them.

#include "gtorsion/geometry.hpp"

#include <optional>

namespace gtorsion {

struct Velocity {
    Tensor up;    // rank-1 (Up)
    Tensor down;  // rank-1 (Down), lowered with gsym
    int eps = -1; // u_a u^a, +1 or -1, probed from the metric
};

// u^0 = 1/sqrt(|g_00|), spatial components zero; eps = sign(g_00) probed
// numerically (error if the sign is not consistent across probes).
Velocity comoving_velocity(const MetricBundle& b);

// Normalizes the given contravariant components so |u.u| = 1; errors when
// u.u vanishes at every probe.
Velocity velocity_from_components(const MetricBundle& b, const std::vector<Expr>& comps);

// S_ij = T^a_{ib} T^b_{ja} (symmetric, built from the torsion alone).
Tensor torsion_square(const Connection& c);

// The scalar g^{cd} T^b_{ca} T^a_{db} = g^{cd} S_cd.
Expr torsion_invariant(const MetricBundle& b, const Connection& c);

// T_ij = 1/4 (torsion invariant) g_{(ij)} - 4/3 S_ij.
Tensor stress_energy(const MetricBundle& b, const Connection& c);

// g^{ij} T_ij for any rank-2 (Down,Down) tensor.
Expr stress_trace(const MetricBundle& b, const Tensor& stress);

struct FluidState {
    Expr rho;
    Expr p;
    std::optional<Expr> omega;            // p/rho, absent when rho == 0 at all probes
    std::optional<Rational> omega_exact;  // set when omega folds/probes to a rational
    Tensor q;   // (Down) heat flux
    Tensor Pi;  // (Down,Down) anisotropic stress
    Tensor h;   // (Down,Down) projector g_(ij) - eps u_i u_j
    int eps = -1;
};

// Madsen split of a symmetric stress tensor along u:
//   rho  = T_ab u^a u^b
//   h_ij = g_(ij) - eps u_i u_j
//   q_i  = T_ab u^a h^b_i
//   Pi_ij = -T_ab h^a_i h^b_j
//   p    = 1/3 Pi^a_a = -1/3 (T^a_a - eps rho)
// Reconstruction: T_ij = rho u_i u_j + eps (q_i u_j + q_j u_i) - Pi_ij.
FluidState fluid_decompose(const MetricBundle& b, const Tensor& stress, const Velocity& u);

// The printed comoving closed forms for the diagonal t-dependent ansatz
// (q_0 = rho as printed, even though the general pipeline would give an
// orthogonal q):
//   Sigma = s3 n3'^2 + s2 n4'^2 + s1 n5'^2,  g = s0 s1 s2 s3
//   p     = -(1/18) (21 + 8 s0) Sigma / g
//   rho   = -(1/6) (9 - 16 s0) Sigma / g
//   omega = (1/3) (21 + 8 s0) / (9 - 16 s0)
FluidState comoving_closed_forms(const MetricBundle& b);

// E_ij = R_ij - 1/2 R g_(ij) - kappa T_ij with the torsion-free Ricci of
// the symmetric part and the torsion stress-energy.
Tensor einstein_residual(const MetricBundle& b, const Connection& c, const Expr& kappa);
Tensor einstein_vacuum(const MetricBundle& b, const Connection& c);

// sqrt(|g|) (R / (2 kappa) + 1/4 (torsion invariant)).
Expr lagrangian_density(const MetricBundle& b, const Connection& c, const Expr& kappa);

// Best-effort exact rationalization of a double (continued fractions,
// denominators up to 10^6); nullopt when no close rational exists.
std::optional<Rational> rationalize(double x, double tol = 1e-9);

}  // namespace gtorsion
