#pragma once

// Differential geometry of a non-symmetric metric over an N-dimensional
// chart: connection coefficients on the full metric, torsion, the four
// covariant-derivative kinds, Riemann curvature of the symmetric part, the
// five-coefficient curvature family with six named members, Ricci tensors
// and curvature scalars.

#include "gtorsion/tensor.hpp"

#include <string>
#include <vector>

namespace gtorsion {

class GeometryError : public ExprError {
public:
    explicit GeometryError(const std::string& what) : ExprError(what) {}
};

// Requests the engine cannot serve analytically (e.g. symbolic inverses of
// general matrices beyond 4x4). CLI maps these to their own exit code.
class CapabilityError : public GeometryError {
public:
    explicit CapabilityError(const std::string& what) : GeometryError(what) {}
};

struct MetricBundle {
    int dim = 0;
    std::vector<std::string> coords;  // coords[0] is the time coordinate
    Tensor g;     // (Down,Down) full metric, possibly non-symmetric
    Tensor gsym;  // (Down,Down) symmetric part: lengths, inverse, curvature
    Tensor galt;  // (Down,Down) anti-symmetric part: sources torsion
    Tensor ginv;  // (Up,Up) inverse of gsym
    Expr det;     // determinant of gsym
};

// Validates shape, splits the metric, inverts the symmetric part (exact
// adjugate for N <= 4, reciprocal diagonal for larger diagonal metrics) and
// checks non-singularity at probe points.
MetricBundle bundle(const Tensor& metric, const std::vector<std::string>& coords);

// Determinant of a rank-2 (Down,Down) tensor: cofactor expansion for
// N <= 4, diagonal product otherwise (CapabilityError if neither applies).
Expr det_expr(const Tensor& m);

// Inverse of a symmetric rank-2 (Down,Down) tensor as (Up,Up).
Tensor inverse_sym(const Tensor& m);

struct Connection {
    Tensor gamma_first;    // (Down,Down,Down)     G_{i.jk} on the full metric
    Tensor gamma;          // (Up,Down,Down)       G^i_jk, raised with ginv
    Tensor gamma_sym;      // (Up,Down,Down)       symmetric part in the lower pair
    Tensor gamma_alt;      // (Up,Down,Down)       anti-symmetric part
    Tensor torsion;        // (Up,Down,Down)       T^i_jk = G^i_jk - G^i_kj
    Tensor torsion_lower;  // (Down,Down,Down)     T_{i.jk}, totally anti-symmetric
};

// G_{i.jk} = 1/2 (d_k g_{ji} - d_i g_{jk} + d_j g_{ik}) on the full metric;
// the second kind is raised with the inverse of the symmetric part. Also
// cross-checks (by probing) that the symmetric part of the connection
// rebuilds from gsym alone and the anti-symmetric part from galt alone.
Connection christoffel(const MetricBundle& b);

// Covariant derivative with the symmetric connection part, one +Gamma per
// contravariant slot and one -Gamma per covariant slot; the derivative
// index is appended as a final Down slot. Works for any valence.
Tensor cov_deriv(const Tensor& t, const MetricBundle& b, const Connection& c);

// The four covariant-derivative kinds on a (1,1) tensor, using the full
// (torsionful) connection; they differ in which Gamma factors have their
// lower index pair transposed:
//   kind 0:  + G^i_{ak} X^a_j  -  G^a_{jk} X^i_a
//   kind 1:  + G^i_{ka} X^a_j  -  G^a_{kj} X^i_a
//   kind 2:  + G^i_{ak} X^a_j  -  G^a_{kj} X^i_a
//   kind 3:  + G^i_{ka} X^a_j  -  G^a_{jk} X^i_a
// The derivative index is appended as a final Down slot.
Tensor cov_deriv_kind(int kind, const Tensor& t, const MetricBundle& b, const Connection& c);

// R^i_jmn = d_n G^i_{(jm)} - d_m G^i_{(jn)} + G^a_{(jm)} G^i_{(an)} -
// G^a_{(jn)} G^i_{(am)}, built from the symmetric connection part.
Tensor riemann(const MetricBundle& b, const Connection& c);

struct FamilyCoeffs {
    Rational u, u2, v, v2, w;  // u2/v2 are the primed coefficients
};

// Coefficient tuples of the six named members of the curvature family.
FamilyCoeffs kind_coeffs(int kind);

// R~^i_jmn = R^i_jmn + u D_n T^i_jm + u' D_m T^i_jn
//          + v T^a_jm T^i_an + v' T^a_jn T^i_am + w T^a_mn T^i_aj
// with D the symmetric-part covariant derivative.
Tensor curvature_family(const MetricBundle& b, const Connection& c, const FamilyCoeffs& fc);
Tensor curvature_kind(int kind, const MetricBundle& b, const Connection& c);

// Ricci tensors: contraction of the first (upper) slot with the last lower
// slot of the corresponding rank-4 tensor.
Tensor ricci_family(const MetricBundle& b, const Connection& c, const FamilyCoeffs& fc);
Tensor ricci(const MetricBundle& b, const Connection& c, int kind);
Tensor ricci_lc(const MetricBundle& b, const Connection& c);  // torsion-free Ricci

// Curvature scalars: double contraction with the inverse symmetric metric.
Expr scalar_curvature(const MetricBundle& b, const Connection& c, int kind);
Expr scalar_family(const MetricBundle& b, const Connection& c, const FamilyCoeffs& fc);
Expr scalar_lc(const MetricBundle& b, const Connection& c);

// Scalar contraction helper: g^{ij} a_ij for a rank-2 (Down,Down) tensor.
Expr trace_with_inverse(const MetricBundle& b, const Tensor& a);

}  // namespace gtorsion
