#pragma once

// Verification layer for the worked cosmological cases: built-in preset
// metrics, an independent all-numeric pipeline (finite differences, no
// symbolic algebra) used to certify the symbolic one, a finite-difference
// check of the variational identity behind the stress-energy tensor, and
// the printed-value audit that compares every published table entry
// against the engine with conflicts surfaced rather than hidden.

#include "gtorsion/cosmofluid.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gtorsion {

// ---------------------------------------------------------------------
// presets
// ---------------------------------------------------------------------

// Available ids: ansatz_general, friedmann_n3, friedmann_n2, bianchi_I,
// flrw. Coordinates are (t, x, y, z) with t the time coordinate.
const std::vector<std::string>& preset_ids();
bool is_preset(const std::string& id);
MetricBundle preset_bundle(const std::string& id);  // GeometryError on unknown id

// Deterministic bindings that close every opaque function of the bundle
// with a quadratic polynomial in its argument: functions appearing on the
// symmetric diagonal get coefficients that keep them positive over the
// coordinate range, all others stay of moderate size and may change sign;
// the coordinates themselves get values in [0.5, 2.0].
Bindings generic_bindings(const MetricBundle& b, std::uint64_t seed = probe_seed());

// ---------------------------------------------------------------------
// all-numeric oracle
// ---------------------------------------------------------------------

using NumMat = std::vector<std::vector<double>>;
using NumTen3 = std::vector<NumMat>;
using NumTen4 = std::vector<NumTen3>;

struct NumericFluid {
    double rho = 0.0;
    double p = 0.0;
    std::vector<double> q;
    NumMat Pi;
    bool omega_defined = false;
    double omega = 0.0;
    int eps = -1;
};

struct NumericBundle {
    int dim = 0;
    NumMat g, gsym, galt, ginv;
    double det = 0.0;
    NumTen3 gamma_first, gamma, gamma_sym, gamma_alt, torsion, torsion_lower;
    NumTen4 riemann;
    std::array<NumTen4, 6> curvature;
    std::array<NumMat, 6> ricci;
    std::array<double, 6> scalar{};
    NumMat ricci_assoc;          // torsion-free Ricci of the symmetric part
    double scalar_assoc = 0.0;
    NumMat torsion_sq;           // S_ij = T^a_{ib} T^b_{ja}
    double invariant = 0.0;      // g^{cd} S_cd
    NumMat stress;
    double stress_trace = 0.0;
    NumericFluid fluid;          // comoving frame
};

// Recomputes the whole chain with plain doubles: metric point values from
// the bindings' closed forms, every coordinate derivative by a central
// difference of the given step (connection derivatives are nested central
// differences). Throws EvalError on binding gaps and GeometryError when
// the symmetric part is numerically singular.
NumericBundle numeric_oracle(const MetricBundle& b, const Bindings& bind,
                             double step = 1e-5);

// ---------------------------------------------------------------------
// finite-difference variational check
// ---------------------------------------------------------------------

struct FdReport {
    int alpha = 0;
    int beta = 0;
    double step = 0.0;
    double fd_value = 0.0;        // central difference of the torsion scalar
    double analytic_value = 0.0;  // 6 T^c_{ad} T^d_{bc} at the base point
    int global_sign = 1;          // sign making fd ~ sign * analytic
    double rel_err = 0.0;         // |fd - sign*analytic| / max(|analytic|, 1)
};

// F = g^{ez} g^{rc} g^{sd} T_{r.ed} T_{s.zc} as a function of the inverse
// symmetric metric, with the covariant torsion held fixed (it depends only
// on the anti-symmetric part). The perturbation bumps the (alpha,beta) and
// (beta,alpha) inverse entries together, so the diagonal moves by 2h; the
// centered difference is compared against 6 T^c_{ad} T^d_{bc}. The sign
// relating the two is reported, never absorbed.
FdReport fd_variation_check(const MetricBundle& b, const Bindings& bind,
                            int alpha, int beta, double step = 1e-4);

// ---------------------------------------------------------------------
// printed-value audit
// ---------------------------------------------------------------------

enum class AuditVerdict { Match, Mismatch, PaperInternalConflict };

struct CaseReport {
    std::string case_id;
    std::string quantity;   // e.g. "T_00", "Gamma_{0.v12}"
    std::string eq_label;   // source equation label
    std::string paper_value;
    std::string derived_value;
    std::vector<std::string> candidates;  // "label=<expr>" for every reading
    AuditVerdict verdict = AuditVerdict::Match;
    double max_rel_dev = 0.0;  // worst probe deviation for non-matches
    std::string note;
};

const char* verdict_name(AuditVerdict v);

// Case ids accepted by reproduce(); "all" (or "") runs every case.
const std::vector<std::string>& audit_case_ids();

// One report per printed quantity of the case: connection tables, torsion
// products, the curvature identity, stress-energy tables and the comoving
// fluid values. A quantity that disagrees with the engine is a Mismatch
// unless the manifest records it as an internal inconsistency of the
// source text, in which case it is a PaperInternalConflict and every
// candidate value is retained.
std::vector<CaseReport> reproduce(const std::string& case_id);

// The versioned manifest of printed values driving reproduce(), as JSON.
std::string audit_manifest_json();

}  // namespace gtorsion
