#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gtorsion/paperlab.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>

using namespace gtorsion;

namespace {

bool close(double a, double b, double tol = 1e-5) {
    return std::fabs(a - b) <= tol * (1.0 + std::fabs(a) + std::fabs(b));
}

// Closed forms pinning one simple configuration by hand: unit spatial scale
// factors and a linearly growing anti-symmetric entry.
Bindings unit_bianchi_bindings() {
    Bindings bind;
    bind.set_closed("s1", "tau", one());
    bind.set_closed("s2", "tau", one());
    bind.set_closed("s3", "tau", one());
    bind.set_closed("c", "tau", symbol("tau"));
    bind.set("t", 1.0).set("x", 0.25).set("y", 0.5).set("z", 0.75);
    return bind;
}

const CaseReport* find_report(const std::vector<CaseReport>& v, const std::string& q) {
    for (const CaseReport& r : v)
        if (r.quantity == q) return &r;
    return nullptr;
}

bool has_candidate(const CaseReport& r, const std::string& prefix) {
    for (const std::string& c : r.candidates)
        if (c.rfind(prefix, 0) == 0) return true;
    return false;
}

}  // namespace

// =====================================================================
// presets
// =====================================================================

TEST_CASE("preset registry exposes the five built-in metrics") {
    REQUIRE(preset_ids().size() == 5);
    for (const std::string& id : preset_ids()) {
        CHECK(is_preset(id));
        MetricBundle b = preset_bundle(id);
        CHECK(b.dim == 4);
        REQUIRE(b.coords.size() == 4);
        CHECK(b.coords[0] == "t");
        CHECK(b.coords[3] == "z");
    }
    CHECK_FALSE(is_preset("nope"));
    CHECK_THROWS_AS(preset_bundle("nope"), GeometryError);
}

TEST_CASE("preset split: symmetric part is diagonal, anti-symmetric part holds the torsion seed") {
    MetricBundle b = preset_bundle("bianchi_I");
    CHECK(struct_eq(b.galt.at({1, 2}), parse("c(t)")));
    CHECK(struct_eq(b.galt.at({2, 1}), parse("-c(t)")));
    CHECK(struct_eq(b.gsym.at({1, 1}), parse("s1(t)")));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(is_zero(b.gsym.at({i, j})));

    MetricBundle f3 = preset_bundle("friedmann_n3");
    CHECK(struct_eq(f3.galt.at({1, 2}), parse("n(t)")));
    CHECK(struct_eq(f3.galt.at({1, 3}), parse("n(t)")));
    CHECK(struct_eq(f3.galt.at({2, 3}), parse("n(t)")));
    CHECK(struct_eq(f3.gsym.at({0, 0}), parse("-1")));

    MetricBundle f2 = preset_bundle("friedmann_n2");
    CHECK(struct_eq(f2.galt.at({1, 2}), parse("n(t)")));
    CHECK(struct_eq(f2.galt.at({1, 3}), parse("n(t)")));
    CHECK(is_zero(f2.galt.at({2, 3})));
}

TEST_CASE("generic bindings close every function, keep the diagonal positive, and are seed-deterministic") {
    MetricBundle b = preset_bundle("ansatz_general");
    Bindings bind = generic_bindings(b, 123);

    // every metric entry must evaluate
    for (std::size_t f = 0; f < b.g.size(); ++f)
        CHECK_NOTHROW(evaluate(b.g.flat(f), bind));
    for (int i = 0; i < 4; ++i) CHECK(evaluate(b.gsym.at({i, i}), bind) > 0.0);

    Bindings again = generic_bindings(b, 123);
    for (std::size_t f = 0; f < b.g.size(); ++f)
        CHECK(evaluate(b.g.flat(f), bind) == evaluate(b.g.flat(f), again));
}

// =====================================================================
// all-numeric oracle vs the symbolic pipeline
// =====================================================================

TEST_CASE("numeric oracle reproduces hand values on the unit configuration") {
    MetricBundle b = preset_bundle("bianchi_I");
    NumericBundle nb = numeric_oracle(b, unit_bianchi_bindings());

    // invariant 6 c'^2/(s1 s2) = 6, stress diag (7/6, -7/6, -7/6, 3/2)
    CHECK(close(nb.invariant, 6.0));
    CHECK(close(nb.torsion_sq[0][0], -2.0));
    CHECK(close(nb.torsion_sq[1][1], 2.0));
    CHECK(close(nb.torsion_sq[2][2], 2.0));
    CHECK(close(nb.torsion_sq[3][3], 0.0));
    CHECK(close(nb.stress[0][0], 7.0 / 6.0));
    CHECK(close(nb.stress[1][1], -7.0 / 6.0));
    CHECK(close(nb.stress[2][2], -7.0 / 6.0));
    CHECK(close(nb.stress[3][3], 3.0 / 2.0));
    CHECK(close(nb.stress_trace, -2.0));
    CHECK(nb.fluid.eps == -1);
    CHECK(close(nb.fluid.rho, 7.0 / 6.0));
    CHECK(close(nb.fluid.p, 5.0 / 18.0));
    REQUIRE(nb.fluid.omega_defined);
    CHECK(close(nb.fluid.omega, 5.0 / 21.0));
    for (int i = 0; i < 4; ++i) CHECK(std::fabs(nb.fluid.q[i]) < 1e-7);
}

TEST_CASE("numeric oracle on a single active anti-symmetric function") {
    MetricBundle b = preset_bundle("ansatz_general");
    Bindings bind;
    bind.set_closed("s0", "tau", neg(one()));
    for (const char* s : {"s1", "s2", "s3"}) bind.set_closed(s, "tau", one());
    for (const char* nn : {"n0", "n1", "n2", "n4", "n5"})
        bind.set_closed(nn, "tau", zero());
    bind.set_closed("n3", "tau", symbol("tau"));
    bind.set("t", 1.0).set("x", 1.0).set("y", 1.0).set("z", 1.0);

    NumericBundle nb = numeric_oracle(b, bind);
    // g = -1, Sigma = s3 n3'^2 = 1: invariant = -6 g^{-1} Sigma = 6
    CHECK(close(nb.invariant, 6.0));
    CHECK(close(nb.torsion_sq[0][0], -2.0));
    CHECK(close(nb.torsion_sq[3][3], 0.0));
    // torsion T^0_{12} = 2 * (-n3'/(2 s0)) = 1
    CHECK(close(nb.torsion[0][1][2], 1.0));
    CHECK(close(nb.torsion[0][2][1], -1.0));
}

TEST_CASE("numeric oracle agrees with the evaluated symbolic chain") {
    MetricBundle b = preset_bundle("bianchi_I");
    Connection c = christoffel(b);
    Bindings bind = generic_bindings(b, 7);
    NumericBundle nb = numeric_oracle(b, bind);

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(close(nb.g[i][j], evaluate(b.g.at({i, j}), bind)));
            CHECK(close(nb.ginv[i][j], evaluate(b.ginv.at({i, j}), bind)));
        }
    CHECK(close(nb.det, evaluate(b.det, bind)));

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                CHECK(close(nb.gamma[i][j][k], evaluate(c.gamma.at({i, j, k}), bind)));
                CHECK(close(nb.torsion[i][j][k], evaluate(c.torsion.at({i, j, k}), bind)));
                CHECK(close(nb.torsion_lower[i][j][k],
                            evaluate(c.torsion_lower.at({i, j, k}), bind)));
            }

    Tensor rie = riemann(b, c);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(close(nb.riemann[i][j][i][j], evaluate(rie.at({i, j, i, j}), bind)));

    CHECK(close(nb.invariant, evaluate(torsion_invariant(b, c), bind)));
    Tensor st = stress_energy(b, c);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(close(nb.stress[i][j], evaluate(st.at({i, j}), bind)));
    CHECK(close(nb.stress_trace, evaluate(stress_trace(b, st), bind)));

    for (int kind = 0; kind < 6; ++kind)
        CHECK(close(nb.scalar[kind], evaluate(scalar_curvature(b, c, kind), bind)));
    CHECK(close(nb.scalar_assoc, evaluate(scalar_lc(b, c), bind)));

    Tensor r3 = ricci(b, c, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(close(nb.ricci[3][i][j], evaluate(r3.at({i, j}), bind)));

    FluidState fs = fluid_decompose(b, st, comoving_velocity(b));
    CHECK(close(nb.fluid.rho, evaluate(fs.rho, bind)));
    CHECK(close(nb.fluid.p, evaluate(fs.p, bind)));
    REQUIRE(nb.fluid.omega_defined);
    REQUIRE(fs.omega.has_value());
    CHECK(close(nb.fluid.omega, evaluate(*fs.omega, bind)));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(close(nb.fluid.Pi[i][j], evaluate(fs.Pi.at({i, j}), bind)));
}

TEST_CASE("numeric oracle rejects unbound coordinates and singular points") {
    MetricBundle b = preset_bundle("bianchi_I");
    Bindings bind = unit_bianchi_bindings();
    Bindings missing = bind;
    // a fresh Bindings without t
    Bindings no_t;
    no_t.set_closed("s1", "tau", one());
    no_t.set_closed("s2", "tau", one());
    no_t.set_closed("s3", "tau", one());
    no_t.set_closed("c", "tau", symbol("tau"));
    no_t.set("x", 0.25).set("y", 0.5).set("z", 0.75);
    CHECK_THROWS_AS(numeric_oracle(b, no_t), EvalError);

    // s1 pinned to zero makes the symmetric part singular
    Bindings sing = bind;
    sing.set_closed("s1", "tau", zero());
    CHECK_THROWS_AS(numeric_oracle(b, sing), GeometryError);
}

// =====================================================================
// finite-difference variational check
// =====================================================================

TEST_CASE("variational identity holds for every index pair with one global sign") {
    MetricBundle b = preset_bundle("ansatz_general");
    Bindings bind = generic_bindings(b, 11);

    int sign = 0;
    for (int a = 0; a < 4; ++a)
        for (int be = 0; be < 4; ++be) {
            FdReport r = fd_variation_check(b, bind, a, be, 1e-4);
            CHECK(r.rel_err <= 1e-3);
            if (std::fabs(r.analytic_value) > 1e-6) {
                if (sign == 0) sign = r.global_sign;
                CHECK(r.global_sign == sign);
            }
        }
    CHECK(sign != 0);
}

TEST_CASE("variational check error shrinks with the step until the rounding floor") {
    // The functional is cubic in the inverse entries, but along any symmetric
    // pair direction the cubic term dies: it would need a totally
    // anti-symmetric torsion component with all indices drawn from {alpha,
    // beta}. The central difference is therefore exact up to rounding, and
    // halving the step can only move the error around the rounding floor.
    MetricBundle b = preset_bundle("ansatz_general");
    Bindings bind = generic_bindings(b, 11);
    FdReport coarse = fd_variation_check(b, bind, 1, 2, 1e-4);
    FdReport fine = fd_variation_check(b, bind, 1, 2, 5e-5);
    REQUIRE(std::fabs(coarse.analytic_value) > 1e-6);
    CHECK(fine.rel_err <= std::max(coarse.rel_err, 1e-8));
    // Far above the floor the exactness is visible directly: even a coarse
    // step keeps the error tiny compared to the O(h^2) a generic integrand
    // would show (1e-2 squared would be 1e-4 relative).
    FdReport wide = fd_variation_check(b, bind, 1, 2, 1e-2);
    CHECK(wide.rel_err <= 1e-6);
}

TEST_CASE("variational check on a single active function hits the zero components") {
    MetricBundle b = preset_bundle("ansatz_general");
    Bindings bind;
    bind.set_closed("s0", "tau", neg(one()));
    for (const char* s : {"s1", "s2", "s3"}) bind.set_closed(s, "tau", one());
    for (const char* nn : {"n0", "n1", "n2", "n4", "n5"})
        bind.set_closed(nn, "tau", zero());
    bind.set_closed("n3", "tau", symbol("tau"));
    bind.set("t", 1.0).set("x", 1.0).set("y", 1.0).set("z", 1.0);

    FdReport diag = fd_variation_check(b, bind, 3, 3, 1e-4);
    CHECK(std::fabs(diag.analytic_value) < 1e-9);
    CHECK(std::fabs(diag.fd_value) < 1e-6);
    CHECK(diag.rel_err < 1e-6);

    FdReport off = fd_variation_check(b, bind, 0, 1, 1e-4);
    CHECK(std::fabs(off.analytic_value) < 1e-9);
    CHECK(std::fabs(off.fd_value) < 1e-6);

    CHECK_THROWS_AS(fd_variation_check(b, bind, 4, 0, 1e-4), GeometryError);
}

// =====================================================================
// printed-value audit
// =====================================================================

TEST_CASE("audit of the general ansatz matches every connection and torsion table") {
    std::vector<CaseReport> reps = reproduce("ansatz_general");
    REQUIRE(!reps.empty());
    int conflicts = 0;
    for (const CaseReport& r : reps) {
        CHECK(r.verdict != AuditVerdict::Mismatch);
        if (r.verdict == AuditVerdict::PaperInternalConflict) ++conflicts;
    }
    // exactly the two kind-5 rows disagree with their own family contraction
    CHECK(conflicts == 2);

    const CaseReport* g = find_report(reps, "Gamma_{0.v12}");
    REQUIRE(g != nullptr);
    CHECK(g->verdict == AuditVerdict::Match);
    const CaseReport* inv = find_report(reps, "g^{ab} TT_ab");
    REQUIRE(inv != nullptr);
    CHECK(inv->verdict == AuditVerdict::Match);
    const CaseReport* gap = find_report(reps, "kind-0 scalar minus torsion-free scalar");
    REQUIRE(gap != nullptr);
    CHECK(gap->verdict == AuditVerdict::Match);
    const CaseReport* k5 = find_report(reps, "kind-5 scalar minus torsion-free scalar");
    REQUIRE(k5 != nullptr);
    CHECK(k5->verdict == AuditVerdict::PaperInternalConflict);
    CHECK(k5->max_rel_dev > 0.0);
}

TEST_CASE("audit of the isotropic three-entry case flags the stress table and keeps omega") {
    std::vector<CaseReport> reps = reproduce("friedmann_n3");

    const CaseReport* t00 = find_report(reps, "T_00");
    REQUIRE(t00 != nullptr);
    CHECK(t00->verdict == AuditVerdict::PaperInternalConflict);
    CHECK(has_candidate(*t00, "closed_form_density="));

    const CaseReport* t01 = find_report(reps, "T_01");
    REQUIRE(t01 != nullptr);
    CHECK(t01->verdict == AuditVerdict::Match);

    const CaseReport* p = find_report(reps, "comoving p");
    REQUIRE(p != nullptr);
    CHECK(p->verdict == AuditVerdict::PaperInternalConflict);
    CHECK(has_candidate(*p, "stress_decomposition="));

    const CaseReport* om = find_report(reps, "comoving omega");
    REQUIRE(om != nullptr);
    CHECK(om->verdict == AuditVerdict::Match);
    CHECK(om->derived_value == "13/75");
}

TEST_CASE("audit of the single-entry cases") {
    std::vector<CaseReport> reps = reproduce("bianchi_I");
    const CaseReport* t00 = find_report(reps, "T_00");
    REQUIRE(t00 != nullptr);
    CHECK(t00->verdict == AuditVerdict::PaperInternalConflict);
    for (const char* q : {"T_11", "T_22", "T_33", "T_12", "comoving p", "comoving rho",
                          "comoving omega"}) {
        const CaseReport* r = find_report(reps, q);
        REQUIRE(r != nullptr);
        CHECK(r->verdict == AuditVerdict::Match);
    }

    std::vector<CaseReport> fl = reproduce("flrw");
    for (const char* q : {"T_11", "T_22", "T_33", "comoving p", "comoving rho",
                          "comoving omega"}) {
        const CaseReport* r = find_report(fl, q);
        REQUIRE(r != nullptr);
        CHECK(r->verdict == AuditVerdict::Match);
    }
    const CaseReport* ft = find_report(fl, "T_00");
    REQUIRE(ft != nullptr);
    CHECK(ft->verdict == AuditVerdict::PaperInternalConflict);
}

TEST_CASE("audit never reports a plain mismatch across all cases") {
    std::vector<CaseReport> reps = reproduce("all");
    CHECK(reps.size() > 100);
    for (const CaseReport& r : reps) {
        CAPTURE(r.case_id);
        CAPTURE(r.quantity);
        CHECK(r.verdict != AuditVerdict::Mismatch);
    }
    CHECK_THROWS_AS(reproduce("unknown_case"), GeometryError);
}

TEST_CASE("audit manifest serializes as versioned JSON") {
    nlohmann::json doc = nlohmann::json::parse(audit_manifest_json());
    CHECK(doc.at("version").get<int>() == 1);
    const auto& entries = doc.at("entries");
    CHECK(entries.size() > 100);
    for (const auto& e : entries) {
        CHECK(e.contains("case"));
        CHECK(e.contains("quantity"));
        CHECK(e.contains("label"));
        CHECK(e.contains("printed"));
        const std::string ex = e.at("expect").get<std::string>();
        CHECK((ex == "match" || ex == "conflict"));
    }
}
