// gtorsion — derive connections, torsion, curvature and cosmological-fluid
// quantities from a (possibly non-symmetric) metric spec, and audit the
// built-in worked cases.
//
// Subcommands:
//   derive <spec> --quantity <q> [--kind 0..5 | --coeffs u,u',v,v',w]
//                 [--format text|json] [--simplify]
//   check-paper [--case <id>] [--json] [--manifest]
//   fd-check <spec> --alpha A --beta B [--step H]
//   eval <spec> --quantity <q> [--bind k=v,...]
//
// <spec> is a JSON file path or "preset:<id>". Exit codes: 0 success,
// 1 usage/spec error, 2 math or capability error, 3 when check-paper finds a
// non-whitelisted mismatch.

#include "gtorsion/cosmofluid.hpp"
#include "gtorsion/expr.hpp"
#include "gtorsion/geometry.hpp"
#include "gtorsion/io.hpp"
#include "gtorsion/paperlab.hpp"
#include "gtorsion/tensor.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace {

using namespace gtorsion;
using nlohmann::json;

// Usage problems detected after CLI11 parsing (bad quantity arguments,
// malformed --bind pairs, out-of-range indices, ...).
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

const std::vector<std::string>& quantity_names() {
    static const std::vector<std::string> names = {
        "split",         "christoffel", "christoffel-first", "torsion",
        "riemann",       "curvature",   "ricci",             "scalar",
        "stress-energy", "trace",       "fluid",             "residual",
        "lagrangian",    "torsion-invariant",
    };
    return names;
}

// What a quantity evaluates to: a whole metric split, a tensor, a scalar
// expression, or a fluid decomposition.
struct SplitResult {};
using QuantityResult = std::variant<SplitResult, Tensor, Expr, FluidState>;

Velocity observer(const Model& m) {
    if (m.comoving) return comoving_velocity(m.bundle);
    return velocity_from_components(m.bundle, m.frame);
}

QuantityResult compute_quantity(const Model& m, const std::string& q, int kind,
                                const std::optional<FamilyCoeffs>& coeffs) {
    const MetricBundle& b = m.bundle;
    if (q == "split") return SplitResult{};
    Connection c = christoffel(b);
    if (q == "christoffel") return c.gamma;
    if (q == "christoffel-first") return c.gamma_first;
    if (q == "torsion") return c.torsion;
    if (q == "riemann") return riemann(b, c);
    if (q == "curvature")
        return coeffs ? curvature_family(b, c, *coeffs) : curvature_kind(kind, b, c);
    if (q == "ricci") return coeffs ? ricci_family(b, c, *coeffs) : ricci(b, c, kind);
    if (q == "scalar")
        return coeffs ? scalar_family(b, c, *coeffs) : scalar_curvature(b, c, kind);
    if (q == "stress-energy") return stress_energy(b, c);
    if (q == "trace") return stress_trace(b, stress_energy(b, c));
    if (q == "fluid") return fluid_decompose(b, stress_energy(b, c), observer(m));
    if (q == "residual") return einstein_residual(b, c, m.kappa);
    if (q == "lagrangian") return lagrangian_density(b, c, m.kappa);
    if (q == "torsion-invariant") return torsion_invariant(b, c);
    throw UsageError("unknown quantity '" + q + "'");
}

FamilyCoeffs parse_coeffs(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 5)
        throw UsageError("--coeffs expects five comma-separated rationals (u,u',v,v',w)");
    Rational vals[5];
    for (int i = 0; i < 5; ++i) {
        Expr e;
        try {
            e = simplify(parse(parts[i]));
        } catch (const ParseError& err) {
            throw UsageError(std::string("--coeffs: ") + err.what());
        }
        if (e->kind != Kind::Constant)
            throw UsageError("--coeffs entry '" + parts[i] + "' is not a rational constant");
        vals[i] = e->value;
    }
    return FamilyCoeffs{vals[0], vals[1], vals[2], vals[3], vals[4]};
}

// --bind syntax: comma-separated name=value. A trailing run of apostrophes on
// the name binds that derivative order of an opaque function ("s'=0.5"); a
// plain name binds both the symbol and the order-0 function value, so "s=2"
// works whether the metric spec uses s or s(t).
Bindings parse_bind(const std::string& text) {
    Bindings out;
    if (text.empty()) return out;
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    for (const std::string& pair : parts) {
        auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--bind entry '" + pair + "' is not name=value");
        std::string name = pair.substr(0, eq);
        std::string val = pair.substr(eq + 1);
        double v = 0.0;
        try {
            std::size_t used = 0;
            v = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
        } catch (const std::exception&) {
            throw UsageError("--bind entry '" + pair + "' has a non-numeric value");
        }
        int order = 0;
        while (!name.empty() && name.back() == '\'') {
            name.pop_back();
            ++order;
        }
        if (name.empty())
            throw UsageError("--bind entry '" + pair + "' has an empty name");
        if (order > 0) {
            out.set_func(name, order, v);
        } else {
            out.set(name, v);
            out.set_func(name, 0, v);
        }
    }
    return out;
}

FluidState simplified_fluid(FluidState f) {
    f.rho = simplify(f.rho);
    f.p = simplify(f.p);
    if (f.omega) f.omega = simplify(*f.omega);
    f.q = simplified(f.q);
    f.Pi = simplified(f.Pi);
    f.h = simplified(f.h);
    return f;
}

int run_derive(const Model& m, const std::string& quantity, int kind,
               const std::optional<FamilyCoeffs>& coeffs, const std::string& format,
               bool do_simplify) {
    QuantityResult r = compute_quantity(m, quantity, kind, coeffs);
    if (do_simplify) {
        if (auto* t = std::get_if<Tensor>(&r)) *t = simplified(*t);
        if (auto* e = std::get_if<Expr>(&r)) *e = simplify(*e);
        if (auto* f = std::get_if<FluidState>(&r)) *f = simplified_fluid(*f);
    }
    const bool as_json = (format == "json");
    if (std::holds_alternative<SplitResult>(r)) {
        if (as_json)
            std::cout << split_json(m.bundle).dump(2) << "\n";
        else
            std::cout << split_text(m.bundle);
    } else if (auto* t = std::get_if<Tensor>(&r)) {
        if (as_json)
            std::cout << tensor_json(*t).dump(2) << "\n";
        else
            std::cout << tensor_text(*t);
    } else if (auto* e = std::get_if<Expr>(&r)) {
        if (as_json) {
            json doc;
            doc["value"] = print(*e);
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << print(*e) << "\n";
        }
    } else if (auto* f = std::get_if<FluidState>(&r)) {
        if (as_json)
            std::cout << fluid_json(*f).dump(2) << "\n";
        else
            std::cout << fluid_text(*f);
    }
    return 0;
}

void print_eval_tensor(const std::string& label, const Tensor& t, const Bindings& bind) {
    t.for_each([&](const std::vector<int>& idx) {
        std::cout << label << "[";
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i) std::cout << " ";
            std::cout << idx[i];
        }
        std::cout << "] = " << format_double(evaluate(t.at(idx), bind)) << "\n";
    });
}

int run_eval(const Model& m, const std::string& quantity, int kind,
             const std::optional<FamilyCoeffs>& coeffs, const Bindings& bind) {
    QuantityResult r = compute_quantity(m, quantity, kind, coeffs);
    if (std::holds_alternative<SplitResult>(r)) {
        print_eval_tensor("gsym", m.bundle.gsym, bind);
        print_eval_tensor("galt", m.bundle.galt, bind);
        print_eval_tensor("ginv", m.bundle.ginv, bind);
        std::cout << "det = " << format_double(evaluate(m.bundle.det, bind)) << "\n";
    } else if (auto* t = std::get_if<Tensor>(&r)) {
        print_eval_tensor("", *t, bind);
    } else if (auto* e = std::get_if<Expr>(&r)) {
        std::cout << format_double(evaluate(*e, bind)) << "\n";
    } else if (auto* f = std::get_if<FluidState>(&r)) {
        std::cout << "rho = " << format_double(evaluate(f->rho, bind)) << "\n";
        std::cout << "p = " << format_double(evaluate(f->p, bind)) << "\n";
        if (f->omega)
            std::cout << "omega = " << format_double(evaluate(*f->omega, bind)) << "\n";
        else
            std::cout << "omega undefined (rho vanishes)\n";
        std::cout << "eps = " << f->eps << "\n";
        print_eval_tensor("q", f->q, bind);
        print_eval_tensor("Pi", f->Pi, bind);
    }
    return 0;
}

int run_check_paper(const std::string& case_id, bool as_json, bool manifest) {
    if (manifest) {
        std::cout << audit_manifest_json() << "\n";
        return 0;
    }
    if (!case_id.empty() && case_id != "all") {
        const auto& ids = audit_case_ids();
        if (std::find(ids.begin(), ids.end(), case_id) == ids.end()) {
            std::string known;
            for (const auto& id : ids) known += (known.empty() ? "" : ", ") + id;
            throw UsageError("unknown case '" + case_id + "' (known: " + known + ")");
        }
    }
    std::vector<CaseReport> reports = reproduce(case_id.empty() ? "all" : case_id);
    int matches = 0, conflicts = 0, mismatches = 0;
    for (const CaseReport& r : reports) {
        switch (r.verdict) {
            case AuditVerdict::Match: ++matches; break;
            case AuditVerdict::PaperInternalConflict: ++conflicts; break;
            case AuditVerdict::Mismatch: ++mismatches; break;
        }
    }
    if (as_json) {
        json arr = json::array();
        for (const CaseReport& r : reports) arr.push_back(report_json(r));
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const CaseReport& r : reports) std::cout << report_text(r);
        std::cout << reports.size() << " checks: " << matches << " match, " << conflicts
                  << " paper_internal_conflict, " << mismatches << " mismatch\n";
    }
    return mismatches > 0 ? 3 : 0;
}

int run_fd_check(const Model& m, int alpha, int beta, double step) {
    const int dim = m.bundle.dim;
    if (alpha < 0 || alpha >= dim || beta < 0 || beta >= dim)
        throw UsageError("--alpha/--beta must lie in [0, " + std::to_string(dim - 1) + "]");
    if (step <= 0.0) throw UsageError("--step must be positive");
    Bindings bind = generic_bindings(m.bundle);
    FdReport r = fd_variation_check(m.bundle, bind, alpha, beta, step);
    std::cout << fd_report_text(r);
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{
        "Tensor calculus for non-symmetric metrics: connections, torsion,\n"
        "curvature, stress-energy, cosmological fluids, and a built-in audit\n"
        "of the worked cases. Metric specs are JSON files or preset:<id>."};
    app.require_subcommand(1);

    std::string known_presets;
    for (const auto& id : preset_ids())
        known_presets += (known_presets.empty() ? "" : ", ") + id;

    // ---- derive ----
    std::string d_spec, d_quantity, d_format = "text", d_coeffs;
    int d_kind = 0;
    bool d_simplify = false;
    CLI::App* derive = app.add_subcommand("derive", "Derive a symbolic quantity from a metric spec");
    derive->add_option("spec", d_spec, "Metric spec file or preset:<id> (" + known_presets + ")")
        ->required();
    derive->add_option("--quantity", d_quantity, "What to derive")
        ->required()
        ->check(CLI::IsMember(quantity_names()));
    CLI::Option* d_kind_opt =
        derive->add_option("--kind", d_kind, "Curvature family member for curvature/ricci/scalar")
            ->check(CLI::Range(0, 5));
    CLI::Option* d_coeffs_opt =
        derive->add_option("--coeffs", d_coeffs, "Custom family coefficients u,u',v,v',w");
    d_kind_opt->excludes(d_coeffs_opt);
    derive->add_option("--format", d_format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    derive->add_flag("--simplify", d_simplify, "Run an extra simplify pass on the output");

    // ---- check-paper ----
    std::string c_case;
    bool c_json = false, c_manifest = false;
    CLI::App* check = app.add_subcommand("check-paper", "Re-derive the worked cases and audit the printed values");
    check->add_option("--case", c_case, "Restrict to one case id");
    check->add_flag("--json", c_json, "Emit the reports as a JSON array");
    check->add_flag("--manifest", c_manifest, "Print the printed-value manifest and exit");

    // ---- fd-check ----
    std::string f_spec;
    int f_alpha = 0, f_beta = 0;
    double f_step = 1e-4;
    CLI::App* fd = app.add_subcommand("fd-check", "Finite-difference check of the torsion-square variation");
    fd->add_option("spec", f_spec, "Metric spec file or preset:<id>")->required();
    fd->add_option("--alpha", f_alpha, "First index of the varied inverse-metric entry")->required();
    fd->add_option("--beta", f_beta, "Second index of the varied inverse-metric entry")->required();
    fd->add_option("--step", f_step, "Central-difference step");

    // ---- eval ----
    std::string e_spec, e_quantity, e_bind, e_coeffs;
    int e_kind = 0;
    CLI::App* ev = app.add_subcommand("eval", "Derive a quantity and evaluate it numerically");
    ev->add_option("spec", e_spec, "Metric spec file or preset:<id>")->required();
    ev->add_option("--quantity", e_quantity, "What to evaluate")
        ->required()
        ->check(CLI::IsMember(quantity_names()));
    ev->add_option("--bind", e_bind, "Bindings name=value,... (trailing ' marks derivative order)");
    CLI::Option* e_kind_opt =
        ev->add_option("--kind", e_kind, "Curvature family member for curvature/ricci/scalar")
            ->check(CLI::Range(0, 5));
    CLI::Option* e_coeffs_opt =
        ev->add_option("--coeffs", e_coeffs, "Custom family coefficients u,u',v,v',w");
    e_kind_opt->excludes(e_coeffs_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the error message
        return 1;
    }

    try {
        if (*derive) {
            std::optional<FamilyCoeffs> coeffs;
            if (*d_coeffs_opt) coeffs = parse_coeffs(d_coeffs);
            return run_derive(resolve_model(d_spec), d_quantity, d_kind, coeffs, d_format,
                              d_simplify);
        }
        if (*check) return run_check_paper(c_case, c_json, c_manifest);
        if (*fd) return run_fd_check(resolve_model(f_spec), f_alpha, f_beta, f_step);
        if (*ev) {
            std::optional<FamilyCoeffs> coeffs;
            if (*e_coeffs_opt) coeffs = parse_coeffs(e_coeffs);
            return run_eval(resolve_model(e_spec), e_quantity, e_kind, coeffs,
                            parse_bind(e_bind));
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 1;
    } catch (const ExprError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
