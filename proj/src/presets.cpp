#include "gtorsion/paperlab.hpp"

#include <random>

namespace gtorsion {

namespace {

Tensor metric_from_strings(int dim, const std::vector<std::vector<std::string>>& rows) {
    Tensor m(dim, Valence{Slot::Down, Slot::Down});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m.at({i, j}) = parse(rows[i][j]);
    return m;
}

const std::vector<std::string> kCoords = {"t", "x", "y", "z"};

}  // namespace

const std::vector<std::string>& preset_ids() {
    static const std::vector<std::string> ids = {
        "ansatz_general", "friedmann_n3", "friedmann_n2", "bianchi_I", "flrw"};
    return ids;
}

bool is_preset(const std::string& id) {
    for (const std::string& s : preset_ids())
        if (s == id) return true;
    return false;
}

MetricBundle preset_bundle(const std::string& id) {
    // Diagonal symmetric part, anti-symmetric entries functions of t only.
    if (id == "ansatz_general")
        return bundle(metric_from_strings(
                          4, {{"s0(t)", "n0(t)", "n1(t)", "n2(t)"},
                              {"-n0(t)", "s1(t)", "n3(t)", "n4(t)"},
                              {"-n1(t)", "-n3(t)", "s2(t)", "n5(t)"},
                              {"-n2(t)", "-n4(t)", "-n5(t)", "s3(t)"}}),
                      kCoords);
    // Isotropic scale factor with all three spatial anti-symmetric entries
    // equal to one function n(t).
    if (id == "friedmann_n3")
        return bundle(metric_from_strings(4, {{"-1", "0", "0", "0"},
                                              {"0", "s(t)", "n(t)", "n(t)"},
                                              {"0", "-n(t)", "s(t)", "n(t)"},
                                              {"0", "-n(t)", "-n(t)", "s(t)"}}),
                      kCoords);
    // Same scale factor, the (2,3) anti-symmetric entry switched off.
    if (id == "friedmann_n2")
        return bundle(metric_from_strings(4, {{"-1", "0", "0", "0"},
                                              {"0", "s(t)", "n(t)", "n(t)"},
                                              {"0", "-n(t)", "s(t)", "0"},
                                              {"0", "-n(t)", "0", "s(t)"}}),
                      kCoords);
    // Three independent scale factors, one anti-symmetric entry c(t).
    if (id == "bianchi_I")
        return bundle(metric_from_strings(4, {{"-1", "0", "0", "0"},
                                              {"0", "s1(t)", "c(t)", "0"},
                                              {"0", "-c(t)", "s2(t)", "0"},
                                              {"0", "0", "0", "s3(t)"}}),
                      kCoords);
    // Isotropic limit of the previous case.
    if (id == "flrw")
        return bundle(metric_from_strings(4, {{"-1", "0", "0", "0"},
                                              {"0", "s(t)", "c(t)", "0"},
                                              {"0", "-c(t)", "s(t)", "0"},
                                              {"0", "0", "0", "s(t)"}}),
                      kCoords);
    throw GeometryError("unknown preset '" + id + "'");
}

Bindings generic_bindings(const MetricBundle& b, std::uint64_t seed) {
    VarSet vars;
    for (std::size_t f = 0; f < b.g.size(); ++f) vars.merge(collect_vars(b.g.flat(f)));

    // Functions on the symmetric diagonal must stay positive under any
    // coordinate draw; everything else may change sign.
    std::set<std::string> positive;
    for (int i = 0; i < b.dim; ++i) {
        VarSet dv = collect_vars(b.gsym.at({i, i}));
        for (const auto& fo : dv.funcs) positive.insert(fo.first);
    }

    std::set<std::string> names;
    for (const auto& fo : vars.funcs) names.insert(fo.first);

    std::mt19937_64 rng(seed);
    auto draw = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    Bindings out;
    const Expr tau = symbol("tau");
    for (const std::string& name : names) {
        // f(tau) = A + B (tau - 1) + C (tau - 1)^2, exact rational
        // coefficients; |tau - 1| <= 1 over the coordinate range below, so
        // the positive family (A in [1,2], |B|,|C| <= 3/16) never crosses
        // zero while the free family ranges over roughly [-5/2, 5/2].
        Rational A, B, C;
        if (positive.count(name)) {
            A = Rational(draw(16, 32), 16);
            B = Rational(draw(-3, 3), 16);
            C = Rational(draw(-3, 3), 16);
        } else {
            A = Rational(draw(-16, 16), 16);
            B = Rational(draw(-16, 16), 16);
            C = Rational(draw(-8, 8), 16);
        }
        Expr shift = tau - one();
        Expr body = constant(A) + constant(B) * shift + constant(C) * shift * shift;
        out.set_closed(name, "tau", body);
    }

    // Coordinates (and any stray symbols) land in [1/2, 2].
    std::set<std::string> syms(vars.symbols.begin(), vars.symbols.end());
    syms.insert(b.coords.begin(), b.coords.end());
    for (const std::string& s : syms) out.set(s, draw(8, 32) / 16.0);
    return out;
}

}  // namespace gtorsion
