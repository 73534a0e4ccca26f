#include "gtorsion/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace gtorsion {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw SpecError(path + ": " + why);
}

std::string entry_path(int i, int j) {
    return "entries[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

Expr parse_field(const std::string& src, const std::string& path) {
    try {
        return parse(src);
    } catch (const ExprError& e) {
        fail(path, std::string("does not parse: ") + e.what());
    }
}

}  // namespace

MetricSpec metric_spec_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) fail("$", "spec must be a JSON object");
    MetricSpec spec;

    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        fail("dimension", "required integer");
    spec.dimension = doc["dimension"].get<int>();
    if (spec.dimension < 1) fail("dimension", "must be positive");

    if (!doc.contains("coordinates") || !doc["coordinates"].is_array())
        fail("coordinates", "required array of names");
    for (const auto& c : doc["coordinates"]) {
        if (!c.is_string()) fail("coordinates", "entries must be strings");
        spec.coordinates.push_back(c.get<std::string>());
    }
    if (static_cast<int>(spec.coordinates.size()) != spec.dimension)
        fail("coordinates", "expected exactly " + std::to_string(spec.dimension) +
                                " names");
    std::set<std::string> uniq(spec.coordinates.begin(), spec.coordinates.end());
    if (uniq.size() != spec.coordinates.size()) fail("coordinates", "names must be unique");

    if (!doc.contains("entries") || !doc["entries"].is_array())
        fail("entries", "required N x N array of expression strings");
    if (static_cast<int>(doc["entries"].size()) != spec.dimension)
        fail("entries", "expected " + std::to_string(spec.dimension) + " rows");
    for (int i = 0; i < spec.dimension; ++i) {
        const auto& row = doc["entries"][i];
        if (!row.is_array() || static_cast<int>(row.size()) != spec.dimension)
            fail("entries[" + std::to_string(i) + "]",
                 "expected " + std::to_string(spec.dimension) + " columns");
        std::vector<std::string> out;
        for (int j = 0; j < spec.dimension; ++j) {
            if (!row[j].is_string()) fail(entry_path(i, j), "must be an expression string");
            out.push_back(row[j].get<std::string>());
        }
        spec.entries.push_back(std::move(out));
    }

    if (doc.contains("kappa")) {
        if (!doc["kappa"].is_string()) fail("kappa", "must be an expression string");
        spec.kappa = doc["kappa"].get<std::string>();
    }

    if (doc.contains("frame")) {
        const auto& fr = doc["frame"];
        if (fr.is_string()) {
            if (fr.get<std::string>() != "comoving")
                fail("frame", "string form must be \"comoving\"");
        } else if (fr.is_array()) {
            if (static_cast<int>(fr.size()) != spec.dimension)
                fail("frame", "expected " + std::to_string(spec.dimension) +
                                  " contravariant components");
            spec.comoving = false;
            for (const auto& c : fr) {
                if (!c.is_string()) fail("frame", "components must be expression strings");
                spec.frame_components.push_back(c.get<std::string>());
            }
        } else {
            fail("frame", "must be \"comoving\" or an array of components");
        }
    }
    return spec;
}

MetricSpec parse_metric_spec(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail("$", std::string("invalid JSON: ") + e.what());
    }
    return metric_spec_from_json(doc);
}

MetricSpec load_metric_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_metric_spec(buf.str());
}

Model model_from_spec(const MetricSpec& spec) {
    Tensor m(spec.dimension, Valence{Slot::Down, Slot::Down});
    for (int i = 0; i < spec.dimension; ++i)
        for (int j = 0; j < spec.dimension; ++j)
            m.at({i, j}) = parse_field(spec.entries[i][j], entry_path(i, j));

    Model model{bundle(m, spec.coordinates), parse_field(spec.kappa, "kappa"),
                spec.comoving, {}};
    for (std::size_t i = 0; i < spec.frame_components.size(); ++i)
        model.frame.push_back(parse_field(spec.frame_components[i],
                                          "frame[" + std::to_string(i) + "]"));
    return model;
}

Model resolve_model(const std::string& source) {
    const std::string prefix = "preset:";
    if (source.rfind(prefix, 0) == 0) {
        const std::string id = source.substr(prefix.size());
        if (!is_preset(id)) throw SpecError("unknown preset '" + id + "'");
        return Model{preset_bundle(id), symbol("kappa"), true, {}};
    }
    return model_from_spec(load_metric_spec(source));
}

// ---- serialization ----

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

nlohmann::json tensor_json(const Tensor& t) {
    nlohmann::json doc;
    doc["dim"] = t.dim();
    nlohmann::json valence = nlohmann::json::array();
    for (Slot s : t.valence()) valence.push_back(s == Slot::Up ? "up" : "down");
    doc["valence"] = valence;
    nlohmann::json comps = nlohmann::json::array();
    t.for_each([&](const std::vector<int>& idx) {
        const Expr& v = t.at(idx);
        if (is_zero(v)) return;
        nlohmann::json c;
        c["index"] = idx;
        c["value"] = print(v);
        comps.push_back(c);
    });
    doc["components"] = comps;
    return doc;
}

std::string tensor_text(const Tensor& t) {
    std::ostringstream out;
    bool any = false;
    if (t.rank() == 0) {
        out << print(t.scalar()) << "\n";
        return out.str();
    }
    t.for_each([&](const std::vector<int>& idx) {
        const Expr& v = t.at(idx);
        if (is_zero(v)) return;
        any = true;
        out << "[";
        for (std::size_t k = 0; k < idx.size(); ++k) out << (k ? " " : "") << idx[k];
        out << "] = " << print(v) << "\n";
    });
    if (!any) out << "(all components zero)\n";
    return out.str();
}

nlohmann::json split_json(const MetricBundle& b) {
    nlohmann::json doc;
    doc["gsym"] = tensor_json(b.gsym);
    doc["galt"] = tensor_json(b.galt);
    doc["ginv"] = tensor_json(b.ginv);
    doc["det"] = print(b.det);
    return doc;
}

std::string split_text(const MetricBundle& b) {
    std::ostringstream out;
    out << "symmetric part:\n" << tensor_text(b.gsym);
    out << "anti-symmetric part:\n" << tensor_text(b.galt);
    out << "inverse of symmetric part:\n" << tensor_text(b.ginv);
    out << "determinant = " << print(b.det) << "\n";
    return out.str();
}

nlohmann::json fluid_json(const FluidState& f) {
    nlohmann::json doc;
    doc["rho"] = print(f.rho);
    doc["p"] = print(f.p);
    doc["omega"] = f.omega ? nlohmann::json(print(*f.omega)) : nlohmann::json(nullptr);
    doc["omega_exact"] =
        f.omega_exact ? nlohmann::json(f.omega_exact->str()) : nlohmann::json(nullptr);
    doc["q"] = tensor_json(f.q);
    doc["Pi"] = tensor_json(f.Pi);
    doc["eps"] = f.eps;
    return doc;
}

std::string fluid_text(const FluidState& f) {
    std::ostringstream out;
    out << "rho = " << print(f.rho) << "\n";
    out << "p = " << print(f.p) << "\n";
    if (f.omega) {
        out << "omega = " << print(*f.omega);
        if (f.omega_exact) out << " (exact " << f.omega_exact->str() << ")";
        out << "\n";
    } else {
        out << "omega undefined (rho vanishes)\n";
    }
    out << "eps = " << f.eps << "\n";
    out << "heat flux q:\n" << tensor_text(f.q);
    out << "anisotropic stress Pi:\n" << tensor_text(f.Pi);
    return out.str();
}

nlohmann::json report_json(const CaseReport& r) {
    nlohmann::json doc;
    doc["case"] = r.case_id;
    doc["quantity"] = r.quantity;
    doc["label"] = r.eq_label;
    doc["paper_value"] = r.paper_value;
    doc["derived_value"] = r.derived_value;
    doc["verdict"] = verdict_name(r.verdict);
    doc["max_rel_dev"] = format_double(r.max_rel_dev);
    doc["candidates"] = r.candidates;
    doc["note"] = r.note;
    return doc;
}

std::string report_text(const CaseReport& r) {
    std::ostringstream out;
    out << "[" << verdict_name(r.verdict) << "] " << r.case_id << " " << r.quantity
        << " (" << r.eq_label << ")\n";
    if (r.verdict != AuditVerdict::Match) {
        out << "    printed: " << r.paper_value << "\n";
        out << "    engine:  " << r.derived_value << "\n";
        for (const std::string& c : r.candidates) out << "    candidate " << c << "\n";
        out << "    max relative deviation = " << format_double(r.max_rel_dev) << "\n";
    }
    if (!r.note.empty()) out << "    note: " << r.note << "\n";
    return out.str();
}

nlohmann::json fd_report_json(const FdReport& r) {
    nlohmann::json doc;
    doc["alpha"] = r.alpha;
    doc["beta"] = r.beta;
    doc["step"] = format_double(r.step);
    doc["fd_value"] = format_double(r.fd_value);
    doc["analytic_value"] = format_double(r.analytic_value);
    doc["global_sign"] = r.global_sign;
    doc["rel_err"] = format_double(r.rel_err);
    return doc;
}

std::string fd_report_text(const FdReport& r) {
    std::ostringstream out;
    out << "alpha = " << r.alpha << ", beta = " << r.beta
        << ", step = " << format_double(r.step) << "\n";
    out << "finite difference  = " << format_double(r.fd_value) << "\n";
    out << "analytic 6*T^c_{ad}T^d_{bc} = " << format_double(r.analytic_value) << "\n";
    out << "global sign = " << (r.global_sign > 0 ? "+1" : "-1") << "\n";
    out << "relative error = " << format_double(r.rel_err) << "\n";
    return out.str();
}

}  // namespace gtorsion
