#pragma once

// File-facing layer: metric specification JSON, a resolved model (bundle +
// coupling + observer frame), and the stable serialization used by the
// command-line tool. All JSON output has sorted keys, nonzero components
// only, row-major ("lexicographic index") component order and %.12g float
// formatting, so byte-for-byte golden comparisons are safe.

#include "gtorsion/paperlab.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace gtorsion {

// Malformed input file; the message names the offending field path.
class SpecError : public ExprError {
public:
    explicit SpecError(const std::string& what) : ExprError(what) {}
};

struct MetricSpec {
    int dimension = 0;
    std::vector<std::string> coordinates;            // first one is time
    std::vector<std::vector<std::string>> entries;   // N x N expression strings
    std::string kappa = "kappa";
    bool comoving = true;                            // default observer frame
    std::vector<std::string> frame_components;       // contravariant, when given
};

MetricSpec metric_spec_from_json(const nlohmann::json& doc);
MetricSpec parse_metric_spec(const std::string& text);  // JSON text
MetricSpec load_metric_spec(const std::string& path);

// A spec (or preset) made ready for derivations.
struct Model {
    MetricBundle bundle;
    Expr kappa;
    bool comoving = true;
    std::vector<Expr> frame;  // parsed frame components, empty when comoving
};

Model model_from_spec(const MetricSpec& spec);

// `source` is either a file path or "preset:<id>"; presets use the default
// coupling symbol and the comoving frame.
Model resolve_model(const std::string& source);

// ---- serialization ----

std::string format_double(double v);  // "%.12g"

// {"dim":N,"valence":["up"|"down",...],
//  "components":[{"index":[...],"value":"<expr>"},...]}
nlohmann::json tensor_json(const Tensor& t);
// one line per nonzero component: "[i j k] = <expr>"
std::string tensor_text(const Tensor& t);

nlohmann::json split_json(const MetricBundle& b);
std::string split_text(const MetricBundle& b);

nlohmann::json fluid_json(const FluidState& f);
std::string fluid_text(const FluidState& f);

nlohmann::json report_json(const CaseReport& r);
std::string report_text(const CaseReport& r);

nlohmann::json fd_report_json(const FdReport& r);
std::string fd_report_text(const FdReport& r);

}  // namespace gtorsion
