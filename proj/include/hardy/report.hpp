#pragma once

#include <json.hpp>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "hardy/generators.hpp"

namespace hardy {

[[nodiscard]] const char* tool_version();

/// Resolution and cap knobs shared by every analysis; echoed into reports so
/// each number is reproducible from (seed, parameters, version).
struct AnalysisOptions {
    int grid_m = 256;            // quadrature samples per circle
    double quad_tol = 1e-9;      // refinement tolerance for kernel norms
    int carleson_depth = 5;      // dyadic depth of the Carleson scans
    int open_components = 4;     // union budget of the open-set search
    int sign_cap = 14;           // exhaustive sign enumeration cap
    long mc_samples = 20000;     // Monte Carlo budget beyond the cap
    unsigned long long sign_seed = 1;
    std::vector<double> embedding_exponents = {1.0, 2.0, 4.0};
    double probe_radius_cap = 0.995;  // embedding probes: modulus cap (quadrature cost guard)
    double triple_p = 2.0;
    double triple_q = 2.0;
    double triple_s = 1.0;
    std::vector<double> structural_radii = {0.9, 0.99, 0.999};
    int bmo_depth = 5;
    int bmo_grid_m = 256;
    double poisson_exponent = 2.0;
};

[[nodiscard]] const std::set<std::string>& all_analyses();

[[nodiscard]] nlohmann::json point_sequence_to_json(const PointSequence& S);
[[nodiscard]] PointSequence point_sequence_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json generator_spec_to_json(const GeneratorSpec& spec);
[[nodiscard]] nlohmann::json analysis_options_to_json(const AnalysisOptions& opts);

/// Runs the requested analyses on one sequence. A failing analysis lands in
/// result["errors"][name] and never perturbs the others.
[[nodiscard]] nlohmann::json analyze_sequence(const PointSequence& S,
                                              const std::set<std::string>& analyses,
                                              const AnalysisOptions& opts);

/// Full report envelope for one generated sequence.
[[nodiscard]] nlohmann::json make_report(const GeneratorSpec& spec,
                                         const std::set<std::string>& analyses,
                                         const AnalysisOptions& opts);

/// One JSON object per line, in input order.
void run_suite(const std::vector<GeneratorSpec>& specs, const std::set<std::string>& analyses,
               const AnalysisOptions& opts, std::ostream& out);

/// The default desk-scale battery: radial and lattice sweeps, a
/// random-separated family, and the colliding control family.
[[nodiscard]] std::vector<GeneratorSpec> default_battery();

/// Scatter of (interpolation constant, rectangular constant) per family with
/// growth statistics and qualitative trend flags. Requires >= 2 reports.
[[nodiscard]] nlohmann::json correlation_report(const std::vector<nlohmann::json>& reports);

/// Flattened CSV: one row per (sequence, analysis, metric).
void reports_to_csv(const std::vector<nlohmann::json>& reports, std::ostream& out);

}  // namespace hardy
