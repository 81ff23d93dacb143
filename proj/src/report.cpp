#include "hardy/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hardy/carleson.hpp"
#include "hardy/extension.hpp"

namespace hardy {

using nlohmann::json;

const char* tool_version() { return "0.1.0"; }

const std::set<std::string>& all_analyses() {
    static const std::set<std::string> names{"gleason", "gram",       "carleson",
                                             "embedding", "extension", "signs",
                                             "structural", "bmo"};
    return names;
}

// =====================================================================
// Serialization
// =====================================================================

json point_sequence_to_json(const PointSequence& S) {
    json points = json::array();
    for (int i = 0; i < S.size(); ++i) {
        json coords = json::array();
        for (const Complex& c : S[i].coords()) {
            coords.push_back(json::array({c.real(), c.imag()}));
        }
        points.push_back(json{{"label", S.label(i)}, {"coords", coords}});
    }
    return json{{"schema", "hardylab.sequence.v1"}, {"dim", S.dim()}, {"points", points}};
}

PointSequence point_sequence_from_json(const json& j) {
    std::vector<Point> pts;
    std::vector<std::string> labels;
    for (const json& pj : j.at("points")) {
        std::vector<Complex> coords;
        for (const json& cj : pj.at("coords")) {
            coords.emplace_back(cj.at(0).get<double>(), cj.at(1).get<double>());
        }
        pts.emplace_back(std::move(coords));
        labels.push_back(pj.value("label", "p" + std::to_string(labels.size())));
    }
    return PointSequence(std::move(pts), std::move(labels));
}

json generator_spec_to_json(const GeneratorSpec& spec) {
    json j{{"family", to_string(spec.family)},
           {"count", spec.count},
           {"dim", spec.dim},
           {"seed", spec.seed}};
    switch (spec.family) {
        case Family::radial:
        case Family::lattice:
            j["ratio"] = spec.ratio;
            break;
        case Family::random_separated:
            j["min_distance"] = spec.min_distance;
            j["max_radius"] = spec.max_radius;
            j["rejection_budget"] = spec.rejection_budget;
            break;
        case Family::colliding:
            j["base_radius"] = spec.base_radius;
            j["first_distance"] = spec.first_distance;
            j["shrink"] = spec.shrink;
            break;
    }
    if (!spec.direction.empty()) j["direction"] = spec.direction;
    return j;
}

json analysis_options_to_json(const AnalysisOptions& o) {
    return json{{"grid_m", o.grid_m},
                {"quad_tol", o.quad_tol},
                {"carleson_depth", o.carleson_depth},
                {"open_components", o.open_components},
                {"sign_cap", o.sign_cap},
                {"mc_samples", o.mc_samples},
                {"sign_seed", o.sign_seed},
                {"embedding_exponents", o.embedding_exponents},
                {"probe_radius_cap", o.probe_radius_cap},
                {"triple", json::array({o.triple_p, o.triple_q, o.triple_s})},
                {"structural_radii", o.structural_radii},
                {"bmo_depth", o.bmo_depth},
                {"bmo_grid_m", o.bmo_grid_m},
                {"poisson_exponent", o.poisson_exponent}};
}

namespace {

json rectangle_to_json(const Rectangle& r) {
    json arcs = json::array();
    for (const ArcSpec& a : r.arcs) {
        arcs.push_back(json{{"center", a.center}, {"half_length", a.half_length}, {"full", a.full}});
    }
    return json{{"arcs", arcs}, {"measure", r.measure()}};
}

json dyadic_to_json(const DyadicRect& d) {
    return json{{"depth", d.depth}, {"index", d.index}};
}

std::string exponent_key(double p) {
    std::ostringstream os;
    os << "p=" << p;
    return os.str();
}

}  // namespace

// =====================================================================
// Analyses
// =====================================================================

json analyze_sequence(const PointSequence& S, const std::set<std::string>& analyses,
                      const AnalysisOptions& opts) {
    json out;
    out["N"] = S.size();
    out["n"] = S.dim();
    json results = json::object();
    json errors = json::object();

    auto run = [&](const std::string& name, auto&& fn) {
        if (analyses.find(name) == analyses.end()) return;
        try {
            results[name] = fn();
        } catch (const std::exception& e) {
            errors[name] = e.what();
        }
    };

    run("gleason", [&] {
        return json{{"min_product", min_gleason_product(S)},
                    {"min_pairwise_distance", min_pairwise_gleason(S)}};
    });

    run("gram", [&] {
        GramSystem sys(S);
        return json{{"lambda_min", sys.lambda_min()},
                    {"interpolation_constant_h2", interpolation_constant_h2(sys)},
                    {"dual_bound_h2", dual_bound_h2(sys)}};
    });

    run("carleson", [&] {
        DiscreteMeasure chi = chi_measure(S);
        RectangularBound rect = rectangular_constant(chi, opts.carleson_depth);
        RectangularBound dyadic = rectangular_constant_dyadic(chi, opts.carleson_depth);
        OpenSetBound open = open_set_constant_lower(chi, opts.carleson_depth, opts.open_components);
        json witness = json::array();
        for (const DyadicRect& d : open.witness) witness.push_back(dyadic_to_json(d));
        return json{{"depth", opts.carleson_depth},
                    {"total_mass", chi.total_mass()},
                    {"rectangular_constant", rect.constant},
                    {"rect_witness", rectangle_to_json(rect.witness)},
                    {"rectangular_constant_dyadic", dyadic.constant},
                    {"open_set_lower", open.constant},
                    {"open_witness", witness},
                    {"open_components", opts.open_components}};
    });

    run("embedding", [&] {
        std::vector<Point> probe_pts;
        for (int i = 0; i < S.size(); ++i) {
            bool ok = true;
            for (const Complex& c : S[i].coords()) {
                if (std::abs(c) > opts.probe_radius_cap) ok = false;
            }
            if (ok) probe_pts.push_back(S[i]);
        }
        if (probe_pts.empty()) {
            throw std::runtime_error("embedding: no probe under the modulus cap " +
                                     std::to_string(opts.probe_radius_cap));
        }
        PointSequence probes(std::move(probe_pts));
        json per_p = json::object();
        for (double p : opts.embedding_exponents) {
            per_p[exponent_key(p)] = embedding_lower_bound(S, p, probes, opts.quad_tol);
        }
        return json{{"probes", probes.size()}, {"lower_bounds", per_p}};
    });

    run("extension", [&] {
        HolderTriple triple(opts.triple_p, opts.triple_q, opts.triple_s);
        TargetSequence nu{std::vector<Complex>(static_cast<size_t>(S.size()), Complex(1.0)),
                          triple.s};
        auto duals = as_dual_elements(dual_sequence(S));
        ExtensionResult h =
            build_extension(S, nu, triple, duals, ExtensionOptions{opts.grid_m, true});
        return json{{"triple", json::array({opts.triple_p, opts.triple_q, opts.triple_s})},
                    {"max_residual", h.max_residual()},
                    {"h_norm_s", h.norms().h_norm_s},
                    {"g_norm_p", h.norms().g_norm_p},
                    {"f_norm_q", h.norms().f_norm_q},
                    {"gamma_max", h.norms().gamma_max},
                    {"holder_bound", h.norms().holder_bound},
                    {"grid_m", h.norms().grid_m}};
    });

    run("signs", [&] {
        std::vector<Complex> mu(static_cast<size_t>(S.size()), Complex(1.0));
        auto duals = dual_sequence(S);
        SignOptions sopts;
        sopts.exhaustive_cap = opts.sign_cap;
        sopts.samples = opts.mc_samples;
        sopts.seed = opts.sign_seed;
        BernoulliStats st = bernoulli_expectation(S, mu, duals, sopts);
        json j{{"lhs", st.lhs},
               {"rhs", st.rhs},
               {"exhaustive", st.exhaustive},
               {"samples", st.samples_used},
               {"sum_mu_sq", static_cast<double>(S.size())}};
        try {
            BestSigns bs = best_signs(S, mu, duals,
                                      st.exhaustive ? SignSearchMode::exhaustive
                                                    : SignSearchMode::sampled,
                                      sopts);
            j["best_achieved"] = bs.achieved;
            j["best_signs"] = bs.signs.signs;
        } catch (const SignSearchFailure& e) {
            j["search_failure"] = e.what();
        }
        return j;
    });

    run("structural", [&] {
        HolderTriple triple(opts.triple_p, opts.triple_q, opts.triple_s);
        json curve = json::array();
        for (double r : opts.structural_radii) {
            Point a{std::vector<Complex>(static_cast<size_t>(S.dim()), Complex(r, 0.0))};
            StructuralRatios conv = structural_hypotheses_check(a, triple, NormMode::convention);
            StructuralRatios quad =
                structural_hypotheses_check(a, triple, NormMode::quadrature, opts.quad_tol);
            curve.push_back(json{{"radius", r},
                                 {"convention", json::array({conv.diagonal_ratio, conv.target_ratio})},
                                 {"quadrature", json::array({quad.diagonal_ratio, quad.target_ratio})}});
        }
        return json{{"triple", json::array({opts.triple_p, opts.triple_q, opts.triple_s})},
                    {"curve", curve}};
    });

    run("bmo", [&] {
        DiscreteMeasure chi = chi_measure(S);
        TorusGrid grid(S.dim(), opts.bmo_grid_m);
        BoundarySamples bal = balayage(chi, opts.poisson_exponent, grid, true);
        const double proxy = dyadic_bmo_proxy(bal, opts.bmo_depth);
        const double proxy_next = dyadic_bmo_proxy(bal, opts.bmo_depth + 1);
        const double stab = proxy > 0.0 ? (proxy_next - proxy) / proxy : 0.0;
        return json{{"poisson_exponent", opts.poisson_exponent},
                    {"grid_m", opts.bmo_grid_m},
                    {"depth", opts.bmo_depth},
                    {"proxy", proxy},
                    {"proxy_next", proxy_next},
                    {"stabilization", stab}};
    });

    if (!errors.empty()) out["errors"] = errors;
    out["analyses"] = results;
    return out;
}

json make_report(const GeneratorSpec& spec, const std::set<std::string>& analyses,
                 const AnalysisOptions& opts) {
    json rep;
    rep["schema"] = "hardylab.report.v1";
    rep["tool_version"] = tool_version();
    rep["family"] = to_string(spec.family);
    rep["seed"] = spec.seed;
    rep["generator"] = generator_spec_to_json(spec);
    rep["config"] = analysis_options_to_json(opts);
    try {
        PointSequence S = generate(spec);
        rep["sequence"] = point_sequence_to_json(S);
        const double sep = min_pairwise_gleason(S);
        json check{{"min_pairwise_gleason", sep}};
        if (spec.family == Family::random_separated) {
            check["declared_min"] = spec.min_distance;
            check["ok"] = sep >= spec.min_distance - 1e-12;
        } else {
            check["ok"] = sep > 0.0;
        }
        rep["separation_check"] = check;

        json analyzed = analyze_sequence(S, analyses, opts);
        rep["N"] = analyzed["N"];
        rep["n"] = analyzed["n"];
        rep["analyses"] = analyzed["analyses"];
        if (analyzed.contains("errors")) rep["errors"] = analyzed["errors"];
    } catch (const std::exception& e) {
        rep["errors"] = json{{"generate", e.what()}};
    }
    return rep;
}

void run_suite(const std::vector<GeneratorSpec>& specs, const std::set<std::string>& analyses,
               const AnalysisOptions& opts, std::ostream& out) {
    for (const GeneratorSpec& spec : specs) {
        out << make_report(spec, analyses, opts).dump() << "\n";
    }
}

std::vector<GeneratorSpec> default_battery() {
    std::vector<GeneratorSpec> specs;
    for (int count : {2, 4, 6, 8, 10, 12}) {
        GeneratorSpec radial1;
        radial1.family = Family::radial;
        radial1.count = count;
        radial1.dim = 1;
        radial1.ratio = 0.3;
        radial1.seed = 1;
        specs.push_back(radial1);
    }
    for (int count : {2, 4, 6, 8, 10, 12}) {
        GeneratorSpec radial2;
        radial2.family = Family::radial;
        radial2.count = count;
        radial2.dim = 2;
        radial2.ratio = 0.3;
        radial2.seed = 1;
        specs.push_back(radial2);
    }
    for (int side : {2, 3, 4}) {
        GeneratorSpec lattice;
        lattice.family = Family::lattice;
        lattice.count = side;
        lattice.dim = 2;
        lattice.ratio = 0.3;
        lattice.seed = 1;
        specs.push_back(lattice);
    }
    for (int count : {4, 8, 12}) {
        GeneratorSpec random;
        random.family = Family::random_separated;
        random.count = count;
        random.dim = 2;
        random.min_distance = 0.35;
        random.max_radius = 0.9;
        random.seed = 7;
        specs.push_back(random);
    }
    for (int count : {2, 4, 6, 8, 10, 12}) {
        GeneratorSpec colliding;
        colliding.family = Family::colliding;
        colliding.count = count;
        colliding.dim = 1;
        colliding.seed = 3;
        specs.push_back(colliding);
    }
    return specs;
}

// =====================================================================
// Correlation
// =====================================================================

namespace {

struct TrendPoint {
    int N;
    double interp;
    double rect;
};

/// Growth thresholds for the qualitative flags: a column is "diverging" when
/// its sweep grows by more than kDivergenceGrowth overall AND keeps growing
/// at more than kDivergenceTailFactor per added point at the tail.
constexpr double kDivergenceGrowth = 10.0;
constexpr double kDivergenceTailFactor = 1.4;

double kendall_tau(const std::vector<TrendPoint>& pts, bool interp_column) {
    int concordant = 0, discordant = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            const double dx = pts[j].N - pts[i].N;
            const double dy = interp_column ? pts[j].interp - pts[i].interp
                                            : pts[j].rect - pts[i].rect;
            const double prod = dx * dy;
            if (prod > 0) ++concordant;
            if (prod < 0) ++discordant;
        }
    }
    const int total = concordant + discordant;
    return total == 0 ? 0.0 : static_cast<double>(concordant - discordant) / total;
}

json column_stats(const std::vector<TrendPoint>& pts, bool interp_column) {
    double lo = 1e300, hi = 0.0;
    for (const TrendPoint& p : pts) {
        const double v = interp_column ? p.interp : p.rect;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double tail_factor = 1.0;
    for (size_t i = pts.size(); i-- > 1;) {
        if (pts[i].N != pts[i - 1].N) {
            const double last = interp_column ? pts[i].interp : pts[i].rect;
            const double prev = interp_column ? pts[i - 1].interp : pts[i - 1].rect;
            if (prev > 0.0) {
                tail_factor = std::pow(last / prev, 1.0 / (pts[i].N - pts[i - 1].N));
            }
            break;
        }
    }
    const double growth = lo > 0.0 ? hi / lo : 0.0;
    const bool diverging = growth > kDivergenceGrowth && tail_factor > kDivergenceTailFactor;
    return json{{"min", lo},
                {"max", hi},
                {"growth", growth},
                {"tail_factor_per_point", tail_factor},
                {"kendall_tau_vs_N", kendall_tau(pts, interp_column)},
                {"flag", diverging ? "diverging" : "bounded"}};
}

}  // namespace

json correlation_report(const std::vector<json>& reports) {
    if (reports.size() < 2) {
        throw std::invalid_argument("correlation_report: needs at least 2 reports");
    }
    std::map<std::string, std::vector<TrendPoint>> by_family;
    int skipped = 0;
    for (const json& rep : reports) {
        if (!rep.contains("analyses") || !rep["analyses"].contains("gram") ||
            !rep["analyses"].contains("carleson")) {
            ++skipped;
            continue;
        }
        TrendPoint p;
        p.N = rep.at("N").get<int>();
        p.interp = rep["analyses"]["gram"].at("interpolation_constant_h2").get<double>();
        p.rect = rep["analyses"]["carleson"].at("rectangular_constant").get<double>();
        // one trend line per (family, dimension)
        const std::string key =
            rep.value("family", "unknown") + "/n=" + std::to_string(rep.value("n", 0));
        by_family[key].push_back(p);
    }

    json families = json::object();
    for (auto& [family, pts] : by_family) {
        std::stable_sort(pts.begin(), pts.end(),
                         [](const TrendPoint& a, const TrendPoint& b) { return a.N < b.N; });
        json scatter = json::array();
        bool degenerate = pts.size() >= 2;
        for (const TrendPoint& p : pts) {
            scatter.push_back(json::array({p.N, p.interp, p.rect}));
            if (p.interp != pts.front().interp || p.rect != pts.front().rect) {
                degenerate = false;
            }
        }
        json interp = column_stats(pts, true);
        json rect = column_stats(pts, false);
        std::string trend;
        const bool interp_div = interp["flag"] == "diverging";
        const bool rect_div = rect["flag"] == "diverging";
        if (degenerate) {
            trend = "degenerate-scatter";
        } else if (interp_div && !rect_div) {
            trend = "interpolation-degenerate";
        } else if (!interp_div && rect_div) {
            trend = "carleson-degenerate";
        } else if (interp_div && rect_div) {
            trend = "both-diverging";
        } else {
            trend = "both-bounded";
        }
        families[family] = json{{"points", scatter},
                                {"interpolation", interp},
                                {"rectangular", rect},
                                {"trend", trend}};
    }
    return json{{"schema", "hardylab.correlation.v1"},
                {"tool_version", tool_version()},
                {"reports_used", reports.size() - static_cast<size_t>(skipped)},
                {"reports_skipped", skipped},
                {"families", families}};
}

// =====================================================================
// CSV flattening
// =====================================================================

namespace {

void flatten_numbers(const json& node, const std::string& path,
                     std::vector<std::pair<std::string, double>>& out) {
    if (node.is_number()) {
        out.emplace_back(path, node.get<double>());
    } else if (node.is_boolean()) {
        out.emplace_back(path, node.get<bool>() ? 1.0 : 0.0);
    } else if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            flatten_numbers(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
        }
    } else if (node.is_array()) {
        for (size_t i = 0; i < node.size(); ++i) {
            flatten_numbers(node[i], path + "[" + std::to_string(i) + "]", out);
        }
    }
}

}  // namespace

void reports_to_csv(const std::vector<json>& reports, std::ostream& out) {
    out << "sequence,family,dim,N,seed,analysis,metric,value\n";
    int index = 0;
    for (const json& rep : reports) {
        const std::string family = rep.value("family", "unknown");
        const long long seed = rep.contains("seed") ? rep["seed"].get<long long>() : 0;
        const int N = rep.contains("N") ? rep["N"].get<int>() : 0;
        const int dim = rep.contains("n") ? rep["n"].get<int>() : 0;
        if (rep.contains("analyses")) {
            for (auto it = rep["analyses"].begin(); it != rep["analyses"].end(); ++it) {
                std::vector<std::pair<std::string, double>> rows;
                flatten_numbers(it.value(), "", rows);
                for (const auto& [metric, value] : rows) {
                    out << index << "," << family << "," << dim << "," << N << "," << seed << ","
                        << it.key() << "," << metric << "," << value << "\n";
                }
            }
        }
        ++index;
    }
}

}  // namespace hardy
