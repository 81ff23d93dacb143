// Command-line front end: sequence generation, per-sequence analysis,
// suite sweeps and trend correlation, with JSON/CSV reports.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hardy/report.hpp"

namespace {

using hardy::AnalysisOptions;
using hardy::GeneratorSpec;
using nlohmann::json;

std::set<std::string> parse_analyses(const std::string& csv) {
    if (csv == "all" || csv.empty()) return hardy::all_analyses();
    std::set<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (hardy::all_analyses().find(item) == hardy::all_analyses().end()) {
            throw CLI::ValidationError("--analyses", "unknown analysis: " + item);
        }
        out.insert(item);
    }
    return out;
}

void parse_triple(const std::string& str, AnalysisOptions& opts) {
    if (str.empty()) return;
    double p = 0, q = 0, s = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(str);
    if (!(is >> p >> c1 >> q >> c2 >> s) || c1 != ',' || c2 != ',') {
        throw CLI::ValidationError("--triple", "expected p,q,s");
    }
    opts.triple_p = p;
    opts.triple_q = q;
    opts.triple_s = s;
}

GeneratorSpec parse_spec_string(const std::string& text) {
    GeneratorSpec spec;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError("--spec", "expected key=value, got: " + pair);
        }
        const std::string key = pair.substr(0, eq);
        const std::string value = pair.substr(eq + 1);
        if (key == "family") spec.family = hardy::family_from_string(value);
        else if (key == "count") spec.count = std::stoi(value);
        else if (key == "dim") spec.dim = std::stoi(value);
        else if (key == "seed") spec.seed = std::stoull(value);
        else if (key == "ratio") spec.ratio = std::stod(value);
        else if (key == "min_distance") spec.min_distance = std::stod(value);
        else if (key == "max_radius") spec.max_radius = std::stod(value);
        else if (key == "base_radius") spec.base_radius = std::stod(value);
        else if (key == "first_distance") spec.first_distance = std::stod(value);
        else if (key == "shrink") spec.shrink = std::stod(value);
        else throw CLI::ValidationError("--spec", "unknown key: " + key);
    }
    return spec;
}

/// Writes to the path, or stdout when the path is empty.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output path: " + out_path);
    f << text;
}

std::vector<json> read_jsonl(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input path: " + path);
    std::vector<json> reports;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        reports.push_back(json::parse(line));
    }
    return reports;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hardylab: numerical laboratory for Hardy-space interpolation on the polydisc"};
    app.set_config("--config", "", "key = value file mirroring the flags; flags override it");
    app.fallthrough();  // lets `hardylab <verb> --config file` reach the app option
    app.require_subcommand(1);

    GeneratorSpec spec;
    AnalysisOptions opts;
    std::string family_name = "radial";
    std::string analyses_csv = "all";
    std::string triple_str;
    std::string out_path;
    std::string in_path;
    std::string format = "json";
    bool default_battery = false;
    std::vector<std::string> spec_strings;

    auto add_generator_flags = [&](CLI::App* cmd) {
        cmd->add_option("--family", family_name, "radial|lattice|random-separated|colliding");
        cmd->add_option("--count", spec.count, "points (per axis for lattice)");
        cmd->add_option("--dim", spec.dim, "polydisc dimension (1..3)");
        cmd->add_option("--seed", spec.seed, "generator seed");
        cmd->add_option("--ratio", spec.ratio, "radial/lattice ratio");
        cmd->add_option("--min-dist", spec.min_distance, "random-separated Gleason floor");
        cmd->add_option("--max-radius", spec.max_radius, "random-separated modulus cap");
        cmd->add_option("--base-radius", spec.base_radius, "colliding anchor modulus");
        cmd->add_option("--first-distance", spec.first_distance, "colliding first gap");
        cmd->add_option("--shrink", spec.shrink, "colliding gap shrink factor");
    };
    auto add_analysis_flags = [&](CLI::App* cmd) {
        cmd->add_option("--grid", opts.grid_m, "quadrature samples per circle");
        cmd->add_option("--depth", opts.carleson_depth, "dyadic depth for Carleson scans");
        cmd->add_option("--components", opts.open_components, "open-set union budget");
        cmd->add_option("--sign-cap", opts.sign_cap, "exhaustive sign enumeration cap");
        cmd->add_option("--mc-samples", opts.mc_samples, "Monte Carlo sample budget");
        cmd->add_option("--triple", triple_str, "Hölder triple p,q,s");
        cmd->add_option("--bmo-depth", opts.bmo_depth, "dyadic BMO proxy depth");
        cmd->add_option("--analyses", analyses_csv,
                        "comma list of gleason,gram,carleson,embedding,extension,signs,"
                        "structural,bmo or 'all'");
    };
    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path (stdout when omitted)");
        cmd->add_option("--format", format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* gen = app.add_subcommand("generate", "emit one generated point sequence as JSON");
    add_generator_flags(gen);
    add_output_flags(gen);

    CLI::App* analyze = app.add_subcommand("analyze", "analyze one sequence (generated or from --in)");
    add_generator_flags(analyze);
    add_analysis_flags(analyze);
    add_output_flags(analyze);
    analyze->add_option("--in", in_path, "sequence JSON file (overrides generator flags)");

    CLI::App* suite = app.add_subcommand("suite", "run a sweep of sequences and stream reports");
    add_generator_flags(suite);
    add_analysis_flags(suite);
    add_output_flags(suite);
    suite->add_flag("--default-battery", default_battery, "run the built-in desk-scale battery");
    suite->add_option("--spec", spec_strings,
                      "extra sequence spec 'family=radial,count=8,dim=2,...' (repeatable)");

    CLI::App* correlate = app.add_subcommand("correlate", "summarize trends across suite reports");
    correlate->add_option("--in", in_path, "JSONL report stream from 'suite'")->required();
    add_output_flags(correlate);

    CLI11_PARSE(app, argc, argv);

    try {
        parse_triple(triple_str, opts);
        spec.family = hardy::family_from_string(family_name);
        const std::set<std::string> analyses = parse_analyses(analyses_csv);

        if (gen->parsed()) {
            emit(out_path, hardy::point_sequence_to_json(hardy::generate(spec)).dump(2) + "\n");
        } else if (analyze->parsed()) {
            json rep;
            if (!in_path.empty()) {
                std::ifstream f(in_path);
                if (!f) throw std::runtime_error("cannot open input path: " + in_path);
                json seq_json = json::parse(f);
                hardy::PointSequence S = hardy::point_sequence_from_json(seq_json);
                rep = hardy::analyze_sequence(S, analyses, opts);
                rep["schema"] = "hardylab.report.v1";
                rep["tool_version"] = hardy::tool_version();
                rep["source"] = in_path;
                rep["config"] = hardy::analysis_options_to_json(opts);
            } else {
                rep = hardy::make_report(spec, analyses, opts);
            }
            emit(out_path, rep.dump(2) + "\n");
        } else if (suite->parsed()) {
            std::vector<GeneratorSpec> specs;
            if (default_battery) specs = hardy::default_battery();
            for (const std::string& s : spec_strings) specs.push_back(parse_spec_string(s));
            if (specs.empty()) specs.push_back(spec);

            if (format == "json") {
                std::ostringstream os;
                hardy::run_suite(specs, analyses, opts, os);
                emit(out_path, os.str());
            } else {
                std::vector<json> reports;
                for (const GeneratorSpec& s : specs) {
                    reports.push_back(hardy::make_report(s, analyses, opts));
                }
                std::ostringstream os;
                hardy::reports_to_csv(reports, os);
                emit(out_path, os.str());
            }
        } else if (correlate->parsed()) {
            std::vector<json> reports = read_jsonl(in_path);
            json summary = hardy::correlation_report(reports);
            if (format == "csv") {
                std::ostringstream os;
                os << "family,trend,interp_growth,interp_tail,interp_flag,"
                      "rect_growth,rect_tail,rect_flag\n";
                for (auto it = summary["families"].begin(); it != summary["families"].end(); ++it) {
                    const json& f = it.value();
                    os << it.key() << "," << f["trend"].get<std::string>() << ","
                       << f["interpolation"]["growth"].get<double>() << ","
                       << f["interpolation"]["tail_factor_per_point"].get<double>() << ","
                       << f["interpolation"]["flag"].get<std::string>() << ","
                       << f["rectangular"]["growth"].get<double>() << ","
                       << f["rectangular"]["tail_factor_per_point"].get<double>() << ","
                       << f["rectangular"]["flag"].get<std::string>() << "\n";
                }
                emit(out_path, os.str());
            } else {
                emit(out_path, summary.dump(2) + "\n");
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "hardylab: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
