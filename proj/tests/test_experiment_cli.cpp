#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "hardy/report.hpp"

using namespace hardy;
using nlohmann::json;

namespace {

GeneratorSpec radial_spec(int count, int dim, double ratio = 0.5) {
    GeneratorSpec s;
    s.family = Family::radial;
    s.count = count;
    s.dim = dim;
    s.ratio = ratio;
    return s;
}

const std::set<std::string> kQuick{"gram", "carleson", "gleason"};

}  // namespace

TEST_CASE("radial generator formula") {
    PointSequence S = generate(radial_spec(5, 1));
    REQUIRE(S.size() == 5);
    const double expected[] = {0.5, 0.75, 0.875, 0.9375, 0.96875};
    for (int k = 0; k < 5; ++k) {
        CHECK(S[k].coord(0).real() == doctest::Approx(expected[k]).epsilon(1e-15));
        CHECK(S[k].coord(0).imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("lattice generator") {
    GeneratorSpec s;
    s.family = Family::lattice;
    s.count = 3;
    s.dim = 2;
    PointSequence S = generate(s);
    CHECK(S.size() == 9);
    CHECK(min_pairwise_gleason(S) > 0.0);
}

TEST_CASE("random separated generator") {
    GeneratorSpec s;
    s.family = Family::random_separated;
    s.count = 10;
    s.dim = 2;
    s.min_distance = 0.3;
    s.seed = 11;
    PointSequence S = generate(s);
    CHECK(S.size() == 10);
    // generator contract, checked post hoc
    CHECK(min_pairwise_gleason(S) >= s.min_distance);

    // determinism in the seed
    PointSequence again = generate(s);
    for (int i = 0; i < S.size(); ++i) {
        CHECK(S[i] == again[i]);
    }
    s.seed = 12;
    PointSequence other = generate(s);
    CHECK(!(other[0] == S[0]));

    // impossible request: explicit budget failure
    GeneratorSpec hard = s;
    hard.count = 100;
    hard.min_distance = 0.99;
    hard.rejection_budget = 20000;
    CHECK_THROWS_AS(static_cast<void>(generate(hard)), GenerationFailure);
}

TEST_CASE("colliding generator") {
    GeneratorSpec s;
    s.family = Family::colliding;
    s.count = 8;
    s.dim = 1;
    PointSequence S = generate(s);
    REQUIRE(S.size() == 8);
    for (int k = 0; k < 4; ++k) {
        const double d = gleason_distance(S[2 * k], S[2 * k + 1]);
        CHECK(d == doctest::Approx(s.first_distance * std::pow(s.shrink, k)).epsilon(1e-12));
    }
    GeneratorSpec odd = s;
    odd.count = 7;
    CHECK_THROWS_AS(static_cast<void>(generate(odd)), std::invalid_argument);
}

TEST_CASE("family names round-trip") {
    for (Family f : {Family::radial, Family::lattice, Family::random_separated,
                     Family::colliding}) {
        CHECK(family_from_string(to_string(f)) == f);
    }
    CHECK_THROWS_AS(static_cast<void>(family_from_string("spiral")), std::invalid_argument);
}

TEST_CASE("sequence json round-trip") {
    GeneratorSpec s;
    s.family = Family::random_separated;
    s.count = 6;
    s.dim = 2;
    s.seed = 5;
    PointSequence S = generate(s);
    json j = point_sequence_to_json(S);
    PointSequence back = point_sequence_from_json(j);
    REQUIRE(back.size() == S.size());
    for (int i = 0; i < S.size(); ++i) {
        CHECK(back[i] == S[i]);
        CHECK(back.label(i) == S.label(i));
    }
}

TEST_CASE("analysis isolation: one failing analysis never perturbs the others") {
    // 0 and 1e-12 are distinct points with a hopeless Gram matrix
    PointSequence S({Point{{Complex(0.0)}}, Point{{Complex(1e-12, 0.0)}}});
    AnalysisOptions opts;
    json out = analyze_sequence(S, {"gram", "carleson", "gleason"}, opts);
    REQUIRE(out.contains("errors"));
    CHECK(out["errors"].contains("gram"));
    CHECK(out["analyses"].contains("carleson"));
    CHECK(out["analyses"].contains("gleason"));
    CHECK(!out["analyses"].contains("gram"));
}

TEST_CASE("report envelope and determinism") {
    AnalysisOptions opts;
    GeneratorSpec s = radial_spec(4, 1);
    json r1 = make_report(s, kQuick, opts);
    json r2 = make_report(s, kQuick, opts);
    CHECK(r1.dump() == r2.dump());  // byte-identical for identical inputs
    CHECK(r1["schema"] == "hardylab.report.v1");
    CHECK(r1["tool_version"] == std::string(tool_version()));
    CHECK(r1["family"] == "radial");
    CHECK(r1["N"] == 4);
    CHECK(r1["separation_check"]["ok"].get<bool>());
    CHECK(r1["config"]["carleson_depth"] == opts.carleson_depth);
}

TEST_CASE("suite streams one report per line and tolerates failures") {
    AnalysisOptions opts;
    std::vector<GeneratorSpec> specs;
    specs.push_back(radial_spec(3, 1));
    GeneratorSpec bad;
    bad.family = Family::random_separated;
    bad.count = 50;
    bad.min_distance = 0.995;
    bad.rejection_budget = 5000;
    specs.push_back(bad);
    specs.push_back(radial_spec(5, 1));

    std::ostringstream os;
    run_suite(specs, kQuick, opts, os);
    std::istringstream is(os.str());
    std::string line;
    std::vector<json> lines;
    while (std::getline(is, line)) lines.push_back(json::parse(line));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0]["N"] == 3);
    CHECK(lines[1].contains("errors"));
    CHECK(lines[1]["errors"].contains("generate"));
    CHECK(lines[2]["N"] == 5);  // the failure did not abort the suite

    // empty spec list: empty stream, success
    std::ostringstream empty;
    run_suite({}, kQuick, opts, empty);
    CHECK(empty.str().empty());
}

TEST_CASE("suite reruns are byte-identical") {
    AnalysisOptions opts;
    std::vector<GeneratorSpec> specs{radial_spec(3, 1), radial_spec(6, 2, 0.3)};
    GeneratorSpec rnd;
    rnd.family = Family::random_separated;
    rnd.count = 5;
    rnd.dim = 2;
    rnd.seed = 21;
    specs.push_back(rnd);

    std::ostringstream a, b;
    run_suite(specs, kQuick, opts, a);
    run_suite(specs, kQuick, opts, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("hardylab.report.v1") != std::string::npos);
}

TEST_CASE("correlation report flags") {
    AnalysisOptions opts;

    SUBCASE("needs two reports") {
        std::vector<json> one{make_report(radial_spec(3, 1), kQuick, opts)};
        CHECK_THROWS_AS(static_cast<void>(correlation_report(one)), std::invalid_argument);
    }

    SUBCASE("identical reports → degenerate scatter") {
        json rep = make_report(radial_spec(4, 1), kQuick, opts);
        json summary = correlation_report({rep, rep});
        CHECK(summary["families"]["radial/n=1"]["trend"] == "degenerate-scatter");
    }

    SUBCASE("colliding diverges while radial stays bounded") {
        std::vector<json> reports;
        for (int count : {2, 6, 10}) {
            GeneratorSpec c;
            c.family = Family::colliding;
            c.count = count;
            c.dim = 1;
            reports.push_back(make_report(c, kQuick, opts));
            reports.push_back(make_report(radial_spec(count, 1, 0.3), kQuick, opts));
        }
        json summary = correlation_report(reports);
        const json& families = summary["families"];
        CHECK(families["colliding/n=1"]["trend"] == "interpolation-degenerate");
        CHECK(families["colliding/n=1"]["interpolation"]["flag"] == "diverging");
        CHECK(families["colliding/n=1"]["rectangular"]["flag"] == "bounded");
        CHECK(families["radial/n=1"]["trend"] == "both-bounded");
    }
}

TEST_CASE("csv flattening") {
    AnalysisOptions opts;
    std::vector<json> reports{make_report(radial_spec(3, 1), kQuick, opts)};
    std::ostringstream os;
    reports_to_csv(reports, os);
    const std::string csv = os.str();
    CHECK(csv.rfind("sequence,family,dim,N,seed,analysis,metric,value\n", 0) == 0);
    CHECK(csv.find("gram,interpolation_constant_h2,") != std::string::npos);
    CHECK(csv.find("carleson,rectangular_constant,") != std::string::npos);
}
