#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <smoothfib/analysis.hpp>

#include "support/fixtures.hpp"

using namespace smoothfib;
using fixtures::pts;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string fixture_text(const std::string& name) { return slurp(std::string(FIXTURE_DIR) + "/" + name + ".json"); }

ErrorKind kind_of(const std::string& text) {
    try {
        parse_input(text);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::CrossCheckFailed;
}

std::string message_of(const std::string& text) {
    try {
        parse_input(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(SMOOTHFIB_CLI) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST(Input, FixtureFilesMatchFixtures) {
    for (const auto& f : fixtures::all()) {
        AnalysisRequest r = parse_input(fixture_text(f.name));
        EXPECT_EQ(r.name, f.name);
        ASSERT_EQ(r.decomposition.k(), f.d.k()) << f.name;
        EXPECT_EQ(r.decomposition.target, f.d.target) << f.name;
        for (std::size_t p = 0; p < f.d.k(); ++p) {
            EXPECT_EQ(r.decomposition.summands[p].rays, f.d.summands[p].rays) << f.name;
            EXPECT_EQ(r.decomposition.summands[p].polytope, f.d.summands[p].polytope) << f.name;
        }
    }
}

TEST(Input, Q5Shape) {
    AnalysisRequest r = parse_input(fixture_text("q5"));
    EXPECT_EQ(r.dimension, 2u);
    EXPECT_EQ(r.decomposition.k(), 2u);
    EXPECT_EQ(r.decomposition.n, 2u);
}

TEST(Input, SchemaErrorsNameTheField) {
    const std::string bad_entry = R"({"name":"x","dimension":2,"summands":[{"vertices":[[0,0],[1,0.5]]}]})";
    EXPECT_EQ(kind_of(bad_entry), ErrorKind::SchemaError);
    EXPECT_NE(message_of(bad_entry).find("/summands/0/vertices/1/1"), std::string::npos);
    EXPECT_EQ(kind_of(R"({"name":"x","dimension":2,"summands":[{"vertices":[[0,0],[1,"1"]]}]})"),
              ErrorKind::SchemaError);
    EXPECT_EQ(kind_of(R"({"name":"x","dimension":2,"summands":[{"vertices":[[0,0],[1]]}]})"), ErrorKind::SchemaError);
    EXPECT_EQ(kind_of(R"({"name":"x","dimension":2})"), ErrorKind::SchemaError);
    EXPECT_EQ(kind_of(R"({"name":"x","dimension":2,"summands":[]})"), ErrorKind::SchemaError);
    EXPECT_EQ(kind_of(R"({"name":"x","dimension":2,"summands":[{"vertices":[[0,0]]}],"extra":1})"),
              ErrorKind::SchemaError);
    EXPECT_EQ(kind_of(R"({"name":1,"dimension":2,"summands":[{"vertices":[[0,0]]}]})"), ErrorKind::SchemaError);
    EXPECT_EQ(kind_of(R"({"name":"x","dimension":2.0,"summands":[{"vertices":[[0,0]]}]})"), ErrorKind::SchemaError);
    EXPECT_EQ(kind_of(R"({"name":"x","dimension":true,"summands":[{"vertices":[[0,0]]}]})"), ErrorKind::SchemaError);
}

TEST(Input, MalformedJsonReportsLine) {
    const std::string text = "{\n  \"name\": \"x\",\n  \"dimension\": 2,\n  oops\n}";
    EXPECT_EQ(kind_of(text), ErrorKind::SchemaError);
    EXPECT_NE(message_of(text).find("line 4"), std::string::npos) << message_of(text);
}

TEST(Input, TargetMismatch) {
    const std::string text =
        R"({"name":"x","dimension":2,"summands":[{"vertices":[[0,0],[1,0],[0,1]]},{"vertices":[[0,0],[1,1]]}],)"
        R"("target":[[0,0],[1,0],[0,1]]})";
    EXPECT_EQ(kind_of(text), ErrorKind::TargetMismatch);
}

TEST(Input, VerticesAreDeduplicatedAndHulled) {
    AnalysisRequest r = parse_input(
        R"({"name":"x","dimension":2,"summands":[{"vertices":[[0,0],[0,1],[0,0],[1,0],[0,1]]},)"
        R"({"vertices":[[0,0],[1,1],[2,2]]}]})");
    EXPECT_EQ(r.summands[0], pts({{0, 0}, {0, 1}, {1, 0}}));
    EXPECT_EQ(r.summands[1], pts({{0, 0}, {2, 2}}));
}

TEST(Input, RoundTripOnFixtures) {
    for (const auto& f : fixtures::all()) {
        AnalysisRequest r = parse_input(fixture_text(f.name));
        AnalysisRequest again = parse_input(serialize(r));
        EXPECT_EQ(again, r) << f.name;
        EXPECT_EQ(serialize(again), serialize(r)) << f.name;
    }
}

TEST(Input, RoundTripOnRandomRequests) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> c(-4, 4);
    std::uniform_int_distribution<int> np(1, 5), ns(1, 3), dim(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
        nlohmann::json j;
        const int n = dim(rng);
        j["name"] = "random " + std::to_string(trial);
        j["dimension"] = n;
        j["summands"] = nlohmann::json::array();
        const int k = ns(rng);
        for (int s = 0; s < k; ++s) {
            nlohmann::json vs = nlohmann::json::array();
            for (int p = np(rng); p > 0; --p) {
                nlohmann::json pt = nlohmann::json::array();
                for (int i = 0; i < n; ++i) pt.push_back(c(rng));
                vs.push_back(pt);
            }
            j["summands"].push_back({{"vertices", vs}});
        }
        AnalysisRequest r = parse_input(j.dump());
        EXPECT_EQ(parse_input(serialize(r)), r);
    }
}

TEST(Options, Ranges) {
    AnalysisOptions o;
    o.hilbert_box = 0;
    EXPECT_THROW(parse_input(fixture_text("q5"), o), Error);
    o.hilbert_box = 3;
    o.circle_tol = 0;
    EXPECT_THROW(parse_input(fixture_text("q5"), o), Error);
}

TEST(Pipeline, Q5Report) {
    AnalysisReport rep = run_pipeline(parse_input(fixture_text("q5")));
    ASSERT_EQ(rep.exit_code, 0) << rep.str();
    const auto& j = rep.json;
    EXPECT_EQ(j["cone"]["sigma_tilde_dual"]["hilbert_basis"].size(), 9u);
    EXPECT_EQ(j["cone"]["sigma_dual"]["hilbert_basis"].size(), 8u);
    EXPECT_EQ(j["smoothing"]["generation"]["ok"], true);
    EXPECT_EQ(j["fibration"]["height_one"]["normalization"][2], nlohmann::json::parse("[1,1,1]"));
    EXPECT_EQ(j["potential"]["critical"]["verdict"], "FiniteFamilies");
    EXPECT_EQ(j["potential"]["critical"]["count"], 2);
    EXPECT_EQ(j["potential"]["mutation_fold_agrees"], true);
    EXPECT_TRUE(j["failures"].empty());
}

TEST(Pipeline, Q6SecondDecomposition) {
    AnalysisReport rep = run_pipeline(parse_input(fixture_text("q6_dec2")));
    ASSERT_EQ(rep.exit_code, 0) << rep.str();
    EXPECT_EQ(rep.json["potential"]["potential"],
              "z3 + z2*z3 + z1*z3 + 2*z1*z2*z3 + z1*z2^2*z3 + z1^2*z2*z3 + z1^2*z2^2*z3");
    EXPECT_EQ(rep.json["potential"]["critical"]["count"], 3);
}

TEST(Pipeline, SingleTriangleIsDegenerateButValid) {
    AnalysisReport rep = run_pipeline(parse_input(fixture_text("triangle")));
    EXPECT_EQ(rep.exit_code, 0) << rep.str();
    EXPECT_EQ(rep.json["fibration"]["cut_order"], nlohmann::json::parse("[1]"));
}

TEST(Pipeline, InadmissibleInput) {
    AnalysisReport rep = run_pipeline(
        parse_input(R"({"name":"bad","dimension":2,"summands":[{"vertices":[[0,0],[2,0]]},{"vertices":[[0,0],[0,1]]}]})"));
    EXPECT_EQ(rep.exit_code, 3);
    EXPECT_EQ(rep.json["polytope"]["admissibility"]["ok"], false);
}

TEST(Pipeline, Deterministic) {
    for (const char* name : {"q5", "q3", "lens_2_1"}) {
        auto a = run_pipeline(parse_input(fixture_text(name))).str();
        auto b = run_pipeline(parse_input(fixture_text(name))).str();
        EXPECT_EQ(a, b) << name;
    }
}

TEST(Svg, Q5RaysAndLabels) {
    AnalysisOptions fast;
    fast.fast = true;
    AnalysisReport rep = run_pipeline(parse_input(fixture_text("q5"), fast));
    std::string svg = emit_svg(rep);
    EXPECT_EQ(count(svg, "class=\"ray\""), 8u);
    for (const char* label : {"(-1,-1,3)", "(1,0,0)", "(0,1,0)", "(1,-1,1)", "(-1,1,1)"})
        EXPECT_NE(svg.find(std::string(">") + label + "<"), std::string::npos) << label;
    EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
    EXPECT_EQ(svg, emit_svg(rep));
}

TEST(Svg, Q3HasFourRays) {
    AnalysisOptions fast;
    fast.fast = true;
    std::string svg = emit_svg(run_pipeline(parse_input(fixture_text("q3"), fast)));
    EXPECT_EQ(count(svg, "class=\"ray\""), 4u);
}

TEST(Svg, OtherDimensionsAreRejected) {
    AnalysisOptions fast;
    fast.fast = true;
    AnalysisReport rep = run_pipeline(parse_input(
        R"({"name":"seg","dimension":1,"summands":[{"vertices":[[0],[1]]},{"vertices":[[0],[1]]}]})", fast));
    try {
        emit_svg(rep);
        FAIL() << "expected UnsupportedDimension";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDimension);
    }
}

TEST(Cli, ExitCodes) {
    const std::string dir = FIXTURE_DIR;
    EXPECT_EQ(run_cli("analyze " + dir + "/q5.json --fast"), 0);
    std::ofstream(temp_path("schema.json")) << R"({"name":"x","dimension":2,"summands":[{"vertices":[[0,0.5]]}]})";
    EXPECT_EQ(run_cli("analyze " + temp_path("schema.json")), 2);
    std::ofstream(temp_path("inadmissible.json"))
        << R"({"name":"x","dimension":2,"summands":[{"vertices":[[1,0],[0,1],[1,1]]}]})";
    EXPECT_EQ(run_cli("analyze " + temp_path("inadmissible.json")), 3);
    EXPECT_EQ(run_cli("hilbert " + temp_path("inadmissible.json")), 3);
    EXPECT_EQ(run_cli("hilbert " + dir + "/q5.json"), 0);
    EXPECT_EQ(run_cli("potential " + dir + "/q5.json --critical"), 0);
    EXPECT_NE(run_cli("frobnicate"), 0);
}

TEST(Cli, ByteIdenticalReportsAndDiagrams) {
    const std::string dir = FIXTURE_DIR;
    const std::string a = temp_path("a.json"), b = temp_path("b.json");
    ASSERT_EQ(run_cli("analyze " + dir + "/q6_dec1.json --out " + a), 0);
    ASSERT_EQ(run_cli("analyze " + dir + "/q6_dec1.json --out " + b), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
    const std::string s1 = temp_path("a.svg"), s2 = temp_path("b.svg");
    ASSERT_EQ(run_cli("diagram " + dir + "/q5.json --svg " + s1), 0);
    ASSERT_EQ(run_cli("diagram " + dir + "/q5.json --svg " + s2), 0);
    EXPECT_EQ(slurp(s1), slurp(s2));
    EXPECT_NE(slurp(s1).find("<svg"), std::string::npos);
}
