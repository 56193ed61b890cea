#include "qquiver/io_export.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace qquiver;
using nlohmann::json;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

WeightedQuiver torus_quiver(std::uint32_t p, std::uint32_t q, std::uint64_t n) {
    return build_quiver(enumerate_colorings_linear(TorusLinkSpec{p, q}, n), affine_endomorphisms(n));
}

}  // namespace

TEST_CASE("format names") {
    for (auto f : {ExportFormat::dot, ExportFormat::json, ExportFormat::csv}) {
        CHECK(parse_export_format(to_string(f)) == f);
    }
    CHECK_FALSE(parse_export_format("xml"));
    ExportOptions opts;
    opts.collapse_blocks = true;
    CHECK_THROWS_AS(opts.validate(), std::invalid_argument);
    opts.format = ExportFormat::dot;
    CHECK_NOTHROW(opts.validate());
}

TEST_CASE("DOT for a single complete block") {
    const auto dot = to_dot(realize(complete_form(2, 2)));
    CHECK(dot.rfind("digraph \"quiver\" {\n", 0) == 0);
    CHECK(count_of(dot, "[label=2]") == 4);
    CHECK(dot.find("v1 -> v0 [label=2];") != std::string::npos);
    CHECK(dot.back() == '\n');

    ExportOptions no_loops;
    no_loops.format = ExportFormat::dot;
    no_loops.include_loops = false;
    CHECK(count_of(to_dot(realize(complete_form(2, 2)), no_loops), "->") == 2);
}

TEST_CASE("DOT vertex labels are colorings") {
    const auto dot = to_dot(torus_quiver(5, 1, 3), {}, "T");
    CHECK(dot.find("digraph \"T\"") != std::string::npos);
    CHECK(dot.find("v2 [label=\"(2,2,2,2,2)\"]") != std::string::npos);
    CHECK(count_of(dot, "[label=3]") == 9);
}

TEST_CASE("collapsed DOT") {
    ExportOptions opts;
    opts.format = ExportFormat::dot;
    opts.collapse_blocks = true;

    const auto two = to_dot(torus_quiver(5, 2, 5), opts);
    CHECK(two.find("b0 [label=\"K_5, w=5\"]") != std::string::npos);
    CHECK(two.find("b1 [label=\"K_20, w=1\"]") != std::string::npos);
    CHECK(two.find("b1 -> b0 [label=\"d=1\"]") != std::string::npos);
    CHECK(count_of(two, "->") == 3);

    const auto many = to_dot(torus_quiver(5, 5, 6), opts);
    CHECK(count_of(many, "[label=\"K_6, w=3\"]") == 15);
    CHECK(count_of(many, "[label=\"d=3\"]") == 15);
    opts.include_loops = false;
    CHECK(count_of(to_dot(torus_quiver(5, 5, 6), opts), "->") == 15);
}

TEST_CASE("quiver JSON") {
    CHECK(to_json(QuiverReport{}) == "{\n  \"count\": 0,\n  \"weights\": []\n}\n");

    QuiverReport r;
    r.link = "torus:5,1";
    r.p = 5;
    r.q = 1;
    r.n = 3;
    r.endo_source = "affine";
    r.count = 3;
    r.count_case = CountCase::trivial_only;
    r.quiver = torus_quiver(5, 1, 3);
    r.predicted = complete_form(3, 3).to_string();
    r.verdict = IsoVerdict::isomorphic;

    const auto text = to_json(r);
    const auto j = json::parse(text);
    CHECK(j.at("count") == 3);
    CHECK(j.at("case") == "trivial-only");
    CHECK(j.at("params").at("link") == "torus:5,1");
    CHECK(j.at("weights").size() == 9);
    for (const auto& t : j.at("weights")) {
        CHECK(t.at(2) == 3);
    }
    CHECK(j.at("colorings").at(1) == json::array({1, 1, 1, 1, 1}));
    CHECK(j.at("blocks").at("blocks").size() == 1);
    CHECK(j.at("isomorphic") == "isomorphic");
    CHECK(quiver_report_from_json(text) == r);
    CHECK(to_json(quiver_report_from_json(text)) == text);
}

TEST_CASE("quiver JSON round-trips without labels and with large counts") {
    QuiverReport r;
    r.count = BigInt("123456789012345678901234567890");
    const auto text = to_json(r);
    CHECK(text.find("\"123456789012345678901234567890\"") != std::string::npos);
    CHECK(quiver_report_from_json(text) == r);

    QuiverReport bare;
    bare.count = 4;
    bare.quiver = realize(complete_form(4, 4));
    CHECK(quiver_report_from_json(to_json(bare)) == bare);

    CHECK_THROWS_AS(quiver_report_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(quiver_report_from_json("{\"count\": 1, \"weights\": [[5, 0, 1]]}"), std::invalid_argument);
    CHECK_THROWS_AS(quiver_report_from_json("{\"weights\": []}"), std::invalid_argument);
}

TEST_CASE("sweep JSON and CSV") {
    const auto report = verify_counts(GridSpec{{5}, {1, 2, 5}, {4, 5}});
    const auto text = to_json(report);
    CHECK(sweep_report_from_json(text) == report);
    CHECK(to_json(sweep_report_from_json(text)) == text);
    CHECK(json::parse(text).size() == 6);

    const auto csv = to_csv(report);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "p,q,n,predicted,case,computed,status");
    std::vector<std::string> rows;
    while (std::getline(lines, line)) {
        rows.push_back(line);
    }
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "5,1,4,4,trivial-only,4,match");
    CHECK(rows[3] == "5,2,5,5|25,ambiguous,25,ambiguous-resolved");
    CHECK(rows[4] == "5,5,4,64,half-period,64,match");

    CHECK_THROWS_AS(sweep_report_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(sweep_report_from_json("[{\"p\": 5}]"), std::invalid_argument);
}

TEST_CASE("sweep JSON keeps quiver verdicts") {
    auto report = verify_counts(GridSpec{{3}, {2}, {3, 4}});
    attach_quiver_checks(report);
    const auto back = sweep_report_from_json(to_json(report));
    REQUIRE(back.cells.size() == 2);
    CHECK(back.cells[1].quiver == std::optional<std::string>("isomorphic"));
    CHECK(back == report);
}

TEST_CASE("output is identical across runs and thread counts") {
    const auto colorings = enumerate_colorings_linear(TorusLinkSpec{5, 5}, 6);
    const auto endos = affine_endomorphisms(6);
    QuiverReport a;
    a.quiver = build_quiver(colorings, endos, 1);
    QuiverReport b;
    b.quiver = build_quiver(colorings, endos, 3);
    CHECK(to_json(a) == to_json(b));
    ExportOptions dot;
    dot.format = ExportFormat::dot;
    CHECK(to_dot(a.quiver, dot) == to_dot(b.quiver, dot));
}

TEST_CASE("write_text_file adds the final newline") {
    const std::string path = "qquiver_io_test.txt";
    write_text_file(path, "abc");
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "abc\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.txt", "a"), std::runtime_error);
}
