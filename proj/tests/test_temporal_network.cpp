#include <doctest.h>

#include <random>
#include <sstream>

#include "ged/errors.hpp"
#include "ged/temporal_network.hpp"
#include "support/oracles.hpp"

using namespace ged;

namespace {

ParsedEdges parse(const std::string& text, EdgeFormat format = EdgeFormat::Tsv) {
    std::istringstream in(text);
    return parse_edge_stream(in, format);
}

std::vector<TimedEdge> random_edges(std::mt19937_64& rng, int count, Timestamp horizon) {
    std::vector<TimedEdge> edges;
    for (int i = 0; i < count; ++i) {
        const auto u = rng() % 20;
        auto v = rng() % 20;
        if (u == v) v = (v + 1) % 20;
        edges.push_back({"v" + std::to_string(u), "v" + std::to_string(v), static_cast<Timestamp>(rng() % horizon),
                         1.0 + static_cast<double>(rng() % 4)});
    }
    return edges;
}

}  // namespace

TEST_CASE("parse_edge_stream reads a minimal line") {
    const auto parsed = parse("a\tb\t10\n");
    REQUIRE(parsed.edges.size() == 1);
    CHECK(parsed.edges[0] == TimedEdge{"a", "b", 10, 1.0});
    CHECK(parsed.report.total_dropped() == 0);
}

TEST_CASE("parse_edge_stream drops self-loops") {
    const auto parsed = parse("a\ta\t10\n");
    CHECK(parsed.edges.empty());
    CHECK(parsed.report.self_loops_dropped == 1);
}

TEST_CASE("parse_edge_file counts the malformed line of the fixture") {
    const auto parsed = parse_edge_file(GED_TEST_DATA_DIR "/three_lines.tsv");
    REQUIRE(parsed.edges.size() == 2);
    CHECK(parsed.report.malformed == 1);
    CHECK(parsed.edges[1] == TimedEdge{"c", "a", 3, 2.5});
}

TEST_CASE("parse_edge_stream edge cases") {
    SUBCASE("comments, blank lines and CRLF") {
        const auto parsed = parse("# header\n\na\tb\t1\r\n");
        CHECK(parsed.edges.size() == 1);
        CHECK(parsed.report.total_dropped() == 0);
    }
    SUBCASE("non-positive weight is counted separately") {
        const auto parsed = parse("a\tb\t1\t0\na\tb\t1\t-2\n");
        CHECK(parsed.edges.empty());
        CHECK(parsed.report.non_positive_weight == 2);
    }
    SUBCASE("negative timestamp and extra fields are malformed") {
        const auto parsed = parse("a\tb\t-1\na\tb\t1\t1\t1\na\tb\n");
        CHECK(parsed.report.malformed == 3);
    }
    SUBCASE("csv variant") {
        const auto parsed = parse("a,b,4,0.5\nc,d,5\n", EdgeFormat::Csv);
        REQUIRE(parsed.edges.size() == 2);
        CHECK(parsed.edges[0].weight == 0.5);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(parse_edge_file("/nonexistent/edges.tsv"), IoError); }
}

TEST_CASE("slice_timeframes with disjoint windows matches interval enumeration") {
    std::vector<TimedEdge> edges;
    for (Timestamp t = 0; t < 10; ++t) edges.push_back({"u" + std::to_string(t), "w" + std::to_string(t), t, 1.0});
    const auto tsn = slice_timeframes(edges, WindowSpec{5, 0.0, {}});
    REQUIRE(tsn.size() == 2);
    CHECK(tsn.timeframes[0].start == 0);
    CHECK(tsn.timeframes[0].end == 5);
    CHECK(tsn.timeframes[1].start == 5);
    for (const auto& e : edges) {
        const auto hits = oracle::windows_containing(e.timestamp, 0, 5, 5, 2);
        REQUIRE(hits.size() == 1);
        CHECK(tsn.timeframes[hits[0]].edges.count({e.source, e.target}) == 1);
    }
}

TEST_CASE("slice_timeframes puts co-timed edges in one window") {
    const auto tsn = slice_timeframes({{"a", "b", 3, 1.0}, {"b", "c", 3, 1.0}}, WindowSpec{10, 0.0, {}});
    CHECK(tsn.size() == 1);
    CHECK(tsn.timeframes[0].edges.size() == 2);
}

TEST_CASE("slice_timeframes sums parallel edges") {
    const auto tsn = slice_timeframes({{"a", "b", 0, 1.0}, {"a", "b", 2, 2.0}}, WindowSpec{5, 0.0, {}});
    REQUIRE(tsn.size() == 1);
    REQUIRE(tsn.timeframes[0].edges.size() == 1);
    CHECK(tsn.timeframes[0].edges.at({"a", "b"}) == 3.0);
}

TEST_CASE("slice_timeframes errors") {
    CHECK_THROWS_AS(slice_timeframes({}, WindowSpec{5, 0.0, {}}), EmptyInput);
    CHECK_THROWS_AS(slice_timeframes({{"a", "b", 0, 1.0}}, WindowSpec{0, 0.0, {}}), ConfigError);
    CHECK_THROWS_AS(slice_timeframes({{"a", "b", 0, 1.0}}, WindowSpec{5, 1.0, {}}), ConfigError);
}

TEST_CASE("slice_timeframes keeps interior gaps and honours origin") {
    const auto tsn = slice_timeframes({{"a", "b", 2, 1.0}, {"a", "b", 25, 1.0}}, WindowSpec{10, 0.0, 0});
    REQUIRE(tsn.size() == 3);
    CHECK(tsn.timeframes[1].nodes.empty());
    CHECK(tsn.timeframes[2].index == 3);
    CHECK(tsn.find(2) == &tsn.timeframes[1]);
    CHECK(tsn.find(4) == nullptr);
}

TEST_CASE("overlapping windows agree with brute-force membership") {
    std::mt19937_64 rng(7);
    const auto edges = random_edges(rng, 300, 97);
    for (const double overlap : {0.0, 0.25, 0.5, 0.8}) {
        const WindowSpec spec{12, overlap, 0};
        const auto tsn = slice_timeframes(edges, spec);
        const auto stride = spec.stride();
        // Oracle: per-window weighted edge maps built by scanning every window.
        std::vector<std::map<EdgeKey, double>> expected(tsn.size());
        for (const auto& e : edges)
            for (const auto k : oracle::windows_containing(e.timestamp, 0, 12, stride, static_cast<std::int64_t>(tsn.size())))
                expected[k][{e.source, e.target}] += e.weight;
        for (std::size_t k = 0; k < tsn.size(); ++k) CHECK(tsn.timeframes[k].edges == expected[k]);
        CHECK(!tsn.timeframes.back().edges.empty());
    }
}

TEST_CASE("snapshot invariants over random streams") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 20; ++round) {
        const auto edges = random_edges(rng, 200, 50);
        const auto tsn = slice_timeframes(edges, WindowSpec{7, 0.0, {}});
        std::size_t total = 0;
        for (const auto& s : tsn.timeframes) {
            for (const auto& [key, w] : s.edges) {
                CHECK(key.first != key.second);
                CHECK(w > 0.0);
                CHECK(s.nodes.count(key.first) == 1);
                CHECK(s.nodes.count(key.second) == 1);
            }
            for (const auto& [_, w] : s.edges) total += static_cast<std::size_t>(w);
        }
        // Disjoint windows: every edge weight counted exactly once (weights are integers).
        std::size_t input_total = 0;
        for (const auto& e : edges) input_total += static_cast<std::size_t>(e.weight);
        CHECK(total == input_total);
        CHECK(slice_timeframes(edges, WindowSpec{7, 0.0, {}}).timeframes == tsn.timeframes);
    }
}

TEST_CASE("induced_subgraph") {
    Snapshot s;
    s.add_edge("a", "b", 1.0);
    s.add_edge("b", "c", 1.0);
    s.add_edge("c", "a", 1.0);
    s.add_edge("c", "d", 1.0);

    SUBCASE("identity") { CHECK(induced_subgraph(s, s.nodes) == s); }
    SUBCASE("filters edges leaving the member set") {
        const auto sub = induced_subgraph(s, {"a", "b", "c"});
        CHECK(sub.nodes.size() == 3);
        CHECK(sub.edges.size() == 3);
        CHECK(sub.edges.count({"c", "d"}) == 0);
    }
    SUBCASE("members without qualifying edges stay isolated") {
        const auto sub = induced_subgraph(s, {"a", "d", "zz"});
        CHECK(sub.nodes == std::set<NodeId>{"a", "d", "zz"});
        CHECK(sub.edges.empty());
    }
    SUBCASE("idempotent") {
        const std::set<NodeId> members{"b", "c", "d"};
        const auto once = induced_subgraph(s, members);
        CHECK(induced_subgraph(once, members) == once);
    }
    SUBCASE("empty member set") { CHECK_THROWS_AS(induced_subgraph(s, {}), InvalidGroup); }
    SUBCASE("snapshots reject self-loops") { CHECK_THROWS_AS(s.add_edge("a", "a", 1.0), InvalidInput); }
}
