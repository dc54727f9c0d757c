#include <doctest.h>

#include <cmath>
#include <random>

#include "ged/errors.hpp"
#include "ged/event_log_io.hpp"
#include "ged/lineage.hpp"
#include "support/scenarios.hpp"

using namespace ged;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

EventLog diamond_log() {
    const auto s = scenario::Builder(3)
                       .group(1, "P", scenario::nodes("n", 0, 10))
                       .group(2, "A", scenario::nodes("n", 0, 5))
                       .group(2, "B", scenario::nodes("n", 5, 5))
                       .group(3, "M", scenario::nodes("n", 0, 10))
                       .build("diamond", {});
    return track_evolution(s.tsn, s.groupings, social_position_provider());
}

}  // namespace

TEST_CASE("lineage of an all-Continuing log is a set of chains") {
    auto b = scenario::Builder(3);
    for (int f = 1; f <= 3; ++f) b.group(f, "x", scenario::nodes("x", 0, 4)).group(f, "y", scenario::nodes("y", 0, 4));
    const auto s = b.build("chains", {});
    const auto graph = build_lineage(track_evolution(s.tsn, s.groupings, social_position_provider()));
    CHECK(graph.vertices.size() == 6);
    CHECK(graph.arcs.size() == 4);
    CHECK(graph.component_count() == 2);
    for (const auto& arc : graph.arcs)
        CHECK(graph.vertices[arc.to].timeframe_index == graph.vertices[arc.from].timeframe_index + 1);
}

TEST_CASE("split followed by merge gives a diamond") {
    const auto log = diamond_log();
    // Oracle: the arc list read straight off the event log.
    std::vector<std::tuple<int, std::string, std::string, EventType>> arcs;
    for (const auto& e : log.events) arcs.emplace_back(e.timeframe_from, *e.group_from, *e.group_to, e.event_type);
    CHECK(arcs == std::vector<std::tuple<int, std::string, std::string, EventType>>{
                      {1, "P", "A", EventType::Splitting},
                      {1, "P", "B", EventType::Splitting},
                      {2, "A", "M", EventType::Merging},
                      {2, "B", "M", EventType::Merging}});

    const auto graph = build_lineage(log);
    REQUIRE(graph.vertices.size() == 4);
    REQUIRE(graph.arcs.size() == 4);
    const auto p = graph.find(1, "P");
    const auto m = graph.find(3, "M");
    CHECK(std::count_if(graph.arcs.begin(), graph.arcs.end(), [p](const auto& a) { return a.from == p; }) == 2);
    CHECK(std::count_if(graph.arcs.begin(), graph.arcs.end(), [m](const auto& a) { return a.to == m; }) == 2);
    CHECK(graph.component_count() == 1);
}

TEST_CASE("single-frame log has vertices only") {
    EventLog log;
    log.instances = {{1, "a", 3}, {1, "b", 4}};
    const auto graph = build_lineage(log);
    CHECK(graph.vertices.size() == 2);
    CHECK(graph.arcs.empty());
    CHECK(graph.find(2, "a") == graph.vertices.size());
}

TEST_CASE("forming and dissolving mark lineage vertices") {
    const auto s = scenario::inactive_then_reappearing();
    const auto graph = build_lineage(track_evolution(s.tsn, s.groupings, social_position_provider()));
    REQUIRE(graph.vertices.size() == 2);
    CHECK(graph.vertices[0].dissolving);
    CHECK(graph.vertices[1].forming);
    const auto dot = to_dot(graph);
    CHECK(count(dot, "->") == 0);
    CHECK(count(dot, "rank=same") == 2);
}

TEST_CASE("DOT export has one ranked subgraph per timeframe and one arc per pairwise event") {
    const auto dot = to_dot(build_lineage(diamond_log()));
    CHECK(dot.rfind("digraph lineage {", 0) == 0);
    CHECK(count(dot, "subgraph tf_") == 3);
    CHECK(count(dot, " -> ") == 4);
    CHECK(count(dot, "label=\"Splitting (Equal)\"") == 2);
    CHECK(count(dot, "label=\"Merging (Equal)\"") == 2);
    CHECK(to_dot(LineageGraph{}) == "digraph lineage {\n  rankdir=LR;\n}\n");
}

TEST_CASE("JSON event log uses the documented keys") {
    const auto text = events_to_json(diamond_log().events);
    for (const char* key : {"timeframe_from", "group_from", "group_to", "event_type", "i_forward", "i_backward",
                            "size_from", "size_to", "matches_forward", "matches_backward", "balance"})
        CHECK(count(text, std::string("\"") + key + "\"") == 4);
    CHECK(events_to_json({}) == "[]\n");
}

TEST_CASE("JSON event log round-trips up to inclusion rounding") {
    std::mt19937_64 rng(3);
    std::vector<EvolutionEvent> events;
    for (int i = 0; i < 200; ++i) {
        EvolutionEvent e;
        e.timeframe_from = 1 + static_cast<int>(rng() % 9);
        e.event_type = static_cast<EventType>(rng() % 7);
        if (e.event_type != EventType::Forming) e.group_from = "g" + std::to_string(rng() % 50);
        if (e.event_type != EventType::Dissolving) e.group_to = "h," + std::to_string(rng() % 50);
        if (e.group_from && e.group_to)
            e.inclusion = InclusionPair{std::ldexp(static_cast<double>(rng() >> 11), -53), 1.0 / (1 + rng() % 7)};
        if (e.event_type == EventType::Splitting || e.event_type == EventType::Merging)
            e.balance = rng() % 2 ? Balance::Equal : Balance::Unequal;
        e.size_from = rng() % 30;
        e.size_to = rng() % 30;
        e.matches_forward = static_cast<int>(rng() % 4);
        e.matches_backward = static_cast<int>(rng() % 4);
        events.push_back(e);
    }
    const auto back = events_from_json(events_to_json(events));
    REQUIRE(back.size() == events.size());
    for (std::size_t k = 0; k < events.size(); ++k) {
        auto expected = events[k];
        if (expected.inclusion)
            expected.inclusion = InclusionPair{round_inclusion(expected.inclusion->forward), round_inclusion(expected.inclusion->backward)};
        CHECK(back[k] == expected);
        if (events[k].inclusion) CHECK(std::abs(back[k].inclusion->forward - events[k].inclusion->forward) < 1e-12);
    }
    CHECK(events_to_json(back) == events_to_json(events));
}

TEST_CASE("malformed event logs are rejected") {
    const auto good = events_to_json(diamond_log().events);
    CHECK_THROWS_AS(events_from_json(good.substr(0, good.size() / 2)), ParseError);
    CHECK_THROWS_AS(events_from_json("{}"), ParseError);
    CHECK_THROWS_AS(events_from_json("[{\"timeframe_from\": 1}]"), ParseError);
    std::string bad_type = good;
    bad_type.replace(bad_type.find("Splitting"), 9, "Exploding");
    CHECK_THROWS_AS(events_from_json(bad_type), ParseError);
    CHECK_THROWS_AS(events_from_json(R"([{"timeframe_from":1,"group_from":null,"group_to":"a","event_type":"Growing",
        "i_forward":null,"i_backward":null,"size_from":1,"size_to":1,"matches_forward":1,"matches_backward":1,
        "balance":null}])"),
                    ParseError);
}

TEST_CASE("CSV mirror has the same columns") {
    const auto csv = events_to_csv(diamond_log().events);
    CHECK(csv.rfind("timeframe_from,group_from,group_to,event_type,i_forward,i_backward,size_from,size_to,"
                    "matches_forward,matches_backward,balance\n",
                    0) == 0);
    CHECK(count(csv, "\n") == 5);
    CHECK(count(csv, ",Merging,") == 2);
    EvolutionEvent dissolve;
    dissolve.timeframe_from = 4;
    dissolve.group_from = "a,b";
    dissolve.event_type = EventType::Dissolving;
    dissolve.size_from = 3;
    CHECK(events_to_csv({dissolve}).find("4,\"a,b\",,Dissolving,,,3,0,0,0,\n") != std::string::npos);
}

TEST_CASE("log_from_events rebuilds instances from endpoints") {
    const auto log = log_from_events(events_from_json(events_to_json(diamond_log().events)));
    CHECK(log.instances.size() == 4);
    CHECK(build_lineage(log).arcs.size() == 4);
}
