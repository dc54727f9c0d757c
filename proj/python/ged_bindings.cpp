#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ged/errors.hpp"
#include "ged/event_log_io.hpp"
#include "ged/evolution.hpp"
#include "ged/grouping.hpp"
#include "ged/importance.hpp"
#include "ged/lineage.hpp"
#include "ged/temporal_network.hpp"

namespace py = pybind11;
using namespace ged;

namespace {

EdgeFormat edge_format(const std::string& name) {
    if (name == "tsv") return EdgeFormat::Tsv;
    if (name == "csv") return EdgeFormat::Csv;
    throw ConfigError("edge format must be 'tsv' or 'csv'");
}

ImportanceProvider make_provider(const py::object& importance, const SPConfig& sp) {
    if (py::isinstance<py::str>(importance)) {
        const auto name = importance.cast<std::string>();
        if (name == "sp") return social_position_provider(sp);
        if (name == "degree") return degree_provider();
        throw ConfigError("importance must be 'sp', 'degree' or a callable");
    }
    // callable(members: set[str], edges: dict[(str, str), float]) -> dict[str, float]
    auto fn = importance.cast<py::function>();
    return [fn](const Snapshot& sub, const Group& g) {
        py::gil_scoped_acquire gil;
        ImportanceScores scores;
        scores.timeframe_index = g.timeframe_index();
        scores.group_id = g.id();
        scores.values = fn(sub.nodes, sub.edges).cast<std::map<NodeId, double>>();
        return scores;
    };
}

}  // namespace

PYBIND11_MODULE(_ged, m) {
    m.doc() = "Group evolution discovery over temporal social networks";

    auto base = py::register_exception<Error>(m, "GedError");
    py::register_exception<IoError>(m, "IoError", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<ConfigError>(m, "ConfigError", base);
    py::register_exception<EmptyInput>(m, "EmptyInput", base);
    py::register_exception<InvalidInput>(m, "InvalidInput", base);
    py::register_exception<InvalidGroup>(m, "InvalidGroup", base);
    py::register_exception<InvalidEvent>(m, "InvalidEvent", base);
    py::register_exception<MissingScore>(m, "MissingScore", base);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base);
    py::register_exception<AlignmentError>(m, "AlignmentError", base);

    py::class_<TimedEdge>(m, "TimedEdge")
        .def(py::init<NodeId, NodeId, Timestamp, double>(), py::arg("source"), py::arg("target"), py::arg("timestamp"),
             py::arg("weight") = 1.0)
        .def_readwrite("source", &TimedEdge::source)
        .def_readwrite("target", &TimedEdge::target)
        .def_readwrite("timestamp", &TimedEdge::timestamp)
        .def_readwrite("weight", &TimedEdge::weight)
        .def("__eq__", [](const TimedEdge& a, const TimedEdge& b) { return a == b; })
        .def("__repr__", [](const TimedEdge& e) {
            return "TimedEdge(" + e.source + ", " + e.target + ", " + std::to_string(e.timestamp) + ", " +
                   std::to_string(e.weight) + ")";
        });

    py::class_<ParseReport>(m, "ParseReport")
        .def_readonly("self_loops_dropped", &ParseReport::self_loops_dropped)
        .def_readonly("malformed", &ParseReport::malformed)
        .def_readonly("non_positive_weight", &ParseReport::non_positive_weight);

    m.def(
        "parse_edges",
        [](const std::string& text, const std::string& format) {
            std::istringstream in(text);
            auto parsed = parse_edge_stream(in, edge_format(format));
            return py::make_tuple(parsed.edges, parsed.report);
        },
        py::arg("text"), py::arg("format") = "tsv", "Parse edge-list text; returns (edges, report).");
    m.def(
        "parse_edge_file",
        [](const std::string& path, const std::string& format) {
            auto parsed = parse_edge_file(path, edge_format(format));
            return py::make_tuple(parsed.edges, parsed.report);
        },
        py::arg("path"), py::arg("format") = "tsv");

    py::class_<Snapshot>(m, "Snapshot")
        .def(py::init<>())
        .def_readwrite("index", &Snapshot::index)
        .def_readonly("start", &Snapshot::start)
        .def_readonly("end", &Snapshot::end)
        .def_readonly("nodes", &Snapshot::nodes)
        .def_readonly("edges", &Snapshot::edges)
        .def("add_edge", &Snapshot::add_edge)
        .def("__eq__", [](const Snapshot& a, const Snapshot& b) { return a == b; });

    py::class_<TemporalSocialNetwork>(m, "TemporalSocialNetwork")
        .def_readonly("timeframes", &TemporalSocialNetwork::timeframes)
        .def("__len__", &TemporalSocialNetwork::size);

    m.def(
        "slice_timeframes",
        [](const std::vector<TimedEdge>& edges, Timestamp window_length, double overlap, std::optional<Timestamp> origin) {
            return slice_timeframes(edges, WindowSpec{window_length, overlap, origin});
        },
        py::arg("edges"), py::arg("window_length"), py::arg("overlap") = 0.0, py::arg("origin") = py::none());
    m.def("induced_subgraph", &induced_subgraph, py::arg("snapshot"), py::arg("members"));

    py::class_<Group>(m, "Group")
        .def(py::init<GroupId, int, std::set<NodeId>>(), py::arg("id"), py::arg("timeframe_index"), py::arg("members"))
        .def_property_readonly("id", &Group::id)
        .def_property_readonly("timeframe_index", &Group::timeframe_index)
        .def_property_readonly("members", &Group::members)
        .def("__len__", &Group::size);

    py::class_<GroupingSnapshot>(m, "GroupingSnapshot")
        .def(py::init<int, std::vector<Group>>(), py::arg("timeframe_index"), py::arg("groups"))
        .def_readonly("timeframe_index", &GroupingSnapshot::timeframe_index)
        .def_readonly("groups", &GroupingSnapshot::groups);

    m.def(
        "load_groupings",
        [](const std::string& text) {
            std::istringstream in(text);
            return load_groupings(in);
        },
        py::arg("text"));
    m.def("label_propagation", &label_propagation, py::arg("snapshot"), py::arg("seed"), py::arg("max_sweeps") = 100);

    m.def(
        "social_position",
        [](const Snapshot& sub, double epsilon, double tolerance, int max_iter) {
            return social_position(sub, SPConfig{epsilon, tolerance, max_iter}).values;
        },
        py::arg("group_subgraph"), py::arg("epsilon") = 0.85, py::arg("tolerance") = 1e-9,
        py::arg("max_iter") = 10000);
    m.def(
        "degree_importance", [](const Snapshot& sub) { return degree_importance(sub).values; },
        py::arg("group_subgraph"));

    m.def(
        "inclusion",
        [](const std::set<NodeId>& g1, const std::set<NodeId>& g2, const std::map<NodeId, double>& scores_g1) {
            ImportanceScores s;
            s.values = scores_g1;
            return inclusion(Group("g1", 0, g1), Group("g2", 0, g2), s);
        },
        py::arg("g1"), py::arg("g2"), py::arg("scores_g1"), "Inclusion of member set g1 in g2.");

    m.def(
        "classify_pair",
        [](double i_forward, double i_backward, std::size_t size_from, std::size_t size_to, int matches_forward,
           int matches_backward, double alpha, double beta) -> std::optional<std::string> {
            Thresholds th;
            th.alpha = alpha;
            th.beta = beta;
            const auto type = classify_pair({i_forward, i_backward}, size_from, size_to, matches_forward,
                                            matches_backward, th);
            if (!type) return std::nullopt;
            return std::string(to_string(*type));
        },
        py::arg("i_forward"), py::arg("i_backward"), py::arg("size_from"), py::arg("size_to"),
        py::arg("matches_forward"), py::arg("matches_backward"), py::arg("alpha") = 0.5, py::arg("beta") = 0.5);

    py::class_<EvolutionEvent>(m, "EvolutionEvent")
        .def_readonly("timeframe_from", &EvolutionEvent::timeframe_from)
        .def_readonly("group_from", &EvolutionEvent::group_from)
        .def_readonly("group_to", &EvolutionEvent::group_to)
        .def_property_readonly("event_type", [](const EvolutionEvent& e) { return std::string(to_string(e.event_type)); })
        .def_property_readonly("i_forward", [](const EvolutionEvent& e) {
            return e.inclusion ? std::optional<double>(e.inclusion->forward) : std::nullopt;
        })
        .def_property_readonly("i_backward", [](const EvolutionEvent& e) {
            return e.inclusion ? std::optional<double>(e.inclusion->backward) : std::nullopt;
        })
        .def_readonly("size_from", &EvolutionEvent::size_from)
        .def_readonly("size_to", &EvolutionEvent::size_to)
        .def_readonly("matches_forward", &EvolutionEvent::matches_forward)
        .def_readonly("matches_backward", &EvolutionEvent::matches_backward)
        .def_property_readonly("balance", [](const EvolutionEvent& e) {
            return e.balance ? std::optional<std::string>(to_string(*e.balance)) : std::nullopt;
        });

    py::class_<EventLog>(m, "EventLog")
        .def_readonly("events", &EventLog::events)
        .def("to_json", [](const EventLog& log) { return events_to_json(log.events); })
        .def("to_csv", [](const EventLog& log) { return events_to_csv(log.events); })
        .def("to_dot", [](const EventLog& log) { return to_dot(build_lineage(log)); });

    m.def("event_log_from_json", [](const std::string& text) { return log_from_events(events_from_json(text)); },
          py::arg("text"));

    m.def(
        "track_evolution",
        [](const TemporalSocialNetwork& tsn, const std::vector<GroupingSnapshot>& groupings, const py::object& importance,
           double alpha, double beta, double match_floor, double balance_ratio, double sp_epsilon, double sp_tolerance,
           int sp_max_iter, unsigned threads) {
            TrackOptions options;
            options.thresholds.alpha = alpha;
            options.thresholds.beta = beta;
            options.thresholds.match_floor = match_floor;
            options.balance_ratio = balance_ratio;
            // Python callables serialize on the GIL anyway.
            options.threads = py::isinstance<py::str>(importance) ? threads : 1;
            const auto provider = make_provider(importance, SPConfig{sp_epsilon, sp_tolerance, sp_max_iter});
            py::gil_scoped_release release;
            return track_evolution(tsn, groupings, provider, options);
        },
        py::arg("tsn"), py::arg("groupings"), py::arg("importance") = "sp", py::arg("alpha") = 0.5,
        py::arg("beta") = 0.5, py::arg("match_floor") = 0.10, py::arg("balance_ratio") = 1.5,
        py::arg("sp_epsilon") = 0.85, py::arg("sp_tolerance") = 1e-9, py::arg("sp_max_iter") = 10000,
        py::arg("threads") = 1);
}
