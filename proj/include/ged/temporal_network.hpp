#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ged {

using NodeId = std::string;
using Timestamp = std::int64_t;

struct TimedEdge {
    NodeId source;
    NodeId target;
    Timestamp timestamp = 0;
    double weight = 1.0;

    bool operator==(const TimedEdge&) const = default;
};

enum class EdgeFormat { Tsv, Csv };

struct ParseReport {
    std::size_t self_loops_dropped = 0;
    std::size_t malformed = 0;
    std::size_t non_positive_weight = 0;

    std::size_t total_dropped() const { return self_loops_dropped + malformed + non_positive_weight; }
};

struct ParsedEdges {
    std::vector<TimedEdge> edges;
    ParseReport report;
};

// Reads `source<sep>target<sep>timestamp[<sep>weight]` lines. Lines starting
// with '#' and blank lines are skipped. Bad lines are counted, never fatal.
ParsedEdges parse_edge_stream(std::istream& in, EdgeFormat format = EdgeFormat::Tsv);
ParsedEdges parse_edge_file(const std::string& path, EdgeFormat format = EdgeFormat::Tsv);

struct WindowSpec {
    Timestamp window_length = 1;
    double overlap_fraction = 0.0;
    // Start of the first window; the earliest edge timestamp when unset.
    std::optional<Timestamp> origin;

    // Distance between consecutive window starts, at least 1.
    Timestamp stride() const;
    void validate() const;

    bool operator==(const WindowSpec&) const = default;
};

using EdgeKey = std::pair<NodeId, NodeId>;

// One timeframe: a directed, weighted, loop-free simple graph.
struct Snapshot {
    int index = 1;
    Timestamp start = 0;
    Timestamp end = 0;  // exclusive
    std::set<NodeId> nodes;
    std::map<EdgeKey, double> edges;

    void add_edge(const NodeId& source, const NodeId& target, double weight);

    bool operator==(const Snapshot&) const = default;
};

struct TemporalSocialNetwork {
    std::vector<Snapshot> timeframes;
    WindowSpec window_spec;

    std::size_t size() const { return timeframes.size(); }
    // nullptr when no snapshot carries that index.
    const Snapshot* find(int index) const;
};

// Assigns every edge to each half-open window [start, start + length) that
// contains its timestamp. Interior empty windows are kept so indices stay
// aligned with wall-clock time; trailing empty windows are not produced.
TemporalSocialNetwork slice_timeframes(const std::vector<TimedEdge>& edges, const WindowSpec& spec);

// Members missing from the snapshot are kept as isolated nodes.
Snapshot induced_subgraph(const Snapshot& s, const std::set<NodeId>& members);

}  // namespace ged
