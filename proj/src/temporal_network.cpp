#include "ged/temporal_network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>

#include "ged/errors.hpp"

namespace ged {

namespace {

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(sep, pos);
        out.push_back(trim(line.substr(pos, next == std::string_view::npos ? next : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
    if (text.empty()) return false;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

Timestamp floor_div(Timestamp a, Timestamp b) {
    Timestamp q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

ParsedEdges parse_edge_stream(std::istream& in, EdgeFormat format) {
    const char sep = format == EdgeFormat::Csv ? ',' : '\t';
    ParsedEdges result;
    std::string raw;
    while (std::getline(in, raw)) {
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const auto fields = split(line, sep);
        if (fields.size() < 3 || fields.size() > 4 || fields[0].empty() || fields[1].empty()) {
            ++result.report.malformed;
            continue;
        }
        TimedEdge edge{std::string(fields[0]), std::string(fields[1]), 0, 1.0};
        if (!parse_number(fields[2], edge.timestamp) || edge.timestamp < 0) {
            ++result.report.malformed;
            continue;
        }
        if (fields.size() == 4) {
            if (!parse_number(fields[3], edge.weight) || !std::isfinite(edge.weight)) {
                ++result.report.malformed;
                continue;
            }
            if (edge.weight <= 0.0) {
                ++result.report.non_positive_weight;
                continue;
            }
        }
        if (edge.source == edge.target) {
            ++result.report.self_loops_dropped;
            continue;
        }
        result.edges.push_back(std::move(edge));
    }
    if (in.bad()) throw IoError("failed while reading edge stream");
    return result;
}

ParsedEdges parse_edge_file(const std::string& path, EdgeFormat format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge file: " + path);
    return parse_edge_stream(in, format);
}

Timestamp WindowSpec::stride() const {
    const auto step = static_cast<Timestamp>(std::llround(static_cast<double>(window_length) * (1.0 - overlap_fraction)));
    return std::max<Timestamp>(1, step);
}

void WindowSpec::validate() const {
    if (window_length <= 0) throw ConfigError("window length must be positive");
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
        throw ConfigError("overlap fraction must lie in [0, 1)");
}

void Snapshot::add_edge(const NodeId& source, const NodeId& target, double weight) {
    if (source == target) throw InvalidInput("self-loop on node " + source);
    nodes.insert(source);
    nodes.insert(target);
    edges[{source, target}] += weight;
}

const Snapshot* TemporalSocialNetwork::find(int index) const {
    const auto it = std::lower_bound(timeframes.begin(), timeframes.end(), index,
                                     [](const Snapshot& s, int i) { return s.index < i; });
    return it != timeframes.end() && it->index == index ? &*it : nullptr;
}

TemporalSocialNetwork slice_timeframes(const std::vector<TimedEdge>& edges, const WindowSpec& spec) {
    spec.validate();
    if (edges.empty()) throw EmptyInput("no edges to slice");

    const auto [min_it, max_it] = std::minmax_element(
        edges.begin(), edges.end(), [](const TimedEdge& a, const TimedEdge& b) { return a.timestamp < b.timestamp; });
    const Timestamp origin = spec.origin.value_or(min_it->timestamp);
    const Timestamp length = spec.window_length;
    const Timestamp stride = spec.stride();

    TemporalSocialNetwork tsn;
    tsn.window_spec = spec;
    tsn.window_spec.origin = origin;
    if (max_it->timestamp < origin) throw EmptyInput("every edge precedes the window origin");

    const auto window_count = static_cast<std::size_t>(floor_div(max_it->timestamp - origin, stride) + 1);
    tsn.timeframes.resize(window_count);
    for (std::size_t k = 0; k < window_count; ++k) {
        auto& snap = tsn.timeframes[k];
        snap.index = static_cast<int>(k) + 1;
        snap.start = origin + static_cast<Timestamp>(k) * stride;
        snap.end = snap.start + length;
    }

    for (const auto& e : edges) {
        if (e.source == e.target || !(e.weight > 0.0)) throw InvalidInput("edge violates loop-free/positive-weight invariant");
        const Timestamp offset = e.timestamp - origin;
        if (offset < 0) continue;
        const Timestamp last = floor_div(offset, stride);
        const Timestamp first = std::max<Timestamp>(0, floor_div(offset - length, stride) + 1);
        for (Timestamp k = first; k <= last; ++k) tsn.timeframes[static_cast<std::size_t>(k)].add_edge(e.source, e.target, e.weight);
    }
    return tsn;
}

Snapshot induced_subgraph(const Snapshot& s, const std::set<NodeId>& members) {
    if (members.empty()) throw InvalidGroup("induced subgraph needs at least one member");
    Snapshot sub;
    sub.index = s.index;
    sub.start = s.start;
    sub.end = s.end;
    sub.nodes = members;
    for (const auto& source : members) {
        for (auto it = s.edges.lower_bound({source, NodeId{}}); it != s.edges.end() && it->first.first == source; ++it) {
            if (members.count(it->first.second)) sub.edges.emplace_hint(sub.edges.end(), it->first, it->second);
        }
    }
    return sub;
}

}  // namespace ged
