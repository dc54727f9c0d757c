#include "ged/lineage.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace ged {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

std::string vertex_name(const LineageVertex& v) { return quoted(std::to_string(v.timeframe_index) + ":" + v.id); }

}  // namespace

std::size_t LineageGraph::find(int timeframe_index, const GroupId& id) const {
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), std::pair{timeframe_index, id},
                                     [](const LineageVertex& v, const std::pair<int, GroupId>& key) {
                                         return std::pair{v.timeframe_index, v.id} < key;
                                     });
    return it != vertices.end() && it->timeframe_index == timeframe_index && it->id == id
               ? static_cast<std::size_t>(it - vertices.begin())
               : vertices.size();
}

std::size_t LineageGraph::component_count() const {
    std::vector<std::size_t> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto root = [&parent](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::size_t components = vertices.size();
    for (const auto& arc : arcs) {
        const auto a = root(arc.from);
        const auto b = root(arc.to);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components;
}

LineageGraph build_lineage(const EventLog& log) {
    std::map<std::pair<int, GroupId>, LineageVertex> vertices;
    auto touch = [&vertices](int tf, const GroupId& id, std::size_t size) -> LineageVertex& {
        auto [it, inserted] = vertices.try_emplace({tf, id});
        if (inserted) it->second = LineageVertex{tf, id, size};
        return it->second;
    };
    for (const auto& inst : log.instances) touch(inst.timeframe_index, inst.id, inst.size);
    for (const auto& e : log.events) {
        if (e.group_from) touch(e.timeframe_from, *e.group_from, e.size_from).dissolving |= e.event_type == EventType::Dissolving;
        if (e.group_to) touch(e.timeframe_from + 1, *e.group_to, e.size_to).forming |= e.event_type == EventType::Forming;
    }

    LineageGraph graph;
    graph.vertices.reserve(vertices.size());
    for (auto& [_, v] : vertices) graph.vertices.push_back(std::move(v));
    for (const auto& e : log.events) {
        if (!e.group_from || !e.group_to) continue;
        graph.arcs.push_back({graph.find(e.timeframe_from, *e.group_from), graph.find(e.timeframe_from + 1, *e.group_to), e});
    }
    return graph;
}

std::string to_dot(const LineageGraph& graph) {
    std::ostringstream out;
    out << "digraph lineage {\n  rankdir=LR;\n";
    for (std::size_t k = 0; k < graph.vertices.size();) {
        const int tf = graph.vertices[k].timeframe_index;
        out << "  subgraph tf_" << tf << " {\n    rank=same;\n";
        for (; k < graph.vertices.size() && graph.vertices[k].timeframe_index == tf; ++k) {
            const auto& v = graph.vertices[k];
            std::string label = v.id + " (t" + std::to_string(tf) + ", " + std::to_string(v.size) + ")";
            if (v.forming) label += " forming";
            if (v.dissolving) label += " dissolving";
            out << "    " << vertex_name(v) << " [label=" << quoted(label);
            if (v.forming) out << ", peripheries=2";
            if (v.dissolving) out << ", style=dashed";
            out << "];\n";
        }
        out << "  }\n";
    }
    for (const auto& arc : graph.arcs) {
        std::string label(to_string(arc.event.event_type));
        if (arc.event.balance) label += " (" + std::string(to_string(*arc.event.balance)) + ")";
        out << "  " << vertex_name(graph.vertices[arc.from]) << " -> " << vertex_name(graph.vertices[arc.to])
            << " [label=" << quoted(label) << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace ged
