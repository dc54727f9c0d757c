#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ged/evolution.hpp"

namespace ged {

struct LineageVertex {
    int timeframe_index = 0;
    GroupId id;
    std::size_t size = 0;
    bool forming = false;     // source marker
    bool dissolving = false;  // sink marker
};

struct LineageArc {
    std::size_t from = 0;  // vertex positions
    std::size_t to = 0;
    EvolutionEvent event;
};

// Layered DAG of group instances; arcs only join timeframe i to i + 1.
struct LineageGraph {
    std::vector<LineageVertex> vertices;  // sorted by (timeframe, id)
    std::vector<LineageArc> arcs;

    // Weakly connected components, e.g. the number of separate chains.
    std::size_t component_count() const;
    std::size_t find(int timeframe_index, const GroupId& id) const;  // vertices.size() if absent
};

LineageGraph build_lineage(const EventLog& log);

// One rank=same subgraph per timeframe; arcs labeled with the event type.
std::string to_dot(const LineageGraph& graph);

}  // namespace ged
