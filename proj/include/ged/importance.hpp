#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ged/grouping.hpp"
#include "ged/temporal_network.hpp"

namespace ged {

// Per-node importance inside one group. All values are positive.
struct ImportanceScores {
    int timeframe_index = 0;
    GroupId group_id;
    std::map<NodeId, double> values;

    double at(const NodeId& node) const;
    bool operator==(const ImportanceScores&) const = default;
};

struct SPConfig {
    double epsilon = 0.85;
    double tolerance = 1e-9;
    int max_iterations = 10000;

    void validate() const;
};

// Row y holds y's out-weight share towards each target; rows of nodes
// without out-edges are absent.
struct CommitmentMatrix {
    std::map<NodeId, std::map<NodeId, double>> rows;

    double at(const NodeId& from, const NodeId& to) const;
};

CommitmentMatrix commitment_matrix(const Snapshot& s);

// Fixed point of SP(x) = (1 - eps) + eps * sum_{y -> x} SP(y) * C(y, x),
// iterated from all ones until the max-norm step drops below tolerance.
// Pass a group-induced subgraph; the scope fields are taken from it and
// left for the caller to fill with the group id.
ImportanceScores social_position(const Snapshot& group_subgraph, const SPConfig& cfg = {});

// in-degree + out-degree + 1 within the subgraph.
ImportanceScores degree_importance(const Snapshot& group_subgraph);

// Produces scores for `group` given its induced subgraph. Must be safe to
// call concurrently for distinct groups.
using ImportanceProvider = std::function<ImportanceScores(const Snapshot& group_subgraph, const Group& group)>;

ImportanceProvider social_position_provider(SPConfig cfg = {});
ImportanceProvider degree_provider();

}  // namespace ged
