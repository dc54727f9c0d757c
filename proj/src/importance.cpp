#include "ged/importance.hpp"

#include <algorithm>
#include <cmath>

#include "ged/errors.hpp"

namespace ged {

double ImportanceScores::at(const NodeId& node) const {
    const auto it = values.find(node);
    if (it == values.end()) throw MissingScore("no importance score for node '" + node + "' in group '" + group_id + "'");
    return it->second;
}

void SPConfig::validate() const {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ConfigError("SP epsilon must lie in [0, 1)");
    if (!(tolerance > 0.0)) throw ConfigError("SP tolerance must be positive");
    if (max_iterations <= 0) throw ConfigError("SP max iterations must be positive");
}

double CommitmentMatrix::at(const NodeId& from, const NodeId& to) const {
    const auto row = rows.find(from);
    if (row == rows.end()) return 0.0;
    const auto cell = row->second.find(to);
    return cell == row->second.end() ? 0.0 : cell->second;
}

CommitmentMatrix commitment_matrix(const Snapshot& s) {
    CommitmentMatrix c;
    std::map<NodeId, double> out_weight;
    for (const auto& [key, w] : s.edges) out_weight[key.first] += w;
    for (const auto& [key, w] : s.edges) c.rows[key.first][key.second] = w / out_weight[key.first];
    return c;
}

ImportanceScores social_position(const Snapshot& group_subgraph, const SPConfig& cfg) {
    cfg.validate();
    const std::vector<NodeId> nodes(group_subgraph.nodes.begin(), group_subgraph.nodes.end());
    const auto n = nodes.size();
    auto index_of = [&nodes](const NodeId& id) {
        return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
    };

    // Incoming arcs per target as (source index, commitment).
    std::vector<std::vector<std::pair<std::size_t, double>>> incoming(n);
    for (const auto& [from, row] : commitment_matrix(group_subgraph).rows)
        for (const auto& [to, share] : row) incoming[index_of(to)].emplace_back(index_of(from), share);

    const double base = 1.0 - cfg.epsilon;
    std::vector<double> current(n, 1.0);
    std::vector<double> next(n);
    double residual = 0.0;
    bool converged = n == 0;
    for (int iter = 0; iter < cfg.max_iterations && !converged; ++iter) {
        residual = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            double inflow = 0.0;
            for (const auto& [y, share] : incoming[x]) inflow += current[y] * share;
            next[x] = base + cfg.epsilon * inflow;
            residual = std::max(residual, std::abs(next[x] - current[x]));
        }
        current.swap(next);
        converged = residual < cfg.tolerance;
    }
    if (!converged)
        throw ConvergenceError("social position did not converge within " + std::to_string(cfg.max_iterations) +
                                   " iterations (residual " + std::to_string(residual) + ")",
                               residual);

    ImportanceScores scores;
    scores.timeframe_index = group_subgraph.index;
    for (std::size_t x = 0; x < n; ++x) scores.values.emplace_hint(scores.values.end(), nodes[x], current[x]);
    return scores;
}

ImportanceScores degree_importance(const Snapshot& group_subgraph) {
    ImportanceScores scores;
    scores.timeframe_index = group_subgraph.index;
    for (const auto& node : group_subgraph.nodes) scores.values.emplace_hint(scores.values.end(), node, 1.0);
    for (const auto& [key, _] : group_subgraph.edges) {
        scores.values[key.first] += 1.0;
        scores.values[key.second] += 1.0;
    }
    return scores;
}

ImportanceProvider social_position_provider(SPConfig cfg) {
    cfg.validate();
    return [cfg](const Snapshot& sub, const Group& g) {
        auto scores = social_position(sub, cfg);
        scores.timeframe_index = g.timeframe_index();
        scores.group_id = g.id();
        return scores;
    };
}

ImportanceProvider degree_provider() {
    return [](const Snapshot& sub, const Group& g) {
        auto scores = degree_importance(sub);
        scores.timeframe_index = g.timeframe_index();
        scores.group_id = g.id();
        return scores;
    };
}

}  // namespace ged
