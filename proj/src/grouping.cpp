#include "ged/grouping.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "ged/errors.hpp"

namespace ged {

Group::Group(GroupId id, int timeframe_index, std::set<NodeId> members)
    : id_(std::move(id)), timeframe_index_(timeframe_index), members_(std::move(members)) {
    if (members_.empty()) throw InvalidGroup("group '" + id_ + "' has no members");
}

const Group* GroupingSnapshot::find(const GroupId& id) const {
    const auto it = std::lower_bound(groups.begin(), groups.end(), id,
                                     [](const Group& g, const GroupId& key) { return g.id() < key; });
    return it != groups.end() && it->id() == id ? &*it : nullptr;
}

std::vector<GroupingSnapshot> load_groupings(std::istream& in) {
    std::map<int, std::map<GroupId, std::set<NodeId>>> assembled;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream fields(raw);
        std::string index_text;
        if (!(fields >> index_text) || index_text.front() == '#') continue;

        GroupId group;
        NodeId node;
        std::string extra;
        if (!(fields >> group >> node) || (fields >> extra))
            throw ParseError("expected timeframe_index, group_id, node_id", line_no);
        int index = 0;
        const auto* end = index_text.data() + index_text.size();
        const auto [ptr, ec] = std::from_chars(index_text.data(), end, index);
        if (ec != std::errc{} || ptr != end || index < 1)
            throw ParseError("timeframe index must be a positive integer: '" + index_text + "'", line_no);
        assembled[index][group].insert(node);
    }
    if (in.bad()) throw IoError("failed while reading groupings");

    std::vector<GroupingSnapshot> out;
    out.reserve(assembled.size());
    for (auto& [index, groups] : assembled) {
        GroupingSnapshot snap{index, {}};
        for (auto& [id, members] : groups) snap.groups.emplace_back(id, index, std::move(members));
        out.push_back(std::move(snap));
    }
    return out;
}

std::vector<GroupingSnapshot> load_groupings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open grouping file: " + path);
    return load_groupings(in);
}

void write_groupings(std::ostream& out, const std::vector<GroupingSnapshot>& groupings) {
    std::vector<const GroupingSnapshot*> ordered;
    for (const auto& g : groupings) ordered.push_back(&g);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto* a, const auto* b) { return a->timeframe_index < b->timeframe_index; });
    for (const auto* snap : ordered) {
        std::vector<const Group*> groups;
        for (const auto& g : snap->groups) groups.push_back(&g);
        std::sort(groups.begin(), groups.end(), [](const auto* a, const auto* b) { return a->id() < b->id(); });
        for (const auto* g : groups)
            for (const auto& node : g->members()) out << snap->timeframe_index << '\t' << g->id() << '\t' << node << '\n';
    }
}

ValidationReport validate_groupings(const TemporalSocialNetwork& tsn, const std::vector<GroupingSnapshot>& groupings) {
    ValidationReport report;
    std::set<int> grouped;
    for (const auto& snap : groupings) {
        grouped.insert(snap.timeframe_index);
        const Snapshot* frame = tsn.find(snap.timeframe_index);
        if (!frame) {
            report.orphan_indices.push_back(snap.timeframe_index);
            continue;
        }
        for (const auto& g : snap.groups)
            for (const auto& node : g.members())
                if (!frame->nodes.count(node)) report.unknown_members.push_back({snap.timeframe_index, g.id(), node});
    }
    for (const auto& frame : tsn.timeframes)
        if (!grouped.count(frame.index)) report.ungrouped_snapshots.push_back(frame.index);
    std::sort(report.orphan_indices.begin(), report.orphan_indices.end());
    report.orphan_indices.erase(std::unique(report.orphan_indices.begin(), report.orphan_indices.end()),
                                report.orphan_indices.end());
    return report;
}

std::vector<GroupingSnapshot> filter_min_size(std::vector<GroupingSnapshot> groupings, std::size_t min_size) {
    for (auto& snap : groupings)
        std::erase_if(snap.groups, [min_size](const Group& g) { return g.size() < min_size; });
    return groupings;
}

namespace {

// Fisher-Yates over mt19937_64 so the permutation is identical on every
// standard library (std::shuffle's algorithm is unspecified).
void seeded_shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

GroupingSnapshot label_propagation(const Snapshot& s, std::uint64_t seed, int max_sweeps) {
    if (s.nodes.empty()) throw InvalidInput("label propagation needs a nonempty snapshot");

    const std::vector<NodeId> nodes(s.nodes.begin(), s.nodes.end());
    const auto n = nodes.size();
    auto index_of = [&nodes](const NodeId& id) {
        return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
    };

    std::vector<std::map<std::size_t, double>> neighbor_weight(n);
    for (const auto& [key, w] : s.edges) {
        const auto u = index_of(key.first);
        const auto v = index_of(key.second);
        neighbor_weight[u][v] += w;
        neighbor_weight[v][u] += w;
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> label(n);
    std::iota(label.begin(), label.end(), std::size_t{0});
    seeded_shuffle(label, rng);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::map<std::size_t, double> tally;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        seeded_shuffle(order, rng);
        bool changed = false;
        for (const auto u : order) {
            if (neighbor_weight[u].empty()) continue;
            tally.clear();
            for (const auto& [v, w] : neighbor_weight[u]) tally[label[v]] += w;
            auto best = tally.begin();
            for (auto it = tally.begin(); it != tally.end(); ++it)
                if (it->second > best->second) best = it;  // map order: ties keep the smaller label
            if (best->first != label[u]) {
                label[u] = best->first;
                changed = true;
            }
        }
        if (!changed) break;
    }

    std::map<std::size_t, std::set<NodeId>> classes;
    for (std::size_t u = 0; u < n; ++u) classes[label[u]].insert(nodes[u]);
    std::vector<std::set<NodeId>> kept;
    for (auto& [_, members] : classes)
        if (members.size() >= 2) kept.push_back(std::move(members));
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });

    GroupingSnapshot out{s.index, {}};
    for (std::size_t k = 0; k < kept.size(); ++k) out.groups.emplace_back("lp" + std::to_string(k + 1), s.index, std::move(kept[k]));
    std::sort(out.groups.begin(), out.groups.end(), [](const Group& a, const Group& b) { return a.id() < b.id(); });
    return out;
}

}  // namespace ged
