#include <algorithm>
#include <map>
#include <unordered_map>

#include "ged/errors.hpp"
#include "ged/evolution.hpp"
#include "parallel.hpp"

namespace ged {

namespace {

// Groups of one timeframe together with their group-local scores.
struct Frame {
    GroupingSnapshot grouping;
    std::vector<ImportanceScores> scores;
};

std::vector<Frame> align_frames(const TemporalSocialNetwork& tsn, const std::vector<GroupingSnapshot>& groupings) {
    std::map<int, const GroupingSnapshot*> by_index;
    std::vector<int> offending;
    for (const auto& g : groupings) {
        const bool duplicate = !by_index.emplace(g.timeframe_index, &g).second;
        const bool mislabeled = std::any_of(g.groups.begin(), g.groups.end(), [&g](const Group& grp) {
            return grp.timeframe_index() != g.timeframe_index;
        });
        if (duplicate || mislabeled || !tsn.find(g.timeframe_index)) offending.push_back(g.timeframe_index);
    }
    if (!offending.empty()) {
        std::sort(offending.begin(), offending.end());
        offending.erase(std::unique(offending.begin(), offending.end()), offending.end());
        std::string list;
        for (const int i : offending) list += (list.empty() ? "" : ", ") + std::to_string(i);
        throw AlignmentError("groupings do not align with timeframes at indices: " + list, offending);
    }

    std::vector<Frame> frames(tsn.size());
    for (std::size_t k = 0; k < tsn.size(); ++k) {
        const int index = tsn.timeframes[k].index;
        frames[k].grouping.timeframe_index = index;
        if (const auto it = by_index.find(index); it != by_index.end()) frames[k].grouping.groups = it->second->groups;
        auto& groups = frames[k].grouping.groups;
        std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) { return a.id() < b.id(); });
        if (std::adjacent_find(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
                return a.id() == b.id();
            }) != groups.end())
            throw AlignmentError("duplicate group id in timeframe " + std::to_string(index), {index});
    }
    return frames;
}

void compute_scores(const TemporalSocialNetwork& tsn, std::vector<Frame>& frames, const ImportanceProvider& importance,
                    unsigned threads) {
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t k = 0; k < frames.size(); ++k) {
        frames[k].scores.resize(frames[k].grouping.groups.size());
        for (std::size_t g = 0; g < frames[k].grouping.groups.size(); ++g) jobs.emplace_back(k, g);
    }
    detail::parallel_for(jobs.size(), threads, [&](std::size_t j) {
        const auto [k, g] = jobs[j];
        const Group& group = frames[k].grouping.groups[g];
        auto scores = importance(induced_subgraph(tsn.timeframes[k], group.members()), group);
        for (const auto& node : group.members()) {
            const auto it = scores.values.find(node);
            if (it == scores.values.end())
                throw MissingScore("importance provider gave no score for '" + node + "' in group '" + group.id() + "'");
            if (!(it->second > 0.0))
                throw InvalidInput("importance scores must be positive (group '" + group.id() + "')");
        }
        frames[k].scores[g] = std::move(scores);
    });
}

// Pairs sharing no member have both inclusions zero, so only pairs found
// through the member index are scored.
InclusionTable build_table(const Frame& prev, const Frame& next, unsigned threads) {
    const auto& pg = prev.grouping.groups;
    const auto& ng = next.grouping.groups;
    InclusionTable table(pg.size(), ng.size());

    std::unordered_map<NodeId, std::vector<std::size_t>> holders;
    for (std::size_t j = 0; j < ng.size(); ++j)
        for (const auto& node : ng[j].members()) holders[node].push_back(j);

    detail::parallel_for(pg.size(), threads, [&](std::size_t i) {
        std::vector<char> touched(ng.size(), 0);
        for (const auto& node : pg[i].members())
            if (const auto it = holders.find(node); it != holders.end())
                for (const auto j : it->second) touched[j] = 1;
        for (std::size_t j = 0; j < ng.size(); ++j) {
            if (!touched[j]) continue;
            table.at(i, j) = {inclusion(pg[i], ng[j], prev.scores[i]), inclusion(ng[j], pg[i], next.scores[j])};
        }
    });
    return table;
}

std::size_t overlap(const Group& a, const Group& b) {
    std::size_t n = 0;
    for (const auto& node : a.members()) n += b.contains(node);
    return n;
}

void track_transition(const Frame& prev, const Frame& next, const TrackOptions& options, std::vector<EvolutionEvent>& out) {
    const auto& th = options.thresholds;
    const auto& pg = prev.grouping.groups;
    const auto& ng = next.grouping.groups;
    const auto table = build_table(prev, next, options.threads);

    auto is_match = [&](std::size_t i, std::size_t j) {
        const auto& p = table.at(i, j);
        return p.forward >= th.match_floor || p.backward >= th.match_floor;
    };
    std::vector<std::vector<std::size_t>> forward_matches(pg.size());
    std::vector<std::vector<std::size_t>> backward_matches(ng.size());
    for (std::size_t i = 0; i < pg.size(); ++i)
        for (std::size_t j = 0; j < ng.size(); ++j)
            if (is_match(i, j)) {
                forward_matches[i].push_back(j);
                backward_matches[j].push_back(i);
            }

    for (std::size_t i = 0; i < pg.size(); ++i) {
        for (const auto j : forward_matches[i]) {
            const auto mf = static_cast<int>(forward_matches[i].size());
            const auto mb = static_cast<int>(backward_matches[j].size());
            const auto type = classify_pair(table.at(i, j), pg[i].size(), ng[j].size(), mf, mb, th);
            if (!type) continue;

            EvolutionEvent e;
            e.timeframe_from = prev.grouping.timeframe_index;
            e.group_from = pg[i].id();
            e.group_to = ng[j].id();
            e.event_type = *type;
            e.inclusion = table.at(i, j);
            e.size_from = pg[i].size();
            e.size_to = ng[j].size();
            e.matches_forward = mf;
            e.matches_backward = mb;

            std::vector<std::size_t> contributions;
            if (*type == EventType::Splitting)
                for (const auto k : forward_matches[i]) contributions.push_back(overlap(pg[i], ng[k]));
            else if (*type == EventType::Merging)
                for (const auto k : backward_matches[j]) contributions.push_back(overlap(pg[k], ng[j]));
            if (!contributions.empty()) e = annotate_balance(std::move(e), contributions, options.balance_ratio);
            out.push_back(std::move(e));
        }
    }
    auto lifecycle = detect_forming_dissolving(prev.grouping, next.grouping, table, th);
    out.insert(out.end(), std::make_move_iterator(lifecycle.begin()), std::make_move_iterator(lifecycle.end()));
}

}  // namespace

EventLog track_evolution(const TemporalSocialNetwork& tsn, const std::vector<GroupingSnapshot>& groupings,
                         const ImportanceProvider& importance, const TrackOptions& options) {
    options.validate();
    if (tsn.size() < 2) throw InvalidInput("tracking needs at least two timeframes");
    if (!importance) throw InvalidInput("no importance provider given");

    auto frames = align_frames(tsn, groupings);
    compute_scores(tsn, frames, importance, options.threads);

    EventLog log;
    for (const auto& frame : frames)
        for (const auto& g : frame.grouping.groups) log.instances.push_back({frame.grouping.timeframe_index, g.id(), g.size()});
    for (std::size_t k = 0; k + 1 < frames.size(); ++k) track_transition(frames[k], frames[k + 1], options, log.events);
    std::stable_sort(log.events.begin(), log.events.end(), canonical_less);
    return log;
}

}  // namespace ged
