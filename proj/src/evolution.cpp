#include "ged/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

#include "ged/errors.hpp"

namespace ged {

namespace {

constexpr std::array<std::string_view, 7> kEventNames = {"Continuing", "Shrinking",  "Growing", "Splitting",
                                                         "Merging",    "Dissolving", "Forming"};

}  // namespace

std::vector<std::string> Thresholds::validate() const {
    std::vector<std::string> warnings;
    for (const auto& [name, value] : {std::pair{"alpha", alpha}, std::pair{"beta", beta}}) {
        if (!(value > 0.0 && value <= 1.0)) throw ConfigError(std::string(name) + " must lie in (0, 1]");
        if (value < 0.5)
            warnings.push_back(std::string(name) + " = " + std::to_string(value) +
                               " is below the recommended range [0.5, 1]");
    }
    if (!(dissolve_floor > 0.0 && dissolve_floor < 1.0)) throw ConfigError("dissolve floor must lie in (0, 1)");
    if (!(match_floor > 0.0 && match_floor < 1.0)) throw ConfigError("match floor must lie in (0, 1)");
    if (match_floor < dissolve_floor)
        throw ConfigError("match floor must not be below the dissolve floor (" + std::to_string(dissolve_floor) + ")");
    return warnings;
}

std::vector<std::string> TrackOptions::validate() const {
    auto warnings = thresholds.validate();
    if (!(balance_ratio >= 1.0)) throw ConfigError("balance ratio must be at least 1");
    if (threads == 0) throw ConfigError("thread count must be positive");
    return warnings;
}

std::string_view to_string(EventType type) { return kEventNames[static_cast<std::size_t>(type)]; }

std::string_view to_string(Balance balance) { return balance == Balance::Equal ? "Equal" : "Unequal"; }

std::optional<EventType> parse_event_type(std::string_view text) {
    for (std::size_t i = 0; i < kEventNames.size(); ++i)
        if (kEventNames[i] == text) return static_cast<EventType>(i);
    return std::nullopt;
}

std::optional<Balance> parse_balance(std::string_view text) {
    if (text == "Equal") return Balance::Equal;
    if (text == "Unequal") return Balance::Unequal;
    return std::nullopt;
}

bool canonical_less(const EvolutionEvent& a, const EvolutionEvent& b) {
    return std::tie(a.timeframe_from, a.group_from, a.group_to) < std::tie(b.timeframe_from, b.group_from, b.group_to);
}

double inclusion(const Group& g1, const Group& g2, const ImportanceScores& scores_g1) {
    std::size_t shared = 0;
    double shared_score = 0.0;
    double total_score = 0.0;
    for (const auto& node : g1.members()) {
        const double s = scores_g1.at(node);
        total_score += s;
        if (g2.contains(node)) {
            ++shared;
            shared_score += s;
        }
    }
    if (shared == 0) return 0.0;
    if (shared == g1.size()) return 1.0;
    const double quantity = static_cast<double>(shared) / static_cast<double>(g1.size());
    return quantity * (shared_score / total_score);
}

MatchResult match_count(const Group& g, const ImportanceScores& g_scores, std::span<const Group> others,
                        std::span<const ImportanceScores> others_scores, double floor) {
    if (others.size() != others_scores.size()) throw InvalidInput("one score set is required per candidate group");
    MatchResult result;
    for (std::size_t k = 0; k < others.size(); ++k) {
        if (inclusion(g, others[k], g_scores) >= floor || inclusion(others[k], g, others_scores[k]) >= floor) {
            ++result.count;
            result.matched.push_back(others[k].id());
        }
    }
    return result;
}

std::optional<EventType> classify_pair(const InclusionPair& ip, std::size_t size_from, std::size_t size_to,
                                       int matches_forward, int matches_backward, const Thresholds& th) {
    const bool fwd = ip.forward >= th.alpha;
    const bool bwd = ip.backward >= th.beta;

    if (fwd && bwd && size_from == size_to) return EventType::Continuing;
    if (!fwd && bwd && size_from >= size_to)
        return matches_forward > 1 ? EventType::Splitting : EventType::Shrinking;
    if (fwd && bwd && size_from > size_to) return EventType::Shrinking;
    if (fwd && !bwd && size_from >= size_to) {
        if (matches_forward == 1) return EventType::Shrinking;
        if (matches_forward > 1) return EventType::Splitting;
    }
    if (fwd && !bwd && size_from <= size_to)
        return matches_backward > 1 ? EventType::Merging : EventType::Growing;
    if (fwd && bwd && size_from < size_to) return EventType::Growing;
    if (!fwd && bwd && size_from <= size_to) {
        if (matches_backward == 1) return EventType::Growing;
        if (matches_backward > 1) return EventType::Merging;
    }
    return std::nullopt;
}

std::vector<EvolutionEvent> detect_forming_dissolving(const GroupingSnapshot& prev, const GroupingSnapshot& next,
                                                      const InclusionTable& table, const Thresholds& th) {
    if (table.rows() != prev.groups.size() || table.cols() != next.groups.size())
        throw InvalidInput("inclusion table does not cover every cross pair");
    auto negligible = [&th](const InclusionPair& p) {
        return p.forward < th.dissolve_floor && p.backward < th.dissolve_floor;
    };

    std::vector<EvolutionEvent> events;
    for (std::size_t i = 0; i < table.rows(); ++i) {
        bool vanished = true;
        for (std::size_t j = 0; j < table.cols() && vanished; ++j) vanished = negligible(table.at(i, j));
        if (!vanished) continue;
        EvolutionEvent e;
        e.timeframe_from = prev.timeframe_index;
        e.group_from = prev.groups[i].id();
        e.event_type = EventType::Dissolving;
        e.size_from = prev.groups[i].size();
        events.push_back(std::move(e));
    }
    for (std::size_t j = 0; j < table.cols(); ++j) {
        bool fresh = true;
        for (std::size_t i = 0; i < table.rows() && fresh; ++i) fresh = negligible(table.at(i, j));
        if (!fresh) continue;
        EvolutionEvent e;
        e.timeframe_from = prev.timeframe_index;
        e.group_to = next.groups[j].id();
        e.event_type = EventType::Forming;
        e.size_to = next.groups[j].size();
        events.push_back(std::move(e));
    }
    return events;
}

EvolutionEvent annotate_balance(EvolutionEvent event, std::span<const std::size_t> contributions,
                                double ratio_threshold) {
    if (event.event_type != EventType::Splitting && event.event_type != EventType::Merging)
        throw InvalidEvent("balance applies only to Splitting and Merging, not " +
                           std::string(to_string(event.event_type)));
    if (contributions.empty()) throw InvalidInput("balance needs at least one contribution");
    const auto [lo, hi] = std::minmax_element(contributions.begin(), contributions.end());
    const bool equal = *lo > 0 && static_cast<double>(*hi) / static_cast<double>(*lo) <= ratio_threshold;
    event.balance = equal ? Balance::Equal : Balance::Unequal;
    return event;
}

}  // namespace ged
