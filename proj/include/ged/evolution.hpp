#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ged/grouping.hpp"
#include "ged/importance.hpp"
#include "ged/temporal_network.hpp"

namespace ged {

struct Thresholds {
    double alpha = 0.5;
    double beta = 0.5;
    // Both inclusions below this against every partner means the group
    // vanished (dissolving) or appeared from nothing (forming).
    double dissolve_floor = 0.10;
    // A cross-timeframe pair is a match when either inclusion reaches it.
    double match_floor = 0.10;

    // Throws ConfigError on hard violations. Returns warnings for alpha or
    // beta outside the recommended [0.5, 1] band.
    std::vector<std::string> validate() const;
};

struct InclusionPair {
    double forward = 0.0;   // I(G1, G2)
    double backward = 0.0;  // I(G2, G1)

    bool operator==(const InclusionPair&) const = default;
};

enum class EventType { Continuing, Shrinking, Growing, Splitting, Merging, Dissolving, Forming };
enum class Balance { Equal, Unequal };

std::string_view to_string(EventType type);
std::string_view to_string(Balance balance);
std::optional<EventType> parse_event_type(std::string_view text);
std::optional<Balance> parse_balance(std::string_view text);

struct EvolutionEvent {
    int timeframe_from = 0;
    std::optional<GroupId> group_from;  // absent for Forming
    std::optional<GroupId> group_to;    // absent for Dissolving
    EventType event_type = EventType::Continuing;
    std::optional<InclusionPair> inclusion;  // absent for Forming/Dissolving
    std::size_t size_from = 0;
    std::size_t size_to = 0;
    int matches_forward = 0;
    int matches_backward = 0;
    std::optional<Balance> balance;  // Splitting/Merging only

    bool operator==(const EvolutionEvent&) const = default;
};

// Canonical log order: timeframe, source id, target id (absent ids first).
bool canonical_less(const EvolutionEvent& a, const EvolutionEvent& b);

struct GroupInstance {
    int timeframe_index = 0;
    GroupId id;
    std::size_t size = 0;

    auto operator<=>(const GroupInstance&) const = default;
};

struct EventLog {
    std::vector<GroupInstance> instances;  // every tracked group, sorted
    std::vector<EvolutionEvent> events;    // canonical order
};

// Inclusion of g1 in g2: the shared fraction of g1's members times the
// shared fraction of g1's total importance. Both factors use g1's scores.
double inclusion(const Group& g1, const Group& g2, const ImportanceScores& scores_g1);

struct MatchResult {
    int count = 0;
    std::vector<GroupId> matched;
};

// Groups h in `others` with I(g, h) >= floor or I(h, g) >= floor.
// others_scores[k] belongs to others[k].
MatchResult match_count(const Group& g, const ImportanceScores& g_scores, std::span<const Group> others,
                        std::span<const ImportanceScores> others_scores, double floor);

// Applies the ordered event rules to one pair. nullopt means no event for
// this pair; forming and dissolving are decided across all pairs instead.
std::optional<EventType> classify_pair(const InclusionPair& ip, std::size_t size_from, std::size_t size_to,
                                       int matches_forward, int matches_backward, const Thresholds& th);

// Dense |prev| x |next| table; at(i, j) = {I(prev_i, next_j), I(next_j, prev_i)}.
class InclusionTable {
public:
    InclusionTable(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    InclusionPair& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
    const InclusionPair& at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<InclusionPair> cells_;
};

// Dissolving for prev groups and Forming for next groups whose inclusions
// with every group on the other side are both below th.dissolve_floor.
std::vector<EvolutionEvent> detect_forming_dissolving(const GroupingSnapshot& prev, const GroupingSnapshot& next,
                                                      const InclusionTable& table, const Thresholds& th);

// Equal when max/min of the overlap sizes is within ratio_threshold.
EvolutionEvent annotate_balance(EvolutionEvent event, std::span<const std::size_t> contributions,
                                double ratio_threshold);

struct TrackOptions {
    Thresholds thresholds;
    double balance_ratio = 1.5;
    unsigned threads = 1;

    std::vector<std::string> validate() const;
};

// Runs the full matching over every consecutive timeframe pair. Timeframes
// without a grouping entry are treated as having no groups.
EventLog track_evolution(const TemporalSocialNetwork& tsn, const std::vector<GroupingSnapshot>& groupings,
                         const ImportanceProvider& importance, const TrackOptions& options = {});

}  // namespace ged
