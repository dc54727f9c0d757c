#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "ged/temporal_network.hpp"

namespace ged {

using GroupId = std::string;

// A nonempty node set living in one timeframe. Construction enforces the
// nonempty invariant; members are kept sorted.
class Group {
public:
    Group(GroupId id, int timeframe_index, std::set<NodeId> members);

    const GroupId& id() const noexcept { return id_; }
    int timeframe_index() const noexcept { return timeframe_index_; }
    const std::set<NodeId>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(const NodeId& node) const { return members_.count(node) != 0; }

    bool operator==(const Group&) const = default;

private:
    GroupId id_;
    int timeframe_index_;
    std::set<NodeId> members_;
};

struct GroupingSnapshot {
    int timeframe_index = 1;
    std::vector<Group> groups;  // sorted by id

    const Group* find(const GroupId& id) const;
    bool operator==(const GroupingSnapshot&) const = default;
};

// Lines are `timeframe_index<TAB>group_id<TAB>node_id`. Duplicate triples
// collapse; malformed lines throw ParseError carrying the line number.
std::vector<GroupingSnapshot> load_groupings(std::istream& in);
std::vector<GroupingSnapshot> load_groupings_file(const std::string& path);

// Canonical form: sorted by timeframe, group id, node id.
void write_groupings(std::ostream& out, const std::vector<GroupingSnapshot>& groupings);

struct UnknownMember {
    int timeframe_index;
    GroupId group_id;
    NodeId node;
    bool operator==(const UnknownMember&) const = default;
};

struct ValidationReport {
    std::vector<UnknownMember> unknown_members;
    std::vector<int> orphan_indices;       // grouping indices with no snapshot
    std::vector<int> ungrouped_snapshots;  // snapshot indices with no grouping

    bool clean() const { return unknown_members.empty() && orphan_indices.empty() && ungrouped_snapshots.empty(); }
};

ValidationReport validate_groupings(const TemporalSocialNetwork& tsn, const std::vector<GroupingSnapshot>& groupings);

// Drops groups smaller than min_size; snapshots left empty are kept.
std::vector<GroupingSnapshot> filter_min_size(std::vector<GroupingSnapshot> groupings, std::size_t min_size);

// Seeded asynchronous label propagation treating edges as undirected.
// Ties go to the smallest label; singleton classes are discarded.
GroupingSnapshot label_propagation(const Snapshot& s, std::uint64_t seed, int max_sweeps = 100);

}  // namespace ged
