#include "ged/event_log_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "ged/errors.hpp"

namespace ged {

using nlohmann::json;

namespace {

constexpr const char* kColumns[] = {"timeframe_from", "group_from", "group_to",        "event_type",
                                    "i_forward",      "i_backward", "size_from",       "size_to",
                                    "matches_forward", "matches_backward", "balance"};

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

template <typename T>
T required(const json& obj, const char* key) {
    if (!obj.contains(key)) throw ParseError(std::string("event is missing '") + key + "'", 0);
    return obj.at(key).get<T>();
}

template <typename T>
std::optional<T> nullable(const json& obj, const char* key) {
    if (!obj.contains(key)) throw ParseError(std::string("event is missing '") + key + "'", 0);
    const auto& v = obj.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<T>();
}

}  // namespace

double round_inclusion(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

std::string events_to_json(const std::vector<EvolutionEvent>& events) {
    auto arr = json::array();
    for (const auto& e : events) {
        json obj = json::object();
        obj["timeframe_from"] = e.timeframe_from;
        obj["group_from"] = e.group_from ? json(*e.group_from) : json(nullptr);
        obj["group_to"] = e.group_to ? json(*e.group_to) : json(nullptr);
        obj["event_type"] = std::string(to_string(e.event_type));
        obj["i_forward"] = e.inclusion ? json(round_inclusion(e.inclusion->forward)) : json(nullptr);
        obj["i_backward"] = e.inclusion ? json(round_inclusion(e.inclusion->backward)) : json(nullptr);
        obj["size_from"] = e.size_from;
        obj["size_to"] = e.size_to;
        obj["matches_forward"] = e.matches_forward;
        obj["matches_backward"] = e.matches_backward;
        obj["balance"] = e.balance ? json(std::string(to_string(*e.balance))) : json(nullptr);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::vector<EvolutionEvent> events_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("malformed event log: ") + err.what(), 0);
    }
    if (!doc.is_array()) throw ParseError("event log must be a JSON array", 0);

    std::vector<EvolutionEvent> events;
    try {
        for (const auto& obj : doc) {
            if (!obj.is_object()) throw ParseError("event log entries must be objects", 0);
            EvolutionEvent e;
            e.timeframe_from = required<int>(obj, "timeframe_from");
            e.group_from = nullable<std::string>(obj, "group_from");
            e.group_to = nullable<std::string>(obj, "group_to");
            const auto type_name = required<std::string>(obj, "event_type");
            const auto type = parse_event_type(type_name);
            if (!type) throw ParseError("unknown event type '" + type_name + "'", 0);
            e.event_type = *type;
            const auto fwd = nullable<double>(obj, "i_forward");
            const auto bwd = nullable<double>(obj, "i_backward");
            if (fwd.has_value() != bwd.has_value()) throw ParseError("inclusion values must be both present or both null", 0);
            if (fwd) e.inclusion = InclusionPair{*fwd, *bwd};
            e.size_from = required<std::size_t>(obj, "size_from");
            e.size_to = required<std::size_t>(obj, "size_to");
            e.matches_forward = required<int>(obj, "matches_forward");
            e.matches_backward = required<int>(obj, "matches_backward");
            if (const auto b = nullable<std::string>(obj, "balance")) {
                e.balance = parse_balance(*b);
                if (!e.balance) throw ParseError("unknown balance '" + *b + "'", 0);
            }
            const bool lifecycle = e.event_type == EventType::Forming || e.event_type == EventType::Dissolving;
            if ((e.event_type == EventType::Forming) == e.group_from.has_value() ||
                (e.event_type == EventType::Dissolving) == e.group_to.has_value() || lifecycle == fwd.has_value())
                throw ParseError("event '" + type_name + "' has inconsistent group/inclusion fields", 0);
            events.push_back(std::move(e));
        }
    } catch (const json::exception& err) {
        throw ParseError(std::string("malformed event field: ") + err.what(), 0);
    }
    return events;
}

std::string events_to_csv(const std::vector<EvolutionEvent>& events) {
    std::ostringstream out;
    for (std::size_t c = 0; c < std::size(kColumns); ++c) out << (c ? "," : "") << kColumns[c];
    out << '\n';
    for (const auto& e : events) {
        out << e.timeframe_from << ',' << (e.group_from ? csv_field(*e.group_from) : "") << ','
            << (e.group_to ? csv_field(*e.group_to) : "") << ',' << to_string(e.event_type) << ','
            << (e.inclusion ? format_number(e.inclusion->forward) : "") << ','
            << (e.inclusion ? format_number(e.inclusion->backward) : "") << ',' << e.size_from << ',' << e.size_to
            << ',' << e.matches_forward << ',' << e.matches_backward << ','
            << (e.balance ? std::string(to_string(*e.balance)) : "") << '\n';
    }
    return out.str();
}

EventLog log_from_events(std::vector<EvolutionEvent> events) {
    EventLog log;
    for (const auto& e : events) {
        if (e.group_from) log.instances.push_back({e.timeframe_from, *e.group_from, e.size_from});
        if (e.group_to) log.instances.push_back({e.timeframe_from + 1, *e.group_to, e.size_to});
    }
    std::sort(log.instances.begin(), log.instances.end());
    log.instances.erase(std::unique(log.instances.begin(), log.instances.end(),
                                    [](const auto& a, const auto& b) {
                                        return a.timeframe_index == b.timeframe_index && a.id == b.id;
                                    }),
                        log.instances.end());
    std::stable_sort(events.begin(), events.end(), canonical_less);
    log.events = std::move(events);
    return log;
}

}  // namespace ged
