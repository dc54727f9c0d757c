#pragma once

#include <string>
#include <vector>

#include "ged/evolution.hpp"

namespace ged {

// JSON array of event objects. Absent groups, inclusions and balance are
// written as null. Inclusion values keep 12 significant digits.
std::string events_to_json(const std::vector<EvolutionEvent>& events);

// Throws ParseError on malformed or truncated input.
std::vector<EvolutionEvent> events_from_json(const std::string& text);

// Same columns as the JSON keys, header first; absent values are empty.
std::string events_to_csv(const std::vector<EvolutionEvent>& events);

// Rebuilds a log whose instances are the event endpoints.
EventLog log_from_events(std::vector<EvolutionEvent> events);

double round_inclusion(double value);

}  // namespace ged
