#ifndef HDGAME_JSON_IO_HPP
#define HDGAME_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "hdgame/experiments.hpp"
#include "hdgame/probability.hpp"
#include "hdgame/proximity.hpp"
#include "hdgame/types.hpp"

namespace hdgame {

using json = nlohmann::json;

json to_json(const GameSpec& game);
// Parses and validates; diagnostics name the offending field.
GameSpec game_from_json(const json& j);

json to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const json& j);

json to_json(const ChoiceModel& model);
json to_json(const proximity::EquilibriumReport& report);
json to_json(const proximity::ProximityConstruction& c);
json to_json(const probability::FixedPointState& s);
json to_json(const probability::ThresholdResult& r);

json to_json(const experiments::LinearSourceSpec& s);
experiments::LinearSourceSpec linear_source_from_json(const json& j);

// File helpers; throw input_error on I/O or parse failure.
json load_json_file(const std::string& path);
GameSpec load_game(const std::string& path);
StrategyProfile load_profile(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hdgame

#endif
