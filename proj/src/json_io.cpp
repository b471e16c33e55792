#include "hdgame/json_io.hpp"

#include <fstream>
#include <sstream>

namespace hdgame {

namespace {

json vec_to_json(const Vector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json mat_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Vector vec_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw input_error(field + ": expected an array");
  Vector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) {
    const json& e = j[static_cast<std::size_t>(i)];
    if (!e.is_number())
      throw input_error(field + "[" + std::to_string(i) + "]: expected a number");
    v[i] = e.get<double>();
  }
  return v;
}

Matrix mat_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw input_error(field + ": expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw input_error(field + "[" + std::to_string(i) +
                        "]: expected a row of length " + std::to_string(cols));
    for (int c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number())
        throw input_error(field + "[" + std::to_string(i) + "][" +
                          std::to_string(c) + "]: expected a number");
      m(i, c) = e.get<double>();
    }
  }
  return m;
}

const json& require(const json& j, const std::string& key,
                    const std::string& context) {
  auto it = j.find(key);
  if (it == j.end())
    throw input_error(context + ": missing field \"" + key + "\"");
  return *it;
}

}  // namespace

json to_json(const GameSpec& game) {
  json sources = json::array();
  for (const DataSource& s : game.sources)
    sources.push_back({{"theta", vec_to_json(s.theta)},
                       {"sigma", mat_to_json(s.sigma)},
                       {"weight", s.weight}});
  json j{{"dimension", game.dimension}, {"sources", sources}};
  if (game.seed)
    j["seed"] = *game.seed;
  else
    j["seed"] = nullptr;
  return j;
}

GameSpec game_from_json(const json& j) {
  if (!j.is_object()) throw input_error("game: expected a JSON object");
  GameSpec game;
  const json& dim = require(j, "dimension", "game");
  if (!dim.is_number_integer())
    throw input_error("dimension: expected an integer");
  game.dimension = dim.get<int>();
  if (j.contains("seed") && !j["seed"].is_null()) {
    if (!j["seed"].is_number_integer())
      throw input_error("seed: expected an integer or null");
    game.seed = j["seed"].get<std::uint64_t>();
  }
  const json& sources = require(j, "sources", "game");
  if (!sources.is_array()) throw input_error("sources: expected an array");
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const std::string field = "sources[" + std::to_string(k) + "]";
    const json& s = sources[k];
    if (!s.is_object()) throw input_error(field + ": expected an object");
    DataSource src;
    src.theta = vec_from_json(require(s, "theta", field), field + ".theta");
    src.sigma = mat_from_json(require(s, "sigma", field), field + ".sigma");
    const json& wj = require(s, "weight", field);
    if (!wj.is_number()) throw input_error(field + ".weight: expected a number");
    src.weight = wj.get<double>();
    game.sources.push_back(std::move(src));
  }
  game.validate();
  return game;
}

json to_json(const StrategyProfile& profile) {
  json strategies = json::array();
  for (const Vector& s : profile.strategies) strategies.push_back(vec_to_json(s));
  json j{{"strategies", strategies}};
  if (profile.coords) {
    json coords = json::array();
    for (const MixtureWeights& q : *profile.coords)
      coords.push_back(vec_to_json(q.q));
    j["coords"] = coords;
  } else {
    j["coords"] = nullptr;
  }
  return j;
}

StrategyProfile profile_from_json(const json& j) {
  if (!j.is_object()) throw input_error("profile: expected a JSON object");
  StrategyProfile profile;
  const json& strategies = require(j, "strategies", "profile");
  if (!strategies.is_array() || strategies.empty())
    throw input_error("profile.strategies: expected a non-empty array");
  for (std::size_t n = 0; n < strategies.size(); ++n)
    profile.strategies.push_back(vec_from_json(
        strategies[n], "profile.strategies[" + std::to_string(n) + "]"));
  if (j.contains("coords") && !j["coords"].is_null()) {
    const json& coords = j["coords"];
    if (!coords.is_array())
      throw input_error("profile.coords: expected an array or null");
    std::vector<MixtureWeights> qs;
    for (std::size_t n = 0; n < coords.size(); ++n)
      qs.push_back({vec_from_json(coords[n],
                                  "profile.coords[" + std::to_string(n) + "]")});
    profile.coords = std::move(qs);
  }
  return profile;
}

json to_json(const ChoiceModel& model) {
  if (model.kind == ChoiceKind::Proximity) return json{{"kind", "proximity"}};
  return json{{"kind", "probability"}, {"temperature", model.temperature}};
}

json to_json(const proximity::EquilibriumReport& report) {
  return json{{"profile", to_json(report.profile)},
              {"verified", report.verified},
              {"classification", proximity::to_string(report.classification)},
              {"utilities", vec_to_json(report.utilities)},
              {"grid_step", report.grid_step},
              {"best_deviation_gain", report.best_deviation_gain},
              {"model", to_json(report.model)},
              {"certificate", "grid-relative epsilon-PNE"}};
}

json to_json(const proximity::ProximityConstruction& c) {
  json j{{"k0", c.k0},
         {"effective_weights", vec_to_json(c.effective_weights)},
         {"z_star", c.z_star},
         {"counts", c.counts},
         {"n_range", {{"lo", c.n_range.lo}}}};
  if (c.n_range.hi)
    j["n_range"]["hi"] = *c.n_range.hi;
  else
    j["n_range"]["hi"] = nullptr;
  return j;
}

json to_json(const probability::FixedPointState& s) {
  json coords = json::array();
  for (const MixtureWeights& q : s.coords) coords.push_back(vec_to_json(q.q));
  return json{{"coords", coords},
              {"iteration", s.iteration},
              {"residual", s.residual}};
}

json to_json(const probability::ThresholdResult& r) {
  return json{{"threshold_t", r.threshold_t},
              {"threshold_frac", r.threshold_t / (2.0 * r.ell_max_ref)},
              {"grid", r.grid},
              {"certified_by", probability::to_string(r.certified_by)},
              {"ell_max_ref", r.ell_max_ref}};
}

json to_json(const experiments::LinearSourceSpec& s) {
  return json{{"beta", vec_to_json(s.beta)},
              {"sigma_x", mat_to_json(s.sigma_x)},
              {"noise_sd", s.noise_sd}};
}

experiments::LinearSourceSpec linear_source_from_json(const json& j) {
  if (!j.is_object()) throw input_error("linear source: expected a JSON object");
  experiments::LinearSourceSpec s;
  s.beta = vec_from_json(require(j, "beta", "linear source"), "beta");
  s.sigma_x = mat_from_json(require(j, "sigma_x", "linear source"), "sigma_x");
  const json& noise = require(j, "noise_sd", "linear source");
  if (!noise.is_number()) throw input_error("noise_sd: expected a number");
  s.noise_sd = noise.get<double>();
  return s;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw input_error(path + ": " + e.what());
  }
  return j;
}

GameSpec load_game(const std::string& path) {
  return game_from_json(load_json_file(path));
}

StrategyProfile load_profile(const std::string& path) {
  return profile_from_json(load_json_file(path));
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot open file for writing: " + path);
  out << text;
  if (!out) throw input_error("failed writing file: " + path);
}

}  // namespace hdgame
