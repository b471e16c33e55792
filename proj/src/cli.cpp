#include "hdgame/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hdgame/experiments.hpp"
#include "hdgame/json_io.hpp"
#include "hdgame/parallel.hpp"
#include "hdgame/probability.hpp"
#include "hdgame/proximity.hpp"
#include "hdgame/rng.hpp"

namespace hdgame::cli {

namespace {

void emit(const std::string& text, const std::string& out_path,
          std::ostream& out) {
  if (out_path.empty() || out_path == "-")
    out << text;
  else
    write_text_file(out_path, text);
}

void emit_json(const json& j, const std::string& out_path, std::ostream& out) {
  emit(j.dump(2) + "\n", out_path, out);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

Vector parse_vector_flag(const std::string& s, const std::string& flag) {
  const auto parts = split_list(s);
  if (parts.empty()) throw input_error(flag + ": empty vector");
  Vector v(static_cast<int>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      v[static_cast<int>(i)] = std::stod(parts[i]);
    } catch (...) {
      throw input_error(flag + ": cannot parse \"" + parts[i] + "\"");
    }
  }
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Equilibrium computation for competition of model providers "
               "over heterogeneous data sources"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap worker threads (0 = default)");

  // gen-game
  auto* gen = app.add_subcommand("gen-game", "Generate a random game");
  int gen_k = 2, gen_d = 2;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--K", gen_k, "Number of data sources")->capture_default_str();
  gen->add_option("--D", gen_d, "Ambient dimension")->capture_default_str();
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // check-assumptions
  auto* check = app.add_subcommand("check-assumptions",
                                   "Check the game's regularity assumptions");
  std::string check_game, check_out;
  double check_tol = 1e-9;
  int check_trials = 200;
  std::uint64_t check_seed = 0;
  check->add_option("--game", check_game, "Game JSON path")->required();
  check->add_option("--out", check_out, "Output path (default stdout)");
  check->add_option("--tol", check_tol, "Distinct-distance tolerance")
      ->capture_default_str();
  check->add_option("--trials", check_trials, "Injectivity probe trials")
      ->capture_default_str();
  check->add_option("--seed", check_seed, "Injectivity probe seed")
      ->capture_default_str();

  // find-prox
  auto* fprox = app.add_subcommand(
      "find-prox", "Construct the proximity-model PNE for N providers");
  std::string fprox_game, fprox_out;
  int fprox_n = 0, fprox_k0 = 0;
  fprox->add_option("--game", fprox_game, "Game JSON path")->required();
  fprox->add_option("--N", fprox_n, "Number of providers")->required();
  fprox->add_option("--k0", fprox_k0,
                    "Number of dominant sources (default: K)");
  fprox->add_option("--out", fprox_out, "Output path (default stdout)");

  // find-hetero
  auto* fhet = app.add_subcommand(
      "find-hetero", "Fixed-point search for a heterogeneous candidate");
  std::string fhet_game, fhet_out;
  int fhet_n = 0, fhet_max_iter = 10000;
  double fhet_t = 0.0, fhet_tol = 1e-10;
  fhet->add_option("--game", fhet_game, "Game JSON path")->required();
  fhet->add_option("--N", fhet_n, "Number of providers")->required();
  fhet->add_option("--t", fhet_t, "Temperature")->required();
  fhet->add_option("--max-iter", fhet_max_iter, "Iteration cap")
      ->capture_default_str();
  fhet->add_option("--tol", fhet_tol, "Sup-norm convergence tolerance")
      ->capture_default_str();
  fhet->add_option("--out", fhet_out, "Output path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify",
                                    "Grid-certify a profile as an epsilon-PNE");
  std::string v_game, v_profile, v_model, v_out;
  double v_t = 0.0, v_grid = 0.0, v_tie = tol::tie;
  verify->add_option("--game", v_game, "Game JSON path")->required();
  verify->add_option("--profile", v_profile, "Profile JSON path")->required();
  verify->add_option("--model", v_model, "prox | prob")->required();
  verify->add_option("--t", v_t, "Temperature (probability model)");
  verify->add_option("--grid-step", v_grid,
                     "Deviation grid step (default 0.002 for K=2, else 0.01)");
  verify->add_option("--tie-tol", v_tie, "Proximity tie tolerance")
      ->capture_default_str();
  verify->add_option("--out", v_out, "Output path (default stdout)");

  // threshold-homo
  auto* th = app.add_subcommand(
      "threshold-homo", "Minimal t certifying the homogeneous candidate");
  std::string th_game, th_out;
  int th_n = 0;
  double th_res = 0.001, th_grid = 0.0;
  th->add_option("--game", th_game, "Game JSON path")->required();
  th->add_option("--N", th_n, "Number of providers")->required();
  th->add_option("--resolution", th_res, "t-grid resolution (fraction of 2*ell_max)")
      ->capture_default_str();
  th->add_option("--grid-step", th_grid, "Deviation grid step");
  th->add_option("--out", th_out, "Output path (default stdout)");

  // max-hetero-t
  auto* mh = app.add_subcommand(
      "max-hetero-t", "Largest t at which a heterogeneous PNE is produced");
  std::string mh_game, mh_out;
  int mh_n = 0;
  double mh_res = 0.001, mh_grid = 0.0;
  mh->add_option("--game", mh_game, "Game JSON path")->required();
  mh->add_option("--N", mh_n, "Number of providers")->required();
  mh->add_option("--resolution", mh_res, "t-grid resolution")
      ->capture_default_str();
  mh->add_option("--grid-step", mh_grid, "Deviation grid step");
  mh->add_option("--out", mh_out, "Output path (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Critical-temperature sweep over games and N values");
  std::string sw_games, sw_out;
  int sw_num_games = 0, sw_k = 2, sw_d = 2, sw_nmin = 2, sw_nmax = 30;
  std::uint64_t sw_seed = 0;
  bool sw_seed_set = false;
  double sw_res = 0.001, sw_grid = 0.0;
  sweep->add_option("--games", sw_games,
                    "Comma-separated game JSON paths (alternative to --num-games)");
  sweep->add_option("--num-games", sw_num_games,
                    "Generate this many games (requires --seed)");
  sweep->add_option("--seed", sw_seed, "Seed for generated games")
      ->each([&](const std::string&) { sw_seed_set = true; });
  sweep->add_option("--K", sw_k, "K for generated games")->capture_default_str();
  sweep->add_option("--D", sw_d, "D for generated games")->capture_default_str();
  sweep->add_option("--N-min", sw_nmin, "Smallest N")->capture_default_str();
  sweep->add_option("--N-max", sw_nmax, "Largest N")->capture_default_str();
  sweep->add_option("--resolution", sw_res, "t-grid resolution")
      ->capture_default_str();
  sweep->add_option("--grid-step", sw_grid, "Deviation grid step");
  sweep->add_option("--out", sw_out, "Output path (default stdout)");

  // curve
  auto* curve = app.add_subcommand(
      "curve", "Deviation utility curve over the alpha grid (K = 2)");
  std::string cu_game, cu_profile, cu_out;
  int cu_player = 0;
  double cu_t = 0.0, cu_step = 0.002;
  curve->add_option("--game", cu_game, "Game JSON path")->required();
  curve->add_option("--profile", cu_profile, "Profile JSON path")->required();
  curve->add_option("--player", cu_player, "Deviating player index")
      ->required();
  curve->add_option("--t", cu_t, "Temperature")->required();
  curve->add_option("--alpha-step", cu_step, "Alpha grid step")
      ->capture_default_str();
  curve->add_option("--out", cu_out, "Output path (default stdout)");

  // linear-validate
  auto* lin = app.add_subcommand(
      "linear-validate", "Monte-Carlo check of the linear-model loss identity");
  std::string lin_source, lin_beta_hat, lin_out;
  long lin_samples = 100000;
  std::uint64_t lin_seed = 0;
  lin->add_option("--source", lin_source, "Linear source JSON path")
      ->required();
  lin->add_option("--beta-hat", lin_beta_hat,
                  "Candidate coefficients, comma-separated")
      ->required();
  lin->add_option("--samples", lin_samples, "Monte-Carlo draws")
      ->capture_default_str();
  lin->add_option("--seed", lin_seed, "RNG seed")->required();
  lin->add_option("--out", lin_out, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  init_threads_from_env();
  if (threads > 0) set_thread_cap(threads);

  try {
    if (gen->parsed()) {
      const GameSpec game = experiments::gen_random_game(gen_k, gen_d, gen_seed);
      emit_json(to_json(game), gen_out, out);
    } else if (check->parsed()) {
      const GameSpec game = load_game(check_game);
      const bool distinct = check_distinct_distances(game, check_tol);
      const auto inj = check_injectivity(game, check_trials, check_seed);
      emit_json(json{{"distinct_distances", distinct},
                     {"injectivity",
                      {{"exact", inj.exact}, {"holds", inj.holds}}}},
                check_out, out);
    } else if (fprox->parsed()) {
      const GameSpec game = load_game(fprox_game);
      const int k0 = fprox_k0 > 0 ? fprox_k0 : game.num_sources();
      const auto construction =
          proximity::build_construction(game, fprox_n, k0);
      const StrategyProfile profile =
          proximity::construct_pne_prox(game, fprox_n, k0);
      emit_json(json{{"construction", to_json(construction)},
                     {"profile", to_json(profile)}},
                fprox_out, out);
    } else if (fhet->parsed()) {
      const GameSpec game = load_game(fhet_game);
      const auto outcome = probability::find_hetero_candidate(
          game, fhet_n, fhet_t, fhet_max_iter, fhet_tol);
      if (outcome.below_recommended_n)
        err << "warning: N is below the recommended lower bound "
               "sum_k floor(3 w_k / w_K); the candidate is exploratory\n";
      json j{{"converged", outcome.converged},
             {"below_recommended_n", outcome.below_recommended_n},
             {"state", to_json(outcome.state)}};
      j["profile"] = outcome.converged ? to_json(outcome.profile) : json();
      emit_json(j, fhet_out, out);
    } else if (verify->parsed()) {
      const GameSpec game = load_game(v_game);
      const StrategyProfile profile = load_profile(v_profile);
      const double step =
          v_grid > 0.0 ? v_grid
                       : probability::default_grid_step(game.num_sources());
      proximity::EquilibriumReport report;
      if (v_model == "prox") {
        report = proximity::verify_pne_prox(profile, game, step, v_tie);
      } else if (v_model == "prob") {
        if (!(v_t > 0.0))
          throw input_error("--t: required and must be > 0 for --model prob");
        report = probability::verify_pne_prob(profile, game, v_t, step);
      } else {
        throw input_error("--model: expected prox or prob");
      }
      emit_json(to_json(report), v_out, out);
    } else if (th->parsed()) {
      const GameSpec game = load_game(th_game);
      const auto result =
          probability::threshold_homo_t(game, th_n, th_res, th_grid);
      emit_json(to_json(result), th_out, out);
    } else if (mh->parsed()) {
      const GameSpec game = load_game(mh_game);
      const auto result = probability::max_hetero_t(game, mh_n, mh_res, mh_grid);
      json j{{"found", result.has_value()}};
      j["result"] = result ? to_json(*result) : json();
      emit_json(j, mh_out, out);
    } else if (sweep->parsed()) {
      std::vector<GameSpec> games;
      if (!sw_games.empty()) {
        for (const std::string& path : split_list(sw_games))
          games.push_back(load_game(path));
      } else if (sw_num_games > 0) {
        if (!sw_seed_set)
          throw input_error("--seed: required with --num-games");
        for (int g = 0; g < sw_num_games; ++g)
          games.push_back(experiments::gen_random_game(
              sw_k, sw_d, split_seed(sw_seed, static_cast<std::uint64_t>(g))));
      } else {
        throw input_error("sweep: pass --games or --num-games");
      }
      if (sw_nmin < 1 || sw_nmax < sw_nmin)
        throw input_error("--N-min/--N-max: need 1 <= N-min <= N-max");
      std::vector<int> n_values;
      for (int n = sw_nmin; n <= sw_nmax; ++n) n_values.push_back(n);
      const auto rows = experiments::sweep_critical_temperatures(
          games, n_values, sw_res, sw_grid);
      emit(experiments::sweep_csv(rows), sw_out, out);
    } else if (curve->parsed()) {
      const GameSpec game = load_game(cu_game);
      const StrategyProfile profile = load_profile(cu_profile);
      const auto points = experiments::deviation_curve(game, profile,
                                                       cu_player, cu_t, cu_step);
      emit(experiments::curve_csv(points), cu_out, out);
    } else if (lin->parsed()) {
      const auto source =
          linear_source_from_json(load_json_file(lin_source));
      const Vector beta_hat = parse_vector_flag(lin_beta_hat, "--beta-hat");
      const auto res =
          experiments::linear_mc_validate(source, beta_hat, lin_samples, lin_seed);
      emit_json(json{{"empirical_mse", res.empirical_mse},
                     {"predicted", res.predicted},
                     {"std_err", res.std_err},
                     {"within_3se",
                      std::abs(res.empirical_mse - res.predicted) <=
                          3.0 * res.std_err}},
                lin_out, out);
    }
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace hdgame::cli
