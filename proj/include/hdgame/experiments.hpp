#ifndef HDGAME_EXPERIMENTS_HPP
#define HDGAME_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdgame/parallel.hpp"
#include "hdgame/probability.hpp"
#include "hdgame/types.hpp"

namespace hdgame::experiments {

struct SweepRow {
  int game_id = 0;
  int N = 0;
  double ell_max = 0.0;
  std::optional<double> homo_threshold_frac;  // t_min / (2*ell_max)
  std::optional<double> hetero_max_frac;      // largest verifying t, same scale
  bool hetero_found = false;
  std::string error;  // per-cell failure, empty on success
};

struct LinearSourceSpec {
  Vector beta;
  Matrix sigma_x;
  double noise_sd = 0.0;
};

// Random game in the style of the synthetic study: covariances Q diag(lam) Q^T
// with Haar Q and eigenvalues in (0.1, 1], thetas uniform in [-1,1]^D with
// 0.1 separation, weights sampled on the simplex and sorted (w_2 >= 0.1 when
// K = 2), re-drawn until the distinct-distance and injectivity checks pass.
// Deterministic in the seed; gives up after 1000 attempts.
GameSpec gen_random_game(int K, int D, std::uint64_t seed);

// One row per (game, N): homogeneous threshold and the largest verifying
// heterogeneous t. Cells are independent and run in parallel; rows come out
// sorted by (game_id, N) so the output bytes never depend on thread count.
std::vector<SweepRow> sweep_critical_temperatures(
    const std::vector<GameSpec>& games, const std::vector<int>& N_values,
    double resolution, double grid_step = 0.0,
    Execution exec = Execution::Parallel);

// Utility of `player` deviating to theta_bar((alpha, 1-alpha)) with everyone
// else fixed, sampled over the alpha grid. K = 2 only.
std::vector<std::pair<double, double>> deviation_curve(
    const GameSpec& game, const StrategyProfile& profile, int player, double t,
    double alpha_step);

struct McResult {
  double empirical_mse = 0.0;
  double predicted = 0.0;  // d_M^2(beta_hat, beta; Sigma_x^-1) + sigma^2
  double std_err = 0.0;
};

McResult linear_mc_validate(const LinearSourceSpec& source,
                            const Vector& beta_hat, long samples,
                            std::uint64_t seed);

// CSV emission; all floats printed with 9 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string curve_csv(const std::vector<std::pair<double, double>>& curve);

}  // namespace hdgame::experiments

#endif
