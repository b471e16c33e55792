#include "hdgame/experiments.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "hdgame/rng.hpp"

namespace hdgame::experiments {

namespace {

std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

}  // namespace

GameSpec gen_random_game(int K, int D, std::uint64_t seed) {
  if (K < 2) throw input_error("gen_random_game: K must be >= 2");
  if (D < 1) throw input_error("gen_random_game: D must be >= 1");
  Rng rng(split_seed(seed, 0x67616d65ULL));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    GameSpec game;
    game.dimension = D;
    game.seed = seed;

    std::vector<Vector> thetas(K);
    for (int k = 0; k < K; ++k) {
      thetas[k].resize(D);
      for (int d = 0; d < D; ++d) thetas[k][d] = rng.uniform(-1.0, 1.0);
    }
    bool separated = true;
    for (int i = 0; i < K && separated; ++i)
      for (int j = i + 1; j < K; ++j)
        if ((thetas[i] - thetas[j]).norm() < 0.1) {
          separated = false;
          break;
        }
    if (!separated) continue;

    Vector w(K);
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
      w[k] = rng.uniform01();
      sum += w[k];
    }
    w /= sum;
    std::sort(w.data(), w.data() + K, std::greater<double>());
    bool weights_ok = true;
    for (int k = 1; k < K; ++k)
      if (w[k - 1] - w[k] <= 1e-6) weights_ok = false;
    if (K == 2 && w[1] < 0.1) weights_ok = false;
    if (!weights_ok) continue;

    for (int k = 0; k < K; ++k) {
      const Matrix q = random_orthogonal(D, rng);
      Vector lam(D);
      for (int d = 0; d < D; ++d) lam[d] = 1.0 - 0.9 * rng.uniform01();
      Matrix sigma = q * lam.asDiagonal() * q.transpose();
      sigma = 0.5 * (sigma + sigma.transpose());
      game.sources.push_back({thetas[k], sigma, w[k]});
    }

    try {
      game.validate();
    } catch (const input_error&) {
      continue;
    }
    if (!check_distinct_distances(game, 1e-6)) continue;
    if (!check_injectivity(game, 64, split_seed(seed, 0x636865636bULL)).holds)
      continue;
    return game;
  }
  throw infeasible_error(
      "gen_random_game: sampling budget (1000 attempts) exhausted");
}

std::vector<SweepRow> sweep_critical_temperatures(
    const std::vector<GameSpec>& games, const std::vector<int>& N_values,
    double resolution, double grid_step, Execution exec) {
  const int G = static_cast<int>(games.size());
  const int M = static_cast<int>(N_values.size());
  std::vector<int> sorted_n = N_values;
  std::sort(sorted_n.begin(), sorted_n.end());

  std::vector<double> ell(static_cast<std::size_t>(G));
  for (int g = 0; g < G; ++g)
    ell[static_cast<std::size_t>(g)] = ell_max_estimate(
        games[static_cast<std::size_t>(g)],
        ell_max_default_step(games[static_cast<std::size_t>(g)].num_sources()),
        exec);

  std::vector<SweepRow> rows(static_cast<std::size_t>(G * M));
  // Cells are independent; rows are indexed by (game, N) so the output order
  // never depends on the schedule. Cells run serial kernels internally.
  const long total = static_cast<long>(G) * M;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Execution::Parallel)
#endif
  for (long cell = 0; cell < total; ++cell) {
    const int g = static_cast<int>(cell / M);
    const int i = static_cast<int>(cell % M);
    const GameSpec& game = games[static_cast<std::size_t>(g)];
    SweepRow row;
    row.game_id = g;
    row.N = sorted_n[static_cast<std::size_t>(i)];
    row.ell_max = ell[static_cast<std::size_t>(g)];
    try {
      const auto homo = probability::threshold_homo_t(
          game, row.N, resolution, grid_step, Execution::Serial);
      row.homo_threshold_frac = homo.threshold_t / (2.0 * homo.ell_max_ref);
      const auto hetero = probability::max_hetero_t(
          game, row.N, resolution, grid_step, Execution::Serial);
      if (hetero) {
        row.hetero_found = true;
        row.hetero_max_frac =
            hetero->threshold_t / (2.0 * hetero->ell_max_ref);
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows[static_cast<std::size_t>(cell)] = std::move(row);
  }
  return rows;
}

std::vector<std::pair<double, double>> deviation_curve(
    const GameSpec& game, const StrategyProfile& profile, int player, double t,
    double alpha_step) {
  if (game.num_sources() != 2)
    throw input_error("deviation_curve: the alpha parameterization needs K = 2");
  validate_profile(profile, game);
  if (player < 0 || player >= profile.num_players())
    throw input_error("deviation_curve: player index out of range");
  const long m = simplex_levels(alpha_step);
  const CandidateSet cs = CandidateSet::build(game, alpha_step);
  const Matrix losses = loss_matrix(profile, game).values;
  const Vector util = deviation_utilities(
      player, losses, cs, game.weights(), ChoiceModel::probability(t));
  // Grid candidates enumerate q = (c/m, 1 - c/m) for c = 0..m, then the two
  // appended vertices; report the alpha-sorted grid portion.
  std::vector<std::pair<double, double>> curve;
  curve.reserve(static_cast<std::size_t>(m) + 1);
  for (long c = 0; c <= m; ++c)
    curve.emplace_back(cs.coords[static_cast<std::size_t>(c)].q[0],
                       util[static_cast<long>(c)]);
  return curve;
}

McResult linear_mc_validate(const LinearSourceSpec& source,
                            const Vector& beta_hat, long samples,
                            std::uint64_t seed) {
  const int D = static_cast<int>(source.beta.size());
  if (beta_hat.size() != D)
    throw input_error("linear_mc_validate: beta_hat dimension mismatch");
  if (source.sigma_x.rows() != D || source.sigma_x.cols() != D)
    throw input_error("linear_mc_validate: sigma_x must be DxD");
  if (source.noise_sd < 0.0)
    throw input_error("linear_mc_validate: noise_sd must be >= 0");
  if (samples < 1000)
    throw input_error("linear_mc_validate: need at least 1000 samples");
  Eigen::LLT<Matrix> llt(source.sigma_x);
  if (llt.info() != Eigen::Success)
    throw input_error("linear_mc_validate: sigma_x is not positive definite");
  const Matrix chol = llt.matrixL();

  Rng rng(split_seed(seed, 0x6c696e6dULL));
  const Vector delta = beta_hat - source.beta;
  double mean = 0.0, m2 = 0.0;
  Vector z(D);
  for (long i = 0; i < samples; ++i) {
    for (int d = 0; d < D; ++d) z[d] = rng.normal();
    const Vector x = chol * z;
    const double eps = source.noise_sd * rng.normal();
    const double resid = delta.dot(x) - eps;
    const double sq = resid * resid;
    const double d1 = sq - mean;
    mean += d1 / static_cast<double>(i + 1);
    m2 += d1 * (sq - mean);
  }
  McResult res;
  res.empirical_mse = mean;
  res.predicted = delta.dot(source.sigma_x * delta) +
                  source.noise_sd * source.noise_sd;
  res.std_err = std::sqrt(m2 / static_cast<double>(samples - 1) /
                          static_cast<double>(samples));
  return res;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "game_id,N,ell_max,homo_threshold_frac,hetero_max_frac,hetero_found,"
      "error\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.game_id) + "," + std::to_string(r.N) + "," +
           fmt9(r.ell_max) + ",";
    if (r.homo_threshold_frac) out += fmt9(*r.homo_threshold_frac);
    out += ",";
    if (r.hetero_max_frac) out += fmt9(*r.hetero_max_frac);
    out += ",";
    out += r.hetero_found ? "1" : "0";
    out += "," + sanitize(r.error) + "\n";
  }
  return out;
}

std::string curve_csv(const std::vector<std::pair<double, double>>& curve) {
  std::string out = "alpha,utility\n";
  for (const auto& [alpha, utility] : curve)
    out += fmt9(alpha) + "," + fmt9(utility) + "\n";
  return out;
}

}  // namespace hdgame::experiments
