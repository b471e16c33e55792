#include "hdgame/game_core.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "hdgame/rng.hpp"

namespace hdgame {

double mahalanobis_sq(const Vector& theta, const DataSource& source) {
  if (theta.size() != source.theta.size())
    throw input_error("mahalanobis_sq: dimension mismatch (" +
                      std::to_string(theta.size()) + " vs " +
                      std::to_string(source.theta.size()) + ")");
  const Vector d = theta - source.theta;
  // the quadratic form is nonnegative in exact arithmetic; clamp round-off
  return std::max(0.0, d.dot(source.sigma * d));
}

LossMatrix loss_matrix(const StrategyProfile& profile, const GameSpec& game) {
  const int N = profile.num_players();
  const int K = game.num_sources();
  Matrix values(N, K);
  for (int n = 0; n < N; ++n) {
    if (profile.strategies[n].size() != game.dimension)
      throw input_error("loss_matrix: strategy " + std::to_string(n) +
                        " has wrong dimension");
    for (int k = 0; k < K; ++k)
      values(n, k) = mahalanobis_sq(profile.strategies[n], game.sources[k]);
  }
  return {values};
}

Vector choose_prox(const Vector& losses, double tie_tol) {
  const int N = static_cast<int>(losses.size());
  if (N == 0) throw input_error("choose_prox: empty loss column");
  if (tie_tol < 0.0) throw input_error("choose_prox: tie_tol must be >= 0");
  const double m = losses.minCoeff();
  int winners = 0;
  for (int n = 0; n < N; ++n)
    if (losses[n] <= m + tie_tol) ++winners;
  Vector g = Vector::Zero(N);
  for (int n = 0; n < N; ++n)
    if (losses[n] <= m + tie_tol) g[n] = 1.0 / winners;
  return g;
}

Vector choose_prob(const Vector& losses, double t) {
  const int N = static_cast<int>(losses.size());
  if (N == 0) throw input_error("choose_prob: empty loss column");
  if (!(t > 0.0)) throw input_error("choose_prob: temperature must be > 0");
  const double m = losses.minCoeff();
  Vector g(N);
  double sum = 0.0;
  for (int n = 0; n < N; ++n) {
    g[n] = std::exp(-(losses[n] - m) / t);
    sum += g[n];
  }
  return g / sum;
}

Vector utilities_from_losses(const Matrix& losses, const Vector& weights,
                             const ChoiceModel& model) {
  const int N = static_cast<int>(losses.rows());
  const int K = static_cast<int>(losses.cols());
  Vector u = Vector::Zero(N);
  for (int k = 0; k < K; ++k) {
    const Vector g = model.kind == ChoiceKind::Proximity
                         ? choose_prox(losses.col(k))
                         : choose_prob(losses.col(k), model.temperature);
    u += weights[k] * g;
  }
  return u;
}

Vector utilities(const StrategyProfile& profile, const GameSpec& game,
                 const ChoiceModel& model) {
  return utilities_from_losses(loss_matrix(profile, game).values,
                               game.weights(), model);
}

WeightedMinimizer::WeightedMinimizer(const GameSpec& game)
    : dim_(game.dimension) {
  for (const DataSource& s : game.sources) {
    sigmas_.push_back(s.sigma);
    sigma_thetas_.push_back(s.sigma * s.theta);
  }
}

Vector WeightedMinimizer::operator()(const Vector& q) const {
  Matrix a = Matrix::Zero(dim_, dim_);
  Vector b = Vector::Zero(dim_);
  for (std::size_t k = 0; k < sigmas_.size(); ++k) {
    if (q[static_cast<int>(k)] == 0.0) continue;
    a += q[static_cast<int>(k)] * sigmas_[k];
    b += q[static_cast<int>(k)] * sigma_thetas_[k];
  }
  Eigen::LDLT<Matrix> ldlt(a);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1.0 / tol::max_condition)
    throw numeric_error(
        "weighted_minimizer: mixture matrix is singular or has condition "
        "number above 1e12");
  return ldlt.solve(b);
}

Vector weighted_minimizer(const MixtureWeights& q, const GameSpec& game) {
  validate_mixture(q);
  if (q.q.size() != game.num_sources())
    throw input_error("weighted_minimizer: mixture length != K");
  return WeightedMinimizer(game)(q.q);
}

Vector monopoly_strategy(const GameSpec& game) {
  return weighted_minimizer({game.weights()}, game);
}

double ell_max_default_step(int K) {
  if (K == 2) return 0.002;
  if (K <= 5) return 0.01;
  return 0.05;  // keeps the composition count tractable for many sources
}

namespace {
bool covariances_equal(const GameSpec& game) {
  for (int k = 1; k < game.num_sources(); ++k)
    if ((game.sources[k].sigma - game.sources[0].sigma)
            .cwiseAbs()
            .maxCoeff() > tol::symmetry)
      return false;
  return true;
}
}  // namespace

double ell_max_estimate(const GameSpec& game, double grid_step,
                        Execution exec) {
  const int K = game.num_sources();
  const std::vector<MixtureWeights> grid = simplex_grid(K, grid_step);
  const WeightedMinimizer minimize(game);
  const long C = static_cast<long>(grid.size());
  double best = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : best) schedule(static) \
    if (exec == Execution::Parallel)
#endif
  for (long c = 0; c < C; ++c) {
    const Vector theta = minimize(grid[static_cast<std::size_t>(c)].q);
    for (int k = 0; k < K; ++k)
      best = std::max(best, mahalanobis_sq(theta, game.sources[k]));
  }
  if (covariances_equal(game)) {
    // Convex losses over a convex hull peak at the vertices; evaluate exactly.
    for (int i = 0; i < K; ++i)
      for (int k = 0; k < K; ++k)
        best = std::max(best,
                        mahalanobis_sq(game.sources[i].theta, game.sources[k]));
  }
  return best;
}

bool check_distinct_distances(const GameSpec& game, double tol) {
  if (!(tol > 0.0)) throw input_error("check_distinct_distances: tol must be > 0");
  const int K = game.num_sources();
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < K; ++i)
      for (int j = i + 1; j < K; ++j) {
        const double di =
            std::sqrt(mahalanobis_sq(game.sources[i].theta, game.sources[k]));
        const double dj =
            std::sqrt(mahalanobis_sq(game.sources[j].theta, game.sources[k]));
        if (std::abs(di - dj) <= tol) return false;
      }
  return true;
}

InjectivityResult check_injectivity(const GameSpec& game, int trials,
                                    std::uint64_t rng_seed) {
  if (trials < 1) throw input_error("check_injectivity: trials must be >= 1");
  const int K = game.num_sources();
  const int D = game.dimension;
  if (covariances_equal(game)) {
    // Equal covariances: injectivity == affine independence of the thetas.
    Matrix diffs(D, K - 1);
    for (int k = 1; k < K; ++k)
      diffs.col(k - 1) = game.sources[k].theta - game.sources[0].theta;
    Eigen::ColPivHouseholderQR<Matrix> qr(diffs);
    qr.setThreshold(1e-10);
    return {true, qr.rank() == K - 1};
  }
  // Non-certifying probe: look for a collision theta_bar(q) == theta_bar(q').
  Rng rng(split_seed(rng_seed, 0x696e6a65ULL));
  const WeightedMinimizer minimize(game);
  auto sample_simplex = [&]() {
    Vector q(K);
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
      q[k] = -std::log(1.0 - rng.uniform01());
      sum += q[k];
    }
    return Vector(q / sum);
  };
  for (int trial = 0; trial < trials; ++trial) {
    const Vector q1 = sample_simplex();
    const Vector q2 = sample_simplex();
    if ((q1 - q2).cwiseAbs().maxCoeff() <= 1e-8) continue;
    if ((minimize(q1) - minimize(q2)).cwiseAbs().maxCoeff() <= 1e-8)
      return {false, false};
  }
  return {false, true};
}

}  // namespace hdgame
