#ifndef HDGAME_GAME_CORE_HPP
#define HDGAME_GAME_CORE_HPP

#include <cstdint>

#include "hdgame/parallel.hpp"
#include "hdgame/simplex.hpp"
#include "hdgame/types.hpp"

namespace hdgame {

// (theta - theta_k)^T Sigma_k (theta - theta_k)
double mahalanobis_sq(const Vector& theta, const DataSource& source);

LossMatrix loss_matrix(const StrategyProfile& profile, const GameSpec& game);

// Proximity choice over one loss column: 1/|argmin| mass on every player
// within tie_tol of the minimum.
Vector choose_prox(const Vector& losses, double tie_tol = tol::tie);

// Logit choice: softmax(-losses/t) with max-subtraction.
Vector choose_prob(const Vector& losses, double t);

Vector utilities_from_losses(const Matrix& losses, const Vector& weights,
                             const ChoiceModel& model);

Vector utilities(const StrategyProfile& profile, const GameSpec& game,
                 const ChoiceModel& model);

// theta_bar(q) = (sum_k q_k Sigma_k)^-1 (sum_k q_k Sigma_k theta_k).
// Per-game precomputation for the hot paths (fixed-point loops, grids).
class WeightedMinimizer {
 public:
  explicit WeightedMinimizer(const GameSpec& game);
  Vector operator()(const Vector& q) const;

 private:
  std::vector<Matrix> sigmas_;
  std::vector<Vector> sigma_thetas_;  // Sigma_k * theta_k
  int dim_;
};

Vector weighted_minimizer(const MixtureWeights& q, const GameSpec& game);

// theta_bar(w): the strategy minimizing the w-weighted loss over all sources.
Vector monopoly_strategy(const GameSpec& game);

double ell_max_default_step(int K);

// Max loss of any grid strategy theta_bar(q) on any source. With equal
// covariances the losses are convex over the convex hull of the thetas, so
// the vertex values are evaluated exactly as well.
double ell_max_estimate(const GameSpec& game, double grid_step,
                        Execution exec = Execution::Parallel);

// Assumption: for i != j, no source k sees equal distances to theta_i and
// theta_j.
bool check_distinct_distances(const GameSpec& game, double tol);

struct InjectivityResult {
  bool exact = false;  // true: certified (equal-covariance rank test);
                       // false: sampling heuristic, non-certifying
  bool holds = false;
};

// Injectivity of q -> theta_bar(q). Certified only when all covariances
// coincide (affine independence of the thetas); otherwise a randomized,
// non-certifying probe.
InjectivityResult check_injectivity(const GameSpec& game, int trials,
                                    std::uint64_t rng_seed);

}  // namespace hdgame

#endif
