#ifndef HDGAME_PROBABILITY_HPP
#define HDGAME_PROBABILITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "hdgame/deviation.hpp"
#include "hdgame/proximity.hpp"
#include "hdgame/types.hpp"

namespace hdgame::probability {

struct FixedPointState {
  std::vector<MixtureWeights> coords;
  int iteration = 0;
  double residual = 0.0;  // sup-norm change in the last step
};

enum class ThresholdCertification { GridScan, Bisection };

std::string to_string(ThresholdCertification c);

struct ThresholdResult {
  double threshold_t = 0.0;
  std::string grid;  // description of the scanned set
  ThresholdCertification certified_by = ThresholdCertification::GridScan;
  double ell_max_ref = 0.0;  // ell_max; the scan is scaled by 2*ell_max_ref
};

// One step of the simplex-coordinate update: theta_n = theta_bar(q_n),
// logit shares p_{n,k}, then q'_{n,k} proportional to w_k p_{n,k}(1-p_{n,k}).
std::vector<MixtureWeights> map_M(const std::vector<MixtureWeights>& coords,
                                  const GameSpec& game, double t);

// N copies of theta_bar(w), coords all w.
StrategyProfile homo_candidate(const GameSpec& game, int N);

struct FixedPointOutcome {
  bool converged = false;
  StrategyProfile profile;  // populated when converged
  FixedPointState state;
  bool below_recommended_n = false;
  std::vector<int> source_counts;  // players initially assigned per source
};

// Iterates map_M from one-hot coordinates given by the proximity allocation
// until the sup-norm residual drops below tol or max_iter is hit.
FixedPointOutcome find_hetero_candidate(const GameSpec& game, int N, double t,
                                        int max_iter = 10000,
                                        double tol = 1e-10);

// Analytic gradient of u_n in player n's own strategy:
// -(2/t) sum_k w_k p_{n,k} (1 - p_{n,k}) Sigma_k (theta_n - theta_k).
Vector utility_gradient(int player, const StrategyProfile& profile,
                        const GameSpec& game, double t);

double default_grid_step(int K);  // 0.002 for K == 2, 0.01 otherwise

proximity::EquilibriumReport verify_pne_prob(
    const StrategyProfile& profile, const GameSpec& game, double t,
    double grid_step, Execution exec = Execution::Parallel);

// Minimal t on {resolution, 2*resolution, ..., 1} x (2*ell_max) at which the
// homogeneous candidate certifies. Monotone in t, so located by bisection.
// A failure at the top grid point is reported as a diagnostic error (the
// verification grid is too coarse).
ThresholdResult threshold_homo_t(const GameSpec& game, int N,
                                 double resolution = 0.001,
                                 double grid_step = 0.0,
                                 Execution exec = Execution::Parallel);

// Largest grid t at which the fixed-point candidate verifies as a
// heterogeneous PNE; scanned downward (no monotonicity available), so the
// result is a lower bound on the true supremum.
std::optional<ThresholdResult> max_hetero_t(const GameSpec& game, int N,
                                            double resolution = 0.001,
                                            double grid_step = 0.0,
                                            Execution exec =
                                                Execution::Parallel);

struct DuopolyProbResult {
  bool exists = false;
  StrategyProfile profile;  // both players at theta_bar(w) when exists
};

// N = 2: the only possible PNE is the homogeneous candidate, so verifying it
// decides the game at this t (up to grid certification).
DuopolyProbResult duopoly_prob_pne(const GameSpec& game, double t,
                                   double grid_step = 0.0,
                                   Execution exec = Execution::Parallel);

}  // namespace hdgame::probability

#endif
