#include "hdgame/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hdgame::probability {

using proximity::Classification;

std::string to_string(ThresholdCertification c) {
  return c == ThresholdCertification::Bisection ? "bisection" : "grid_scan";
}

double default_grid_step(int K) { return K == 2 ? 0.002 : 0.01; }

namespace {

Matrix logit_shares(const Matrix& losses, double t) {
  const int N = static_cast<int>(losses.rows());
  const int K = static_cast<int>(losses.cols());
  Matrix p(N, K);
  for (int k = 0; k < K; ++k) {
    const double m = losses.col(k).minCoeff();
    double sum = 0.0;
    for (int n = 0; n < N; ++n) {
      p(n, k) = std::exp(-(losses(n, k) - m) / t);
      sum += p(n, k);
    }
    p.col(k) /= sum;
  }
  return p;
}

StrategyProfile profile_from_coords(const std::vector<MixtureWeights>& coords,
                                    const WeightedMinimizer& minimize) {
  StrategyProfile profile;
  for (const MixtureWeights& q : coords)
    profile.strategies.push_back(minimize(q.q));
  profile.coords = coords;
  return profile;
}

Matrix losses_of_coords(const std::vector<MixtureWeights>& coords,
                        const GameSpec& game,
                        const WeightedMinimizer& minimize,
                        std::vector<Vector>* thetas_out = nullptr) {
  const int N = static_cast<int>(coords.size());
  const int K = game.num_sources();
  Matrix L(N, K);
  for (int n = 0; n < N; ++n) {
    const Vector theta = minimize(coords[n].q);
    if (thetas_out) thetas_out->push_back(theta);
    for (int k = 0; k < K; ++k)
      L(n, k) = mahalanobis_sq(theta, game.sources[k]);
  }
  return L;
}

std::vector<MixtureWeights> map_M_impl(const std::vector<MixtureWeights>& coords,
                                       const GameSpec& game, double t,
                                       const WeightedMinimizer& minimize) {
  const int N = static_cast<int>(coords.size());
  const int K = game.num_sources();
  const Matrix L = losses_of_coords(coords, game, minimize);
  const Matrix p = logit_shares(L, t);
  const Vector w = game.weights();
  std::vector<MixtureWeights> out(coords.size());
  for (int n = 0; n < N; ++n) {
    Vector r(K);
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
      r[k] = w[k] * p(n, k) * (1.0 - p(n, k));
      sum += r[k];
    }
    if (sum <= 0.0)
      throw numeric_error("map_M: choice weights w_k p(1-p) underflowed to "
                          "zero for player " + std::to_string(n));
    out[n] = {Vector(r / sum)};
  }
  return out;
}

}  // namespace

std::vector<MixtureWeights> map_M(const std::vector<MixtureWeights>& coords,
                                  const GameSpec& game, double t) {
  if (!(t > 0.0)) throw input_error("map_M: temperature must be > 0");
  if (coords.empty()) throw input_error("map_M: empty coordinate list");
  for (const MixtureWeights& q : coords) {
    validate_mixture(q);
    if (q.q.size() != game.num_sources())
      throw input_error("map_M: coordinate length != K");
  }
  return map_M_impl(coords, game, t, WeightedMinimizer(game));
}

StrategyProfile homo_candidate(const GameSpec& game, int N) {
  if (N < 1) throw input_error("homo_candidate: N must be >= 1");
  const Vector theta = monopoly_strategy(game);
  StrategyProfile profile;
  std::vector<MixtureWeights> coords;
  for (int n = 0; n < N; ++n) {
    profile.strategies.push_back(theta);
    coords.push_back({game.weights()});
  }
  profile.coords = std::move(coords);
  return profile;
}

FixedPointOutcome find_hetero_candidate(const GameSpec& game, int N, double t,
                                        int max_iter, double tol) {
  if (!(t > 0.0)) throw input_error("find_hetero_candidate: t must be > 0");
  if (N < 1) throw input_error("find_hetero_candidate: N must be >= 1");
  const int K = game.num_sources();
  const Vector w = game.weights();

  FixedPointOutcome outcome;
  // Recommended regime: N at or above the all-sources construction bound.
  long n_lo = 0;
  for (int k = 0; k < K; ++k)
    n_lo += static_cast<long>(
        std::floor(3.0 * w[k] / w[K - 1] + tol::integral));
  outcome.below_recommended_n = N < n_lo;

  // One-hot start at each player's proximity source k_n.
  outcome.source_counts = proximity::allocate_counts(w, N);
  std::vector<MixtureWeights> coords;
  for (int k = 0; k < K; ++k) {
    Vector e = Vector::Zero(K);
    e[k] = 1.0;
    for (int i = 0; i < outcome.source_counts[k]; ++i) coords.push_back({e});
  }

  const WeightedMinimizer minimize(game);
  double residual = std::numeric_limits<double>::infinity();
  int iter = 0;
  while (iter < max_iter) {
    const std::vector<MixtureWeights> next = map_M_impl(coords, game, t, minimize);
    residual = 0.0;
    for (int n = 0; n < N; ++n)
      residual = std::max(residual,
                          (next[n].q - coords[n].q).cwiseAbs().maxCoeff());
    coords = next;
    ++iter;
    if (residual <= tol) break;
  }
  outcome.state = {coords, iter, residual};
  outcome.converged = residual <= tol;
  if (outcome.converged) outcome.profile = profile_from_coords(coords, minimize);
  return outcome;
}

Vector utility_gradient(int player, const StrategyProfile& profile,
                        const GameSpec& game, double t) {
  if (!(t > 0.0)) throw input_error("utility_gradient: t must be > 0");
  if (player < 0 || player >= profile.num_players())
    throw input_error("utility_gradient: player index out of range");
  const Matrix L = loss_matrix(profile, game).values;
  const Matrix p = logit_shares(L, t);
  const Vector w = game.weights();
  Vector g = Vector::Zero(game.dimension);
  for (int k = 0; k < game.num_sources(); ++k) {
    const double coef = w[k] * p(player, k) * (1.0 - p(player, k));
    g -= (2.0 / t) * coef *
         (game.sources[k].sigma *
          (profile.strategies[player] - game.sources[k].theta));
  }
  return g;
}

namespace {

Classification classify_prob(const StrategyProfile& profile,
                             const GameSpec& game, bool verified) {
  if (!verified) return Classification::NotEquilibrium;
  const Vector monopoly = monopoly_strategy(game);
  for (const Vector& s : profile.strategies)
    if ((s - monopoly).cwiseAbs().maxCoeff() > tol::classify)
      return Classification::Heterogeneous;
  return Classification::Homogeneous;
}

proximity::EquilibriumReport verify_with_candidates(
    const StrategyProfile& profile, const GameSpec& game, double t,
    const CandidateSet& cs, Execution exec) {
  const ChoiceModel model = ChoiceModel::probability(t);
  const Matrix losses = loss_matrix(profile, game).values;
  const Vector w = game.weights();
  const Vector u = utilities_from_losses(losses, w, model);
  const double gain =
      best_deviation_gain(losses, u, cs, w, model, tol::tie, exec);
  proximity::EquilibriumReport report;
  report.profile = profile;
  report.verified = gain <= tol::utility;
  report.classification = classify_prob(profile, game, report.verified);
  report.utilities = u;
  report.grid_step = cs.grid_step;
  report.best_deviation_gain = gain;
  report.model = model;
  return report;
}

bool strategies_coincide(const StrategyProfile& profile) {
  for (const Vector& s : profile.strategies)
    if ((s - profile.strategies[0]).cwiseAbs().maxCoeff() > tol::classify)
      return false;
  return true;
}

std::string grid_description(double resolution) {
  const long m = simplex_levels(resolution);
  return "{1.." + std::to_string(m) + "}/" + std::to_string(m) +
         " x 2*ell_max";
}

}  // namespace

proximity::EquilibriumReport verify_pne_prob(const StrategyProfile& profile,
                                             const GameSpec& game, double t,
                                             double grid_step,
                                             Execution exec) {
  validate_profile(profile, game);
  if (grid_step <= 0.0) grid_step = default_grid_step(game.num_sources());
  const CandidateSet cs = CandidateSet::build(game, grid_step, exec);
  return verify_with_candidates(profile, game, t, cs, exec);
}

ThresholdResult threshold_homo_t(const GameSpec& game, int N,
                                 double resolution, double grid_step,
                                 Execution exec) {
  game.validate();
  const long m = simplex_levels(resolution);
  if (grid_step <= 0.0) grid_step = default_grid_step(game.num_sources());
  const double ell_max =
      ell_max_estimate(game, ell_max_default_step(game.num_sources()), exec);
  const double scale = 2.0 * ell_max;
  const StrategyProfile homo = homo_candidate(game, N);
  const CandidateSet cs = CandidateSet::build(game, grid_step, exec);
  auto verified_at = [&](long i) {
    const double t = (static_cast<double>(i) / m) * scale;
    return verify_with_candidates(homo, game, t, cs, exec).verified;
  };
  if (!verified_at(m))
    throw numeric_error(
        "threshold_homo_t: homogeneous candidate failed verification at "
        "t = 2*ell_max, which contradicts the guaranteed existence; the "
        "verification grid_step is too coarse");
  // Monotone in t (a PNE at t0 stays a PNE for all t >= t0), so bisect.
  long lo = 1, hi = m;
  while (lo < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (verified_at(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  ThresholdResult result;
  result.threshold_t = (static_cast<double>(lo) / m) * scale;
  result.grid = grid_description(resolution);
  result.certified_by = ThresholdCertification::Bisection;
  result.ell_max_ref = ell_max;
  return result;
}

std::optional<ThresholdResult> max_hetero_t(const GameSpec& game, int N,
                                            double resolution,
                                            double grid_step, Execution exec) {
  game.validate();
  const long m = simplex_levels(resolution);
  if (grid_step <= 0.0) grid_step = default_grid_step(game.num_sources());
  const double ell_max =
      ell_max_estimate(game, ell_max_default_step(game.num_sources()), exec);
  const double scale = 2.0 * ell_max;
  const CandidateSet cs = CandidateSet::build(game, grid_step, exec);
  for (long i = m; i >= 1; --i) {
    const double t = (static_cast<double>(i) / m) * scale;
    FixedPointOutcome fp;
    try {
      fp = find_hetero_candidate(game, N, t);
    } catch (const numeric_error&) {
      continue;  // underflow at this t; no candidate produced
    }
    if (!fp.converged) continue;
    if (strategies_coincide(fp.profile)) continue;  // collapsed to homogeneous
    const auto report = verify_with_candidates(fp.profile, game, t, cs, exec);
    if (report.verified &&
        report.classification == Classification::Heterogeneous) {
      ThresholdResult result;
      result.threshold_t = t;
      result.grid = grid_description(resolution);
      result.certified_by = ThresholdCertification::GridScan;
      result.ell_max_ref = ell_max;
      return result;
    }
  }
  return std::nullopt;
}

DuopolyProbResult duopoly_prob_pne(const GameSpec& game, double t,
                                   double grid_step, Execution exec) {
  const StrategyProfile homo = homo_candidate(game, 2);
  if (grid_step <= 0.0) grid_step = default_grid_step(game.num_sources());
  const auto report = verify_pne_prob(homo, game, t, grid_step, exec);
  DuopolyProbResult res;
  res.exists = report.verified;
  if (res.exists) res.profile = homo;
  return res;
}

}  // namespace hdgame::probability
