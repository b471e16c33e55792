#include "hdgame/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <string>

namespace hdgame::proximity {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Homogeneous: return "homogeneous";
    case Classification::Heterogeneous: return "heterogeneous";
    default: return "not_equilibrium";
  }
}

namespace {

// floor/ceil with a 1e-9 slack so that ratios that are integers
// mathematically do not flip on the last ulp.
long floor_tol(double x) { return static_cast<long>(std::floor(x + tol::integral)); }
long ceil_tol(double x) { return static_cast<long>(std::ceil(x - tol::integral)); }

bool is_integral(double x) {
  return std::abs(x - std::round(x)) <= tol::integral;
}

long h_of(const Vector& w_prime, double z) {
  long s = 0;
  for (int k = 0; k < w_prime.size(); ++k) s += floor_tol(w_prime[k] / z);
  return s;
}

Classification classify(const StrategyProfile& profile, const GameSpec& game,
                        bool verified) {
  if (!verified) return Classification::NotEquilibrium;
  const Vector monopoly = monopoly_strategy(game);
  for (const Vector& s : profile.strategies)
    if ((s - monopoly).cwiseAbs().maxCoeff() > tol::classify)
      return Classification::Heterogeneous;
  return Classification::Homogeneous;
}

}  // namespace

DuopolyResult duopoly_pne(const GameSpec& game, bool allow_unchecked) {
  game.validate();
  if (!allow_unchecked) {
    const auto inj = check_injectivity(game, 200, game.seed.value_or(0));
    if (!inj.holds)
      throw assumption_error(
          "duopoly_pne: injectivity check failed; pass allow_unchecked to "
          "override");
  }
  const double w1 = game.sources[0].weight;
  DuopolyResult res;
  if (w1 < 0.5) return res;  // no PNE
  res.exists = true;
  res.unique = w1 > 0.5;
  res.profile.strategies = {game.sources[0].theta, game.sources[0].theta};
  Vector e1 = Vector::Zero(game.num_sources());
  e1[0] = 1.0;
  res.profile.coords = std::vector<MixtureWeights>{{e1}, {e1}};
  return res;
}

Vector effective_weights(const GameSpec& game, int k0) {
  const int K = game.num_sources();
  if (k0 < 1 || k0 > K)
    throw input_error("effective_weights: k0 must lie in [1, K]");
  Vector w_prime(k0);
  for (int k = 0; k < k0; ++k) w_prime[k] = game.sources[k].weight;
  for (int j = k0; j < K; ++j) {
    // Tail source j sides with the dominant ground truth of least loss on j.
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    int arg = -1;
    for (int k = 0; k < k0; ++k) {
      const double d =
          std::sqrt(mahalanobis_sq(game.sources[k].theta, game.sources[j]));
      if (d < best) {
        second = best;
        best = d;
        arg = k;
      } else if (d < second) {
        second = d;
      }
    }
    if (k0 > 1 && second - best <= tol::tie)
      throw assumption_error(
          "effective_weights: tail source " + std::to_string(j) +
          " is equidistant from two dominant sources (distinct-distance "
          "assumption violated)");
    w_prime[arg] += game.sources[j].weight;
  }
  return w_prime;
}

bool dominance_holds(const GameSpec& game, int k0) {
  const int K = game.num_sources();
  if (k0 == K) return true;  // empty tail
  double tail = 0.0;
  for (int j = k0; j < K; ++j) tail += game.sources[j].weight;
  return game.sources[k0 - 1].weight > 3.0 * tail;
}

double z_star(const Vector& w_prime, int N) {
  const int K0 = static_cast<int>(w_prime.size());
  if (N < 1) throw input_error("z_star: N must be >= 1");
  std::set<double, std::greater<double>> candidates;
  for (int k = 0; k < K0; ++k)
    for (int n = 1; n <= N; ++n) candidates.insert(w_prime[k] / n);
  for (double z : candidates)
    if (h_of(w_prime, z) >= N) return z;
  throw infeasible_error("z_star: no candidate satisfies h(z) >= N");
}

NRange n_range(const GameSpec& game, int k0) {
  const int K = game.num_sources();
  if (!dominance_holds(game, k0))
    throw assumption_error(
        "n_range: dominance condition w_k0 > 3 * sum of tail weights fails "
        "for k0 = " + std::to_string(k0));
  const Vector w_prime = effective_weights(game, k0);
  NRange range;
  for (int k = 0; k < k0; ++k)
    range.lo += floor_tol(3.0 * w_prime[k] / w_prime[k0 - 1]);
  if (k0 < K) {
    double tail = 0.0;
    for (int j = k0; j < K; ++j) tail += game.sources[j].weight;
    long hi = 0;
    for (int k = 0; k < k0; ++k) hi += ceil_tol(w_prime[k] / tail) - 1;
    range.hi = hi;
  }
  return range;
}

std::vector<int> allocate_counts(const Vector& w_prime, int N) {
  const double z = z_star(w_prime, N);
  const int K0 = static_cast<int>(w_prime.size());
  std::vector<int> m(K0);
  long total = 0;
  for (int k = 0; k < K0; ++k) {
    m[k] = static_cast<int>(floor_tol(w_prime[k] / z));
    total += m[k];
  }
  // h(z*) may exceed N; shed the overshoot from the smallest indices whose
  // ratio is integral (those are exactly the jumps at z*).
  long over = total - N;
  for (int k = 0; k < K0 && over > 0; ++k) {
    if (is_integral(w_prime[k] / z)) {
      m[k] -= 1;
      --over;
    }
  }
  if (over != 0)
    throw infeasible_error("allocate_counts: cannot allocate N = " +
                           std::to_string(N) + " players");
  return m;
}

ProximityConstruction build_construction(const GameSpec& game, int N, int k0) {
  ProximityConstruction c;
  c.k0 = k0;
  c.n_range = n_range(game, k0);
  c.effective_weights = effective_weights(game, k0);
  c.z_star = z_star(c.effective_weights, N);
  c.counts = allocate_counts(c.effective_weights, N);
  return c;
}

StrategyProfile construct_pne_prox(const GameSpec& game, int N, int k0) {
  game.validate();
  if (!check_distinct_distances(game, tol::tie))
    throw assumption_error(
        "construct_pne_prox: distinct-distance assumption fails");
  const auto inj = check_injectivity(game, 200, game.seed.value_or(0));
  if (!inj.holds)
    throw assumption_error("construct_pne_prox: injectivity check failed");
  const NRange range = n_range(game, k0);
  if (N < range.lo)
    throw infeasible_error(
        "construct_pne_prox: N = " + std::to_string(N) +
        " is below the lower bound " + std::to_string(range.lo) +
        " = sum_k floor(3 w'_k / w'_k0)");
  if (range.hi && N > *range.hi)
    throw infeasible_error("construct_pne_prox: N = " + std::to_string(N) +
                           " exceeds the upper bound " +
                           std::to_string(*range.hi));
  const std::vector<int> counts =
      allocate_counts(effective_weights(game, k0), N);
  StrategyProfile profile;
  std::vector<MixtureWeights> coords;
  for (int k = 0; k < k0; ++k) {
    Vector e = Vector::Zero(game.num_sources());
    e[k] = 1.0;
    for (int i = 0; i < counts[k]; ++i) {
      profile.strategies.push_back(game.sources[k].theta);
      coords.push_back({e});
    }
  }
  profile.coords = std::move(coords);
  return profile;
}

EquilibriumReport verify_pne_prox(const StrategyProfile& profile,
                                  const GameSpec& game, double grid_step,
                                  double tie_tol, Execution exec) {
  validate_profile(profile, game);
  const ChoiceModel model = ChoiceModel::proximity();
  const Matrix losses = loss_matrix(profile, game).values;
  const Vector w = game.weights();
  const Vector u = utilities_from_losses(losses, w, model);
  const CandidateSet cs = CandidateSet::build(game, grid_step, exec);
  const double gain =
      best_deviation_gain(losses, u, cs, w, model, tie_tol, exec);
  EquilibriumReport report;
  report.profile = profile;
  report.verified = gain <= tol::utility;
  report.classification = classify(profile, game, report.verified);
  report.utilities = u;
  report.grid_step = grid_step;
  report.best_deviation_gain = gain;
  report.model = model;
  return report;
}

bool check_heterogeneity(const StrategyProfile& profile,
                         const GameSpec& game) {
  const int N = profile.num_players();
  for (int i = 0; i < N; ++i) {
    int multiplicity = 1;
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      if ((profile.strategies[i] - profile.strategies[j])
              .cwiseAbs()
              .maxCoeff() <= tol::tie)
        ++multiplicity;
    }
    if (multiplicity < 2) continue;
    bool at_ground_truth = false;
    for (const DataSource& s : game.sources)
      if ((profile.strategies[i] - s.theta).cwiseAbs().maxCoeff() <= tol::tie)
        at_ground_truth = true;
    if (!at_ground_truth) return false;
  }
  return true;
}

}  // namespace hdgame::proximity
