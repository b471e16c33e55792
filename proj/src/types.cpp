#include "hdgame/types.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "hdgame/game_core.hpp"

namespace hdgame {

Vector GameSpec::weights() const {
  Vector w(num_sources());
  for (int k = 0; k < num_sources(); ++k) w[k] = sources[k].weight;
  return w;
}

void GameSpec::validate() const {
  if (dimension < 1) throw input_error("dimension: must be a positive integer");
  const int K = num_sources();
  if (K < 2) throw input_error("sources: need at least 2 data sources");

  for (int k = 0; k < K; ++k) {
    const auto field = "sources[" + std::to_string(k) + "]";
    const DataSource& s = sources[k];
    if (s.theta.size() != dimension)
      throw input_error(field + ".theta: length " +
                        std::to_string(s.theta.size()) + " != dimension " +
                        std::to_string(dimension));
    if (s.sigma.rows() != dimension || s.sigma.cols() != dimension)
      throw input_error(field + ".sigma: must be " +
                        std::to_string(dimension) + "x" +
                        std::to_string(dimension));
    if ((s.sigma - s.sigma.transpose()).cwiseAbs().maxCoeff() > tol::symmetry)
      throw input_error(field + ".sigma: not symmetric within 1e-9");
    Eigen::SelfAdjointEigenSolver<Matrix> es(s.sigma);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw input_error(field + ".sigma: not positive definite");
    if (!(s.weight > 0.0) || s.weight > 1.0)
      throw input_error(field + ".weight: must lie in (0, 1]");
  }

  double sum = 0.0;
  for (int k = 0; k < K; ++k) {
    sum += sources[k].weight;
    if (k > 0 && !(sources[k - 1].weight > sources[k].weight))
      throw input_error("sources[" + std::to_string(k) +
                        "].weight: weights must be strictly decreasing");
  }
  if (std::abs(sum - 1.0) > tol::weight_sum)
    throw input_error("sources[*].weight: weights sum to " +
                      std::to_string(sum) + ", expected 1");

  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j)
      if ((sources[i].theta - sources[j].theta).norm() <= tol::distinct_theta)
        throw input_error("sources[" + std::to_string(i) + "].theta and sources[" +
                          std::to_string(j) +
                          "].theta coincide; merge identical sources");
}

ChoiceModel ChoiceModel::probability(double t) {
  if (!(t > 0.0)) throw input_error("temperature: must be > 0");
  if (t < tol::min_temperature)
    throw input_error("temperature: below 1e-12; use the proximity model");
  return {ChoiceKind::Probability, t};
}

void validate_mixture(const MixtureWeights& m) {
  if (m.q.size() < 1) throw input_error("mixture: empty");
  if (m.q.minCoeff() < 0.0)
    throw input_error("mixture: negative entry");
  if (std::abs(m.q.sum() - 1.0) > tol::simplex_sum)
    throw input_error("mixture: entries sum to " + std::to_string(m.q.sum()) +
                      ", expected 1 within 1e-12");
}

void validate_profile(const StrategyProfile& profile, const GameSpec& game) {
  const int N = profile.num_players();
  if (N < 1) throw input_error("profile: need at least one strategy");
  for (int n = 0; n < N; ++n)
    if (profile.strategies[n].size() != game.dimension)
      throw input_error("profile.strategies[" + std::to_string(n) +
                        "]: length != game dimension");
  if (profile.coords) {
    if (static_cast<int>(profile.coords->size()) != N)
      throw input_error("profile.coords: size != number of strategies");
    for (int n = 0; n < N; ++n) {
      const MixtureWeights& q = (*profile.coords)[n];
      validate_mixture(q);
      if (q.q.size() != game.num_sources())
        throw input_error("profile.coords[" + std::to_string(n) +
                          "]: length != number of sources");
      const Vector back = weighted_minimizer(q, game);
      if ((back - profile.strategies[n]).cwiseAbs().maxCoeff() >
          tol::coord_match)
        throw input_error("profile.coords[" + std::to_string(n) +
                          "]: theta_bar(q) does not match the strategy");
    }
  }
}

}  // namespace hdgame
