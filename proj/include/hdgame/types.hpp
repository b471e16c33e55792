#ifndef HDGAME_TYPES_HPP
#define HDGAME_TYPES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "hdgame/errors.hpp"

namespace hdgame {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Shared tolerances.
namespace tol {
inline constexpr double symmetry = 1e-9;        // covariance symmetry
inline constexpr double weight_sum = 1e-9;      // sum(w) == 1
inline constexpr double distinct_theta = 1e-9;  // min pairwise theta distance
inline constexpr double simplex_sum = 1e-12;    // sum(q) == 1
inline constexpr double coord_match = 1e-8;     // theta_bar(q_n) vs strategy
inline constexpr double tie = 1e-9;             // proximity tie detection
inline constexpr double utility = 1e-9;         // PNE certification gain
inline constexpr double stationarity = 1e-8;    // weighted minimizer residual
inline constexpr double classify = 1e-8;        // homogeneous classification
inline constexpr double integral = 1e-9;        // integer detection in ratios
inline constexpr double min_temperature = 1e-12;
inline constexpr double max_condition = 1e12;   // mixture matrix conditioning
}  // namespace tol

// One data source: ground-truth parameter, covariance, market weight.
struct DataSource {
  Vector theta;
  Matrix sigma;
  double weight = 0.0;
};

// The whole game: D, the K weighted sources, and an optional provenance seed.
struct GameSpec {
  int dimension = 0;
  std::vector<DataSource> sources;
  std::optional<std::uint64_t> seed;

  int num_sources() const { return static_cast<int>(sources.size()); }
  Vector weights() const;

  // Throws input_error naming the offending field.
  void validate() const;
};

enum class ChoiceKind { Proximity, Probability };

struct ChoiceModel {
  ChoiceKind kind = ChoiceKind::Proximity;
  double temperature = 0.0;  // meaningful iff kind == Probability

  static ChoiceModel proximity() { return {ChoiceKind::Proximity, 0.0}; }
  static ChoiceModel probability(double t);
};

// A point of the simplex Delta_K.
struct MixtureWeights {
  Vector q;
};

void validate_mixture(const MixtureWeights& m);

// N provider strategies, optionally with their simplex coordinates.
struct StrategyProfile {
  std::vector<Vector> strategies;
  std::optional<std::vector<MixtureWeights>> coords;

  int num_players() const { return static_cast<int>(strategies.size()); }
};

void validate_profile(const StrategyProfile& profile, const GameSpec& game);

struct LossMatrix {
  Matrix values;  // N x K, entry (n,k) = loss of player n on source k
};

}  // namespace hdgame

#endif
