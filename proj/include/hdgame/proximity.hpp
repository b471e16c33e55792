#ifndef HDGAME_PROXIMITY_HPP
#define HDGAME_PROXIMITY_HPP

#include <optional>
#include <string>

#include "hdgame/deviation.hpp"
#include "hdgame/game_core.hpp"
#include "hdgame/types.hpp"

namespace hdgame::proximity {

enum class Classification { Homogeneous, Heterogeneous, NotEquilibrium };

std::string to_string(Classification c);

// Grid-relative certification result (an epsilon-PNE certificate: no
// deviation on the scanned grid gains more than tol::utility).
struct EquilibriumReport {
  StrategyProfile profile;
  bool verified = false;
  Classification classification = Classification::NotEquilibrium;
  Vector utilities;
  double grid_step = 0.0;
  double best_deviation_gain = 0.0;
  ChoiceModel model;
};

struct DuopolyResult {
  bool exists = false;
  StrategyProfile profile;  // (theta_1, theta_1) when exists
  bool unique = false;
};

// N = 2: no PNE when w_1 < 0.5; otherwise (theta_1, theta_1), unique iff
// w_1 > 0.5. Requires the injectivity assumption unless allow_unchecked.
DuopolyResult duopoly_pne(const GameSpec& game, bool allow_unchecked = false);

// w'_k for the k0 dominant sources: each tail source j > k0 adds its weight
// to the dominant source whose ground truth has the smallest loss on j.
// An ambiguous nearest source (tie within tol::tie) is an assumption
// violation.
Vector effective_weights(const GameSpec& game, int k0);

// Dominance condition of the multi-provider construction.
bool dominance_holds(const GameSpec& game, int k0);

// sup{z > 0 : sum_k floor(w'_k / z) >= N}. h is right-continuous and
// non-increasing with jumps exactly on {w'_k / n}, so the sup is attained on
// that candidate set.
double z_star(const Vector& w_prime, int N);

struct NRange {
  long lo = 0;
  std::optional<long> hi;  // empty when k0 == K (no upper bound)

  bool contains(long n) const { return n >= lo && (!hi || n <= *hi); }
};

NRange n_range(const GameSpec& game, int k0);

// m_k = floor(w'_k / z*), with the overshoot removed from the smallest
// indices whose ratio w'_k / z* is integral.
std::vector<int> allocate_counts(const Vector& w_prime, int N);

struct ProximityConstruction {
  int k0 = 0;
  Vector effective_weights;
  double z_star = 0.0;
  std::vector<int> counts;
  NRange n_range;
};

ProximityConstruction build_construction(const GameSpec& game, int N, int k0);

// m_k players at theta_k, ascending k. Checks assumptions and the N range.
StrategyProfile construct_pne_prox(const GameSpec& game, int N, int k0);

EquilibriumReport verify_pne_prox(const StrategyProfile& profile,
                                  const GameSpec& game, double grid_step,
                                  double tie_tol = tol::tie,
                                  Execution exec = Execution::Parallel);

// Multiplicity property: any strategy shared by >= 2 players must be some
// ground-truth theta_k.
bool check_heterogeneity(const StrategyProfile& profile, const GameSpec& game);

}  // namespace hdgame::proximity

#endif
