#ifndef HDGAME_DEVIATION_HPP
#define HDGAME_DEVIATION_HPP

#include "hdgame/game_core.hpp"
#include "hdgame/parallel.hpp"
#include "hdgame/types.hpp"

namespace hdgame {

// The deviation set used by every verifier: all theta_bar(q) over a simplex
// grid plus every vertex theta_k, with their loss vectors precomputed.
// Candidate losses do not depend on the choice model, so one set serves a
// whole temperature scan.
struct CandidateSet {
  std::vector<Vector> thetas;
  std::vector<MixtureWeights> coords;
  Matrix losses;  // C x K
  double grid_step = 0.0;

  static CandidateSet build(const GameSpec& game, double grid_step,
                            Execution exec = Execution::Parallel);
};

// max over players n and candidates c of u_n(c, profile_-n) - u_n(profile).
// This is the hot kernel behind verify_pne_* and the threshold scans.
double best_deviation_gain(const Matrix& profile_losses,
                           const Vector& current_utilities,
                           const CandidateSet& candidates,
                           const Vector& weights, const ChoiceModel& model,
                           double tie_tol = tol::tie,
                           Execution exec = Execution::Parallel);

// Serial reference implementation (kept for testing the OpenMP kernel).
double best_deviation_gain_serial(const Matrix& profile_losses,
                                  const Vector& current_utilities,
                                  const CandidateSet& candidates,
                                  const Vector& weights,
                                  const ChoiceModel& model,
                                  double tie_tol = tol::tie);

// Utility of `player` after deviating to each candidate, others fixed.
// Used by the deviation-curve export and by best-response searches.
Vector deviation_utilities(int player, const Matrix& profile_losses,
                           const CandidateSet& candidates,
                           const Vector& weights, const ChoiceModel& model,
                           double tie_tol = tol::tie);

}  // namespace hdgame

#endif
