#include "hdgame/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hdgame {

CandidateSet CandidateSet::build(const GameSpec& game, double grid_step,
                                 Execution exec) {
  (void)exec;
  const int K = game.num_sources();
  CandidateSet cs;
  cs.grid_step = grid_step;
  cs.coords = simplex_grid(K, grid_step);
  // The vertices are grid points already, but the deviation contract names
  // them explicitly; appending them is harmless for a max-scan.
  for (int k = 0; k < K; ++k) {
    Vector e = Vector::Zero(K);
    e[k] = 1.0;
    cs.coords.push_back({e});
  }
  const long C = static_cast<long>(cs.coords.size());
  cs.thetas.assign(static_cast<std::size_t>(C), Vector());
  cs.losses.resize(C, K);
  const WeightedMinimizer minimize(game);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
#endif
  for (long c = 0; c < C; ++c) {
    const Vector theta = minimize(cs.coords[static_cast<std::size_t>(c)].q);
    cs.thetas[static_cast<std::size_t>(c)] = theta;
    for (int k = 0; k < K; ++k)
      cs.losses(c, k) = mahalanobis_sq(theta, game.sources[k]);
  }
  return cs;
}

namespace {

// Scratch tables shared by both scan implementations.
struct ProbTables {
  Matrix cand_exp;     // C x K: exp(-(loss - shift_k)/t)
  Matrix profile_exp;  // N x K
  Matrix sum_excl;     // N x K: sum over other players of profile_exp
};

ProbTables prob_tables(const Matrix& L, const CandidateSet& cs, double t) {
  const int N = static_cast<int>(L.rows());
  const int K = static_cast<int>(L.cols());
  ProbTables tb;
  Vector shift(K);
  for (int k = 0; k < K; ++k)
    shift[k] = std::min(L.col(k).minCoeff(), cs.losses.col(k).minCoeff());
  tb.profile_exp.resize(N, K);
  for (int n = 0; n < N; ++n)
    for (int k = 0; k < K; ++k)
      tb.profile_exp(n, k) = std::exp(-(L(n, k) - shift[k]) / t);
  // Direct per-player sums: subtracting one exp from a grand total would
  // cancel catastrophically when a player dominates its column.
  tb.sum_excl = Matrix::Zero(N, K);
  for (int n = 0; n < N; ++n)
    for (int j = 0; j < N; ++j) {
      if (j == n) continue;
      tb.sum_excl.row(n) += tb.profile_exp.row(j);
    }
  const long C = cs.losses.rows();
  tb.cand_exp.resize(C, K);
  for (long c = 0; c < C; ++c)
    for (int k = 0; k < K; ++k)
      tb.cand_exp(c, k) = std::exp(-(cs.losses(c, k) - shift[k]) / t);
  return tb;
}

// Deviated utility of player n at candidate c under the proximity model.
double prox_utility(int n, long c, const Matrix& L, const CandidateSet& cs,
                    const Vector& w, double tie_tol) {
  const int N = static_cast<int>(L.rows());
  const int K = static_cast<int>(L.cols());
  double u = 0.0;
  for (int k = 0; k < K; ++k) {
    const double lc = cs.losses(c, k);
    double m = lc;
    for (int j = 0; j < N; ++j)
      if (j != n) m = std::min(m, L(j, k));
    if (lc > m + tie_tol) continue;
    int winners = 1;
    for (int j = 0; j < N; ++j)
      if (j != n && L(j, k) <= m + tie_tol) ++winners;
    u += w[k] / winners;
  }
  return u;
}

double prob_utility(int n, long c, const ProbTables& tb, const Matrix& L,
                    const Matrix& cand_losses, double t, const Vector& w) {
  const int N = static_cast<int>(L.rows());
  const int K = static_cast<int>(w.size());
  double u = 0.0;
  for (int k = 0; k < K; ++k) {
    const double ec = tb.cand_exp(c, k);
    const double denom = tb.sum_excl(n, k) + ec;
    if (denom > 0.0) {
      u += w[k] * ec / denom;
      continue;
    }
    // Everything underflowed in the column shift (tiny t, far losses).
    // Rescale around the candidate's own loss: overflow to inf gives p = 0,
    // total underflow gives p = 1, both exact limits.
    double ratio_sum = 0.0;
    for (int j = 0; j < N; ++j) {
      if (j == n) continue;
      ratio_sum += std::exp((cand_losses(c, k) - L(j, k)) / t);
    }
    u += w[k] / (1.0 + ratio_sum);
  }
  return u;
}

}  // namespace

double best_deviation_gain_serial(const Matrix& L, const Vector& u,
                                  const CandidateSet& cs, const Vector& w,
                                  const ChoiceModel& model, double tie_tol) {
  const int N = static_cast<int>(L.rows());
  const long C = cs.losses.rows();
  double best = -std::numeric_limits<double>::infinity();
  if (model.kind == ChoiceKind::Proximity) {
    for (int n = 0; n < N; ++n)
      for (long c = 0; c < C; ++c)
        best = std::max(best, prox_utility(n, c, L, cs, w, tie_tol) - u[n]);
  } else {
    const ProbTables tb = prob_tables(L, cs, model.temperature);
    for (int n = 0; n < N; ++n)
      for (long c = 0; c < C; ++c)
        best = std::max(best, prob_utility(n, c, tb, L, cs.losses,
                                           model.temperature, w) - u[n]);
  }
  return best;
}

double best_deviation_gain(const Matrix& L, const Vector& u,
                           const CandidateSet& cs, const Vector& w,
                           const ChoiceModel& model, double tie_tol,
                           Execution exec) {
  (void)exec;
#ifndef _OPENMP
  return best_deviation_gain_serial(L, u, cs, w, model, tie_tol);
#else
  if (exec == Execution::Serial)
    return best_deviation_gain_serial(L, u, cs, w, model, tie_tol);
  const int N = static_cast<int>(L.rows());
  const long C = cs.losses.rows();
  double best = -std::numeric_limits<double>::infinity();
  if (model.kind == ChoiceKind::Proximity) {
#pragma omp parallel for collapse(2) reduction(max : best) schedule(static)
    for (int n = 0; n < N; ++n)
      for (long c = 0; c < C; ++c)
        best = std::max(best, prox_utility(n, c, L, cs, w, tie_tol) - u[n]);
  } else {
    const ProbTables tb = prob_tables(L, cs, model.temperature);
#pragma omp parallel for collapse(2) reduction(max : best) schedule(static)
    for (int n = 0; n < N; ++n)
      for (long c = 0; c < C; ++c)
        best = std::max(best, prob_utility(n, c, tb, L, cs.losses,
                                           model.temperature, w) - u[n]);
  }
  return best;
#endif
}

Vector deviation_utilities(int player, const Matrix& L, const CandidateSet& cs,
                           const Vector& w, const ChoiceModel& model,
                           double tie_tol) {
  const long C = cs.losses.rows();
  Vector out(C);
  if (model.kind == ChoiceKind::Proximity) {
    for (long c = 0; c < C; ++c)
      out[c] = prox_utility(player, c, L, cs, w, tie_tol);
  } else {
    const ProbTables tb = prob_tables(L, cs, model.temperature);
    for (long c = 0; c < C; ++c)
      out[c] = prob_utility(player, c, tb, L, cs.losses, model.temperature, w);
  }
  return out;
}

}  // namespace hdgame
