// Times the OpenMP kernels against their serial reference implementations:
// the deviation-grid scan behind every verifier, candidate-set construction,
// and a whole sweep cell.

#include <chrono>
#include <cstdio>

#include "hdgame/deviation.hpp"
#include "hdgame/experiments.hpp"
#include "hdgame/parallel.hpp"
#include "hdgame/probability.hpp"

using namespace hdgame;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-34s %10.4f s %10.4f s %8.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  init_threads_from_env();
  std::printf("%-34s %12s %12s %9s\n", "kernel", "serial", "openmp", "speedup");

  const GameSpec game = experiments::gen_random_game(2, 2, 42);
  const int N = 16;
  const StrategyProfile homo = probability::homo_candidate(game, N);
  const Matrix losses = loss_matrix(homo, game).values;
  const Vector w = game.weights();
  const ChoiceModel prob = ChoiceModel::probability(0.3);
  const Vector u = utilities_from_losses(losses, w, prob);

  {
    const GameSpec wide = experiments::gen_random_game(4, 3, 7);
    const double s = time_best_of(3, [&] {
      CandidateSet::build(wide, 0.02, Execution::Serial);
    });
    const double p = time_best_of(3, [&] {
      CandidateSet::build(wide, 0.02, Execution::Parallel);
    });
    report("candidate set (K=4, 23426 pts)", s, p);
  }

  const CandidateSet cs = CandidateSet::build(game, 0.0002);
  {
    const double s = time_best_of(3, [&] {
      best_deviation_gain_serial(losses, u, cs, w, prob);
    });
    const double p = time_best_of(3, [&] {
      best_deviation_gain(losses, u, cs, w, prob, tol::tie,
                          Execution::Parallel);
    });
    report("deviation scan, probability", s, p);
  }
  {
    const ChoiceModel prox = ChoiceModel::proximity();
    const Vector u_prox = utilities_from_losses(losses, w, prox);
    const double s = time_best_of(3, [&] {
      best_deviation_gain_serial(losses, u_prox, cs, w, prox);
    });
    const double p = time_best_of(3, [&] {
      best_deviation_gain(losses, u_prox, cs, w, prox, tol::tie,
                          Execution::Parallel);
    });
    report("deviation scan, proximity", s, p);
  }
  {
    std::vector<GameSpec> games;
    for (int g = 0; g < 4; ++g)
      games.push_back(experiments::gen_random_game(2, 2, 100 + g));
    const std::vector<int> n_values{2, 6, 10, 14};
    const double s = time_best_of(1, [&] {
      experiments::sweep_critical_temperatures(games, n_values, 0.01, 0.0,
                                               Execution::Serial);
    });
    const double p = time_best_of(1, [&] {
      experiments::sweep_critical_temperatures(games, n_values, 0.01, 0.0,
                                               Execution::Parallel);
    });
    report("sweep, 4 games x 4 N cells", s, p);
  }
  return 0;
}
