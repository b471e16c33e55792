#include "hdgame/simplex.hpp"

#include <cmath>

namespace hdgame {

long simplex_levels(double step) {
  if (!(step > 0.0) || step > 1.0)
    throw input_error("step: must lie in (0, 1]");
  const double inv = 1.0 / step;
  const long m = std::llround(inv);
  if (m < 1 || std::abs(inv - static_cast<double>(m)) > 1e-9)
    throw input_error("step: 1/step must be an integer within 1e-9");
  return m;
}

namespace {
// Lexicographic recursion over compositions (c_1, ..., c_K) of m.
void recurse(int k, long rem, long m, Vector& q,
             const std::function<void(const Vector&)>& fn) {
  const int K = static_cast<int>(q.size());
  if (k == K - 1) {
    q[k] = static_cast<double>(rem) / static_cast<double>(m);
    fn(q);
    return;
  }
  for (long c = 0; c <= rem; ++c) {
    q[k] = static_cast<double>(c) / static_cast<double>(m);
    recurse(k + 1, rem - c, m, q, fn);
  }
}
}  // namespace

void for_each_simplex_point(int K, double step,
                            const std::function<void(const Vector&)>& fn) {
  if (K < 1) throw input_error("K: must be positive");
  const long m = simplex_levels(step);
  Vector q(K);
  recurse(0, m, m, q, fn);
}

std::vector<MixtureWeights> simplex_grid(int K, double step) {
  std::vector<MixtureWeights> out;
  out.reserve(simplex_grid_size(K, step));
  for_each_simplex_point(K, step,
                         [&](const Vector& q) { out.push_back({q}); });
  return out;
}

std::size_t simplex_grid_size(int K, double step) {
  const long m = simplex_levels(step);
  // C(m + K - 1, K - 1)
  double count = 1.0;
  for (int i = 1; i <= K - 1; ++i)
    count = count * static_cast<double>(m + i) / static_cast<double>(i);
  return static_cast<std::size_t>(std::llround(count));
}

}  // namespace hdgame
