#ifndef HDGAME_SIMPLEX_HPP
#define HDGAME_SIMPLEX_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "hdgame/types.hpp"

namespace hdgame {

// Number of grid levels for a step; throws input_error unless 1/step is an
// integer within 1e-9 and step is in (0, 1].
long simplex_levels(double step);

// All compositions of 1/step into K nonnegative parts, scaled by step.
// Enumeration order is lexicographic in the composition counters and is part
// of the contract (tie-breaking in grid searches depends on it).
void for_each_simplex_point(int K, double step,
                            const std::function<void(const Vector&)>& fn);

std::vector<MixtureWeights> simplex_grid(int K, double step);

std::size_t simplex_grid_size(int K, double step);

}  // namespace hdgame

#endif
