#pragma once

#include <cstddef>
#include <vector>

#include "stablenmi/dataset.hpp"

namespace stablenmi {

/// Per-point k-th neighbour distances in the joint space and marginal neighbour counts.
struct RadiusSet {
  /// epsilon[i]: max-norm distance from point i to its k-th nearest other point in (X; Y).
  std::vector<double> epsilon;
  /// n_x[i]: number of j != i with max-norm distance |x_j - x_i| strictly below epsilon[i].
  std::vector<std::size_t> n_x;
  std::vector<std::size_t> n_y;
  std::size_t k = 0;

  std::size_t size() const noexcept { return epsilon.size(); }
};

struct KnnOptions {
  /// Worker threads for the query loop; 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Exact brute-force k-NN radii under the Chebyshev (L-infinity) metric.
///
/// The result does not depend on the thread count: every query point is processed
/// independently with a fixed scan order over the reference points.
///
/// Throws ConfigError when k == 0 or k >= N, and DuplicatePointError (with the
/// smallest offending index) when some epsilon[i] is zero.
RadiusSet compute_knn_radii(const Dataset& data, std::size_t k, const KnnOptions& options = {});

}  // namespace stablenmi
