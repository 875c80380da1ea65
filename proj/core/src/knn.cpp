#include "stablenmi/knn.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "stablenmi/errors.hpp"

namespace stablenmi {
namespace {

// Number of query points that share one pass over the reference rows.
constexpr std::size_t kQueryBlock = 8;

inline double chebyshev(const double* a, const double* b, std::size_t dim) noexcept {
  double m0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0;
  std::size_t t = 0;
  for (; t + 4 <= dim; t += 4) {
    m0 = std::max(m0, std::abs(a[t] - b[t]));
    m1 = std::max(m1, std::abs(a[t + 1] - b[t + 1]));
    m2 = std::max(m2, std::abs(a[t + 2] - b[t + 2]));
    m3 = std::max(m3, std::abs(a[t + 3] - b[t + 3]));
  }
  for (; t < dim; ++t) {
    m0 = std::max(m0, std::abs(a[t] - b[t]));
  }
  return std::max(std::max(m0, m1), std::max(m2, m3));
}

class BlockWorker {
 public:
  BlockWorker(const Dataset& data, std::size_t k, RadiusSet& out)
      : data_(data),
        k_(k),
        out_(out),
        dist_x_(kQueryBlock * data.size()),
        dist_y_(kQueryBlock * data.size()),
        joint_(data.size()) {}

  void run(std::size_t first, std::size_t last) {
    const std::size_t n = data_.size();
    const std::size_t width = last - first;
    const double* xs = data_.x_values().data();
    const double* ys = data_.y_values().data();
    const std::size_t dx = data_.dx();
    const std::size_t dy = data_.dy();

    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t q = 0; q < width; ++q) {
        const std::size_t i = first + q;
        dist_x_[q * n + j] = chebyshev(xs + i * dx, xs + j * dx, dx);
        dist_y_[q * n + j] = chebyshev(ys + i * dy, ys + j * dy, dy);
      }
    }

    for (std::size_t q = 0; q < width; ++q) {
      const std::size_t i = first + q;
      const double* row_x = dist_x_.data() + q * n;
      const double* row_y = dist_y_.data() + q * n;

      std::size_t m = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) joint_[m++] = std::max(row_x[j], row_y[j]);
      }
      auto kth = joint_.begin() + static_cast<std::ptrdiff_t>(k_ - 1);
      std::nth_element(joint_.begin(), kth, joint_.begin() + static_cast<std::ptrdiff_t>(m));
      const double eps = *kth;

      std::size_t count_x = 0;
      std::size_t count_y = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        count_x += row_x[j] < eps;
        count_y += row_y[j] < eps;
      }
      out_.epsilon[i] = eps;
      out_.n_x[i] = count_x;
      out_.n_y[i] = count_y;
    }
  }

 private:
  const Dataset& data_;
  std::size_t k_;
  RadiusSet& out_;
  std::vector<double> dist_x_;
  std::vector<double> dist_y_;
  std::vector<double> joint_;
};

}  // namespace

RadiusSet compute_knn_radii(const Dataset& data, std::size_t k, const KnnOptions& options) {
  const std::size_t n = data.size();
  if (k == 0) {
    throw ConfigError("knn: k must be positive");
  }
  if (k >= n) {
    throw ConfigError("knn: k = " + std::to_string(k) + " requires more than k samples, got N = " +
                      std::to_string(n));
  }

  RadiusSet result;
  result.k = k;
  result.epsilon.assign(n, 0.0);
  result.n_x.assign(n, 0);
  result.n_y.assign(n, 0);

  const std::size_t blocks = (n + kQueryBlock - 1) / kQueryBlock;
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, blocks));

  std::atomic<std::size_t> next_block{0};
  auto work = [&] {
    BlockWorker worker(data, k, result);
    for (std::size_t b = next_block++; b < blocks; b = next_block++) {
      const std::size_t first = b * kQueryBlock;
      worker.run(first, std::min(n, first + kQueryBlock));
    }
  };

  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (result.epsilon[i] == 0.0) {
      throw DuplicatePointError(i);
    }
  }
  return result;
}

}  // namespace stablenmi
