#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rigidlab {

/// Neumaier-compensated accumulator; error stays O(eps) independent of count.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Pairwise sum with a fixed reduction tree; deterministic for a fixed length.
inline double pairwise_sum(const std::vector<double>& v) {
  struct Rec {
    static double run(const double* p, std::size_t n) {
      if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i];
        return s;
      }
      std::size_t half = n / 2;
      return run(p, half) + run(p + half, n - half);
    }
  };
  return v.empty() ? 0.0 : Rec::run(v.data(), v.size());
}

}  // namespace rigidlab
