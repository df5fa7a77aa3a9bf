#include "rigidlab/equilibrium.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "rigidlab/errors.hpp"
#include "rigidlab/summation.hpp"

namespace rigidlab {
namespace {

constexpr int kStripes = 64;
constexpr int kMaterializeCap = 14;
constexpr int kCostCap = 20;

bool rational_before(const RationalPoint& a, const RationalPoint& b) {
  const __int128 ax = static_cast<__int128>(a.num_x) * b.den;
  const __int128 bx = static_cast<__int128>(b.num_x) * a.den;
  if (ax != bx) return ax < bx;
  const __int128 ay = static_cast<__int128>(a.num_y) * b.den;
  const __int128 by = static_cast<__int128>(b.num_y) * a.den;
  return ay < by;
}

/// Runs task(stripe) for all stripes, on up to `threads` workers.  Outputs
/// must go into per-stripe slots; callers merge them in stripe order.
void run_stripes(int threads, const std::function<void(int)>& task) {
  if (threads <= 1) {
    for (int s = 0; s < kStripes; ++s) task(s);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const int s = next.fetch_add(1);
      if (s >= kStripes) return;
      try {
        task(s);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min(threads, kStripes);
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

EnsembleOrbit make_entry(const SuspensionFlow& flow, const BowenWeight& weight,
                         const MapOrbit& orbit) {
  EnsembleOrbit e;
  e.period = orbit_period(flow, orbit);
  e.b_value = weight.value(orbit.prime_period, e.period, flow.base().log_lambda());
  e.orbit = orbit;
  return e;
}

}  // namespace

double BowenWeight::value(int k, double period, double log_lambda) const {
  double base = 0.0;
  switch (kind) {
    case Kind::zero:
      break;
    case Kind::minus_log_ju:
      base = -static_cast<double>(k) * log_lambda;
      break;
    case Kind::constant_rate:
      base = rate * period;
      break;
  }
  return base + offset;
}

PeriodicEnsemble build_ensemble(const SuspensionFlow& flow, double t, double delta,
                                const BowenWeight& weight, int threads) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("build_ensemble requires T >= 0");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("build_ensemble requires delta > 0");
  }
  PeriodicEnsemble e(flow, t, delta, weight);
  e.threads_ = std::max(1, threads);
  e.k_cap_ = std::max(1, static_cast<int>(std::ceil((t + delta) / flow.roof_min())));
  if (e.k_cap_ > kCostCap) {
    throw CostGate("window (" + std::to_string(t) + ", " + std::to_string(t + delta) +
                   "] needs base periods up to " + std::to_string(e.k_cap_) +
                   ", beyond the exhaustive budget of " + std::to_string(kCostCap));
  }
  const double roof_max = flow.roof().constant_part() + flow.roof().amplitude_sum();
  e.k_min_ = std::max(1, static_cast<int>(std::floor(t / roof_max)) - 1);
  e.materialized_ = e.k_cap_ <= kMaterializeCap;

  const double hi = t + delta;
  std::vector<std::vector<EnsembleOrbit>> slots(kStripes);
  std::atomic<std::int64_t> streamed{0};
  for (int k = e.k_min_; k <= e.k_cap_; ++k) {
    run_stripes(e.threads_, [&](int stripe) {
      for_each_prime_orbit_stripe(flow.base(), k, stripe, kStripes, [&](const MapOrbit& o) {
        EnsembleOrbit entry = make_entry(flow, weight, o);
        if (entry.period > t && entry.period <= hi) {
          if (e.materialized_) {
            slots[static_cast<std::size_t>(stripe)].push_back(std::move(entry));
          } else {
            streamed.fetch_add(1, std::memory_order_relaxed);
          }
        }
      });
    });
    if (e.materialized_) {
      for (auto& slot : slots) {
        for (auto& entry : slot) e.entries_.push_back(std::move(entry));
        slot.clear();
      }
    }
  }
  if (e.materialized_) {
    std::sort(e.entries_.begin(), e.entries_.end(),
              [](const EnsembleOrbit& a, const EnsembleOrbit& b) {
                if (a.orbit.prime_period != b.orbit.prime_period) {
                  return a.orbit.prime_period < b.orbit.prime_period;
                }
                return rational_before(a.orbit.representative(), b.orbit.representative());
              });
    e.count_ = e.entries_.size();
  } else {
    e.count_ = static_cast<std::size_t>(streamed.load());
  }
  return e;
}

void PeriodicEnsemble::for_each(const std::function<void(const EnsembleOrbit&)>& fn) const {
  if (materialized_) {
    for (const auto& entry : entries_) fn(entry);
    return;
  }
  const double hi = t_ + delta_;
  for (int k = k_min_; k <= k_cap_; ++k) {
    for (int stripe = 0; stripe < kStripes; ++stripe) {
      for_each_prime_orbit_stripe(flow_.base(), k, stripe, kStripes, [&](const MapOrbit& o) {
        EnsembleOrbit entry = make_entry(flow_, weight_, o);
        if (entry.period > t_ && entry.period <= hi) fn(entry);
      });
    }
  }
}

std::vector<double> PeriodicEnsemble::accumulate(
    std::size_t width,
    const std::function<void(const EnsembleOrbit&, double*)>& terms) const {
  if (width == 0) throw std::invalid_argument("accumulate requires width >= 1");
  std::vector<CompensatedSum> totals(width);
  std::vector<double> buf(width);
  if (materialized_) {
    for (const auto& entry : entries_) {
      std::fill(buf.begin(), buf.end(), 0.0);
      terms(entry, buf.data());
      for (std::size_t i = 0; i < width; ++i) totals[i].add(buf[i]);
    }
  } else {
    const double hi = t_ + delta_;
    std::vector<std::vector<CompensatedSum>> slots(kStripes);
    for (int k = k_min_; k <= k_cap_; ++k) {
      for (auto& slot : slots) slot.assign(width, CompensatedSum{});
      run_stripes(threads_, [&](int stripe) {
        auto& slot = slots[static_cast<std::size_t>(stripe)];
        std::vector<double> local(width);
        for_each_prime_orbit_stripe(flow_.base(), k, stripe, kStripes, [&](const MapOrbit& o) {
          EnsembleOrbit entry = make_entry(flow_, weight_, o);
          if (!(entry.period > t_ && entry.period <= hi)) return;
          std::fill(local.begin(), local.end(), 0.0);
          terms(entry, local.data());
          for (std::size_t i = 0; i < width; ++i) slot[i].add(local[i]);
        });
      });
      for (const auto& slot : slots) {
        for (std::size_t i = 0; i < width; ++i) totals[i].add(slot[i].value());
      }
    }
  }
  std::vector<double> out(width);
  for (std::size_t i = 0; i < width; ++i) out[i] = totals[i].value();
  return out;
}

MeasureApprox approximate_measure(const PeriodicEnsemble& ensemble) {
  if (ensemble.orbit_count() == 0) {
    throw EmptyCatalog("no periodic orbits with period in (" + std::to_string(ensemble.t()) +
                       ", " + std::to_string(ensemble.t() + ensemble.delta()) + "]");
  }
  MeasureApprox m;
  m.ensemble = &ensemble;
  m.normalization = ensemble.accumulate(1, [](const EnsembleOrbit& e, double* out) {
    out[0] = std::exp(e.b_value) * e.period;
  })[0];
  return m;
}

double bowen_integral(const MeasureApprox& m, const FiberWeight& g) {
  const auto num = m.ensemble->accumulate(1, [&](const EnsembleOrbit& e, double* out) {
    out[0] = std::exp(e.b_value) * weight_integral(m.ensemble->flow(), g, e.orbit);
  });
  return num[0] / m.normalization;
}

ProportionReport positive_proportion(const MeasureApprox& m,
                                     const std::function<double(const EnsembleOrbit&)>& a,
                                     double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("positive_proportion requires tol >= 0");
  const auto sums = m.ensemble->accumulate(4, [&](const EnsembleOrbit& e, double* out) {
    const double mass = std::exp(e.b_value);
    out[0] = mass * e.period;
    out[1] = mass;
    if (std::abs(a(e)) <= tol) {
      out[2] = mass * e.period;
      out[3] = mass;
    }
  });
  ProportionReport r;
  r.proportion = sums[2] / sums[0];
  r.hat_proportion = sums[3] / sums[1];
  if (sums[3] == 0.0) {
    r.ratio = 1.0;
    r.ratio_within_bounds = true;
    return r;
  }
  r.ratio = r.proportion / r.hat_proportion;
  const double t = m.ensemble->t(), hi = t + m.ensemble->delta();
  const double lo_bound = t / hi;
  const double hi_bound = t > 0.0 ? hi / t : std::numeric_limits<double>::infinity();
  r.ratio_within_bounds =
      r.ratio >= lo_bound * (1.0 - 1e-12) && r.ratio <= hi_bound * (1.0 + 1e-12);
  return r;
}

PigeonholeCertificate pigeonhole_certificate(int n, const IndexAssignment& assignment) {
  if (n < 2 || n > 5) {
    throw std::invalid_argument("pigeonhole_certificate requires 2 <= N <= 5");
  }
  PigeonholeCertificate cert;
  cert.n = n;
  cert.domain_size = 1;
  for (int j = 0; j < n; ++j) cert.domain_size *= n + 1;
  cert.range_size = static_cast<long long>(n) * (cert.domain_size / (n + 1));

  const auto describe = [](const std::vector<int>& tuple) {
    std::string s = "(";
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(tuple[j]);
    }
    return s + ")";
  };

  std::map<std::pair<int, std::vector<int>>, std::vector<int>> seen;
  std::vector<int> alpha(static_cast<std::size_t>(n), 1);
  for (;;) {
    auto [index, image] = assignment(alpha);
    if (index < 1 || index > n) {
      throw InvalidAssignment("index " + std::to_string(index) + " for tuple " +
                              describe(alpha) + " lies outside 1.." + std::to_string(n));
    }
    if (image.size() != static_cast<std::size_t>(n)) {
      throw InvalidAssignment("image of " + describe(alpha) + " has length " +
                              std::to_string(image.size()) + ", expected " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      const int expect = (j == index - 1) ? 1 : alpha[static_cast<std::size_t>(j)];
      if (image[static_cast<std::size_t>(j)] != expect) {
        throw InvalidAssignment("image of " + describe(alpha) + " must equal the tuple with " +
                                "coordinate " + std::to_string(index) + " set to 1, got " +
                                describe(image));
      }
    }
    auto [it, inserted] = seen.emplace(std::make_pair(index, std::move(image)), alpha);
    if (!inserted) {
      cert.alpha_bar = it->second;
      cert.beta_bar = alpha;
      cert.index = index;
      return cert;
    }
    int j = 0;
    for (; j < n; ++j) {
      auto& digit = alpha[static_cast<std::size_t>(j)];
      if (digit < n + 1) {
        ++digit;
        break;
      }
      digit = 1;
    }
    if (j == n) break;
  }
  throw std::logic_error("pigeonhole search exhausted the domain without a collision");
}

DecompositionReport alternate_livshits_demo(
    const MeasureApprox& m,
    const std::vector<std::function<double(const EnsembleOrbit&)>>& cocycles,
    const FiberWeight& probe, double tol) {
  const std::size_t n = cocycles.size();
  if (n == 0) throw std::invalid_argument("alternate_livshits_demo requires >= 1 cocycle");
  if (!(tol >= 0.0)) throw std::invalid_argument("alternate_livshits_demo requires tol >= 0");

  // Slots: per-index mass and integral, then total mass, full integral,
  // violation count.
  const std::size_t width = 2 * n + 3;
  const auto sums = m.ensemble->accumulate(width, [&](const EnsembleOrbit& e, double* out) {
    const double mass = std::exp(e.b_value) * e.period;
    const double contrib =
        std::exp(e.b_value) * weight_integral(m.ensemble->flow(), probe, e.orbit);
    out[2 * n] = mass;
    out[2 * n + 1] = contrib;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(cocycles[i](e)) <= tol) {
        out[i] = mass;
        out[n + i] = contrib;
        return;
      }
    }
    out[2 * n + 2] = 1.0;
  });
  if (sums[2 * n + 2] > 0.0) {
    throw HypothesisViolated(std::to_string(static_cast<long long>(sums[2 * n + 2])) +
                             " orbits carry no vanishing cocycle within tolerance " +
                             std::to_string(tol));
  }

  DecompositionReport r;
  r.mass.resize(n);
  r.component_integral.resize(n);
  const double total = sums[2 * n];
  for (std::size_t i = 0; i < n; ++i) {
    r.mass[i] = sums[i] / total;
    r.component_integral[i] = sums[i] > 0.0 ? sums[n + i] / sums[i] : 0.0;
  }
  r.full_integral = sums[2 * n + 1] / total;
  r.dominant_index = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (r.mass[i] > r.mass[static_cast<std::size_t>(r.dominant_index)]) {
      r.dominant_index = static_cast<int>(i);
    }
  }
  return r;
}

}  // namespace rigidlab
