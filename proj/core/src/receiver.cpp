#include "psk/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "psk/divergence.hpp"

namespace psk {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// P[Y > y_max] for Y ~ Poi(rate), summed directly so tiny tails keep their
// relative precision.
double poisson_upper_tail(double rate, std::uint32_t y_max) {
  double tail = 0.0;
  for (std::uint64_t y = std::uint64_t{y_max} + 1;; ++y) {
    const double term = std::exp(poisson_log_pmf(rate, y));
    tail += term;
    if (static_cast<double>(y) > rate && term <= 1e-18 * tail) break;
    if (tail == 0.0 && static_cast<double>(y) > rate) break;
  }
  return tail;
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t hypothesis,
                   std::uint64_t trial) {
  std::uint64_t s = mix64(seed + kGolden);
  s = mix64(s ^ (hypothesis + 2 * kGolden));
  s = mix64(s ^ (trial + 3 * kGolden));
  state_ = s;
}

TrialRng::result_type TrialRng::operator()() {
  state_ += kGolden;
  return mix64(state_);
}

double TrialRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint32_t sample_poisson(double rate, double exp_neg_rate, TrialRng& rng) {
  if (rate > 500.0) {
    std::poisson_distribution<std::uint32_t> dist(rate);
    return dist(rng);
  }
  // Sequential inversion; expected cost O(1 + rate).
  const double u = rng.uniform();
  double p = exp_neg_rate;
  double cdf = p;
  std::uint32_t k = 0;
  while (u >= cdf && p > 0.0) {
    ++k;
    p *= rate / k;
    cdf += p;
  }
  return k;
}

OpenLoopPolicy::OpenLoopPolicy(std::vector<Complex> displacements,
                               SignalScale scale,
                               PskConstellation constellation,
                               OperatingRatios ratios)
    : displacements_(std::move(displacements)),
      scale_(scale),
      constellation_(std::move(constellation)),
      ratios_(ratios) {
  if (displacements_.empty()) {
    throw std::invalid_argument("a policy needs at least one slice");
  }
  scale_.slices = static_cast<int>(displacements_.size());
  scale_.validate();
  for (const auto& v : displacements_) {
    if (std::abs(v) > ratios_.r_ca() + kDiskTolerance) {
      throw InfeasibleError("policy displacement outside the disk R_CA");
    }
  }
  if (mean_energy() > ratios_.r_ce() + 1e-12) {
    throw InfeasibleError("policy mean energy " + std::to_string(mean_energy()) +
                          " exceeds R_CE = " + std::to_string(ratios_.r_ce()));
  }
  const std::size_t m_count = constellation_.num_states();
  const double per_slice = scale_.alpha_sq / scale_.slices;
  rates_.resize(displacements_.size() * m_count);
  log_rates_.resize(rates_.size());
  for (std::size_t n = 0; n < displacements_.size(); ++n) {
    for (std::size_t m = 0; m < m_count; ++m) {
      const double rate =
          per_slice * normalized_rate(displacements_[n], m, constellation_, ratios_);
      rates_[n * m_count + m] = rate;
      log_rates_[n * m_count + m] = std::log(rate);
    }
  }
}

double OpenLoopPolicy::mean_energy() const {
  double e = 0.0;
  for (const auto& v : displacements_) e += std::norm(v);
  return e / static_cast<double>(displacements_.size());
}

ControlDistribution OpenLoopPolicy::type() const {
  return ControlDistribution::type_of(displacements_);
}

OpenLoopPolicy realize_policy(const ControlDistribution& q,
                              const SignalScale& scale,
                              const PskConstellation& constellation,
                              const OperatingRatios& ratios) {
  scale.validate();
  q.require_feasible(ratios);
  const auto n = static_cast<std::uint64_t>(scale.slices);

  std::vector<Complex> points;
  std::vector<std::uint64_t> counts;
  std::vector<double> remainders;
  std::uint64_t assigned = 0;
  for (const auto& atom : q.atoms()) {
    const double exact = atom.weight * static_cast<double>(n);
    const auto base = static_cast<std::uint64_t>(std::floor(exact));
    points.push_back(atom.point);
    counts.push_back(base);
    remainders.push_back(exact - static_cast<double>(base));
    assigned += base;
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) {
    ++counts[order[k % order.size()]];
  }

  auto total_energy = [&] {
    double e = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      e += static_cast<double>(counts[i]) * std::norm(points[i]);
    }
    return e;
  };
  const double budget = ratios.r_ce() + 1e-12;
  if (total_energy() / static_cast<double>(n) > budget) {
    auto origin = std::find(points.begin(), points.end(), Complex{0.0, 0.0});
    std::size_t sink;
    if (origin == points.end()) {
      points.emplace_back(0.0, 0.0);
      counts.push_back(0);
      sink = points.size() - 1;
    } else {
      sink = static_cast<std::size_t>(origin - points.begin());
    }
    while (total_energy() / static_cast<double>(n) > budget) {
      std::size_t source = sink;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (counts[i] > 0 &&
            (source == sink || std::abs(points[i]) > std::abs(points[source]))) {
          source = i;
        }
      }
      if (source == sink) break;
      --counts[source];
      ++counts[sink];
    }
  }

  std::vector<Complex> sequence;
  sequence.reserve(n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    sequence.insert(sequence.end(), counts[i], points[i]);
  }
  return OpenLoopPolicy(std::move(sequence), scale, constellation, ratios);
}

std::vector<std::uint32_t> sample_trial(const OpenLoopPolicy& policy,
                                        std::size_t true_m, TrialRng& rng) {
  if (true_m >= policy.num_states()) {
    throw std::invalid_argument("hypothesis index out of range");
  }
  std::vector<std::uint32_t> counts(policy.slices());
  for (std::size_t n = 0; n < policy.slices(); ++n) {
    const double rate = policy.rate(n, true_m);
    counts[n] = sample_poisson(rate, std::exp(-rate), rng);
  }
  return counts;
}

std::size_t ml_decide(const OpenLoopPolicy& policy,
                      std::span<const std::uint32_t> counts) {
  if (counts.size() != policy.slices()) {
    throw std::invalid_argument("count vector length must equal slice count");
  }
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t m = 0; m < policy.num_states(); ++m) {
    double score = 0.0;
    for (std::size_t n = 0; n < counts.size(); ++n) {
      score += counts[n] * policy.log_rate(n, m) - policy.rate(n, m);
    }
    if (m == 0 || score > best_score) {
      best = m;
      best_score = score;
    }
  }
  return best;
}

MonteCarloReport monte_carlo(const OpenLoopPolicy& policy,
                             std::uint64_t trials_per_hypothesis,
                             std::uint64_t seed, unsigned workers) {
  if (trials_per_hypothesis < 1) {
    throw std::invalid_argument("monte_carlo needs at least one trial");
  }
  const std::size_t m_count = policy.num_states();
  const std::size_t slices = policy.slices();
  std::vector<double> exp_neg(slices * m_count);
  for (std::size_t n = 0; n < slices; ++n) {
    for (std::size_t m = 0; m < m_count; ++m) {
      exp_neg[n * m_count + m] = std::exp(-policy.rate(n, m));
    }
  }

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t total = trials_per_hypothesis * m_count;
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, total / 1024)));
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(m_count, 0));

  auto run = [&](unsigned w) {
    std::vector<std::uint32_t> counts(slices);
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    for (std::uint64_t job = begin; job < end; ++job) {
      const std::size_t m = job / trials_per_hypothesis;
      const std::uint64_t trial = job % trials_per_hypothesis;
      TrialRng rng(seed, m, trial);
      for (std::size_t n = 0; n < slices; ++n) {
        counts[n] = sample_poisson(policy.rate(n, m), exp_neg[n * m_count + m], rng);
      }
      if (ml_decide(policy, counts) != m) ++partial[w][m];
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }

  MonteCarloReport report;
  report.trials_per_hypothesis = trials_per_hypothesis;
  report.seed = seed;
  report.errors.assign(m_count, 0);
  for (const auto& p : partial) {
    for (std::size_t m = 0; m < m_count; ++m) report.errors[m] += p[m];
  }
  const double t = static_cast<double>(trials_per_hypothesis);
  double p_sum = 0.0;
  double var_sum = 0.0;
  for (std::size_t m = 0; m < m_count; ++m) {
    const double p = static_cast<double>(report.errors[m]) / t;
    p_sum += p;
    var_sum += p * (1.0 - p) / t;
  }
  report.p_e = p_sum / static_cast<double>(m_count);
  report.stderr_p_e = std::sqrt(var_sum) / static_cast<double>(m_count);
  return report;
}

ExactError exact_error_small(const OpenLoopPolicy& policy, std::uint32_t y_max) {
  const std::size_t m_count = policy.num_states();
  const std::size_t slices = policy.slices();
  const std::size_t width = std::size_t{y_max} + 1;

  // pmf[(n * m_count + m) * width + y], score term likewise.
  std::vector<double> pmf(slices * m_count * width);
  std::vector<double> score(pmf.size());
  ExactError out;
  std::vector<double> tail(m_count, 0.0);
  for (std::size_t n = 0; n < slices; ++n) {
    for (std::size_t m = 0; m < m_count; ++m) {
      const double rate = policy.rate(n, m);
      for (std::uint32_t y = 0; y <= y_max; ++y) {
        const std::size_t idx = (n * m_count + m) * width + y;
        pmf[idx] = std::exp(poisson_log_pmf(rate, y));
        score[idx] = y * policy.log_rate(n, m) - rate;
      }
      tail[m] += poisson_upper_tail(rate, y_max);
    }
  }
  out.tail_bound = *std::max_element(tail.begin(), tail.end());
  out.truncation_adequate = out.tail_bound <= 1e-9;

  std::vector<double> mass(m_count, 0.0);
  std::vector<double> err(m_count, 0.0);
  // prob/acc hold the running per-hypothesis product and score at each depth.
  std::vector<double> prob((slices + 1) * m_count, 1.0);
  std::vector<double> acc((slices + 1) * m_count, 0.0);
  std::vector<std::uint32_t> y(slices, 0);

  auto descend = [&](std::size_t n) {
    for (std::size_t m = 0; m < m_count; ++m) {
      const std::size_t idx = (n * m_count + m) * width + y[n];
      prob[(n + 1) * m_count + m] = prob[n * m_count + m] * pmf[idx];
      acc[(n + 1) * m_count + m] = acc[n * m_count + m] + score[idx];
    }
  };
  // Iterative odometer over {0..y_max}^N.
  for (std::size_t n = 0; n < slices; ++n) descend(n);
  while (true) {
    const double* leaf_acc = &acc[slices * m_count];
    const double* leaf_prob = &prob[slices * m_count];
    std::size_t decided = 0;
    for (std::size_t m = 1; m < m_count; ++m) {
      if (leaf_acc[m] > leaf_acc[decided]) decided = m;
    }
    for (std::size_t m = 0; m < m_count; ++m) {
      mass[m] += leaf_prob[m];
      if (m != decided) err[m] += leaf_prob[m];
    }
    std::size_t n = slices;
    while (n > 0 && y[n - 1] == y_max) {
      y[n - 1] = 0;
      --n;
    }
    if (n == 0) break;
    ++y[n - 1];
    for (std::size_t k = n - 1; k < slices; ++k) descend(k);
  }

  double p = 0.0;
  for (std::size_t m = 0; m < m_count; ++m) p += err[m] / mass[m];
  out.p_e = p / static_cast<double>(m_count);
  return out;
}

std::uint32_t suggest_truncation(const OpenLoopPolicy& policy, double tail) {
  double max_rate = 0.0;
  for (std::size_t n = 0; n < policy.slices(); ++n) {
    for (std::size_t m = 0; m < policy.num_states(); ++m) {
      max_rate = std::max(max_rate, policy.rate(n, m));
    }
  }
  std::uint32_t y = static_cast<std::uint32_t>(std::ceil(max_rate));
  while (poisson_upper_tail(max_rate, y) > tail) ++y;
  return y;
}

}  // namespace psk
