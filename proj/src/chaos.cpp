#include "tailbound/chaos.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "tailbound/rng.hpp"

namespace tailbound {

namespace {

bool event_holds(double s, Event e) {
  switch (e) {
    case Event::GeZero: return s >= 0.0;
    case Event::GtZero: return s > 0.0;
    case Event::LeZero: return s <= 0.0;
    case Event::LtZero: return s < 0.0;
  }
  return false;
}

template <typename Fn>
void run_blocks(int n_blocks, int workers, Fn&& fn) {
  workers = std::clamp(workers, 1, std::max(1, n_blocks));
  if (workers <= 1) {
    for (int b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int b; (b = next.fetch_add(1)) < n_blocks;) fn(b);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

ChaosCoefficients ChaosCoefficients::from_full(int n, const std::vector<double>& data) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be positive");
  if (data.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("matrix data must hold n*n entries");
  double amax = 0.0;
  for (double v : data) {
    if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
    amax = std::max(amax, std::abs(v));
  }
  const double tol = 1e-12 * std::max(1.0, amax);
  std::vector<double> a(data);
  for (int i = 0; i < n; ++i) {
    if (a[static_cast<std::size_t>(i) * n + i] != 0.0)
      throw std::invalid_argument("matrix diagonal must be 0");
    for (int j = i + 1; j < n; ++j) {
      const double up = a[static_cast<std::size_t>(i) * n + j];
      const double lo = a[static_cast<std::size_t>(j) * n + i];
      if (std::abs(up - lo) > tol)
        throw std::invalid_argument("matrix must be symmetric within 1e-12");
      a[static_cast<std::size_t>(j) * n + i] = up;  // upper triangle authoritative
    }
  }
  return ChaosCoefficients(n, std::move(a));
}

ChaosCoefficients ChaosCoefficients::from_upper(int n, const std::vector<double>& upper) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be positive");
  const std::size_t expect = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (upper.size() != expect)
    throw std::invalid_argument("upper triangle must hold n(n-1)/2 entries");
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!std::isfinite(upper[k]))
        throw std::invalid_argument("matrix entries must be finite");
      a[static_cast<std::size_t>(i) * n + j] = upper[k];
      a[static_cast<std::size_t>(j) * n + i] = upper[k];
      ++k;
    }
  return ChaosCoefficients(n, std::move(a));
}

ChaosCoefficients ChaosCoefficients::all_ones(int n) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be positive");
  std::vector<double> a(static_cast<std::size_t>(n) * n, 1.0);
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = 0.0;
  return ChaosCoefficients(n, std::move(a));
}

bool ChaosCoefficients::is_zero() const {
  for (double v : a_)
    if (v != 0.0) return false;
  return true;
}

double ChaosCoefficients::sum_sq_upper() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return s;
}

Spectrum eigen_symmetric(const ChaosCoefficients& c) {
  const int n = c.size();
  std::vector<double> a(c.data());
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  auto offdiag_sq = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += at(i, j) * at(i, j);
    return 2.0 * s;
  };

  const double initial = std::sqrt(offdiag_sq());
  const double threshold = 1e-12 * initial;

  bool converged = std::sqrt(offdiag_sq()) <= threshold;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        const double tau = sn / (1.0 + cs);
        const double app = at(p, p), aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = at(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(r, p), arq = at(r, q);
          at(r, p) = at(p, r) = arp - sn * (arq + tau * arp);
          at(r, q) = at(q, r) = arq + sn * (arp - tau * arq);
        }
      }
    }
    converged = std::sqrt(offdiag_sq()) <= threshold;
  }
  if (!converged)
    throw std::runtime_error("jacobi eigensolver failed to converge in 100 sweeps");

  Spectrum s;
  s.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) s.eigenvalues[i] = at(i, i);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
  s.frobenius_sq = 0.0;
  s.fourth_power_sum = 0.0;
  for (double l : s.eigenvalues) {
    s.frobenius_sq += l * l;
    s.fourth_power_sum += l * l * l * l;
  }
  return s;
}

GaussianChaosMoments gaussian_chaos_moments(const Spectrum& s) {
  const double l2 = s.frobenius_sq;
  const double l4 = s.fourth_power_sum;
  return {l2 / 2.0, (48.0 * l4 + 12.0 * l2 * l2) / 16.0};
}

// p = 4 is admitted: there the interpolated constant coincides with the
// fourth-moment comparison itself.
double interpolation_constant(double p) {
  if (!(p > 0.0 && p <= 4.0) || p == 2.0)
    throw std::domain_error("p must lie in (0,2) or (2,4]");
  const double e = p > 2.0 ? (p - 2.0) / (2.0 * p) : (2.0 - p) / (2.0 * p);
  return std::pow(15.0, e);
}

namespace {

struct EnumBlockTotals {
  std::uint64_t ge = 0;
  std::uint64_t gt = 0;
  long double m2 = 0.0L;
  long double m4 = 0.0L;
  long double m1 = 0.0L;
};

// Enumerates one sign-space block: the top `high_bits` free spins are pinned
// to the block pattern, the low ones run through a Gray code so each step
// flips a single spin and S is updated in O(n) from the row sums t_i.
EnumBlockTotals enumerate_block(const ChaosCoefficients& c, int low_bits,
                                std::uint64_t block, int high_bits, double ztol) {
  const int n = c.size();
  std::vector<double> t(n);
  std::vector<double> r(n, 1.0);
  for (int h = 0; h < high_bits; ++h)
    if ((block >> h) & 1) r[n - high_bits + h] = -1.0;

  double s_val = 0.0;
  auto recompute = [&] {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += r[j] * c(i, j);
      t[i] = acc;
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += r[i] * t[i];
    s_val = 0.5 * acc;
  };
  recompute();

  EnumBlockTotals out;
  const std::uint64_t steps = 1ull << low_bits;
  for (std::uint64_t step = 0;; ++step) {
    if (s_val >= -ztol) {
      ++out.ge;
      if (s_val > ztol) ++out.gt;
    }
    const long double s2 = static_cast<long double>(s_val) * s_val;
    out.m2 += s2;
    out.m4 += s2 * s2;
    out.m1 += s_val < 0.0 ? static_cast<long double>(-s_val) : s_val;

    if (step + 1 == steps) break;
    const int spin = std::countr_zero(step + 1) + 1;
    s_val -= 2.0 * r[spin] * t[spin];
    const double delta = -2.0 * r[spin];
    for (int j = 0; j < n; ++j) t[j] += delta * c(j, spin);
    r[spin] = -r[spin];
    if (((step + 1) & 1023) == 0) recompute();  // bound incremental drift
  }
  return out;
}

}  // namespace

EnumerationResult rademacher_enumerate(const ChaosCoefficients& c, int workers) {
  const int n = c.size();
  if (n > 24) throw std::length_error("exact enumeration limited to n <= 24");

  double scale_abs = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) scale_abs += std::abs(c(i, j));
  const double ztol = 1e-10 * scale_abs;

  const int free_spins = n - 1;
  const int high_bits = std::min(6, free_spins);
  const int low_bits = free_spins - high_bits;
  const int n_blocks = 1 << high_bits;

  std::vector<EnumBlockTotals> slots(n_blocks);
  run_blocks(n_blocks, workers, [&](int b) {
    slots[b] = enumerate_block(c, low_bits, static_cast<std::uint64_t>(b), high_bits, ztol);
  });

  EnumBlockTotals total;
  for (const auto& s : slots) {  // fixed merge order keeps results worker-independent
    total.ge += s.ge;
    total.gt += s.gt;
    total.m2 += s.m2;
    total.m4 += s.m4;
    total.m1 += s.m1;
  }

  EnumerationResult res;
  res.n = n;
  const std::uint64_t half = 1ull << free_spins;
  const long double inv = 1.0L / static_cast<long double>(half);
  res.count_ge = 2 * total.ge;  // r <-> -r symmetry
  res.count_gt = 2 * total.gt;
  res.prob_ge = static_cast<double>(total.ge) / static_cast<double>(half);
  res.prob_gt = static_cast<double>(total.gt) / static_cast<double>(half);
  res.m2 = static_cast<double>(total.m2 * inv);
  res.m4 = static_cast<double>(total.m4 * inv);
  res.m1_abs = static_cast<double>(total.m1 * inv);
  return res;
}

double chaos_ratio_42(const ChaosCoefficients& c, ChaosModel model, int workers) {
  if (c.is_zero()) throw std::invalid_argument("coefficients must not be identically zero");
  if (model == ChaosModel::RademacherExact) {
    const EnumerationResult e = rademacher_enumerate(c, workers);
    return std::pow(e.m4, 0.25) / std::sqrt(e.m2);
  }
  const GaussianChaosMoments m = gaussian_chaos_moments(eigen_symmetric(c));
  return std::pow(m.m4, 0.25) / std::sqrt(m.m2);
}

namespace {

constexpr std::uint64_t kMcBlock = 65536;

// One PRNG stream per fixed-size sample block; integer hit counts merge
// exactly, so the result is identical for every worker count.
template <typename SampleFn>
std::uint64_t mc_count(std::uint64_t samples, std::uint64_t seed, int workers,
                       SampleFn&& hit) {
  const int n_blocks = static_cast<int>((samples + kMcBlock - 1) / kMcBlock);
  std::vector<std::uint64_t> counts(n_blocks, 0);
  run_blocks(n_blocks, workers, [&](int b) {
    Xoshiro256pp rng(seed, static_cast<std::uint64_t>(b));
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kMcBlock;
    const std::uint64_t end = std::min(samples, begin + kMcBlock);
    std::uint64_t k = 0;
    for (std::uint64_t i = begin; i < end; ++i)
      if (hit(rng)) ++k;
    counts[b] = k;
  });
  std::uint64_t total = 0;
  for (std::uint64_t k : counts) total += k;
  return total;
}

MonteCarloResult make_prob_result(std::uint64_t hits, std::uint64_t samples,
                                  std::uint64_t seed) {
  MonteCarloResult r;
  r.samples = samples;
  r.seed = seed;
  r.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  const WilsonInterval w = wilson_interval(hits, samples);
  r.ci_low = w.low;
  r.ci_high = w.high;
  return r;
}

double chaos_form(const ChaosCoefficients& c, const std::vector<double>& x) {
  const int n = c.size();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = i + 1; j < n; ++j) row += x[j] * c(i, j);
    s += x[i] * row;
  }
  return s;
}

}  // namespace

MonteCarloResult mc_estimate(const ChaosCoefficients& c, McModel model, Event event,
                             std::uint64_t samples, std::uint64_t seed, int workers) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const int n = c.size();
  const int n_blocks = static_cast<int>((samples + kMcBlock - 1) / kMcBlock);
  std::vector<std::uint64_t> counts(n_blocks, 0);
  run_blocks(n_blocks, workers, [&](int b) {
    Xoshiro256pp rng(seed, static_cast<std::uint64_t>(b));
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kMcBlock;
    const std::uint64_t end = std::min(samples, begin + kMcBlock);
    std::vector<double> x(n);
    std::uint64_t k = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      for (int j = 0; j < n; ++j)
        x[j] = model == McModel::Rademacher ? static_cast<double>(rng.sign()) : rng.normal();
      if (event_holds(chaos_form(c, x), event)) ++k;
    }
    counts[b] = k;
  });
  std::uint64_t hits = 0;
  for (std::uint64_t k : counts) hits += k;
  return make_prob_result(hits, samples, seed);
}

VectorSystem::VectorSystem(std::vector<std::vector<double>> vectors)
    : vectors_(std::move(vectors)),
      gram_(ChaosCoefficients::from_upper(1, {})) {
  const int n = static_cast<int>(vectors_.size());
  if (n < 1) throw std::invalid_argument("vector system needs at least one vector");
  const std::size_t dim = vectors_.front().size();
  if (dim < 1) throw std::invalid_argument("vectors must have positive dimension");
  for (const auto& v : vectors_) {
    if (v.size() != dim)
      throw std::invalid_argument("vectors must share a common dimension");
    for (double w : v)
      if (!std::isfinite(w)) throw std::invalid_argument("vector entries must be finite");
  }
  std::vector<double> upper;
  upper.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < dim; ++k) dot += vectors_[i][k] * vectors_[j][k];
      upper.push_back(2.0 * dot);
    }
  }
  gram_ = ChaosCoefficients::from_upper(n, upper);
  for (const auto& v : vectors_)
    for (double w : v) sum_norm_sq_ += w * w;
}

HilbertNormProbs hilbert_norm_probs_exact(const VectorSystem& v, int workers) {
  if (v.sum_norm_sq() == 0.0)
    throw std::invalid_argument("vectors must not all be zero");
  const EnumerationResult e = rademacher_enumerate(v.gram_offdiag(), workers);
  const std::uint64_t total = 1ull << e.n;
  const double p_le = static_cast<double>(total - e.count_gt) / static_cast<double>(total);
  return {e.prob_ge, p_le};
}

HilbertNormProbsMc hilbert_norm_probs_mc(const VectorSystem& v, std::uint64_t samples,
                                         std::uint64_t seed, int workers) {
  if (v.sum_norm_sq() == 0.0)
    throw std::invalid_argument("vectors must not all be zero");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const ChaosCoefficients& g = v.gram_offdiag();
  const int n = g.size();
  const int n_blocks = static_cast<int>((samples + kMcBlock - 1) / kMcBlock);
  std::vector<std::uint64_t> ge(n_blocks, 0), le(n_blocks, 0);
  run_blocks(n_blocks, workers, [&](int b) {
    Xoshiro256pp rng(seed, static_cast<std::uint64_t>(b));
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kMcBlock;
    const std::uint64_t end = std::min(samples, begin + kMcBlock);
    std::vector<double> x(n);
    std::uint64_t kge = 0, kle = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      for (int k = 0; k < n; ++k) x[k] = static_cast<double>(rng.sign());
      const double s = chaos_form(g, x);
      if (s >= 0.0) ++kge;
      if (s <= 0.0) ++kle;
    }
    ge[b] = kge;
    le[b] = kle;
  });
  std::uint64_t tot_ge = 0, tot_le = 0;
  for (int b = 0; b < n_blocks; ++b) {
    tot_ge += ge[b];
    tot_le += le[b];
  }
  return {make_prob_result(tot_ge, samples, seed), make_prob_result(tot_le, samples, seed)};
}

MonteCarloResult gaussian_hilbert_prob(const std::vector<double>& lambdas,
                                       std::uint64_t samples, std::uint64_t seed,
                                       int workers) {
  if (lambdas.empty())
    throw std::invalid_argument("at least one coefficient required");
  bool any = false;
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l))
      throw std::invalid_argument("coefficients must be finite and >= 0");
    if (l > 0.0) any = true;
  }
  if (!any) throw std::invalid_argument("at least one coefficient must be positive");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");

  const std::uint64_t hits = mc_count(samples, seed, workers, [&](Xoshiro256pp& rng) {
    double t = 0.0;
    for (double l : lambdas) {
      const double g = rng.normal();
      t += l * (g * g - 1.0);
    }
    return t > 0.0;
  });
  return make_prob_result(hits, samples, seed);
}

ExponentialSumStats exponential_sum_stats(const std::vector<double>& a,
                                          std::uint64_t samples, std::uint64_t seed,
                                          int workers) {
  if (a.empty()) throw std::invalid_argument("at least one coefficient required");
  double s2 = 0.0, s4 = 0.0;
  bool any = false;
  for (double v : a) {
    if (!std::isfinite(v)) throw std::invalid_argument("coefficients must be finite");
    if (v != 0.0) any = true;
    s2 += v * v;
    s4 += v * v * v * v;
  }
  if (!any) throw std::invalid_argument("coefficients must not all be zero");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");

  ExponentialSumStats out;
  out.c2sq = s2;
  out.c4fourth = 6.0 * s4 + 3.0 * s2 * s2;
  out.ratio = out.c4fourth / (s2 * s2);

  struct BlockAcc {
    long double abs_sum = 0.0L;
    long double sq_sum = 0.0L;
    std::uint64_t ge = 0;
  };
  const int n_blocks = static_cast<int>((samples + kMcBlock - 1) / kMcBlock);
  std::vector<BlockAcc> slots(n_blocks);
  run_blocks(n_blocks, workers, [&](int b) {
    Xoshiro256pp rng(seed, static_cast<std::uint64_t>(b));
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kMcBlock;
    const std::uint64_t end = std::min(samples, begin + kMcBlock);
    BlockAcc acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      double xi = 0.0;
      for (double v : a) xi += v * (rng.exponential() - 1.0);
      acc.abs_sum += std::abs(xi);
      acc.sq_sum += static_cast<long double>(xi) * xi;
      if (xi >= 0.0) ++acc.ge;
    }
    slots[b] = acc;
  });
  BlockAcc total;
  for (const auto& s : slots) {
    total.abs_sum += s.abs_sum;
    total.sq_sum += s.sq_sum;
    total.ge += s.ge;
  }

  const double nn = static_cast<double>(samples);
  const double mean = static_cast<double>(total.abs_sum) / nn;
  const double var =
      std::max(0.0, static_cast<double>(total.sq_sum) / nn - mean * mean);
  const double half = 1.959963984540054 * std::sqrt(var / nn);
  out.c1_mc = {mean, mean - half, mean + half, samples, seed};
  out.prob_ge_mc = make_prob_result(total.ge, samples, seed);
  return out;
}

}  // namespace tailbound
