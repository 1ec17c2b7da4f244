#pragma once

#include <cstdint>
#include <vector>

#include "tailbound/bounds.hpp"

namespace tailbound {

/// Symmetric coefficient matrix with zero diagonal for the quadratic form
/// S = sum_{i<j} xi_i xi_j a_ij.
class ChaosCoefficients {
 public:
  /// Full n*n row-major data; rejects nonzero diagonal or asymmetry beyond
  /// 1e-12 relative to the largest entry.
  static ChaosCoefficients from_full(int n, const std::vector<double>& data);
  /// Upper triangle in row order: a_12, a_13, ..., a_{n-1,n}.
  static ChaosCoefficients from_upper(int n, const std::vector<double>& upper);
  static ChaosCoefficients all_ones(int n);

  int size() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return a_; }
  bool is_zero() const;
  /// sum_{i<j} a_ij^2; equals E S^2 for unit-variance symmetric factors.
  double sum_sq_upper() const;

 private:
  ChaosCoefficients(int n, std::vector<double> a) : n_(n), a_(std::move(a)) {}
  int n_ = 0;
  std::vector<double> a_;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  double frobenius_sq;              // sum of squared eigenvalues
  double fourth_power_sum;          // sum of fourth powers
};

/// Eigenvalues by cyclic Jacobi rotations; off-diagonal Frobenius norm is
/// driven below 1e-12 of its initial value (at most 100 sweeps).
Spectrum eigen_symmetric(const ChaosCoefficients& c);

struct GaussianChaosMoments {
  double m2;  // E S^2 = (sum lambda^2)/2
  double m4;  // E S^4 = (48 sum lambda^4 + 12 (sum lambda^2)^2)/16
};

/// Moments of the Gaussian chaos from the spectrum alone.  The quartic
/// coefficients follow from E(g^2-1)^2 = 2 and E(g^2-1)^4 = 60 and are gated
/// by a Monte Carlo test; m4/m2^2 <= 15 with equality only for rank one.
GaussianChaosMoments gaussian_chaos_moments(const Spectrum& s);

enum class ChaosModel { RademacherExact, GaussianSpectral };

/// ||S||_4 / ||S||_2 for the requested model; at most 15^{1/4}.
double chaos_ratio_42(const ChaosCoefficients& c, ChaosModel model, int workers = 1);

/// Lp/L2 comparison constant obtained by interpolation: 15^{(p-2)/(2p)} for
/// p in (2,4) and 15^{(2-p)/(2p)} for p in (0,2).
double interpolation_constant(double p);

struct EnumerationResult {
  int n = 0;
  std::uint64_t count_ge = 0;  // sign vectors with S >= 0, out of 2^n
  std::uint64_t count_gt = 0;
  double prob_ge = 0.0;        // count_ge / 2^n
  double prob_gt = 0.0;
  double m2 = 0.0;             // E S^2
  double m4 = 0.0;             // E S^4
  double m1_abs = 0.0;         // E |S|
};

/// Exact enumeration over all sign vectors (n <= 24).  Uses the r <-> -r
/// symmetry to halve the work and Gray-code single-flip updates of S.
/// Identical output for any worker count.
EnumerationResult rademacher_enumerate(const ChaosCoefficients& c, int workers = 1);

struct MonteCarloResult {
  double estimate = 0.0;
  double ci_low = 0.0;   // 95% interval (Wilson for probabilities,
  double ci_high = 0.0;  // normal approximation for means)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

enum class McModel { Rademacher, Gaussian };

/// Seeded Monte Carlo estimate of P(S in event).  Work is split into fixed
/// 65536-sample blocks with one PRNG stream per block, so results do not
/// depend on the worker count.
MonteCarloResult mc_estimate(const ChaosCoefficients& c, McModel model, Event event,
                             std::uint64_t samples, std::uint64_t seed, int workers = 1);

/// Vectors a_1..a_n of a real inner-product space plus the derived coefficient
/// matrix with entries 2<a_i, a_j> off the diagonal.
class VectorSystem {
 public:
  explicit VectorSystem(std::vector<std::vector<double>> vectors);
  int count() const { return static_cast<int>(vectors_.size()); }
  const std::vector<std::vector<double>>& vectors() const { return vectors_; }
  const ChaosCoefficients& gram_offdiag() const { return gram_; }
  double sum_norm_sq() const { return sum_norm_sq_; }

 private:
  std::vector<std::vector<double>> vectors_;
  ChaosCoefficients gram_;
  double sum_norm_sq_ = 0.0;
};

struct HilbertNormProbs {
  double p_upper;  // P(||sum r_i a_i|| >= sqrt(sum ||a_i||^2))
  double p_lower;  // P(||sum r_i a_i|| <= sqrt(sum ||a_i||^2))
};

/// Both norm probabilities by exact sign enumeration (n <= 24).
HilbertNormProbs hilbert_norm_probs_exact(const VectorSystem& v, int workers = 1);

struct HilbertNormProbsMc {
  MonteCarloResult upper;
  MonteCarloResult lower;
};

HilbertNormProbsMc hilbert_norm_probs_mc(const VectorSystem& v, std::uint64_t samples,
                                         std::uint64_t seed, int workers = 1);

/// Monte Carlo estimate of P(sum_k lambda_k (g_k^2 - 1) > 0), the probability
/// that a Gaussian Hilbert-space norm exceeds its root mean square.
MonteCarloResult gaussian_hilbert_prob(const std::vector<double>& lambdas,
                                       std::uint64_t samples, std::uint64_t seed,
                                       int workers = 1);

struct ExponentialSumStats {
  double c2sq;      // E xi^2 = sum a_i^2
  double c4fourth;  // E xi^4 = 6 sum a_i^4 + 3 (sum a_i^2)^2
  double ratio;     // c4fourth / c2sq^2, at most 9
  MonteCarloResult c1_mc;       // E |xi|
  MonteCarloResult prob_ge_mc;  // P(xi >= 0)
};

/// Centered exponential sums xi = sum a_i (eta_i - 1) with unit-rate eta_i.
ExponentialSumStats exponential_sum_stats(const std::vector<double>& a,
                                          std::uint64_t samples, std::uint64_t seed,
                                          int workers = 1);

}  // namespace tailbound
