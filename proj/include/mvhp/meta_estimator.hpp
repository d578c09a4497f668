#pragma once

#include "mvhp/ma2_mle.hpp"
#include "mvhp/numerics.hpp"
#include "mvhp/panel.hpp"

#include <compare>
#include <map>
#include <optional>
#include <vector>

namespace mvhp {

inline constexpr double kMonthlySnr = 1.0 / 14400.0;
inline constexpr double kQuarterlySnr = 1.0 / 1600.0;

/// Aggregation vector e_i (second == nullopt) or e_i + e_j with i < j.
struct Aggregate {
  std::size_t first = 0;
  std::optional<std::size_t> second;

  bool is_pair() const noexcept { return second.has_value(); }
  std::vector<double> weights(std::size_t d) const;

  friend auto operator<=>(const Aggregate&, const Aggregate&) = default;
};

/// Singletons e_1..e_d first, then pairs (i, j) in lexicographic order.
std::vector<Aggregate> aggregation_set(std::size_t d);

struct AutocovSet {
  SymMatrix gamma0;
  SymMatrix gamma1;
  SymMatrix gamma2;
};

struct StructuralParams {
  SymMatrix sigma_eps;
  SymMatrix sigma_xi;
  double alpha = 0.0;      // identity multiple added to sigma_xi
  double eps_alpha = 0.0;  // identity multiple added to sigma_eps (fallback when not PD)
};

struct AggregateFit {
  Aggregate w;
  ma2::Fit fit;
};

struct MetaResult {
  StructuralParams params;
  StructuralParams unregularized;
  AutocovSet gammas;
  std::vector<AggregateFit> fits;  // in aggregation_set order
};

/// Second differences y_t - 2 y_{t-1} + y_{t-2}; N - 2 rows.
Matrix difference_twice(const Matrix& y);

/// x_t = w' z_t. `w` must be a 0/1 vector with one or two ones.
std::vector<double> aggregate(const Matrix& z, std::span<const double> w);
std::vector<double> aggregate(const Matrix& z, const Aggregate& w);

/// Closed-form reassembly of the d x d autocovariances from the model-implied
/// autocovariances of every aggregate.
AutocovSet reconstruct_gammas(const std::map<Aggregate, ScalarMA2>& models, std::size_t d);

StructuralParams extract_structural(const AutocovSet& g);

/// Smallest eigenvalue of sigma_xi * sigma_eps^{-1}.
double min_snr_eigenvalue(const SymMatrix& sigma_eps, const SymMatrix& sigma_xi);

/// Smallest alpha >= 0 such that the smallest eigenvalue of
/// (sigma_xi + alpha I) sigma_eps^{-1} is at least `target_min_snr`, found by
/// bisection to 1e-12. Requires sigma_eps positive definite.
StructuralParams regularize(const StructuralParams& p, double target_min_snr);

struct MetaOptions {
  double target_min_snr = kMonthlySnr;
  unsigned threads = 0;  // 0: worker_count()
};

/// Full pipeline: difference, aggregate, fit every aggregate, reassemble,
/// extract and regularize. If sigma_eps is not positive definite it is first
/// shifted to a minimum eigenvalue of 1e-8 * trace / d (reported in eps_alpha).
MetaResult meta_estimate(const Matrix& y, const MetaOptions& options = {});

/// Worker cap: MVHP_THREADS when set to a positive integer, else the
/// hardware concurrency.
unsigned worker_count();

}  // namespace mvhp
