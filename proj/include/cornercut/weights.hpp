#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cornercut/errors.hpp"

namespace cornercut {

/// Default margin used when checking the strict inequalities that define an
/// admissible weight pair. Floating point cannot witness "inf > 0" exactly,
/// so validity means every guarded quantity exceeds this margin.
inline constexpr double kDefaultMargin = 1e-12;

/// Contraction threshold below which refinement of nets is certified.
inline constexpr double kNetContractionThreshold = 0.5773502691896257;  // sqrt(3)/3

/// One period of corner cutting weights (alpha_i, beta_i), extended
/// periodically to all integer indices. Construction validates the
/// admissibility conditions alpha_i > 0, 1 - beta_i > 0, beta_i - alpha_i > 0
/// (each strictly above `margin`).
class WeightPair {
 public:
  WeightPair(std::vector<double> alpha, std::vector<double> beta,
             double margin = kDefaultMargin);

  std::size_t period() const noexcept { return alpha_.size(); }

  /// Periodic access: any integer index maps into the stored period.
  double alpha(std::ptrdiff_t i) const noexcept { return alpha_[wrap(i)]; }
  double beta(std::ptrdiff_t i) const noexcept { return beta_[wrap(i)]; }

  const std::vector<double>& alphas() const noexcept { return alpha_; }
  const std::vector<double>& betas() const noexcept { return beta_; }

  /// Margin the pair was validated against.
  double margin() const noexcept { return margin_; }

  /// Smallest of the guarded quantities over the period; the witnessed
  /// distance from the class boundary.
  double class_slack() const noexcept { return slack_; }

 private:
  std::size_t wrap(std::ptrdiff_t i) const noexcept {
    auto p = static_cast<std::ptrdiff_t>(alpha_.size());
    std::ptrdiff_t r = i % p;
    return static_cast<std::size_t>(r < 0 ? r + p : r);
  }

  std::vector<double> alpha_;
  std::vector<double> beta_;
  double margin_ = 0.0;
  double slack_ = 0.0;
};

/// Validate one period of weights. Thin wrapper over the WeightPair
/// constructor, kept as a free function for symmetry with the bindings.
WeightPair validate_weight_pair(std::vector<double> alpha, std::vector<double> beta,
                                double margin = kDefaultMargin);

/// Contraction factor of a weight pair: the largest ratio by which one
/// refinement step can shrink (or stretch) a parameter gap,
///   max over one period of { beta_i - alpha_i, 1 - beta_{i-1} + alpha_i }.
/// Periodic extension turns the supremum over all integers into this max.
double contraction_factor(const WeightPair& pair);

/// Weights for a whole refinement run: either one pair reused at every level
/// or an explicit per-level list (periods may differ between levels).
class WeightSchedule {
 public:
  explicit WeightSchedule(WeightPair constant);
  explicit WeightSchedule(std::vector<WeightPair> levels);

  bool is_constant() const noexcept { return constant_; }

  /// Number of levels an explicit list defines; nullopt for constant
  /// schedules, which serve any number of levels.
  std::optional<std::size_t> level_count() const noexcept;

  const WeightPair& at(std::size_t level) const;

  const std::vector<WeightPair>& pairs() const noexcept { return pairs_; }

 private:
  std::vector<WeightPair> pairs_;
  bool constant_ = false;
};

/// Convergence certificate for one schedule (or a combined pair of
/// directional schedules). `margin` is the worst class slack witnessed
/// across all pairs involved.
struct Certificate {
  std::vector<double> mu_per_level;
  double mu_sup = 0.0;
  bool points_convergent = false;  // mu_sup < 1
  bool nets_convergent = false;    // mu_sup < sqrt(3)/3
  double margin = 0.0;
};

Certificate certify(const WeightSchedule& schedule);

/// Certificate for a two-direction schedule (net refinement): per-level
/// contraction is the max over the two directions. Constant schedules
/// broadcast; two explicit lists must have equal length.
Certificate certify(const WeightSchedule& s_schedule, const WeightSchedule& t_schedule);

}  // namespace cornercut
