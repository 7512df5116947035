#include "cornercut/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace cornercut {

namespace {

const char* quantity_name(ClassViolationError::Quantity q) {
  switch (q) {
    case ClassViolationError::Quantity::alpha:
      return "alpha";
    case ClassViolationError::Quantity::one_minus_beta:
      return "1 - beta";
    case ClassViolationError::Quantity::beta_minus_alpha:
      return "beta - alpha";
  }
  return "?";
}

}  // namespace

ClassViolationError::ClassViolationError(Quantity q, std::size_t index, double value,
                                         double margin)
    : Error(std::string(quantity_name(q)) + " at index " + std::to_string(index) +
            " is " + std::to_string(value) + ", not above margin " +
            std::to_string(margin) +
            (value == 0.0 ? "; zero cuts are tolerated by the theory for finitely "
                            "many iterations but are never certified here"
                          : "")),
      quantity_(q),
      index_(index),
      value_(value) {}

WeightPair::WeightPair(std::vector<double> alpha, std::vector<double> beta, double margin)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), margin_(margin) {
  if (alpha_.size() != beta_.size()) {
    throw LengthMismatchError("alpha has " + std::to_string(alpha_.size()) +
                              " entries, beta has " + std::to_string(beta_.size()));
  }
  if (alpha_.empty()) {
    throw LengthMismatchError("weight pair needs at least one (alpha, beta) entry");
  }
  if (margin_ < 0.0) {
    throw Error("margin must be nonnegative");
  }
  using Q = ClassViolationError::Quantity;
  slack_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    const double a = alpha_[i];
    const double omb = 1.0 - beta_[i];
    const double bma = beta_[i] - alpha_[i];
    if (!(a > margin_)) throw ClassViolationError(Q::alpha, i, a, margin_);
    if (!(omb > margin_)) throw ClassViolationError(Q::one_minus_beta, i, omb, margin_);
    if (!(bma > margin_)) throw ClassViolationError(Q::beta_minus_alpha, i, bma, margin_);
    slack_ = std::min({slack_, a, omb, bma});
  }
}

WeightPair validate_weight_pair(std::vector<double> alpha, std::vector<double> beta,
                                double margin) {
  return WeightPair(std::move(alpha), std::move(beta), margin);
}

double contraction_factor(const WeightPair& pair) {
  double mu = 0.0;
  const auto p = static_cast<std::ptrdiff_t>(pair.period());
  for (std::ptrdiff_t i = 0; i < p; ++i) {
    mu = std::max(mu, pair.beta(i) - pair.alpha(i));
    mu = std::max(mu, 1.0 - pair.beta(i - 1) + pair.alpha(i));
  }
  return mu;
}

WeightSchedule::WeightSchedule(WeightPair constant) : constant_(true) {
  pairs_.push_back(std::move(constant));
}

WeightSchedule::WeightSchedule(std::vector<WeightPair> levels)
    : pairs_(std::move(levels)), constant_(false) {
  if (pairs_.empty()) {
    throw EmptyScheduleError("weight schedule has no levels");
  }
}

std::optional<std::size_t> WeightSchedule::level_count() const noexcept {
  if (constant_) return std::nullopt;
  return pairs_.size();
}

const WeightPair& WeightSchedule::at(std::size_t level) const {
  if (constant_) return pairs_.front();
  if (level >= pairs_.size()) {
    throw Error("schedule defines " + std::to_string(pairs_.size()) +
                " levels, level " + std::to_string(level) + " requested");
  }
  return pairs_[level];
}

Certificate certify(const WeightSchedule& schedule) {
  Certificate cert;
  cert.margin = std::numeric_limits<double>::infinity();
  for (const WeightPair& pair : schedule.pairs()) {
    cert.mu_per_level.push_back(contraction_factor(pair));
    cert.margin = std::min(cert.margin, pair.class_slack());
  }
  cert.mu_sup = *std::max_element(cert.mu_per_level.begin(), cert.mu_per_level.end());
  cert.points_convergent = cert.mu_sup < 1.0;
  cert.nets_convergent = cert.mu_sup < kNetContractionThreshold;
  return cert;
}

Certificate certify(const WeightSchedule& s_schedule, const WeightSchedule& t_schedule) {
  const auto ns = s_schedule.level_count();
  const auto nt = t_schedule.level_count();
  if (ns && nt && *ns != *nt) {
    throw LengthMismatchError("directional schedules define different level counts");
  }
  const std::size_t levels = ns ? *ns : (nt ? *nt : 1);

  Certificate cert;
  cert.margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < levels; ++k) {
    const WeightPair& ps = s_schedule.at(k);
    const WeightPair& pt = t_schedule.at(k);
    cert.mu_per_level.push_back(
        std::max(contraction_factor(ps), contraction_factor(pt)));
    cert.margin = std::min({cert.margin, ps.class_slack(), pt.class_slack()});
  }
  cert.mu_sup = *std::max_element(cert.mu_per_level.begin(), cert.mu_per_level.end());
  cert.points_convergent = cert.mu_sup < 1.0;
  cert.nets_convergent = cert.mu_sup < kNetContractionThreshold;
  return cert;
}

}  // namespace cornercut
