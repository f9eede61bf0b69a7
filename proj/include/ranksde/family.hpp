#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ranksde {

struct AtlasParams {
  double g = 0;        // positive log-drift magnitude, 1/time
  double sigma2 = 0;   // positive variance rate, 1/time
};

struct FamilyViolation {
  std::size_t k = 0;   // 1-based rank of the violated constraint
  std::string what;    // "partial_sum" or "sigma2"
};

struct ValidationReport {
  std::vector<FamilyViolation> violations;
  bool ok() const { return violations.empty(); }
};

struct SimpleCheck {
  bool simple = false;
  std::size_t first_violation = 0;  // 0 when simple
};

// Per-rank growth rates g_k and variance rates sigma2_k, explicit for
// k = 1..K_explicit.  Deeper ranks use the constant tail: g_k equals the
// mean of the explicit g's and sigma2_k equals the last explicit sigma2.
class FirstOrderFamily {
 public:
  FirstOrderFamily() = default;
  FirstOrderFamily(std::vector<double> g, std::vector<double> sigma2);

  std::size_t K_explicit() const { return g_.size(); }
  double g_at(std::size_t k) const;          // 1-based rank
  double sigma2_at(std::size_t k) const;     // 1-based rank
  double partial_g_sum(std::size_t k) const; // g_1 + ... + g_k
  double bottom_drift(std::size_t n) const;  // G_n = -(g_1 + ... + g_n)

  const std::vector<double>& g() const { return g_; }
  const std::vector<double>& sigma2() const { return sigma2_; }

 private:
  std::vector<double> g_, sigma2_;
  std::vector<double> prefix_;  // prefix_[k] = g_1 + ... + g_k
  double g_tail_ = 0;
};

FirstOrderFamily make_atlas_family(const AtlasParams& params);

// g_k = -g, sigma2 alternating rho2, 2*sigma2 - rho2; K must be even.
FirstOrderFamily make_e1_family(double g, double sigma2, double rho2,
                                std::size_t K = 64);

ValidationReport validate_family(const FirstOrderFamily& family);

// Throws std::invalid_argument when the family fails validation.
void require_valid(const FirstOrderFamily& family);

double theoretical_lambda(const FirstOrderFamily& family, std::size_t k);
double theoretical_gap_variance(const FirstOrderFamily& family, std::size_t k);
double theoretical_mean_gap(const FirstOrderFamily& family, std::size_t k);
double slope_parameter(const FirstOrderFamily& family, std::size_t k);

// (lower, upper) bounds on the asymptotic log-log tangent slope.
std::pair<double, double> slope_bracket(double s, std::size_t k);

SimpleCheck is_simple(const FirstOrderFamily& family);

}  // namespace ranksde
