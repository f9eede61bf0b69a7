#include "ranksde/family.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ranksde {

FirstOrderFamily::FirstOrderFamily(std::vector<double> g,
                                   std::vector<double> sigma2)
    : g_(std::move(g)), sigma2_(std::move(sigma2)) {
  if (g_.empty()) throw std::invalid_argument("family needs at least one rank");
  if (g_.size() != sigma2_.size())
    throw std::invalid_argument("growth and variance sequences must have equal length");
  prefix_.resize(g_.size());
  double acc = 0;
  for (std::size_t i = 0; i < g_.size(); ++i) {
    acc += g_[i];
    prefix_[i] = acc;
  }
  g_tail_ = acc / double(g_.size());
}

double FirstOrderFamily::g_at(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("ranks are 1-based");
  return k <= g_.size() ? g_[k - 1] : g_tail_;
}

double FirstOrderFamily::sigma2_at(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("ranks are 1-based");
  return k <= sigma2_.size() ? sigma2_[k - 1] : sigma2_.back();
}

double FirstOrderFamily::partial_g_sum(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("ranks are 1-based");
  if (k <= prefix_.size()) return prefix_[k - 1];
  return prefix_.back() + double(k - prefix_.size()) * g_tail_;
}

double FirstOrderFamily::bottom_drift(std::size_t n) const {
  return -partial_g_sum(n);
}

FirstOrderFamily make_atlas_family(const AtlasParams& params) {
  if (params.g <= 0) throw std::invalid_argument("atlas drift must be positive");
  if (params.sigma2 <= 0)
    throw std::invalid_argument("atlas variance must be positive");
  return FirstOrderFamily({-params.g}, {params.sigma2});
}

FirstOrderFamily make_e1_family(double g, double sigma2, double rho2,
                                std::size_t K) {
  if (g <= 0) throw std::invalid_argument("growth magnitude must be positive");
  if (sigma2 <= 2 * g)
    throw std::invalid_argument("variance must exceed twice the growth magnitude");
  if (rho2 <= 0 || rho2 >= 2 * sigma2)
    throw std::invalid_argument("alternating variance must lie strictly inside (0, 2*sigma2)");
  if (K == 0 || K % 2 != 0)
    throw std::invalid_argument("explicit depth must be a positive even count");
  std::vector<double> gs(K, -g), s2(K);
  for (std::size_t i = 0; i < K; ++i)
    s2[i] = (i % 2 == 0) ? rho2 : 2 * sigma2 - rho2;
  return FirstOrderFamily(std::move(gs), std::move(s2));
}

ValidationReport validate_family(const FirstOrderFamily& family) {
  ValidationReport report;
  const std::size_t K = family.K_explicit();
  for (std::size_t k = 1; k <= K; ++k) {
    if (!(family.partial_g_sum(k) < 0))
      report.violations.push_back({k, "partial_sum"});
    if (!(family.sigma2_at(k) > 0)) report.violations.push_back({k, "sigma2"});
  }
  // tail growth is the mean of the explicit prefix, so every tail partial
  // sum has the sign of the prefix sum; one probe covers all deeper ranks
  if (!(family.partial_g_sum(K + 1) < 0))
    report.violations.push_back({K + 1, "partial_sum"});
  return report;
}

void require_valid(const FirstOrderFamily& family) {
  auto report = validate_family(family);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw std::invalid_argument("invalid family: " + v.what + " constraint at rank " +
                                std::to_string(v.k));
  }
}

double theoretical_lambda(const FirstOrderFamily& family, std::size_t k) {
  require_valid(family);
  return -2.0 * family.partial_g_sum(k);
}

double theoretical_gap_variance(const FirstOrderFamily& family, std::size_t k) {
  if (k == 0) throw std::invalid_argument("ranks are 1-based");
  return family.sigma2_at(k) + family.sigma2_at(k + 1);
}

double theoretical_mean_gap(const FirstOrderFamily& family, std::size_t k) {
  return theoretical_gap_variance(family, k) / (2.0 * theoretical_lambda(family, k));
}

double slope_parameter(const FirstOrderFamily& family, std::size_t k) {
  if (k == 0) throw std::invalid_argument("ranks are 1-based");
  return double(k) * (family.sigma2_at(k) + family.sigma2_at(k + 1)) /
         (-4.0 * family.partial_g_sum(k));
}

std::pair<double, double> slope_bracket(double s, std::size_t k) {
  if (s <= 0) throw std::invalid_argument("slope parameter must be positive");
  if (k == 0) throw std::invalid_argument("ranks are 1-based");
  return {-s * (1.0 + 1.0 / (2.0 * double(k))), -s};
}

SimpleCheck is_simple(const FirstOrderFamily& family) {
  const std::size_t K = family.K_explicit();
  if (!(family.g_at(1) < 0)) return {false, 1};
  for (std::size_t k = 2; k <= K; ++k) {
    if (family.g_at(k) != family.g_at(1)) return {false, k};
  }
  for (std::size_t k = 2; k <= K; ++k) {
    if (family.sigma2_at(k) < family.sigma2_at(k - 1)) return {false, k};
  }
  return {true, 0};
}

}  // namespace ranksde
