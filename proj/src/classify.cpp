#include "ranksde/classify.hpp"

#include <cmath>
#include <stdexcept>

namespace ranksde {

const char* to_string(ZipfVerdict verdict) {
  switch (verdict) {
    case ZipfVerdict::Zipfian: return "Zipfian";
    case ZipfVerdict::QuasiZipfian: return "QuasiZipfian";
    default: return "NonZipfian";
  }
}

ZipfClassification classify(const FirstOrderFamily& family, std::size_t depth,
                            ClassifyTolerances tol) {
  if (depth < 2)
    throw std::invalid_argument("classification depth must be at least 2");
  require_valid(family);

  ZipfClassification res;
  res.tol = tol;
  res.s_curve.resize(depth);
  for (std::size_t k = 1; k <= depth; ++k)
    res.s_curve[k - 1] = slope_parameter(family, k);
  res.s1 = res.s_curve.front();
  for (std::size_t i = 0; i + 1 < depth; ++i) {
    double drop = res.s_curve[i] - res.s_curve[i + 1];
    if (drop > res.max_mono_violation) res.max_mono_violation = drop;
  }
  // Past the explicit ranks both rates are constant and the growth prefix
  // sum is exactly k times its mean, so the slope there is the limit value.
  res.tail_estimate = slope_parameter(family, family.K_explicit());

  bool zipfian = true;
  for (double s : res.s_curve)
    if (std::abs(s - 1.0) > tol.zipf) zipfian = false;
  if (zipfian) {
    res.verdict = ZipfVerdict::Zipfian;
  } else if (res.max_mono_violation <= tol.mono && res.s1 <= 1.0 + tol.zipf &&
             res.tail_estimate >= 1.0 - tol.zipf) {
    res.verdict = ZipfVerdict::QuasiZipfian;
  } else {
    res.verdict = ZipfVerdict::NonZipfian;
  }
  return res;
}

}  // namespace ranksde
