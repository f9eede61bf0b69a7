#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ranksde/family.hpp"

namespace ranksde {

enum class ZipfVerdict { Zipfian, QuasiZipfian, NonZipfian };

const char* to_string(ZipfVerdict verdict);

struct ClassifyTolerances {
  double zipf = 0.05;  // |s_k - 1| band and the s_1 / tail thresholds
  double mono = 0.01;  // allowed adjacent decrease of s_k
};

struct ZipfClassification {
  ZipfVerdict verdict = ZipfVerdict::NonZipfian;
  std::vector<double> s_curve;      // s_k for k = 1..depth
  double s1 = 0;
  double max_mono_violation = 0;    // largest adjacent decrease over the curve
  double tail_estimate = 0;         // s_k in the constant-tail region
  ClassifyTolerances tol;
};

ZipfClassification classify(const FirstOrderFamily& family, std::size_t depth,
                            ClassifyTolerances tol = {});

}  // namespace ranksde
