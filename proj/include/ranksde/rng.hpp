#pragma once

#include <cstdint>

namespace ranksde {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so work split across any number of workers
// reproduces bit-identically as long as streams/counters are assigned
// deterministically.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();                  // (0, 1]
  double normal();                   // consumes two counter values
  double exponential(double mean);   // mean > 0

  void skip(std::uint64_t n) { counter_ += n; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t word(std::uint64_t c) const;

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace ranksde
