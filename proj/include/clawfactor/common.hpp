#ifndef CLAWFACTOR_COMMON_HPP
#define CLAWFACTOR_COMMON_HPP

#include <bitset>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace clawfactor {

// All exact search kernels run on fixed-width adjacency bitsets.
inline constexpr int kMaxKernelVertices = 128;
using Bits = std::bitset<kMaxKernelVertices>;

inline int first_bit(const Bits& b) { return static_cast<int>(b._Find_first()); }
inline int next_bit(const Bits& b, int i) {
  return static_cast<int>(b._Find_next(static_cast<std::size_t>(i)));
}

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr long long kDefaultNodeBudget = 10'000'000;

// Node budget for exhaustive searches; charge() throws once exhausted.
class Budget {
 public:
  explicit Budget(long long cap = kDefaultNodeBudget) : remaining_(cap) {}

  void charge(long long units = 1) {
    remaining_ -= units;
    if (remaining_ < 0) throw BudgetExceededError("search budget exhausted");
  }

  long long remaining() const { return remaining_; }

 private:
  long long remaining_;
};

// Deterministic splitmix64 stream; all randomness in the toolkit flows
// from one explicit seed so runs are reproducible across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, n); n > 0.
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  // True with probability num/den.
  bool chance(int num, int den) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

}  // namespace clawfactor

#endif  // CLAWFACTOR_COMMON_HPP
