#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

namespace zetapack {

// Decay exponent t for the square sides n^(-t). The engine accepts
// 1/2 < t <= 1; the packing guarantees hold only on sub-ranges, which
// callers check separately.
class Exponent {
 public:
  explicit Exponent(double t);

  double value() const noexcept { return t_; }

  // Best double approximations of the endpoints of the guaranteed range.
  static Exponent log3_2() { return Exponent(std::log(2.0) / std::log(3.0)); }
  static Exponent two_thirds() { return Exponent(2.0 / 3.0); }

 private:
  double t_;
};

// Two-sided enclosure of a scalar. `upper` may be +infinity (unbounded
// above); comparisons treat it as larger than any finite value.
struct Bracket {
  double lower = 0.0;
  double upper = 0.0;

  bool contains_strict(double x) const noexcept { return lower < x && x < upper; }
  bool unbounded_above() const noexcept { return std::isinf(upper); }
  double width() const noexcept { return upper - lower; }
  double midpoint() const noexcept { return 0.5 * (lower + upper); }
};

// Compensated (Kahan) running sum. Long power sums go through this so the
// certified error stays dominated by the tail bounds, not the float adds.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double y = x - carry_;
    const double s = sum_ + y;
    carry_ = (s - sum_) - y;
    sum_ = s;
  }
  double value() const noexcept { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Guard for direct summation loops.
inline constexpr std::int64_t kMaxDirectSumTerms = 10'000'000;

// n^(-t). The single evaluation routine used by the entire engine, so
// repeated evaluations of the same (n, t) are bit-identical.
double power_neg(std::int64_t n, const Exponent& t);

// sum_{j=a}^{b} j^(-s) by direct ascending summation. An empty range
// (b < a) sums to 0. Throws std::length_error when b - a exceeds
// kMaxDirectSumTerms.
double partial_power_sum(std::int64_t a, std::int64_t b, double s);

// Strict enclosure of sum_{j=a}^{b} j^(-t); requires t < 1.
Bracket bracket_power_sum(std::int64_t a, std::int64_t b, const Exponent& t);

// Strict enclosure of sum_{j=a}^{b} j^(-2t); b = nullopt means the infinite
// tail. For a = 1 with finite b the upper bound is +infinity.
Bracket bracket_square_sum(std::int64_t a, std::optional<std::int64_t> b,
                           const Exponent& t);

// zeta(2t) with certified absolute error below abs_tol: a direct partial sum
// up to a cutoff plus the midpoint of the tail enclosure, the cutoff chosen
// so the enclosure is narrower than abs_tol.
double zeta_2t(const Exponent& t, double abs_tol);

// Margin pair for the three-square seed. `seed_height` is the residual
// height the seed leaves behind, zeta(2t) - 2*3^(-t); `height_budget` is the
// largest residual height from which the run is guaranteed to proceed,
// 3^(1-t)/(1-t) (+infinity as t -> 1). The guarantee applies when
// seed_height < height_budget.
struct SeedMargin {
  double seed_height;
  double height_budget;

  bool satisfied() const noexcept { return seed_height < height_budget; }
};

SeedMargin seed_margin(const Exponent& t, double zeta_tol = 1e-9);

// Randomized strict-containment checks of both bracket enclosures against
// the direct-sum oracle; deterministic for a fixed seed. Returns the number
// of violations (expected 0).
std::uint64_t run_bracket_checks(std::uint64_t samples, std::uint64_t seed);

}  // namespace zetapack
