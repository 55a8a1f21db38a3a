#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "zetapack/geometry.hpp"

namespace zetapack {

struct VerifyTolerances {
  double overlap = 1e-12;      // penetration depth that counts as overlap
  double containment = 1e-12;  // allowed protrusion beyond the container
  double area = 1e-8;          // |container area - sum of areas|
};

// Squares and residual boxes are verified as one pool: indices
// 0 .. placements.size()-1 are the squares, the rest are residuals.
// overlap_pairs holds every offending pair with at least one square;
// residual_conflicts holds offending residual-residual pairs. All lists are
// sorted, so two reports over the same input compare with ==.
struct VerificationReport {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> overlap_pairs;
  std::vector<std::uint32_t> out_of_container;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> residual_conflicts;
  double area_defect = 0.0;
  bool passed = false;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

// Quadratic guard for the pairwise oracle.
inline constexpr std::size_t kBruteforceGuard = 5000;

// Pairwise interior-overlap scan over every rect pair, containment of every
// rect in the container, and the pool's area defect. Throws
// std::length_error beyond kBruteforceGuard rects.
VerificationReport verify_bruteforce(std::span<const PlacedSquare> placements,
                                     std::span<const OrientedBox> residuals,
                                     const Rect& container,
                                     const VerifyTolerances& tol = {});

// Identical contract, computed as a sweep over x with an interval structure
// over y; built for pools up to 10^6 rects.
VerificationReport verify_sweepline(std::span<const PlacedSquare> placements,
                                    std::span<const OrientedBox> residuals,
                                    const Rect& container,
                                    const VerifyTolerances& tol = {});

}  // namespace zetapack
