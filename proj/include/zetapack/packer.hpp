#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zetapack/boxset.hpp"
#include "zetapack/geometry.hpp"
#include "zetapack/numerics.hpp"

namespace zetapack {

// Result of filling one box with consecutive squares S_n, S_{n+1}, ...
struct BoxFillResult {
  // First index NOT packed; set iff the fill terminated naturally.
  std::optional<std::int64_t> next_n;
  std::vector<PlacedSquare> placements;
  std::vector<OrientedBox> residuals;
  bool terminated_naturally = false;
};

enum class StepBranch : unsigned char { Snug, Cut, Fail };

// One record per failure test of the set-driven loop.
struct TraceRecord {
  std::int64_t n = 0;            // square index tested
  double width_max = 0.0;        // w of the set at the test
  double area_sum = 0.0;         // a of the set
  double height_sum = 0.0;       // h of the set
  double area_tail_lower = 0.0;  // certified lower bound on the unplaced area
  double height_allowance = 0.0; // seed height + sides placed so far
  StepBranch branch = StepBranch::Fail;
};

using PackingTrace = std::vector<TraceRecord>;

struct MonitorSummary {
  std::uint64_t steps = 0;
  // a(set) >= lower tail bound, at every step.
  std::uint64_t area_tail_violations = 0;
  // h(set) <= seed height + sum of placed sides, at every step.
  std::uint64_t height_growth_violations = 0;
  // h(set) < n^(1-t)/(2t-1), at every step.
  std::uint64_t height_cap_violations = 0;
  // a(set) <= w(set) * h(set), at every step.
  std::uint64_t aggregate_bound_violations = 0;
  // Naturally terminated fill frames, and how many broke the per-frame
  // residual-height bound (residual h <= sum of sides the frame packed).
  std::uint64_t fill_frames_checked = 0;
  std::uint64_t fill_height_violations = 0;
  double max_height_sum = 0.0;

  friend bool operator==(const MonitorSummary&, const MonitorSummary&) = default;
};

struct PackingReport {
  double t = 0.0;
  std::int64_t n_max = 0;
  Rect container;
  double zeta_value = 0.0;   // container width (0 for runs on external sets)
  double seed_height = 0.0;  // h of the box set when the loop started
  std::int64_t n_start = 0;  // first square index the set loop attempted
  std::vector<PlacedSquare> placements;
  std::vector<OrientedBox> residuals;
  std::optional<std::int64_t> failed_at;
  double conservation_defect = 0.0;
  MonitorSummary monitors;
  PackingTrace trace;  // in-memory only; logs carry just the summary
};

struct SeedState {
  Rect container;
  std::array<PlacedSquare, 3> placements;
  BoxSet set;
  double zeta_value = 0.0;
  double height_sum = 0.0;  // h of the seed set
  BoxIdGen ids;             // continues the numbering for the run
};

struct PackOptions {
  // Exact-cover verification cadence in loop steps; 0 = never during the
  // run. Only honored by runs whose placements + set tile the container.
  std::int64_t verify_interval = 0;
  double zeta_tol = 1e-9;
  double monitor_tol = 1e-9;
};

struct SeedInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fills `box` with squares S_n, S_{n+1}, ... until the fill terminates or
// the next index would exceed `budget`; in the latter case every in-flight
// box is flushed to residuals and next_n is unset. Requires width(box)
// bit-equal to n^(-t) and budget >= n.
BoxFillResult fill_box(std::int64_t n, const OrientedBox& box, const Exponent& t,
                       std::int64_t budget);

// Three-square seed layout in the container zeta(2t) x 1: S_1, S_2, S_3 in a
// row on the floor, three residual boxes tiling the rest. Throws
// SeedInfeasible when the container is too narrow for the row.
SeedState seed_container(const Exponent& t, double zeta_tol = 1e-9);

// The set-driven loop: packs S_{n+1} ... S_{n_max} into `set`. Failure (no
// box wide enough for the next square) is data on the report, not an error.
// When `ids` is absent a generator past the largest member id is used.
PackingReport pack_into_boxes(std::int64_t n, BoxSet set, const Exponent& t,
                              std::int64_t n_max,
                              std::optional<BoxIdGen> ids = std::nullopt,
                              const PackOptions& opts = {});

// Seed + set loop + monitors: the full pipeline into zeta(2t) x 1.
PackingReport pack(const Exponent& t, std::int64_t n_max, const PackOptions& opts = {});

// Post-hoc monitors over a trace; each returns the indices of violating
// records (empty on a healthy run). Tolerances are absolute, in container
// units.
std::vector<std::size_t> monitor_area_tail(const PackingTrace& trace, const Exponent& t,
                                           double tol = 1e-9);
std::vector<std::size_t> monitor_height_growth(const PackingTrace& trace,
                                               double seed_height, const Exponent& t,
                                               std::int64_t n_start, double tol = 1e-9);
std::vector<std::size_t> monitor_height_cap(const PackingTrace& trace, const Exponent& t);
std::vector<std::size_t> monitor_aggregate_bound(const PackingTrace& trace,
                                                 double tol = 1e-9);

}  // namespace zetapack
