#include "zetapack/packer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "zetapack/verifier.hpp"

namespace zetapack {

namespace {

struct FillStats {
  std::uint64_t frames_checked = 0;
  std::uint64_t frame_violations = 0;
};

// One open box being filled with consecutive squares. The leftover strip
// always spans the full width of the frame's input box and extends along
// that box's long axis, so cuts are taken against `axis` even when the
// strip itself is wider than it is long.
struct FillFrame {
  std::int64_t n = 0;    // first square this frame placed
  std::int64_t n_i = 0;  // next square index to try
  Axis axis = Axis::X;
  std::optional<OrientedBox> strip;
  KahanSum residual_height;  // h of the frame's residual set so far
  KahanSum side_sum;         // sum of j^(-t) over squares packed in the subtree
};

// Shared driver for fill_box and the cut branch of the set loop. Packs
// S_n, S_{n+1}, ... into box0; returns the first unpacked index, or nullopt
// when the budget cut the fill short (all in-flight boxes flushed).
std::optional<std::int64_t> run_fill(std::int64_t n0, const OrientedBox& box0,
                                     const Exponent& t, std::int64_t budget,
                                     BoxIdGen& ids,
                                     std::vector<PlacedSquare>& placements,
                                     std::vector<OrientedBox>& residuals,
                                     FillStats& stats, double monitor_tol) {
  std::vector<FillFrame> stack;

  auto open_frame = [&](std::int64_t n, const OrientedBox& box) -> bool {
    if (n > budget) {
      residuals.push_back(box);  // never recursed into; returned whole
      return false;
    }
    const double side = power_neg(n, t);
    if (box.width() != side) {
      throw std::invalid_argument("fill: box width must bit-equal " +
                                  std::to_string(n) + "^(-t)");
    }
    FillFrame frame;
    frame.n = n;
    frame.n_i = n + 1;
    frame.axis = box.long_axis();
    auto snug = place_square_snug(box, side, ids);
    placements.push_back({n, side, snug.square});
    frame.side_sum.add(side);
    frame.strip = std::move(snug.remainder);
    stack.push_back(std::move(frame));
    return true;
  };

  auto flush_stack = [&] {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      if (it->strip) residuals.push_back(*it->strip);
    }
  };

  if (!open_frame(n0, box0)) return std::nullopt;

  std::optional<std::int64_t> closed_next_n;
  while (!stack.empty()) {
    FillFrame& frame = stack.back();
    if (closed_next_n) {  // a child just terminated naturally
      frame.n_i = *closed_next_n;
      closed_next_n.reset();
    }
    const double x = frame.strip ? extent_along(frame.strip->rect, frame.axis) : 0.0;
    bool terminated = false;
    double side_next = 0.0;
    if (x == 0.0) {
      terminated = true;  // strip consumed exactly
    } else {
      side_next = power_neg(frame.n_i, t);
      if (x < side_next) {  // too short for the next square
        frame.residual_height.add(frame.strip->height());
        residuals.push_back(*frame.strip);
        frame.strip.reset();
        terminated = true;
      }
    }
    if (terminated) {
      stats.frames_checked += 1;
      if (frame.residual_height.value() > frame.side_sum.value() + monitor_tol) {
        stats.frame_violations += 1;
      }
      closed_next_n = frame.n_i;
      const double child_residual_h = frame.residual_height.value();
      const double child_side_sum = frame.side_sum.value();
      stack.pop_back();
      if (!stack.empty()) {
        stack.back().residual_height.add(child_residual_h);
        stack.back().side_sum.add(child_side_sum);
      }
      continue;
    }
    // Carve the next box off the strip and recurse into it. An exact
    // remainder hands over the whole strip.
    OrientedBox child_box;
    if (x - side_next == 0.0) {
      child_box = *frame.strip;
      frame.strip.reset();
    } else {
      auto [near, far] = split_along(*frame.strip, frame.axis, side_next, ids);
      child_box = near;
      frame.strip = far;
    }
    const std::int64_t child_n = frame.n_i;
    if (!open_frame(child_n, child_box)) {
      flush_stack();
      return std::nullopt;
    }
  }
  return closed_next_n;
}

struct RunContext {
  Exponent t;
  std::int64_t n_start;  // first square the loop will attempt
  std::int64_t n_max;
  Rect container;
  double base_area;     // area that placements + residuals must conserve
  double seed_height;   // h of the set at loop start
  double zeta_value;
  std::vector<PlacedSquare> prior;
  bool tiles_container;  // placements + set expected to tile the container
  PackOptions opts;
};

double recompute_area(const BoxSet& set) {
  KahanSum acc;
  for (const auto& box : set.members()) acc.add(box.area());
  return acc.value();
}

PackingReport run_set_loop(RunContext ctx, BoxSet set, BoxIdGen ids) {
  PackingReport report;
  report.t = ctx.t.value();
  report.n_max = ctx.n_max;
  report.container = ctx.container;
  report.zeta_value = ctx.zeta_value;
  report.seed_height = ctx.seed_height;
  report.n_start = ctx.n_start;
  report.placements = std::move(ctx.prior);

  FillStats fill_stats;
  KahanSum placed_sides;  // sum of j^(-t) over squares this loop placed
  std::vector<OrientedBox> fill_residuals;
  const double tail_exp = 1.0 - 2.0 * ctx.t.value();
  const double tail_den = 2.0 * ctx.t.value() - 1.0;
  bool budget_hit = false;

  std::int64_t n_i = ctx.n_start;
  while (n_i <= ctx.n_max) {
    TraceRecord rec;
    rec.n = n_i;
    rec.width_max = set.width_max();
    rec.area_sum = set.area_sum();
    rec.height_sum = set.height_sum();
    rec.area_tail_lower = std::pow(static_cast<double>(n_i), tail_exp) / tail_den;
    rec.height_allowance = ctx.seed_height + placed_sides.value();

    const double side = power_neg(n_i, ctx.t);
    const auto candidate = set.select_candidate(side);
    if (!candidate) {
      rec.branch = StepBranch::Fail;
      report.trace.push_back(rec);
      report.failed_at = n_i;
      break;
    }
    if (candidate->width() == side && candidate->height() == side) {
      // Exact square: the snug placement consumes the box whole.
      rec.branch = StepBranch::Snug;
      auto snug = place_square_snug(*candidate, side, ids);
      report.placements.push_back({n_i, side, snug.square});
      set.remove(candidate->id);
      placed_sides.add(side);
      n_i += 1;
    } else {
      rec.branch = StepBranch::Cut;
      auto [fill_target, leftover] = split_long(*candidate, side, ids);
      set.remove(candidate->id);
      const auto next = run_fill(n_i, fill_target, ctx.t, ctx.n_max, ids,
                                 report.placements, fill_residuals, fill_stats,
                                 ctx.opts.monitor_tol);
      for (const auto& box : fill_residuals) set.insert(box);
      fill_residuals.clear();
      set.insert(leftover);
      if (next) {
        for (std::int64_t j = n_i; j < *next; ++j) placed_sides.add(power_neg(j, ctx.t));
        n_i = *next;
      } else {
        budget_hit = true;
      }
    }
    report.trace.push_back(rec);
    if (budget_hit) break;

    if (ctx.tiles_container && ctx.opts.verify_interval > 0 &&
        static_cast<std::int64_t>(report.trace.size()) % ctx.opts.verify_interval == 0) {
      const auto boxes = set.members();
      const auto cover = verify_sweepline(report.placements, boxes, ctx.container);
      if (!cover.passed) {
        throw std::runtime_error(
            "pack: exact-cover invariant violated before placing square " +
            std::to_string(n_i));
      }
    }
  }

  for (const auto& box : set.members()) report.residuals.push_back(box);

  KahanSum placed_area;
  for (const auto& p : report.placements) placed_area.add(p.rect.area());
  report.conservation_defect =
      std::abs(ctx.base_area - placed_area.value() - recompute_area(set));

  report.monitors.steps = report.trace.size();
  report.monitors.area_tail_violations =
      monitor_area_tail(report.trace, ctx.t, ctx.opts.monitor_tol).size();
  report.monitors.height_growth_violations =
      monitor_height_growth(report.trace, ctx.seed_height, ctx.t, ctx.n_start,
                            ctx.opts.monitor_tol)
          .size();
  report.monitors.height_cap_violations = monitor_height_cap(report.trace, ctx.t).size();
  report.monitors.aggregate_bound_violations =
      monitor_aggregate_bound(report.trace, ctx.opts.monitor_tol).size();
  report.monitors.fill_frames_checked = fill_stats.frames_checked;
  report.monitors.fill_height_violations = fill_stats.frame_violations;
  for (const auto& rec : report.trace) {
    report.monitors.max_height_sum = std::max(report.monitors.max_height_sum, rec.height_sum);
  }
  return report;
}

}  // namespace

BoxFillResult fill_box(std::int64_t n, const OrientedBox& box, const Exponent& t,
                       std::int64_t budget) {
  if (n < 1) throw std::invalid_argument("fill_box: n must be >= 1");
  if (budget < n) throw std::invalid_argument("fill_box: budget must be >= n");
  BoxFillResult out;
  BoxIdGen ids(box.id + 1);
  FillStats stats;
  out.next_n = run_fill(n, box, t, budget, ids, out.placements, out.residuals, stats, 1e-9);
  out.terminated_naturally = out.next_n.has_value();
  return out;
}

SeedState seed_container(const Exponent& t, double zeta_tol) {
  const double zeta = zeta_2t(t, zeta_tol);
  const double s1 = power_neg(1, t);  // exactly 1
  const double s2 = power_neg(2, t);
  const double s3 = power_neg(3, t);
  const double row_end = 1.0 + s2 + s3;
  const double strip_dx = zeta - row_end;
  if (!(strip_dx > 0.0)) {
    throw SeedInfeasible("seed_container: zeta(2t) leaves no room after the "
                         "three-square row at t = " + std::to_string(t.value()));
  }
  SeedState seed;
  seed.zeta_value = zeta;
  seed.container = Rect{0.0, 0.0, zeta, 1.0};
  seed.placements = {PlacedSquare{1, s1, Rect{0.0, 0.0, s1, s1}},
                     PlacedSquare{2, s2, Rect{1.0, 0.0, s2, s2}},
                     PlacedSquare{3, s3, Rect{1.0 + s2, 0.0, s3, s3}}};
  seed.set.insert(OrientedBox{Rect{row_end, 0.0, strip_dx, 1.0}, seed.ids.next()});
  seed.set.insert(OrientedBox{Rect{1.0, s2, s2, 1.0 - s2}, seed.ids.next()});
  seed.set.insert(OrientedBox{Rect{1.0 + s2, s3, s3, 1.0 - s3}, seed.ids.next()});
  seed.height_sum = seed.set.height_sum();
  return seed;
}

PackingReport pack_into_boxes(std::int64_t n, BoxSet set, const Exponent& t,
                              std::int64_t n_max, std::optional<BoxIdGen> ids,
                              const PackOptions& opts) {
  if (set.empty()) throw std::invalid_argument("pack_into_boxes: set must be non-empty");
  if (n < 1) throw std::invalid_argument("pack_into_boxes: n must be >= 1");
  if (n_max < n) throw std::invalid_argument("pack_into_boxes: n_max must be >= n");

  const auto members = set.members();
  Rect bbox = members.front().rect;
  std::uint64_t max_id = 0;
  for (const auto& box : members) {
    bbox.x0 = std::min(bbox.x0, box.rect.x0);
    bbox.y0 = std::min(bbox.y0, box.rect.y0);
    max_id = std::max(max_id, box.id);
  }
  for (const auto& box : members) {
    bbox.dx = std::max(bbox.dx, box.rect.x1() - bbox.x0);
    bbox.dy = std::max(bbox.dy, box.rect.y1() - bbox.y0);
  }

  RunContext ctx{t,
                 n + 1,
                 n_max,
                 bbox,
                 recompute_area(set),
                 set.height_sum(),
                 0.0,
                 {},
                 false,
                 opts};
  return run_set_loop(std::move(ctx), std::move(set),
                      ids ? *ids : BoxIdGen(max_id + 1));
}

PackingReport pack(const Exponent& t, std::int64_t n_max, const PackOptions& opts) {
  if (n_max < 4) throw std::invalid_argument("pack: n_max must be >= 4");
  SeedState seed = seed_container(t, opts.zeta_tol);
  RunContext ctx{t,
                 4,
                 n_max,
                 seed.container,
                 seed.container.area(),
                 seed.height_sum,
                 seed.zeta_value,
                 {seed.placements.begin(), seed.placements.end()},
                 true,
                 opts};
  return run_set_loop(std::move(ctx), std::move(seed.set), seed.ids);
}

std::vector<std::size_t> monitor_area_tail(const PackingTrace& trace, const Exponent& t,
                                           double tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double lower = bracket_square_sum(trace[i].n, std::nullopt, t).lower;
    if (!(trace[i].area_sum >= lower - tol)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> monitor_height_growth(const PackingTrace& trace,
                                               double seed_height, const Exponent& t,
                                               std::int64_t n_start, double tol) {
  std::vector<std::size_t> out;
  KahanSum sides;
  std::int64_t j = n_start;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    for (; j < trace[i].n; ++j) sides.add(power_neg(j, t));
    if (!(trace[i].height_sum <= seed_height + sides.value() + tol)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> monitor_height_cap(const PackingTrace& trace, const Exponent& t) {
  std::vector<std::size_t> out;
  const double den = 2.0 * t.value() - 1.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double cap = std::pow(static_cast<double>(trace[i].n), 1.0 - t.value()) / den;
    if (!(trace[i].height_sum < cap)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> monitor_aggregate_bound(const PackingTrace& trace, double tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!(trace[i].area_sum <= trace[i].width_max * trace[i].height_sum + tol)) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace zetapack
