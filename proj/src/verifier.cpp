#include "zetapack/verifier.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include <boost/icl/interval_map.hpp>

#include "zetapack/numerics.hpp"

namespace zetapack {

namespace {

std::vector<Rect> build_pool(std::span<const PlacedSquare> placements,
                             std::span<const OrientedBox> residuals) {
  std::vector<Rect> pool;
  pool.reserve(placements.size() + residuals.size());
  for (const auto& p : placements) pool.push_back(p.rect);
  for (const auto& b : residuals) pool.push_back(b.rect);
  return pool;
}

// Containment and area defect are shared between both implementations.
void check_pool_bounds(const std::vector<Rect>& pool, const Rect& container,
                       const VerifyTolerances& tol, VerificationReport& report) {
  KahanSum areas;
  for (std::uint32_t i = 0; i < pool.size(); ++i) {
    const Rect& r = pool[i];
    if (r.x0 < container.x0 - tol.containment || r.y0 < container.y0 - tol.containment ||
        r.x1() > container.x1() + tol.containment ||
        r.y1() > container.y1() + tol.containment) {
      report.out_of_container.push_back(i);
    }
    areas.add(r.area());
  }
  report.area_defect = std::abs(container.area() - areas.value());
}

void record_pair(std::uint32_t a, std::uint32_t b, std::size_t square_count,
                 VerificationReport& report) {
  const auto pair = std::minmax(a, b);
  if (pair.first < square_count) {
    report.overlap_pairs.emplace_back(pair.first, pair.second);
  } else {
    report.residual_conflicts.emplace_back(pair.first, pair.second);
  }
}

void finalize(const VerifyTolerances& tol, VerificationReport& report) {
  std::sort(report.overlap_pairs.begin(), report.overlap_pairs.end());
  std::sort(report.residual_conflicts.begin(), report.residual_conflicts.end());
  report.passed = report.overlap_pairs.empty() && report.residual_conflicts.empty() &&
                  report.out_of_container.empty() && report.area_defect <= tol.area;
}

}  // namespace

VerificationReport verify_bruteforce(std::span<const PlacedSquare> placements,
                                     std::span<const OrientedBox> residuals,
                                     const Rect& container, const VerifyTolerances& tol) {
  const auto pool = build_pool(placements, residuals);
  if (pool.size() > kBruteforceGuard) {
    throw std::length_error("verify_bruteforce: pool exceeds the quadratic guard");
  }
  VerificationReport report;
  for (std::uint32_t i = 0; i < pool.size(); ++i) {
    for (std::uint32_t j = i + 1; j < pool.size(); ++j) {
      if (rects_interior_overlap(pool[i], pool[j], tol.overlap)) {
        record_pair(i, j, placements.size(), report);
      }
    }
  }
  check_pool_bounds(pool, container, tol, report);
  finalize(tol, report);
  return report;
}

VerificationReport verify_sweepline(std::span<const PlacedSquare> placements,
                                    std::span<const OrientedBox> residuals,
                                    const Rect& container, const VerifyTolerances& tol) {
  const auto pool = build_pool(placements, residuals);
  VerificationReport report;

  using IdSet = std::set<std::uint32_t>;
  using YMap = boost::icl::interval_map<double, IdSet>;
  using YInterval = boost::icl::interval<double>::interval_type;

  std::vector<std::uint32_t> order(pool.size());
  for (std::uint32_t i = 0; i < pool.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return pool[a].x0 < pool[b].x0 || (pool[a].x0 == pool[b].x0 && a < b);
  });

  // Active = rects whose x-span still reaches past the sweep position by
  // more than tol; removal is driven by a min-heap on the right edge.
  using Closing = std::pair<double, std::uint32_t>;
  std::priority_queue<Closing, std::vector<Closing>, std::greater<>> closing;
  YMap active;

  std::vector<std::uint32_t> candidates;
  for (const std::uint32_t i : order) {
    const Rect& r = pool[i];
    while (!closing.empty() && closing.top().first <= r.x0 + tol.overlap) {
      const Rect& gone = pool[closing.top().second];
      active.subtract({YInterval::right_open(gone.y0, gone.y1()), IdSet{closing.top().second}});
      closing.pop();
    }
    // Rects thinner than tol along either axis can never penetrate by more
    // than tol, exactly as the pairwise predicate sees them.
    if (r.dx <= tol.overlap || r.dy <= tol.overlap) continue;

    candidates.clear();
    const auto window = YInterval::closed(r.y0, r.y1());
    const auto hits = active.equal_range(window);
    for (auto it = hits.first; it != hits.second; ++it) {
      for (const std::uint32_t id : it->second) candidates.push_back(id);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const std::uint32_t id : candidates) {
      if (rects_interior_overlap(pool[id], r, tol.overlap)) {
        record_pair(id, i, placements.size(), report);
      }
    }

    active.add({YInterval::right_open(r.y0, r.y1()), IdSet{i}});
    closing.emplace(r.x1(), i);
  }

  check_pool_bounds(pool, container, tol, report);
  finalize(tol, report);
  return report;
}

}  // namespace zetapack
