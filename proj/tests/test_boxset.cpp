#include <doctest.h>

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "zetapack/boxset.hpp"
#include "zetapack/numerics.hpp"

using namespace zetapack;

namespace {

OrientedBox box(double dx, double dy, std::uint64_t id) {
  return OrientedBox{Rect{0, 0, dx, dy}, id};
}

// Linear-scan oracle for the selection query.
std::optional<OrientedBox> select_by_scan(const std::vector<OrientedBox>& boxes,
                                          double threshold) {
  std::optional<OrientedBox> best;
  for (const auto& b : boxes) {
    if (b.width() < threshold) continue;
    if (!best || b.width() < best->width() ||
        (b.width() == best->width() && b.height() < best->height()) ||
        (b.width() == best->width() && b.height() == best->height() && b.id < best->id)) {
      best = b;
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("boxset aggregates") {
  TEST_CASE("single insert") {
    BoxSet set;
    set.insert(box(2.0, 1.0, 0));
    CHECK(set.area_sum() == 2.0);
    CHECK(set.height_sum() == 2.0);
    CHECK(set.width_max() == 1.0);
    CHECK(set.size() == 1);
  }

  TEST_CASE("two members accumulate") {
    BoxSet set;
    set.insert(box(2.0, 1.0, 0));
    set.insert(box(3.0, 0.5, 1));
    CHECK(set.area_sum() == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(set.height_sum() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(set.width_max() == 1.0);
  }

  TEST_CASE("equal dims count twice (multiset)") {
    BoxSet set;
    set.insert(box(2.0, 1.0, 0));
    set.insert(box(2.0, 1.0, 1));
    CHECK(set.area_sum() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(set.height_sum() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(set.size() == 2);
  }

  TEST_CASE("empty set has zero aggregates") {
    BoxSet set;
    CHECK(set.area_sum() == 0.0);
    CHECK(set.height_sum() == 0.0);
    CHECK(set.width_max() == 0.0);
    CHECK(set.empty());
  }
}

TEST_SUITE("boxset remove") {
  TEST_CASE("insert then remove restores the aggregates") {
    BoxSet set;
    set.insert(box(0.91, 0.37, 0));
    const double a0 = set.area_sum();
    const double h0 = set.height_sum();
    set.insert(box(0.53, 0.61, 1));
    set.remove(1);
    CHECK(set.area_sum() == doctest::Approx(a0).epsilon(4e-16));
    CHECK(set.height_sum() == doctest::Approx(h0).epsilon(4e-16));
    CHECK(set.width_max() == 0.37);
  }

  TEST_CASE("removing from an empty set is a lookup error") {
    BoxSet set;
    CHECK_THROWS_AS(set.remove(0), std::out_of_range);
  }

  TEST_CASE("equal-dims members are id-disambiguated") {
    BoxSet set;
    set.insert(box(2.0, 1.0, 10));
    set.insert(box(2.0, 1.0, 11));
    const auto removed = set.remove(10);
    CHECK(removed.id == 10);
    CHECK(set.size() == 1);
    CHECK(set.members().front().id == 11);
  }

  TEST_CASE("duplicate id rejected") {
    BoxSet set;
    set.insert(box(1.0, 1.0, 5));
    CHECK_THROWS_AS(set.insert(box(2.0, 2.0, 5)), std::invalid_argument);
  }
}

TEST_SUITE("select_candidate") {
  TEST_CASE("seed-state example: smallest qualifying width wins") {
    // The three residual boxes the seed leaves at t = 2/3, in round numbers.
    BoxSet set;
    set.insert(box(1.49, 1.0, 0));   // wide strip, width 1
    set.insert(box(0.63, 0.37, 1));  // width 0.37
    set.insert(box(0.48, 0.52, 2));  // width 0.48
    const double threshold = power_neg(4, Exponent::two_thirds());  // 0.3968...
    const auto chosen = set.select_candidate(threshold);
    REQUIRE(chosen.has_value());
    CHECK(chosen->id == 2);
    CHECK(chosen->width() == 0.48);
  }

  TEST_CASE("absent when the threshold beats every width") {
    BoxSet set;
    set.insert(box(0.2, 0.9, 0));
    set.insert(box(0.3, 0.4, 1));
    CHECK_FALSE(set.select_candidate(0.95).has_value());
  }

  TEST_CASE("tie-breaks: height, then creation id") {
    BoxSet set;
    set.insert(box(0.5, 0.9, 3));
    set.insert(box(0.5, 0.7, 4));
    auto chosen = set.select_candidate(0.4);
    REQUIRE(chosen.has_value());
    CHECK(chosen->id == 4);  // same width, smaller height

    BoxSet ties;
    ties.insert(box(0.5, 0.7, 9));
    ties.insert(box(0.5, 0.7, 8));
    chosen = ties.select_candidate(0.4);
    REQUIRE(chosen.has_value());
    CHECK(chosen->id == 8);  // equal dims, smaller id
  }

  TEST_CASE("threshold must be positive") {
    BoxSet set;
    set.insert(box(1.0, 1.0, 0));
    CHECK_THROWS_AS(set.select_candidate(0.0), std::invalid_argument);
  }
}

TEST_SUITE("boxset properties") {
  TEST_CASE("selection agrees with a linear scan on random sets") {
    std::mt19937_64 rng(42);
    auto uniform = [&](double lo, double hi) {
      return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (int round = 0; round < 1000; ++round) {
      BoxSet set;
      std::vector<OrientedBox> mirror;
      const std::size_t count = 1 + rng() % 1000;
      for (std::size_t i = 0; i < count; ++i) {
        // Coarse grid so width ties actually occur.
        const double dx = std::ceil(uniform(0.01, 1.0) * 16.0) / 16.0;
        const double dy = std::ceil(uniform(0.01, 1.0) * 16.0) / 16.0;
        const auto b = box(dx, dy, i);
        set.insert(b);
        mirror.push_back(b);
      }
      for (int q = 0; q < 4; ++q) {
        const double threshold = uniform(0.001, 1.1);
        const auto fast = set.select_candidate(threshold);
        const auto slow = select_by_scan(mirror, threshold);
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
          CHECK(fast->id == slow->id);
          CHECK(fast->width() == slow->width());
          CHECK(fast->height() == slow->height());
        }
      }
    }
  }

  TEST_CASE("aggregate inequality a <= w * h after every mutation") {
    std::mt19937_64 rng(7);
    auto uniform = [&](double lo, double hi) {
      return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    BoxSet set;
    std::vector<std::uint64_t> ids;
    std::uint64_t next_id = 0;
    for (int step = 0; step < 5000; ++step) {
      if (ids.empty() || rng() % 3 != 0) {
        const auto b = box(uniform(0.01, 2.0), uniform(0.01, 2.0), next_id++);
        set.insert(b);
        ids.push_back(b.id);
      } else {
        const std::size_t pick = rng() % ids.size();
        set.remove(ids[pick]);
        ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      REQUIRE(set.area_sum() <= set.width_max() * set.height_sum() + 1e-9);
    }
  }
}
