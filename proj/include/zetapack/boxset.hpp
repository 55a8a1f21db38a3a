#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "zetapack/geometry.hpp"

namespace zetapack {

// The evolving multiset of residual boxes with cached aggregates and the
// minimal-width-above-threshold selection query. The index is ordered by
// (width, height, id), which is exactly the selection priority, so a
// selection is one successor lookup. All mutations are O(log n).
//
// Instances are confined to a single packing run; distinct runs own
// distinct instances.
class BoxSet {
 public:
  // Adds a member. Ids must be unique; duplicate dims are fine (multiset).
  void insert(const OrientedBox& box);

  // Removes and returns the member with this id; throws std::out_of_range
  // when absent.
  OrientedBox remove(std::uint64_t id);

  // The member minimizing (width, height, id) lexicographically among those
  // with width >= threshold; nullopt when none qualifies.
  std::optional<OrientedBox> select_candidate(double threshold) const;

  // Aggregates: sum of areas, sum of heights, max width (all 0 when empty).
  double area_sum() const noexcept { return a_sum_; }
  double height_sum() const noexcept { return h_sum_; }
  double width_max() const noexcept;

  std::size_t size() const noexcept { return by_width_.size(); }
  bool empty() const noexcept { return by_width_.empty(); }

  // Members in (width, height, id) order.
  std::vector<OrientedBox> members() const;

 private:
  struct Key {
    double width;
    double height;
    std::uint64_t id;

    friend auto operator<=>(const Key&, const Key&) = default;
  };

  std::map<Key, OrientedBox> by_width_;
  std::unordered_map<std::uint64_t, Key> key_of_;
  double a_sum_ = 0.0;
  double h_sum_ = 0.0;
};

}  // namespace zetapack
