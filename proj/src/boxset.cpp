#include "zetapack/boxset.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace zetapack {

void BoxSet::insert(const OrientedBox& box) {
  if (key_of_.count(box.id) != 0) {
    throw std::invalid_argument("BoxSet::insert: duplicate id " + std::to_string(box.id));
  }
  const Key key{box.width(), box.height(), box.id};
  by_width_.emplace(key, box);
  key_of_.emplace(box.id, key);
  a_sum_ += box.area();
  h_sum_ += box.height();
}

OrientedBox BoxSet::remove(std::uint64_t id) {
  const auto it = key_of_.find(id);
  if (it == key_of_.end()) {
    throw std::out_of_range("BoxSet::remove: no box with id " + std::to_string(id));
  }
  const auto mit = by_width_.find(it->second);
  OrientedBox out = mit->second;
  by_width_.erase(mit);
  key_of_.erase(it);
  a_sum_ -= out.area();
  h_sum_ -= out.height();
  if (by_width_.empty()) {
    // Aggregates of the empty set are exactly zero by convention.
    a_sum_ = 0.0;
    h_sum_ = 0.0;
  }
  return out;
}

std::optional<OrientedBox> BoxSet::select_candidate(double threshold) const {
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("BoxSet::select_candidate: threshold must be > 0");
  }
  const auto it = by_width_.lower_bound(
      Key{threshold, -std::numeric_limits<double>::infinity(), 0});
  if (it == by_width_.end()) return std::nullopt;
  return it->second;
}

double BoxSet::width_max() const noexcept {
  return by_width_.empty() ? 0.0 : by_width_.rbegin()->first.width;
}

std::vector<OrientedBox> BoxSet::members() const {
  std::vector<OrientedBox> out;
  out.reserve(by_width_.size());
  for (const auto& [key, box] : by_width_) out.push_back(box);
  return out;
}

}  // namespace zetapack
