#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aoi/rng.hpp"

namespace aoi {

// Walker/Vose alias table: O(n) build, O(1) categorical draw.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const { return prob_.size(); }
  double total() const { return total_; }

  std::size_t sample(Rng& rng) const {
    const double u = rng.uniform() * static_cast<double>(prob_.size());
    std::size_t i = static_cast<std::size_t>(u);
    if (i >= prob_.size()) i = prob_.size() - 1;
    return (u - static_cast<double>(i)) < prob_[i] ? i : alias_[i];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
  double total_ = 0.0;
};

}  // namespace aoi
