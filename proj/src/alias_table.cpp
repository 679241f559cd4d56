#include "aoi/alias_table.hpp"

#include <stdexcept>

namespace aoi {

AliasTable::AliasTable(std::span<const double> weights)
    : prob_(weights.size()), alias_(weights.size()) {
  if (weights.empty()) throw std::invalid_argument("alias table: no weights");
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("alias table: negative weight");
    total_ += w;
  }
  if (!(total_ > 0.0)) throw std::invalid_argument("alias table: zero total");

  const std::size_t n = weights.size();
  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total_;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::size_t i : large) prob_[i] = 1.0, alias_[i] = i;
  for (std::size_t i : small) prob_[i] = 1.0, alias_[i] = i;
}

}  // namespace aoi
