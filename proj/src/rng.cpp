#include "aoi/rng.hpp"

namespace aoi {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) noexcept {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ splitmix64(index + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

}  // namespace aoi
