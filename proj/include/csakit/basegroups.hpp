#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace csakit {

// F(x_1, ..., x_rank).
struct FreeGroupSpec {
  std::size_t rank = 0;
  friend bool operator==(const FreeGroupSpec&, const FreeGroupSpec&) = default;
};

// Free product of cyclic groups <x_i | x_i^{orders[i]}>; order 0 means infinite cyclic.
struct CyclicFreeProductSpec {
  std::vector<unsigned long> orders;
  friend bool operator==(const CyclicFreeProductSpec&, const CyclicFreeProductSpec&) = default;
};

// Groups an HNN extension may be built over.
using BaseSpec = std::variant<FreeGroupSpec, CyclicFreeProductSpec>;

inline std::size_t generator_count(const BaseSpec& base) {
  if (const auto* f = std::get_if<FreeGroupSpec>(&base)) return f->rank;
  return std::get<CyclicFreeProductSpec>(base).orders.size();
}

}  // namespace csakit
