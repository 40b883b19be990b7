#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "rca/contingency.hpp"

namespace rca {

/// Value sets of the four cells for a synthetic rule population.
struct GridPreset {
  std::string name;
  std::vector<double> f11, f00, f10, f01;

  /// f11 small, f00 large: co-absence dominates.
  [[nodiscard]] static GridPreset sparse();
  /// The sparse preset with the f11 and f00 value sets swapped.
  [[nodiscard]] static GridPreset dense();
  /// "sparse" or "dense"; throws std::invalid_argument otherwise.
  [[nodiscard]] static GridPreset named(std::string_view name);

  [[nodiscard]] std::size_t size() const noexcept {
    return f11.size() * f00.size() * f10.size() * f01.size();
  }
};

/// Full Cartesian product, lexicographic in the (f11, f00, f10, f01) value-set indices,
/// so f01 varies fastest.
[[nodiscard]] std::vector<ContingencyTable> generate(const GridPreset& preset);

}  // namespace rca
