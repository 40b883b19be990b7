#include "rca/synth.hpp"

#include <stdexcept>

namespace rca {

namespace {

const std::vector<double> kSmall{0, 1, 10, 11};
const std::vector<double> kLarge{1000, 5000, 10000, 25000, 50000, 75000, 100000};
const std::vector<double> kMiddle{10, 100, 250, 500, 600, 800, 1000};

}  // namespace

GridPreset GridPreset::sparse() { return {"sparse", kSmall, kLarge, kMiddle, kMiddle}; }

GridPreset GridPreset::dense() { return {"dense", kLarge, kSmall, kMiddle, kMiddle}; }

GridPreset GridPreset::named(std::string_view name) {
  if (name == "sparse") return sparse();
  if (name == "dense") return dense();
  throw std::invalid_argument("unknown preset '" + std::string(name) +
                              "' (expected sparse or dense)");
}

std::vector<ContingencyTable> generate(const GridPreset& preset) {
  std::vector<ContingencyTable> out;
  out.reserve(preset.size());
  for (double a : preset.f11) {
    for (double d : preset.f00) {
      for (double b : preset.f10) {
        for (double c : preset.f01) out.emplace_back(a, b, c, d);
      }
    }
  }
  return out;
}

}  // namespace rca
