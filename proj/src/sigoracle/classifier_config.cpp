#include "ptlab/sigoracle/classifier_config.hpp"

#include <cmath>

#include "ptlab/core/error.hpp"
#include "ptlab/core/math.hpp"

namespace ptlab {

void ClassifierConfig::validate() const {
  if (!(alpha >= 1.0)) throw InvalidArgument("alpha must be at least 1");
}

double ClassifierConfig::mono_shrink_threshold(std::uint32_t n) const {
  return mono_shrink ? *mono_shrink : alpha * std::sqrt(double(n)) * log2n(n);
}

double ClassifierConfig::unate_shrink_threshold(std::uint32_t n) const {
  return unate_shrink ? *unate_shrink : std::pow(double(n), 2.0 / 3.0) * log2n(n);
}

double ClassifierConfig::balance_ones_threshold(std::uint32_t n) const {
  return balance_ones ? *balance_ones : unate_shrink_threshold(n) / 8.0;
}

double ClassifierConfig::breach_size_threshold(std::uint32_t n) const {
  return breach_size ? *breach_size : n / 10.0;
}

double ClassifierConfig::breach_cap_threshold(std::uint32_t n) const {
  return breach_cap ? *breach_cap : std::cbrt(double(n)) / log2n(n);
}

double ClassifierConfig::shared_ones_threshold(std::uint32_t n) const {
  const double slack = shared_ones_slack ? *shared_ones_slack : alpha * std::sqrt(double(n)) * log2n(n);
  return n / 2.0 - slack;
}

Json ClassifierConfig::to_json(std::uint32_t n) const {
  return Json{{"alpha", alpha},
              {"log_base", 2},
              {"mono_shrink", mono_shrink_threshold(n)},
              {"unate_shrink", unate_shrink_threshold(n)},
              {"balance_ones", balance_ones_threshold(n)},
              {"breach_size", breach_size_threshold(n)},
              {"breach_cap", breach_cap_threshold(n)},
              {"shared_ones", shared_ones_threshold(n)},
              {"balance_subset_cap", balance_subset_cap}};
}

}  // namespace ptlab
