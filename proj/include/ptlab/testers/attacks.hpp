#pragma once

#include "ptlab/testers/verdict.hpp"

namespace ptlab {

// cfg.q / 2 rounds of a uniform edge (x, x^(i)).
Verdict edge_tester(CountingOracle& oracle, const TesterConfig& cfg);
Verdict edge_tester(const BooleanFunction& f, const TesterConfig& cfg);

// Black-box attacks using only value queries. Both reject only with a mono_pair
// witness read back from the oracle, so they never reject a monotone function.
Verdict bb15_attack(const BooleanFunction& f, std::uint32_t n, const TesterConfig& cfg);
Verdict two_level_attack(const BooleanFunction& f, std::uint32_t n, const TesterConfig& cfg);

// Same, exposing the oracle so callers can inspect the query log.
Verdict bb15_attack(CountingOracle& oracle, std::uint32_t n, const TesterConfig& cfg);
Verdict two_level_attack(CountingOracle& oracle, std::uint32_t n, const TesterConfig& cfg);

}  // namespace ptlab
