#pragma once

#include "ptlab/sigoracle/mono_transcript.hpp"
#include "ptlab/sigoracle/unate_transcript.hpp"

namespace ptlab {

// Reach probability of a mono transcript over independent dictator draws,
// counted cell by cell from the raw (x, signature) records. Returns 0/0 when the
// instance's T and C disagree with the recorded signatures.
Likelihood enumerate_mono_leaf(const MonoInstance& tc, const MonoTranscript& t);

struct UnateReach {
  double p_yes = 0;
  double p_no = 0;
};

// Enumerates every s on Mbar and every (k, polarity) per term with r = 0; breached
// terms must put their dictator on the revealed variable. |Mbar| <= 20.
UnateReach enumerate_unate_leaf(const UnateInstance& inst, const UnateTranscript& t);

// Unateness instance with r = 0, num_terms terms over M and uniform s, for
// enumeration-sized checks.
UnateInstance toy_unate_instance(std::uint32_t n, std::uint64_t num_terms, World world, std::uint64_t seed);

}  // namespace ptlab
