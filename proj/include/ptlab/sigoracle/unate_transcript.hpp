#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ptlab/core/rng.hpp"
#include "ptlab/sigoracle/mono_transcript.hpp"

namespace ptlab {

struct TermRecord {
  std::vector<std::size_t> P;
  std::vector<std::size_t> R;
  std::vector<bool> rho;  // parallel to P
  BitString A0, A1;
  bool breached = false;
  std::optional<std::uint32_t> delta;  // special variable, revealed at breach time

  BitString A() const { return A0 | A1; }
};

struct UnateQuery {
  BitString x;
  UnateSignature sig;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> breaches;  // (term, special variable) revealed here
};

// Maps a term index to its true special variable.
using SpecialVariableSource = std::function<std::uint32_t(std::uint64_t)>;

SpecialVariableSource special_variables_of(const UnateInstance& inst);

// Single-level transcript (I;P;R;A;rho), plus breach tracking and delta when a
// complement mask is supplied. Without one it serves the one-level family.
class UnateTranscript {
 public:
  // mbar: the coordinates outside M. breach_size: |A_i cap Mbar| at or below which term i is breached.
  UnateTranscript(std::uint32_t n, std::optional<BitString> mbar, double breach_size);
  static UnateTranscript for_instance(const UnateInstance& inst, const ClassifierConfig& cfg);
  static UnateTranscript one_level(std::uint32_t n);

  // reveal is consulted for newly breached terms; required when breach tracking is on.
  void extend(const BitString& x, const UnateSignature& sig, const SpecialVariableSource& reveal = {});

  std::uint32_t n() const { return n_; }
  std::size_t size() const { return queries_.size(); }
  bool tracks_breaches() const { return mbar_.has_value(); }
  const BitString& m_complement() const;
  double breach_size() const { return breach_size_; }
  const std::vector<UnateQuery>& queries() const { return queries_; }
  const std::map<std::uint64_t, TermRecord>& terms() const { return terms_; }
  const TermRecord& term(std::uint64_t i) const;

 private:
  std::uint32_t n_;
  std::optional<BitString> mbar_;
  double breach_size_;
  std::vector<UnateQuery> queries_;
  std::map<std::uint64_t, TermRecord> terms_;
};

Consistency consistency_status(const UnateTranscript& t, std::uint64_t i);

struct BreachSplit {
  std::vector<std::uint64_t> breached;  // I_B
  std::vector<std::uint64_t> safe;      // I_S
};

BreachSplit breached_terms(const UnateTranscript& t, const ClassifierConfig& cfg);

EdgeClass classify_unate_edge(const UnateTranscript& t_before, const BitString& x, const UnateSignature& sig,
                              const SpecialVariableSource& reveal, const ClassifierConfig& cfg);
EdgeClass classify_unate_step(const UnateTranscript& t_before, const BitString& x, const UnateSignature& sig,
                              const SpecialVariableSource& reveal, const ClassifierConfig& cfg);

enum class BalanceMode { per_p_i, all_subsets_capped };

// Balance of the step querying x after t, with M = first n/2 coordinates and r = 0.
bool check_balanced_step(const UnateTranscript& t, const BitString& x, BalanceMode mode,
                         const ClassifierConfig& cfg = {});

enum class LikelihoodMode { closed_form_no, monte_carlo_yes, exhaustive_small, automatic };

struct UnateLikelihood {
  double p_yes = 1.0;
  double p_no = 1.0;
  double p_yes_ci = 0.0;  // 95% half-width when p_yes is sampled
  bool p_yes_exact = true;
  std::size_t relevant_coordinates = 0;
};

// closed_form_no returns p_no only (p_yes left at 1 and flagged inexact);
// exhaustive_small enumerates s over the relevant coordinates (resource-limit above 20);
// monte_carlo_yes samples s; automatic picks exhaustive when feasible.
UnateLikelihood unate_transcript_likelihood(const UnateTranscript& t, LikelihoodMode mode,
                                            std::uint64_t mc_samples = 100000, std::uint64_t seed = 0);

enum class Outcome { good, bad };

Outcome classify_nonadaptive_outcome(const UnateTranscript& t, const ClassifierConfig& cfg);

Json tuple_sizes_json(const UnateTranscript& t);

}  // namespace ptlab
