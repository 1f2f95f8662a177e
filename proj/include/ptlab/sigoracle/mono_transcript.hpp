#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "ptlab/sigoracle/classifier_config.hpp"
#include "ptlab/sigoracle/signature.hpp"

namespace ptlab {

enum class Consistency { one_consistent, zero_consistent, inconsistent };

struct MonoClauseCell {
  std::vector<std::size_t> P;  // query indices
  std::vector<std::size_t> R;
  std::vector<bool> rho;       // parallel to P
  BitString A0, A1;
};

struct MonoTermCell {
  std::vector<std::size_t> P;
  std::vector<std::size_t> R;
  BitString A0, A1;
  std::map<std::uint64_t, MonoClauseCell> clauses;  // keys form J_i
};

struct MonoQuery {
  BitString x;
  FullSignature sig;
};

// Ordered (x, signature) pairs with the induced tuple maintained incrementally.
class MonoTranscript {
 public:
  explicit MonoTranscript(std::uint32_t n);

  void extend(const BitString& x, const FullSignature& sig);

  std::uint32_t n() const { return n_; }
  std::size_t size() const { return queries_.size(); }
  const std::vector<MonoQuery>& queries() const { return queries_; }
  const std::map<std::uint64_t, MonoTermCell>& terms() const { return terms_; }  // keys form I
  const MonoTermCell& term(std::uint64_t i) const;
  const MonoClauseCell& cell(std::uint64_t i, std::uint64_t j) const;
  bool has_cell(std::uint64_t i, std::uint64_t j) const;

 private:
  std::uint32_t n_;
  std::vector<MonoQuery> queries_;
  std::map<std::uint64_t, MonoTermCell> terms_;
};

Consistency consistency_status(const MonoTranscript& t, std::uint64_t i, std::uint64_t j);

struct EdgeClass {
  enum class Kind { none, e1, e2, e3, e4 };
  Kind kind = Kind::none;  // lowest-numbered class that fired
  unsigned fired = 0;      // bit k set when class E_{k+1} fired
  std::uint64_t i = 0;     // trigger of the reported class
  std::optional<std::uint64_t> j;

  bool bad() const { return kind != Kind::none; }
};

std::string to_string(EdgeClass::Kind k);

// Classification of the edge that appends (x, sig) to t_before. Returns none
// when an earlier edge of t_before was already bad.
EdgeClass classify_mono_edge(const MonoTranscript& t_before, const BitString& x, const FullSignature& sig,
                             const ClassifierConfig& cfg);

// Same rule without the path check.
EdgeClass classify_mono_step(const MonoTranscript& t_before, const BitString& x, const FullSignature& sig,
                             const ClassifierConfig& cfg);

struct Likelihood {
  double p_yes = 1.0;
  double p_no = 1.0;
  // p_no / p_yes; +infinity when p_yes = 0 (including 0/0).
  double ratio = 1.0;
};

double likelihood_ratio(double p_yes, double p_no);

// Reach probabilities of a good leaf over H, conditioned on the instance's T and C
// (its dictators are ignored).
Likelihood mono_leaf_likelihood(const MonoInstance& tc, const MonoTranscript& t);

Json tuple_sizes_json(const MonoTranscript& t);

// Violations of the induced-tuple size and containment axioms, the A-set
// definitions and the one-sets counting chain. With an instance, also the
// agreement of T and C with A and R. Empty when everything holds.
std::vector<std::string> tuple_axiom_failures(const MonoTranscript& t, const MonoInstance* inst = nullptr);

}  // namespace ptlab
