// Copyright 2026 The Flipline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact ground truth on small instances: every configuration of an instance,
// the exact Markov chain of the process over them, hitting times, closed
// recurrent classes, exhaustive checks of the convergence invariants, and the
// two counterexample constructions.

#ifndef FLIPLINE_ORACLE_HPP
#define FLIPLINE_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flipline/core.hpp"
#include "flipline/rational.hpp"
#include "flipline/rule.hpp"

namespace flipline {

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

// C(tot, A), saturating at SIZE_MAX.
std::size_t config_count(const LineParams& params);

// Bytes needed by build_graph, roughly.
std::size_t graph_memory_estimate(const LineParams& params, Topology topology);

// All words with A a's and B b's in lexicographic order (a < b). Throws
// Error(kLimitExceeded) when there are more than `cap`.
std::vector<Word> enumerate_words(const LineParams& params,
                                  std::size_t cap = kDefaultStateCap);

// Exact chain of the process: state = word, ranked lexicographically; each
// state has one outgoing edge per selectable index (probability 1/N each),
// pointing to itself when that index is inactive.
class TransitionGraph {
 public:
  using State = std::uint32_t;

  TransitionGraph(const LineParams& params, const LocalRule& rule, Topology topology,
                  std::size_t cap = kDefaultStateCap);
  TransitionGraph(const LineParams& params, const RuleParams& rule, Topology topology,
                  std::size_t cap = kDefaultStateCap);

  const LineParams& params() const noexcept { return params_; }
  Topology topology() const noexcept { return topology_; }
  std::int64_t sight() const noexcept { return sight_; }
  std::size_t size() const noexcept { return words_.size(); }
  std::int64_t selectable() const noexcept { return selectable_; }

  const Word& word(State s) const { return words_.at(s); }
  Configuration config(State s) const;
  std::optional<State> index_of(LetterSpan word) const;
  State require_index(LetterSpan word) const;  // throws Error(kInvalidArgument)

  // Length N; entry k is the successor when index first_selectable + k is picked.
  std::span<const State> successors(State s) const;
  // Distinct successors other than s itself, sorted.
  std::vector<State> moves(State s) const;
  bool absorbing(State s) const;

 private:
  LineParams params_;
  Topology topology_;
  std::int64_t sight_;
  std::int64_t selectable_;
  std::vector<Word> words_;
  std::vector<State> succ_;
  std::vector<std::vector<std::uint64_t>> binom_;

  void build(const LocalRule& rule);
};

std::vector<TransitionGraph::State> reachable_set(const TransitionGraph& graph,
                                                  TransitionGraph::State start);

// Strongly connected components of the move graph that no move leaves,
// each sorted, ordered by smallest member.
std::vector<std::vector<TransitionGraph::State>> closed_classes(const TransitionGraph& graph);

struct HittingTime {
  bool infinite = false;
  std::optional<Rational> exact;  // set when solved exactly
  double value = 0;               // +inf when infinite
  std::string method;             // "trivial", "reachability", "exact" or "iterative"
  double residual = 0;
  std::size_t unknowns = 0;
};

struct HittingOptions {
  std::size_t exact_unknown_limit = 250;  // above this, Gauss-Seidel
  std::int64_t exact_tot_limit = 12;
  double tolerance = 1e-10;
  std::int64_t max_sweeps = 10'000'000;
};

// Expected number of steps from `start` until the chain first enters
// `targets`. Infinite when some state reachable before hitting the targets
// cannot reach them; this is detected before any solve.
HittingTime exact_hitting_time(const TransitionGraph& graph, TransitionGraph::State start,
                               std::span<const TransitionGraph::State> targets,
                               const HittingOptions& options = {});

enum class CheckStatus { kPass, kFail, kSkipped };

std::string_view to_string(CheckStatus status) noexcept;

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;
  std::optional<std::string> counterexample;
  std::int64_t cases = 0;
};

struct VerifyReport {
  LineParams params;
  std::int64_t sight = 0;
  Topology topology = Topology::kChain;
  std::vector<CheckResult> checks;

  // No failures; skipped checks do not count against it.
  bool passed() const;
  const CheckResult* find(std::string_view name) const;
};

struct VerifyOptions {
  bool energy = true;  // the supermartingale check is the costly one
  std::size_t cap = kDefaultStateCap;
};

// Exhaustive checks over every configuration of the instance:
//   thickness_lower_bound   thickness >= per - 1
//   height_residues         h(c_i) mod per depends only on i mod per
//   monotonicity            active flips never raise h_max nor lower h_min
//                           (cycle: never raise the thickness)
//   christoffel_stable      thickness per-1 implies no active site
//   no_isolated_extremum    a flip creating a new extremum at i leaves the
//                           same extremum at i+per or i-per (chain)
//   extremum_activity       an extremal site with a lower/higher site within
//                           per to its left is active (chain)
//   energy_supermartingale  for every context with H0 >= per and every c with
//                           E(c) > 0: E(c) <= 3n, drift <= 0 and some index
//                           changes E (chain)
// Checks that need (ta, tb) visible by the sight are skipped when per > sight.
VerifyReport verify_corpus(const LineParams& params, const RuleParams& rule,
                           Topology topology, const VerifyOptions& options = {});

// Recurrence structure of the exact chain. Chain topology:
//   nonnegative_coalescence  from every nonnegative start the only closed
//                            class reachable is {target_christoffel}
//   strip_recurrence         every closed class lies in -per+1 <= h_min,
//                            h_max <= per-1
// Cycle topology:
//   stable_christoffel       every stable state has thickness per-1
//   recurrent_christoffel    every closed class holds only thickness per-1
VerifyReport recurrence_check(const LineParams& params, const RuleParams& rule,
                              Topology topology, std::size_t cap = kDefaultStateCap);

// (ba^2ba)^{n-1} ba^3b for (ta, tb) = (3, 2); n >= 2.
Configuration stuck_config(std::int64_t n);

struct ImpossibilityPair {
  Configuration c;        // (a^{s+1}b)^{2k}
  Configuration c_prime;  // a^{s+1}b (a^{s+2}b)^{k-1} (a^s b)^{k-1} a^{s+1}b
};

// Instance (ta, tb, n) = (s+1, 1, 2k); s >= 2, k >= 2.
ImpossibilityPair impossibility_family(std::int64_t s, std::int64_t k);

// True when every (left, right) word pair seen at a flippable site of `inner`
// is also seen at some site of `outer`. Then any rule of that sight that
// stabilises `outer` stabilises `inner` too.
bool local_views_covered(const Configuration& inner, const Configuration& outer,
                         std::int64_t sight);

// True iff no site of `config` is active under `rule`.
bool rule_stability_probe(const LocalRule& rule, const Configuration& config);

// "# header" then one line per distinct move: "<from> <to> <count>", where
// count/N is the transition probability.
void write_edge_list(std::ostream& out, const TransitionGraph& graph);

}  // namespace flipline

#endif  // FLIPLINE_ORACLE_HPP
