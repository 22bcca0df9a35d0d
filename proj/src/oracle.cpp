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

#include "flipline/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "flipline/activity.hpp"
#include "flipline/analysis.hpp"
#include "flipline/errors.hpp"

namespace flipline {

using State = TransitionGraph::State;

namespace {

std::uint64_t saturating_add(std::uint64_t x, std::uint64_t y) {
  const auto s = x + y;
  return s < x ? std::numeric_limits<std::uint64_t>::max() : s;
}

std::vector<std::vector<std::uint64_t>> binomial_table(std::int64_t tot) {
  const auto m = static_cast<std::size_t>(tot) + 1;
  std::vector<std::vector<std::uint64_t>> c(m, std::vector<std::uint64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    c[i][0] = 1;
    for (std::size_t j = 1; j <= i; ++j) c[i][j] = saturating_add(c[i - 1][j - 1], c[i - 1][j]);
  }
  return c;
}

}  // namespace

std::size_t config_count(const LineParams& params) {
  const auto c = binomial_table(params.tot());
  const auto v = c[static_cast<std::size_t>(params.tot())][static_cast<std::size_t>(params.a_count())];
  return v > std::numeric_limits<std::size_t>::max() ? std::numeric_limits<std::size_t>::max()
                                                     : static_cast<std::size_t>(v);
}

std::size_t graph_memory_estimate(const LineParams& params, Topology topology) {
  const auto states = config_count(params);
  const auto n = static_cast<std::size_t>(params.tot() - (topology == Topology::kChain ? 1 : 0));
  const auto per_state = sizeof(Word) + static_cast<std::size_t>(params.tot()) + n * sizeof(State);
  if (states > std::numeric_limits<std::size_t>::max() / per_state) {
    return std::numeric_limits<std::size_t>::max();
  }
  return states * per_state;
}

std::vector<Word> enumerate_words(const LineParams& params, std::size_t cap) {
  const auto count = config_count(params);
  require(count <= cap, ErrorCode::kLimitExceeded,
          "instance has " + std::to_string(count) + " configurations, above the cap of " +
              std::to_string(cap));
  Word w(static_cast<std::size_t>(params.a_count()), Letter::kA);
  w.insert(w.end(), static_cast<std::size_t>(params.b_count()), Letter::kB);
  std::vector<Word> out;
  out.reserve(count);
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

// ---------------------------------------------------------------------------
// TransitionGraph

TransitionGraph::TransitionGraph(const LineParams& params, const LocalRule& rule,
                                 Topology topology, std::size_t cap)
    : params_(params),
      topology_(topology),
      sight_(rule.sight),
      selectable_(topology == Topology::kChain ? params.tot() - 1 : params.tot()),
      words_(enumerate_words(params, cap)),
      binom_(binomial_table(params.tot())) {
  require(words_.size() < std::numeric_limits<State>::max(), ErrorCode::kLimitExceeded,
          "too many states for 32-bit state indices");
  build(rule);
}

TransitionGraph::TransitionGraph(const LineParams& params, const RuleParams& rule,
                                 Topology topology, std::size_t cap)
    : TransitionGraph(params, strong_rule(rule), topology, cap) {}

void TransitionGraph::build(const LocalRule& rule) {
  const auto n = static_cast<std::size_t>(selectable_);
  const auto first = first_selectable(topology_);
  succ_.assign(words_.size() * n, 0);
  for (std::size_t s = 0; s < words_.size(); ++s) {
    const Configuration c(words_[s], params_, topology_);
    for (std::size_t k = 0; k < n; ++k) {
      const auto i = first + static_cast<std::int64_t>(k);
      State next = static_cast<State>(s);
      if (flip_kind(c, i) != FlipKind::kNone && is_active(c, i, rule)) {
        next = require_index(flip(c, i).word());
      }
      succ_[s * n + k] = next;
    }
  }
}

Configuration TransitionGraph::config(State s) const {
  return Configuration(words_.at(s), params_, topology_);
}

std::optional<State> TransitionGraph::index_of(LetterSpan word) const {
  if (static_cast<std::int64_t>(word.size()) != params_.tot()) return std::nullopt;
  if (count_of(word, Letter::kA) != params_.a_count()) return std::nullopt;
  // Lexicographic rank: each b at a position where an a could still go skips
  // every completion that puts the a there instead.
  std::uint64_t rank = 0;
  auto remaining = static_cast<std::size_t>(word.size());
  auto a_left = static_cast<std::size_t>(params_.a_count());
  for (Letter l : word) {
    --remaining;
    if (l == Letter::kA) {
      --a_left;
    } else if (a_left > 0) {
      rank += binom_[remaining][a_left - 1];
    }
  }
  return static_cast<State>(rank);
}

State TransitionGraph::require_index(LetterSpan word) const {
  const auto idx = index_of(word);
  require(idx.has_value(), ErrorCode::kInvalidArgument,
          "word '" + to_string(word) + "' is not a configuration of this instance");
  return *idx;
}

std::span<const State> TransitionGraph::successors(State s) const {
  const auto n = static_cast<std::size_t>(selectable_);
  require(s < words_.size(), ErrorCode::kInvalidArgument, "state out of range");
  return std::span<const State>(succ_).subspan(static_cast<std::size_t>(s) * n, n);
}

std::vector<State> TransitionGraph::moves(State s) const {
  std::vector<State> out;
  for (State t : successors(s)) {
    if (t != s) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool TransitionGraph::absorbing(State s) const {
  const auto succ = successors(s);
  return std::all_of(succ.begin(), succ.end(), [s](State t) { return t == s; });
}

// ---------------------------------------------------------------------------
// Reachability and recurrence

namespace {

std::vector<char> forward_closure(const TransitionGraph& g, std::span<const State> seeds,
                                  const std::vector<char>* stop_at = nullptr) {
  std::vector<char> seen(g.size(), 0);
  std::deque<State> queue;
  for (State s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    if (stop_at && (*stop_at)[s]) continue;
    for (State t : g.successors(s)) {
      if (!seen[t]) {
        seen[t] = 1;
        queue.push_back(t);
      }
    }
  }
  return seen;
}

std::vector<char> backward_closure(const TransitionGraph& g, std::span<const State> seeds) {
  std::vector<std::vector<State>> pred(g.size());
  for (State s = 0; s < g.size(); ++s) {
    for (State t : g.moves(s)) pred[t].push_back(s);
  }
  std::vector<char> seen(g.size(), 0);
  std::deque<State> queue;
  for (State s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (State p : pred[s]) {
      if (!seen[p]) {
        seen[p] = 1;
        queue.push_back(p);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<State> reachable_set(const TransitionGraph& graph, State start) {
  const State seeds[] = {start};
  require(start < graph.size(), ErrorCode::kInvalidArgument, "state out of range");
  const auto seen = forward_closure(graph, seeds);
  std::vector<State> out;
  for (State s = 0; s < graph.size(); ++s) {
    if (seen[s]) out.push_back(s);
  }
  return out;
}

std::vector<std::vector<State>> closed_classes(const TransitionGraph& graph) {
  // Iterative Tarjan over the move graph.
  const auto n = graph.size();
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), component(n, kUnvisited);
  std::vector<char> on_stack(n, 0);
  std::vector<State> stack;
  std::vector<std::vector<State>> components;
  std::uint32_t counter = 0;

  struct Frame {
    State state;
    std::vector<State> next;
    std::size_t pos;
  };
  for (State root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames;
    const auto enter = [&](State s) {
      index[s] = low[s] = counter++;
      stack.push_back(s);
      on_stack[s] = 1;
      frames.push_back({s, graph.moves(s), 0});
    };
    enter(root);
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.pos < f.next.size()) {
        const State t = f.next[f.pos++];
        if (index[t] == kUnvisited) {
          enter(t);
        } else if (on_stack[t]) {
          low[f.state] = std::min(low[f.state], index[t]);
        }
        continue;
      }
      const State s = f.state;
      if (low[s] == index[s]) {
        std::vector<State> comp;
        State t;
        do {
          t = stack.back();
          stack.pop_back();
          on_stack[t] = 0;
          component[t] = static_cast<std::uint32_t>(components.size());
          comp.push_back(t);
        } while (t != s);
        components.push_back(std::move(comp));
      }
      frames.pop_back();
      if (!frames.empty()) {
        const State parent = frames.back().state;
        low[parent] = std::min(low[parent], low[s]);
      }
    }
  }

  std::vector<std::vector<State>> closed;
  for (std::size_t c = 0; c < components.size(); ++c) {
    bool leaves = false;
    for (State s : components[c]) {
      for (State t : graph.moves(s)) leaves = leaves || component[t] != c;
    }
    if (!leaves) {
      auto comp = components[c];
      std::sort(comp.begin(), comp.end());
      closed.push_back(std::move(comp));
    }
  }
  std::sort(closed.begin(), closed.end());
  return closed;
}

// ---------------------------------------------------------------------------
// Hitting times

namespace {

struct LinearSystem {
  // Row r: diag[r] * h_r - sum_{(c, w) in off[r]} w * h_c = rhs
  std::vector<std::int64_t> diag;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> off;
  std::int64_t rhs = 0;
};

std::vector<double> solve_dense(const LinearSystem& sys) {
  const auto m = sys.diag.size();
  std::vector<double> a(m * m, 0.0), b(m, static_cast<double>(sys.rhs));
  for (std::size_t r = 0; r < m; ++r) {
    a[r * m + r] = static_cast<double>(sys.diag[r]);
    for (const auto& [c, w] : sys.off[r]) a[r * m + c] -= static_cast<double>(w);
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
    }
    if (piv != col) {
      for (std::size_t k = 0; k < m; ++k) std::swap(a[col * m + k], a[piv * m + k]);
      std::swap(b[col], b[piv]);
    }
    const double p = a[col * m + col];
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r * m + col] / p;
      if (f == 0.0) continue;
      for (std::size_t k = col; k < m; ++k) a[r * m + k] -= f * a[col * m + k];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(m, 0.0);
  for (std::size_t r = m; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < m; ++k) s -= a[r * m + k] * x[k];
    x[r] = s / a[r * m + r];
  }
  return x;
}

std::vector<Rational> solve_exact(const LinearSystem& sys) {
  const auto m = sys.diag.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (std::size_t r = 0; r < m; ++r) {
    a[r][r] = sys.diag[r];
    for (const auto& [c, w] : sys.off[r]) a[r][c] -= w;
    a[r][m] = sys.rhs;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && a[piv][col] == 0) ++piv;
    require(piv < m, ErrorCode::kPrecondition, "singular hitting-time system");
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= m; ++k) {
        if (a[col][k] != 0) a[r][k] -= f * a[col][k];
      }
    }
  }
  std::vector<Rational> x(m);
  for (std::size_t r = 0; r < m; ++r) x[r] = a[r][m] / a[r][r];
  return x;
}

double max_residual(const LinearSystem& sys, const std::vector<double>& x) {
  double worst = 0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    double v = static_cast<double>(sys.diag[r]) * x[r];
    for (const auto& [c, w] : sys.off[r]) v -= static_cast<double>(w) * x[c];
    worst = std::max(worst, std::abs(v - static_cast<double>(sys.rhs)) /
                                static_cast<double>(sys.rhs));
  }
  return worst;
}

}  // namespace

HittingTime exact_hitting_time(const TransitionGraph& graph, State start,
                               std::span<const State> targets, const HittingOptions& options) {
  require(!targets.empty(), ErrorCode::kInvalidArgument, "empty target set");
  require(start < graph.size(), ErrorCode::kInvalidArgument, "state out of range");
  std::vector<char> is_target(graph.size(), 0);
  for (State t : targets) {
    require(t < graph.size(), ErrorCode::kInvalidArgument, "target state out of range");
    is_target[t] = 1;
  }
  HittingTime out;
  if (is_target[start]) {
    out.exact = Rational(0);
    out.method = "trivial";
    return out;
  }

  const State seeds[] = {start};
  const auto reach = forward_closure(graph, seeds, &is_target);
  const auto can_hit = backward_closure(graph, targets);
  std::vector<State> unknown;
  std::vector<std::size_t> slot(graph.size(), 0);
  for (State s = 0; s < graph.size(); ++s) {
    if (!reach[s] || is_target[s]) continue;
    if (!can_hit[s]) {
      out.infinite = true;
      out.value = std::numeric_limits<double>::infinity();
      out.method = "reachability";
      return out;
    }
    slot[s] = unknown.size();
    unknown.push_back(s);
  }
  out.unknowns = unknown.size();

  // N h(x) = N + sum_k h(succ_k(x)), with h = 0 on the targets.
  LinearSystem sys;
  sys.rhs = graph.selectable();
  sys.diag.assign(unknown.size(), graph.selectable());
  sys.off.resize(unknown.size());
  for (std::size_t r = 0; r < unknown.size(); ++r) {
    std::map<std::size_t, std::int64_t> weights;
    for (State t : graph.successors(unknown[r])) {
      if (is_target[t]) continue;
      if (t == unknown[r]) {
        --sys.diag[r];
      } else {
        ++weights[slot[t]];
      }
    }
    sys.off[r].assign(weights.begin(), weights.end());
  }

  const auto start_slot = slot[start];
  if (unknown.size() <= options.exact_unknown_limit &&
      graph.params().tot() <= options.exact_tot_limit) {
    const auto x = solve_exact(sys);
    out.exact = x[start_slot];
    out.value = to_double(x[start_slot]);
    out.method = "exact";
    return out;
  }

  std::vector<double> x;
  if (unknown.size() <= 3000) {
    x = solve_dense(sys);
    out.method = "dense";
  } else {
    x.assign(unknown.size(), 0.0);
    out.method = "iterative";
  }
  // Gauss-Seidel sweeps refine the dense solution or do all the work.
  for (std::int64_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
    out.residual = max_residual(sys, x);
    if (out.residual < options.tolerance) break;
    for (std::size_t r = 0; r < x.size(); ++r) {
      double v = static_cast<double>(sys.rhs);
      for (const auto& [c, w] : sys.off[r]) v += static_cast<double>(w) * x[c];
      x[r] = v / static_cast<double>(sys.diag[r]);
    }
  }
  require(out.residual < options.tolerance, ErrorCode::kLimitExceeded,
          "hitting-time solve did not reach the residual tolerance");
  out.value = x[start_slot];
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive checks

std::string_view to_string(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkipped: return "skipped";
  }
  return "fail";
}

bool VerifyReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::kFail; });
}

const CheckResult* VerifyReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

class Checker {
 public:
  Checker(std::string name, std::string description) {
    result_.name = std::move(name);
    result_.detail = std::move(description);
  }

  void count() { ++result_.cases; }

  void expect(bool ok, const std::function<std::string()>& describe) {
    ++result_.cases;
    if (ok || result_.status == CheckStatus::kFail) {
      if (!ok) ++failures_;
      return;
    }
    ++failures_;
    result_.status = CheckStatus::kFail;
    result_.counterexample = describe();
  }

  void skip(std::string reason) {
    result_.status = CheckStatus::kSkipped;
    result_.detail = std::move(reason);
  }

  void note(const std::string& extra) { result_.detail += "; " + extra; }

  CheckResult finish() {
    if (failures_ > 0) note(std::to_string(failures_) + " failing cases");
    return result_;
  }

 private:
  CheckResult result_;
  std::int64_t failures_ = 0;
};

std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

std::string at_site(const Word& w, std::int64_t i) {
  return "word=" + to_string(w) + " site=" + std::to_string(i);
}

}  // namespace

VerifyReport verify_corpus(const LineParams& params, const RuleParams& rule,
                           Topology topology, const VerifyOptions& options) {
  const auto words = enumerate_words(params, options.cap);
  const auto per = params.per();
  const auto tot = params.tot();
  const auto sight = rule.sight();
  const bool visible = per <= sight;
  const bool chain = topology == Topology::kChain;
  const std::string hypothesis = "hypothesis violated: per > sight (" + std::to_string(per) +
                                 " > " + std::to_string(sight) + ")";

  Checker lower("thickness_lower_bound", "thickness >= per-1 for every configuration");
  Checker residues("height_residues", "h(c_i) mod per depends only on i mod per");
  Checker mono("monotonicity",
               chain ? "active flips keep h_min and h_max within their previous values"
                     : "active flips never increase the thickness");
  Checker stable("christoffel_stable", "configurations of thickness per-1 have no active site");
  Checker isolated("no_isolated_extremum",
                   "a flip reaching h_max (h_min) at i keeps h_max (h_min) at i+per or i-per");
  Checker activity("extremum_activity",
                   "an extremal site with a site within per on its left at least per away "
                   "in height is active");

  std::vector<std::int64_t> residue_of(static_cast<std::size_t>(per), -1);
  const auto first = first_selectable(topology);
  const auto count = chain ? tot - 1 : tot;

  for (const auto& w : words) {
    const Configuration c(w, params, topology);
    const auto h = height_profile(c);
    const auto range = height_range(c);
    const auto hat = [&](std::int64_t i) { return h[static_cast<std::size_t>(i)]; };

    lower.expect(range.thickness() >= per - 1, [&] { return "word=" + to_string(w); });
    for (std::int64_t i = 0; i <= tot; ++i) {
      auto& slot = residue_of[static_cast<std::size_t>(i % per)];
      const auto r = mod(hat(i), per);
      if (slot < 0) slot = r;
      residues.expect(slot == r, [&] { return at_site(w, i); });
    }

    std::vector<char> active(static_cast<std::size_t>(tot + 1), 0);
    for (std::int64_t i = first; i < first + count; ++i) {
      const auto kind = flip_kind(c, i);
      if (kind == FlipKind::kNone || !is_active(c, i, rule)) continue;
      active[static_cast<std::size_t>(i)] = 1;
      if (!visible) continue;
      const auto after = height_range(flip(c, i));
      if (chain) {
        mono.expect(after.min >= range.min && after.max <= range.max, [&] {
          return at_site(w, i) + " range [" + std::to_string(range.min) + "," +
                 std::to_string(range.max) + "] -> [" + std::to_string(after.min) + "," +
                 std::to_string(after.max) + "]";
        });
      } else {
        mono.expect(after.thickness() <= range.thickness(), [&] { return at_site(w, i); });
      }
      stable.expect(range.thickness() != per - 1, [&] { return at_site(w, i); });

      if (!chain) continue;
      const bool new_max = kind == FlipKind::kIncreasing && hat(i) + per == range.max;
      const bool new_min = kind == FlipKind::kDecreasing && hat(i) - per == range.min;
      if (new_max || new_min) {
        const auto level = new_max ? range.max : range.min;
        const bool ok = (i + per <= tot && hat(i + per) == level) ||
                        (i - per >= 0 && hat(i - per) == level);
        isolated.expect(ok, [&] { return at_site(w, i); });
      }
    }

    if (chain && visible) {
      // The right word must be full for the sight constraint; with
      // sight == per this is exactly i <= tot - per.
      for (std::int64_t i = 1; i <= tot - std::max(per, sight); ++i) {
        const bool at_min = hat(i) == range.min;
        const bool at_max = hat(i) == range.max;
        if (!at_min && !at_max) continue;
        bool witness = false;
        for (std::int64_t j = 1; j <= per && i - j >= 0; ++j) {
          if (at_min && hat(i - j) - per >= range.min) witness = true;
          if (at_max && hat(i - j) + per <= range.max) witness = true;
        }
        if (witness) {
          activity.expect(active[static_cast<std::size_t>(i)] != 0,
                          [&] { return at_site(w, i); });
        }
      }
    }
  }

  if (!visible) {
    mono.skip(hypothesis);
    stable.skip(hypothesis);
    isolated.skip(hypothesis);
    activity.skip(hypothesis);
  } else if (!chain) {
    isolated.skip("chain topology only");
    activity.skip("chain topology only");
  }

  VerifyReport report{params, sight, topology};
  report.checks = {lower.finish(), residues.finish(), mono.finish(),
                   stable.finish(), isolated.finish(), activity.finish()};

  Checker energy_check("energy_supermartingale",
                       "E <= 3n, E[dE] <= 0 and some index changes E, for every c with E > 0");
  if (!options.energy) {
    energy_check.skip("not requested");
  } else if (!visible) {
    energy_check.skip(hypothesis);
  } else if (!chain) {
    energy_check.skip("chain topology only");
  } else {
    std::set<std::pair<std::int64_t, std::int64_t>> levels;
    for (const auto& w : words) {
      const Configuration c(w, params, topology);
      if (h_max(c) >= per) {
        const EnergyContext ctx(c);
        levels.insert({ctx.h0(), ctx.residue()});
      }
    }
    std::int64_t max_e = 0;
    Rational worst_drift;
    bool any = false;
    for (const auto& [h0, residue] : levels) {
      const EnergyContext ctx(params, topology, h0, residue);
      for (const auto& w : words) {
        const Configuration c(w, params, topology);
        const auto e = energy(c, ctx);
        if (e == 0) continue;
        const auto d = drift_summary(c, ctx, rule);
        max_e = std::max(max_e, e);
        if (!any || d.drift > worst_drift) worst_drift = d.drift;
        any = true;
        energy_check.expect(e <= 3 * params.n() && d.drift <= 0 && d.changing_indices > 0, [&] {
          return "word=" + to_string(w) + " H0=" + std::to_string(h0) +
                 " residue=" + std::to_string(residue) + " E=" + std::to_string(e) +
                 " drift=" + to_string(d.drift) +
                 " changing=" + std::to_string(d.changing_indices);
        });
      }
    }
    energy_check.note(std::to_string(levels.size()) + " contexts, max E = " +
                      std::to_string(max_e) + " (3n = " + std::to_string(3 * params.n()) +
                      "), largest drift = " + (any ? to_string(worst_drift) : "n/a"));
  }
  report.checks.push_back(energy_check.finish());
  return report;
}

VerifyReport recurrence_check(const LineParams& params, const RuleParams& rule,
                              Topology topology, std::size_t cap) {
  const TransitionGraph graph(params, rule, topology, cap);
  const auto classes = closed_classes(graph);
  const auto per = params.per();
  const bool visible = per <= rule.sight();
  const std::string hypothesis = "hypothesis violated: per > sight";
  VerifyReport report{params, rule.sight(), topology};

  std::ostringstream summary;
  summary << classes.size() << " closed classes, sizes";
  for (const auto& cl : classes) summary << ' ' << cl.size();

  if (topology == Topology::kChain) {
    Checker coalesce("nonnegative_coalescence",
                     "from every nonnegative start the only closed class reachable is the "
                     "target Christoffel configuration");
    Checker strip("strip_recurrence",
                  "every closed class lies within -per+1 <= h_min, h_max <= per-1");
    if (!visible) {
      coalesce.skip(hypothesis);
      strip.skip(hypothesis);
    } else {
      const auto target = graph.require_index(target_christoffel(params).word());
      std::vector<State> bad;
      for (const auto& cl : classes) {
        if (cl.size() != 1 || cl.front() != target) bad.insert(bad.end(), cl.begin(), cl.end());
        for (State s : cl) {
          const auto r = height_range(graph.config(s));
          strip.expect(r.min >= -per + 1 && r.max <= per - 1,
                       [&] { return "word=" + to_string(graph.word(s)); });
        }
      }
      const auto reaches_bad = backward_closure(graph, bad);
      for (State s = 0; s < graph.size(); ++s) {
        if (!is_nonnegative(graph.config(s))) continue;
        coalesce.expect(!reaches_bad[s], [&] {
          return "start=" + to_string(graph.word(s)) +
                 " reaches a closed class other than the target";
        });
      }
      coalesce.note(summary.str());
    }
    report.checks = {coalesce.finish(), strip.finish()};
  } else {
    Checker stable("stable_christoffel", "every stable state has thickness per-1");
    Checker recurrent("recurrent_christoffel",
                      "every closed class consists of thickness per-1 states");
    if (!visible) {
      stable.skip(hypothesis);
      recurrent.skip(hypothesis);
    } else {
      for (State s = 0; s < graph.size(); ++s) {
        if (!graph.absorbing(s)) continue;
        stable.expect(is_christoffel(graph.config(s)),
                      [&] { return "word=" + to_string(graph.word(s)); });
      }
      for (const auto& cl : classes) {
        for (State s : cl) {
          recurrent.expect(is_christoffel(graph.config(s)),
                           [&] { return "word=" + to_string(graph.word(s)); });
        }
      }
      recurrent.note(summary.str());
    }
    report.checks = {stable.finish(), recurrent.finish()};
  }
  return report;
}

// ---------------------------------------------------------------------------
// Constructions

Configuration stuck_config(std::int64_t n) {
  require(n >= 2, ErrorCode::kPrecondition, "stuck configuration needs n >= 2");
  std::string text;
  for (std::int64_t k = 0; k < n - 1; ++k) text += "baaba";
  text += "baaab";
  return Configuration(parse_word(text), LineParams(3, 2, n));
}

ImpossibilityPair impossibility_family(std::int64_t s, std::int64_t k) {
  require(s >= 2, ErrorCode::kPrecondition, "impossibility family needs s >= 2");
  require(k >= 2, ErrorCode::kPrecondition, "impossibility family needs k >= 2");
  const auto block = [](std::int64_t as) {
    return std::string(static_cast<std::size_t>(as), 'a') + "b";
  };
  const LineParams params(s + 1, 1, 2 * k);
  std::string c, cp = block(s + 1);
  for (std::int64_t r = 0; r < 2 * k; ++r) c += block(s + 1);
  for (std::int64_t r = 0; r < k - 1; ++r) cp += block(s + 2);
  for (std::int64_t r = 0; r < k - 1; ++r) cp += block(s);
  cp += block(s + 1);
  return {Configuration(parse_word(c), params), Configuration(parse_word(cp), params)};
}

bool local_views_covered(const Configuration& inner, const Configuration& outer,
                         std::int64_t sight) {
  const auto views = [sight](const Configuration& c, bool flippable_only) {
    std::set<std::pair<Word, Word>> out;
    const auto first = first_selectable(c.topology());
    for (std::int64_t i = first; i < first + selectable_count(c); ++i) {
      if (flippable_only && flip_kind(c, i) == FlipKind::kNone) continue;
      auto lw = local_words(c, i, sight);
      out.emplace(std::move(lw.left), std::move(lw.right));
    }
    return out;
  };
  const auto seen = views(outer, false);
  const auto needed = views(inner, true);
  return std::includes(seen.begin(), seen.end(), needed.begin(), needed.end());
}

bool rule_stability_probe(const LocalRule& rule, const Configuration& config) {
  return active_sites(config, rule).empty();
}

void write_edge_list(std::ostream& out, const TransitionGraph& graph) {
  const auto& p = graph.params();
  out << "# flipline transition graph ta=" << p.ta() << " tb=" << p.tb() << " n=" << p.n()
      << " sight=" << graph.sight() << " topology=" << to_string(graph.topology())
      << " states=" << graph.size() << " N=" << graph.selectable() << '\n';
  for (State s = 0; s < graph.size(); ++s) {
    std::map<State, std::int64_t> counts;
    for (State t : graph.successors(s)) ++counts[t];
    for (const auto& [t, k] : counts) {
      out << to_string(graph.word(s)) << ' ' << to_string(graph.word(t)) << ' ' << k << '\n';
    }
  }
}

}  // namespace flipline
