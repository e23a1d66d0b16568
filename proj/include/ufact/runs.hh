#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <ufact/automaton.hh>
#include <ufact/word.hh>

namespace ufact
{
  /// A run q0 q1 q2 ... where q_i is the state after i letters.
  ///
  /// Finite runs use `stem` only (|w|+1 states).  Runs on u·v^ω are lassos:
  /// the states are stem followed by cycle repeated forever, and the cycle
  /// length is a multiple of |v|.
  struct run_trace
  {
    std::vector<state> stem;
    std::vector<state> cycle;
    bool accepted = false;

    bool is_lasso() const { return !cycle.empty(); }
    /// q_i for any position i.
    state at(std::size_t i) const
    {
      return i < stem.size() ? stem[i]
                             : cycle[(i - stem.size()) % cycle.size()];
    }
    bool operator==(const run_trace&) const = default;
  };

  /// Every accepting run on w, ordered lexicographically by state sequence.
  std::vector<run_trace> accepting_runs_finite(const ordered_automaton& a,
                                               const word& w);
  /// Number of accepting runs, by dynamic programming (saturates at 2^63).
  std::uint64_t count_runs_finite(const ordered_automaton& a, const word& w);
  bool accepts_finite(const ordered_automaton& a, const word& w);

  enum class up_mode { exists, unique };
  enum class up_count { zero, one, many };

  struct up_verdict
  {
    up_count count;
    std::optional<run_trace> run;  ///< one accepting lasso when count != zero
  };

  /// Exists mode only separates zero from nonzero (count is `one` whenever a
  /// run exists).  Unique mode is exact through the self-product with a
  /// divergence bit.
  up_verdict accepting_runs_up(const ordered_automaton& a, const up_word& w,
                               up_mode mode);

  struct finite_check
  {
    bool ok;
    std::optional<word> witness;  ///< shortlex-least counterexample
  };

  finite_check check_unambiguous_finite(const ordered_automaton& a);
  finite_check check_universal_finite(const ordered_automaton& a);

  struct up_check
  {
    bool ok;
    std::optional<up_word> witness;
    up_count found = up_count::one;  ///< count observed on the witness
  };

  /// Every u·v^ω with |u| <= max_u and 1 <= |v| <= max_v has an accepting
  /// run; with `unique` it must have exactly one.
  up_check check_universal_up_bounded(const ordered_automaton& a,
                                      std::size_t max_u, std::size_t max_v,
                                      bool unique = true);
}
