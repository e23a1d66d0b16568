#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <ufact/word.hh>

namespace ufact
{
  using state = int;

  /// Automaton (Q, Σ, Δ, ι, F, R, <) with a total order on states.
  ///
  /// States are 0..size()-1.  The order is given by integer ranks; only the
  /// relative order matters.  R is the set of Büchi ("repeated") states.
  class ordered_automaton
  {
  public:
    explicit ordered_automaton(std::vector<std::string> alphabet = {});

    state add_state(std::string name, long long rank);
    /// Duplicate transitions are ignored.
    void add_transition(state src, letter a, state dst);
    void set_initial(state q) { initial_ = q; }
    void set_final(state q, bool v = true) { final_[q] = v; }
    void set_buchi(state q, bool v = true) { buchi_[q] = v; }
    void set_rank(state q, long long r) { rank_[q] = r; }

    int size() const { return static_cast<int>(names_.size()); }
    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::string& name(state q) const { return names_[q]; }
    long long rank(state q) const { return rank_[q]; }
    state initial() const { return initial_; }
    bool is_final(state q) const { return final_[q]; }
    bool is_buchi(state q) const { return buchi_[q]; }
    std::vector<state> finals() const;
    std::vector<state> buchi_states() const;

    /// Successors of q on a, sorted.
    const std::vector<state>& succ(state q, letter a) const
    {
      return delta_[q * alphabet_.size() + a];
    }
    /// All transitions (src, letter, dst) sorted lexicographically.
    std::vector<std::tuple<state, letter, state>> transitions() const;
    std::size_t transition_count() const;

    /// States sorted by increasing rank.
    std::vector<state> by_rank() const;
    /// position(q) = number of states of smaller rank.
    std::vector<int> positions() const;

    bool less(state p, state q) const { return rank_[p] < rank_[q]; }

    /// Throws input_error when ranks collide or ι is unset.
    void validate() const;

    letter find_letter(const std::string& a) const;
    state find_state(const std::string& name) const;

    bool is_deterministic() const;
    bool is_complete() const;

    /// Renumbers ranks to 0..n-1 keeping the order.
    void normalize_ranks();

    bool operator==(const ordered_automaton& o) const;

  private:
    std::vector<std::string> alphabet_;
    std::vector<std::string> names_;
    std::vector<long long> rank_;
    std::vector<bool> final_;
    std::vector<bool> buchi_;
    std::vector<std::vector<state>> delta_;
    state initial_ = -1;
  };

  /// Keeps the states lying on some accepting run (finite or Büchi), plus ι.
  /// Also returns old -> new state map (-1 when removed) when asked.
  ordered_automaton reduce(const ordered_automaton& a,
                           std::vector<state>* old_to_new = nullptr);

  /// Adds a fresh final sink f with Q∖{ι} < f < ι; every transition into an
  /// old final state is duplicated towards f and F becomes {f}.
  ordered_automaton weakly_good_to_good(const ordered_automaton& a);

  /// Same automaton with letters renamed to follow `alphabet`; throws
  /// input_error when the two letter sets differ.
  ordered_automaton with_alphabet(const ordered_automaton& a,
                                  const std::vector<std::string>& alphabet);
}
