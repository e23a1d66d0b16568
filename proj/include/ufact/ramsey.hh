#pragma once

#include <optional>
#include <string>
#include <vector>

#include <ufact/algebra.hh>
#include <ufact/automaton.hh>
#include <ufact/synthesis.hh>
#include <ufact/word.hh>

namespace ufact
{
  /// Monotone map from states to levels 1..H.
  struct height_assignment
  {
    std::vector<int> h;  ///< indexed by state

    int height() const;
  };

  /// The rank bijection onto 1..|Q|.
  height_assignment default_heights(const ordered_automaton& a);

  /// Heights recorded by the construction for its good automaton.  Throws
  /// missing_build_report when report is null or was built for another
  /// automaton.
  height_assignment optimized_heights(const build_level* report,
                                      const ordered_automaton& a);

  /// Levels σ(i) for positions i = 0, 1, ...  Finite words have |w|+1
  /// levels in `stem`; on u·v^ω the levels are stem then cycle forever.
  struct split
  {
    std::vector<int> stem;
    std::vector<int> cycle;

    bool is_lasso() const { return !cycle.empty(); }
    int at(std::size_t i) const
    {
      return i < stem.size() ? stem[i]
                             : cycle[(i - stem.size()) % cycle.size()];
    }
    int height() const;
    bool operator==(const split&) const = default;
  };

  /// σ(i) = h(q_i) along the accepting run.  Throws no_accepting_run.
  split split_word(const ordered_automaton& a, const height_assignment& h,
                   const word& w);
  split split_word(const ordered_automaton& a, const height_assignment& h,
                   const up_word& w);

  struct ramsey_verdict
  {
    bool ramsey = true;
    std::size_t i = 0, j = 0;  ///< offending equivalent pair
    std::string detail;
  };

  /// Every class of i ~ j (equal level, nothing higher in between) maps all
  /// its gaps w(i,j] to one idempotent.
  ramsey_verdict verify_ramsey(const split& s, const morphism& phi,
                               const word& w);
  /// Checked on the stem plus `unrollings` copies of the cycle.
  ramsey_verdict verify_ramsey(const split& s, const morphism& phi,
                               const up_word& w, std::size_t unrollings = 2);

  /// Simon factorization tree.  Leaves carry a letter; every node carries
  /// φ of its yield.
  struct fact_tree
  {
    letter a = -1;  ///< leaves only
    elem label = -1;
    std::vector<fact_tree> children;

    bool is_leaf() const { return children.empty(); }
    /// Leaves have height 0.
    int height() const;
    word yield() const;
    bool operator==(const fact_tree&) const = default;
  };

  fact_tree fact_leaf(letter a, const morphism& phi);
  fact_tree fact_node(std::vector<fact_tree> children, const morphism& phi);

  /// Level-recursive tree: the highest level in an interval cuts it; runs of
  /// equivalent cuts become one idempotent node, the rest is combed into
  /// binary nodes.  Throws not_ramsey.
  fact_tree tree_from_split(const word& w, const split& s, const morphism& phi);

  struct tree_verdict
  {
    bool ok = true;
    std::string detail;
    std::vector<std::size_t> path;  ///< child indices to the offending node
  };

  tree_verdict verify_fact_tree(const fact_tree& t, const morphism& phi,
                                const word& w);
}
