#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <ufact/ramsey.hh>
#include <ufact/rexpr.hh>
#include <ufact/runs.hh>

namespace ufact
{
  /// One derivation of w[from, to) by node e.  Unions keep the chosen
  /// operand as their only child, concatenations both operands, plus nodes
  /// one child per iteration.
  struct parse_tree
  {
    expr e;
    std::size_t from = 0, to = 0;
    std::vector<parse_tree> children;
  };

  /// Number of derivations of w, by span dynamic programming.  Saturates at
  /// UINT64_MAX (also used for the infinitely many parses through a
  /// nullable plus body).
  std::uint64_t count_parses(const expr& e, const word& w);

  /// Counts the same derivations by expanding derivative terms left to
  /// right; independent of the span recursion.
  std::uint64_t count_parses_derivative(const expr& e, const word& w);

  /// Throws no_parse or ambiguous_parse unless w has exactly one derivation.
  parse_tree parse_unique(const expr& e, const word& w);

  struct up_parse_count
  {
    up_count total = up_count::zero;
    /// One count per operand of the top-level union.
    std::vector<up_count> branches;
  };

  /// Derivative-based matcher that caches its expansion steps across words;
  /// use one per expression when checking many words.
  class expr_matcher
  {
  public:
    explicit expr_matcher(expr e);
    ~expr_matcher();
    expr_matcher(const expr_matcher&) = delete;
    expr_matcher& operator=(const expr_matcher&) = delete;

    /// Same value as count_parses.
    std::uint64_t count(const word& w);
    /// Same value as count_up_parses.
    up_parse_count count_up(const up_word& w);

  private:
    struct impl;
    std::unique_ptr<impl> impl_;
  };

  /// Counts derivations of u·v^ω in which every omega node iterates
  /// forever.  Plus and omega bodies must not be nullable (input_error).
  up_parse_count count_up_parses(const expr& e, const up_word& w);

  /// Unions collapse, concatenations become binary nodes, plus nodes with
  /// k >= 2 iterations become k-ary nodes.
  fact_tree parse_to_fact_tree(const parse_tree& t, const word& w,
                               const morphism& phi);
}
