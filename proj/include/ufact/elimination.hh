#pragma once

#include <map>
#include <tuple>
#include <vector>

#include <ufact/algebra.hh>
#include <ufact/automaton.hh>
#include <ufact/rexpr.hh>

namespace ufact
{
  /// F^s_{p,X,q} for X the k lowest-ranked states, computed on demand by
  /// the plain recursion on k and memoized.  Cubic in |Q| per element; the
  /// reference for eliminate_all.
  class elim_table
  {
  public:
    /// Requires a reduced automaton satisfying G2; throws not_good or
    /// not_reduced.
    elim_table(const ordered_automaton& a, const morphism& phi);

    /// Entry with X = the k lowest states; Empty when the language is.
    expr entry(state p, int k, state q, elem s);
    /// Entry with X = ↓r.
    expr below_entry(state p, state r, elem s);

    std::size_t memo_size() const { return memo_.size(); }
    const ordered_automaton& automaton() const { return a_; }

  private:
    const ordered_automaton& a_;
    const morphism& phi_;
    std::vector<state> order_;
    std::vector<int> pos_;
    std::vector<elem> idem_;
    std::map<std::tuple<state, int, state, elem>, expr> memo_;
  };

  elim_table eliminate(const ordered_automaton& a, const morphism& phi);

  /// One top-level term u·(loop)^ω of the ω-expression: runs whose largest
  /// state visited infinitely often is r, with prefix image s.
  struct omega_branch
  {
    state r;
    elem s;
    expr prefix;
    expr loop;  ///< F^{e_r}_{r,↓r,r}
  };

  struct elimination_result
  {
    std::vector<expr> finite;  ///< F_s per element; Empty when φ⁻¹(s) = ∅
    std::vector<omega_branch> branches;
    expr omega;                ///< union of the branches
  };

  /// Eliminates the inner states in increasing rank order, keeping only
  /// nonempty labels.  Throws not_good or not_reduced.
  elimination_result eliminate_all(const ordered_automaton& a,
                                   const morphism& phi);

  /// F_s = F^s_{ι,X,f} with X = Q ∖ {ι, f}.
  std::vector<expr> finite_expressions(const ordered_automaton& a,
                                       const morphism& phi);
  expr omega_expression(const ordered_automaton& a, const morphism& phi);
}
