#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <ufact/algebra.hh>
#include <ufact/word.hh>

namespace ufact
{
  enum class expr_kind { empty, epsilon, letter, union_, concat, plus, omega };

  struct expr_node;
  /// Expressions are immutable and shared: the elimination reuses subterms,
  /// so an expression is a DAG even though it denotes a tree.
  using expr = std::shared_ptr<const expr_node>;

  struct expr_node
  {
    expr_kind kind = expr_kind::empty;
    letter a = -1;            ///< letter nodes
    expr left, right;         ///< union/concat use both, plus/omega left
    std::optional<elem> ann;  ///< s_E

    // summaries used to prune parsing; letters >= 64 set every bit
    std::uint64_t first = 0;  ///< letters that can start a word
    std::uint64_t last = 0;   ///< letters that can end a finite word
    std::uint32_t min_len = 0;
    bool nullable = false;
    bool infinite = false;    ///< contains an omega node
  };

  expr e_empty();
  expr e_epsilon();
  expr e_letter(letter a, std::optional<elem> ann = std::nullopt);
  expr e_union(expr l, expr r, std::optional<elem> ann = std::nullopt);
  expr e_concat(expr l, expr r, std::optional<elem> ann = std::nullopt);
  expr e_plus(expr body, std::optional<elem> ann = std::nullopt);
  expr e_omega(expr body, std::optional<elem> ann = std::nullopt);

  /// Copy of e with a different annotation.
  expr with_annotation(const expr& e, std::optional<elem> ann);

  /// Folds unions into a left-associated chain; empty input gives Empty.
  expr union_of(const std::vector<expr>& parts,
                std::optional<elem> ann = std::nullopt);

  std::uint64_t letter_bit(letter a);

  /// Removes Empty by the rules ∅⁺ ⇒ ∅, ∅·F ⇒ ∅, F·∅ ⇒ ∅, ∅∪F ⇒ F, F∪∅ ⇒ F
  /// (and ∅^ω ⇒ ∅).  Shared subterms stay shared.
  expr simplify_empty(const expr& e);

  bool is_empty(const expr& e);

  /// Distinct nodes of the DAG.
  std::size_t dag_size(const expr& e);
  /// Nodes of the unfolded tree, saturating at UINT64_MAX.
  std::uint64_t tree_size(const expr& e);

  /// Calls f on every distinct node once, children before parents.
  void for_each_node(const expr& e,
                     const std::function<void(const expr_node&)>& f);

  /// Maximal chain of unannotated unions below e, left to right.
  std::vector<expr> union_operands(const expr& e);

  /// Text form: `0`, `1` (ε), letters, `(E|E|...)`, `(E.E)`, `(E)+`,
  /// `(E)^w`, each optionally followed by `:{name}`.  Letters that are not a
  /// single plain symbol are quoted as 'x'.
  std::string to_text(const expr& e, const std::vector<std::string>& alphabet,
                      const finite_semigroup* s = nullptr);

  /// Inverse of to_text.  Annotations need s; throws input_error.
  expr parse_expr(const std::string& text,
                  const std::vector<std::string>& alphabet,
                  const finite_semigroup* s = nullptr);

  bool structurally_equal(const expr& a, const expr& b);

  /// Image set φ(𝓛(E)) as a membership vector over S.  For an omega node
  /// this is the image of its body, i.e. of one iteration.
  std::vector<bool> expr_image(const expr& e, const morphism& phi);

  struct good_expr_options
  {
    std::size_t len_bound = 8;
    std::size_t up_u = 3, up_v = 3;  ///< used when E contains omega
  };

  struct good_expr_report
  {
    bool annotations = true;  ///< annotated nodes have image {s_E}
    bool idempotents = true;  ///< plus/omega bodies map to one idempotent
    bool unambiguous = true;  ///< at most one parse per word in the bounds
    std::string detail;
    std::optional<word> witness;
    std::optional<up_word> up_witness;

    bool ok() const { return annotations && idempotents && unambiguous; }
  };

  good_expr_report check_good_expression(
      const expr& e, const morphism& phi,
      const good_expr_options& opt = good_expr_options{});
}
