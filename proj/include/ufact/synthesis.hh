#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <ufact/algebra.hh>
#include <ufact/automaton.hh>

namespace ufact
{
  enum class case_tag { group, single_image, left_ideal, right_ideal };

  std::string to_string(case_tag t);

  struct case_decision
  {
    case_tag tag;
    elem c = -1;                 ///< for the ideal cases
    std::vector<letter> sigma1;  ///< letters not mapped to c
    std::vector<letter> sigma2;  ///< letters mapped to c
  };

  /// Expects φ already restricted to φ(Σ⁺) (see restrict_to_image).
  case_decision choose_case(const morphism& phi);

  /// What a state of a synthesized automaton stands for.
  struct state_role
  {
    enum kind_t { base, outer, middle, triple, initial, fresh_final };
    kind_t kind = base;
    state q = -1;  ///< state of 𝒜₂ (-1 for ⊥)
    elem s = -1;   ///< semigroup element (-1 for ⊥); base group: the element
    state p = -1;  ///< state of 𝒜₁ (-1 for ⊥); single image: the counter
  };

  /// One level of the construction.
  struct build_level
  {
    morphism phi;  ///< restricted to φ(Σ⁺)
    case_decision decision;
    std::optional<power_profile_t> profile;  ///< single-image case
    std::vector<elem> derived;               ///< B, ideal cases
    std::vector<word> derived_witnesses;

    ordered_automaton weak;  ///< reduced weakly-good automaton
    ordered_automaton good;  ///< weak plus a fresh final sink (last state)
    std::vector<state_role> roles;  ///< indexed by good's states

    std::vector<int> weak_heights;  ///< optimized, indexed by weak's states
    std::vector<int> heights;       ///< optimized, indexed by good's states
    int h1 = 0, h2 = 0;             ///< heights of the children (ideal cases)

    std::shared_ptr<const build_level> child1;  ///< 𝒜₁ over Σ₁
    std::shared_ptr<const build_level> child2;  ///< 𝒜₂ over B
    std::vector<letter> child1_letters;  ///< 𝒜₁ letter -> letter of Σ
    std::vector<elem> child2_letters;    ///< 𝒜₂ letter -> element of B

    int weak_height() const;
    int height() const;
  };

  using build_ptr = std::shared_ptr<const build_level>;

  /// Memo table shared along one build.
  class build_cache
  {
  public:
    build_ptr find(const std::string& key) const;
    void insert(const std::string& key, build_ptr b);
    std::size_t size() const { return table_.size(); }

  private:
    std::map<std::string, build_ptr> table_;
  };

  /// Lemma-2 style automaton: Q = S ⊎ {ι}.  Throws not_a_group.
  ordered_automaton build_base_group(const morphism& phi);
  /// Counter automaton over the powers of the single image.  Throws
  /// multiple_images.
  ordered_automaton build_base_single_image(const morphism& phi);

  /// Ideal constructions on a restricted φ; children are built through
  /// build_good.  Return the full level (weak automaton reduced).  Throw
  /// case_inapplicable when the ideal is not proper or Σ₁ is empty.
  build_ptr build_inductive_left(const morphism& phi, elem c,
                                 build_cache* cache = nullptr);
  build_ptr build_inductive_right(const morphism& phi, elem c,
                                  build_cache* cache = nullptr);

  /// The whole recursive construction.
  build_ptr build_good_report(const morphism& phi,
                              build_cache* cache = nullptr);
  /// Convenience: the good automaton over φ's alphabet.
  ordered_automaton build_good(const morphism& phi);
}
