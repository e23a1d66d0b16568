#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <ufact/word.hh>

namespace ufact
{
  using elem = int;

  /// A finite semigroup given by its full multiplication table.
  ///
  /// Elements are the indices 0..size()-1; names are only used for
  /// presentation and lookup.
  class finite_semigroup
  {
  public:
    /// Validates the table (square, entries in range, associative) and
    /// throws out_of_range_entry or non_associative otherwise.
    finite_semigroup(std::vector<std::string> names,
                     const std::vector<std::vector<long long>>& table);

    int size() const { return n_; }

    elem product(elem a, elem b) const { return table_[a * n_ + b]; }

    /// a^k for k >= 1.
    elem power(elem a, int k) const;

    const std::string& name(elem a) const { return names_[a]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<elem> find(const std::string& name) const;

    std::vector<std::vector<long long>> table() const;

    bool operator==(const finite_semigroup& o) const
    {
      return n_ == o.n_ && table_ == o.table_ && names_ == o.names_;
    }

    /// The sub-semigroup on a product-closed subset, elements renumbered in
    /// increasing order of their old index.
    finite_semigroup restrict_to(const std::vector<elem>& subset) const;

  private:
    finite_semigroup() = default;
    int n_ = 0;
    std::vector<std::string> names_;
    std::vector<elem> table_;
  };

  using semigroup_ptr = std::shared_ptr<const finite_semigroup>;

  /// Validates a bare table; elements are named e0, e1, ...
  finite_semigroup validate_semigroup(
      const std::vector<std::vector<long long>>& table);

  /// The morphism Σ⁺ → S generated by a letter-to-element map.
  class morphism
  {
  public:
    morphism(semigroup_ptr s, std::vector<std::string> alphabet,
             std::vector<elem> images);

    const finite_semigroup& semigroup() const { return *s_; }
    const semigroup_ptr& shared_semigroup() const { return s_; }
    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<elem>& images() const { return images_; }
    elem image(letter a) const { return images_[a]; }

    letter find_letter(const std::string& name) const;
    letter_lookup lookup() const
    {
      return [this](const std::string& s) { return find_letter(s); };
    }

    elem eval(const word& w) const;
    /// φ of w[from, to) ; requires from < to.
    elem eval(const word& w, std::size_t from, std::size_t to) const;

    bool operator==(const morphism& o) const
    {
      return *s_ == *o.s_ && alphabet_ == o.alphabet_ && images_ == o.images_;
    }

  private:
    semigroup_ptr s_;
    std::vector<std::string> alphabet_;
    std::vector<elem> images_;
  };

  /// Throws input_error on an empty word.
  elem eval_morphism(const morphism& phi, const word& w);
  /// Parses w letter by letter (throws unknown_letter) and evaluates it.
  elem eval_morphism(const morphism& phi, const std::string& w);

  std::vector<elem> idempotents(const finite_semigroup& s);
  bool is_idempotent(const finite_semigroup& s, elem e);

  struct power_profile_t
  {
    int k;
    int ell;
    int n;
    bool operator==(const power_profile_t&) const = default;
  };

  power_profile_t power_profile(const finite_semigroup& s, elem a);

  /// Sc and cS, sorted by index.
  std::vector<elem> left_ideal(const finite_semigroup& s, elem c);
  std::vector<elem> right_ideal(const finite_semigroup& s, elem c);

  /// Ideal test: sS = S = Ss for every s.
  bool is_group(const finite_semigroup& s);
  /// Unit/inverse test: a unique idempotent acting as two-sided unit, and
  /// every element has an inverse.  Returns the unit when S is a group.
  std::optional<elem> group_unit(const finite_semigroup& s);

  std::vector<elem> generated_subsemigroup(const finite_semigroup& s,
                                           const std::vector<elem>& gens);

  /// φ restricted to the sub-semigroup φ(Σ⁺), with the renumbering.
  struct restricted_morphism
  {
    morphism phi;
    std::vector<elem> to_old;  ///< new index -> old index
  };
  restricted_morphism restrict_to_image(const morphism& phi);

  enum class side { left, right };

  struct derived_alphabet_t
  {
    std::vector<elem> elements;  ///< sorted by index
    std::vector<word> witnesses; ///< shortlex-least word per element
  };

  /// B = φ(ΣΣ₁*Σ₂) (left) or φ(Σ₂ΣΣ₁*) (right) where Σ₂ = φ⁻¹(c) ∩ Σ.
  /// Throws degenerate_split when Σ₁ or Σ₂ is empty.
  derived_alphabet_t derived_alphabet(const morphism& phi, elem c, side sd);
}
