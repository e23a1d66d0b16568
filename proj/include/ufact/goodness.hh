#pragma once

#include <optional>
#include <string>
#include <vector>

#include <ufact/algebra.hh>
#include <ufact/automaton.hh>
#include <ufact/runs.hh>

namespace ufact
{
  /// {φ(w) : w ∈ L_{p,X,q}}: nonempty words leading from p to q whose
  /// intermediate states all lie in X.  Sorted.
  std::vector<elem> image_of_restricted_language(const ordered_automaton& a,
                                                 const morphism& phi, state p,
                                                 const std::vector<bool>& x,
                                                 state q);

  /// The same image set with one shortlex-least word per element.
  struct language_image
  {
    std::vector<elem> elements;
    std::vector<word> witnesses;
  };
  language_image restricted_language_image(const ordered_automaton& a,
                                           const morphism& phi, state p,
                                           const std::vector<bool>& x,
                                           state q);

  /// ↓q: states of smaller rank than q.
  std::vector<bool> below(const ordered_automaton& a, state q);

  struct axiom_verdict
  {
    bool pass = true;
    std::string detail;
    std::optional<word> witness;
    std::optional<up_word> up_witness;
  };

  struct state_image
  {
    state q;
    std::vector<elem> image;      ///< φ(L_q)
    std::optional<elem> idempotent; ///< e_q when the image is {e}, e·e = e
    std::optional<word> witness;  ///< offending word of L_q on violation
  };

  struct goodness_report
  {
    axiom_verdict g1, g2, g3, g4;
    std::vector<state_image> images;

    bool weakly_good() const { return g1.pass && g2.pass && g3.pass; }
    bool good() const { return weakly_good() && g4.pass; }
    /// e_q for every state, or -1 where L_q is empty.
    std::vector<elem> idempotent_map() const;
  };

  struct check_bounds
  {
    std::size_t max_len = 8;
    std::size_t up_u = 3;
    std::size_t up_v = 3;
  };

  /// G1: exact finite unambiguity and universality plus bounded checks on
  /// ultimately periodic words.  G2: exact.  G3, G4: structural.
  goodness_report verify_goodness(const ordered_automaton& a,
                                  const morphism& phi,
                                  const check_bounds& bounds = {});

  /// G2 and the G3/G4 structure only; cheap.
  goodness_report verify_structure(const ordered_automaton& a,
                                   const morphism& phi);
}
