#pragma once

#include <string>
#include <vector>

#include <ufact/algebra.hh>
#include <ufact/automaton.hh>

namespace ufact::fixtures
{
  /// {α, β} with xy = x; a ↦ α, b ↦ β.
  morphism ra2();
  /// {α, β, αα, αβ, βα, ββ} with xyz = xy; a ↦ α, b ↦ β.
  morphism psi6();
  /// {s, s^2, s^3, s^4} with s^5 = s^3; a ↦ s, b ↦ s^2.
  morphism pow4();
  /// pow4's semigroup with both letters sent to s.
  morphism pow4_single();
  /// (ℤ/2ℤ)²; a ↦ (1,0), b ↦ (0,1).
  morphism klein();
  /// ℤ/3ℤ with a ↦ g.
  morphism z3();
  /// Σ^{≤k} over {a, b} with words of length k right absorbing.
  morphism bounded_words(int k);

  /// The four named bundles: ra2, psi6, pow4, klein.
  std::vector<std::string> names();
  morphism by_name(const std::string& name);

  /// Hand-built good automaton for ra2 (states n_b < n_a < f < ι).
  ordered_automaton ra2_hand_automaton();
  /// Hand-built automaton for psi6 with the two primed copies.
  ordered_automaton psi6_hand_automaton();
  /// psi6_hand_automaton with n_aa and n'_aa merged.
  ordered_automaton psi6_hand_automaton_merged();
}
