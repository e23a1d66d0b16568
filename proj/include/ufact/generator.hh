#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <ufact/algebra.hh>
#include <ufact/automaton.hh>
#include <ufact/word.hh>

namespace ufact
{
  using transformation = std::vector<int>;  ///< x ↦ f[x] on {0..m-1}

  /// The semigroup generated by gens under (f·g)[x] = f[g[x]], with letters
  /// a, b, c, ... sent to the generators.  Elements are named by their image
  /// strings and numbered in breadth-first order of discovery.  Throws
  /// size_overflow beyond `cap` elements.
  morphism transformation_morphism(const std::vector<transformation>& gens,
                                   std::size_t cap = 64);

  /// `gens` uniformly random self-maps of a `points`-element set.
  morphism generate_morphism(int points, int gens, std::uint64_t seed,
                             std::size_t cap = 64);

  using rng = std::mt19937_64;

  /// Length uniform in [min_len, max_len], letters uniform.
  word random_word(rng& g, int alphabet_size, std::size_t min_len,
                   std::size_t max_len);
  up_word random_up_word(rng& g, int alphabet_size, std::size_t max_prefix,
                         std::size_t max_period);

  /// States q0..q{n-1} with distinct random ranks, initial q0, each
  /// transition present with probability `density`, finals and Büchi
  /// states with probability 1/2.
  ordered_automaton random_automaton(rng& g, int states, int alphabet_size,
                                     double density);
}
