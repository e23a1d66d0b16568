#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <ufact/algebra.hh>
#include <ufact/automaton.hh>
#include <ufact/word.hh>

namespace testing
{
  using namespace ufact;

  inline word
  w_of(const morphism& phi, const std::string& text)
  {
    return parse_word(text, phi.lookup());
  }

  inline up_word
  up_of(const morphism& phi, const std::string& text)
  {
    return parse_up_word(text, phi.lookup());
  }

  inline elem
  el(const morphism& phi, const std::string& name)
  {
    return phi.semigroup().find(name).value();
  }

  inline std::vector<elem>
  els(const morphism& phi, const std::vector<std::string>& names)
  {
    std::vector<elem> out;
    for (const auto& n : names)
      out.push_back(el(phi, n));
    std::sort(out.begin(), out.end());
    return out;
  }

  inline std::vector<state>
  states_of(const ordered_automaton& a, const std::vector<std::string>& names)
  {
    std::vector<state> out;
    for (const auto& n : names)
      out.push_back(a.find_state(n));
    return out;
  }
}
