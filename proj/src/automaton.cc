#include <ufact/automaton.hh>
#include <ufact/errors.hh>
#include <ufact/graph.hh>

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace ufact
{
  ordered_automaton::ordered_automaton(std::vector<std::string> alphabet)
    : alphabet_(std::move(alphabet))
  {
  }

  state
  ordered_automaton::add_state(std::string name, long long rank)
  {
    names_.push_back(std::move(name));
    rank_.push_back(rank);
    final_.push_back(false);
    buchi_.push_back(false);
    delta_.resize(delta_.size() + alphabet_.size());
    return size() - 1;
  }

  void
  ordered_automaton::add_transition(state src, letter a, state dst)
  {
    auto& v = delta_[src * alphabet_.size() + a];
    auto it = std::lower_bound(v.begin(), v.end(), dst);
    if (it == v.end() || *it != dst)
      v.insert(it, dst);
  }

  std::vector<state>
  ordered_automaton::finals() const
  {
    std::vector<state> out;
    for (state q = 0; q < size(); ++q)
      if (final_[q])
        out.push_back(q);
    return out;
  }

  std::vector<state>
  ordered_automaton::buchi_states() const
  {
    std::vector<state> out;
    for (state q = 0; q < size(); ++q)
      if (buchi_[q])
        out.push_back(q);
    return out;
  }

  std::vector<std::tuple<state, letter, state>>
  ordered_automaton::transitions() const
  {
    std::vector<std::tuple<state, letter, state>> out;
    for (state q = 0; q < size(); ++q)
      for (letter a = 0; a < alphabet_size(); ++a)
        for (state r : succ(q, a))
          out.emplace_back(q, a, r);
    return out;
  }

  std::size_t
  ordered_automaton::transition_count() const
  {
    std::size_t n = 0;
    for (const auto& v : delta_)
      n += v.size();
    return n;
  }

  std::vector<state>
  ordered_automaton::by_rank() const
  {
    std::vector<state> v(size());
    std::iota(v.begin(), v.end(), 0);
    std::stable_sort(v.begin(), v.end(),
                     [&](state p, state q) { return rank_[p] < rank_[q]; });
    return v;
  }

  std::vector<int>
  ordered_automaton::positions() const
  {
    auto order = by_rank();
    std::vector<int> pos(size());
    for (std::size_t i = 0; i < order.size(); ++i)
      pos[order[i]] = static_cast<int>(i);
    return pos;
  }

  void
  ordered_automaton::validate() const
  {
    if (initial_ < 0 || initial_ >= size())
      throw input_error("automaton has no initial state");
    std::set<long long> ranks(rank_.begin(), rank_.end());
    if (static_cast<int>(ranks.size()) != size())
      throw input_error("state ranks are not pairwise distinct");
    std::set<std::string> names(names_.begin(), names_.end());
    if (static_cast<int>(names.size()) != size())
      throw input_error("state names are not pairwise distinct");
  }

  letter
  ordered_automaton::find_letter(const std::string& a) const
  {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), a);
    if (it == alphabet_.end())
      throw unknown_letter(a);
    return static_cast<letter>(it - alphabet_.begin());
  }

  state
  ordered_automaton::find_state(const std::string& name) const
  {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
      throw input_error("unknown state '" + name + "'");
    return static_cast<state>(it - names_.begin());
  }

  bool
  ordered_automaton::is_deterministic() const
  {
    for (const auto& v : delta_)
      if (v.size() > 1)
        return false;
    return true;
  }

  bool
  ordered_automaton::is_complete() const
  {
    for (const auto& v : delta_)
      if (v.empty())
        return false;
    return true;
  }

  void
  ordered_automaton::normalize_ranks()
  {
    auto pos = positions();
    for (state q = 0; q < size(); ++q)
      rank_[q] = pos[q];
  }

  bool
  ordered_automaton::operator==(const ordered_automaton& o) const
  {
    return alphabet_ == o.alphabet_ && names_ == o.names_
      && rank_ == o.rank_ && final_ == o.final_ && buchi_ == o.buchi_
      && delta_ == o.delta_ && initial_ == o.initial_;
  }

  ordered_automaton
  reduce(const ordered_automaton& a, std::vector<state>* old_to_new)
  {
    int n = a.size();
    digraph g(n);
    for (auto [p, x, q] : a.transitions())
      g.add_edge(p, q);
    g.dedupe();

    auto fwd = g.reachable_from({a.initial()});
    auto rev = g.reversed();
    std::vector<int> targets = a.finals();
    // Büchi states on a cycle
    auto scc = tarjan_scc(g);
    for (state q = 0; q < n; ++q)
      if (a.is_buchi(q) && scc.nontrivial[scc.comp[q]])
        targets.push_back(q);
    auto bwd = rev.reachable_from(targets);

    std::vector<state> keep;
    for (state q = 0; q < n; ++q)
      if (q == a.initial() || (fwd[q] && bwd[q]))
        keep.push_back(q);
    std::vector<state> map(n, -1);
    ordered_automaton out(a.alphabet());
    for (state q : keep)
      {
        map[q] = out.add_state(a.name(q), a.rank(q));
        out.set_final(map[q], a.is_final(q));
        out.set_buchi(map[q], a.is_buchi(q));
      }
    out.set_initial(map[a.initial()]);
    for (auto [p, x, q] : a.transitions())
      if (map[p] >= 0 && map[q] >= 0)
        out.add_transition(map[p], x, map[q]);
    if (old_to_new)
      *old_to_new = std::move(map);
    return out;
  }

  ordered_automaton
  weakly_good_to_good(const ordered_automaton& a)
  {
    ordered_automaton r(a.alphabet());
    auto pos = a.positions();
    int n = a.size();
    // positions: Q∖{ι} keep their order at 0..n-2, f at n-1, ι at n
    for (state q = 0; q < n; ++q)
      {
        long long rk = q == a.initial() ? n : pos[q];
        if (q != a.initial() && pos[q] > pos[a.initial()])
          --rk;
        r.add_state(a.name(q), rk);
        r.set_buchi(q, a.is_buchi(q));
      }
    std::string fname = "f";
    auto taken = [&](const std::string& nm) {
      for (state q = 0; q < n; ++q)
        if (a.name(q) == nm)
          return true;
      return false;
    };
    while (taken(fname))
      fname += "'";
    state f = r.add_state(fname, n - 1);
    r.set_final(f);
    r.set_initial(a.initial());
    for (auto [p, x, q] : a.transitions())
      {
        r.add_transition(p, x, q);
        if (a.is_final(q))
          r.add_transition(p, x, f);
      }
    return r;
  }

  ordered_automaton
  with_alphabet(const ordered_automaton& a,
                const std::vector<std::string>& alphabet)
  {
    std::set<std::string> x(a.alphabet().begin(), a.alphabet().end());
    std::set<std::string> y(alphabet.begin(), alphabet.end());
    if (x != y || x.size() != alphabet.size())
      throw input_error("automaton and morphism alphabets differ");
    ordered_automaton r(alphabet);
    for (state q = 0; q < a.size(); ++q)
      {
        r.add_state(a.name(q), a.rank(q));
        r.set_final(q, a.is_final(q));
        r.set_buchi(q, a.is_buchi(q));
      }
    r.set_initial(a.initial());
    for (auto [p, l, q] : a.transitions())
      r.add_transition(p, r.find_letter(a.alphabet()[l]), q);
    return r;
  }
}
