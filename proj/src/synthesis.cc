#include <ufact/synthesis.hh>
#include <ufact/errors.hh>

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <tuple>

namespace ufact
{
  std::string
  to_string(case_tag t)
  {
    switch (t)
      {
      case case_tag::group:
        return "group";
      case case_tag::single_image:
        return "single_image";
      case case_tag::left_ideal:
        return "left_ideal";
      case case_tag::right_ideal:
        return "right_ideal";
      }
    return "?";
  }

  int
  build_level::weak_height() const
  {
    return *std::max_element(weak_heights.begin(), weak_heights.end());
  }

  int
  build_level::height() const
  {
    return *std::max_element(heights.begin(), heights.end());
  }

  build_ptr
  build_cache::find(const std::string& key) const
  {
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : it->second;
  }

  void
  build_cache::insert(const std::string& key, build_ptr b)
  {
    table_.emplace(key, std::move(b));
  }

  namespace
  {
    std::vector<elem>
    distinct_images(const morphism& phi)
    {
      auto v = phi.images();
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    }

    std::string
    fresh_name(const std::vector<std::string>& taken, std::string base)
    {
      while (std::find(taken.begin(), taken.end(), base) != taken.end())
        base += "'";
      return base;
    }

    // Splits Σ according to c.
    case_decision
    split_on(const morphism& phi, case_tag tag, elem c)
    {
      case_decision d{tag, c, {}, {}};
      for (letter a = 0; a < phi.alphabet_size(); ++a)
        (phi.image(a) == c ? d.sigma2 : d.sigma1).push_back(a);
      return d;
    }

    std::string
    cache_key(const morphism& phi)
    {
      std::ostringstream os;
      for (const auto& a : phi.alphabet())
        os << a << '\x1f';
      os << '\x1e';
      for (const auto& n : phi.semigroup().names())
        os << n << '\x1f';
      os << '\x1e';
      const auto& s = phi.semigroup();
      for (elem i = 0; i < s.size(); ++i)
        for (elem j = 0; j < s.size(); ++j)
          os << s.product(i, j) << ',';
      os << '\x1e';
      for (elem e : phi.images())
        os << e << ',';
      return os.str();
    }

    std::vector<int>
    bijection_heights(const ordered_automaton& a)
    {
      auto pos = a.positions();
      for (auto& p : pos)
        ++p;
      return pos;
    }

    // Lazily explores the states reachable from the initial one.  Keys
    // identify states; `order` gives the sort key used for ranks.
    using key_t = std::tuple<int, int, int, int>;

    struct assembled
    {
      ordered_automaton aut;
      std::vector<key_t> keys;  // indexed by state
    };

    template <class Succ, class Order, class Name, class Final, class Buchi>
    assembled
    explore(const std::vector<std::string>& alphabet, key_t init, Succ succ,
            Order order, Name name, Final is_final, Buchi is_buchi)
    {
      std::map<key_t, int> id;
      std::vector<key_t> keys{init};
      id[init] = 0;
      std::vector<std::tuple<int, letter, int>> edges;
      std::deque<int> todo{0};
      while (!todo.empty())
        {
          int v = todo.front();
          todo.pop_front();
          key_t k = keys[v];
          succ(k, [&](letter a, key_t t) {
            auto [it, fresh] = id.emplace(t, static_cast<int>(keys.size()));
            if (fresh)
              {
                keys.push_back(t);
                todo.push_back(it->second);
              }
            edges.emplace_back(v, a, it->second);
          });
        }
      // ranks from the order keys
      std::vector<int> idx(keys.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = static_cast<int>(i);
      std::sort(idx.begin(), idx.end(), [&](int x, int y) {
        return order(keys[x]) < order(keys[y]);
      });
      std::vector<long long> rank(keys.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        rank[idx[i]] = static_cast<long long>(i);
      assembled out{ordered_automaton(alphabet), keys};
      // an outer state named after a nested triple can clash with a triple
      std::set<std::string> used;
      for (std::size_t v = 0; v < keys.size(); ++v)
        {
          std::string n = name(keys[v]);
          while (!used.insert(n).second)
            n += "'";
          state q = out.aut.add_state(n, rank[v]);
          out.aut.set_final(q, is_final(keys[v]));
          out.aut.set_buchi(q, is_buchi(keys[v]));
        }
      out.aut.set_initial(0);
      for (auto [p, a, q] : edges)
        out.aut.add_transition(p, a, q);
      return out;
    }

    // Completes a level whose weakly-good automaton (unreduced) and roles
    // are known.
    void
    finish_level(build_level& lvl, const ordered_automaton& raw,
                 const std::vector<state_role>& raw_roles,
                 const std::vector<int>& raw_heights)
    {
      std::vector<state> map;
      lvl.weak = reduce(raw, &map);
      lvl.roles.assign(lvl.weak.size(), {});
      lvl.weak_heights.assign(lvl.weak.size(), 0);
      for (std::size_t q = 0; q < map.size(); ++q)
        if (map[q] >= 0)
          {
            lvl.roles[map[q]] = raw_roles[q];
            lvl.weak_heights[map[q]] = raw_heights[q];
          }
      auto good = weakly_good_to_good(lvl.weak);
      std::vector<state_role> roles = lvl.roles;
      state_role fr;
      fr.kind = state_role::fresh_final;
      roles.push_back(fr);
      std::vector<int> heights = lvl.weak_heights;
      int top = lvl.weak_heights[lvl.weak.initial()];
      heights.push_back(top);
      heights[good.initial()] = top + 1;
      // states that were useful only as finals lose their purpose
      lvl.good = reduce(good, &map);
      lvl.roles.assign(lvl.good.size(), {});
      lvl.heights.assign(lvl.good.size(), 0);
      for (std::size_t q = 0; q < map.size(); ++q)
        if (map[q] >= 0)
          {
            lvl.roles[map[q]] = roles[q];
            lvl.heights[map[q]] = heights[q];
          }
    }

    std::string
    triple_name(const std::string& q, const std::string& s,
                const std::string& p)
    {
      return "(" + q + "," + s + "," + p + ")";
    }

    std::shared_ptr<build_level>
    new_level(const morphism& phi, case_decision d)
    {
      auto lvl = std::make_shared<build_level>(build_level{
          phi, std::move(d), std::nullopt, {}, {}, ordered_automaton(),
          ordered_automaton(), {}, {}, {}, 0, 0, nullptr, nullptr, {}, {}});
      return lvl;
    }

    build_ptr build_rec(const morphism& phi, build_cache& cache);

    // Builds 𝒜₁ and 𝒜₂ for an ideal case and checks the induction measure.
    void
    build_children(build_level& lvl, side sd, build_cache& cache)
    {
      const auto& phi = lvl.phi;
      const auto& s = phi.semigroup();
      elem c = lvl.decision.c;
      auto da = derived_alphabet(phi, c, sd);
      lvl.derived = da.elements;
      lvl.derived_witnesses = da.witnesses;

      std::vector<std::string> names1;
      std::vector<elem> images1;
      for (letter a : lvl.decision.sigma1)
        {
          names1.push_back(phi.alphabet()[a]);
          images1.push_back(phi.image(a));
        }
      lvl.child1_letters = lvl.decision.sigma1;
      morphism phi1(phi.shared_semigroup(), names1, images1);

      std::vector<std::string> names2;
      for (elem b : da.elements)
        names2.push_back(s.name(b));
      lvl.child2_letters = da.elements;
      morphism psi(phi.shared_semigroup(), names2, da.elements);

      auto measure = [](const morphism& m) {
        return std::make_pair(m.semigroup().size(),
                              static_cast<int>(distinct_images(m).size()));
      };
      auto here = measure(phi);
      lvl.child1 = build_rec(phi1, cache);
      lvl.child2 = build_rec(psi, cache);
      if (!(measure(lvl.child1->phi) < here)
          || !(measure(lvl.child2->phi) < here))
        throw error("induction measure did not decrease");
      lvl.h1 = lvl.child1->height();
      lvl.h2 = lvl.child2->height();
    }

    void
    assemble_left(build_level& lvl)
    {
      const auto& phi = lvl.phi;
      const auto& s = phi.semigroup();
      const auto& a1 = lvl.child1->good;
      const auto& a2 = lvl.child2->good;
      const auto& h1 = lvl.child1->heights;
      const auto& h2 = lvl.child2->heights;
      elem c = lvl.decision.c;
      state i1 = a1.initial(), i2 = a2.initial();
      auto pos1 = a1.positions(), pos2 = a2.positions();
      std::vector<int> sigma1_letter(phi.alphabet_size(), -1);
      for (std::size_t i = 0; i < lvl.child1_letters.size(); ++i)
        sigma1_letter[lvl.child1_letters[i]] = static_cast<int>(i);
      std::vector<int> b_letter(s.size(), -1);
      for (std::size_t j = 0; j < lvl.child2_letters.size(); ++j)
        b_letter[lvl.child2_letters[j]] = static_cast<int>(j);

      // keys: (0, q, -1, -1) for q ∈ Q₂, (1, q, s, p) for triples
      auto succ = [&](key_t k, auto emit) {
        auto [kind, q, x, p] = k;
        if (kind == 0)
          {
            for (letter a = 0; a < phi.alphabet_size(); ++a)
              emit(a, key_t{1, q, phi.image(a), i1});
            return;
          }
        for (letter a = 0; a < phi.alphabet_size(); ++a)
          {
            elem y = s.product(x, phi.image(a));
            if (sigma1_letter[a] >= 0)
              {
                for (state p2 : a1.succ(p, sigma1_letter[a]))
                  emit(a, key_t{1, q, y, p2});
              }
            else if (a1.is_final(p) || p == i1)
              {
                int b = b_letter[s.product(x, c)];
                if (b >= 0)
                  for (state q2 : a2.succ(q, b))
                    emit(a, key_t{0, q2, -1, -1});
              }
          }
      };
      auto order = [&](key_t k) {
        auto [kind, q, x, p] = k;
        if (kind == 0)
          return std::make_tuple(1, pos2[q], 0, 0);
        return std::make_tuple(0, pos1[p], pos2[q], x);
      };
      auto name = [&](key_t k) {
        auto [kind, q, x, p] = k;
        if (kind == 0)
          return a2.name(q);
        return triple_name(a2.name(q), s.name(x), a1.name(p));
      };
      auto outer_ok = [&](state q) { return a2.is_final(q) || q == i2; };
      auto is_final = [&](key_t k) {
        auto [kind, q, x, p] = k;
        if (kind == 0)
          return a2.is_final(q);
        return outer_ok(q) && (a1.is_final(p) || p == i1);
      };
      auto is_buchi = [&](key_t k) {
        auto [kind, q, x, p] = k;
        if (kind == 0)
          return a2.is_buchi(q);
        return outer_ok(q) && a1.is_buchi(p);
      };
      auto as = explore(phi.alphabet(), key_t{0, i2, -1, -1}, succ, order,
                        name, is_final, is_buchi);
      int H1 = lvl.h1;
      std::vector<state_role> roles;
      std::vector<int> heights;
      for (auto [kind, q, x, p] : as.keys)
        {
          state_role r;
          r.q = q;
          if (kind == 0)
            {
              r.kind = state_role::outer;
              heights.push_back(H1 + h2[q]);
            }
          else
            {
              r.kind = state_role::triple;
              r.s = x;
              r.p = p;
              heights.push_back(h1[p]);
            }
          roles.push_back(r);
        }
      finish_level(lvl, as.aut, roles, heights);
    }

    void
    assemble_right(build_level& lvl)
    {
      const auto& phi = lvl.phi;
      const auto& s = phi.semigroup();
      const auto& a1 = lvl.child1->good;
      const auto& a2 = lvl.child2->good;
      const auto& h1 = lvl.child1->heights;
      const auto& h2 = lvl.child2->heights;
      elem c = lvl.decision.c;
      state i1 = a1.initial(), i2 = a2.initial();
      auto pos1 = a1.positions(), pos2 = a2.positions();
      std::vector<int> sigma1_letter(phi.alphabet_size(), -1);
      for (std::size_t i = 0; i < lvl.child1_letters.size(); ++i)
        sigma1_letter[lvl.child1_letters[i]] = static_cast<int>(i);
      std::vector<int> b_letter(s.size(), -1);
      for (std::size_t j = 0; j < lvl.child2_letters.size(); ++j)
        b_letter[lvl.child2_letters[j]] = static_cast<int>(j);

      // kinds: 0 = (q,c,⊥), 1 = triple (q may be -1), 2 = (q,⊥,⊥), 3 = ι
      auto a2_succ = [&](state q, elem b, auto f) {
        int l = b_letter[b];
        if (l >= 0)
          for (state q2 : a2.succ(q, l))
            f(q2);
      };
      auto succ = [&](key_t k, auto emit) {
        auto [kind, q, x, p] = k;
        for (letter a = 0; a < phi.alphabet_size(); ++a)
          {
            elem fa = phi.image(a);
            switch (kind)
              {
              case 3:
                emit(a, key_t{1, -1, fa, i1});
                emit(a, key_t{2, i2, -1, -1});
                break;
              case 2:
                if (sigma1_letter[a] < 0)
                  emit(a, key_t{0, q, -1, -1});
                break;
              case 0:
                {
                  elem cy = s.product(c, fa);
                  emit(a, key_t{1, q, cy, i1});
                  a2_succ(q, cy,
                          [&](state q2) { emit(a, key_t{2, q2, -1, -1}); });
                  break;
                }
              case 1:
                {
                  if (sigma1_letter[a] < 0)
                    break;
                  elem y = s.product(x, fa);
                  for (state p2 : a1.succ(p, sigma1_letter[a]))
                    {
                      if (!a1.is_final(p2))
                        emit(a, key_t{1, q, y, p2});
                      else if (q < 0)
                        emit(a, key_t{2, i2, -1, -1});
                      else
                        a2_succ(q, y, [&](state q2) {
                          emit(a, key_t{2, q2, -1, -1});
                        });
                    }
                  break;
                }
              }
          }
      };
      auto order = [&](key_t k) {
        auto [kind, q, x, p] = k;
        switch (kind)
          {
          case 0:
            return std::make_tuple(0, pos2[q], 0, 0);
          case 1:
            return std::make_tuple(1, pos1[p], q < 0 ? -1 : pos2[q], x);
          case 2:
            return std::make_tuple(2, pos2[q], 0, 0);
          default:
            return std::make_tuple(3, 0, 0, 0);
          }
      };
      const std::string bot = "⊥";
      auto name = [&](key_t k) {
        auto [kind, q, x, p] = k;
        switch (kind)
          {
          case 0:
            return triple_name(a2.name(q), s.name(c), bot);
          case 1:
            return triple_name(q < 0 ? bot : a2.name(q), s.name(x),
                               a1.name(p));
          case 2:
            return triple_name(a2.name(q), bot, bot);
          default:
            return triple_name(bot, bot, bot);
          }
      };
      auto is_final = [&](key_t k) {
        auto [kind, q, x, p] = k;
        return (kind == 0 || kind == 2) && (a2.is_final(q) || q == i2);
      };
      auto is_buchi = [&](key_t k) {
        auto [kind, q, x, p] = k;
        if (kind == 2)
          return a2.is_buchi(q);
        if (kind == 1)
          return (q < 0 || q == i2 || a2.is_final(q)) && a1.is_buchi(p);
        return false;
      };
      auto as = explore(phi.alphabet(), key_t{3, -1, -1, -1}, succ, order,
                        name, is_final, is_buchi);
      int H1 = lvl.h1, H2 = lvl.h2;
      std::vector<state_role> roles;
      std::vector<int> heights;
      for (auto [kind, q, x, p] : as.keys)
        {
          state_role r;
          r.q = q;
          switch (kind)
            {
            case 0:
              r.kind = state_role::middle;
              r.s = c;
              heights.push_back(1);
              break;
            case 1:
              r.kind = state_role::triple;
              r.s = x;
              r.p = p;
              heights.push_back(1 + h1[p]);
              break;
            case 2:
              r.kind = state_role::outer;
              heights.push_back(1 + H1 + h2[q]);
              break;
            default:
              r.kind = state_role::initial;
              heights.push_back(H1 + H2 + 2);
            }
          roles.push_back(r);
        }
      finish_level(lvl, as.aut, roles, heights);
    }

    build_ptr
    build_level_for(const morphism& phi, const case_decision& d,
                    build_cache& cache)
    {
      auto lvl = new_level(phi, d);
      switch (d.tag)
        {
        case case_tag::single_image:
          {
            auto raw = build_base_single_image(phi);
            lvl->profile = power_profile(phi.semigroup(), phi.image(0));
            std::vector<state_role> roles(raw.size());
            for (state q = 0; q < raw.size(); ++q)
              {
                roles[q].kind = q == raw.initial() ? state_role::initial
                                                   : state_role::base;
                roles[q].p = q;
              }
            finish_level(*lvl, raw, roles, bijection_heights(raw));
            break;
          }
        case case_tag::group:
          {
            auto raw = build_base_group(phi);
            std::vector<state_role> roles(raw.size());
            for (state q = 0; q < raw.size(); ++q)
              {
                roles[q].kind = q == raw.initial() ? state_role::initial
                                                   : state_role::base;
                roles[q].s = q == raw.initial() ? -1 : q;
              }
            finish_level(*lvl, raw, roles, bijection_heights(raw));
            break;
          }
        case case_tag::left_ideal:
          build_children(*lvl, side::left, cache);
          assemble_left(*lvl);
          break;
        case case_tag::right_ideal:
          build_children(*lvl, side::right, cache);
          assemble_right(*lvl);
          break;
        }
      return lvl;
    }

    build_ptr
    build_rec(const morphism& phi, build_cache& cache)
    {
      auto r = restrict_to_image(phi);
      auto key = cache_key(r.phi);
      if (auto hit = cache.find(key))
        return hit;
      auto lvl = build_level_for(r.phi, choose_case(r.phi), cache);
      cache.insert(key, lvl);
      return lvl;
    }

    void
    require_restricted(const morphism& phi)
    {
      if (generated_subsemigroup(phi.semigroup(), phi.images()).size()
          != static_cast<std::size_t>(phi.semigroup().size()))
        throw case_inapplicable("morphism is not onto its semigroup; "
                                "restrict it first");
    }
  }

  case_decision
  choose_case(const morphism& phi)
  {
    const auto& s = phi.semigroup();
    auto imgs = distinct_images(phi);
    if (imgs.size() == 1)
      return split_on(phi, case_tag::single_image, imgs[0]);
    auto best = [&](auto ideal) {
      std::optional<elem> pick;
      std::size_t best_size = s.size();
      for (elem c : imgs)
        {
          auto sz = ideal(s, c).size();
          if (sz < best_size)
            {
              best_size = sz;
              pick = c;
            }
        }
      return pick;
    };
    if (auto c = best(left_ideal))
      return split_on(phi, case_tag::left_ideal, *c);
    if (auto c = best(right_ideal))
      return split_on(phi, case_tag::right_ideal, *c);
    return split_on(phi, case_tag::group, -1);
  }

  ordered_automaton
  build_base_group(const morphism& phi)
  {
    const auto& s = phi.semigroup();
    require_restricted(phi);
    if (!is_group(s))
      throw not_a_group("image semigroup is not a group");
    ordered_automaton a(phi.alphabet());
    for (elem x = 0; x < s.size(); ++x)
      {
        a.add_state(s.name(x), x);
        a.set_final(x);
        a.set_buchi(x);
      }
    state i = a.add_state(fresh_name(s.names(), "ι"), s.size());
    a.set_initial(i);
    for (letter l = 0; l < phi.alphabet_size(); ++l)
      {
        a.add_transition(i, l, phi.image(l));
        for (elem x = 0; x < s.size(); ++x)
          a.add_transition(x, l, s.product(x, phi.image(l)));
      }
    return a;
  }

  ordered_automaton
  build_base_single_image(const morphism& phi)
  {
    auto imgs = distinct_images(phi);
    if (imgs.size() != 1)
      throw multiple_images(std::to_string(imgs.size())
                            + " distinct letter images");
    auto pp = power_profile(phi.semigroup(), imgs[0]);
    int top = pp.k + pp.n - 1;
    ordered_automaton a(phi.alphabet());
    for (int i = 0; i <= top; ++i)
      {
        // ι = 0 is maximal, the others in index order below it
        a.add_state(std::to_string(i), i == 0 ? top + 1 : i);
        a.set_final(i);
        a.set_buchi(i);
      }
    a.set_initial(0);
    for (int i = 0; i <= top; ++i)
      for (letter l = 0; l < phi.alphabet_size(); ++l)
        a.add_transition(i, l, i < top ? i + 1 : pp.k);
    return a;
  }

  build_ptr
  build_inductive_left(const morphism& phi, elem c, build_cache* cache)
  {
    require_restricted(phi);
    const auto& s = phi.semigroup();
    auto d = split_on(phi, case_tag::left_ideal, c);
    if (d.sigma1.empty() || d.sigma2.empty()
        || left_ideal(s, c).size() == static_cast<std::size_t>(s.size()))
      throw case_inapplicable("Sc is not a proper ideal or Σ₁ is empty");
    build_cache local;
    return build_level_for(phi, d, cache ? *cache : local);
  }

  build_ptr
  build_inductive_right(const morphism& phi, elem c, build_cache* cache)
  {
    require_restricted(phi);
    const auto& s = phi.semigroup();
    auto d = split_on(phi, case_tag::right_ideal, c);
    if (d.sigma1.empty() || d.sigma2.empty()
        || right_ideal(s, c).size() == static_cast<std::size_t>(s.size()))
      throw case_inapplicable("cS is not a proper ideal or Σ₁ is empty");
    build_cache local;
    return build_level_for(phi, d, cache ? *cache : local);
  }

  build_ptr
  build_good_report(const morphism& phi, build_cache* cache)
  {
    build_cache local;
    return build_rec(phi, cache ? *cache : local);
  }

  ordered_automaton
  build_good(const morphism& phi)
  {
    return build_good_report(phi)->good;
  }
}
