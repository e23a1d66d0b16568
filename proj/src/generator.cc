#include <ufact/generator.hh>
#include <ufact/errors.hh>

#include <algorithm>
#include <map>
#include <numeric>

namespace ufact
{
  namespace
  {
    std::string
    image_name(const transformation& f)
    {
      std::string s;
      bool wide = f.size() > 10;
      for (std::size_t i = 0; i < f.size(); ++i)
        {
          if (wide && i)
            s += ',';
          s += std::to_string(f[i]);
        }
      return s;
    }

    transformation
    compose(const transformation& f, const transformation& g)
    {
      transformation h(g.size());
      for (std::size_t x = 0; x < g.size(); ++x)
        h[x] = f[g[x]];
      return h;
    }
  }

  morphism
  transformation_morphism(const std::vector<transformation>& gens,
                          std::size_t cap)
  {
    if (gens.empty() || gens.size() > 26)
      throw input_error("need between 1 and 26 generators");
    const std::size_t m = gens[0].size();
    for (const auto& f : gens)
      {
        if (f.size() != m || m == 0)
          throw input_error("generators act on sets of different sizes");
        for (int y : f)
          if (y < 0 || static_cast<std::size_t>(y) >= m)
            throw input_error("generator image out of range");
      }
    std::vector<transformation> elems;
    std::map<transformation, elem> index;
    auto intern = [&](const transformation& f) {
      auto [it, fresh] = index.emplace(f, static_cast<elem>(elems.size()));
      if (fresh)
        {
          if (elems.size() == cap)
            throw size_overflow("closure exceeds " + std::to_string(cap)
                                + " elements");
          elems.push_back(f);
        }
      return it->second;
    };
    std::vector<elem> images;
    for (const auto& f : gens)
      images.push_back(intern(f));
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (const auto& g : gens)
        intern(compose(elems[i], g));

    const std::size_t n = elems.size();
    std::vector<std::vector<long long>> table(n, std::vector<long long>(n));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
      {
        names.push_back(image_name(elems[i]));
        for (std::size_t j = 0; j < n; ++j)
          table[i][j] = index.at(compose(elems[i], elems[j]));
      }
    std::vector<std::string> alphabet;
    for (std::size_t k = 0; k < gens.size(); ++k)
      alphabet.push_back(std::string(1, static_cast<char>('a' + k)));
    auto s = std::make_shared<const finite_semigroup>(std::move(names), table);
    return morphism(s, std::move(alphabet), std::move(images));
  }

  morphism
  generate_morphism(int points, int gens, std::uint64_t seed, std::size_t cap)
  {
    if (points < 1 || gens < 1)
      throw input_error("need at least one point and one generator");
    rng g(seed);
    std::uniform_int_distribution<int> pick(0, points - 1);
    std::vector<transformation> fs(gens, transformation(points));
    for (auto& f : fs)
      for (auto& y : f)
        y = pick(g);
    return transformation_morphism(fs, cap);
  }

  word
  random_word(rng& g, int alphabet_size, std::size_t min_len,
              std::size_t max_len)
  {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<letter> pick(0, alphabet_size - 1);
    word w(len(g));
    for (auto& x : w)
      x = pick(g);
    return w;
  }

  up_word
  random_up_word(rng& g, int alphabet_size, std::size_t max_prefix,
                 std::size_t max_period)
  {
    up_word w;
    w.prefix = random_word(g, alphabet_size, 0, max_prefix);
    w.period = random_word(g, alphabet_size, 1, max_period);
    return w;
  }

  ordered_automaton
  random_automaton(rng& g, int states, int alphabet_size, double density)
  {
    std::vector<std::string> alphabet;
    for (int k = 0; k < alphabet_size; ++k)
      alphabet.push_back(std::string(1, static_cast<char>('a' + k)));
    ordered_automaton a(alphabet);
    std::vector<long long> ranks(states);
    std::iota(ranks.begin(), ranks.end(), 0);
    std::shuffle(ranks.begin(), ranks.end(), g);
    std::bernoulli_distribution coin(0.5), edge(density);
    for (int q = 0; q < states; ++q)
      {
        a.add_state("q" + std::to_string(q), ranks[q]);
        a.set_final(q, coin(g));
        a.set_buchi(q, coin(g));
      }
    a.set_initial(0);
    for (int p = 0; p < states; ++p)
      for (letter l = 0; l < alphabet_size; ++l)
        for (int q = 0; q < states; ++q)
          if (edge(g))
            a.add_transition(p, l, q);
    return a;
  }
}
