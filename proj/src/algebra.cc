#include <ufact/algebra.hh>
#include <ufact/errors.hh>

#include <algorithm>
#include <deque>
#include <set>

namespace ufact
{
  finite_semigroup::finite_semigroup(
      std::vector<std::string> names,
      const std::vector<std::vector<long long>>& table)
    : n_(static_cast<int>(table.size())), names_(std::move(names))
  {
    if (n_ == 0)
      throw input_error("a semigroup needs at least one element");
    if (static_cast<int>(names_.size()) != n_)
      throw input_error("element name count does not match the table size");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (static_cast<int>(seen.size()) != n_)
      throw input_error("element names are not distinct");
    table_.resize(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
      {
        if (static_cast<int>(table[i].size()) != n_)
          throw input_error("table row " + std::to_string(i)
                            + " has the wrong length");
        for (int j = 0; j < n_; ++j)
          {
            long long v = table[i][j];
            if (v < 0 || v >= n_)
              throw out_of_range_entry(i, j, v);
            table_[i * n_ + j] = static_cast<elem>(v);
          }
      }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          {
            elem l = product(product(i, j), k);
            elem r = product(i, product(j, k));
            if (l != r)
              throw non_associative(
                  i, j, k,
                  "(" + names_[i] + names_[j] + ")" + names_[k] + " = "
                  + names_[l] + " but " + names_[i] + "(" + names_[j]
                  + names_[k] + ") = " + names_[r]);
          }
  }

  elem
  finite_semigroup::power(elem a, int k) const
  {
    elem r = a;
    for (int i = 1; i < k; ++i)
      r = product(r, a);
    return r;
  }

  std::optional<elem>
  finite_semigroup::find(const std::string& name) const
  {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
      return std::nullopt;
    return static_cast<elem>(it - names_.begin());
  }

  std::vector<std::vector<long long>>
  finite_semigroup::table() const
  {
    std::vector<std::vector<long long>> t(n_, std::vector<long long>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        t[i][j] = product(i, j);
    return t;
  }

  finite_semigroup
  finite_semigroup::restrict_to(const std::vector<elem>& subset) const
  {
    std::vector<elem> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> to_new(n_, -1);
    for (std::size_t i = 0; i < sorted.size(); ++i)
      to_new[sorted[i]] = static_cast<int>(i);
    finite_semigroup r;
    r.n_ = static_cast<int>(sorted.size());
    r.table_.resize(static_cast<std::size_t>(r.n_) * r.n_);
    for (elem a : sorted)
      {
        r.names_.push_back(names_[a]);
        for (elem b : sorted)
          {
            int p = to_new[product(a, b)];
            if (p < 0)
              throw input_error("subset is not closed under the product");
            r.table_[to_new[a] * r.n_ + to_new[b]] = p;
          }
      }
    return r;
  }

  finite_semigroup
  validate_semigroup(const std::vector<std::vector<long long>>& table)
  {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < table.size(); ++i)
      names.push_back("e" + std::to_string(i));
    return finite_semigroup(std::move(names), table);
  }

  morphism::morphism(semigroup_ptr s, std::vector<std::string> alphabet,
                     std::vector<elem> images)
    : s_(std::move(s)), alphabet_(std::move(alphabet)),
      images_(std::move(images))
  {
    if (alphabet_.empty())
      throw input_error("the alphabet is empty");
    if (alphabet_.size() != images_.size())
      throw input_error("every letter needs exactly one image");
    std::set<std::string> seen(alphabet_.begin(), alphabet_.end());
    if (seen.size() != alphabet_.size())
      throw input_error("alphabet letters are not distinct");
    for (elem e : images_)
      if (e < 0 || e >= s_->size())
        throw input_error("letter image out of range");
  }

  letter
  morphism::find_letter(const std::string& name) const
  {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
    if (it == alphabet_.end())
      throw unknown_letter(name);
    return static_cast<letter>(it - alphabet_.begin());
  }

  elem
  morphism::eval(const word& w) const
  {
    return eval(w, 0, w.size());
  }

  elem
  morphism::eval(const word& w, std::size_t from, std::size_t to) const
  {
    elem r = images_[w[from]];
    for (std::size_t i = from + 1; i < to; ++i)
      r = s_->product(r, images_[w[i]]);
    return r;
  }

  elem
  eval_morphism(const morphism& phi, const word& w)
  {
    if (w.empty())
      throw input_error("cannot evaluate the empty word");
    for (letter a : w)
      if (a < 0 || a >= phi.alphabet_size())
        throw unknown_letter(std::to_string(a));
    return phi.eval(w);
  }

  elem
  eval_morphism(const morphism& phi, const std::string& w)
  {
    return eval_morphism(phi, parse_word(w, phi.lookup()));
  }

  bool
  is_idempotent(const finite_semigroup& s, elem e)
  {
    return s.product(e, e) == e;
  }

  std::vector<elem>
  idempotents(const finite_semigroup& s)
  {
    std::vector<elem> out;
    for (elem e = 0; e < s.size(); ++e)
      if (is_idempotent(s, e))
        out.push_back(e);
    return out;
  }

  power_profile_t
  power_profile(const finite_semigroup& s, elem a)
  {
    // powers[i] = a^(i+1); the first repeat fixes the least (k, ell)
    std::vector<elem> powers;
    std::vector<int> first_at(s.size(), -1);
    elem cur = a;
    int i = 0;
    while (first_at[cur] < 0)
      {
        first_at[cur] = i;
        powers.push_back(cur);
        cur = s.product(cur, a);
        ++i;
      }
    power_profile_t p;
    p.k = first_at[cur] + 1;
    p.ell = i - first_at[cur];
    // the unique idempotent of the cycle is a^n, n the multiple of ell in
    // [k, k+ell)
    p.n = ((p.k + p.ell - 1) / p.ell) * p.ell;
    return p;
  }

  std::vector<elem>
  left_ideal(const finite_semigroup& s, elem c)
  {
    std::vector<bool> in(s.size(), false);
    for (elem x = 0; x < s.size(); ++x)
      in[s.product(x, c)] = true;
    std::vector<elem> out;
    for (elem x = 0; x < s.size(); ++x)
      if (in[x])
        out.push_back(x);
    return out;
  }

  std::vector<elem>
  right_ideal(const finite_semigroup& s, elem c)
  {
    std::vector<bool> in(s.size(), false);
    for (elem x = 0; x < s.size(); ++x)
      in[s.product(c, x)] = true;
    std::vector<elem> out;
    for (elem x = 0; x < s.size(); ++x)
      if (in[x])
        out.push_back(x);
    return out;
  }

  bool
  is_group(const finite_semigroup& s)
  {
    auto n = static_cast<std::size_t>(s.size());
    for (elem c = 0; c < s.size(); ++c)
      if (left_ideal(s, c).size() != n || right_ideal(s, c).size() != n)
        return false;
    return true;
  }

  std::optional<elem>
  group_unit(const finite_semigroup& s)
  {
    auto ids = idempotents(s);
    if (ids.size() != 1)
      return std::nullopt;
    elem u = ids[0];
    for (elem x = 0; x < s.size(); ++x)
      if (s.product(u, x) != x || s.product(x, u) != x)
        return std::nullopt;
    for (elem x = 0; x < s.size(); ++x)
      {
        bool has_inverse = false;
        for (elem y = 0; y < s.size() && !has_inverse; ++y)
          has_inverse = s.product(x, y) == u && s.product(y, x) == u;
        if (!has_inverse)
          return std::nullopt;
      }
    return u;
  }

  std::vector<elem>
  generated_subsemigroup(const finite_semigroup& s,
                         const std::vector<elem>& gens)
  {
    std::vector<bool> in(s.size(), false);
    std::deque<elem> todo;
    for (elem g : gens)
      if (!in[g])
        {
          in[g] = true;
          todo.push_back(g);
        }
    // right multiplication by generators suffices
    while (!todo.empty())
      {
        elem x = todo.front();
        todo.pop_front();
        for (elem g : gens)
          {
            elem y = s.product(x, g);
            if (!in[y])
              {
                in[y] = true;
                todo.push_back(y);
              }
          }
      }
    std::vector<elem> out;
    for (elem x = 0; x < s.size(); ++x)
      if (in[x])
        out.push_back(x);
    return out;
  }

  restricted_morphism
  restrict_to_image(const morphism& phi)
  {
    const auto& s = phi.semigroup();
    auto sub = generated_subsemigroup(s, phi.images());
    std::vector<int> to_new(s.size(), -1);
    for (std::size_t i = 0; i < sub.size(); ++i)
      to_new[sub[i]] = static_cast<int>(i);
    std::vector<elem> images;
    for (elem e : phi.images())
      images.push_back(to_new[e]);
    auto rs = std::make_shared<const finite_semigroup>(s.restrict_to(sub));
    return {morphism(rs, phi.alphabet(), std::move(images)), sub};
  }

  namespace
  {
    // Shortlex-least word of ΣΣ₁* per reachable element.
    std::vector<std::optional<word>>
    sigma_sigma1_star(const morphism& phi, const std::vector<bool>& in_sigma1)
    {
      const auto& s = phi.semigroup();
      std::vector<std::optional<word>> best(s.size());
      std::deque<elem> todo;
      for (letter a = 0; a < phi.alphabet_size(); ++a)
        {
          elem x = phi.image(a);
          if (!best[x])
            {
              best[x] = word{a};
              todo.push_back(x);
            }
        }
      while (!todo.empty())
        {
          elem x = todo.front();
          todo.pop_front();
          for (letter a = 0; a < phi.alphabet_size(); ++a)
            {
              if (!in_sigma1[a])
                continue;
              elem y = s.product(x, phi.image(a));
              if (!best[y])
                {
                  word w = *best[x];
                  w.push_back(a);
                  best[y] = std::move(w);
                  todo.push_back(y);
                }
            }
        }
      return best;
    }

    bool
    shortlex_less(const word& a, const word& b)
    {
      if (a.size() != b.size())
        return a.size() < b.size();
      return a < b;
    }
  }

  derived_alphabet_t
  derived_alphabet(const morphism& phi, elem c, side sd)
  {
    const auto& s = phi.semigroup();
    std::vector<bool> in_sigma1(phi.alphabet_size());
    std::optional<letter> c_letter;
    bool any1 = false;
    for (letter a = 0; a < phi.alphabet_size(); ++a)
      {
        in_sigma1[a] = phi.image(a) != c;
        any1 = any1 || in_sigma1[a];
        if (!in_sigma1[a] && !c_letter)
          c_letter = a;
      }
    if (!any1 || !c_letter)
      throw degenerate_split("Σ₁ or Σ₂ is empty for c = " + s.name(c));

    auto best = sigma_sigma1_star(phi, in_sigma1);
    std::vector<std::optional<word>> out(s.size());
    for (elem x = 0; x < s.size(); ++x)
      {
        if (!best[x])
          continue;
        elem b = sd == side::left ? s.product(x, c) : s.product(c, x);
        word w;
        if (sd == side::left)
          {
            w = *best[x];
            w.push_back(*c_letter);
          }
        else
          {
            w.push_back(*c_letter);
            w.insert(w.end(), best[x]->begin(), best[x]->end());
          }
        if (!out[b] || shortlex_less(w, *out[b]))
          out[b] = std::move(w);
      }
    derived_alphabet_t r;
    for (elem b = 0; b < s.size(); ++b)
      if (out[b])
        {
          r.elements.push_back(b);
          r.witnesses.push_back(*out[b]);
        }
    return r;
  }
}
