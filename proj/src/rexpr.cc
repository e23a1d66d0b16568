#include <ufact/rexpr.hh>
#include <ufact/errors.hh>
#include <ufact/parsing.hh>

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace ufact
{
  namespace
  {
    constexpr std::uint32_t no_len = std::numeric_limits<std::uint32_t>::max();

    std::uint32_t
    add_len(std::uint32_t a, std::uint32_t b)
    {
      if (a == no_len || b == no_len)
        return no_len;
      std::uint64_t s = std::uint64_t(a) + b;
      return s >= no_len ? no_len - 1 : static_cast<std::uint32_t>(s);
    }

    expr
    make(expr_node n)
    {
      return std::make_shared<const expr_node>(std::move(n));
    }
  }

  std::uint64_t
  letter_bit(letter a)
  {
    return a >= 0 && a < 64 ? std::uint64_t(1) << a : ~std::uint64_t(0);
  }

  expr
  e_empty()
  {
    static const expr e = [] {
      expr_node n;
      n.kind = expr_kind::empty;
      n.min_len = no_len;
      return make(std::move(n));
    }();
    return e;
  }

  expr
  e_epsilon()
  {
    static const expr e = [] {
      expr_node n;
      n.kind = expr_kind::epsilon;
      n.nullable = true;
      return make(std::move(n));
    }();
    return e;
  }

  expr
  e_letter(letter a, std::optional<elem> ann)
  {
    expr_node n;
    n.kind = expr_kind::letter;
    n.a = a;
    n.ann = ann;
    n.first = n.last = letter_bit(a);
    n.min_len = 1;
    return make(std::move(n));
  }

  expr
  e_union(expr l, expr r, std::optional<elem> ann)
  {
    expr_node n;
    n.kind = expr_kind::union_;
    n.first = l->first | r->first;
    n.last = l->last | r->last;
    n.min_len = std::min(l->min_len, r->min_len);
    n.nullable = l->nullable || r->nullable;
    n.infinite = l->infinite || r->infinite;
    n.left = std::move(l);
    n.right = std::move(r);
    n.ann = ann;
    return make(std::move(n));
  }

  expr
  e_concat(expr l, expr r, std::optional<elem> ann)
  {
    expr_node n;
    n.kind = expr_kind::concat;
    n.first = l->first | (l->nullable ? r->first : 0);
    n.last = r->last | (r->nullable ? l->last : 0);
    n.min_len = add_len(l->min_len, r->min_len);
    n.nullable = l->nullable && r->nullable;
    n.infinite = l->infinite || r->infinite;
    n.left = std::move(l);
    n.right = std::move(r);
    n.ann = ann;
    return make(std::move(n));
  }

  expr
  e_plus(expr body, std::optional<elem> ann)
  {
    expr_node n;
    n.kind = expr_kind::plus;
    n.first = body->first;
    n.last = body->last;
    n.min_len = body->min_len;
    n.nullable = body->nullable;
    n.infinite = body->infinite;
    n.left = std::move(body);
    n.ann = ann;
    return make(std::move(n));
  }

  expr
  e_omega(expr body, std::optional<elem> ann)
  {
    expr_node n;
    n.kind = expr_kind::omega;
    n.first = body->first;
    n.min_len = no_len;
    n.infinite = true;
    n.left = std::move(body);
    n.ann = ann;
    return make(std::move(n));
  }

  expr
  with_annotation(const expr& e, std::optional<elem> ann)
  {
    if (e->ann == ann)
      return e;
    expr_node n = *e;
    n.ann = ann;
    return make(std::move(n));
  }

  expr
  union_of(const std::vector<expr>& parts, std::optional<elem> ann)
  {
    if (parts.empty())
      return e_empty();
    expr acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
      acc = e_union(acc, parts[i]);
    return ann ? with_annotation(acc, ann) : acc;
  }

  bool
  is_empty(const expr& e)
  {
    return e->kind == expr_kind::empty;
  }

  expr
  simplify_empty(const expr& e)
  {
    std::unordered_map<const expr_node*, expr> memo;
    std::function<expr(const expr&)> go = [&](const expr& x) -> expr {
      auto it = memo.find(x.get());
      if (it != memo.end())
        return it->second;
      expr out = x;
      switch (x->kind)
        {
        case expr_kind::empty:
        case expr_kind::epsilon:
        case expr_kind::letter:
          break;
        case expr_kind::union_:
          {
            expr l = go(x->left), r = go(x->right);
            if (is_empty(l))
              out = with_annotation(r, x->ann ? x->ann : r->ann);
            else if (is_empty(r))
              out = with_annotation(l, x->ann ? x->ann : l->ann);
            else if (l != x->left || r != x->right)
              out = e_union(l, r, x->ann);
            break;
          }
        case expr_kind::concat:
          {
            expr l = go(x->left), r = go(x->right);
            if (is_empty(l) || is_empty(r))
              out = e_empty();
            else if (l != x->left || r != x->right)
              out = e_concat(l, r, x->ann);
            break;
          }
        case expr_kind::plus:
        case expr_kind::omega:
          {
            expr b = go(x->left);
            if (is_empty(b))
              out = e_empty();
            else if (b != x->left)
              out = x->kind == expr_kind::plus ? e_plus(b, x->ann)
                                               : e_omega(b, x->ann);
            break;
          }
        }
      memo.emplace(x.get(), out);
      return out;
    };
    return go(e);
  }

  void
  for_each_node(const expr& e, const std::function<void(const expr_node&)>& f)
  {
    // iterative post-order; expressions from large automata are deep
    std::unordered_set<const expr_node*> seen;
    std::vector<std::pair<const expr_node*, bool>> stack{{e.get(), false}};
    while (!stack.empty())
      {
        auto [n, expanded] = stack.back();
        stack.pop_back();
        if (expanded)
          {
            f(*n);
            continue;
          }
        if (!seen.insert(n).second)
          continue;
        stack.push_back({n, true});
        if (n->right && !seen.count(n->right.get()))
          stack.push_back({n->right.get(), false});
        if (n->left && !seen.count(n->left.get()))
          stack.push_back({n->left.get(), false});
      }
  }

  std::size_t
  dag_size(const expr& e)
  {
    std::size_t n = 0;
    for_each_node(e, [&](const expr_node&) { ++n; });
    return n;
  }

  std::uint64_t
  tree_size(const expr& e)
  {
    constexpr auto top = std::numeric_limits<std::uint64_t>::max();
    std::unordered_map<const expr_node*, std::uint64_t> size;
    auto sat = [&](std::uint64_t a, std::uint64_t b) {
      return a > top - b ? top : a + b;
    };
    for_each_node(e, [&](const expr_node& n) {
      std::uint64_t s = 1;
      if (n.left)
        s = sat(s, size[n.left.get()]);
      if (n.right)
        s = sat(s, size[n.right.get()]);
      size[&n] = s;
    });
    return size[e.get()];
  }

  std::vector<expr>
  union_operands(const expr& e)
  {
    std::vector<expr> out;
    expr x = e;
    std::vector<expr> rights;
    // the chain is left-associated: walk down the left spine
    while (x->kind == expr_kind::union_ && (x == e || !x->ann))
      {
        rights.push_back(x->right);
        x = x->left;
      }
    out.push_back(x);
    out.insert(out.end(), rights.rbegin(), rights.rend());
    return out;
  }

  namespace
  {
    const std::string reserved = "()|.+^:{}'01";

    bool
    plain_symbol(const std::string& a)
    {
      auto sc = utf8_scalars(a);
      if (sc.size() != 1)
        return false;
      if (a.size() == 1
          && (reserved.find(a[0]) != std::string::npos
              || std::isspace(static_cast<unsigned char>(a[0]))))
        return false;
      return true;
    }

    std::string
    letter_text(const std::string& a)
    {
      if (plain_symbol(a))
        return a;
      std::string out = "'";
      for (char c : a)
        {
          if (c == '\'')
            out += '\'';
          out += c;
        }
      return out + "'";
    }

    void
    write_text(const expr& e, const std::vector<std::string>& alphabet,
               const finite_semigroup* s, std::string& out)
    {
      switch (e->kind)
        {
        case expr_kind::empty:
          out += '0';
          break;
        case expr_kind::epsilon:
          out += '1';
          break;
        case expr_kind::letter:
          out += letter_text(alphabet.at(e->a));
          break;
        case expr_kind::union_:
          {
            out += '(';
            auto ops = union_operands(e);
            for (std::size_t i = 0; i < ops.size(); ++i)
              {
                if (i)
                  out += '|';
                write_text(ops[i], alphabet, s, out);
              }
            out += ')';
            break;
          }
        case expr_kind::concat:
          out += '(';
          write_text(e->left, alphabet, s, out);
          out += '.';
          write_text(e->right, alphabet, s, out);
          out += ')';
          break;
        case expr_kind::plus:
        case expr_kind::omega:
          out += '(';
          write_text(e->left, alphabet, s, out);
          out += e->kind == expr_kind::plus ? ")+" : ")^w";
          break;
        }
      if (e->ann)
        out += ":{" + (s ? s->name(*e->ann) : std::to_string(*e->ann)) + "}";
    }

    class expr_reader
    {
    public:
      expr_reader(const std::string& text,
                  const std::vector<std::string>& alphabet,
                  const finite_semigroup* s)
        : text_(text), alphabet_(alphabet), s_(s)
      {
      }

      expr
      read()
      {
        expr e = expression();
        skip();
        if (pos_ != text_.size())
          fail("trailing input");
        return e;
      }

    private:
      [[noreturn]] void
      fail(const std::string& what) const
      {
        throw input_error("expression: " + what + " at offset "
                          + std::to_string(pos_));
      }

      void
      skip()
      {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      }

      bool
      eat(char c)
      {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c)
          {
            ++pos_;
            return true;
          }
        return false;
      }

      letter
      lookup(const std::string& name)
      {
        for (std::size_t i = 0; i < alphabet_.size(); ++i)
          if (alphabet_[i] == name)
            return static_cast<letter>(i);
        throw unknown_letter(name);
      }

      std::optional<elem>
      annotation()
      {
        skip();
        if (!eat(':'))
          return std::nullopt;
        if (!eat('{'))
          fail("expected '{'");
        auto end = text_.find('}', pos_);
        if (end == std::string::npos)
          fail("unterminated annotation");
        std::string name = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        if (!s_)
          fail("annotation without a semigroup");
        auto e = s_->find(name);
        if (!e)
          throw input_error("expression: unknown element '" + name + "'");
        return e;
      }

      expr
      expression()
      {
        skip();
        if (pos_ >= text_.size())
          fail("unexpected end");
        char c = text_[pos_];
        expr e;
        if (c == '0' || c == '1')
          {
            ++pos_;
            e = c == '0' ? e_empty() : e_epsilon();
          }
        else if (c == '\'')
          {
            ++pos_;
            std::string name;
            for (;;)
              {
                if (pos_ >= text_.size())
                  fail("unterminated quote");
                if (text_[pos_] == '\'')
                  {
                    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'')
                      {
                        name += '\'';
                        pos_ += 2;
                        continue;
                      }
                    ++pos_;
                    break;
                  }
                name += text_[pos_++];
              }
            e = e_letter(lookup(name));
          }
        else if (c == '(')
          {
            ++pos_;
            std::vector<expr> parts{expression()};
            char op = 0;
            for (;;)
              {
                skip();
                if (pos_ < text_.size()
                    && (text_[pos_] == '|' || text_[pos_] == '.'))
                  {
                    if (op && op != text_[pos_])
                      fail("mixed operators");
                    op = text_[pos_++];
                    parts.push_back(expression());
                    continue;
                  }
                break;
              }
            if (!eat(')'))
              fail("expected ')'");
            if (op == '|')
              e = union_of(parts);
            else if (op == '.')
              {
                e = parts[0];
                for (std::size_t i = 1; i < parts.size(); ++i)
                  e = e_concat(e, parts[i]);
              }
            else
              e = parts[0];
            skip();
            if (eat('+'))
              {
                e = e_plus(e);
              }
            else if (pos_ + 1 < text_.size() && text_[pos_] == '^'
                     && text_[pos_ + 1] == 'w')
              {
                pos_ += 2;
                e = e_omega(e);
              }
          }
        else if (reserved.find(c) != std::string::npos
                 || std::isspace(static_cast<unsigned char>(c)))
          {
            fail(std::string("unexpected '") + c + "'");
          }
        else
          {
            // one UTF-8 scalar
            std::size_t len = 1;
            unsigned char b = static_cast<unsigned char>(c);
            if (b >= 0xF0)
              len = 4;
            else if (b >= 0xE0)
              len = 3;
            else if (b >= 0xC0)
              len = 2;
            if (pos_ + len > text_.size())
              fail("truncated UTF-8");
            std::string name = text_.substr(pos_, len);
            pos_ += len;
            e = e_letter(lookup(name));
          }
        if (auto ann = annotation())
          e = with_annotation(e, ann);
        return e;
      }

      const std::string& text_;
      const std::vector<std::string>& alphabet_;
      const finite_semigroup* s_;
      std::size_t pos_ = 0;
    };
  }

  std::string
  to_text(const expr& e, const std::vector<std::string>& alphabet,
          const finite_semigroup* s)
  {
    std::string out;
    write_text(e, alphabet, s, out);
    return out;
  }

  expr
  parse_expr(const std::string& text, const std::vector<std::string>& alphabet,
             const finite_semigroup* s)
  {
    return expr_reader(text, alphabet, s).read();
  }

  bool
  structurally_equal(const expr& a, const expr& b)
  {
    if (a == b)
      return true;
    if (a->kind != b->kind || a->ann != b->ann || a->a != b->a)
      return false;
    if (a->kind == expr_kind::union_)
      {
        auto x = union_operands(a), y = union_operands(b);
        if (x.size() != y.size())
          return false;
        for (std::size_t i = 0; i < x.size(); ++i)
          if (!structurally_equal(x[i], y[i]))
            return false;
        return true;
      }
    if (a->left && !structurally_equal(a->left, b->left))
      return false;
    if (a->right && !structurally_equal(a->right, b->right))
      return false;
    return true;
  }

  namespace
  {
    using image_set = std::vector<bool>;

    image_set
    product_set(const finite_semigroup& s, const image_set& x,
                const image_set& y)
    {
      image_set out(s.size());
      for (elem a = 0; a < s.size(); ++a)
        if (x[a])
          for (elem b = 0; b < s.size(); ++b)
            if (y[b])
              out[s.product(a, b)] = true;
      return out;
    }

    image_set
    closure(const finite_semigroup& s, const image_set& x)
    {
      image_set acc = x;
      for (;;)
        {
          image_set next = product_set(s, acc, x);
          bool grew = false;
          for (elem a = 0; a < s.size(); ++a)
            if (next[a] && !acc[a])
              acc[a] = grew = true;
          if (!grew)
            return acc;
        }
    }

    std::unordered_map<const expr_node*, image_set>
    all_images(const expr& e, const morphism& phi)
    {
      const auto& s = phi.semigroup();
      std::unordered_map<const expr_node*, image_set> img;
      // ε has no image in S; concatenation treats it as a unit
      std::unordered_map<const expr_node*, bool> eps;
      for_each_node(e, [&](const expr_node& n) {
        image_set out(s.size());
        bool has_eps = false;
        switch (n.kind)
          {
          case expr_kind::empty:
            break;
          case expr_kind::epsilon:
            has_eps = true;
            break;
          case expr_kind::letter:
            out[phi.image(n.a)] = true;
            break;
          case expr_kind::union_:
            {
              const auto& l = img[n.left.get()];
              const auto& r = img[n.right.get()];
              for (elem a = 0; a < s.size(); ++a)
                out[a] = l[a] || r[a];
              has_eps = eps[n.left.get()] || eps[n.right.get()];
              break;
            }
          case expr_kind::concat:
            {
              const auto& l = img[n.left.get()];
              const auto& r = img[n.right.get()];
              bool le = eps[n.left.get()], re = eps[n.right.get()];
              out = product_set(s, l, r);
              for (elem a = 0; a < s.size(); ++a)
                out[a] = out[a] || (le && r[a]) || (re && l[a]);
              has_eps = le && re;
              break;
            }
          case expr_kind::plus:
            out = closure(s, img[n.left.get()]);
            has_eps = eps[n.left.get()];
            break;
          case expr_kind::omega:
            out = img[n.left.get()];
            break;
          }
        img[&n] = std::move(out);
        eps[&n] = has_eps;
      });
      return img;
    }

    std::string
    set_text(const finite_semigroup& s, const image_set& x)
    {
      std::string out = "{";
      bool first = true;
      for (elem a = 0; a < s.size(); ++a)
        if (x[a])
          {
            out += (first ? "" : ",") + s.name(a);
            first = false;
          }
      return out + "}";
    }
  }

  std::vector<bool>
  expr_image(const expr& e, const morphism& phi)
  {
    return all_images(e, phi)[e.get()];
  }

  good_expr_report
  check_good_expression(const expr& e, const morphism& phi,
                        const good_expr_options& opt)
  {
    const auto& s = phi.semigroup();
    good_expr_report r;
    auto img = all_images(e, phi);
    auto singleton = [&](const image_set& x) -> std::optional<elem> {
      std::optional<elem> only;
      for (elem a = 0; a < s.size(); ++a)
        if (x[a])
          {
            if (only)
              return std::nullopt;
            only = a;
          }
      return only;
    };
    for_each_node(e, [&](const expr_node& n) {
      const auto& x = img[&n];
      if (n.ann && r.annotations)
        for (elem a = 0; a < s.size(); ++a)
          if (x[a] && a != *n.ann)
            {
              r.annotations = false;
              r.detail = "node annotated " + s.name(*n.ann) + " has image "
                + set_text(s, x);
              break;
            }
      if ((n.kind == expr_kind::plus || n.kind == expr_kind::omega)
          && r.idempotents)
        {
          const auto& b = img[n.left.get()];
          auto one = singleton(b);
          bool empty = std::none_of(b.begin(), b.end(), [](bool v) { return v; });
          if (!empty && (!one || !is_idempotent(s, *one)))
            {
              r.idempotents = false;
              std::string what = n.kind == expr_kind::plus ? "plus" : "omega";
              std::string d = what + " body has image " + set_text(s, b);
              auto cl = n.kind == expr_kind::plus ? img[&n] : b;
              if (!singleton(cl))
                d += ", closure " + set_text(s, cl) + " not a singleton";
              if (one && !is_idempotent(s, *one))
                d += ", " + s.name(*one) + " not idempotent";
              if (r.detail.empty())
                r.detail = d;
            }
        }
    });
    if (!e->infinite)
      {
        bool stop = false;
        for_each_word(phi.alphabet_size(), 1, opt.len_bound,
                      [&](const word& w) {
                        if (stop)
                          return;
                        auto c = count_parses(e, w);
                        if (c > 1)
                          {
                            r.unambiguous = false;
                            r.witness = w;
                            if (r.detail.empty())
                              r.detail = "word "
                                + format_word(w, phi.alphabet()) + " has "
                                + std::to_string(c) + " parses";
                            stop = true;
                          }
                      });
      }
    else
      {
        expr_matcher m(e);
        for (const auto& w :
             all_up_words(phi.alphabet_size(), opt.up_u, opt.up_v))
          if (m.count_up(w).total == up_count::many)
            {
              r.unambiguous = false;
              r.up_witness = w;
              if (r.detail.empty())
                r.detail = "word " + format_up_word(w, phi.alphabet())
                  + " has several parses";
              break;
            }
      }
    return r;
  }
}
