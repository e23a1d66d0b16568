#include <doctest.h>

#include <ufact/elimination.hh>
#include <ufact/errors.hh>
#include <ufact/fixtures.hh>
#include <ufact/generator.hh>
#include <ufact/goodness.hh>
#include <ufact/parsing.hh>
#include <ufact/ramsey.hh>
#include <ufact/rexpr.hh>
#include <ufact/synthesis.hh>

#include "helpers.hh"
#include "oracles.hh"

using namespace ufact;
using namespace testing;

namespace
{
  // Random expression over k letters; no ε below a plus.
  expr
  random_expr(rng& g, int k, int depth, bool eps_ok = true)
  {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 2);
    switch (pick(g))
      {
      case 0:
        return eps_ok ? e_epsilon()
                      : e_letter(std::uniform_int_distribution<int>(
                            0, k - 1)(g));
      case 1:
      case 2:
        return e_letter(std::uniform_int_distribution<int>(0, k - 1)(g));
      case 3:
        return e_union(random_expr(g, k, depth - 1, eps_ok),
                       random_expr(g, k, depth - 1, eps_ok));
      case 4:
      case 5:
        return e_concat(random_expr(g, k, depth - 1, eps_ok),
                        random_expr(g, k, depth - 1, eps_ok));
      default:
        return e_plus(random_expr(g, k, depth - 1, false));
      }
  }

  // Annotates every node of a random expression with a random element.
  expr
  annotate(const expr& e, rng& g, int n)
  {
    auto s = std::uniform_int_distribution<int>(-1, n - 1)(g);
    std::optional<elem> ann;
    if (s >= 0)
      ann = s;
    switch (e->kind)
      {
      case expr_kind::union_:
        return e_union(annotate(e->left, g, n), annotate(e->right, g, n),
                       ann);
      case expr_kind::concat:
        return e_concat(annotate(e->left, g, n), annotate(e->right, g, n),
                        ann);
      case expr_kind::plus:
        return e_plus(annotate(e->left, g, n), ann);
      case expr_kind::omega:
        return e_omega(annotate(e->left, g, n), ann);
      case expr_kind::letter:
        return e_letter(e->a, ann);
      default:
        return e;
      }
  }

  std::uint64_t
  oracle_count(const expr& e, const word& w)
  {
    auto d = oracle::derivations(e, w.size());
    auto it = d.find(w);
    return it == d.end() ? 0 : it->second;
  }

  const std::vector<std::string> ab{"a", "b"};
}

TEST_SUITE("rexpr")
{
  TEST_CASE("simplify_empty")
  {
    auto a = e_letter(0);
    CHECK(structurally_equal(simplify_empty(e_union(e_empty(), a)), a));
    CHECK(structurally_equal(simplify_empty(e_union(a, e_empty())), a));
    CHECK(is_empty(simplify_empty(e_plus(e_empty()))));
    CHECK(is_empty(simplify_empty(e_concat(a, e_empty()))));
    CHECK(is_empty(simplify_empty(e_concat(e_empty(), a))));
    CHECK(is_empty(simplify_empty(e_omega(e_empty()))));
    auto e = e_concat(e_plus(a), e_union(a, e_letter(1)));
    CHECK(simplify_empty(e) == e);
    auto nested = e_concat(e_plus(e_union(e_empty(), a)),
                           e_union(e_concat(a, e_plus(e_empty())), a));
    auto s = simplify_empty(nested);
    CHECK(structurally_equal(s, e_concat(e_plus(a), a)));
  }

  TEST_CASE("simplify_empty keeps the language and removes every ∅")
  {
    rng g(61);
    for (int n = 0; n < 300; ++n)
      {
        auto e = random_expr(g, 2, 4);
        // graft ∅ leaves
        auto d = e_union(e_concat(e, e_empty()), e_plus(e_union(e_empty(), e)));
        auto s = simplify_empty(d);
        bool clean = true;
        for_each_node(s, [&](const expr_node& x) {
          clean = clean && x.kind != expr_kind::empty;
        });
        CHECK((is_empty(s) || clean));
        auto want = oracle::derivations(e_plus(e), 5);
        auto got = oracle::derivations(s, 5);
        CHECK(want == got);
      }
  }

  TEST_CASE("text form")
  {
    auto pow = fixtures::pow4();
    const auto* S = &pow.semigroup();
    auto e = e_concat(e_plus(e_letter(0, el(pow, "s")), el(pow, "s")),
                      e_union(e_letter(1), e_epsilon()), el(pow, "s^2"));
    auto t = to_text(e, ab, S);
    CHECK(t == "((a:{s})+:{s}.(b|1)):{s^2}");
    CHECK(structurally_equal(parse_expr(t, ab, S), e));
    CHECK(to_text(e_empty(), ab) == "0");
    CHECK(to_text(e_omega(e_letter(1)), ab) == "(b)^w");
    CHECK(to_text(union_of({e_letter(0), e_letter(1), e_letter(0)}), ab)
          == "(a|b|a)");
    CHECK_THROWS_AS(parse_expr("(a|c)", ab), input_error);
    CHECK_THROWS_AS(parse_expr("(a.b", ab), input_error);
    CHECK_THROWS_AS(parse_expr("a:{nope}", ab, S), input_error);
  }

  TEST_CASE("quoted letters")
  {
    std::vector<std::string> odd{"x y", "(", "'"};
    auto e = e_concat(e_letter(0), e_union(e_letter(1), e_letter(2)));
    auto t = to_text(e, odd);
    CHECK(structurally_equal(parse_expr(t, odd), e));
  }

  TEST_CASE("text round trip on random expressions")
  {
    rng g(67);
    auto psi = fixtures::psi6();
    const auto* S = &psi.semigroup();
    for (int n = 0; n < 500; ++n)
      {
        auto e = annotate(random_expr(g, 2, 5), g, S->size());
        if (n % 5 == 0)
          e = e_concat(e, e_omega(random_expr(g, 2, 2, false)));
        auto t = to_text(e, ab, S);
        CAPTURE(t);
        CHECK(structurally_equal(parse_expr(t, ab, S), e));
        CHECK(to_text(parse_expr(t, ab, S), ab, S) == t);
      }
  }

  TEST_CASE("sizes")
  {
    auto a = e_letter(0);
    auto u = e_union(a, a);
    auto c = e_concat(u, u);
    CHECK(dag_size(c) == 3);
    CHECK(tree_size(c) == 7);
  }

  TEST_CASE("image sets")
  {
    auto pow = fixtures::pow4();
    auto img = expr_image(e_plus(e_letter(0)), pow);
    CHECK(img == std::vector<bool>{true, true, true, true});
    img = expr_image(e_concat(e_letter(1), e_letter(1)), pow);
    CHECK(img[el(pow, "s^4")]);
    CHECK(std::count(img.begin(), img.end(), true) == 1);
  }

  TEST_CASE("duplicated union is ambiguous on a")
  {
    auto phi = fixtures::ra2();
    auto e = e_union(e_letter(0), e_letter(0));
    auto r = check_good_expression(e, phi);
    CHECK(!r.unambiguous);
    REQUIRE(r.witness);
    CHECK(*r.witness == w_of(phi, "a"));
  }

  TEST_CASE("a⁺ under pow4 is not good")
  {
    auto phi = fixtures::pow4();
    auto r = check_good_expression(e_plus(e_letter(0)), phi);
    CHECK(!r.idempotents);
    CHECK(!r.ok());
    auto bad = check_good_expression(
        e_plus(e_letter(0, el(phi, "s")), el(phi, "s")), phi);
    CHECK(!bad.idempotents);
    CHECK(!bad.annotations);
    auto fine = check_good_expression(
        e_plus(e_letter(1, el(phi, "s^2")), el(phi, "s^4")), phi);
    CHECK(!fine.annotations);  // b⁺ also reaches s^2
    auto ok = check_good_expression(
        e_plus(e_concat(e_letter(1), e_letter(1), el(phi, "s^4")),
               el(phi, "s^4")),
        phi);
    CHECK(ok.ok());
  }
}

TEST_SUITE("parsing")
{
  TEST_CASE("small counts")
  {
    auto a = e_letter(0);
    CHECK(count_parses(a, {0}) == 1);
    CHECK(count_parses(a, {1}) == 0);
    auto amb = e_union(e_concat(a, e_plus(a)), e_concat(e_plus(a), a));
    CHECK(count_parses(amb, {0, 0, 0}) == 2);
    CHECK(count_parses_derivative(amb, {0, 0, 0}) == 2);
    CHECK_THROWS_AS(parse_unique(amb, {0, 0, 0}), ambiguous_parse);
    CHECK_THROWS_AS(parse_unique(amb, {0}), no_parse);
    auto pp = e_plus(e_plus(a));
    // compositions of 4
    CHECK(count_parses(pp, {0, 0, 0, 0}) == 8);
    CHECK(count_parses(e_plus(e_union(a, e_epsilon())), {0})
          == UINT64_MAX);
  }

  TEST_CASE("three counters agree")
  {
    rng g(71);
    for (int n = 0; n < 400; ++n)
      {
        auto e = random_expr(g, 2, 4);
        expr_matcher m(e);
        auto d = oracle::derivations(e, 6);
        for_each_word(2, 1, 6, [&](const word& w) {
          auto it = d.find(w);
          std::uint64_t want = it == d.end() ? 0 : it->second;
          CAPTURE(to_text(e, ab));
          CHECK(count_parses(e, w) == want);
          CHECK(count_parses_derivative(e, w) == want);
          CHECK(m.count(w) == want);
        });
      }
  }

  TEST_CASE("ω parse counts")
  {
    auto a = e_letter(0), b = e_letter(1);
    auto aw = e_omega(a);
    CHECK(count_up_parses(aw, {{}, {0}}).total == up_count::one);
    CHECK(count_up_parses(aw, {{0}, {0, 0}}).total == up_count::one);
    CHECK(count_up_parses(aw, {{1}, {0}}).total == up_count::zero);
    CHECK(count_up_parses(e_concat(b, aw), {{1}, {0}}).total
          == up_count::one);
    CHECK(count_up_parses(e_concat(e_plus(a), aw), {{}, {0}}).total
          == up_count::many);
    CHECK(count_up_parses(e_omega(e_union(a, e_concat(a, a))), {{}, {0}})
              .total
          == up_count::many);
    auto two = e_union(e_concat(b, aw), e_omega(e_union(a, b)));
    auto c = count_up_parses(two, {{1}, {0}});
    CHECK(c.total == up_count::many);
    REQUIRE(c.branches.size() == 2);
    CHECK(c.branches[0] == up_count::one);
    CHECK(c.branches[1] == up_count::one);
    CHECK_THROWS_AS(count_up_parses(e_omega(e_union(a, e_epsilon())),
                                    {{}, {0}}),
                    input_error);
  }

  TEST_CASE("matcher agrees with the direct ω count")
  {
    rng g(73);
    for (int n = 0; n < 150; ++n)
      {
        auto e = union_of({e_concat(random_expr(g, 2, 3),
                                    e_omega(random_expr(g, 2, 2, false))),
                           e_omega(random_expr(g, 2, 3, false))});
        expr_matcher m(e);
        for (const auto& w : all_up_words(2, 2, 2))
          {
            auto x = count_up_parses(e, w);
            auto y = m.count_up(w);
            CHECK(x.total == y.total);
            CHECK(x.branches == y.branches);
          }
      }
  }

  TEST_CASE("parse of ab under F_α")
  {
    auto phi = fixtures::ra2();
    auto fe = finite_expressions(fixtures::ra2_hand_automaton(), phi);
    auto w = w_of(phi, "ab");
    CHECK(count_parses(fe[el(phi, "α")], w) == 1);
    CHECK(count_parses(fe[el(phi, "β")], w) == 0);
    auto t = parse_unique(fe[el(phi, "α")], w);
    CHECK(t.from == 0);
    CHECK(t.to == 2);
  }

  TEST_CASE("parse trees become factorization trees")
  {
    auto phi = fixtures::ra2();
    auto fa = finite_expressions(fixtures::ra2_hand_automaton(), phi)
        [el(phi, "α")];
    auto w = w_of(phi, "abbb");
    auto t = parse_to_fact_tree(parse_unique(fa, w), w, phi);
    CHECK(verify_fact_tree(t, phi, w).ok);
    // the last b leaves n_b for f, so b⁺ iterates twice
    REQUIRE(t.children.size() == 2);
    const auto& ab_b = t.children[0];
    REQUIRE(ab_b.children.size() == 2);
    CHECK(ab_b.children[1].label == el(phi, "β"));
    CHECK(ab_b.children[1].children.size() == 2);

    auto w5 = w_of(phi, "abbbb");
    auto t5 = parse_to_fact_tree(parse_unique(fa, w5), w5, phi);
    CHECK(verify_fact_tree(t5, phi, w5).ok);
    CHECK(t5.children[0].children[1].children.size() == 3);

    auto w1 = w_of(phi, "a");
    auto t1 = parse_to_fact_tree(parse_unique(fa, w1), w1, phi);
    CHECK(t1.is_leaf());
  }

  TEST_CASE("random words parse into valid trees")
  {
    rng g(79);
    for (const auto& name : {"ra2", "pow4", "klein"})
      {
        auto b = build_good_report(fixtures::by_name(name));
        const auto& phi = b->phi;
        auto fe = finite_expressions(b->good, phi);
        for (int n = 0; n < 100; ++n)
          {
            auto w = random_word(g, phi.alphabet_size(), 1, 40);
            auto t = parse_to_fact_tree(parse_unique(fe[phi.eval(w)], w), w,
                                        phi);
            CAPTURE(name);
            CHECK(verify_fact_tree(t, phi, w).ok);
          }
      }
  }
}

TEST_SUITE("elimination")
{
  TEST_CASE("F_α on the hand automaton is aΣ*")
  {
    auto phi = fixtures::ra2();
    auto a = fixtures::ra2_hand_automaton();
    auto t = eliminate(a, phi);
    auto fa = t.entry(a.initial(), 2, a.find_state("f"), el(phi, "α"));
    for_each_word(2, 1, 3, [&](const word& w) {
      CHECK(count_parses(fa, w) == (w[0] == 0 ? 1u : 0u));
    });
    CHECK(count_parses(fa, w_of(phi, "abb")) == 1);
  }

  TEST_CASE("the n_b loop is b and its plus b⁺")
  {
    auto phi = fixtures::ra2();
    auto a = fixtures::ra2_hand_automaton();
    auto t = eliminate(a, phi);
    state nb = a.find_state("n_b");
    auto loop = t.below_entry(nb, nb, el(phi, "β"));
    CHECK(structurally_equal(loop, e_letter(1, el(phi, "β"))));
    auto plus = e_plus(loop);
    for_each_word(2, 1, 4, [&](const word& w) {
      bool all_b = std::all_of(w.begin(), w.end(),
                               [](letter x) { return x == 1; });
      CHECK(count_parses(plus, w) == (all_b ? 1u : 0u));
    });
    CHECK(is_empty(t.below_entry(nb, nb, el(phi, "α"))));
  }

  TEST_CASE("single transition")
  {
    auto z = std::make_shared<finite_semigroup>(
        std::vector<std::string>{"0"},
        std::vector<std::vector<long long>>{{0}});
    morphism phi(z, {"a"}, {0});
    ordered_automaton a({"a"});
    state f = a.add_state("f", 0);
    state i = a.add_state("ι", 1);
    a.set_initial(i);
    a.set_final(f);
    a.add_transition(i, 0, f);
    auto t = eliminate(a, phi);
    CHECK(structurally_equal(t.entry(i, 0, f, 0), e_letter(0, 0)));
    auto fe = finite_expressions(a, phi);
    REQUIRE(fe.size() == 1);
    CHECK(count_parses(fe[0], {0}) == 1);
    CHECK(count_parses(fe[0], {0, 0}) == 0);
  }

  TEST_CASE("one-element semigroup gives a⁺")
  {
    auto z = std::make_shared<finite_semigroup>(
        std::vector<std::string>{"1"},
        std::vector<std::vector<long long>>{{0}});
    morphism phi(z, {"a"}, {0});
    auto g = build_good(phi);
    auto fe = finite_expressions(g, phi);
    REQUIRE(fe.size() == 1);
    for_each_word(1, 1, 8, [&](const word& w) {
      CHECK(count_parses(fe[0], w) == 1);
    });
    auto r = eliminate_all(g, phi);
    CHECK(r.branches.size() == 1);
  }

  TEST_CASE("table entries match restricted paths")
  {
    for (const auto& name : {"ra2", "klein"})
      {
        auto b = build_good_report(fixtures::by_name(name));
        const auto& a = b->good;
        const auto& phi = b->phi;
        auto t = eliminate(a, phi);
        auto order = a.by_rank();
        for (int k = 0; k <= a.size(); ++k)
          {
            std::vector<bool> x(a.size(), false);
            for (int j = 0; j < k; ++j)
              x[order[j]] = true;
            for (state p = 0; p < a.size(); ++p)
              for (state q = 0; q < a.size(); ++q)
                for (elem s = 0; s < phi.semigroup().size(); ++s)
                  {
                    auto e = t.entry(p, k, q, s);
                    for_each_word(phi.alphabet_size(), 1, 5,
                                  [&](const word& w) {
                      bool want = oracle::restricted_path(a, p, x, q, w)
                                  && oracle::eval(phi, w) == s;
                      CHECK(count_parses(e, w) == (want ? 1u : 0u));
                    });
                  }
          }
      }
  }

  TEST_CASE("eliminate_all agrees with the reference table")
  {
    for (const auto& name : {"ra2", "pow4", "klein"})
      {
        auto b = build_good_report(fixtures::by_name(name));
        const auto& a = b->good;
        const auto& phi = b->phi;
        auto t = eliminate(a, phi);
        auto r = eliminate_all(a, phi);
        state f = a.finals().at(0);
        for (elem s = 0; s < phi.semigroup().size(); ++s)
          {
            auto ref = t.entry(a.initial(), a.size() - 2, f, s);
            expr_matcher m1(ref), m2(r.finite[s]);
            for_each_word(phi.alphabet_size(), 1, 7, [&](const word& w) {
              auto want = oracle::eval(phi, w) == s ? 1u : 0u;
              CHECK(m1.count(w) == want);
              CHECK(m2.count(w) == want);
            });
          }
      }
  }

  TEST_CASE("finite expressions partition by value and are good")
  {
    for (const auto& name : {"ra2", "pow4", "klein", "psi6"})
      {
        auto b = build_good_report(fixtures::by_name(name));
        const auto& phi = b->phi;
        auto fe = finite_expressions(b->good, phi);
        REQUIRE(fe.size() == static_cast<std::size_t>(phi.semigroup().size()));
        std::size_t len = std::string(name) == "psi6" ? 6 : 8;
        std::vector<std::unique_ptr<expr_matcher>> m;
        for (const auto& e : fe)
          m.push_back(std::make_unique<expr_matcher>(e));
        for_each_word(phi.alphabet_size(), 1, len, [&](const word& w) {
          elem v = oracle::eval(phi, w);
          for (elem s = 0; s < phi.semigroup().size(); ++s)
            CHECK(m[s]->count(w) == (s == v ? 1u : 0u));
        });
        if (std::string(name) != "psi6")
          for (const auto& e : fe)
            CHECK(check_good_expression(e, phi, {len, 3, 3}).ok());
      }
  }

  TEST_CASE("ω-expression of the hand automaton")
  {
    auto phi = fixtures::ra2();
    auto a = fixtures::ra2_hand_automaton();
    auto r = eliminate_all(a, phi);
    std::set<state> reps;
    for (const auto& b : r.branches)
      {
        reps.insert(b.r);
        CHECK(b.loop->ann);
      }
    CHECK(reps == std::set<state>{a.find_state("n_a"), a.find_state("n_b")});
    expr_matcher m(r.omega);
    auto c = m.count_up(up_of(phi, "(b)^w"));
    CHECK(c.total == up_count::one);
    REQUIRE(c.branches.size() == r.branches.size());
    for (std::size_t k = 0; k < c.branches.size(); ++k)
      if (c.branches[k] != up_count::zero)
        CHECK(r.branches[k].r == a.find_state("n_b"));
    for (const auto& w : all_up_words(2, 3, 3))
      {
        auto x = m.count_up(w);
        CAPTURE(format_up_word(w, phi.alphabet()));
        CHECK(x.total == up_count::one);
        CHECK(std::count(x.branches.begin(), x.branches.end(),
                         up_count::zero)
              == static_cast<long>(x.branches.size()) - 1);
      }
    CHECK(check_good_expression(r.omega, phi, {5, 2, 2}).ok());
  }

  TEST_CASE("elimination refuses bad input")
  {
    auto phi = fixtures::psi6();
    CHECK_THROWS_AS(eliminate_all(fixtures::psi6_hand_automaton_merged(), phi),
                    not_good);
    auto a = fixtures::ra2_hand_automaton();
    state d = a.add_state("d", -5);
    a.add_transition(a.initial(), 0, d);
    CHECK_THROWS_AS(eliminate_all(a, fixtures::ra2()), not_reduced);
  }
}
