#include <doctest.h>

#include <ufact/errors.hh>
#include <ufact/fixtures.hh>
#include <ufact/generator.hh>
#include <ufact/goodness.hh>
#include <ufact/runs.hh>
#include <ufact/synthesis.hh>

#include "helpers.hh"
#include "oracles.hh"

using namespace ufact;
using namespace testing;

namespace
{
  std::vector<bool>
  everything(const ordered_automaton& a)
  {
    return std::vector<bool>(a.size(), true);
  }

  // Outer-state positions of the unique run on w, excluding both ends.
  std::vector<std::size_t>
  outer_positions(const build_level& b, const word& w)
  {
    auto runs = accepting_runs_finite(b.weak, w);
    REQUIRE(runs.size() == 1);
    std::vector<std::size_t> out;
    for (std::size_t j = 1; j < w.size(); ++j)
      if (b.roles[runs[0].stem[j]].kind == state_role::outer)
        out.push_back(j);
    return out;
  }

  bool
  in(const std::vector<letter>& v, letter a)
  {
    return std::find(v.begin(), v.end(), a) != v.end();
  }
}

TEST_SUITE("synthesis")
{
  TEST_CASE("case choice")
  {
    auto pow = fixtures::pow4();
    auto d = choose_case(pow);
    CHECK(d.tag == case_tag::left_ideal);
    CHECK(d.c == el(pow, "s^2"));
    CHECK(d.sigma1 == std::vector<letter>{0});
    CHECK(d.sigma2 == std::vector<letter>{1});

    auto ra2 = fixtures::ra2();
    d = choose_case(ra2);
    CHECK(d.tag == case_tag::right_ideal);
    CHECK(d.c == el(ra2, "α"));

    CHECK(choose_case(fixtures::klein()).tag == case_tag::group);
    CHECK(choose_case(restrict_to_image(fixtures::pow4_single()).phi).tag
          == case_tag::single_image);
  }

  TEST_CASE("group base case on the Klein group")
  {
    auto phi = fixtures::klein();
    auto a = build_base_group(phi);
    CHECK(a.size() == 5);
    CHECK(a.is_deterministic());
    CHECK(a.is_complete());
    elem unit = el(phi, "(0,0)");
    for (elem q = 0; q < 4; ++q)
      for_each_word(2, 1, 6, [&](const word& w) {
        CHECK(oracle::restricted_path(a, q, everything(a), q, w)
              == (oracle::eval(phi, w) == unit));
      });
    CHECK(verify_goodness(a, phi).weakly_good());
  }

  TEST_CASE("group base case on the trivial group")
  {
    auto one = std::make_shared<finite_semigroup>(
        std::vector<std::string>{"1"},
        std::vector<std::vector<long long>>{{0}});
    morphism phi(one, {"a"}, {0});
    auto a = build_base_group(phi);
    CHECK(a.size() == 2);
    CHECK(a.succ(0, 0) == std::vector<state>{0});
  }

  TEST_CASE("group base case on Z/3")
  {
    auto phi = fixtures::z3();
    auto a = build_base_group(phi);
    CHECK(a.size() == 4);
    const auto& s = phi.semigroup();
    for (elem p = 0; p < 3; ++p)
      for (elem q = 0; q < 3; ++q)
        for_each_word(1, 1, 6, [&](const word& w) {
          CHECK(oracle::restricted_path(a, p, everything(a), q, w)
                == (s.product(p, oracle::eval(phi, w)) == q));
        });
  }

  TEST_CASE("group base case refuses a non-group")
  {
    CHECK_THROWS_AS(build_base_group(fixtures::ra2()), not_a_group);
  }

  TEST_CASE("single-image counter on powers of s")
  {
    auto phi = restrict_to_image(fixtures::pow4_single()).phi;
    auto a = build_base_single_image(phi);
    CHECK(a.size() == 7);
    CHECK(a.initial() == 0);
    CHECK(a.succ(6, 0) == std::vector<state>{3});
    CHECK(a.succ(6, 1) == std::vector<state>{3});
    for (state i = 0; i < 6; ++i)
      CHECK(a.succ(i, 0) == std::vector<state>{i + 1});
    // L_{i,i} = (Σ^4)⁺ for 3 <= i <= 6, empty otherwise
    for (state i = 0; i < 7; ++i)
      for_each_word(2, 1, 8, [&](const word& w) {
        bool expect = i >= 3 && w.size() % 4 == 0;
        CHECK(oracle::restricted_path(a, i, everything(a), i, w) == expect);
      });
    CHECK(verify_goodness(a, phi).weakly_good());
  }

  TEST_CASE("single-image counter on an idempotent")
  {
    auto pow = fixtures::pow4();
    morphism phi(pow.shared_semigroup(), {"a"}, {el(pow, "s^4")});
    auto r = restrict_to_image(phi).phi;
    auto a = build_base_single_image(r);
    CHECK(a.size() == 2);
    CHECK(a.succ(1, 0) == std::vector<state>{1});
    CHECK_THROWS_AS(build_base_single_image(fixtures::ra2()),
                    multiple_images);
  }

  TEST_CASE("left ideal construction on pow4")
  {
    auto phi = fixtures::pow4();
    auto b = build_inductive_left(phi, el(phi, "s^2"));
    REQUIRE(b->child1);
    REQUIRE(b->child2);
    CHECK(b->child1->good.size() == 8);
    CHECK(b->child2->good.size() == 4);
    CHECK(b->derived == els(phi, {"s^3", "s^4"}));
    auto r = verify_goodness(b->good, phi);
    CHECK(r.good());
    auto klein = fixtures::klein();
    CHECK_THROWS_AS(build_inductive_left(klein, el(klein, "(1,0)")),
                    case_inapplicable);
  }

  TEST_CASE("left ideal runs sit in the outer automaton at block ends")
  {
    auto phi = fixtures::pow4();
    auto b = build_good_report(phi);
    REQUIRE(b->decision.tag == case_tag::left_ideal);
    // aab|baaab|ab
    auto w = w_of(phi, "aabbaaabab");
    CHECK(outer_positions(*b, w) == std::vector<std::size_t>{3, 8});
    rng g(3);
    for (int n = 0; n < 300; ++n)
      {
        auto u = random_word(g, 2, 2, 30);
        // (a u c)(a u c) ...: any letter, then up to the first c
        std::vector<std::size_t> ends;
        std::size_t j = 1;
        while (j < u.size())
          if (in(b->decision.sigma2, u[j++]))
            {
              if (j < u.size())
                ends.push_back(j);
              ++j;
            }
        CHECK(outer_positions(*b, u) == ends);
      }
  }

  TEST_CASE("block with an empty middle takes the exit from ι₁")
  {
    auto phi = fixtures::pow4();
    auto b = build_good_report(phi);
    auto runs = accepting_runs_finite(b->weak, w_of(phi, "bb"));
    REQUIRE(runs.size() == 1);
    const auto& r1 = b->roles[runs[0].stem[1]];
    CHECK(r1.kind == state_role::triple);
    CHECK(r1.p == b->child1->good.initial());
    CHECK(b->roles[runs[0].stem[2]].kind == state_role::outer);
  }

  TEST_CASE("right ideal construction on ra2")
  {
    auto phi = fixtures::ra2();
    auto b = build_inductive_right(phi, el(phi, "α"));
    REQUIRE(b->child1);
    REQUIRE(b->child2);
    CHECK(b->child1->good.size() == 3);
    CHECK(b->child2->good.size() == 3);
    CHECK(b->derived == els(phi, {"α"}));
    // ι on a: into the first block, or straight to the outer automaton
    auto next = b->weak.succ(b->weak.initial(), 0);
    bool to_triple = false, to_outer = false;
    for (state q : next)
      {
        const auto& r = b->roles[q];
        to_triple = to_triple
                    || (r.kind == state_role::triple && r.q == -1
                        && r.s == el(phi, "α")
                        && r.p == b->child1->good.initial());
        to_outer = to_outer || r.kind == state_role::outer;
      }
    CHECK(to_triple);
    CHECK(to_outer);
    CHECK(!b->weak.is_deterministic());
    auto r = verify_goodness(b->good, phi);
    CHECK(r.good());
    auto klein = fixtures::klein();
    CHECK_THROWS_AS(build_inductive_right(klein, el(klein, "(1,0)")),
                    case_inapplicable);
  }

  TEST_CASE("right ideal runs sit in the outer automaton before each c")
  {
    auto phi = fixtures::ra2();
    auto b = build_good_report(phi);
    REQUIRE(b->decision.tag == case_tag::right_ideal);
    rng g(7);
    for (int n = 0; n < 300; ++n)
      {
        auto u = random_word(g, 2, 2, 30);
        // a₀u₀ (c a u)(c a u) ...
        std::vector<std::size_t> starts;
        std::size_t j = 1;
        while (j < u.size())
          if (in(b->decision.sigma2, u[j]))
            {
              starts.push_back(j);
              j += 2;
            }
          else
            ++j;
        CAPTURE(format_word(u, phi.alphabet()));
        CHECK(outer_positions(*b, u) == starts);
      }
  }

  TEST_CASE("build_good is good on every fixture")
  {
    for (const auto& name : fixtures::names())
      {
        CAPTURE(name);
        auto phi = fixtures::by_name(name);
        auto a = build_good(phi);
        check_bounds bounds;
        if (name == "psi6")
          bounds = {6, 2, 2};
        CHECK(verify_goodness(a, phi, bounds).good());
      }
  }

  TEST_CASE("Klein group gives six states")
  {
    CHECK(build_good(fixtures::klein()).size() == 6);
  }

  TEST_CASE("psi6 synthesis agrees with the hand automaton")
  {
    auto phi = fixtures::psi6();
    auto a = build_good(phi);
    auto hand = fixtures::psi6_hand_automaton();
    for_each_word(2, 1, 8, [&](const word& w) {
      CHECK(count_runs_finite(a, w) == 1);
      CHECK(count_runs_finite(hand, w) == 1);
    });
  }

  TEST_CASE("synthesized automata are good on generated morphisms")
  {
    int built = 0;
    for (std::uint64_t seed = 1; seed <= 40 && built < 25; ++seed)
      {
        morphism phi = generate_morphism(3, 2, seed);
        if (phi.semigroup().size() > 6)
          continue;
        ++built;
        CAPTURE(seed);
        auto a = build_good(phi);
        CHECK(verify_goodness(a, phi, {6, 2, 2}).good());
      }
    CHECK(built > 0);
  }
}
