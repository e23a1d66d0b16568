#include <algorithm>
#include <set>

#include <doctest.h>

#include <ufact/algebra.hh>
#include <ufact/errors.hh>
#include <ufact/fixtures.hh>
#include <ufact/generator.hh>

#include "helpers.hh"
#include "oracles.hh"

using namespace ufact;
using namespace testing;

namespace
{
  // All products x·c, computed from the raw table.
  std::vector<elem>
  brute_ideal(const finite_semigroup& s, elem c, bool left)
  {
    std::set<elem> out;
    for (elem x = 0; x < s.size(); ++x)
      out.insert(left ? s.product(x, c) : s.product(c, x));
    return {out.begin(), out.end()};
  }
}

TEST_SUITE("algebra")
{
  TEST_CASE("left-zero table validates")
  {
    auto s = validate_semigroup({{0, 0}, {1, 1}});
    CHECK(s.size() == 2);
    CHECK(s.product(0, 1) == 0);
    CHECK(s.product(1, 0) == 1);
  }

  TEST_CASE("trivial table validates")
  {
    CHECK(validate_semigroup({{0}}).size() == 1);
  }

  TEST_CASE("non-associative table is rejected with a triple")
  {
    // (β·α)·β = α·β = β but β·(α·β) = β·β = α
    CHECK_THROWS_AS(validate_semigroup({{0, 1}, {0, 0}}), non_associative);
    try
      {
        validate_semigroup({{0, 1}, {0, 0}});
      }
    catch (const non_associative& e)
      {
        auto s = std::vector<std::vector<long long>>{{0, 1}, {0, 0}};
        auto p = [&](int a, int b) { return s[a][b]; };
        CHECK(p(p(e.i, e.j), e.k) != p(e.i, p(e.j, e.k)));
      }
  }

  TEST_CASE("out-of-range and ragged tables are rejected")
  {
    CHECK_THROWS_AS(validate_semigroup({{0, 2}, {1, 1}}), out_of_range_entry);
    CHECK_THROWS_AS(validate_semigroup({{0, -1}, {1, 1}}), out_of_range_entry);
    CHECK_THROWS_AS(validate_semigroup({{0, 0}, {1}}), input_error);
  }

  TEST_CASE("eval_morphism")
  {
    auto pow = fixtures::pow4();
    // exponents sum to 14, folded by s^5 = s^3
    CHECK(eval_morphism(pow, "aabbaaabab") == el(pow, "s^4"));
    auto ra2 = fixtures::ra2();
    CHECK(eval_morphism(ra2, "baab") == el(ra2, "β"));
    auto klein = fixtures::klein();
    CHECK(eval_morphism(klein, "a") == el(klein, "(1,0)"));
    CHECK_THROWS_AS(eval_morphism(ra2, "abc"), unknown_letter);
    CHECK_THROWS_AS(eval_morphism(ra2, word{}), input_error);
  }

  TEST_CASE("eval_morphism is a homomorphism")
  {
    rng g(11);
    for (const auto& name : fixtures::names())
      {
        auto phi = fixtures::by_name(name);
        const auto& s = phi.semigroup();
        for (int i = 0; i < 200; ++i)
          {
            auto u = random_word(g, phi.alphabet_size(), 1, 12);
            auto v = random_word(g, phi.alphabet_size(), 1, 12);
            word uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            CHECK(phi.eval(uv) == s.product(phi.eval(u), phi.eval(v)));
            CHECK(phi.eval(uv) == oracle::eval(phi, uv));
            CHECK(phi.eval(uv, u.size(), uv.size()) == phi.eval(v));
          }
      }
  }

  TEST_CASE("idempotents")
  {
    auto ra2 = fixtures::ra2();
    CHECK(idempotents(ra2.semigroup()) == els(ra2, {"α", "β"}));
    auto psi = fixtures::psi6();
    CHECK(idempotents(psi.semigroup()) == els(psi, {"αα", "αβ", "βα", "ββ"}));
    auto pow = fixtures::pow4();
    CHECK(idempotents(pow.semigroup()) == els(pow, {"s^4"}));
  }

  TEST_CASE("power profiles")
  {
    auto pow = fixtures::pow4();
    CHECK(power_profile(pow.semigroup(), el(pow, "s"))
          == power_profile_t{3, 2, 4});
    CHECK(power_profile(pow.semigroup(), el(pow, "s^4"))
          == power_profile_t{1, 1, 1});
    auto z3 = fixtures::z3();
    CHECK(power_profile(z3.semigroup(), el(z3, "g"))
          == power_profile_t{1, 3, 3});
  }

  TEST_CASE("power profile invariants on generated semigroups")
  {
    for (std::uint64_t seed = 1; seed <= 30; ++seed)
      {
        auto phi = generate_morphism(3, 2, seed);
        const auto& s = phi.semigroup();
        for (elem a = 0; a < s.size(); ++a)
          {
            auto p = power_profile(s, a);
            CAPTURE(seed);
            CHECK(s.power(a, p.k) == s.power(a, p.k + p.ell));
            CHECK(is_idempotent(s, s.power(a, p.n)));
            CHECK(p.k <= p.n);
            CHECK(p.n < p.k + p.ell);
            CHECK(p.n % p.ell == 0);
            // lexicographically least (k, ℓ) and least n, by search
            for (int k = 1; k <= p.k; ++k)
              for (int l = 1; l <= 2 * s.size(); ++l)
                if (k < p.k || l < p.ell)
                  CHECK(s.power(a, k) != s.power(a, k + l));
            for (int n = 1; n < p.n; ++n)
              CHECK(!is_idempotent(s, s.power(a, n)));
          }
      }
  }

  TEST_CASE("ideals")
  {
    auto pow = fixtures::pow4();
    CHECK(left_ideal(pow.semigroup(), el(pow, "s^2"))
          == els(pow, {"s^3", "s^4"}));
    auto ra2 = fixtures::ra2();
    CHECK(right_ideal(ra2.semigroup(), el(ra2, "α")) == els(ra2, {"α"}));
    auto klein = fixtures::klein();
    for (elem c = 0; c < 4; ++c)
      CHECK(left_ideal(klein.semigroup(), c).size() == 4);
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      {
        auto phi = generate_morphism(3, 2, seed);
        const auto& s = phi.semigroup();
        for (elem c = 0; c < s.size(); ++c)
          {
            CHECK(left_ideal(s, c) == brute_ideal(s, c, true));
            CHECK(right_ideal(s, c) == brute_ideal(s, c, false));
          }
      }
  }

  TEST_CASE("is_group")
  {
    CHECK(is_group(fixtures::klein().semigroup()));
    CHECK(!is_group(fixtures::ra2().semigroup()));
    auto pow = fixtures::pow4();
    auto sub = pow.semigroup().restrict_to(els(pow, {"s^3", "s^4"}));
    CHECK(is_group(sub));
    auto unit = group_unit(sub);
    REQUIRE(unit);
    CHECK(sub.name(*unit) == "s^4");
  }

  TEST_CASE("is_group agrees with the unit and inverse search")
  {
    int groups = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed)
      {
        auto phi = generate_morphism(3, 1 + seed % 2, seed);
        const auto& s = phi.semigroup();
        bool g = is_group(s);
        groups += g;
        CAPTURE(seed);
        CHECK(g == group_unit(s).has_value());
        bool ideals = true;
        for (elem c = 0; c < s.size(); ++c)
          ideals = ideals
                   && brute_ideal(s, c, true).size()
                          == static_cast<std::size_t>(s.size())
                   && brute_ideal(s, c, false).size()
                          == static_cast<std::size_t>(s.size());
        CHECK(g == ideals);
      }
    CHECK(groups > 0);
  }

  TEST_CASE("generated subsemigroups")
  {
    auto pow = fixtures::pow4();
    CHECK(generated_subsemigroup(pow.semigroup(), {el(pow, "s")}).size() == 4);
    CHECK(generated_subsemigroup(pow.semigroup(), {el(pow, "s^4")})
          == els(pow, {"s^4"}));
    auto klein = fixtures::klein();
    CHECK(generated_subsemigroup(klein.semigroup(),
                                 {el(klein, "(1,0)"), el(klein, "(0,1)")})
              .size()
          == 4);
  }

  TEST_CASE("derived alphabets")
  {
    auto pow = fixtures::pow4();
    auto b = derived_alphabet(pow, el(pow, "s^2"), side::left);
    CHECK(b.elements == els(pow, {"s^3", "s^4"}));
    auto ra2 = fixtures::ra2();
    auto r = derived_alphabet(ra2, el(ra2, "α"), side::right);
    CHECK(r.elements == els(ra2, {"α"}));
    CHECK_THROWS_AS(derived_alphabet(pow, el(pow, "s^3"), side::left),
                    degenerate_split);
  }

  TEST_CASE("derived alphabet lies in the ideal with valid witnesses")
  {
    for (std::uint64_t seed = 1; seed <= 40; ++seed)
      {
        auto phi = generate_morphism(3, 3, seed);
        const auto& s = phi.semigroup();
        for (letter a = 0; a < phi.alphabet_size(); ++a)
          for (auto sd : {side::left, side::right})
            {
              elem c = phi.image(a);
              bool all_c = true;
              for (letter x = 0; x < phi.alphabet_size(); ++x)
                all_c = all_c && phi.image(x) == c;
              if (all_c)
                continue;
              auto d = derived_alphabet(phi, c, sd);
              auto ideal = sd == side::left ? left_ideal(s, c)
                                            : right_ideal(s, c);
              for (std::size_t i = 0; i < d.elements.size(); ++i)
                {
                  CHECK(std::binary_search(ideal.begin(), ideal.end(),
                                           d.elements[i]));
                  CHECK(oracle::eval(phi, d.witnesses[i]) == d.elements[i]);
                }
            }
      }
  }

  TEST_CASE("restriction to the image")
  {
    auto pow = fixtures::pow4();
    morphism only_b(pow.shared_semigroup(), {"b"}, {el(pow, "s^2")});
    auto r = restrict_to_image(only_b);
    CHECK(r.phi.semigroup().size() == 2);  // s^2, s^4
    CHECK(r.phi.semigroup().name(r.phi.image(0)) == "s^2");
  }
}
