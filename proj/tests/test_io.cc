#include <doctest.h>

#include <ufact/elimination.hh>
#include <ufact/errors.hh>
#include <ufact/fixtures.hh>
#include <ufact/generator.hh>
#include <ufact/goodness.hh>
#include <ufact/io.hh>
#include <ufact/parsing.hh>
#include <ufact/ramsey.hh>
#include <ufact/synthesis.hh>

#include "helpers.hh"

using namespace ufact;
using namespace testing;

TEST_SUITE("io")
{
  TEST_CASE("morphisms round trip")
  {
    for (const auto& name : fixtures::names())
      {
        auto phi = fixtures::by_name(name);
        auto j = morphism_to_json(phi);
        CHECK(morphism_from_json(j) == phi);
        CHECK(morphism_from_json(json::parse(j.dump())) == phi);
      }
  }

  TEST_CASE("nested semigroup and index images")
  {
    auto j = json::parse(R"({
      "semigroup": {"elements": ["x", "y"], "table": [[0, 0], [1, 1]]},
      "alphabet": ["a", "b"],
      "map": {"a": "x", "b": 1}
    })");
    auto phi = morphism_from_json(j);
    CHECK(phi.image(0) == 0);
    CHECK(phi.image(1) == 1);
    CHECK(phi.semigroup().name(1) == "y");
  }

  TEST_CASE("malformed morphisms are input errors")
  {
    auto base = morphism_to_json(fixtures::ra2());
    auto j = base;
    j["map"].erase("b");
    CHECK_THROWS_AS(morphism_from_json(j), input_error);
    j = base;
    j["map"]["c"] = "α";
    CHECK_THROWS_AS(morphism_from_json(j), input_error);
    j = base;
    j["alphabet"] = {"ab", "b"};
    CHECK_THROWS_AS(morphism_from_json(j), input_error);
    j = base;
    j["alphabet"] = {"a", "a"};
    CHECK_THROWS_AS(morphism_from_json(j), input_error);
    j = base;
    j["table"] = {{0, 1}, {0, 0}};
    CHECK_THROWS_AS(morphism_from_json(j), non_associative);
    j = base;
    j["table"] = {{0, 5}, {1, 1}};
    CHECK_THROWS_AS(morphism_from_json(j), out_of_range_entry);
    CHECK_THROWS_AS(morphism_from_json(json::array()), input_error);
  }

  TEST_CASE("automata round trip")
  {
    for (const auto& a : {fixtures::ra2_hand_automaton(),
                          fixtures::psi6_hand_automaton(),
                          build_good(fixtures::pow4())})
      {
        auto j = automaton_to_json(a);
        CHECK(automaton_from_json(json::parse(j.dump())) == a);
      }
  }

  TEST_CASE("automaton without alphabet uses the sorted letters")
  {
    auto j = automaton_to_json(fixtures::ra2_hand_automaton());
    j.erase("alphabet");
    auto a = automaton_from_json(j);
    CHECK(a.alphabet() == std::vector<std::string>{"a", "b"});
    CHECK(a == fixtures::ra2_hand_automaton());
  }

  TEST_CASE("malformed automata are input errors")
  {
    auto base = automaton_to_json(fixtures::ra2_hand_automaton());
    auto j = base;
    j["initial"] = "nowhere";
    CHECK_THROWS_AS(automaton_from_json(j), input_error);
    j = base;
    j["transitions"].push_back({"ι", "c", "f"});
    CHECK_THROWS_AS(automaton_from_json(j), input_error);
    j = base;
    j["states"][0]["rank"] = j["states"][1]["rank"];
    CHECK_THROWS_AS(automaton_from_json(j), input_error);
  }

  TEST_CASE("DOT output")
  {
    auto dot = automaton_to_dot(fixtures::ra2_hand_automaton());
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("n_b:0") != std::string::npos);
  }

  TEST_CASE("splits and trees round trip")
  {
    auto phi = fixtures::ra2();
    split s{{4, 1, 1, 1, 3}, {}};
    CHECK(split_to_json(s).dump() == "[4,1,1,1,3]");
    CHECK(split_from_json(split_to_json(s)) == s);
    split l{{4, 1}, {1, 2}};
    CHECK(split_from_json(json::parse(split_to_json(l).dump())) == l);

    auto w = w_of(phi, "abbb");
    auto t = tree_from_split(w, s, phi);
    auto j = fact_tree_to_json(t, phi);
    CHECK(fact_tree_from_json(json::parse(j.dump()), phi) == t);
    CHECK(fact_tree_to_dot(t, phi).find("digraph") != std::string::npos);
  }

  TEST_CASE("goodness reports")
  {
    auto phi = fixtures::psi6();
    auto a = fixtures::psi6_hand_automaton_merged();
    auto r = verify_goodness(a, phi, {5, 2, 2});
    auto j = goodness_report_to_json(r, a, phi);
    CHECK(j["good"] == false);
    CHECK(j["axioms"][1]["axiom"] == "G2");
    CHECK(j["axioms"][1]["pass"] == false);
    CHECK(j["axioms"][1]["witness"] == "a");
    auto text = goodness_report_to_text(r, a, phi);
    CHECK(text.find("G2") != std::string::npos);
    CHECK(text.find("not good") != std::string::npos);
  }

  TEST_CASE("build reports carry heights")
  {
    auto b = build_good_report(fixtures::pow4());
    auto j = json::parse(build_report_to_json(*b).dump());
    CHECK(j["case"] == "left_ideal");
    CHECK(j["c"] == "s^2");
    auto h = heights_from_report(j, b->good);
    CHECK(h.h == optimized_heights(b.get(), b->good).h);
    auto other = build_good(fixtures::klein());
    CHECK_THROWS_AS(heights_from_report(j, other), missing_build_report);
  }

  TEST_CASE("expression bundles round trip")
  {
    for (const auto& name : {"ra2", "pow4", "klein"})
      {
        auto b = build_good_report(fixtures::by_name(name));
        auto r = eliminate_all(b->good, b->phi);
        expr_bundle eb{b->phi, {}, r.omega};
        for (elem s = 0; s < b->phi.semigroup().size(); ++s)
          eb.finite[b->phi.semigroup().name(s)] = r.finite[s];
        auto j = json::parse(expr_bundle_to_json(eb).dump());
        auto back = expr_bundle_from_json(j);
        CHECK(back.phi == eb.phi);
        REQUIRE(back.finite.size() == eb.finite.size());
        for (const auto& [k, e] : eb.finite)
          CHECK(structurally_equal(back.finite.at(k), e));
        CHECK(structurally_equal(back.omega, eb.omega));
        // capped text form
        auto small = expr_bundle_to_json(eb, 1);
        for (const auto& [k, v] : small["finite"].items())
          if (v["tree_size"].get<std::uint64_t>() > 1)
            CHECK(!v.contains("text"));
      }
  }

  TEST_CASE("files")
  {
    CHECK_THROWS_AS(read_file("/nonexistent/file.json"), input_error);
    auto path = std::string("io_test_tmp.json");
    write_file(path, "{\"x\": 1}");
    CHECK(read_json_file(path)["x"] == 1);
    write_file(path, "{oops");
    CHECK_THROWS_AS(read_json_file(path), input_error);
    std::remove(path.c_str());
  }
}

TEST_SUITE("generator")
{
  TEST_CASE("one point gives the trivial semigroup")
  {
    auto phi = generate_morphism(1, 2, 9);
    CHECK(phi.semigroup().size() == 1);
    CHECK(phi.alphabet_size() == 2);
  }

  TEST_CASE("constant maps give a left-zero semigroup")
  {
    auto phi = transformation_morphism({{0, 0}, {1, 1}});
    const auto& s = phi.semigroup();
    REQUIRE(s.size() == 2);
    for (elem x = 0; x < 2; ++x)
      for (elem y = 0; y < 2; ++y)
        CHECK(s.product(x, y) == x);
  }

  TEST_CASE("composition applies the right factor first")
  {
    // f swaps, g is constant 0
    auto phi = transformation_morphism({{1, 0}, {0, 0}});
    auto fg = phi.eval({0, 1});
    auto gf = phi.eval({1, 0});
    CHECK(phi.semigroup().name(fg) == "11");
    CHECK(phi.semigroup().name(gf) == "00");
  }

  TEST_CASE("same seed, same output")
  {
    for (std::uint64_t seed : {1u, 2u, 77u})
      {
        auto a = morphism_to_json(generate_morphism(3, 2, seed)).dump();
        auto b = morphism_to_json(generate_morphism(3, 2, seed)).dump();
        CHECK(a == b);
      }
    rng g1(5), g2(5);
    CHECK(random_word(g1, 3, 1, 50) == random_word(g2, 3, 1, 50));
    CHECK(random_automaton(g1, 5, 2, 0.5) == random_automaton(g2, 5, 2, 0.5));
  }

  TEST_CASE("generated tables are associative")
  {
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
      {
        auto phi = generate_morphism(3, 3, seed);
        CHECK_NOTHROW(validate_semigroup(phi.semigroup().table()));
      }
  }

  TEST_CASE("closure cap")
  {
    // a 4-cycle and a transposition generate S_4
    CHECK_THROWS_AS(transformation_morphism({{1, 2, 3, 0}, {1, 0, 2, 3}}, 10),
                    size_overflow);
    CHECK(transformation_morphism({{1, 2, 3, 0}, {1, 0, 2, 3}}).semigroup()
              .size()
          == 24);
  }

  TEST_CASE("random words and automata respect their bounds")
  {
    rng g(3);
    for (int n = 0; n < 200; ++n)
      {
        auto w = random_word(g, 3, 2, 7);
        CHECK(w.size() >= 2);
        CHECK(w.size() <= 7);
        for (letter x : w)
          CHECK((x >= 0 && x < 3));
        auto u = random_up_word(g, 2, 3, 2);
        CHECK(u.prefix.size() <= 3);
        CHECK(!u.period.empty());
        CHECK(u.period.size() <= 2);
      }
    auto a = random_automaton(g, 5, 2, 0.5);
    CHECK(a.size() == 5);
    CHECK_NOTHROW(a.validate());
  }
}
