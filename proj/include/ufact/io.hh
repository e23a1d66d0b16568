#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <ufact/algebra.hh>
#include <ufact/automaton.hh>
#include <ufact/goodness.hh>
#include <ufact/parsing.hh>
#include <ufact/ramsey.hh>
#include <ufact/rexpr.hh>
#include <ufact/synthesis.hh>

namespace ufact
{
  using json = nlohmann::json;

  /// Reads a whole file; throws input_error.
  std::string read_file(const std::string& path);
  json read_json_file(const std::string& path);
  void write_file(const std::string& path, const std::string& text);

  /// {"elements": [...], "table": [[...]...]}
  json semigroup_to_json(const finite_semigroup& s);
  finite_semigroup semigroup_from_json(const json& j);

  /// The semigroup fields plus {"alphabet": [...], "map": {letter: name}}.
  json morphism_to_json(const morphism& phi);
  morphism morphism_from_json(const json& j);

  /// {"alphabet", "states": [{"name", "rank"}], "initial", "finals",
  ///  "buchi", "transitions": [[src, letter, dst]]}
  json automaton_to_json(const ordered_automaton& a);
  ordered_automaton automaton_from_json(const json& j);
  /// States labelled name:rank, finals double circles, Büchi states
  /// filled grey.
  std::string automaton_to_dot(const ordered_automaton& a);

  /// Case tree with per-level state counts, profiles, chosen c and the
  /// optimized heights of the good automaton by state name.
  json build_report_to_json(const build_level& b);
  /// Heights stored in a report for automaton a; throws
  /// missing_build_report when the report does not cover a's states.
  height_assignment heights_from_report(const json& report,
                                        const ordered_automaton& a);

  json goodness_report_to_json(const goodness_report& r,
                               const ordered_automaton& a,
                               const morphism& phi);
  std::string goodness_report_to_text(const goodness_report& r,
                                      const ordered_automaton& a,
                                      const morphism& phi);

  /// A plain array for finite words, {"stem", "cycle"} for lassos.
  json split_to_json(const split& s);
  split split_from_json(const json& j);

  /// Leaves {"letter", "label"}, nodes {"label", "children"}.
  json fact_tree_to_json(const fact_tree& t, const morphism& phi);
  fact_tree fact_tree_from_json(const json& j, const morphism& phi);
  std::string fact_tree_to_dot(const fact_tree& t, const morphism& phi);

  /// {"node", "ann", "from", "to", "children"}; letters add "letter".
  json parse_tree_to_json(const parse_tree& t, const morphism& phi);

  /// The expressions of one morphism.  Serialized with the morphism and a
  /// shared node list ("nodes"); each root also carries its text form when
  /// the unfolded tree has at most `text_limit` nodes.
  struct expr_bundle
  {
    morphism phi;
    std::map<std::string, expr> finite;  ///< by element name
    expr omega;                          ///< null when absent
  };

  json expr_bundle_to_json(const expr_bundle& b,
                           std::uint64_t text_limit = 100000);
  expr_bundle expr_bundle_from_json(const json& j);
}
