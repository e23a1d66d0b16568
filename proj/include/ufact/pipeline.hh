#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <ufact/algebra.hh>
#include <ufact/automaton.hh>
#include <ufact/elimination.hh>
#include <ufact/generator.hh>
#include <ufact/synthesis.hh>

namespace ufact
{
  struct stage_verdict
  {
    std::string name;
    bool pass = true;
    std::string detail;  ///< first failure, or a short summary
  };

  struct pipeline_options
  {
    std::size_t max_len = 8;     ///< exhaustive finite words
    std::size_t up_u = 3, up_v = 3;
    std::size_t words = 1000;    ///< random words for splits and trees
    std::size_t word_len = 200;  ///< their maximal length
    std::size_t tree_words = 100;  ///< of which converted from parses
    std::uint64_t seed = 1;
  };

  /// verify_goodness with exact finite checks and UP words within bounds.
  stage_verdict check_goodness_stage(const ordered_automaton& a,
                                     const morphism& phi,
                                     const pipeline_options& opt);

  /// Default-height splits are Ramsey with at most |Q| levels; splits from
  /// the optimized heights are Ramsey, and at every ideal level the
  /// weakly-good automaton has height at most H1 + H2 + 2.
  stage_verdict check_split_stage(const build_level& report,
                                  const pipeline_options& opt);

  /// Trees from splits, and from unique parses of the finite expressions,
  /// pass verify_fact_tree.
  stage_verdict check_tree_stage(const build_level& report,
                                 const elimination_result& ex,
                                 const pipeline_options& opt);

  /// The finite expressions partition Σ^{≤max_len} by value with one parse
  /// each and pass check_good_expression; every UP word within bounds has
  /// one parse in exactly one branch of the ω-expression.
  stage_verdict check_expression_stage(const morphism& phi,
                                       const elimination_result& ex,
                                       const pipeline_options& opt);

  struct pipeline_report
  {
    std::size_t states = 0;
    std::vector<stage_verdict> stages;
    bool ok() const;
  };

  /// build → verify → splits → trees → expressions.
  pipeline_report run_pipeline(const morphism& phi,
                               const pipeline_options& opt);
}
