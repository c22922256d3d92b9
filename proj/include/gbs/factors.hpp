#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbs/moves.hpp"

namespace gbs {

struct ComplexityTriple {
  Int b1 = 0;
  Int m = 0;
  Int sigma = 0;
  auto operator<=>(const ComplexityTriple&) const = default;
};

ComplexityTriple complexity(const Graph& g);
std::string to_string(const ComplexityTriple& c);

/// Generators g1.. of π1 at the basepoint: a conjugate of each vertex
/// generator, then one loop per edge off the spanning tree.
std::vector<GeneratorWord> spanning_generators(const Graph& g);

/// One loop-level map between two graphs.
struct MapStep {
  std::shared_ptr<const Graph> source;
  std::shared_ptr<const Graph> target;
  GraphMap map;
  Path apply(const Path& loop) const;
};

Path apply_steps(const std::vector<MapStep>& steps, Path loop);

/// Where a factor lives: a component of the complement of the avoided edges
/// in the final graph of a run, reached from the run's input by moves.
struct FactorContext {
  std::shared_ptr<const FactorContext> parent;  // null for the top level
  bool whole = false;                 // the run's input itself
  std::vector<MapStep> run_forward;   // run input -> host
  std::shared_ptr<const Graph> host;  // graph the component lives in
  std::vector<std::string> vertices;  // component vertex names in host
  std::vector<std::string> edges;     // component edge names in host
  std::shared_ptr<const Graph> component;  // component, basepoint b_F
  std::vector<MapStep> local_forward;       // component -> factor graph
  std::shared_ptr<const Graph> factor;
};

struct Factor {
  Graph graph;  // marking: generators g1..gk of the factor
  AllowedFamily allowed;
  std::shared_ptr<const FactorContext> context;
  std::vector<MapStep> up;        // factor loops -> top-level loops
  std::vector<Path> collection;   // collection elements rewritten (conjugates)
  std::vector<int> collection_index;  // positions in the top-level collection

  /// Marking generators as top-level words.
  std::vector<GeneratorWord> embedded_generators() const;
};

struct FactorSystem {
  std::vector<Factor> factors;
  bool is_proper = true;
};

/// The whole input as a factor of itself.
Factor whole_factor(const Graph& g, const AllowedFamily& a,
                    const std::vector<Path>& collection);

/// Forward orientations of edges crossed by no axis, in name order.
std::vector<EdgeId> avoided_edge_orbits(const Graph& g,
                                        const std::vector<Path>& collection);

/// Factors of the complement of `avoided` in the final graph of a run on
/// `input`. The collection lives in g; `history` leads from input.graph to g.
FactorSystem extract_factor_system(const Graph& g, const AllowedFamily& a,
                                   const std::vector<EdgeId>& avoided,
                                   const std::vector<Path>& collection,
                                   const Factor& input,
                                   const std::vector<MoveRecord>& history);
/// Top-level convenience: g is its own run input.
FactorSystem extract_factor_system(const Graph& g, const AllowedFamily& a,
                                   const std::vector<EdgeId>& avoided,
                                   const std::vector<Path>& collection);

struct SimplicityResult {
  bool simple = false;
  bool by_classification = false;
  Classification classification;
  FactorSystem system;          // simple
  Graph certificate;            // not simple: final graph, no admissible cut
  AllowedFamily certificate_allowed;
  std::vector<Path> certificate_collection;
  std::vector<MoveRecord> history;  // input -> final graph
  Int total_length = 0;             // Σ‖g‖ in the working graph
  int initial_edges = 0;            // edges of the working graph before unfolding
  int max_edges = 0;
};

SimplicityResult check_simple(const Graph& g, const AllowedFamily& a,
                              const std::vector<Path>& collection);
/// Runs on a factor; extracted factors chain to it.
SimplicityResult check_simple(const Factor& input);

struct RecursionEdge {
  ComplexityTriple parent;
  ComplexityTriple child;
};

struct MinimalResult {
  FactorSystem system;
  std::vector<RecursionEdge> recursion;
  std::vector<FactorSystem> simple_outputs;  // every Simple system met
};

MinimalResult minimal_factor_system(const Graph& g, const AllowedFamily& a,
                                    const std::vector<Path>& collection);
MinimalResult minimal_factor_system(const Factor& input);

/// Loop in the factor graph conjugate to a top-level loop x, if x is
/// conjugate into the factor.
std::optional<Path> to_factor(const Path& x, const FactorContext& ctx);

/// Each factor of s1 is contained (generator by generator) in one factor of s2.
bool is_peripheral(const FactorSystem& s1, const FactorSystem& s2);

// Result text: SIMPLE / NOTSIMPLE, then documents.
std::string serialize_result(const Graph& top, const SimplicityResult& r);
std::string serialize_system(const Graph& top, const FactorSystem& s);

struct ParsedFactor {
  GraphDocument document;
  std::vector<std::pair<std::string, std::string>> embed;  // name, word text
};
struct ParsedResult {
  bool simple = false;
  std::vector<ParsedFactor> factors;  // certificate as the only entry if not simple
};
ParsedResult parse_result(std::string_view text);

}  // namespace gbs
