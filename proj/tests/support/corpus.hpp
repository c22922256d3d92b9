#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gbs/factors.hpp"

namespace gbs::testing {

struct Instance {
  Graph graph;
  AllowedFamily allowed;
  std::vector<Path> collection;
  std::string describe() const;
};

/// GBS_SEED from the environment, or `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

struct CorpusOptions {
  int max_vertices = 3;
  int max_edges = 4;
  Int max_label = 5;
  int max_syllables = 12;
  int max_words = 2;
  bool allow_negative = true;
  Int max_label_product = 0;  // 0: no limit
};

Graph random_graph(std::mt19937_64& rng, const CorpusOptions& o);
/// Random loop at the basepoint with at most o.max_syllables syllables.
Path random_loop(std::mt19937_64& rng, const Graph& g, const CorpusOptions& o);
/// Instances with a nonempty loxodromic collection.
std::vector<Instance> random_corpus(std::uint64_t seed, int count,
                                    const CorpusOptions& o = {});

/// Syllable count: nonzero powers plus edge letters.
int syllables(const Path& p);

/// Translation lengths of the marking generators, their pairwise products and
/// quotients, and the given extra loops.
std::vector<Int> length_spectrum(const Graph& g,
                                 const std::vector<Path>& extra = {});

}  // namespace gbs::testing
