#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "bitrace/graph.hpp"
#include "bitrace/longest.hpp"

namespace bitrace {

struct Witness {
  std::string graph6;
  std::vector<Path> paths;
  std::string detail;
};

// Stats named min_* merge by minimum, max_* by maximum, everything else by sum.
struct SweepReport {
  std::string theorem;
  std::uint64_t graphs_scanned = 0;
  std::uint64_t graphs_skipped = 0;
  std::map<std::string, std::int64_t> stats;
  std::vector<Witness> counterexamples;
  std::vector<Witness> survivors;
  std::map<std::string, std::uint64_t> violations_by_theorem;
  double seconds = 0;

  bool passed() const { return counterexamples.empty(); }
  void bump(const std::string& key, std::int64_t by = 1) { stats[key] += by; }
  void record_min(const std::string& key, std::int64_t v);
  void record_max(const std::string& key, std::int64_t v);
  void violation(const std::string& kind, Witness w);
  void merge(const SweepReport& o);
};

nlohmann::json to_json(const SweepReport& r, bool with_timing = false);

// Worker count from BITRACE_WORKERS, else the hardware concurrency.
unsigned sweep_workers();

std::vector<Graph> read_graph6_stream(std::istream& in);

SweepReport verify_separator_theorem(const std::vector<Graph>& graphs, int ell_max);
SweepReport verify_hippchen(const std::vector<Graph>& graphs, int k);
SweepReport verify_three_paths(const std::vector<Graph>& graphs);
SweepReport verify_tables();

enum class Conjecture { CommonVertex, Hippchen };

// Graphs whose longest-path pairs all classify AllLNC or TD are skipped; a 1% sample is re-checked.
SweepReport search_counterexample(const std::vector<Graph>& graphs, Conjecture target, int k_or_bound);

}  // namespace bitrace
