#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bitrace/bt.hpp"

namespace bitrace {

// A third path R leaving the representation at x and y. Interior length r_length >= 1.
struct Attachment {
  int x = -1;
  int y = -1;
  long long r_length = 1;
};

enum class PairStatus { AdjacentNDC, ExtremalNDC, NdcByOracle, LNC, WNDC, NotClassified };
const char* to_string(PairStatus s);
bool is_ndc(PairStatus s);

// Two vertex-disjoint paths, one starting at x and one at y.
struct HalfPair {
  Path from_x;
  Path from_y;
  EdgeSet x_edges = 0;
  EdgeSet y_edges = 0;
};

// P-hat = from_x + R + from_y for each half pair; the union of both covers the target edges.
struct Certificate {
  int x = -1;
  int y = -1;
  HalfPair first;
  HalfPair second;
  long long p_hat = 0;  // lengths with R of the attachment's length
  long long q_hat = 0;
  long long rhs = 0;    // L(P) + L(Q) + 2 L(R)
};

struct PairVerdict {
  int X = -1;
  int Y = -1;
  PairStatus status = PairStatus::NotClassified;
  bool ndc = false;  // status of the direct NDC route, independent of LNC
  std::vector<Certificate> evidence;
  std::vector<std::string> transcript;
  std::string note;
};

// Concrete check at the given edge weights (empty: all 1) and attachment. An edge of weight w stands for
// a chain of w edges; with inner_ends the paths may also stop inside a chain, matching the subdivided graph.
struct OracleResult {
  bool ndc = false;
  long long best_disjoint = 0;  // max w(X1) + w(Y1)
  long long longest_bt = 0;
  long long p_hat = 0;
  long long q_hat = 0;
  long long rhs = 0;
  HalfPair witness;
};

OracleResult ndc_oracle_weighted(const BtRep& bt, const Attachment& att, const std::vector<long long>& weights,
                                 bool inner_ends = true);
bool ndc_oracle(const BtRep& bt, const Attachment& att);

// Lexicographically smallest cover of all edges by two disjoint half pairs from x and y.
std::optional<Certificate> cover_certificate(const BtRep& bt, int x, int y);

// Decides, without witnesses, whether NDC holds for every choice of positive edge lengths and a
// sufficiently long R, with paths ending at vertices of bt. A violation comes with integer lengths
// checked by ndc_oracle_weighted without inner ends.
struct GenericNdcResult {
  bool ndc = false;
  std::string optimum;           // packing optimum over disjoint pairs, NDC iff <= 2
  std::string extended_optimum;  // same with one partial edge per free end, as in the subdivided graph
  std::vector<long long> violating_weights;
  long long r_length = 0;
  bool confirmed = false;  // dual certificate or concrete violation verified
};

GenericNdcResult generic_ndc(const BtRep& bt, int x, int y);

bool components_adjacent(const BtRep& bt, int X, int Y);

// Direct NDC route for a pair of differently colored nonempty components.
PairVerdict ndc_pair(const BtRep& bt, int X, int Y);

struct LncWitness {
  int x = -1;
  int y = -1;
  HalfPair first;
  HalfPair second;
  long long lhs = 0;
  long long rhs = 0;
};

struct LncResult {
  bool ok = false;
  std::vector<LncWitness> witnesses;
  int fail_x = -1;
  int fail_y = -1;
};

LncResult find_lnc_witness(const BtRep& bt, const BlockTree& tree, int block, int X, int Y);

PairVerdict nc_check(const BtRep& bt, const BlockTree& tree, int X, int Y);

// Disjoint half pair plus a simple x-y path covering every edge.
bool wndc(const BtRep& bt, int x, int y);
bool wd_check(const BtRep& bt, int X, int Y);

enum class BtVerdict { AllLNC, TD, WD, Exceptional, Mixed };
const char* to_string(BtVerdict v);

struct BtClassification {
  BtVerdict verdict = BtVerdict::Mixed;
  BlockTree tree;
  std::vector<PairVerdict> pairs;
  std::vector<std::pair<int, int>> lnc_failures;
  std::vector<std::pair<int, int>> ndc_failures;
};

// With pair_details false, pair-level work stops once the verdict is known.
BtClassification classify_bt(const BtRep& bt, bool pair_details = true);

// Components a third longest path may touch, given that P and Q stay longest.
struct TouchReport {
  bool applicable = false;  // false for AllLNC and TD representations
  std::vector<std::pair<int, int>> admissible;
  std::vector<std::pair<int, int>> discarded;
  std::vector<std::vector<std::pair<int, int>>> maximal_sets;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> jointly_excluded;
  int max_cross_pairs = 0;
  bool truncated = false;
  bool excluded = true;  // no admissible touch pattern has two cross-color pairs
};

TouchReport third_path_touch_filter(const BtRep& bt);

nlohmann::json to_json(const BtRep& bt, const Certificate& c);
nlohmann::json to_json(const BtRep& bt, const PairVerdict& v);
nlohmann::json to_json(const BtRep& bt, const BtClassification& c);
nlohmann::json to_json(const BtRep& bt, const TouchReport& r);

}  // namespace bitrace
