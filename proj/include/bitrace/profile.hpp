#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bitrace/longest.hpp"

namespace bitrace {

// Values are 1-based: sigma[j-1] = sigma(j).
using Perm = std::vector<int>;

struct IntersectionProfile {
  int ell = 0;
  std::vector<int> a_seq;
  std::vector<int> b_seq;
  Perm sigma;
};

IntersectionProfile intersection_profile(const Path& p, const Path& q);

bool is_permutation(const Perm& s);
Perm identity_perm(int ell);
Perm inverse(const Perm& s);
Perm reverse_values(const Perm& s);     // rho o s
Perm reverse_positions(const Perm& s);  // s o rho
std::vector<Perm> orbit(const Perm& s);

std::string perm_to_string(const Perm& s);
Perm parse_perm(std::string_view text);

enum class TableConn { LNC, TD, Exceptional };
const char* to_string(TableConn c);

struct TableRow {
  int ell;
  int case_no;
  std::vector<Perm> perms;
  TableConn conn;
};

// Embedded reference tables for ell = 4 (7 rows) and ell = 5 (23 rows).
const std::vector<TableRow>& reference_table(int ell);
std::optional<int> lookup_case(const Perm& s);
bool is_exceptional_class(const Perm& s);

struct ConfigClass {
  int ell = 0;
  Perm canonical;
  std::vector<Perm> orbit;
  std::optional<int> table_case;
};

ConfigClass canonical_form(const Perm& s);
std::vector<ConfigClass> enumerate_classes(int ell);

}  // namespace bitrace
