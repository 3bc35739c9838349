#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"

#include "bitrace/profile.hpp"

using namespace bitrace;

namespace {

// Orbit count by closing each permutation under the three generating involutions.
int orbit_count_oracle(int ell) {
  Perm s(ell);
  std::iota(s.begin(), s.end(), 1);
  std::set<Perm> seen;
  int classes = 0;
  do {
    if (seen.count(s)) continue;
    ++classes;
    std::vector<Perm> stack{s};
    seen.insert(s);
    while (!stack.empty()) {
      Perm t = stack.back();
      stack.pop_back();
      Perm inv(ell), rv(ell), rp(t.rbegin(), t.rend());
      for (int j = 0; j < ell; ++j) {
        inv[t[j] - 1] = j + 1;
        rv[j] = ell + 1 - t[j];
      }
      for (Perm* u : {&inv, &rv, &rp})
        if (seen.insert(*u).second) stack.push_back(*u);
    }
  } while (std::next_permutation(s.begin(), s.end()));
  return classes;
}

}  // namespace

TEST_SUITE("profile") {
  TEST_CASE("class counts") {
    const int frozen[] = {1, 1, 2, 7, 23, 115, 694, 5282};
    for (int ell = 1; ell <= 8; ++ell) {
      CAPTURE(ell);
      int got = static_cast<int>(enumerate_classes(ell).size());
      CHECK(got == frozen[ell - 1]);
      if (ell <= 7) CHECK(got == orbit_count_oracle(ell));
    }
    CHECK_THROWS_AS(enumerate_classes(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_classes(9), std::invalid_argument);
  }

  TEST_CASE("orbits are closed and partition the permutations") {
    for (int ell = 1; ell <= 6; ++ell) {
      std::set<Perm> covered;
      std::size_t total = 0;
      for (const auto& c : enumerate_classes(ell)) {
        CHECK(c.canonical == c.orbit.front());
        for (const Perm& s : c.orbit) {
          CHECK(orbit(s) == c.orbit);
          CHECK(std::find(c.orbit.begin(), c.orbit.end(), inverse(s)) != c.orbit.end());
          CHECK(std::find(c.orbit.begin(), c.orbit.end(), reverse_values(s)) != c.orbit.end());
          CHECK(std::find(c.orbit.begin(), c.orbit.end(), reverse_positions(s)) != c.orbit.end());
        }
        covered.insert(c.orbit.begin(), c.orbit.end());
        total += c.orbit.size();
        CHECK(c.orbit.size() <= 8);
      }
      CHECK(total == covered.size());
      std::size_t fact = 1;
      for (int i = 2; i <= ell; ++i) fact *= i;
      CHECK(covered.size() == fact);
    }
  }

  TEST_CASE("reference tables equal the enumerated orbits") {
    for (int ell : {4, 5}) {
      std::set<std::set<Perm>> tab, got;
      std::set<Perm> all;
      for (const auto& row : reference_table(ell)) {
        tab.insert(std::set<Perm>(row.perms.begin(), row.perms.end()));
        all.insert(row.perms.begin(), row.perms.end());
      }
      for (const auto& c : enumerate_classes(ell)) got.insert(std::set<Perm>(c.orbit.begin(), c.orbit.end()));
      CHECK(tab == got);
      CHECK(all.size() == (ell == 4 ? 24u : 120u));
    }
    CHECK(reference_table(4).size() == 7);
    CHECK(reference_table(5).size() == 23);
    CHECK(reference_table(6).empty());
  }

  TEST_CASE("case lookup") {
    CHECK(lookup_case({2, 4, 1, 3}) == 7);
    CHECK(lookup_case({3, 1, 4, 2}) == 7);
    CHECK(lookup_case({2, 1, 4, 3}) == 6);
    CHECK(lookup_case({1, 3, 2, 5, 4}) == 6);
    CHECK(lookup_case({2, 5, 3, 1, 4}) == 23);
    CHECK_FALSE(lookup_case({1, 2, 3}).has_value());
    CHECK(is_exceptional_class({1, 4, 5, 2, 3}));
    CHECK(is_exceptional_class({1, 4, 5, 3, 2}));
    CHECK_FALSE(is_exceptional_class({2, 4, 1, 5, 3}));
    CHECK_FALSE(is_exceptional_class({2, 1, 4, 3}));
    for (const auto& row : reference_table(5)) {
      bool x = row.conn == TableConn::Exceptional;
      CHECK(x == (row.case_no == 6 || row.case_no == 13 || row.case_no == 14));
      for (const Perm& s : row.perms) CHECK(is_exceptional_class(s) == x);
    }
    CHECK(canonical_form({3, 1, 4, 2}).table_case == 7);
  }

  TEST_CASE("permutation helpers") {
    CHECK(parse_perm("2413") == Perm{2, 4, 1, 3});
    CHECK(parse_perm("(2,4,1,3)") == Perm{2, 4, 1, 3});
    CHECK(parse_perm("2 4 1 3") == Perm{2, 4, 1, 3});
    CHECK(parse_perm("(10,1,2,3,4,5,6,7,8,9)").front() == 10);
    CHECK_THROWS_AS(parse_perm("2x13"), std::invalid_argument);
    CHECK_THROWS_AS(parse_perm("2213"), std::invalid_argument);
    CHECK_THROWS_AS(parse_perm(""), std::invalid_argument);
    CHECK(perm_to_string({1, 3, 2}) == "(1,3,2)");
    CHECK(inverse({2, 4, 1, 3}) == Perm{3, 1, 4, 2});
    CHECK(reverse_values({2, 4, 1, 3}) == Perm{3, 1, 4, 2});
    CHECK(reverse_positions({2, 4, 1, 3}) == Perm{3, 1, 4, 2});
    CHECK(is_permutation(identity_perm(6)));
    CHECK_FALSE(is_permutation({0, 1}));
  }

  TEST_CASE("intersection profile") {
    Path p{0, 1, 2, 3, 4};
    Path q{5, 3, 1, 6, 4, 0};
    IntersectionProfile ip = intersection_profile(p, q);
    CHECK(ip.ell == 4);
    CHECK(ip.a_seq == std::vector<int>{0, 1, 3, 4});
    CHECK(ip.b_seq == std::vector<int>{3, 1, 4, 0});
    CHECK(ip.sigma == Perm{3, 2, 4, 1});
    CHECK_THROWS_AS(intersection_profile({0, 1}, {2, 3}), std::invalid_argument);
  }
}
