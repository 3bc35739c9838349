#pragma once

#include <string>
#include <vector>

#include "bitrace/graph.hpp"
#include "bitrace/longest.hpp"

namespace bitrace {

struct Fixture {
  std::string name;
  Graph graph;
  int expected_length = 0;
  int expected_intersection = 0;
};

struct FixtureCheck {
  bool ok = false;
  int length = 0;
  Path p;
  Path q;
  int intersection = 0;
  bool distinct_sets = false;
  bool complement_connected = false;
  std::vector<std::string> problems;
};

// The 11-vertex graph with two longest paths whose 9-vertex intersection does not separate.
const Fixture& intro_fixture();

FixtureCheck check_fixture(const Fixture& f);

// Throws GraphError when the fixture fails its own assertions.
void require_fixture(const Fixture& f);

}  // namespace bitrace
