#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bitrace::detail {

using Rational = boost::multiprecision::cpp_rational;

// max sum z_e subject to sum_{e in A} z_e <= 1 for each row A, z >= 0.
struct PackingLp {
  bool unbounded = false;
  Rational optimum;
  std::vector<Rational> primal;  // one per column
  std::vector<Rational> dual;    // one per row
};

PackingLp solve_packing(const std::vector<std::uint64_t>& rows, int columns);

}  // namespace bitrace::detail
