#pragma once

#include <initializer_list>
#include <vector>

#include "avq/poly.hpp"

namespace avq::test {

// Coefficients lowest degree first.
inline IntPoly ip(std::initializer_list<long> c) {
  std::vector<Int> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(std::move(v));
}

inline RatPoly rp(std::initializer_list<long> c) { return to_rat(ip(c)); }

}  // namespace avq::test
