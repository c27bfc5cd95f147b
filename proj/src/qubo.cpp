#include "sat2qubo/qubo.hpp"

namespace sat2qubo {

std::string to_bitstring(std::span<const std::uint8_t> x) {
  std::string s;
  s.reserve(x.size());
  for (auto b : x) s.push_back(b ? '1' : '0');
  return s;
}

BitVector from_bitstring(std::string_view s) {
  BitVector x;
  x.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw ParseError("bit string may only contain '0' and '1'");
    x.push_back(c == '1' ? 1 : 0);
  }
  return x;
}

}  // namespace sat2qubo
