#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qvdb {

// One computational basis state of an n-qubit register, i.e. one stored or
// queried value. Bit convention: qubit j holds bit j of `value` (b0 least
// significant); display is MSB-first, so "101" has value 5 and qubit 0 set.
struct BasisKey {
  int width = 0;
  std::uint64_t value = 0;

  BasisKey() = default;
  BasisKey(int width, std::uint64_t value);

  // Parses an MSB-first bit string such as "101". Empty strings and
  // characters outside {0,1} are rejected.
  static BasisKey from_bits(std::string_view bits);

  std::string bits() const;
  bool bit(int qubit) const { return (value >> qubit) & 1u; }

  friend bool operator==(const BasisKey&, const BasisKey&) = default;
};

}  // namespace qvdb
