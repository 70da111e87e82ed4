#include "qvdb/key.hpp"

#include <stdexcept>

namespace qvdb {

namespace {
constexpr int kMaxKeyWidth = 63;
}

BasisKey::BasisKey(int width_, std::uint64_t value_)
    : width(width_), value(value_) {
  if (width < 1 || width > kMaxKeyWidth)
    throw std::invalid_argument("key width must be in [1, 63], got " +
                                std::to_string(width));
  if (width < kMaxKeyWidth && value >> width)
    throw std::invalid_argument("key value " + std::to_string(value) +
                                " does not fit in " + std::to_string(width) +
                                " bits");
}

BasisKey BasisKey::from_bits(std::string_view bits) {
  if (bits.empty()) throw std::invalid_argument("empty key");
  if (bits.size() > kMaxKeyWidth)
    throw std::invalid_argument("key \"" + std::string(bits) + "\" is too long");
  std::uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("key \"" + std::string(bits) +
                                  "\" contains characters outside {0,1}");
    value = (value << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return BasisKey(static_cast<int>(bits.size()), value);
}

std::string BasisKey::bits() const {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int q = 0; q < width; ++q)
    if (bit(q)) out[static_cast<std::size_t>(width - 1 - q)] = '1';
  return out;
}

}  // namespace qvdb
