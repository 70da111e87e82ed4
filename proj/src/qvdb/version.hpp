#pragma once

namespace qvdb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qvdb
