#pragma once

namespace qmeta {

inline constexpr const char* kVersion = "qmeta/0.1.0";

}  // namespace qmeta
