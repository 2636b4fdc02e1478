#pragma once

namespace qmetro {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qmetro
