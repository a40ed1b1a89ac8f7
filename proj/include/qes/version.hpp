#pragma once

namespace qes {

inline constexpr char const* kToolVersion = "1.0.0";

} // namespace qes
