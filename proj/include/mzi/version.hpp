#pragma once

namespace mzi {

inline constexpr const char* kVersion = "1.0.0";

}
