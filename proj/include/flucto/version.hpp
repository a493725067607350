#pragma once

namespace flucto {

inline constexpr const char* kVersion = "0.1.0";

}
