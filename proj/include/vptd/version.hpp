#pragma once

namespace vptd {

inline constexpr const char* version = "0.1.0";

}
