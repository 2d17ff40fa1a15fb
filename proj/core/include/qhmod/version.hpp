#pragma once

namespace qhmod {
inline constexpr const char* version = "0.1.0";
}
