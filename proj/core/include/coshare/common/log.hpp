#pragma once

#include <spdlog/spdlog.h>

namespace coshare {

/// Library-wide logger (stderr). Quiet by default at warn level.
spdlog::logger& logger();

}  // namespace coshare
