#pragma once

#include <string>

namespace sombrero {

/// Locale-independent decimal with 17 significant digits (lossless round trip).
std::string format_real(double x);

}  // namespace sombrero
