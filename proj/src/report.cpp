#include "sombrero/report.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace sombrero {

std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return res.ec == std::errc{} ? std::string(buf, res.ptr) : std::string("nan");
}

}  // namespace sombrero
