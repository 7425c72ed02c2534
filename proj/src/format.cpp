#include "cvtele/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace cvtele {

std::string format_number(double value)
{
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  if (value == 0.0)
    return "0";

  std::array<char, 64> buf{};
  std::string text;
  for (int precision = 1; precision <= 12; ++precision) {
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, precision);
    text.assign(buf.data(), res.ptr);
    double back = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    if (back == value)
      break;
  }
  return text;
}

} // namespace cvtele
