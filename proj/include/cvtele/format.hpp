#pragma once

#include <string>

namespace cvtele {

//! Shortest decimal string that reads back to `value`, capped at 12
//! significant digits. Infinities print as "inf"/"-inf", NaN as "nan".
std::string format_number(double value);

} // namespace cvtele
