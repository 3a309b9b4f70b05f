#pragma once

#include <string>

namespace alexgeo {

// Shortest round-trippable decimal form; "nan"/"inf" spelled out.
std::string num(double x);

}  // namespace alexgeo

namespace alexgeo {

// Angle literal: "1.25", "pi", "3pi/2", "3*pi/4", "-pi/8". Throws ParseError.
double parse_angle(const std::string& text);

}  // namespace alexgeo
