#pragma once

#include <string>

#include "wzlab/rate.hpp"

namespace wzlab {

/// Static log-log scatter of (delta, error) with the fitted power law drawn
/// through it. Returns the SVG document as a string.
std::string loglog_svg(const ErrorCurve& curve, const RateFit& fit, const std::string& title);

}  // namespace wzlab
