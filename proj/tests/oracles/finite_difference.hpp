#pragma once

#include <functional>

namespace oracle {

/// (f(h) − f(−h)) / 2h for a scalar function of one step parameter.
inline double central(const std::function<double(double)>& f, double h) { return (f(h) - f(-h)) / (2.0 * h); }

}  // namespace oracle
