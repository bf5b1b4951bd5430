#pragma once

#include <span>
#include <vector>

#include "pcsamp/rational.hpp"

namespace pcsamp {

/// Piecewise constant function with finite support. Interval k is the
/// half-open [breakpoints[k], breakpoints[k+1]) carrying values[k]; the
/// function is zero outside [front, back).
class PiecewiseFunction {
public:
    PiecewiseFunction() = default;
    /// Throws std::invalid_argument unless breakpoints strictly increase and
    /// values.size() == breakpoints.size() - 1 (both empty is the zero function).
    PiecewiseFunction(std::vector<Rational> breakpoints, std::vector<Rational> values);

    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::vector<Rational>& values() const { return values_; }
    bool empty() const { return values_.empty(); }

    Rational operator()(const Rational& t) const;

    /// Same function with every position negated, t -> f(-t), keeping the
    /// half-open convention on the reflected intervals.
    PiecewiseFunction mirrored() const;

    friend bool operator==(const PiecewiseFunction&, const PiecewiseFunction&) = default;

private:
    std::vector<Rational> breakpoints_;
    std::vector<Rational> values_;
};

}  // namespace pcsamp
