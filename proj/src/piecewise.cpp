#include "pcsamp/piecewise.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcsamp {

PiecewiseFunction::PiecewiseFunction(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() && values_.empty()) return;
    if (values_.size() + 1 != breakpoints_.size())
        throw std::invalid_argument("PiecewiseFunction: need one value per interval");
    for (std::size_t k = 1; k < breakpoints_.size(); ++k)
        if (!(breakpoints_[k - 1] < breakpoints_[k]))
            throw std::invalid_argument("PiecewiseFunction: breakpoints must strictly increase");
}

Rational PiecewiseFunction::operator()(const Rational& t) const {
    if (empty() || t < breakpoints_.front() || t >= breakpoints_.back()) return Rational(0);
    // First breakpoint strictly greater than t closes the interval holding t.
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

PiecewiseFunction PiecewiseFunction::mirrored() const {
    std::vector<Rational> bps;
    bps.reserve(breakpoints_.size());
    for (auto it = breakpoints_.rbegin(); it != breakpoints_.rend(); ++it) bps.push_back(-*it);
    return {std::move(bps), std::vector<Rational>(values_.rbegin(), values_.rend())};
}

}  // namespace pcsamp
