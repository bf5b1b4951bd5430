#pragma once

#include <vector>

#include "pcsamp/errors.hpp"
#include "pcsamp/piecewise.hpp"
#include "pcsamp/rational.hpp"

namespace pcsamp {

/// One constant piece of the signal: amplitude g, length (n - f) grid
/// intervals.
struct Region {
    Rational g;
    int n = 2;
    Rational f;
};

/// Spatially limited piecewise constant signal. Positions and lengths are in
/// units of the grid interval; `T` is the physical grid interval and only
/// scales reported values.
///
/// Region indices are 1-based throughout the library (region(1) .. region(m)),
/// discontinuity indices run 0..m with discontinuity i at the right end of
/// region i.
struct SignalSpec {
    Rational T{1};
    std::vector<Region> regions;

    int m() const { return static_cast<int>(regions.size()); }
    const Region& region(int i) const { return regions.at(static_cast<std::size_t>(i - 1)); }
    /// R_i / T = n_i - f_i.
    Rational length(int i) const { return region(i).n - region(i).f; }

    /// Same signal traversed right to left.
    SignalSpec reversed() const;
};

/// Signal amplitudes padded with the implied zeros: level(0) = level(m+1) = 0.
class Levels {
public:
    Levels() = default;
    explicit Levels(std::vector<Rational> g);
    explicit Levels(const SignalSpec& spec);

    int m() const { return static_cast<int>(padded_.size()) - 2; }
    /// g_i for i in [0, m+1].
    const Rational& operator[](int i) const { return padded_.at(static_cast<std::size_t>(i)); }
    /// Signed jump g_k - g_{k+1} across discontinuity k, k in [0, m].
    Rational jump(int k) const { return (*this)[k] - (*this)[k + 1]; }
    Rational midpoint(int k) const { return ((*this)[k] + (*this)[k + 1]) / 2; }

    Levels reversed() const;

private:
    std::vector<Rational> padded_;
};

/// Checks amplitude, region and genericity invariants and returns the spec
/// unchanged. Throws SpecError naming the first violation found.
SignalSpec validate_spec(const SignalSpec& raw);

/// Discontinuity positions D_0 .. D_m of the translation that pins
/// discontinuity `l` at zero.
struct Translation {
    int l = 0;
    std::vector<Rational> D;
};

Translation translate(const SignalSpec& spec, int l);

/// g^(l): the signal shifted so that discontinuity l sits at t = 0.
PiecewiseFunction truth_function(const SignalSpec& spec, int l);

/// Piecewise constant signal with the given levels and discontinuity
/// positions. Regions of zero length (possible on the closure of a feasible
/// box) are dropped. Positions must be non-decreasing.
PiecewiseFunction signal_from_positions(const Levels& levels, const std::vector<Rational>& D);

}  // namespace pcsamp
