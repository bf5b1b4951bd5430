#pragma once

#include <stdexcept>
#include <string>

namespace pcsamp {

enum class SpecViolation { Amplitude, Region, Genericity };

const char* to_string(SpecViolation v);

/// Raised when a signal description breaks one of the model invariants.
/// For genericity failures `i` and `K` locate the offending run of
/// fractional parts f_i..f_{i+K}; otherwise `i` is the offending region.
class SpecError : public std::invalid_argument {
public:
    SpecError(SpecViolation kind, int i, int K, const std::string& detail);

    SpecViolation kind() const { return kind_; }
    int i() const { return i_; }
    int K() const { return K_; }

private:
    SpecViolation kind_;
    int i_;
    int K_;
};

/// Observed patterns cannot come from any admissible signal: some
/// cumulative count takes more than two values, or two non-adjacent ones.
class InconsistentObservations : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The full-pattern estimator was handed a model with 2T uncertainties.
class PartialObservations : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Spacing constraints admit no discontinuity placement.
class EmptyFeasibleSet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pcsamp
