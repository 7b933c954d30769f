#pragma once

#include <stdexcept>
#include <string>

namespace kratzer {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the inputs does not hold (negative mass, r <= 0, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// lambda lies within the guard band of a pole of the closed-form matrix elements.
class NearSingularLambda : public Error {
public:
    NearSingularLambda(double lambda, double pole)
        : Error("lambda = " + std::to_string(lambda) + " is within the guard band of the pole at "
                + std::to_string(pole)),
          lambda_(lambda), pole_(pole) {}

    double lambda() const noexcept { return lambda_; }
    double pole() const noexcept { return pole_; }

private:
    double lambda_;
    double pole_;
};

/// An integral did not reach the requested tolerance; carries the best estimate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double estimate, double error)
        : Error(what), estimate_(estimate), error_(error) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

/// The ODE integrator's step size collapsed.
class StiffnessError : public Error {
public:
    using Error::Error;
};

/// A parameter map hits one of its poles.
class PoleError : public Error {
public:
    using Error::Error;
};

/// The experimental zero-point energy does not exceed the theoretical one.
class NoPositiveGap : public Error {
public:
    explicit NoPositiveGap(double delta_cm1)
        : Error("no positive gap between experimental and theoretical zero-point energy (delta = "
                + std::to_string(delta_cm1) + " cm-1)"),
          delta_(delta_cm1) {}

    double delta() const noexcept { return delta_; }

private:
    double delta_;
};

/// Malformed input file; line is 1-based, 0 when not attributable to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace kratzer
