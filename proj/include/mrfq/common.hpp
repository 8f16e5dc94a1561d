#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mrfq {

using real = double;
using cplx = std::complex<double>;

// Images are indexed (row, col) = (y, x).
using RealImage = Eigen::ArrayXXd;
using ComplexImage = Eigen::ArrayXXcd;
using BoolImage = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Bad user-supplied configuration (CLI exit code 2).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure inside a solver (CLI exit code 3).
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& msg, long iteration = -1)
        : std::runtime_error(iteration >= 0 ? msg + " (iteration " + std::to_string(iteration) + ")"
                                            : msg),
          iteration_(iteration) {}
    long iteration() const { return iteration_; }

private:
    long iteration_;
};

/// Malformed or incompatible on-disk data (CLI exit code 4).
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Signal with zero norm where a direction is required.
class degenerate_signal_error : public std::runtime_error {
public:
    explicit degenerate_signal_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Training set cannot support induction (e.g. single-class input).
class training_error : public std::runtime_error {
public:
    explicit training_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Caller broke a documented precondition (e.g. unnormalized matcher input).
class contract_violation : public std::logic_error {
public:
    explicit contract_violation(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace mrfq
