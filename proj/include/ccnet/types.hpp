#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ccnet {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Bad argument shape or value (unit-modulus, window, dimension).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (z = 0, rt = 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical routine did not meet its accuracy contract.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kUnitTolerance = 1e-12;

inline bool is_unit(cplx v, double tol = kUnitTolerance) { return std::abs(std::abs(v) - 1.0) <= tol; }

}  // namespace ccnet
