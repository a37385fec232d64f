#pragma once

#include <stdexcept>
#include <string>

namespace uatk {

// Bad arguments: dimension mismatches, out-of-range parameters, malformed
// data. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A hypothesis of a construction is not met (e.g. a vanishing derivative of
// the activation at the chosen bias). Still an input problem.
class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

// A constructive procedure could not complete (unreachable level, resampling
// budget exhausted). Exit code 3.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical breakdown: quadrature did not converge, a rank test failed, or an
// algorithm hit a state its proof rules out. Exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A proven bound was exceeded by a measured quantity. Exit code 4.
class CertificateViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace uatk
