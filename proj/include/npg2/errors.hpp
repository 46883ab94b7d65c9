#pragma once

#include <stdexcept>
#include <string>

namespace npg2 {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The 3-form fails the open admissibility conditions (f0 != 0, f1f4-f3^2 < 0, f2f3-f4^2 < 0).
class NonAdmissibleError : public Error {
public:
    using Error::Error;
};

// Input coefficients violate the arc-length normalization beyond tolerance.
class NotNormalizedError : public Error {
public:
    using Error::Error;
};

class NoAdmissibleRootError : public Error {
public:
    using Error::Error;
};

class DegenerateSeedError : public Error {
public:
    using Error::Error;
};

class OutOfDomainError : public Error {
public:
    using Error::Error;
};

class ZeroH0Error : public Error {
public:
    using Error::Error;
};

class ZeroAError : public Error {
public:
    using Error::Error;
};

class SingularRecurrenceError : public Error {
public:
    using Error::Error;
};

class InvalidConfigError : public Error {
public:
    using Error::Error;
};

class StartupFailureError : public Error {
public:
    using Error::Error;
};

class ConstraintViolatedError : public Error {
public:
    using Error::Error;
};

class NoDegenerationError : public Error {
public:
    using Error::Error;
};

class FitWindowError : public Error {
public:
    using Error::Error;
};

class InsufficientSamplesError : public Error {
public:
    using Error::Error;
};

class CsvFormatError : public Error {
public:
    using Error::Error;
};

} // namespace npg2
