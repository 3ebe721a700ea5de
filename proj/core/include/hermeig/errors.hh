#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hermeig {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidSelection : public Error {
public:
    using Error::Error;
};

class BandViolation : public Error {
public:
    BandViolation(std::ptrdiff_t row, std::ptrdiff_t col, double magnitude, double threshold);
    std::ptrdiff_t row() const { return row_; }
    std::ptrdiff_t col() const { return col_; }

private:
    std::ptrdiff_t row_;
    std::ptrdiff_t col_;
};

/// Raised by the Cholesky factorization; `pivot_index` is 0-based.
class NotPositiveDefinite : public Error {
public:
    explicit NotPositiveDefinite(std::ptrdiff_t pivot_index);
    std::ptrdiff_t pivot_index() const { return pivot_; }

private:
    std::ptrdiff_t pivot_;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace hermeig
