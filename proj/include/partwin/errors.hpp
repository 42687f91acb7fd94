#pragma once

#include <stdexcept>
#include <string>

namespace partwin {

// Exception hierarchy. Each leaf maps to a stable CLI exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept = 0;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

class VerifyMismatch : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class NumericGuard : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

class ResourceGuardrail : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
};

} // namespace partwin
