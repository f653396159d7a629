#pragma once

#include <stdexcept>
#include <string>

namespace cachediff {

// Base of every error the library throws. The CLI maps each subclass onto
// an exit code, so keep the hierarchy flat.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller asked for something malformed: k > n, foreign code characters, ...
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Request is well formed but exceeds a configured size limit.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A random source could not deliver a draw (scripted stream exhausted or
// holding a value outside the requested range).
class RngError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Input file changed between the counting pass and the extraction pass.
class RaceError : public IoError {
public:
    using IoError::IoError;
};

} // namespace cachediff
