#ifndef BIGACT_ERRORS_HPP
#define BIGACT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bigact {

// Bad input: invalid parameters, precision bounds, count mismatches.
class ParameterError : public std::invalid_argument {
public:
  explicit ParameterError(const std::string &what) : std::invalid_argument(what) {}
};

// A mathematical identity that must hold exactly did not.
class IntegrityError : public std::runtime_error {
public:
  explicit IntegrityError(const std::string &what) : std::runtime_error(what) {}
};

// Input outside what an operation supports (wrong generators, non-triangular endo, ...).
class UnsupportedError : public std::runtime_error {
public:
  explicit UnsupportedError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace bigact

#endif
