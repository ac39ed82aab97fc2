#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rba {

// Malformed or inconsistent input: shapes, dimensions, unparsable values.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The structure constants fail the Leibniz identity.
class InvalidAlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Representation maps fail one of the representation axioms.
class InvalidRepresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation that is only defined for relative Rota-Baxter operators
// received an operator that is not one.
class NotRotaBaxterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Refused because a configured size cap (degree, order, grid budget) would
// be exceeded. Carries the requested and the permitted size.
class CapExceededError : public std::runtime_error {
 public:
  CapExceededError(const std::string& what, std::size_t requested, std::size_t cap)
      : std::runtime_error(what + " (requested " + std::to_string(requested) +
                           ", cap " + std::to_string(cap) + ")"),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

}  // namespace rba
