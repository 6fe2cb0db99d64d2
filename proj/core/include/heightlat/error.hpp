#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace heightlat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Boundary data that admits no homomorphism extension.
class InfeasibleBoundary : public Error {
 public:
  using Error::Error;
};

/// Enumeration refused because a work ceiling was reached.
class DomainTooLarge : public Error {
 public:
  DomainTooLarge(const std::string& what, std::uint64_t bound)
      : Error(what), bound_(bound) {}
  std::uint64_t bound() const noexcept { return bound_; }

 private:
  std::uint64_t bound_;
};

class NotInterior : public Error {
 public:
  using Error::Error;
};

/// CFTP exceeded its epoch cap without coalescing.
class NoCoalescence : public Error {
 public:
  NoCoalescence(const std::string& what, std::int64_t max_epochs)
      : Error(what), max_epochs_(max_epochs) {}
  std::int64_t max_epochs() const noexcept { return max_epochs_; }

 private:
  std::int64_t max_epochs_;
};

class InvalidSwap : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

class BoundaryNotEven : public Error {
 public:
  using Error::Error;
};

class NotNested : public Error {
 public:
  using Error::Error;
};

class ParityMixedSupport : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (domain JSON, binary dump, experiment config).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace heightlat
