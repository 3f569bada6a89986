#ifndef GRASSGEO_ERRORS_HPP
#define GRASSGEO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace grassgeo {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller violated an operation's precondition (bad argument, wrong shape,
/// non-hermitian input where a hermitian one is required, ...).
class InvalidInput : public Error {
public:
  explicit InvalidInput(const std::string& what) : Error(what) {}
};

/// An iterative kernel failed to converge within its iteration cap.
class NumericalFailure : public Error {
public:
  explicit NumericalFailure(const std::string& what) : Error(what) {}
};

/// Polar decomposition of a (numerically) singular matrix was requested.
class SingularInput : public Error {
public:
  explicit SingularInput(const std::string& what) : Error(what) {}
};

/// Cross section requested for projections at operator-norm distance >= 1.
class NotInSectionDomain : public Error {
public:
  explicit NotInSectionDomain(const std::string& what) : Error(what) {}
};

/// Two projections of different rank cannot lie on the same orbit.
class NotSameOrbit : public Error {
public:
  explicit NotSameOrbit(const std::string& what) : Error(what) {}
};

/// Malformed input file (JSON schema violation, non-finite entries, ...).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace grassgeo

#endif
