#pragma once

#include <stdexcept>
#include <string>

namespace mixopt {

/// A point claimed to lie in a hull does not.
class HullMembershipError : public std::invalid_argument {
 public:
  explicit HullMembershipError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// The supporting-hyperplane construction found neither a strictly positive
/// normal nor any separating nonnegative normal. For a Pareto input this
/// cannot happen, so it signals a violated premise or a bug.
class CertificateStall : public std::runtime_error {
 public:
  explicit CertificateStall(const std::string& what)
      : std::runtime_error(what) {}
};

/// No atom realizes the requested performance vector exactly.
class NoLiftFound : public std::runtime_error {
 public:
  explicit NoLiftFound(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration-based operation was asked to exceed its hard size cap.
class SizeLimitError : public std::invalid_argument {
 public:
  explicit SizeLimitError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// A property the underlying theory guarantees failed to hold at runtime.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what)
      : std::logic_error(what) {}
};

}  // namespace mixopt
