#pragma once

#include <stdexcept>
#include <string>

namespace rootcert {

/// Caller passed something outside an operation's domain (bad rank, wrong
/// space, vector not in the lattice, ...). Maps to CLI exit code 2.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// An internal computation contradicted a proven statement: a Cartan matrix
/// mismatch, a reduction that left its coset, a certificate that failed.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

/// A search or enumeration hit its configured cap. Maps to CLI exit code 3.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

class ArithmeticOverflow : public std::overflow_error {
 public:
  explicit ArithmeticOverflow(const std::string& what) : std::overflow_error(what) {}
};

}  // namespace rootcert
