#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gbs {

using Int = std::int64_t;
// Exponents of vertex generators in words. Normal forms in BS(1,n)-like
// groups grow like n^length, so these are unbounded.
using Power = boost::multiprecision::cpp_int;

struct VertexId {
  int index = -1;
  auto operator<=>(const VertexId&) const = default;
};

// Oriented edge: unoriented edge k has orientations 2k (as written in the
// file) and 2k+1 (the reversal, written `~name`).
struct EdgeId {
  int index = -1;
  auto operator<=>(const EdgeId&) const = default;

  EdgeId reversed() const { return EdgeId{index ^ 1}; }
  int unoriented() const { return index >> 1; }
  bool is_reversed() const { return (index & 1) != 0; }
};

// Malformed input: bad syntax, dangling names, invalid paths.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input on which an operation is undefined (elliptic element
// handed to the simplicity check, non-collapsible edge, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal invariant. Never expected on valid input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Checked integer helpers. Labels and exponents are small in practice but
// label products grow under repeated moves.
Int checked_mul(Int a, Int b);
Int checked_add(Int a, Int b);
Int floor_mod(Int a, Int m);  // m > 0, result in [0, m)
Int gcd(Int a, Int b);        // non-negative
Int lcm(Int a, Int b);        // non-negative
Int floor_mod(const Power& a, Int m);
/// DomainError if p does not fit in Int.
Int to_int(const Power& p);

}  // namespace gbs
