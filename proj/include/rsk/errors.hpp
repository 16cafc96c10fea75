#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rsk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands belong to structurally different groups.
struct SpecMismatchError : Error {
  using Error::Error;
};

struct InvalidParameterError : Error {
  using Error::Error;
};

// Exact integer arithmetic left the 64-bit range.
struct ArithmeticOverflowError : Error {
  using Error::Error;
};

// Input JSON does not match the documented schemas.
struct SchemaError : Error {
  using Error::Error;
};

struct SearchStats {
  std::uint64_t elements_visited = 0;
  std::uint64_t max_frontier = 0;
  double wall_seconds = 0.0;
};

// A search or construction hit a hard resource cap. Distinct from a
// not-found-within-bound verdict: the cap means the bound was not fully
// explored.
class ResourceLimitError : public Error {
 public:
  explicit ResourceLimitError(const std::string& what, SearchStats stats = {})
      : Error(what), stats_(stats) {}
  const SearchStats& stats() const noexcept { return stats_; }

 private:
  SearchStats stats_;
};

// Witness word does not evaluate to the bundle's target section coordinates.
struct MalformedWitnessError : Error {
  using Error::Error;
};

// Witness word evaluates to the target section coordinates but its letters do
// not trace a valid path.
struct InternalConsistencyError : Error {
  using Error::Error;
};

}  // namespace rsk
