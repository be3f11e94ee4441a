#pragma once

// Randomized invariant checks shared by the property test binary and the
// acceptance runner. Each check runs a fixed number of seeded cases and
// reports the first counterexample it meets.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace commscore::testing {

struct PropertyOutcome {
  std::size_t cases = 0;
  std::optional<std::string> failure;

  bool passed() const noexcept { return !failure; }
};

struct Property {
  std::string name;
  std::function<PropertyOutcome(std::uint64_t seed)> check;
};

const std::vector<Property>& all_properties();

/// Runs the named property; throws std::out_of_range for unknown names.
PropertyOutcome run_property(const std::string& name, std::uint64_t seed = 20121001);

}  // namespace commscore::testing
