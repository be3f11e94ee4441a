#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace commscore {

/// A normalized e-mail address identifying one actor: lowercase, no display
/// name, no angle brackets, no surrounding whitespace. Plus-addressing is
/// kept as-is. Distribution lists are single actors.
class ActorId {
 public:
  /// Normalizes `raw`; throws MalformedAddress when no local@domain token
  /// can be extracted.
  explicit ActorId(std::string_view raw);

  const std::string& str() const noexcept { return address_; }

  friend auto operator<=>(const ActorId&, const ActorId&) = default;
  friend bool operator==(const ActorId&, const ActorId&) = default;

 private:
  std::string address_;
};

ActorId normalize_address(std::string_view raw);

/// Splits an address list on any of `separators`, ignoring separators inside
/// double quotes or angle brackets. Empty items are dropped.
std::vector<std::string> split_address_list(std::string_view list, std::string_view separators);

}  // namespace commscore
