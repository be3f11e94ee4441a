#include "commscore/address.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "commscore/error.hpp"

namespace commscore {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string extract_token(std::string_view raw) {
  const std::string_view s = trim(raw);

  // "Display Name <local@domain>": the last bracketed part wins.
  if (const auto open = s.rfind('<'); open != std::string_view::npos) {
    const auto close = s.find('>', open);
    if (close == std::string_view::npos)
      throw MalformedAddress(fmt::format("unterminated '<' in address '{}'", raw));
    return std::string(trim(s.substr(open + 1, close - open - 1)));
  }

  // "local@domain (Comment)" or bare address: pick the single token with '@'.
  std::string found;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    const auto token = s.substr(i, j - i);
    if (token.find('@') != std::string_view::npos) {
      if (!found.empty())
        throw MalformedAddress(fmt::format("ambiguous address '{}'", raw));
      found = token;
    }
    i = j;
  }
  return found;
}

}  // namespace

ActorId::ActorId(std::string_view raw) {
  if (trim(raw).empty()) throw MalformedAddress("empty address");
  std::string token = extract_token(raw);
  if (token.size() >= 7 && std::equal(token.begin(), token.begin() + 7, "mailto:",
                                      [](char a, char b) { return std::tolower(a) == b; }))
    token.erase(0, 7);

  const auto at = token.find('@');
  if (at == std::string::npos || at == 0 || at + 1 == token.size() ||
      token.find('@', at + 1) != std::string::npos)
    throw MalformedAddress(fmt::format("no local@domain token in '{}'", raw));
  for (const char c : token) {
    if (is_space(c) || c == '<' || c == '>' || c == ',' || c == ';' || c == '"')
      throw MalformedAddress(fmt::format("invalid character in address '{}'", raw));
  }
  std::transform(token.begin(), token.end(), token.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  address_ = std::move(token);
}

ActorId normalize_address(std::string_view raw) { return ActorId{raw}; }

std::vector<std::string> split_address_list(std::string_view list, std::string_view separators) {
  std::vector<std::string> out;
  std::string current;
  bool quoted = false;
  int angle = 0;
  auto flush = [&] {
    const auto item = trim(current);
    if (!item.empty()) out.emplace_back(item);
    current.clear();
  };
  for (const char c : list) {
    if (c == '"') {
      quoted = !quoted;
    } else if (!quoted && c == '<') {
      ++angle;
    } else if (!quoted && c == '>' && angle > 0) {
      --angle;
    } else if (!quoted && angle == 0 && separators.find(c) != std::string_view::npos) {
      flush();
      continue;
    }
    current.push_back(c);
  }
  flush();
  return out;
}

}  // namespace commscore
