#pragma once

#include <optional>
#include <string_view>

namespace dfvm {

// interface-value selector for the frozen flux coefficients
enum class Scheme { CE, FU, IS };

inline std::optional<Scheme> parse_scheme(std::string_view s) {
  if (s == "ce") return Scheme::CE;
  if (s == "fu") return Scheme::FU;
  if (s == "is") return Scheme::IS;
  return std::nullopt;
}

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::CE: return "ce";
    case Scheme::FU: return "fu";
    case Scheme::IS: return "is";
  }
  return "?";
}

}  // namespace dfvm
