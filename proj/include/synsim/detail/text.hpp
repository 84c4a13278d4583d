// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#pragma once

#include <string>
#include <string_view>

namespace synsim::detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

// ASCII-range lowercasing; non-ASCII bytes pass through unchanged.
inline std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

}  // namespace synsim::detail
