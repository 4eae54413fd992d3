// Copyright 2026 The qpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpd/text_format.h"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "qpd/error.h"

namespace qpd::text {

std::string format_exact(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("format_exact: conversion failed");
  return std::string(buf.data(), end);
}

std::string format_fixed12(double v) {
  if (!std::isfinite(v)) return format_exact(v);
  int decimals = 11;
  std::array<char, 512> buf{};
  if (v != 0.0) {
    // The exponent after rounding to 12 digits, so 0.99999999999999 gives 0.
    auto [e_end, e_ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                       std::chars_format::scientific, 11);
    if (e_ec != std::errc()) throw Error("format_fixed12: conversion failed");
    const std::string sci(buf.data(), e_end);
    const int exponent = std::stoi(sci.substr(sci.find('e') + 1));
    decimals = std::max(0, 11 - exponent);
  }
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, decimals);
  if (ec != std::errc()) throw Error("format_fixed12: conversion failed");
  std::string out(buf.data(), end);
  // Rounding can yield "-0.000..."; render zero without a sign.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace qpd::text
