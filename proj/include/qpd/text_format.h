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

#ifndef QPD_TEXT_FORMAT_H_
#define QPD_TEXT_FORMAT_H_

// Locale-independent number rendering for every file the library writes.

#include <string>
#include <string_view>
#include <vector>

namespace qpd::text {

// Shortest decimal that parses back to the same double.
std::string format_exact(double v);

// Fixed notation with 12 significant digits ("0.463647609001", "3.00000000000").
std::string format_fixed12(double v);

// Whole-string parse; throws InvalidArgument naming `what` on failure.
double parse_double(std::string_view s, std::string_view what = "number");

std::vector<std::string_view> split(std::string_view s, char delim);
std::string_view trim(std::string_view s);

}  // namespace qpd::text

#endif  // QPD_TEXT_FORMAT_H_
