/*
 * Copyright 2026 the orcu toolkit authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef ORCU_TEXT_HPP_
#define ORCU_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace orcu {

/// Locale-independent decimal rendering with 17 significant digits, enough
/// for every double to round-trip exactly through the text formats.
std::string format_double(double value);

/// Locale-independent parses; on failure they throw std::invalid_argument
/// prefixed with `context` (callers pass "file:line").
double parse_double(std::string_view token, const std::string& context);
long parse_long(std::string_view token, const std::string& context);

/// Splits one CSV record on commas. No quoting: none of the formats written
/// by this toolkit ever needs it.
std::vector<std::string_view> split_csv_line(std::string_view line);

}  // namespace orcu

#endif  // ORCU_TEXT_HPP_
