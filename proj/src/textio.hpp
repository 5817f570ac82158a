// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dpmsr {

// Locale-independent numeric text (std::to_chars / std::from_chars).
// Doubles use the shortest representation that round-trips.
std::string formatDouble(double v);
std::string formatInt(long long v);
std::string formatU64(uint64_t v);

double parseDouble(std::string_view text);  // throws std::invalid_argument
long long parseInt(std::string_view text);
uint64_t parseU64(std::string_view text);

std::vector<std::string> splitWhitespace(std::string_view line);
std::string trimCopy(std::string_view s);

}  // namespace dpmsr
