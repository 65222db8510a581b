// SPDX-License-Identifier: Apache-2.0
//
// JSON serialization of NetworkInstance and SolveReport. Reals are written
// with the shortest representation that parses back to the identical double,
// so a write/read cycle is bit-exact. Schema: docs/formats.md.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "noma/model.hpp"

namespace noma::io {

std::string to_json(const NetworkInstance& net, int indent = 2);
/// Throws std::invalid_argument for malformed JSON or an invalid instance.
NetworkInstance network_from_json(std::string_view text);

std::string to_json(const SolveReport& report, int indent = 2);
SolveReport report_from_json(std::string_view text);

/// Reads a whole file. Throws std::runtime_error on I/O failure.
std::string read_file(const std::filesystem::path& path);
/// Writes (truncating) a whole file. Throws std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace noma::io
