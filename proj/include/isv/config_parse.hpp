#pragma once

#include "isv/pipeline.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace isv {

/// Splits "a,b,c" (empty items are dropped).
std::vector<std::string> split_list(std::string_view s, char sep = ',');

/// Parses "<a>x<b>[x<c>...]" into exactly `count` positive integers.
/// Throws ConfigError(field, ...) on malformed input.
std::vector<std::size_t> parse_extent(std::string_view s, std::size_t count, const std::string& field);

std::vector<double> parse_number_list(std::string_view s, const std::string& field);

/// Sets one RunConfig field from its flag name (without dashes) and textual value.
/// Handles every flag that takes a value. Throws ConfigError for unknown keys or bad values.
void apply_option(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads "key = value" lines ('#' starts a comment; blank lines ignored). Keys are
/// flag names with or without leading dashes. Throws ConfigError("config", ...) for an
/// unreadable file or a line without '='.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Parses a boolean flag value: true/false, yes/no, on/off, 1/0.
bool parse_bool(std::string_view s, const std::string& field);

/// Sweep axes from comma-separated lists; an empty string leaves that axis empty
/// (meaning "use the base config's value").
SweepMatrix make_sweep_matrix(const RunConfig& base, const std::string& entropy, const std::string& colormaps,
                              const std::string& grids, const std::string& ne, const std::string& interp);

} // namespace isv
