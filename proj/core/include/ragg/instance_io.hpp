#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ragg/aggregators.hpp"
#include "ragg/info_structure.hpp"

namespace ragg {

/// Instance files: {"n": int, "states": [{"prob": number,
/// "signals": [string, ...], "y": number}, ...]}. State order is preserved.
/// Malformed input throws kInvalidInput naming the offending field.
InfoStructure parse_instance(std::string_view json_text, ValidationOptions options = {});
InfoStructure load_instance(const std::filesystem::path& path, ValidationOptions options = {});

/// Canonical form: keys in the order above, two-space indent, shortest
/// round-trip number formatting, trailing newline.
std::string serialize_instance(const InfoStructure& info);
void save_instance(const std::filesystem::path& path, const InfoStructure& info);

/// Tabular strategy files: {"uses_prior": bool (optional),
/// "entries": [{"forecasts": [number, ...], "output": number}, ...],
/// "default": number (optional)}.
Strategy parse_tabular_strategy(std::string_view json_text);
Strategy load_tabular_strategy(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace ragg
