#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fiberfrac/model.hpp"

namespace fiberfrac {

inline constexpr const char* kNetworkFormat = "fiberfrac-network";
inline constexpr int kNetworkFormatVersion = 1;

/// JSON text with sections `domain`, `sections`, `nodes`, `elements`, `bcs`
/// and `generation`. Doubles are written in shortest round-trip form, so
/// reading the text back reproduces the model exactly.
std::string network_to_json(const NetworkModel& model);

/// @throws FormatError on a malformed document or a version mismatch.
NetworkModel network_from_json(std::string_view text);

void write_network(const NetworkModel& model, const std::filesystem::path& path);
NetworkModel read_network(const std::filesystem::path& path);

}  // namespace fiberfrac
