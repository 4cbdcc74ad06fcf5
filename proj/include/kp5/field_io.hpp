#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "kp5/field.hpp"

namespace kp5 {

/// KP5F binary layout (all little-endian):
///   "KP5F" | u32 version | u32 nx | u32 ny | f64 lx | f64 ly | f64 time |
///   nx*ny f64 physical samples, y outer, x inner.
inline constexpr std::uint32_t kDumpVersion = 1;

struct FieldDump {
  Field field;
  double time = 0.0;
};

std::vector<std::uint8_t> encode_dump(const Field& f, double time);
FieldDump decode_dump(const std::vector<std::uint8_t>& bytes);

void write_dump(const std::filesystem::path& path, const Field& f, double time);
FieldDump read_dump(const std::filesystem::path& path);

}  // namespace kp5
