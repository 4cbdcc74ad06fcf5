#include "kp5/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "kp5/errors.hpp"

namespace kp5 {
namespace {

template <typename U>
void put_le(std::vector<std::uint8_t>& out, U value) {
  for (std::size_t b = 0; b < sizeof(U); ++b) out.push_back(static_cast<std::uint8_t>(value >> (8 * b)));
}

template <typename U>
U get_le(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  if (pos + sizeof(U) > in.size()) throw FormatError("KP5F dump truncated");
  U value = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) value |= static_cast<U>(in[pos + b]) << (8 * b);
  pos += sizeof(U);
  return value;
}

void put_f64(std::vector<std::uint8_t>& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

double get_f64(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  return std::bit_cast<double>(get_le<std::uint64_t>(in, pos));
}

}  // namespace

std::vector<std::uint8_t> encode_dump(const Field& f, double time) {
  const SpectralGrid& g = f.grid();
  std::vector<std::uint8_t> out;
  out.reserve(40 + 8 * g.size());
  for (char c : {'K', 'P', '5', 'F'}) out.push_back(static_cast<std::uint8_t>(c));
  put_le<std::uint32_t>(out, kDumpVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.ny()));
  put_f64(out, g.lx());
  put_f64(out, g.ly());
  put_f64(out, time);
  for (double v : f.physical()) put_f64(out, v);
  return out;
}

FieldDump decode_dump(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "KP5F", 4) != 0) throw FormatError("missing KP5F magic");
  std::size_t pos = 4;
  const auto version = get_le<std::uint32_t>(bytes, pos);
  if (version != kDumpVersion) throw FormatError("unsupported KP5F version " + std::to_string(version));
  const auto nx = get_le<std::uint32_t>(bytes, pos);
  const auto ny = get_le<std::uint32_t>(bytes, pos);
  const double lx = get_f64(bytes, pos);
  const double ly = get_f64(bytes, pos);
  const double time = get_f64(bytes, pos);
  if (nx > (1u << 20) || ny > (1u << 20)) throw FormatError("KP5F dimensions out of range");
  const std::size_t count = static_cast<std::size_t>(nx) * ny;
  if (bytes.size() != pos + 8 * count) throw FormatError("KP5F payload size does not match nx*ny");
  SpectralGrid grid = [&] {
    try {
      return make_grid(static_cast<int>(nx), static_cast<int>(ny), lx, ly);
    } catch (const SpecError& e) {
      throw FormatError(std::string("KP5F header describes an invalid grid: ") + e.what());
    }
  }();
  std::vector<double> samples(count);
  for (auto& s : samples) s = get_f64(bytes, pos);
  return {Field::from_physical(grid, samples), time};
}

void write_dump(const std::filesystem::path& path, const Field& f, double time) {
  const auto bytes = encode_dump(f, time);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

FieldDump read_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_dump(bytes);
}

}  // namespace kp5
