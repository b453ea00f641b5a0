#include "prh/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace prh {

namespace {

constexpr char kMagic[4] = {'P', 'R', 'H', 'F'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 32;

void put_u32(unsigned char* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

void put_f64(unsigned char* p, double d) {
  const auto bits = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) {
    p[i] = static_cast<unsigned char>(bits >> (8 * i));
  }
}

double get_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  }
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_field(const std::filesystem::path& path, const Field& f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  unsigned char header[kHeaderSize] = {};
  std::memcpy(header, kMagic, 4);
  put_u32(header + 4, kVersion);
  put_u32(header + 8, static_cast<std::uint32_t>(f.grid.n));
  put_f64(header + 12, f.grid.L);
  out.write(reinterpret_cast<const char*>(header), kHeaderSize);

  std::vector<unsigned char> row(f.grid.n * sizeof(double));
  const int n = f.grid.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double* src = &f.values[f.grid.index(i, j, 0)];
      for (int k = 0; k < n; ++k) put_f64(row.data() + 8 * k, src[k]);
      out.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Field read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open field dump: " + path.string());
  }
  unsigned char header[kHeaderSize];
  in.read(reinterpret_cast<char*>(header), kHeaderSize);
  if (!in || std::memcmp(header, kMagic, 4) != 0) {
    throw std::runtime_error("not a field dump: " + path.string());
  }
  const std::uint32_t version = get_u32(header + 4);
  if (version != kVersion) {
    throw std::runtime_error("unsupported field dump version " +
                             std::to_string(version));
  }
  const int n = static_cast<int>(get_u32(header + 8));
  const double L = get_f64(header + 12);
  Field f(make_grid(n, L));

  std::vector<unsigned char> row(static_cast<std::size_t>(n) * sizeof(double));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      in.read(reinterpret_cast<char*>(row.data()), row.size());
      if (!in) {
        throw std::runtime_error("truncated field dump: " + path.string());
      }
      double* dst = &f.values[f.grid.index(i, j, 0)];
      for (int k = 0; k < n; ++k) dst[k] = get_f64(row.data() + 8 * k);
    }
  }
  check_finite(f);
  return f;
}

}  // namespace prh
