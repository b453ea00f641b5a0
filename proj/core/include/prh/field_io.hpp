#pragma once

#include <filesystem>

#include "prh/field.hpp"

namespace prh {

// Field dump format, little-endian throughout:
//   bytes  0..3   magic "PRHF"
//   bytes  4..7   version (u32, currently 1)
//   bytes  8..11  n (u32)
//   bytes 12..19  L (f64)
//   bytes 20..31  reserved, zero
// followed by n^3 f64 values row-major (x index outermost).

void write_field(const std::filesystem::path& path, const Field& f);
Field read_field(const std::filesystem::path& path);

}  // namespace prh
