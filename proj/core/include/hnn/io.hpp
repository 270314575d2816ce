#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "hnn/tensor.hpp"

namespace hnn::io {

/// Tensor file layout, all little-endian:
///   bytes 0-3    magic "HNT1"
///   bytes 4-27   M, N, S as uint64
///   then M*N*S IEEE-754 float64 values, entry (i, j, k) at i + M*(j + N*k)
inline constexpr std::string_view kMagic = "HNT1";
inline constexpr std::size_t kHeaderBytes = 4 + 3 * 8;

void write(std::ostream& out, Tensor3 const& t);
Tensor3 read(std::istream& in);

void save(Tensor3 const& t, std::filesystem::path const& path);
Tensor3 load(std::filesystem::path const& path);

} // namespace hnn::io
