#include "hnn/io.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "hnn/error.hpp"

namespace hnn::io {
namespace {

void put_u64(std::ostream& out, std::uint64_t v)
{
    std::array<char, 8> bytes{};
    for (std::size_t b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xffU);
    out.write(bytes.data(), bytes.size());
}

bool get_u64(std::istream& in, std::uint64_t& v)
{
    std::array<unsigned char, 8> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
    v = 0;
    for (std::size_t b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    return true;
}

} // namespace

void write(std::ostream& out, Tensor3 const& t)
{
    out.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
    for (Index d : t.dims()) put_u64(out, d);
    for (double v : t.data()) put_u64(out, std::bit_cast<std::uint64_t>(v));
    if (!out) throw Error("tensor write failed");
}

Tensor3 read(std::istream& in)
{
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || std::string_view(magic.data(), magic.size()) != kMagic)
        throw FormatError("not a tensor file: bad magic");
    Dims3 dims{};
    for (auto& d : dims) {
        std::uint64_t v = 0;
        if (!get_u64(in, v)) throw FormatError("tensor header truncated");
        d = static_cast<Index>(v);
    }
    constexpr auto kMaxEntries = std::numeric_limits<std::uint64_t>::max() / 8;
    if (dims[0] == 0 || dims[1] == 0 || dims[2] == 0) throw FormatError("tensor header has a zero extent");
    if (dims[0] > kMaxEntries / dims[1] || dims[0] * dims[1] > kMaxEntries / dims[2])
        throw FormatError("tensor extents overflow");
    Index const count = dims[0] * dims[1] * dims[2];

    std::vector<double> data;
    data.reserve(std::min<Index>(count, Index{1} << 24));
    for (Index n = 0; n < count; ++n) {
        std::uint64_t bits = 0;
        if (!get_u64(in, bits))
            throw FormatError("tensor payload truncated: expected " + std::to_string(count) + " values, got " +
                              std::to_string(n));
        data.push_back(std::bit_cast<double>(bits));
    }
    if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after tensor payload");
    return Tensor3(dims, std::move(data));
}

void save(Tensor3 const& t, std::filesystem::path const& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write(out, t);
}

Tensor3 load(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return read(in);
}

} // namespace hnn::io
