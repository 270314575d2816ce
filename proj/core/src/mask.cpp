#include "hnn/mask.hpp"

#include <algorithm>

#include "hnn/error.hpp"

namespace hnn {

Mask::Mask(Dims3 dims, bool observed) : dims_(dims), flags_(dims[0] * dims[1] * dims[2], observed ? 1 : 0) {}

Mask::Mask(Dims3 dims, std::vector<std::uint8_t> flags) : dims_(dims), flags_(std::move(flags))
{
    if (flags_.size() != dims[0] * dims[1] * dims[2]) throw DimensionError("mask length does not match extents");
    for (auto& f : flags_) f = f != 0 ? 1 : 0;
}

Mask Mask::from_tensor(Tensor3 const& t)
{
    std::vector<std::uint8_t> flags(t.size());
    std::ranges::transform(t.data(), flags.begin(), [](double v) { return static_cast<std::uint8_t>(v != 0.0); });
    return Mask(t.dims(), std::move(flags));
}

Index Mask::count() const noexcept
{
    return static_cast<Index>(std::ranges::count(flags_, std::uint8_t{1}));
}

Tensor3 Mask::to_tensor() const
{
    Tensor3 t(dims_);
    for (Index n = 0; n < flags_.size(); ++n) t[n] = flags_[n] != 0 ? 1.0 : 0.0;
    return t;
}

Tensor3 project(Tensor3 t, Mask const& mask)
{
    if (t.dims() != mask.dims()) throw DimensionError("project: mask extents differ from tensor");
    for (Index n = 0; n < t.size(); ++n)
        if (!mask[n]) t[n] = 0.0;
    return t;
}

} // namespace hnn
