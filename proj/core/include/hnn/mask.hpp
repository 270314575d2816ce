#pragma once

#include <cstdint>
#include <vector>

#include "hnn/tensor.hpp"

namespace hnn {

/// Boolean observation set over tensor indices; true means observed.
class Mask {
public:
    Mask() = default;
    explicit Mask(Dims3 dims, bool observed = false);
    Mask(Dims3 dims, std::vector<std::uint8_t> flags);

    static Mask all(Dims3 dims) { return Mask(dims, true); }
    /// Nonzero entries of t become observed.
    static Mask from_tensor(Tensor3 const& t);

    [[nodiscard]] Dims3 const& dims() const noexcept { return dims_; }
    [[nodiscard]] Index size() const noexcept { return flags_.size(); }
    [[nodiscard]] Index count() const noexcept;

    [[nodiscard]] bool operator[](Index flat) const noexcept { return flags_[flat] != 0; }
    void set(Index flat, bool observed) noexcept { flags_[flat] = observed ? 1 : 0; }
    [[nodiscard]] bool operator()(Index i, Index j, Index k) const noexcept
    {
        return flags_[i + dims_[0] * (j + dims_[1] * k)] != 0;
    }

    /// 1.0 on observed entries, 0.0 elsewhere.
    [[nodiscard]] Tensor3 to_tensor() const;

    friend bool operator==(Mask const&, Mask const&) = default;

private:
    Dims3 dims_{0, 0, 0};
    std::vector<std::uint8_t> flags_;
};

/// Copy of t with unobserved entries set to zero.
Tensor3 project(Tensor3 t, Mask const& mask);

} // namespace hnn
