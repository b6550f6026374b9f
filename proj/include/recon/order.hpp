#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace recon {

/// Number of points p = 2^n of a member of the family, with n >= 2.
///
/// All public indices in this library are 1-based so that tables line up
/// positionally with the published figures.
class Order {
public:
    explicit Order(std::int64_t p) : p_(p) {
        if (p < 4 || !std::has_single_bit(static_cast<std::uint64_t>(p)))
            throw std::invalid_argument("order must be a power of two >= 4, got " +
                                        std::to_string(p));
        n_ = std::countr_zero(static_cast<std::uint64_t>(p));
    }

    [[nodiscard]] int p() const noexcept { return static_cast<int>(p_); }
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int half() const noexcept { return static_cast<int>(p_ / 2); }
    /// Largest level magnitude, n + 1.
    [[nodiscard]] int top_level() const noexcept { return n_ + 1; }
    [[nodiscard]] Order halved() const { return Order(p_ / 2); }

    [[nodiscard]] bool contains(int i) const noexcept { return i >= 1 && i <= p_; }

    friend bool operator==(const Order&, const Order&) = default;

private:
    std::int64_t p_;
    int n_ = 0;
};

inline void require_index(const Order& order, int i, const char* what) {
    if (!order.contains(i))
        throw std::out_of_range(std::string(what) + " index " + std::to_string(i) +
                                " outside 1.." + std::to_string(order.p()));
}

} // namespace recon
