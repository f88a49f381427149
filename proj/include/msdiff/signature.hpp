#ifndef MSDIFF_SIGNATURE_HPP
#define MSDIFF_SIGNATURE_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "msdiff/errors.hpp"

namespace msdiff {

/// The tuple of zero/pole orders (m_1,...,m_n) at the n marked points of a
/// genus-0 curve. Meromorphic differentials force sum(m_i) = -2.
class Signature {
public:
    Signature() = default;

    explicit Signature(std::vector<int> orders) : orders_(std::move(orders)) {
        if (static_cast<int>(orders_.size()) < 3)
            throw precondition_error("signature invariant violated: need n >= 3 marked points");
        long long s = std::accumulate(orders_.begin(), orders_.end(), 0LL);
        if (s != -2)
            throw precondition_error("signature invariant violated: orders must sum to -2, got " +
                                     std::to_string(s));
    }

    int n() const { return static_cast<int>(orders_.size()); }
    int order(int leg) const { return orders_[leg]; } // leg is 0-based
    const std::vector<int>& orders() const { return orders_; }

    /// Sum of orders over a 0-based leg bitmask.
    long long mask_sum(std::uint32_t mask) const {
        long long s = 0;
        for (int i = 0; i < n(); ++i)
            if (mask >> i & 1u) s += orders_[i];
        return s;
    }

    bool operator==(const Signature& o) const { return orders_ == o.orders_; }

private:
    std::vector<int> orders_;
};

} // namespace msdiff

#endif
