#pragma once

#include <cstdint>
#include <vector>

#include "ecmc/signature.hpp"

namespace ecmc {

// Mixed-radix counter, last digit fastest.  An empty digit list yields
// exactly one (empty) combination.
class Odometer {
public:
    explicit Odometer(std::vector<ValId> sizes)
        : sizes_(std::move(sizes)), digits_(sizes_.size(), 0) {
        for (ValId s : sizes_)
            if (s <= 0) done_ = true;
    }

    bool done() const { return done_; }
    const std::vector<ValId>& digits() const { return digits_; }

    void next() {
        for (auto i = static_cast<std::ptrdiff_t>(digits_.size()) - 1; i >= 0; --i) {
            if (++digits_[i] < sizes_[i]) return;
            digits_[i] = 0;
        }
        done_ = true;
    }

    std::uint64_t combinations(std::uint64_t cap) const {
        std::uint64_t n = 1;
        for (ValId s : sizes_) {
            auto us = static_cast<std::uint64_t>(s);
            if (us == 0) return 0;
            if (n > cap / us) return cap + 1; // saturate past the cap
            n *= us;
        }
        return n;
    }

private:
    std::vector<ValId> sizes_;
    std::vector<ValId> digits_;
    bool done_ = false;
};

// Range sizes of the listed variables, for odometers over value tuples.
inline std::vector<ValId> range_sizes(const Signature& sig, const std::vector<VarId>& vars) {
    std::vector<ValId> sizes;
    sizes.reserve(vars.size());
    for (VarId v : vars) sizes.push_back(sig.range_size(v));
    return sizes;
}

// All variables except those in `skip`, canonical order.  `skip` must be
// small; linear scan.
std::vector<VarId> other_variables(const Signature& sig, const std::vector<VarId>& skip);

// Every variable of the signature in canonical order.
std::vector<VarId> all_variables(const Signature& sig);

} // namespace ecmc
