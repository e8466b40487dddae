#pragma once
#include <cstdint>
#include <unordered_map>

#include "spf/common.hpp"
#include "spf/prime_table.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Phi(x,y): integers n <= x with no prime factor < y, by the Legendre
// recursion phi(x,a) = phi(x,a-1) - phi(x/p_a, a-1) with memoization and the
// Meissel cutoff phi(x,a) = 1 + pi(x) - a once p_a^2 > x. This route never
// touches the omega histogram, so it cross-checks count_nk's N_0 column.
// Requires table.bound >= x (for the pi lookups).
// -----------------------------------------------------------------------------

class LegendrePhi {
public:
    explicit LegendrePhi(const PrimeTable& table) : table_(table) {}

    int64_t operator()(int64_t x, int64_t y) const
    {
        if (x < 1) throw domain_error("phi: x >= 1 required");
        if (y < 2) throw domain_error("phi: y >= 2 required");
        if (table_.bound() < x) throw domain_error("phi: prime table too small (need bound >= x)");
        const int64_t a = table_.pi(std::min(y - 1, x));
        return phi_rec(x, a);
    }

private:
    const PrimeTable& table_;
    mutable std::unordered_map<uint64_t, int64_t> memo_;

    int64_t phi_rec(int64_t x, int64_t a) const
    {
        if (x == 0) return 0;
        if (a == 0) return x;
        const int64_t pa = table_.primes()[static_cast<size_t>(a - 1)];
        if (pa >= x) return 1;                         // only n = 1 survives
        if (pa * pa > x) return 1 + table_.pi(x) - a;  // 1 and the primes in (p_a, x]
        const uint64_t key = (static_cast<uint64_t>(x) << 18) | static_cast<uint64_t>(a);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        int64_t v = phi_rec(x, a - 1) - phi_rec(x / pa, a - 1);
        memo_.emplace(key, v);
        return v;
    }
};

inline int64_t legendre_phi(int64_t x, int64_t y, const PrimeTable& table)
{
    return LegendrePhi(table)(x, y);
}

} // namespace spf
