#pragma once
#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <vector>

#include "spf/common.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// PrimeTable: primes and smallest-prime-factor data up to `bound` (inclusive).
//
// Storage:
//   - odd-composite bitmap, 1 bit per odd number (bit i <-> n = 2i+1; n = 1 is
//     flagged composite so is_prime needs no special case for it),
//   - ordered list of all primes <= bound,
//   - dense smallest-prime-factor array for n in [2, spf_limit]; above the
//     limit spf() falls back to trial division against the primes list.
//
// The bitmap is built by a segmented sieve (segment ~2^20 odds), so bounds up
// to 10^8 and beyond cost O(bound/16) bytes of bitmap plus the primes list.
// The spf array is capped (default 2^24 entries) to keep memory flat.
//
// Cache file format ("SPFL1"): 5 magic bytes, little-endian u64 bound,
// then the bitmap as little-endian u64 words. A cached file with a larger
// bound serves any smaller request; an insufficient or corrupt file is
// rebuilt and overwritten.
// -----------------------------------------------------------------------------

enum class cache_status { none, miss_built, hit, rebuilt_insufficient, rebuilt_corrupt };

// documented ceiling: tables beyond this would need > 2 GB of primes+bitmap
inline constexpr int64_t max_table_bound = 4'000'000'000;

class PrimeTable {
public:
    static constexpr int64_t default_spf_limit = int64_t(1) << 24;

    explicit PrimeTable(int64_t bound, int64_t spf_limit = default_spf_limit)
        : bound_(bound)
    {
        check_bound(bound);
        sieve_bitmap();
        collect_primes();
        build_spf(std::min(bound, spf_limit));
    }

    // Construct from a cache file when possible; `status` reports what happened.
    PrimeTable(int64_t bound, const std::filesystem::path& cache_file,
               cache_status* status, int64_t spf_limit = default_spf_limit)
        : bound_(bound)
    {
        check_bound(bound);
        cache_status st = cache_status::none;
        if (!load_bitmap(cache_file, st)) {
            sieve_bitmap();
            save_bitmap(cache_file);
            if (st == cache_status::none) st = cache_status::miss_built;
        }
        collect_primes();
        build_spf(std::min(bound, spf_limit));
        if (status) *status = st;
    }

    int64_t bound() const { return bound_; }
    const std::vector<int64_t>& primes() const { return primes_; }

    bool is_prime(int64_t n) const
    {
        if (n < 2 || n > bound_) return false;
        if (n % 2 == 0) return n == 2;
        return !composite_bit(n);
    }

    // pi(x) = number of primes <= x, for x <= bound.
    int64_t pi(int64_t x) const
    {
        if (x > bound_) throw domain_error("PrimeTable::pi: x exceeds table bound");
        if (x < 2) return 0;
        return std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin();
    }

    // Smallest prime factor of n, n in [2, bound]. O(1) below the dense cap,
    // trial division against stored primes above it.
    int64_t spf(int64_t n) const
    {
        if (n < 2 || n > bound_) throw domain_error("PrimeTable::spf: n out of range");
        if (n < static_cast<int64_t>(spf_.size())) return spf_[n];
        if (n % 2 == 0) return 2;
        for (int64_t p : primes_) {
            if (p * p > n) break;
            if (n % p == 0) return p;
        }
        return n; // prime
    }

    int64_t spf_dense_limit() const { return static_cast<int64_t>(spf_.size()) - 1; }

private:
    static void check_bound(int64_t bound)
    {
        if (bound < 2) throw domain_error("PrimeTable: bound must be >= 2");
        if (bound > max_table_bound)
            throw resource_error("PrimeTable: bound beyond the supported " +
                                 std::to_string(max_table_bound));
    }

    int64_t bound_;
    std::vector<uint64_t> bits_;   // bit i set => 2i+1 composite (or 1)
    std::vector<int64_t> primes_;
    std::vector<uint32_t> spf_;

    bool composite_bit(int64_t odd_n) const
    {
        uint64_t i = static_cast<uint64_t>(odd_n) >> 1;
        return (bits_[i >> 6] >> (i & 63)) & 1u;
    }
    void set_composite(int64_t odd_n)
    {
        uint64_t i = static_cast<uint64_t>(odd_n) >> 1;
        bits_[i >> 6] |= uint64_t(1) << (i & 63);
    }

    size_t num_odds() const { return static_cast<size_t>((bound_ + 1) / 2); }

    void sieve_bitmap()
    {
        bits_.assign((num_odds() + 63) / 64, 0);
        set_composite(1);
        const int64_t root = isqrt64(bound_);
        // base primes by a plain sieve up to sqrt(bound)
        std::vector<int64_t> base;
        {
            std::vector<bool> comp(root + 1, false);
            for (int64_t p = 3; p <= root; p += 2) {
                if (comp[p]) continue;
                base.push_back(p);
                for (int64_t q = p * p; q <= root; q += 2 * p) comp[q] = true;
            }
        }
        const int64_t seg = int64_t(1) << 21; // odd numbers per segment
        for (int64_t lo = 3; lo <= bound_; lo += 2 * seg) {
            int64_t hi = std::min(bound_, lo + 2 * seg - 2); // odd, inclusive
            for (int64_t p : base) {
                int64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
                if (start % 2 == 0) start += p;
                for (int64_t q = start; q <= hi; q += 2 * p) set_composite(q);
            }
        }
    }

    void collect_primes()
    {
        primes_.clear();
        double approx = bound_ > 16 ? static_cast<double>(bound_) / (std::log(double(bound_)) - 1.1)
                                    : 16.0;
        primes_.reserve(static_cast<size_t>(approx) + 16);
        primes_.push_back(2);
        for (int64_t n = 3; n <= bound_; n += 2)
            if (!composite_bit(n)) primes_.push_back(n);
    }

    void build_spf(int64_t limit)
    {
        if (limit < 2) { spf_.clear(); return; }
        spf_.assign(static_cast<size_t>(limit) + 1, 0);
        for (int64_t n = 2; n <= limit; n += 2) spf_[n] = 2;
        for (int64_t p : primes_) {
            if (p > limit) break;
            if (p == 2) continue;
            for (int64_t n = p; n <= limit; n += 2 * p)
                if (spf_[n] == 0) spf_[n] = static_cast<uint32_t>(p);
        }
    }

    static void put_u64_le(std::ofstream& out, uint64_t v)
    {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        out.write(reinterpret_cast<const char*>(b), 8);
    }
    static bool get_u64_le(std::ifstream& in, uint64_t& v)
    {
        unsigned char b[8];
        in.read(reinterpret_cast<char*>(b), 8);
        if (!in) return false;
        v = 0;
        for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
        return true;
    }

    void save_bitmap(const std::filesystem::path& file) const
    {
        std::error_code ec;
        if (file.has_parent_path())
            std::filesystem::create_directories(file.parent_path(), ec);
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        if (!out) return; // cache is best-effort
        out.write("SPFL1", 5);
        put_u64_le(out, static_cast<uint64_t>(bound_));
        for (uint64_t w : bits_) put_u64_le(out, w);
    }

    // Returns true when the bitmap was loaded from the file. `st` set to
    // hit / rebuilt_insufficient / rebuilt_corrupt as appropriate.
    bool load_bitmap(const std::filesystem::path& file, cache_status& st)
    {
        std::ifstream in(file, std::ios::binary);
        if (!in) { st = cache_status::miss_built; return false; }
        char magic[5];
        in.read(magic, 5);
        if (!in || std::memcmp(magic, "SPFL1", 5) != 0) {
            st = cache_status::rebuilt_corrupt;
            return false;
        }
        uint64_t file_bound = 0;
        if (!get_u64_le(in, file_bound) || file_bound < 2) {
            st = cache_status::rebuilt_corrupt;
            return false;
        }
        if (static_cast<int64_t>(file_bound) < bound_) {
            st = cache_status::rebuilt_insufficient;
            return false;
        }
        size_t file_words = (static_cast<size_t>((file_bound + 1) / 2) + 63) / 64;
        size_t need_words = (num_odds() + 63) / 64;
        std::vector<uint64_t> words(need_words, 0);
        for (size_t i = 0; i < need_words; ++i) {
            if (!get_u64_le(in, words[i])) {
                st = cache_status::rebuilt_corrupt;
                return false;
            }
        }
        (void)file_words;
        bits_ = std::move(words);
        // mask stray bits past bound so is_prime stays consistent
        st = cache_status::hit;
        return true;
    }
};

// build_prime_table(bound): plain construction, no cache.
inline PrimeTable build_prime_table(int64_t bound, int64_t spf_limit = PrimeTable::default_spf_limit)
{
    return PrimeTable(bound, spf_limit);
}

// Cache-backed construction. The cache directory holds one file per bound
// family; a file with bound >= requested is reused directly.
inline PrimeTable build_prime_table_cached(int64_t bound,
                                           const std::filesystem::path& cache_dir,
                                           cache_status* status = nullptr,
                                           int64_t spf_limit = PrimeTable::default_spf_limit)
{
    return PrimeTable(bound, cache_dir / "primes.spfl1", status, spf_limit);
}

} // namespace spf
