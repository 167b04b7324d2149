#ifndef GENFAC_BIGINT_HPP
#define GENFAC_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace genfac {

// Arbitrary-precision unsigned integer. Little-endian 64-bit limbs,
// normalized (no trailing zero limbs; zero = empty vector).
// Covers what exact counting needs: add, subtract (no underflow),
// multiply, compare, decimal I/O. Counts here stay below a few
// hundred bits (CRT products of 62-bit primes), so schoolbook is fine.
class BigUint {
public:
    BigUint() = default;
    BigUint(uint64_t v) { if (v) limbs_.push_back(v); }  // NOLINT: implicit by design

    bool is_zero() const { return limbs_.empty(); }
    size_t limb_count() const { return limbs_.size(); }

    // Value of the low limb; only meaningful if fits_u64().
    bool fits_u64() const { return limbs_.size() <= 1; }
    uint64_t low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

    BigUint& operator+=(const BigUint& o);
    BigUint& operator+=(uint64_t v);
    // Requires *this >= o.
    BigUint& operator-=(const BigUint& o);
    BigUint& operator*=(uint64_t v);

    friend BigUint operator+(BigUint a, const BigUint& b) { a += b; return a; }
    friend BigUint operator-(BigUint a, const BigUint& b) { a -= b; return a; }
    friend BigUint operator*(const BigUint& a, const BigUint& b);
    friend BigUint operator*(BigUint a, uint64_t b) { a *= b; return a; }

    int compare(const BigUint& o) const;
    friend bool operator==(const BigUint& a, const BigUint& b) { return a.compare(b) == 0; }
    friend bool operator!=(const BigUint& a, const BigUint& b) { return a.compare(b) != 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return a.compare(b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return a.compare(b) <= 0; }
    friend bool operator>(const BigUint& a, const BigUint& b) { return a.compare(b) > 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return a.compare(b) >= 0; }

    // Divides in place by a nonzero word, returns the remainder.
    uint64_t div_u64(uint64_t v);
    uint64_t mod_u64(uint64_t v) const;

    std::string to_string() const;
    static BigUint from_string(const std::string& s);
    static BigUint pow2(unsigned e);

private:
    std::vector<uint64_t> limbs_;
    void normalize();
};

}  // namespace genfac

#endif
