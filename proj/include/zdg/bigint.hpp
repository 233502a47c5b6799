#ifndef ZDG_BIGINT_HPP
#define ZDG_BIGINT_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace zdg {

// Unsigned arbitrary-precision integer. Counting formulas (q-binomials and the
// sums built from them) overflow 64 bits quickly, so every formula value is
// carried exactly and only converted down when a caller knows it fits.
//
// Representation: little-endian 32-bit limbs, normalized (no trailing zero
// limbs; zero is the empty vector).
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v);

    bool is_zero() const { return limbs_.empty(); }

    // Throws std::overflow_error if the value does not fit.
    std::uint64_t to_u64() const;

    std::string str() const;

    BigUint& operator+=(const BigUint& rhs);
    friend BigUint operator+(BigUint a, const BigUint& b) { a += b; return a; }
    friend BigUint operator*(const BigUint& a, const BigUint& b);
    BigUint& operator*=(const BigUint& rhs) { *this = *this * rhs; return *this; }

    friend bool operator==(const BigUint&, const BigUint&) = default;
    std::strong_ordering operator<=>(const BigUint& rhs) const;

    static BigUint pow(std::uint64_t base, unsigned exp);

private:
    std::vector<std::uint32_t> limbs_;
    void trim();
};

std::ostream& operator<<(std::ostream& os, const BigUint& v);

} // namespace zdg

#endif
