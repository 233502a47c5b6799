#ifndef ZDG_GF_HPP
#define ZDG_GF_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

#include <json.hpp>

namespace zdg {

// Element of a finite field, identified by its canonical index in [0, q).
// Index 0 is the additive identity, index 1 the multiplicative identity; the
// index is the base-p digit expansion of the polynomial residue.
struct Fel {
    std::uint32_t v = 0;
    friend constexpr auto operator<=>(const Fel&, const Fel&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_q with q = p^m, realized as F_p[x]/(modulus). Immutable after
// construction; all operations are pure and safe under concurrent use.
//
// The modulus is the lexicographically least irreducible monic polynomial of
// degree m over F_p (coefficients compared constant-term first), so element
// indices are reproducible across runs and serializations.
class Field {
public:
    static constexpr std::uint32_t max_q = 1u << 16;  // larger fields rejected
    static constexpr std::uint32_t table_q = 256;     // op tables precomputed up to here

    int p() const { return p_; }
    int m() const { return m_; }
    std::uint32_t q() const { return q_; }

    // m+1 coefficients, constant term first, leading coefficient 1.
    const std::vector<int>& modulus() const { return modulus_; }

    Fel zero() const { return Fel{0}; }
    Fel one() const { return Fel{1}; }
    Fel element(std::uint32_t idx) const;  // bounds-checked

    Fel add(Fel a, Fel b) const;
    Fel sub(Fel a, Fel b) const;
    Fel neg(Fel a) const;
    Fel mul(Fel a, Fel b) const;
    Fel inv(Fel a) const;  // throws std::domain_error on 0
    Fel pow(Fel a, std::uint64_t e) const;

    // Exactly the m maps id, x -> x^p, ..., x -> x^{p^(m-1)}, each returned as
    // an index permutation of length q and checked to preserve + and *.
    std::vector<std::vector<std::uint32_t>> automorphisms() const;

    bool same(const Field& other) const;

    nlohmann::json to_json() const;

private:
    friend FieldPtr make_field(int p, int m);
    Field(int p, int m, std::vector<int> modulus);

    std::uint32_t raw_add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t raw_pow(std::uint32_t a, std::uint64_t e) const;

    int p_ = 0;
    int m_ = 0;
    std::uint32_t q_ = 0;
    std::vector<int> modulus_;
    std::vector<std::uint32_t> add_tab_, mul_tab_, inv_tab_;  // empty when q > table_q
};

// Builds F_{p^m}, choosing the modulus deterministically as described above.
// Throws std::invalid_argument if p is not prime or m < 1, CapacityError if
// p^m exceeds Field::max_q.
FieldPtr make_field(int p, int m);

bool is_prime(std::uint64_t n);

// Splits a prime power q into (p, m); returns false if q is not one.
bool split_prime_power(std::uint64_t q, int& p, int& m);

} // namespace zdg

#endif
