#include "zdg/bigint.hpp"

#include <ostream>
#include <stdexcept>

namespace zdg {

BigUint::BigUint(std::uint64_t v) {
    while (v != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        v >>= 32;
    }
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::uint64_t BigUint::to_u64() const {
    if (limbs_.size() > 2) throw std::overflow_error("BigUint::to_u64: value exceeds 64 bits");
    std::uint64_t v = 0;
    if (limbs_.size() >= 1) v = limbs_[0];
    if (limbs_.size() == 2) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    return v;
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
    if (rhs.limbs_.size() > limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t s = carry + limbs_[i];
        if (i < rhs.limbs_.size()) s += rhs.limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
    BigUint r;
    if (a.is_zero() || b.is_zero()) return r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                                r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        r.limbs_[i + b.limbs_.size()] += static_cast<std::uint32_t>(carry);
    }
    r.trim();
    return r;
}

std::strong_ordering BigUint::operator<=>(const BigUint& rhs) const {
    if (limbs_.size() != rhs.limbs_.size())
        return limbs_.size() <=> rhs.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] <=> rhs.limbs_[i];
    }
    return std::strong_ordering::equal;
}

BigUint BigUint::pow(std::uint64_t base, unsigned exp) {
    BigUint r(1);
    BigUint b(base);
    while (exp > 0) {
        if (exp & 1u) r = r * b;
        b = b * b;
        exp >>= 1;
    }
    return r;
}

std::string BigUint::str() const {
    if (is_zero()) return "0";
    // repeated division by 1e9, collecting decimal chunks
    std::vector<std::uint32_t> work(limbs_);
    std::string out;
    while (!work.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = work.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | work[i];
            work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!work.empty() && work.back() == 0) work.pop_back();
        std::string chunk = std::to_string(rem);
        if (!work.empty()) chunk.insert(0, 9 - chunk.size(), '0');
        out.insert(0, chunk);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const BigUint& v) { return os << v.str(); }

} // namespace zdg
