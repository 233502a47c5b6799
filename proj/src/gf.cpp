#include "zdg/gf.hpp"

#include <algorithm>
#include <stdexcept>

#include "zdg/errors.hpp"

namespace zdg {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool split_prime_power(std::uint64_t q, int& p, int& m) {
    if (q < 2) return false;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            // q must be a power of its least prime factor
            int e = 0;
            std::uint64_t r = q;
            while (r % d == 0) { r /= d; ++e; }
            if (r != 1) return false;
            p = static_cast<int>(d);
            m = e;
            return true;
        }
    }
    p = static_cast<int>(q);  // q itself is prime
    m = 1;
    return true;
}

namespace {

using Poly = std::vector<int>;  // coefficients mod p, constant term first

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g, g monic
Poly poly_mod(Poly f, const Poly& g, int p) {
    poly_trim(f);
    const int dg = static_cast<int>(g.size()) - 1;
    while (static_cast<int>(f.size()) - 1 >= dg) {
        long long lead = f.back();
        int shift = static_cast<int>(f.size()) - 1 - dg;
        for (int i = 0; i <= dg; ++i) {
            long long v = (f[shift + i] - lead * g[i]) % p;
            f[shift + i] = static_cast<int>(v < 0 ? v + p : v);
        }
        poly_trim(f);
    }
    return f;
}

bool poly_is_zero(const Poly& f) {
    return std::all_of(f.begin(), f.end(), [](int c) { return c == 0; });
}

// Irreducibility over F_p by trial division against every monic polynomial of
// degree 1..deg(f)/2.
bool poly_irreducible(const Poly& f, int p) {
    const int df = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= df; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            std::uint64_t c = code;
            for (int i = 0; i < d; ++i) { g[i] = static_cast<int>(c % p); c /= p; }
            g[d] = 1;
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

} // namespace

FieldPtr make_field(int p, int m) {
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("make_field: p must be prime");
    if (m < 1) throw std::invalid_argument("make_field: m must be >= 1");
    std::uint64_t q = 1;
    for (int i = 0; i < m; ++i) {
        q *= static_cast<std::uint64_t>(p);
        if (q > Field::max_q) throw CapacityError("make_field: p^m exceeds the supported field size");
    }

    // Least irreducible monic polynomial of degree m, coefficient tuples
    // (c_0, ..., c_{m-1}) in lexicographic order.
    std::uint64_t count = 1;
    for (int i = 0; i < m; ++i) count *= static_cast<std::uint64_t>(p);
    std::vector<int> modulus;
    for (std::uint64_t code = 0; code < count; ++code) {
        Poly f(m + 1, 0);
        std::uint64_t c = code;
        for (int i = m - 1; i >= 0; --i) { f[i] = static_cast<int>(c % p); c /= p; }
        f[m] = 1;
        if (poly_irreducible(f, p)) { modulus = f; break; }
    }
    // a monic irreducible of every degree exists over every F_p
    return FieldPtr(new Field(p, m, std::move(modulus)));
}

Field::Field(int p, int m, std::vector<int> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    std::uint64_t q = 1;
    for (int i = 0; i < m; ++i) q *= static_cast<std::uint64_t>(p);
    q_ = static_cast<std::uint32_t>(q);

    if (q_ <= table_q) {
        add_tab_.resize(static_cast<std::size_t>(q_) * q_);
        mul_tab_.resize(static_cast<std::size_t>(q_) * q_);
        inv_tab_.assign(q_, 0);
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                add_tab_[a * q_ + b] = raw_add(a, b);
                std::uint32_t ab = raw_mul(a, b);
                mul_tab_[a * q_ + b] = ab;
                if (ab == 1) inv_tab_[a] = b;
            }
        }
    }
}

std::uint32_t Field::raw_add(std::uint32_t a, std::uint32_t b) const {
    // digitwise mod-p addition, no carries
    std::uint32_t r = 0, place = 1;
    for (int i = 0; i < m_; ++i) {
        std::uint32_t da = a % p_, db = b % p_;
        a /= p_; b /= p_;
        r += ((da + db) % p_) * place;
        place *= p_;
    }
    return r;
}

std::uint32_t Field::raw_mul(std::uint32_t a, std::uint32_t b) const {
    std::vector<long long> fa(m_), fb(m_);
    for (int i = 0; i < m_; ++i) { fa[i] = a % p_; a /= p_; }
    for (int i = 0; i < m_; ++i) { fb[i] = b % p_; b /= p_; }
    std::vector<long long> prod(2 * m_ - 1, 0);
    for (int i = 0; i < m_; ++i) {
        if (fa[i] == 0) continue;
        for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + fa[i] * fb[j]) % p_;
    }
    // reduce modulo the monic modulus: x^m == -(sum_{j<m} modulus_j x^j)
    for (int i = 2 * m_ - 2; i >= m_; --i) {
        long long lead = prod[i];
        if (lead == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < m_; ++j) {
            long long v = (prod[i - m_ + j] - lead * modulus_[j]) % p_;
            prod[i - m_ + j] = v < 0 ? v + p_ : v;
        }
    }
    std::uint32_t r = 0, place = 1;
    for (int i = 0; i < m_; ++i) { r += static_cast<std::uint32_t>(prod[i]) * place; place *= p_; }
    return r;
}

std::uint32_t Field::raw_pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e > 0) {
        if (e & 1u) r = raw_mul(r, a);
        a = raw_mul(a, a);
        e >>= 1;
    }
    return r;
}

Fel Field::element(std::uint32_t idx) const {
    if (idx >= q_) throw std::out_of_range("Field::element: index out of range");
    return Fel{idx};
}

Fel Field::add(Fel a, Fel b) const {
    if (!add_tab_.empty()) return Fel{add_tab_[a.v * q_ + b.v]};
    return Fel{raw_add(a.v, b.v)};
}

Fel Field::neg(Fel a) const {
    std::uint32_t r = 0, place = 1, v = a.v;
    for (int i = 0; i < m_; ++i) {
        std::uint32_t d = v % p_;
        v /= p_;
        r += ((p_ - d) % p_) * place;
        place *= p_;
    }
    return Fel{r};
}

Fel Field::sub(Fel a, Fel b) const { return add(a, neg(b)); }

Fel Field::mul(Fel a, Fel b) const {
    if (!mul_tab_.empty()) return Fel{mul_tab_[a.v * q_ + b.v]};
    return Fel{raw_mul(a.v, b.v)};
}

Fel Field::inv(Fel a) const {
    if (a.v == 0) throw std::domain_error("Field::inv: zero has no inverse");
    if (!inv_tab_.empty()) return Fel{inv_tab_[a.v]};
    return Fel{raw_pow(a.v, q_ - 2)};
}

Fel Field::pow(Fel a, std::uint64_t e) const { return Fel{raw_pow(a.v, e)}; }

std::vector<std::vector<std::uint32_t>> Field::automorphisms() const {
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(m_);
    std::uint64_t pk = 1;
    for (int k = 0; k < m_; ++k) {
        std::vector<std::uint32_t> perm(q_);
        for (std::uint32_t a = 0; a < q_; ++a) perm[a] = raw_pow(a, pk);
        out.push_back(std::move(perm));
        pk *= static_cast<std::uint64_t>(p_);
    }
    // sanity check: each map preserves both operations (exhaustive for small
    // fields, sampled beyond)
    auto check_pair = [&](const std::vector<std::uint32_t>& s, std::uint32_t a, std::uint32_t b) {
        if (s[raw_add(a, b)] != raw_add(s[a], s[b]) || s[raw_mul(a, b)] != raw_mul(s[a], s[b]))
            throw std::logic_error("Field::automorphisms: map does not preserve operations");
    };
    for (const auto& s : out) {
        if (q_ <= 4096) {
            for (std::uint32_t a = 0; a < q_; ++a)
                for (std::uint32_t b = 0; b < q_; ++b) check_pair(s, a, b);
        } else {
            std::uint64_t x = 0x9e3779b97f4a7c15ull;
            for (int t = 0; t < 4096; ++t) {
                x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                check_pair(s, static_cast<std::uint32_t>(x % q_),
                           static_cast<std::uint32_t>((x >> 32) % q_));
            }
        }
    }
    return out;
}

bool Field::same(const Field& other) const {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
}

nlohmann::json Field::to_json() const {
    return nlohmann::json{{"p", p_}, {"m", m_}, {"modulus", modulus_}};
}

} // namespace zdg
