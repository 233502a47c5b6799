#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "zdg/errors.hpp"
#include "zdg/subspace.hpp"

using namespace zdg;

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Matrix random_matrix(int rows, int cols, const FieldPtr& f, std::uint64_t& state) {
    Matrix m(rows, cols, f);
    for (Fel& x : m.e) x = Fel{static_cast<std::uint32_t>(splitmix64(state) % f->q())};
    return m;
}

Matrix random_invertible(int n, const FieldPtr& f, std::uint64_t& state) {
    while (true) {
        Matrix m = random_matrix(n, n, f, state);
        if (try_inverse(m)) return m;
    }
}

Matrix from_rows(const FieldPtr& f, std::vector<std::vector<int>> rows) {
    Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()), f);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) =
                Fel{static_cast<std::uint32_t>(rows[i][j])};
    return m;
}

// independent oracle: count k-dim subspaces by collecting span keys of all
// k-tuples of vectors
std::size_t count_subspaces_brute(int n, int k, const FieldPtr& f) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= f->q();
    std::map<std::vector<std::uint32_t>, bool> seen;
    std::vector<std::uint64_t> tuple(static_cast<std::size_t>(k), 0);
    while (true) {
        Matrix rows(k, n, f);
        for (int i = 0; i < k; ++i) {
            std::uint64_t v = tuple[static_cast<std::size_t>(i)];
            for (int j = 0; j < n; ++j) {
                rows.at(i, j) = Fel{static_cast<std::uint32_t>(v % f->q())};
                v /= f->q();
            }
        }
        Subspace s = subspace_from_rows(rows);
        if (s.dim() == k) seen[s.key()] = true;
        int t = k - 1;
        while (t >= 0 && ++tuple[static_cast<std::size_t>(t)] == total) tuple[static_cast<std::size_t>(t--)] = 0;
        if (t < 0) break;
    }
    return seen.size();
}

} // namespace

TEST_CASE("rref examples") {
    auto f2 = make_field(2, 1);

    Matrix zero(2, 2, f2);
    auto [rz, rkz] = rref(zero);
    CHECK(rkz == 0);
    CHECK(rz.is_zero());

    auto [ri, rki] = rref(Matrix::identity(3, f2));
    CHECK(rki == 3);
    CHECK(ri == Matrix::identity(3, f2));

    auto [r, rk] = rref(from_rows(f2, {{1, 1}, {1, 1}}));
    CHECK(rk == 1);
    CHECK(r == from_rows(f2, {{1, 1}, {0, 0}}));

    // re-elimination: rref is a fixpoint
    std::uint64_t state = 1;
    for (int t = 0; t < 30; ++t) {
        Matrix m = random_matrix(3, 4, f2, state);
        auto [a, ra] = rref(m);
        auto [b, rb] = rref(a);
        CHECK(a == b);
        CHECK(ra == rb);
    }
}

TEST_CASE("row space is invariant under invertible row operations") {
    std::uint64_t state = 7;
    for (auto [p, m] : {std::pair{2, 1}, {3, 1}}) {
        auto f = make_field(p, m);
        for (int t = 0; t < 40; ++t) {
            Matrix a = random_matrix(3, 4, f, state);
            Subspace s = subspace_from_rows(a);
            Matrix tr = random_invertible(3, f, state);
            CHECK(subspace_from_rows(tr * a) == s);
        }
    }
}

TEST_CASE("image and kernel") {
    auto f2 = make_field(2, 1);
    const int n = 3;

    Matrix zero(n, n, f2);
    CHECK(image(zero) == zero_subspace(n, f2));
    CHECK(kernel(zero) == full_space(n, f2));

    Matrix id = Matrix::identity(n, f2);
    CHECK(image(id) == full_space(n, f2));
    CHECK(kernel(id) == zero_subspace(n, f2));

    Matrix proj = from_rows(f2, {{1, 0}, {0, 0}});
    CHECK(image(proj) == subspace_from_rows(from_rows(f2, {{1, 0}})));
    CHECK(kernel(proj) == subspace_from_rows(from_rows(f2, {{0, 1}})));

    // rank-nullity on random matrices
    std::uint64_t state = 3;
    for (auto [p, m] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        auto f = make_field(p, m);
        for (int t = 0; t < 30; ++t) {
            Matrix a = random_matrix(4, 4, f, state);
            CHECK(image(a).dim() + kernel(a).dim() == 4);
            // every kernel basis vector is annihilated
            for (int i = 0; i < kernel(a).dim(); ++i) {
                std::vector<Fel> v(4);
                for (int j = 0; j < 4; ++j) v[j] = kernel(a).basis.at(i, j);
                std::vector<Fel> y = apply_matrix(a, v);
                for (Fel x : y) CHECK(x.v == 0);
            }
        }
    }
}

TEST_CASE("lattice operations") {
    auto f2 = make_field(2, 1);
    Subspace e1 = subspace_from_rows(from_rows(f2, {{1, 0}}));
    Subspace e2 = subspace_from_rows(from_rows(f2, {{0, 1}}));
    Subspace diag = subspace_from_rows(from_rows(f2, {{1, 1}}));

    CHECK(contains(full_space(2, f2), e1));
    CHECK(contains(full_space(2, f2), zero_subspace(2, f2)));
    CHECK(intersect(e1, e2) == zero_subspace(2, f2));
    CHECK(sum(e1, diag) == full_space(2, f2));
    CHECK_FALSE(contains(e1, e2));

    Subspace e1_3 = subspace_from_rows(from_rows(make_field(2, 1), {{1, 0, 0}}));
    CHECK_THROWS_AS(contains(e1, e1_3), std::invalid_argument);
}

TEST_CASE("inverse rejects singular matrices") {
    auto f2 = make_field(2, 1);
    CHECK_FALSE(try_inverse(from_rows(f2, {{1, 1}, {1, 1}})));
    CHECK_FALSE(try_inverse(Matrix(3, 3, f2)));
    CHECK_FALSE(try_inverse(from_rows(f2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}})));

    std::uint64_t state = 5;
    for (auto [p, m] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        auto f = make_field(p, m);
        for (int t = 0; t < 20; ++t) {
            Matrix a = random_matrix(3, 3, f, state);
            auto inv = try_inverse(a);
            if (inv) CHECK(a * *inv == Matrix::identity(3, f));
            auto [red, rank] = rref(a);
            CHECK(inv.has_value() == (rank == 3));
        }
    }
}

TEST_CASE("Grassmann identity on random pairs") {
    std::uint64_t state = 11;
    for (auto [p, m] : {std::pair{2, 1}, {3, 1}}) {
        auto f = make_field(p, m);
        for (int t = 0; t < 60; ++t) {
            Subspace a = subspace_from_rows(random_matrix(2, 4, f, state));
            Subspace b = subspace_from_rows(random_matrix(3, 4, f, state));
            Subspace s = sum(a, b);
            Subspace i = intersect(a, b);
            CHECK(s.dim() + i.dim() == a.dim() + b.dim());
            CHECK(contains(a, i));
            CHECK(contains(b, i));
            CHECK(contains(s, a));
            CHECK(contains(s, b));
        }
    }
}

TEST_CASE("intersection agrees with vector-level enumeration") {
    // independent oracle: span the vectors of A that also lie in B
    std::uint64_t state = 29;
    for (auto [p, m] : {std::pair{2, 1}, {3, 1}}) {
        auto f = make_field(p, m);
        const int n = 4;
        for (int t = 0; t < 25; ++t) {
            Subspace a = subspace_from_rows(random_matrix(2, n, f, state));
            Subspace b = subspace_from_rows(random_matrix(2, n, f, state));

            std::vector<std::vector<Fel>> common;
            std::uint64_t combos = 1;
            for (int i = 0; i < a.dim(); ++i) combos *= f->q();
            for (std::uint64_t code = 0; code < combos; ++code) {
                std::vector<Fel> v(n, f->zero());
                std::uint64_t c = code;
                for (int i = 0; i < a.dim(); ++i) {
                    Fel coeff = f->element(static_cast<std::uint32_t>(c % f->q()));
                    c /= f->q();
                    for (int j = 0; j < n; ++j)
                        v[j] = f->add(v[j], f->mul(coeff, a.basis.at(i, j)));
                }
                if (member(b, v)) common.push_back(v);
            }
            Matrix rows(static_cast<int>(common.size()), n, f);
            for (std::size_t i = 0; i < common.size(); ++i)
                for (int j = 0; j < n; ++j) rows.at(static_cast<int>(i), j) = common[i][j];
            CHECK(subspace_from_rows(rows) == intersect(a, b));
        }
    }
}

TEST_CASE("column space is invariant under invertible column operations") {
    std::uint64_t state = 31;
    for (auto [p, m] : {std::pair{2, 1}, {3, 1}}) {
        auto f = make_field(p, m);
        for (int t = 0; t < 40; ++t) {
            Matrix a = random_matrix(4, 3, f, state);
            Matrix tr = random_invertible(3, f, state);
            CHECK(image(a * tr) == image(a));
        }
    }
}

TEST_CASE("subspace enumeration") {
    auto f2 = make_field(2, 1);
    auto one_dims = enumerate_subspaces(2, 1, f2);
    REQUIRE(one_dims.size() == 3);
    CHECK(one_dims[0] == subspace_from_rows(from_rows(f2, {{1, 0}})));
    CHECK(one_dims[1] == subspace_from_rows(from_rows(f2, {{1, 1}})));
    CHECK(one_dims[2] == subspace_from_rows(from_rows(f2, {{0, 1}})));

    CHECK(enumerate_subspaces(3, 0, f2).size() == 1);
    CHECK(enumerate_subspaces(3, 0, f2)[0] == zero_subspace(3, f2));
    CHECK(enumerate_subspaces(4, 2, f2).size() == 35);

    // counts match q_binomial for n <= 5 over F_2 and F_3 with no duplicates,
    // and match the brute-force span-collecting oracle on small cases
    for (auto [p, m] : {std::pair{2, 1}, {3, 1}}) {
        auto f = make_field(p, m);
        for (int n = 0; n <= 5; ++n)
            for (int k = 0; k <= n; ++k) {
                auto subs = enumerate_subspaces(n, k, f);
                CHECK(BigUint(subs.size()) == q_binomial(n, k, f->q()));
                std::set<std::vector<std::uint32_t>> keys;
                for (const auto& s : subs) {
                    CHECK(s.dim() == k);
                    keys.insert(s.key());
                }
                CHECK(keys.size() == subs.size());
            }
    }
    CHECK(count_subspaces_brute(3, 1, f2) == 7);
    CHECK(count_subspaces_brute(3, 2, f2) == 7);
    CHECK(count_subspaces_brute(4, 2, f2) == 35);
    auto f3 = make_field(3, 1);
    CHECK(count_subspaces_brute(2, 1, f3) == 4);
    CHECK(count_subspaces_brute(3, 2, f3) == 13);
}

TEST_CASE("q-binomial values and identities") {
    CHECK(q_binomial(5, 0, 2) == BigUint(1));
    CHECK(q_binomial(2, 1, 3) == BigUint(4));
    CHECK(q_binomial(4, 2, 2) == BigUint(35));
    CHECK(q_binomial(3, 1, 2) == BigUint(7));
    CHECK(q_binomial(3, 5, 2) == BigUint(0));
    CHECK(q_binomial(3, -1, 2) == BigUint(0));

    // product formula as an independent oracle; restricted to k <= n-k so the
    // 128-bit intermediate products stay exact (symmetry covers the rest)
    for (int n = 0; n <= 10; ++n) {
        for (int k = 0; 2 * k <= n; ++k) {
            for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull}) {
                unsigned __int128 num = 1, den = 1;
                auto ipow = [](std::uint64_t b, int e) {
                    unsigned __int128 r = 1;
                    while (e-- > 0) r *= b;
                    return r;
                };
                for (int i = 0; i < k; ++i) {
                    num *= ipow(q, n) - ipow(q, i);
                    den *= ipow(q, k) - ipow(q, i);
                }
                unsigned __int128 expected = k == 0 ? 1 : num / den;
                std::uint64_t lo = static_cast<std::uint64_t>(expected);
                REQUIRE(expected == static_cast<unsigned __int128>(lo));
                CHECK(q_binomial(n, k, q) == BigUint(lo));
            }
        }
    }

    // symmetry and recursion
    for (int n = 1; n <= 9; ++n)
        for (int k = 0; k <= n; ++k)
            for (std::uint64_t q : {2ull, 3ull, 5ull, 9ull}) {
                CHECK(q_binomial(n, k, q) == q_binomial(n, n - k, q));
                BigUint rec = q_binomial(n - 1, k, q) +
                              BigUint::pow(q, static_cast<unsigned>(n - k)) *
                                  q_binomial(n - 1, k - 1, q);
                CHECK(q_binomial(n, k, q) == rec);
            }
}

TEST_CASE("big values do not overflow") {
    // (40 choose 20)_2 has well over 100 decimal digits
    BigUint big = q_binomial(40, 20, 2);
    CHECK(big.str().size() > 100);
    CHECK_THROWS_AS(big.to_u64(), std::overflow_error);
    CHECK(BigUint(0).str() == "0");
    CHECK(BigUint(1234567890123456789ull).str() == "1234567890123456789");
}

TEST_CASE("subspace json") {
    auto f2 = make_field(2, 1);
    Subspace s = subspace_from_rows(from_rows(f2, {{1, 0}, {0, 1}}));
    nlohmann::json j = s.to_json();
    CHECK(j["n"] == 2);
    CHECK(j["basis"] == nlohmann::json::array({{1, 0}, {0, 1}}));
    CHECK(subspace_name(s) == "<10,01>");
    CHECK(subspace_name(zero_subspace(2, f2)) == "<>");
}
