#ifndef ZDG_SUBSPACE_HPP
#define ZDG_SUBSPACE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zdg/bigint.hpp"
#include "zdg/gf.hpp"

namespace zdg {

// Dense row-major matrix over a finite field.
struct Matrix {
    int rows = 0, cols = 0;
    FieldPtr field;
    std::vector<Fel> e;

    Matrix() = default;
    Matrix(int r, int c, FieldPtr f)
        : rows(r), cols(c), field(std::move(f)), e(static_cast<std::size_t>(r) * c) {}

    static Matrix identity(int n, FieldPtr f);

    Fel& at(int r, int c) { return e[static_cast<std::size_t>(r) * cols + c]; }
    Fel at(int r, int c) const { return e[static_cast<std::size_t>(r) * cols + c]; }

    bool is_zero() const;
};

bool operator==(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
std::optional<Matrix> try_inverse(const Matrix& m);  // square only

// A * x for a column vector x of length m.cols.
std::vector<Fel> apply_matrix(const Matrix& m, const std::vector<Fel>& x);

// The unique reduced row echelon form of M together with its rank.
std::pair<Matrix, int> rref(const Matrix& m);

// Linear subspace of F_q^n in canonical form: the basis is the RREF of any
// spanning row set with zero rows dropped, so two Subspace values are equal as
// sets of vectors exactly when their basis grids are identical.
struct Subspace {
    int ambient = 0;
    FieldPtr field;
    Matrix basis;  // RREF, rows == dim

    int dim() const { return basis.rows; }

    // Interning/hash key: [ambient, dim, basis entries...].
    std::vector<std::uint32_t> key() const;

    nlohmann::json to_json() const;  // {"n": int, "basis": [[int]]}
};

bool operator==(const Subspace& a, const Subspace& b);

Subspace subspace_from_rows(const Matrix& rows);  // span of the rows
Subspace zero_subspace(int n, FieldPtr f);
Subspace full_space(int n, FieldPtr f);

Subspace image(const Matrix& m);   // column space
Subspace kernel(const Matrix& m);  // null space of x -> Mx

// Does the vector lie in the subspace?
bool member(const Subspace& s, const std::vector<Fel>& v);

bool contains(const Subspace& outer, const Subspace& inner);  // outer >= inner
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);  // Zassenhaus-style

// Span of {A * v : v basis vector of s}; A must be n x n over the same field.
Subspace map_subspace(const Matrix& a, const Subspace& s);

// All k-dimensional subspaces of F_q^n, each exactly once, in a fixed order:
// pivot-column patterns lexicographic, then the free entries of the RREF
// schema run through an odometer (row-major cells, last cell fastest).
std::vector<Subspace> enumerate_subspaces(int n, int k, const FieldPtr& f);

// Number of k-dimensional subspaces of F_q^n, exact.
BigUint q_binomial(int n, int k, std::uint64_t q);

// Compact display form, e.g. "<10,01>"; "<>" is the zero subspace.
std::string subspace_name(const Subspace& s);

} // namespace zdg

#endif
