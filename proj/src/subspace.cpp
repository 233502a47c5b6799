#include "zdg/subspace.hpp"

#include <algorithm>
#include <stdexcept>

#include "zdg/errors.hpp"

namespace zdg {

namespace {

void require_same_field(const FieldPtr& a, const FieldPtr& b, const char* what) {
    if (!a || !b || !a->same(*b)) throw std::invalid_argument(std::string(what) + ": field mismatch");
}

} // namespace

Matrix Matrix::identity(int n, FieldPtr f) {
    Matrix m(n, n, std::move(f));
    for (int i = 0; i < n; ++i) m.at(i, i) = m.field->one();
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(e.begin(), e.end(), [](Fel x) { return x.v == 0; });
}

bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    if (!a.field != !b.field) return false;
    if (a.field && !a.field->same(*b.field)) return false;
    return a.e == b.e;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_field(a.field, b.field, "Matrix::operator*");
    if (a.cols != b.rows) throw std::invalid_argument("Matrix::operator*: shape mismatch");
    const Field& F = *a.field;
    Matrix r(a.rows, b.cols, a.field);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            Fel aik = a.at(i, k);
            if (aik.v == 0) continue;
            for (int j = 0; j < b.cols; ++j) {
                r.at(i, j) = F.add(r.at(i, j), F.mul(aik, b.at(k, j)));
            }
        }
    }
    return r;
}

Matrix transpose(const Matrix& m) {
    Matrix r(m.cols, m.rows, m.field);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

std::vector<Fel> apply_matrix(const Matrix& m, const std::vector<Fel>& x) {
    if (static_cast<int>(x.size()) != m.cols)
        throw std::invalid_argument("apply_matrix: vector length mismatch");
    const Field& F = *m.field;
    std::vector<Fel> y(m.rows, F.zero());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) y[i] = F.add(y[i], F.mul(m.at(i, j), x[j]));
    return y;
}

std::pair<Matrix, int> rref(const Matrix& m) {
    Matrix r = m;
    const Field& F = *r.field;
    int rank = 0;
    for (int col = 0; col < r.cols && rank < r.rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < r.rows; ++i) {
            if (r.at(i, col).v != 0) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < r.cols; ++j) std::swap(r.at(pivot, j), r.at(rank, j));
        Fel s = F.inv(r.at(rank, col));
        for (int j = 0; j < r.cols; ++j) r.at(rank, j) = F.mul(r.at(rank, j), s);
        for (int i = 0; i < r.rows; ++i) {
            if (i == rank || r.at(i, col).v == 0) continue;
            Fel f = r.at(i, col);
            for (int j = 0; j < r.cols; ++j)
                r.at(i, j) = F.sub(r.at(i, j), F.mul(f, r.at(rank, j)));
        }
        ++rank;
    }
    return {std::move(r), rank};
}

std::optional<Matrix> try_inverse(const Matrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("try_inverse: matrix not square");
    const int n = m.rows;
    Matrix aug(n, 2 * n, m.field);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = m.field->one();
    }
    auto [red, rank] = rref(aug);
    (void)rank;
    // invertible iff the left block reduced to the identity
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (red.at(i, j).v != (i == j ? 1u : 0u)) return std::nullopt;
    Matrix inv(n, n, m.field);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = red.at(i, n + j);
    return inv;
}

std::vector<std::uint32_t> Subspace::key() const {
    std::vector<std::uint32_t> k;
    k.reserve(2 + basis.e.size());
    k.push_back(static_cast<std::uint32_t>(ambient));
    k.push_back(static_cast<std::uint32_t>(dim()));
    for (Fel x : basis.e) k.push_back(x.v);
    return k;
}

nlohmann::json Subspace::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < basis.rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < basis.cols; ++j) row.push_back(basis.at(i, j).v);
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"n", ambient}, {"basis", std::move(rows)}};
}

bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient == b.ambient && a.basis == b.basis;
}

Subspace subspace_from_rows(const Matrix& rows) {
    auto [red, rank] = rref(rows);
    Matrix basis(rank, rows.cols, rows.field);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rows.cols; ++j) basis.at(i, j) = red.at(i, j);
    return Subspace{rows.cols, rows.field, std::move(basis)};
}

Subspace zero_subspace(int n, FieldPtr f) {
    return Subspace{n, f, Matrix(0, n, f)};
}

Subspace full_space(int n, FieldPtr f) {
    return Subspace{n, f, Matrix::identity(n, f)};
}

Subspace image(const Matrix& m) { return subspace_from_rows(transpose(m)); }

Subspace kernel(const Matrix& m) {
    auto [red, rank] = rref(m);
    const Field& F = *m.field;
    std::vector<int> pivot_col(rank);
    std::vector<bool> is_pivot(m.cols, false);
    for (int i = 0, col = 0; i < rank; ++i) {
        while (red.at(i, col).v == 0) ++col;
        pivot_col[i] = col;
        is_pivot[col] = true;
    }
    Matrix rows(m.cols - rank, m.cols, m.field);
    int r = 0;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        rows.at(r, free) = F.one();
        for (int i = 0; i < rank; ++i) rows.at(r, pivot_col[i]) = F.neg(red.at(i, free));
        ++r;
    }
    return subspace_from_rows(rows);
}

bool member(const Subspace& s, const std::vector<Fel>& v) {
    if (static_cast<int>(v.size()) != s.ambient)
        throw std::invalid_argument("member: vector length mismatch");
    const Field& F = *s.field;
    std::vector<Fel> w = v;
    for (int i = 0, col = 0; i < s.basis.rows; ++i) {
        while (s.basis.at(i, col).v == 0) ++col;
        if (w[col].v != 0) {
            Fel c = w[col];
            for (int j = col; j < s.ambient; ++j) w[j] = F.sub(w[j], F.mul(c, s.basis.at(i, j)));
        }
    }
    return std::all_of(w.begin(), w.end(), [](Fel x) { return x.v == 0; });
}

bool contains(const Subspace& outer, const Subspace& inner) {
    if (outer.ambient != inner.ambient)
        throw std::invalid_argument("contains: ambient dimension mismatch");
    require_same_field(outer.field, inner.field, "contains");
    if (inner.dim() > outer.dim()) return false;
    for (int i = 0; i < inner.basis.rows; ++i) {
        std::vector<Fel> v(inner.ambient);
        for (int j = 0; j < inner.ambient; ++j) v[j] = inner.basis.at(i, j);
        if (!member(outer, v)) return false;
    }
    return true;
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("sum: ambient dimension mismatch");
    require_same_field(a.field, b.field, "sum");
    Matrix stacked(a.dim() + b.dim(), a.ambient, a.field);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.ambient; ++j) stacked.at(i, j) = a.basis.at(i, j);
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < a.ambient; ++j) stacked.at(a.dim() + i, j) = b.basis.at(i, j);
    return subspace_from_rows(stacked);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient)
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    require_same_field(a.field, b.field, "intersect");
    const int n = a.ambient;
    // Zassenhaus block matrix [[A A],[B 0]]: after elimination, rows with a
    // zero left half carry a spanning set of the intersection in the right half.
    Matrix z(a.dim() + b.dim(), 2 * n, a.field);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < n; ++j) {
            z.at(i, j) = a.basis.at(i, j);
            z.at(i, n + j) = a.basis.at(i, j);
        }
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < n; ++j) z.at(a.dim() + i, j) = b.basis.at(i, j);
    auto [red, rank] = rref(z);
    (void)rank;
    Matrix rows(0, n, a.field);
    std::vector<Fel> buf;
    for (int i = 0; i < red.rows; ++i) {
        bool left_zero = true;
        for (int j = 0; j < n && left_zero; ++j) left_zero = red.at(i, j).v == 0;
        bool right_zero = true;
        for (int j = 0; j < n && right_zero; ++j) right_zero = red.at(i, n + j).v == 0;
        if (left_zero && !right_zero)
            for (int j = 0; j < n; ++j) buf.push_back(red.at(i, n + j));
    }
    rows.rows = static_cast<int>(buf.size()) / n;
    rows.e = std::move(buf);
    return subspace_from_rows(rows);
}

Subspace map_subspace(const Matrix& a, const Subspace& s) {
    if (a.cols != s.ambient) throw std::invalid_argument("map_subspace: shape mismatch");
    Matrix rows(s.dim(), a.rows, s.field);
    for (int i = 0; i < s.dim(); ++i) {
        std::vector<Fel> x(s.ambient);
        for (int j = 0; j < s.ambient; ++j) x[j] = s.basis.at(i, j);
        std::vector<Fel> y = apply_matrix(a, x);
        for (int j = 0; j < a.rows; ++j) rows.at(i, j) = y[j];
    }
    return subspace_from_rows(rows);
}

std::vector<Subspace> enumerate_subspaces(int n, int k, const FieldPtr& f) {
    if (k < 0 || k > n) throw std::invalid_argument("enumerate_subspaces: need 0 <= k <= n");
    BigUint expected = q_binomial(n, k, f->q());
    if (expected > BigUint(5000000))
        throw CapacityError("enumerate_subspaces: too many subspaces to enumerate");
    const std::uint64_t total = expected.to_u64();

    std::vector<Subspace> out;
    out.reserve(total);
    if (k == 0) {
        out.push_back(zero_subspace(n, f));
        return out;
    }
    const Field& F = *f;
    const std::uint32_t q = F.q();

    std::vector<int> pivots(k);
    for (int i = 0; i < k; ++i) pivots[i] = i;  // first k-subset
    while (true) {
        std::vector<bool> is_pivot(n, false);
        for (int p : pivots) is_pivot[p] = true;
        // free cells: (row i, col c) with c non-pivot and c > pivots[i], row-major
        std::vector<std::pair<int, int>> cells;
        for (int i = 0; i < k; ++i)
            for (int c = pivots[i] + 1; c < n; ++c)
                if (!is_pivot[c]) cells.emplace_back(i, c);

        std::vector<std::uint32_t> digits(cells.size(), 0);
        while (true) {
            Matrix basis(k, n, f);
            for (int i = 0; i < k; ++i) basis.at(i, pivots[i]) = F.one();
            for (std::size_t t = 0; t < cells.size(); ++t)
                basis.at(cells[t].first, cells[t].second) = Fel{digits[t]};
            out.push_back(Subspace{n, f, std::move(basis)});
            // odometer, last cell fastest
            std::size_t t = cells.size();
            while (t > 0) {
                --t;
                if (++digits[t] < q) break;
                digits[t] = 0;
                if (t == 0) { t = cells.size() + 1; break; }
            }
            if (cells.empty() || t == cells.size() + 1) break;
        }
        // next k-subset of {0..n-1}, lexicographic
        int i = k - 1;
        while (i >= 0 && pivots[i] == n - k + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    if (out.size() != total)
        throw std::logic_error("enumerate_subspaces: count disagrees with q_binomial");
    return out;
}

BigUint q_binomial(int n, int k, std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("q_binomial: q must be >= 2");
    if (k < 0 || k > n) return BigUint(0);
    if (k == 0 || k == n) return BigUint(1);
    // q-Pascal recursion, exact at every step
    std::vector<BigUint> row(static_cast<std::size_t>(k) + 1);
    row[0] = BigUint(1);
    for (int j = 1; j <= n; ++j) {
        for (int i = std::min(j, k); i >= 1; --i) {
            BigUint upper = (i == j) ? BigUint(0) : row[i];
            row[i] = upper + BigUint::pow(q, static_cast<unsigned>(j - i)) * row[i - 1];
        }
    }
    return row[k];
}

std::string subspace_name(const Subspace& s) {
    std::string out = "<";
    for (int i = 0; i < s.basis.rows; ++i) {
        if (i) out += ',';
        for (int j = 0; j < s.basis.cols; ++j) {
            std::uint32_t v = s.basis.at(i, j).v;
            if (v > 9) {
                out += '(' + std::to_string(v) + ')';
            } else {
                out += static_cast<char>('0' + v);
            }
        }
    }
    out += '>';
    return out;
}

} // namespace zdg
