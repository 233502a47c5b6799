#ifndef ZDG_FINRING_HPP
#define ZDG_FINRING_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "zdg/digraph.hpp"
#include "zdg/gf.hpp"
#include "zdg/subspace.hpp"

namespace zdg {

using RingElem = std::uint32_t;  // canonical element index in [0, size)

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Finite unital ring with enumerable elements. Operation tables are
// materialized for size <= 256 (and the ring axioms are then verified
// exhaustively at construction); larger rings evaluate callable rules.
// Immutable after construction.
class Ring {
public:
    static constexpr std::uint32_t default_cap = 6561;
    static constexpr std::uint32_t table_size = 256;

    std::uint32_t size() const { return size_; }
    RingElem zero() const { return zero_; }
    RingElem one() const { return one_; }
    const std::string& descriptor() const { return desc_; }

    RingElem add(RingElem a, RingElem b) const {
        return add_tab_.empty() ? add_rule_(a, b) : add_tab_[a * size_ + b];
    }
    RingElem mul(RingElem a, RingElem b) const {
        return mul_tab_.empty() ? mul_rule_(a, b) : mul_tab_[a * size_ + b];
    }

private:
    friend class RingBuilder;
    Ring() = default;

    std::uint32_t size_ = 0;
    RingElem zero_ = 0, one_ = 0;
    std::string desc_;
    std::vector<RingElem> add_tab_, mul_tab_;
    std::function<RingElem(RingElem, RingElem)> add_rule_, mul_rule_;
};

RingPtr ring_zmod(std::uint32_t n, std::uint32_t cap = Ring::default_cap);
RingPtr ring_matrix(int n, FieldPtr f, std::uint32_t cap = Ring::default_cap);
RingPtr ring_product(const std::vector<RingPtr>& factors, std::uint32_t cap = Ring::default_cap);

// "zmod:12" | "matrix:<n>:<q>" | "product:<desc>,<desc>,..." (factors of a
// product may not themselves be products).
RingPtr parse_ring(const std::string& descriptor, std::uint32_t cap = Ring::default_cap);

// Index <-> matrix codec for ring_matrix elements: base-q digits of the index
// are the entries in row-major order, entry (0,0) least significant.
Matrix matrix_ring_decode(int n, const FieldPtr& f, RingElem idx);
RingElem matrix_ring_encode(const Matrix& m);

// Elements with a two-sided multiplicative inverse.
std::vector<RingElem> units(const Ring& r);

// One equivalence class of the relation a ~ b iff aR = bR and Ra = Rb (on
// finite rings this is exactly "a = bu = vb for units u, v").
struct ThetaClass {
    RingElem representative;          // least member
    std::vector<RingElem> members;    // ascending
    std::vector<RingElem> right_ideal;  // aR, ascending
    std::vector<RingElem> left_ideal;   // Ra, ascending
};

// The classes partition R; ordered by representative.
std::vector<ThetaClass> theta_classes(const Ring& r);

// The compressed zero-divisor graph: one vertex per class, arc [x]->[y] iff
// x*y = 0. Edge well-definedness over class members is re-checked
// (exhaustively for rings of size <= 100, on a deterministic sample beyond).
Digraph theta_graph(const Ring& r);

// Graph homomorphism induced by a unital ring homomorphism, as a map from
// theta-class indices of R to theta-class indices of S.
struct GraphHom {
    std::vector<int> vertex_map;
};

// f is given element-wise (f[a] in S for every a in R) and is verified to be
// unital, additive and multiplicative; throws std::invalid_argument if not.
GraphHom theta_hom(const std::vector<RingElem>& f, const Ring& r, const Ring& s);

} // namespace zdg

#endif
