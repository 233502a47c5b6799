#ifndef ZDG_THETA_MATRIX_HPP
#define ZDG_THETA_MATRIX_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zdg/bigint.hpp"
#include "zdg/digraph.hpp"
#include "zdg/gf.hpp"
#include "zdg/subspace.hpp"

namespace zdg {

// Vertex of the matrix-ring graph: the pair (image, kernel) of a matrix
// class, with dim V + dim W = n.
struct PairVertex {
    Subspace V, W;
};

// The subspace-pair model of the compressed zero-divisor graph of M_n(F_q):
// one vertex per pair (V, W) with dim V + dim W = n, and an arc
// (V1,W1) -> (V2,W2) exactly when W1 contains V2.
//
// Vertices are ordered by dim V ascending, then by the positions of V and W
// in the fixed subspace enumeration order, so vertex ids are reproducible.
// Vertex 0 is [0] = (0, F^n) and the last vertex is [1] = (F^n, 0).
class ThetaMatrixGraph {
public:
    static constexpr std::size_t default_vertex_cap = 100000;

    ThetaMatrixGraph(int n, FieldPtr f, std::size_t vertex_cap = default_vertex_cap);

    int n() const { return n_; }
    const FieldPtr& field() const { return field_; }
    const Digraph& graph() const { return graph_; }
    int vertex_count() const { return graph_.size(); }

    const PairVertex& vertex(int id) const { return vertices_[id]; }
    int id_of(const Subspace& v, const Subspace& w) const;  // throws if absent
    int zero_vertex() const { return 0; }
    int one_vertex() const { return graph_.size() - 1; }

    // All subspaces of the given dimension, in enumeration order.
    const std::vector<Subspace>& subspaces_of_dim(int k) const { return subs_[k]; }

    // First vertex id of the block with dim V = dv.
    int first_vertex_of_dim(int dv) const { return block_offset_[dv]; }

private:
    int subspace_index(int dim, const Subspace& s) const;

    int n_ = 0;
    FieldPtr field_;
    std::vector<std::vector<Subspace>> subs_;      // by dimension
    std::vector<std::map<std::vector<std::uint32_t>, int>> index_;  // key -> position
    std::vector<int> block_offset_;                // first vertex id per dim V
    std::vector<PairVertex> vertices_;
    Digraph graph_;
};

// --- counting formulas (exact) ---

// Sum over i of (n choose i)_q squared.
BigUint vertex_count_formula(int n, std::uint64_t q);

// Out- and indegree of any vertex with dim W = dim_w:
// sum over i of (dim_w choose i)_q (n choose i)_q.
BigUint degree_formula(int n, int dim_w, std::uint64_t q);

// Least outdegree different from 1: q^{n-1} + ... + q + 2. Strictly
// increasing in q for fixed n > 1, which pins down (n, q) from the graph.
BigUint min_outdeg_above_one(int n, std::uint64_t q);

// --- matrix <-> vertex correspondence ---

PairVertex vertex_of_matrix(const Matrix& a);  // (image, kernel)

// Some matrix with the prescribed image and kernel: extends a basis of W to
// F^n and sends the complement onto a basis of V.
Matrix matrix_of_vertex(const PairVertex& v);

// --- Hamiltonian structures ---

// Simple cycle through exactly the vertices (V, W) and (W, V) over every
// admissible W of complementary dimension outside `forbidden`, every arc of
// the staircase form (X1,X2) -> (X2,X3). Possibly empty. When dim V = n/2 and
// V itself is admissible, the duplicated visit is spliced out through the
// loop vertex (V, V).
std::vector<int> cycle_for_subspace(const ThetaMatrixGraph& g, const Subspace& v,
                                    const std::vector<Subspace>& forbidden);

// Simple cycle covering every vertex whose dimensions are (k, m) or (m, k),
// k + m = n, built by splicing per-subspace cycles.
std::vector<int> cycle_for_partition(const ThetaMatrixGraph& g, int k, int m);

enum class HamiltonianKind { cycle, path };
struct Hamiltonian {
    HamiltonianKind kind;
    std::vector<int> seq;
};

// Hamiltonian cycle of the graph minus {[0],[1]} for n in {2,3}; Hamiltonian
// path for n >= 4 (a Hamiltonian cycle does not exist there, see
// no_hamiltonian_cycle_witness).
Hamiltonian hamiltonian(const ThetaMatrixGraph& g);

// Independent validator: consecutive arcs exist, no vertex repeats, and (when
// requested) the sequence covers exactly V minus {[0],[1]}.
struct SequenceCheck {
    bool ok = false;
    std::string reason;
};
SequenceCheck validate_sequence(const ThetaMatrixGraph& g, const std::vector<int>& seq,
                                bool closed, bool must_cover);

// Certificate that no Hamiltonian cycle exists for n >= 4: deleting the
// vertices with (dim V, dim W) = (1, n-1) from the undirected graph minus
// {[0],[1]} leaves more connected components than vertices were deleted.
struct NoCycleCertificate {
    std::size_t removed = 0;
    std::size_t components = 0;
    bool holds = false;
};
NoCycleCertificate no_hamiltonian_cycle_witness(const ThetaMatrixGraph& g);

// --- cliques ---

// K(U) = {(V, W) : V <= U <= W}, a directed clique.
struct CliqueKU {
    Subspace U;
    std::vector<int> members;
};
CliqueKU clique_K(const ThetaMatrixGraph& g, const Subspace& u);

// Largest directed clique size (formula) and the dimensions of U attaining it.
struct MaxCliqueFormula {
    BigUint size;
    std::vector<int> witness_dims;  // {floor(n/2)} or {floor, ceil}
};
MaxCliqueFormula max_directed_clique(int n, std::uint64_t q);

// One maximum directed clique found by exhaustive search.
std::vector<int> exhaustive_max_directed_clique(const ThetaMatrixGraph& g);

// All maximum directed cliques (each sorted), for cross-checking them
// against K(U).
std::vector<std::vector<int>> all_max_directed_cliques(const ThetaMatrixGraph& g);

// --- dominating sets ---

// n >= 3: pairs the i-th 1-dimensional subspace with the i-th
// (n-1)-dimensional one; size (n choose 1)_q.
std::vector<int> dominating_set(const ThetaMatrixGraph& g);

// n = 2 variant: D of size (2 choose 1)_q - 1 plus the distinguished vertex d.
struct DominatingN2 {
    std::vector<int> D;
    int d = -1;
};
DominatingN2 dominating_set_n2(const ThetaMatrixGraph& g);

// Checks, over the graph minus {[0],[1]}: (1) every vertex outside D is
// undirected-adjacent to D, (2) has an arc into D, (3) has an arc from D.
struct DominationCheck {
    bool dominates = false;
    bool arc_into = false;
    bool arc_from = false;
    bool all() const { return dominates && arc_into && arc_from; }
};
DominationCheck check_domination(const ThetaMatrixGraph& g, const std::vector<int>& d);

// --- graph-theoretic characterization ---

// Evaluates the five defining properties of the matrix-ring graph on an
// arbitrary digraph, exactly:
//   (i)   the number of distinct outdegrees is n+1,
//   (ii)  the k-th outdegree class has (n choose k)_q^2 vertices,
//   (iii) |N+(x) cap V_j| = |N-(x) cap V_j| = (n choose j)_q (n-k choose j)_q,
//   (iv)  every target-closed set is the target closure of a single vertex,
//         and dually for source-closed sets,
//   (v)   |cl_t(x) cap cl_s(y) cap V_k| = 1 for x, y in V_k.
// Failures are reported with witnesses, never thrown.
struct PropertyReport {
    struct Item {
        bool pass = false;
        nlohmann::json witness;  // null when passing
    };
    std::array<Item, 5> properties;
    bool all_pass() const;
    nlohmann::json to_json() const;
};
PropertyReport verify_characterization(const Digraph& g, int n, std::uint64_t q);

// --- automorphisms ---

// Vertex permutation (V, W) -> (A V^sigma, A W^sigma) induced by the
// semilinear map x -> A x^sigma; sigma is an index permutation from
// Field::automorphisms(). Throws std::domain_error if A is singular. The
// result is checked to be an arc-preserving bijection.
std::vector<int> induced_automorphism(const ThetaMatrixGraph& g, const Matrix& a,
                                      const std::vector<std::uint32_t>& sigma);

// n = 2 only: any permutation pi of the q+1 lines yields the automorphism
// fixing [0] and [1] and mapping (V, W) -> (pi V, pi W). Reports whether the
// permutation is induced by some semilinear map by exhausting all (A, sigma).
struct ExoticAut {
    std::vector<int> vertex_perm;
    bool induced = false;
    std::size_t induced_line_perms = 0;  // distinct line permutations realized
};
ExoticAut exotic_automorphism_n2(const ThetaMatrixGraph& g, const std::vector<int>& line_perm);

// JSON for the whole labelled graph (labels carry {"V":..., "W":...}).
nlohmann::json theta_matrix_to_json(const ThetaMatrixGraph& g);

} // namespace zdg

#endif
