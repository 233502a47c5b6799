#ifndef ZDG_DIGRAPH_HPP
#define ZDG_DIGRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace zdg {

// Fixed-width bitset used for vertex sets and adjacency rows.
class Bitvec {
public:
    Bitvec() = default;
    explicit Bitvec(std::size_t n, bool ones = false);

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    void and_with(const Bitvec& other);
    void or_with(const Bitvec& other);
    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }

    std::vector<int> to_vector() const;  // set bits, ascending
    static Bitvec from_vector(std::size_t n, const std::vector<int>& ids);

    const std::vector<std::uint64_t>& words() const { return w_; }

    friend bool operator==(const Bitvec&, const Bitvec&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Directed graph with loops allowed and set-semantics arcs (no multi-edges).
// Out- and in-rows are kept as bitsets per vertex. Arcs are added during
// construction; everything else is a pure query on the finished graph.
// Optional JSON metadata rides along per vertex (the DOT emitter uses a
// label's "name" key when present).
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int n);

    int size() const { return n_; }
    void add_arc(int u, int v);
    void remove_arc(int u, int v);
    bool has_arc(int u, int v) const { return out_[u].test(static_cast<std::size_t>(v)); }

    const Bitvec& out(int v) const { return out_[v]; }
    const Bitvec& in(int v) const { return in_[v]; }
    int outdeg(int v) const { return static_cast<int>(out_[v].count()); }
    int indeg(int v) const { return static_cast<int>(in_[v].count()); }
    std::size_t arc_count() const;
    std::vector<std::pair<int, int>> arcs() const;  // sorted (src, dst)

    void set_label(int v, nlohmann::json label);
    const nlohmann::json& label(int v) const;
    bool has_labels() const { return !labels_.empty(); }

private:
    int n_ = 0;
    std::vector<Bitvec> out_, in_;
    std::vector<nlohmann::json> labels_;  // empty, or one entry per vertex
};

// Common post-/pre-neighbours of every vertex in X; by convention the empty
// intersection is all of V(G), so n_plus(G, {}) = V(G).
Bitvec n_plus(const Digraph& g, const Bitvec& x);
Bitvec n_minus(const Digraph& g, const Bitvec& x);

// Target and source closures: cl_t = N+(N-(X)), cl_s = N-(N+(X)). Both are
// extensive, monotone and idempotent.
Bitvec cl_t(const Digraph& g, const Bitvec& x);
Bitvec cl_s(const Digraph& g, const Bitvec& x);
Bitvec cl_t(const Digraph& g, int v);
Bitvec cl_s(const Digraph& g, int v);

// Tensor (categorical) product: vertex (g,h) -> g*|H|+h, arc (g,h)->(g',h')
// iff g->g' and h->h'.
Digraph tensor_product(const Digraph& g, const Digraph& h);

// Vertices grouped by outdegree, classes ordered by strictly decreasing
// degree. type_of[v] is the class index ("type") of v.
struct TypePartition {
    std::vector<int> degrees;             // distinct outdegrees, decreasing
    std::vector<std::vector<int>> classes;
    std::vector<int> type_of;
};
TypePartition type_partition(const Digraph& g);

// The unique w of complementary type with v->w and w->v. Throws
// PropertyViolation when no or several candidates exist (the graph then is
// not a matrix-ring graph).
int opposite_vertex(const Digraph& g, int v);

// Arc-preserving bijection H-vertex per G-vertex, or nullopt. Backtracking
// over (outdegree, indegree, loop) classes refined by iterated neighbourhood
// colouring. Intended for small instances; throws CapacityError above 2000
// vertices.
std::optional<std::vector<int>> isomorphic_small(const Digraph& g, const Digraph& h);

nlohmann::json graph_to_json(const Digraph& g);  // {"n":., "arcs":[[u,v]], "labels":[...]}
Digraph graph_from_json(const nlohmann::json& j);
std::string graph_to_dot(const Digraph& g, const std::string& name = "theta");

} // namespace zdg

#endif
