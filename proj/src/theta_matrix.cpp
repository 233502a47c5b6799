#include "zdg/theta_matrix.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "zdg/errors.hpp"

namespace zdg {

ThetaMatrixGraph::ThetaMatrixGraph(int n, FieldPtr f, std::size_t vertex_cap)
    : n_(n), field_(std::move(f)) {
    if (n < 1) throw std::invalid_argument("ThetaMatrixGraph: n must be >= 1");
    BigUint total_big = vertex_count_formula(n, field_->q());
    if (total_big > BigUint(static_cast<std::uint64_t>(vertex_cap)))
        throw CapacityError("ThetaMatrixGraph: " + total_big.str() +
                            " vertices exceed the cap " + std::to_string(vertex_cap));
    const int total = static_cast<int>(total_big.to_u64());

    subs_.resize(n + 1);
    index_.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        subs_[k] = enumerate_subspaces(n, k, field_);
        for (std::size_t i = 0; i < subs_[k].size(); ++i)
            index_[k].emplace(subs_[k][i].key(), static_cast<int>(i));
    }

    block_offset_.assign(n + 2, 0);
    vertices_.reserve(total);
    for (int dv = 0; dv <= n; ++dv) {
        block_offset_[dv] = static_cast<int>(vertices_.size());
        for (const Subspace& v : subs_[dv])
            for (const Subspace& w : subs_[n - dv]) vertices_.push_back(PairVertex{v, w});
    }
    block_offset_[n + 1] = static_cast<int>(vertices_.size());

    // arc (V1,W1) -> (V2,W2) iff W1 contains V2; the out-row of a vertex
    // depends only on its kernel, so rows are built once per subspace
    std::vector<int> dim_offset(n + 2, 0);
    for (int k = 0; k <= n; ++k)
        dim_offset[k + 1] = dim_offset[k] + static_cast<int>(subs_[k].size());
    const int nsubs = dim_offset[n + 1];

    std::vector<Bitvec> row_of(nsubs);
    for (int k = 0; k <= n; ++k) {
        for (std::size_t i = 0; i < subs_[k].size(); ++i) {
            Bitvec row(static_cast<std::size_t>(total));
            for (int id = 0; id < total; ++id)
                if (contains(subs_[k][i], vertices_[id].V)) row.set(static_cast<std::size_t>(id));
            row_of[dim_offset[k] + static_cast<int>(i)] = std::move(row);
        }
    }

    graph_ = Digraph(total);
    for (int id = 0; id < total; ++id) {
        const Subspace& w = vertices_[id].W;
        const Bitvec& row = row_of[dim_offset[w.dim()] + subspace_index(w.dim(), w)];
        for (int v : row.to_vector()) graph_.add_arc(id, v);
        graph_.set_label(id, nlohmann::json{
                                 {"name", "(" + subspace_name(vertices_[id].V) + "," +
                                              subspace_name(vertices_[id].W) + ")"},
                                 {"V", vertices_[id].V.to_json()},
                                 {"W", vertices_[id].W.to_json()}});
    }
}

int ThetaMatrixGraph::subspace_index(int dim, const Subspace& s) const {
    auto it = index_[dim].find(s.key());
    if (it == index_[dim].end())
        throw std::invalid_argument("ThetaMatrixGraph: unknown subspace");
    return it->second;
}

int ThetaMatrixGraph::id_of(const Subspace& v, const Subspace& w) const {
    if (v.ambient != n_ || w.ambient != n_ || v.dim() + w.dim() != n_)
        throw std::invalid_argument("ThetaMatrixGraph::id_of: not a vertex");
    if (!v.field->same(*field_) || !w.field->same(*field_))
        throw std::invalid_argument("ThetaMatrixGraph::id_of: field mismatch");
    const int dv = v.dim();
    const int iv = subspace_index(dv, v);
    const int iw = subspace_index(n_ - dv, w);
    return block_offset_[dv] + iv * static_cast<int>(subs_[n_ - dv].size()) + iw;
}

BigUint vertex_count_formula(int n, std::uint64_t q) {
    BigUint total(0);
    for (int i = 0; i <= n; ++i) {
        BigUint b = q_binomial(n, i, q);
        total += b * b;
    }
    return total;
}

BigUint degree_formula(int n, int dim_w, std::uint64_t q) {
    if (dim_w < 0 || dim_w > n) throw std::invalid_argument("degree_formula: bad dim W");
    BigUint total(0);
    for (int i = 0; i <= dim_w; ++i) total += q_binomial(dim_w, i, q) * q_binomial(n, i, q);
    return total;
}

BigUint min_outdeg_above_one(int n, std::uint64_t q) {
    if (n <= 1) throw std::invalid_argument("min_outdeg_above_one: n must be > 1");
    BigUint total(2);
    for (int i = 1; i <= n - 1; ++i) total += BigUint::pow(q, static_cast<unsigned>(i));
    return total;
}

PairVertex vertex_of_matrix(const Matrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("vertex_of_matrix: matrix not square");
    return PairVertex{image(a), kernel(a)};
}

Matrix matrix_of_vertex(const PairVertex& v) {
    const int n = v.V.ambient;
    const FieldPtr& f = v.V.field;
    const Field& F = *f;
    if (v.W.ambient != n || v.V.dim() + v.W.dim() != n)
        throw std::invalid_argument("matrix_of_vertex: not a valid pair");

    // columns of P: a basis of W extended by standard vectors to a basis of F^n
    Matrix p(n, n, f);
    int col = 0;
    std::vector<Fel> buf;
    auto try_add = [&](const std::vector<Fel>& vec) {
        Subspace cur{n, f, Matrix(0, n, f)};
        if (!buf.empty()) {
            Matrix rows(col, n, f);
            rows.e = buf;
            cur = subspace_from_rows(rows);
        }
        if (member(cur, vec)) return false;
        for (int i = 0; i < n; ++i) p.at(i, col) = vec[i];
        buf.insert(buf.end(), vec.begin(), vec.end());
        ++col;
        return true;
    };
    for (int i = 0; i < v.W.dim(); ++i) {
        std::vector<Fel> vec(n);
        for (int j = 0; j < n; ++j) vec[j] = v.W.basis.at(i, j);
        try_add(vec);
    }
    const int k = v.W.dim();
    for (int e = 0; e < n && col < n; ++e) {
        std::vector<Fel> vec(n, F.zero());
        vec[e] = F.one();
        try_add(vec);
    }

    // target columns: W-part to zero, complement onto the basis of V
    Matrix c(n, n, f);
    for (int j = k; j < n; ++j)
        for (int i = 0; i < n; ++i) c.at(i, j) = v.V.basis.at(j - k, i);
    auto pinv = try_inverse(p);
    if (!pinv) throw std::logic_error("matrix_of_vertex: basis extension failed");
    return c * *pinv;
}

std::vector<int> cycle_for_subspace(const ThetaMatrixGraph& g, const Subspace& v,
                                    const std::vector<Subspace>& forbidden) {
    const int n = g.n();
    if (v.ambient != n) throw std::invalid_argument("cycle_for_subspace: wrong ambient");
    if (v.dim() == 0 || v.dim() == n)
        throw std::invalid_argument("cycle_for_subspace: subspace must be nontrivial and proper");
    for (const Subspace& s : forbidden)
        if (s == v) throw std::invalid_argument("cycle_for_subspace: V itself is forbidden");

    const int m = n - v.dim();
    std::vector<Subspace> ws;
    for (const Subspace& w : g.subspaces_of_dim(m)) {
        bool banned = false;
        for (const Subspace& s : forbidden)
            if (s == w) { banned = true; break; }
        if (!banned) ws.push_back(w);
    }
    if (ws.empty()) return {};

    // when V is admissible (only possible for dim V = n/2) it is visited once,
    // through its loop vertex
    bool spliced = false;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (ws[i] == v) {
            std::rotate(ws.begin(), ws.begin() + static_cast<std::ptrdiff_t>(i),
                        ws.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            spliced = true;
            break;
        }
    }

    std::vector<int> seq;
    std::size_t j = 0;
    if (spliced) {
        seq.push_back(g.id_of(v, v));
        j = 1;
    }
    for (; j < ws.size(); ++j) {
        seq.push_back(g.id_of(v, ws[j]));
        seq.push_back(g.id_of(ws[j], v));
    }
    return seq;
}

namespace {

// path obtained from the cycle by deleting the arc c[t] -> c[t+1]
std::vector<int> open_cycle_after(const std::vector<int>& c, std::size_t t) {
    std::vector<int> path;
    path.reserve(c.size());
    for (std::size_t i = 1; i <= c.size(); ++i) path.push_back(c[(t + i) % c.size()]);
    return path;
}

std::size_t find_in_cycle(const std::vector<int>& c, int id, const char* what) {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] == id) return i;
    throw std::logic_error(std::string(what) + ": expected vertex missing from cycle");
}

} // namespace

std::vector<int> cycle_for_partition(const ThetaMatrixGraph& g, int k, int m) {
    const int n = g.n();
    if (k < 1 || m < 1 || k + m != n)
        throw std::invalid_argument("cycle_for_partition: need k + m = n with k, m >= 1");

    const auto& vs = g.subspaces_of_dim(k);
    const std::size_t s = vs.size();
    std::vector<int> seq;

    if (k != m) {
        const Subspace& x = g.subspaces_of_dim(m).front();
        for (std::size_t i = 0; i < s; ++i) {
            std::vector<int> cycle = cycle_for_subspace(g, vs[i], {});
            std::size_t t = find_in_cycle(cycle, g.id_of(vs[i], x), "cycle_for_partition");
            std::vector<int> path = open_cycle_after(cycle, t);
            seq.insert(seq.end(), path.begin(), path.end());
        }
    } else {
        std::vector<Subspace> forbidden;
        for (std::size_t i = 0; i + 1 < s; ++i) {
            std::vector<int> cycle = cycle_for_subspace(g, vs[i], forbidden);
            std::size_t t = find_in_cycle(cycle, g.id_of(vs[i], vs[s - 1]), "cycle_for_partition");
            std::vector<int> path = open_cycle_after(cycle, t);
            seq.insert(seq.end(), path.begin(), path.end());
            forbidden.push_back(vs[i]);
        }
        seq.push_back(g.id_of(vs[s - 1], vs[s - 1]));
    }
    return seq;
}

Hamiltonian hamiltonian(const ThetaMatrixGraph& g) {
    const int n = g.n();
    if (n < 2) throw std::invalid_argument("hamiltonian: n must be >= 2");
    if (n <= 3) return Hamiltonian{HamiltonianKind::cycle, cycle_for_partition(g, 1, n - 1)};

    // chain Y_1 <= Y_2 <= ... of one subspace per dimension, first in
    // enumeration order at every step
    const int half = n / 2;
    std::vector<Subspace> chain;
    chain.push_back(g.subspaces_of_dim(1).front());
    for (int k = 2; k <= half; ++k) {
        for (const Subspace& s : g.subspaces_of_dim(k)) {
            if (contains(s, chain.back())) {
                chain.push_back(s);
                break;
            }
        }
    }

    std::vector<int> seq;
    for (int k = half; k >= 1; --k) {
        const Subspace& y = chain[static_cast<std::size_t>(k) - 1];
        std::vector<int> cycle = cycle_for_partition(g, k, n - k);
        std::size_t t = cycle.size();
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (g.vertex(cycle[i]).W == y) { t = i; break; }
        }
        if (t == cycle.size()) throw std::logic_error("hamiltonian: no edge through chain subspace");
        std::vector<int> path = open_cycle_after(cycle, t);
        seq.insert(seq.end(), path.begin(), path.end());
    }
    return Hamiltonian{HamiltonianKind::path, seq};
}

SequenceCheck validate_sequence(const ThetaMatrixGraph& g, const std::vector<int>& seq,
                                bool closed, bool must_cover) {
    const Digraph& d = g.graph();
    std::vector<bool> seen(static_cast<std::size_t>(d.size()), false);
    for (int id : seq) {
        if (id < 0 || id >= d.size()) return {false, "vertex id out of range"};
        if (seen[static_cast<std::size_t>(id)]) return {false, "vertex repeated"};
        seen[static_cast<std::size_t>(id)] = true;
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!d.has_arc(seq[i], seq[i + 1]))
            return {false, "missing arc " + std::to_string(seq[i]) + " -> " +
                               std::to_string(seq[i + 1])};
    if (closed && !seq.empty() && !d.has_arc(seq.back(), seq.front()))
        return {false, "missing closing arc"};
    if (must_cover) {
        for (int v = 0; v < d.size(); ++v) {
            bool excluded = v == g.zero_vertex() || v == g.one_vertex();
            if (seen[static_cast<std::size_t>(v)] == excluded)
                return {false, excluded ? "sequence visits [0] or [1]"
                                        : "vertex " + std::to_string(v) + " not covered"};
        }
    }
    return {true, ""};
}

NoCycleCertificate no_hamiltonian_cycle_witness(const ThetaMatrixGraph& g) {
    if (g.n() < 4) throw std::invalid_argument("no_hamiltonian_cycle_witness: n must be >= 4");
    const Digraph& d = g.graph();
    const std::size_t nv = static_cast<std::size_t>(d.size());

    Bitvec remaining(nv, true);
    remaining.reset(static_cast<std::size_t>(g.zero_vertex()));
    remaining.reset(static_cast<std::size_t>(g.one_vertex()));
    std::size_t removed = 0;
    for (int id = 0; id < d.size(); ++id) {
        if (g.vertex(id).V.dim() == 1) {
            remaining.reset(static_cast<std::size_t>(id));
            ++removed;
        }
    }

    std::size_t components = 0;
    std::vector<bool> visited(nv, false);
    for (int start = 0; start < d.size(); ++start) {
        if (!remaining.test(static_cast<std::size_t>(start)) || visited[start]) continue;
        ++components;
        std::vector<int> stack{start};
        visited[start] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            Bitvec nb = d.out(u);
            nb.or_with(d.in(u));
            nb.and_with(remaining);
            for (int v : nb.to_vector()) {
                if (!visited[v]) {
                    visited[v] = true;
                    stack.push_back(v);
                }
            }
        }
    }
    return NoCycleCertificate{removed, components, components > removed};
}

CliqueKU clique_K(const ThetaMatrixGraph& g, const Subspace& u) {
    CliqueKU out{u, {}};
    for (int id = 0; id < g.vertex_count(); ++id) {
        if (contains(u, g.vertex(id).V) && contains(g.vertex(id).W, u)) out.members.push_back(id);
    }
    return out;
}

MaxCliqueFormula max_directed_clique(int n, std::uint64_t q) {
    const int lo = n / 2, hi = n - lo;
    BigUint size(0);
    for (int i = 0; i <= lo; ++i) size += q_binomial(lo, i, q) * q_binomial(hi, i, q);
    std::vector<int> dims{lo};
    if (hi != lo) dims.push_back(hi);
    return MaxCliqueFormula{std::move(size), std::move(dims)};
}

namespace {

struct CliqueSearch {
    std::vector<int> cand_ids;           // loop vertices, ascending
    std::vector<Bitvec> compat;          // over candidate positions
    std::vector<int> best;
    std::vector<int> cur;
    std::vector<std::vector<int>>* collect_all = nullptr;
    std::size_t max_size = 0;

    void expand(const Bitvec& p) {
        auto ids = p.to_vector();
        if (!collect_all && cur.size() + ids.size() <= best.size()) return;
        for (std::size_t t = 0; t < ids.size(); ++t) {
            if (!collect_all && cur.size() + (ids.size() - t) <= best.size()) return;
            int i = ids[t];
            cur.push_back(i);
            Bitvec next = p;
            next.and_with(compat[i]);
            for (std::size_t r = 0; r <= t; ++r) next.reset(static_cast<std::size_t>(ids[r]));
            if (next.none()) {
                if (cur.size() > best.size()) best = cur;
                if (collect_all && cur.size() >= max_size) record();
            } else {
                expand(next);
            }
            cur.pop_back();
        }
    }

    void record() {
        std::vector<int> clique;
        for (int i : cur) clique.push_back(cand_ids[i]);
        std::sort(clique.begin(), clique.end());
        collect_all->push_back(std::move(clique));
    }
};

CliqueSearch make_search(const ThetaMatrixGraph& g) {
    const Digraph& d = g.graph();
    CliqueSearch s;
    for (int v = 0; v < d.size(); ++v)
        if (d.has_arc(v, v)) s.cand_ids.push_back(v);
    const std::size_t k = s.cand_ids.size();
    s.compat.assign(k, Bitvec(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && d.has_arc(s.cand_ids[i], s.cand_ids[j]) &&
                d.has_arc(s.cand_ids[j], s.cand_ids[i]))
                s.compat[i].set(j);
    return s;
}

} // namespace

std::vector<int> exhaustive_max_directed_clique(const ThetaMatrixGraph& g) {
    CliqueSearch s = make_search(g);
    Bitvec all(s.cand_ids.size(), true);
    s.expand(all);
    std::vector<int> out;
    for (int i : s.best) out.push_back(s.cand_ids[i]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> all_max_directed_cliques(const ThetaMatrixGraph& g) {
    CliqueSearch probe = make_search(g);
    Bitvec all(probe.cand_ids.size(), true);
    probe.expand(all);
    const std::size_t max_size = probe.best.size();

    CliqueSearch s = make_search(g);
    std::vector<std::vector<int>> found;
    s.collect_all = &found;
    s.max_size = max_size;
    Bitvec all2(s.cand_ids.size(), true);
    s.expand(all2);

    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    std::vector<std::vector<int>> out;
    for (auto& c : found)
        if (c.size() == max_size) out.push_back(std::move(c));
    return out;
}

std::vector<int> dominating_set(const ThetaMatrixGraph& g) {
    if (g.n() < 3) throw std::invalid_argument("dominating_set: use dominating_set_n2 for n = 2");
    const auto& lines = g.subspaces_of_dim(1);
    const auto& hyper = g.subspaces_of_dim(g.n() - 1);
    std::vector<int> d;
    d.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) d.push_back(g.id_of(lines[i], hyper[i]));
    return d;
}

DominatingN2 dominating_set_n2(const ThetaMatrixGraph& g) {
    if (g.n() != 2) throw std::invalid_argument("dominating_set_n2: n must be 2");
    const auto& lines = g.subspaces_of_dim(1);
    DominatingN2 out;
    out.D.push_back(g.id_of(lines[0], lines[1]));
    for (std::size_t i = 2; i < lines.size(); ++i) out.D.push_back(g.id_of(lines[i], lines[i]));
    out.d = g.id_of(lines[1], lines[0]);
    return out;
}

DominationCheck check_domination(const ThetaMatrixGraph& g, const std::vector<int>& d) {
    const Digraph& dg = g.graph();
    Bitvec dbit = Bitvec::from_vector(static_cast<std::size_t>(dg.size()), d);
    DominationCheck r{true, true, true};
    for (int v = 0; v < dg.size(); ++v) {
        if (v == g.zero_vertex() || v == g.one_vertex()) continue;
        if (dbit.test(static_cast<std::size_t>(v))) continue;
        Bitvec into = dg.out(v);
        into.and_with(dbit);
        Bitvec from = dg.in(v);
        from.and_with(dbit);
        bool has_into = into.any(), has_from = from.any();
        r.arc_into = r.arc_into && has_into;
        r.arc_from = r.arc_from && has_from;
        r.dominates = r.dominates && (has_into || has_from);
    }
    return r;
}

bool PropertyReport::all_pass() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const Item& i) { return i.pass; });
}

nlohmann::json PropertyReport::to_json() const {
    static const char* names[5] = {"i", "ii", "iii", "iv", "v"};
    nlohmann::json j = nlohmann::json::object();
    for (int t = 0; t < 5; ++t)
        j[names[t]] = nlohmann::json{{"pass", properties[t].pass},
                                     {"witness", properties[t].witness}};
    return j;
}

PropertyReport verify_characterization(const Digraph& g, int n, std::uint64_t q) {
    PropertyReport report;
    const std::size_t nv = static_cast<std::size_t>(g.size());
    TypePartition tp = type_partition(g);

    // (i) number of distinct outdegrees
    const bool type_count_ok = static_cast<int>(tp.classes.size()) == n + 1;
    report.properties[0].pass = type_count_ok;
    if (!type_count_ok)
        report.properties[0].witness = {{"expected", n + 1},
                                        {"actual", tp.classes.size()}};

    // (ii) class sizes
    if (!type_count_ok) {
        report.properties[1].pass = false;
        report.properties[1].witness = {{"reason", "outdegree class count differs from n+1"}};
    } else {
        report.properties[1].pass = true;
        for (int k = 0; k <= n; ++k) {
            BigUint b = q_binomial(n, k, q);
            if (BigUint(tp.classes[k].size()) != b * b) {
                report.properties[1].pass = false;
                report.properties[1].witness = {{"k", k},
                                                {"expected", (b * b).str()},
                                                {"actual", tp.classes[k].size()}};
                break;
            }
        }
    }

    std::vector<Bitvec> class_bit;
    if (type_count_ok) {
        class_bit.assign(tp.classes.size(), Bitvec(nv));
        for (std::size_t k = 0; k < tp.classes.size(); ++k)
            for (int v : tp.classes[k]) class_bit[k].set(static_cast<std::size_t>(v));
    }

    // (iii) neighbourhood histograms per type
    if (!type_count_ok) {
        report.properties[2].pass = false;
        report.properties[2].witness = {{"reason", "outdegree class count differs from n+1"}};
    } else {
        report.properties[2].pass = true;
        for (int v = 0; v < g.size() && report.properties[2].pass; ++v) {
            const int k = tp.type_of[v];
            for (int j = 0; j <= n; ++j) {
                BigUint expected = q_binomial(n, j, q) * q_binomial(n - k, j, q);
                Bitvec outj = g.out(v);
                outj.and_with(class_bit[static_cast<std::size_t>(j)]);
                Bitvec inj = g.in(v);
                inj.and_with(class_bit[static_cast<std::size_t>(j)]);
                if (BigUint(outj.count()) != expected || BigUint(inj.count()) != expected) {
                    report.properties[2].pass = false;
                    report.properties[2].witness = {{"vertex", v},
                                                    {"k", k},
                                                    {"j", j},
                                                    {"expected", expected.str()},
                                                    {"out", outj.count()},
                                                    {"in", inj.count()}};
                    break;
                }
            }
        }
    }

    // closures of single vertices, reused by (iv) and (v)
    std::vector<Bitvec> clt(nv), cls(nv);
    for (int v = 0; v < g.size(); ++v) {
        clt[v] = cl_t(g, v);
        cls[v] = cl_s(g, v);
    }

    // (iv) every target-closed set is cl_t of a single vertex; dually for
    // source-closed. The closed sets are materialized exactly: every
    // target-closed set equals N+(Y) for some Y, and N+(Y) is the
    // intersection of the N+(y), so the family is the intersection-closure
    // of the single-vertex out-neighbourhoods together with V(G).
    report.properties[3].pass = true;
    auto closed_family_ok = [&](bool target_side, nlohmann::json& witness) {
        std::set<std::vector<std::uint64_t>> seen;
        std::vector<Bitvec> family;
        auto push = [&](const Bitvec& b) {
            if (seen.insert(b.words()).second) family.push_back(b);
        };
        push(Bitvec(nv, true));
        for (int v = 0; v < g.size(); ++v) push(target_side ? g.out(v) : g.in(v));
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (family.size() > 200000)
                throw CapacityError("verify_characterization: closed-set family too large");
            for (std::size_t j = 0; j < i; ++j) {
                Bitvec meet = family[i];
                meet.and_with(family[j]);
                push(meet);
            }
        }
        std::set<std::vector<std::uint64_t>> singles;
        for (int v = 0; v < g.size(); ++v) singles.insert((target_side ? clt : cls)[v].words());
        for (const Bitvec& s : family) {
            if (!singles.count(s.words())) {
                witness = {{"side", target_side ? "target" : "source"},
                           {"closed_set", s.to_vector()}};
                return false;
            }
        }
        return true;
    };
    if (!closed_family_ok(true, report.properties[3].witness)) report.properties[3].pass = false;
    if (report.properties[3].pass && !closed_family_ok(false, report.properties[3].witness))
        report.properties[3].pass = false;

    // (v) unique meet of target and source closures inside each type class
    if (!type_count_ok) {
        report.properties[4].pass = false;
        report.properties[4].witness = {{"reason", "outdegree class count differs from n+1"}};
    } else {
        report.properties[4].pass = true;
        for (std::size_t k = 0; k < tp.classes.size() && report.properties[4].pass; ++k) {
            for (int x : tp.classes[k]) {
                for (int y : tp.classes[k]) {
                    Bitvec meet = clt[x];
                    meet.and_with(cls[y]);
                    meet.and_with(class_bit[k]);
                    if (meet.count() != 1) {
                        report.properties[4].pass = false;
                        report.properties[4].witness = {{"k", k},
                                                        {"x", x},
                                                        {"y", y},
                                                        {"count", meet.count()}};
                        break;
                    }
                }
                if (!report.properties[4].pass) break;
            }
        }
    }
    return report;
}

namespace {

Subspace apply_semilinear(const Matrix& a, const std::vector<std::uint32_t>& sigma,
                          const Subspace& s) {
    Matrix rows = s.basis;
    for (Fel& x : rows.e) x = Fel{sigma[x.v]};
    return map_subspace(a, subspace_from_rows(rows));
}

void check_vertex_permutation(const Digraph& d, const std::vector<int>& perm, const char* what) {
    std::vector<bool> hit(static_cast<std::size_t>(d.size()), false);
    for (int v : perm) {
        if (v < 0 || v >= d.size() || hit[static_cast<std::size_t>(v)])
            throw std::logic_error(std::string(what) + ": map is not a bijection");
        hit[static_cast<std::size_t>(v)] = true;
    }
    for (int u = 0; u < d.size(); ++u)
        for (int v = 0; v < d.size(); ++v)
            if (d.has_arc(u, v) != d.has_arc(perm[u], perm[v]))
                throw std::logic_error(std::string(what) + ": map does not preserve arcs");
}

} // namespace

std::vector<int> induced_automorphism(const ThetaMatrixGraph& g, const Matrix& a,
                                      const std::vector<std::uint32_t>& sigma) {
    if (a.rows != g.n() || a.cols != g.n())
        throw std::invalid_argument("induced_automorphism: matrix has wrong shape");
    if (sigma.size() != g.field()->q())
        throw std::invalid_argument("induced_automorphism: bad field automorphism");
    if (!try_inverse(a)) throw std::domain_error("induced_automorphism: matrix is singular");

    std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
    for (int id = 0; id < g.vertex_count(); ++id) {
        const PairVertex& v = g.vertex(id);
        perm[static_cast<std::size_t>(id)] =
            g.id_of(apply_semilinear(a, sigma, v.V), apply_semilinear(a, sigma, v.W));
    }
    check_vertex_permutation(g.graph(), perm, "induced_automorphism");
    return perm;
}

ExoticAut exotic_automorphism_n2(const ThetaMatrixGraph& g, const std::vector<int>& line_perm) {
    if (g.n() != 2) throw std::invalid_argument("exotic_automorphism_n2: n must be 2");
    const auto& lines = g.subspaces_of_dim(1);
    const int nl = static_cast<int>(lines.size());
    {
        std::vector<bool> hit(static_cast<std::size_t>(nl), false);
        if (static_cast<int>(line_perm.size()) != nl)
            throw std::invalid_argument("exotic_automorphism_n2: bad permutation length");
        for (int x : line_perm) {
            if (x < 0 || x >= nl || hit[static_cast<std::size_t>(x)])
                throw std::invalid_argument("exotic_automorphism_n2: not a permutation");
            hit[static_cast<std::size_t>(x)] = true;
        }
    }

    ExoticAut out;
    out.vertex_perm.resize(static_cast<std::size_t>(g.vertex_count()));
    out.vertex_perm[static_cast<std::size_t>(g.zero_vertex())] = g.zero_vertex();
    out.vertex_perm[static_cast<std::size_t>(g.one_vertex())] = g.one_vertex();
    const int off = g.first_vertex_of_dim(1);
    for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j)
            out.vertex_perm[static_cast<std::size_t>(off + i * nl + j)] =
                off + line_perm[i] * nl + line_perm[j];
    check_vertex_permutation(g.graph(), out.vertex_perm, "exotic_automorphism_n2");

    // exhaust every semilinear map x -> A x^sigma and collect the induced
    // line permutations
    const Field& f = *g.field();
    const std::uint64_t q = f.q();
    if (q > 31) throw CapacityError("exotic_automorphism_n2: inducedness search capped at q <= 31");
    std::set<std::vector<int>> realized;
    for (const auto& sigma : f.automorphisms()) {
        for (std::uint64_t code = 0; code < q * q * q * q; ++code) {
            Matrix a(2, 2, g.field());
            std::uint64_t c = code;
            for (int t = 0; t < 4; ++t) {
                a.e[static_cast<std::size_t>(t)] = Fel{static_cast<std::uint32_t>(c % q)};
                c /= q;
            }
            // det != 0
            Fel det = f.sub(f.mul(a.at(0, 0), a.at(1, 1)), f.mul(a.at(0, 1), a.at(1, 0)));
            if (det.v == 0) continue;
            std::vector<int> lp(static_cast<std::size_t>(nl));
            for (int i = 0; i < nl; ++i) {
                Subspace img = apply_semilinear(a, sigma, lines[i]);
                lp[static_cast<std::size_t>(i)] = -1;
                for (int j = 0; j < nl; ++j)
                    if (lines[j] == img) { lp[static_cast<std::size_t>(i)] = j; break; }
            }
            realized.insert(std::move(lp));
        }
    }
    out.induced = realized.count(line_perm) > 0;
    out.induced_line_perms = realized.size();
    return out;
}

nlohmann::json theta_matrix_to_json(const ThetaMatrixGraph& g) {
    nlohmann::json j = graph_to_json(g.graph());
    j["model"] = {{"n", g.n()}, {"q", g.field()->q()}};
    return j;
}

} // namespace zdg
