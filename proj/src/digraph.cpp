#include "zdg/digraph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

#include "zdg/errors.hpp"

namespace zdg {

Bitvec::Bitvec(std::size_t n, bool ones) : n_(n), w_((n + 63) / 64, 0) {
    if (ones) {
        for (auto& w : w_) w = ~std::uint64_t(0);
        if (n & 63) w_.back() &= (std::uint64_t(1) << (n & 63)) - 1;
    }
}

void Bitvec::and_with(const Bitvec& other) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= other.w_[i];
}

void Bitvec::or_with(const Bitvec& other) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= other.w_[i];
}

std::size_t Bitvec::count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool Bitvec::any() const {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w != 0; });
}

std::vector<int> Bitvec::to_vector() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        std::uint64_t w = w_[i];
        while (w) {
            out.push_back(static_cast<int>(i * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

Bitvec Bitvec::from_vector(std::size_t n, const std::vector<int>& ids) {
    Bitvec b(n);
    for (int i : ids) {
        if (i < 0 || static_cast<std::size_t>(i) >= n)
            throw std::out_of_range("Bitvec::from_vector: id out of range");
        b.set(static_cast<std::size_t>(i));
    }
    return b;
}

Digraph::Digraph(int n) : n_(n), out_(n, Bitvec(n)), in_(n, Bitvec(n)) {}

void Digraph::add_arc(int u, int v) {
    out_[u].set(static_cast<std::size_t>(v));
    in_[v].set(static_cast<std::size_t>(u));
}

void Digraph::remove_arc(int u, int v) {
    out_[u].reset(static_cast<std::size_t>(v));
    in_[v].reset(static_cast<std::size_t>(u));
}

std::size_t Digraph::arc_count() const {
    std::size_t c = 0;
    for (const auto& row : out_) c += row.count();
    return c;
}

std::vector<std::pair<int, int>> Digraph::arcs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(arc_count());
    for (int u = 0; u < n_; ++u)
        for (int v : out_[u].to_vector()) out.emplace_back(u, v);
    return out;
}

void Digraph::set_label(int v, nlohmann::json label) {
    if (labels_.empty()) labels_.resize(n_);
    labels_[v] = std::move(label);
}

const nlohmann::json& Digraph::label(int v) const {
    static const nlohmann::json null_label;
    return labels_.empty() ? null_label : labels_[v];
}

Bitvec n_plus(const Digraph& g, const Bitvec& x) {
    Bitvec acc(static_cast<std::size_t>(g.size()), true);
    for (int v : x.to_vector()) acc.and_with(g.out(v));
    return acc;
}

Bitvec n_minus(const Digraph& g, const Bitvec& x) {
    Bitvec acc(static_cast<std::size_t>(g.size()), true);
    for (int v : x.to_vector()) acc.and_with(g.in(v));
    return acc;
}

Bitvec cl_t(const Digraph& g, const Bitvec& x) { return n_plus(g, n_minus(g, x)); }
Bitvec cl_s(const Digraph& g, const Bitvec& x) { return n_minus(g, n_plus(g, x)); }

Bitvec cl_t(const Digraph& g, int v) { return n_plus(g, g.in(v)); }
Bitvec cl_s(const Digraph& g, int v) { return n_minus(g, g.out(v)); }

Digraph tensor_product(const Digraph& g, const Digraph& h) {
    const std::size_t n = static_cast<std::size_t>(g.size()) * h.size();
    if (n > (1u << 20)) throw CapacityError("tensor_product: product too large");
    Digraph t(static_cast<int>(n));
    auto ga = g.arcs();
    auto ha = h.arcs();
    for (auto [gu, gv] : ga)
        for (auto [hu, hv] : ha)
            t.add_arc(gu * h.size() + hu, gv * h.size() + hv);
    return t;
}

TypePartition type_partition(const Digraph& g) {
    TypePartition tp;
    std::map<int, std::vector<int>, std::greater<int>> by_deg;
    for (int v = 0; v < g.size(); ++v) by_deg[g.outdeg(v)].push_back(v);
    tp.type_of.assign(g.size(), -1);
    for (auto& [deg, vs] : by_deg) {
        for (int v : vs) tp.type_of[v] = static_cast<int>(tp.classes.size());
        tp.degrees.push_back(deg);
        tp.classes.push_back(std::move(vs));
    }
    return tp;
}

int opposite_vertex(const Digraph& g, int v) {
    TypePartition tp = type_partition(g);
    const int n = static_cast<int>(tp.classes.size()) - 1;
    const int k = tp.type_of[v];
    Bitvec cand = g.out(v);
    cand.and_with(g.in(v));
    cand.and_with(Bitvec::from_vector(static_cast<std::size_t>(g.size()), tp.classes[n - k]));
    auto ids = cand.to_vector();
    if (ids.size() != 1)
        throw PropertyViolation("opposite_vertex: expected exactly one candidate, found " +
                                std::to_string(ids.size()));
    return ids[0];
}

namespace {

// Iterated neighbourhood refinement; colours are shared across both graphs so
// matching classes get equal ids.
std::pair<std::vector<int>, std::vector<int>> refine_colors(const Digraph& g, const Digraph& h) {
    auto initial = [](const Digraph& d) {
        std::vector<std::tuple<int, int, int>> sig(d.size());
        for (int v = 0; v < d.size(); ++v)
            sig[v] = {d.outdeg(v), d.indeg(v), d.has_arc(v, v) ? 1 : 0};
        return sig;
    };
    auto sg = initial(g);
    auto sh = initial(h);
    std::map<std::tuple<int, int, int>, int> first;
    std::vector<int> cg(g.size()), ch(h.size());
    for (int v = 0; v < g.size(); ++v) cg[v] = first.emplace(sg[v], (int)first.size()).first->second;
    for (int v = 0; v < h.size(); ++v) ch[v] = first.emplace(sh[v], (int)first.size()).first->second;

    std::size_t colors = first.size();
    while (true) {
        using Key = std::tuple<int, std::vector<int>, std::vector<int>>;
        auto signature = [](const Digraph& d, const std::vector<int>& c, int v) {
            std::vector<int> outs, ins;
            for (int u : d.out(v).to_vector()) outs.push_back(c[u]);
            for (int u : d.in(v).to_vector()) ins.push_back(c[u]);
            std::sort(outs.begin(), outs.end());
            std::sort(ins.begin(), ins.end());
            return Key{c[v], std::move(outs), std::move(ins)};
        };
        std::map<Key, int> rank;
        std::vector<int> ng(g.size()), nh(h.size());
        for (int v = 0; v < g.size(); ++v)
            ng[v] = rank.emplace(signature(g, cg, v), (int)rank.size()).first->second;
        for (int v = 0; v < h.size(); ++v)
            nh[v] = rank.emplace(signature(h, ch, v), (int)rank.size()).first->second;
        if (rank.size() == colors) return {ng, nh};
        colors = rank.size();
        cg = std::move(ng);
        ch = std::move(nh);
    }
}

struct IsoSearch {
    const Digraph& g;
    const Digraph& h;
    std::vector<int> order;       // g-vertices, most constrained first
    std::vector<std::vector<int>> candidates;  // per order position
    std::vector<int> mapping;     // g-vertex -> h-vertex or -1
    std::vector<bool> used;

    bool extend(std::size_t pos) {
        if (pos == order.size()) return true;
        int gv = order[pos];
        for (int hv : candidates[pos]) {
            if (used[hv]) continue;
            bool ok = true;
            for (std::size_t t = 0; t < pos && ok; ++t) {
                int gu = order[t], hu = mapping[gu];
                ok = g.has_arc(gu, gv) == h.has_arc(hu, hv) &&
                     g.has_arc(gv, gu) == h.has_arc(hv, hu);
            }
            if (g.has_arc(gv, gv) != h.has_arc(hv, hv)) ok = false;
            if (!ok) continue;
            mapping[gv] = hv;
            used[hv] = true;
            if (extend(pos + 1)) return true;
            mapping[gv] = -1;
            used[hv] = false;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> isomorphic_small(const Digraph& g, const Digraph& h) {
    if (g.size() > 2000 || h.size() > 2000)
        throw CapacityError("isomorphic_small: graph exceeds the 2000-vertex cap");
    if (g.size() != h.size() || g.arc_count() != h.arc_count()) return std::nullopt;
    if (g.size() == 0) return std::vector<int>{};

    auto [cg, ch] = refine_colors(g, h);
    std::map<int, int> hist_g, hist_h;
    for (int c : cg) ++hist_g[c];
    for (int c : ch) ++hist_h[c];
    if (hist_g != hist_h) return std::nullopt;

    std::map<int, std::vector<int>> h_by_color;
    for (int v = 0; v < h.size(); ++v) h_by_color[ch[v]].push_back(v);

    IsoSearch s{g, h, {}, {}, std::vector<int>(g.size(), -1), std::vector<bool>(h.size(), false)};
    s.order.resize(g.size());
    for (int v = 0; v < g.size(); ++v) s.order[v] = v;
    std::sort(s.order.begin(), s.order.end(), [&](int a, int b) {
        auto sa = hist_g[cg[a]], sb = hist_g[cg[b]];
        if (sa != sb) return sa < sb;
        if (cg[a] != cg[b]) return cg[a] < cg[b];
        return a < b;
    });
    s.candidates.resize(g.size());
    for (std::size_t i = 0; i < s.order.size(); ++i) s.candidates[i] = h_by_color[cg[s.order[i]]];

    if (!s.extend(0)) return std::nullopt;
    return s.mapping;
}

nlohmann::json graph_to_json(const Digraph& g) {
    nlohmann::json arcs = nlohmann::json::array();
    for (auto [u, v] : g.arcs()) arcs.push_back(nlohmann::json::array({u, v}));
    nlohmann::json j{{"n", g.size()}, {"arcs", std::move(arcs)}};
    if (g.has_labels()) {
        nlohmann::json labels = nlohmann::json::array();
        for (int v = 0; v < g.size(); ++v) labels.push_back(g.label(v));
        j["labels"] = std::move(labels);
    }
    return j;
}

Digraph graph_from_json(const nlohmann::json& j) {
    Digraph g(j.at("n").get<int>());
    for (const auto& arc : j.at("arcs")) {
        int u = arc.at(0).get<int>(), v = arc.at(1).get<int>();
        if (u < 0 || u >= g.size() || v < 0 || v >= g.size())
            throw std::invalid_argument("graph_from_json: arc endpoint out of range");
        g.add_arc(u, v);
    }
    if (j.contains("labels")) {
        const auto& labels = j.at("labels");
        for (int v = 0; v < g.size() && v < static_cast<int>(labels.size()); ++v)
            g.set_label(v, labels[v]);
    }
    return g;
}

std::string graph_to_dot(const Digraph& g, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (int v = 0; v < g.size(); ++v) {
        os << "  v" << v;
        const auto& l = g.label(v);
        if (!l.is_null()) {
            std::string text;
            if (l.is_string()) {
                text = l.get<std::string>();
            } else if (l.is_object() && l.contains("name") && l["name"].is_string()) {
                text = l["name"].get<std::string>();
            } else {
                text = l.dump();
            }
            std::string escaped;
            for (char c : text) {
                if (c == '"' || c == '\\') escaped += '\\';
                escaped += c;
            }
            os << " [label=\"" << escaped << "\"]";
        }
        os << ";\n";
    }
    for (auto [u, v] : g.arcs()) os << "  v" << u << " -> v" << v << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace zdg
