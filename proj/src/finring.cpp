#include "zdg/finring.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "zdg/errors.hpp"

namespace zdg {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

class RingBuilder {
public:
    static RingPtr build(std::uint32_t size, RingElem zero, RingElem one, std::string desc,
                         std::function<RingElem(RingElem, RingElem)> add,
                         std::function<RingElem(RingElem, RingElem)> mul,
                         std::uint32_t cap) {
        if (size == 0) throw std::invalid_argument("ring: size must be positive");
        if (size > cap)
            throw CapacityError("ring '" + desc + "': size " + std::to_string(size) +
                                " exceeds the cap " + std::to_string(cap));
        auto r = std::shared_ptr<Ring>(new Ring());
        r->size_ = size;
        r->zero_ = zero;
        r->one_ = one;
        r->desc_ = std::move(desc);
        if (size <= Ring::table_size) {
            r->add_tab_.resize(static_cast<std::size_t>(size) * size);
            r->mul_tab_.resize(static_cast<std::size_t>(size) * size);
            for (std::uint32_t a = 0; a < size; ++a)
                for (std::uint32_t b = 0; b < size; ++b) {
                    r->add_tab_[a * size + b] = add(a, b);
                    r->mul_tab_[a * size + b] = mul(a, b);
                }
            verify_axioms(*r);
        } else {
            r->add_rule_ = std::move(add);
            r->mul_rule_ = std::move(mul);
        }
        return r;
    }

private:
    static void verify_axioms(const Ring& r) {
        const std::uint32_t n = r.size();
        auto fail = [&](const char* what) {
            throw std::invalid_argument("ring '" + r.descriptor() + "': " + what);
        };
        for (std::uint32_t a = 0; a < n; ++a) {
            if (r.add(a, r.zero()) != a) fail("zero is not an additive identity");
            if (r.mul(a, r.one()) != a || r.mul(r.one(), a) != a)
                fail("one is not a multiplicative identity");
            bool has_neg = false;
            for (std::uint32_t b = 0; b < n && !has_neg; ++b) has_neg = r.add(a, b) == r.zero();
            if (!has_neg) fail("element without additive inverse");
            for (std::uint32_t b = 0; b < n; ++b) {
                if (r.add(a, b) != r.add(b, a)) fail("addition is not commutative");
                for (std::uint32_t c = 0; c < n; ++c) {
                    if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
                        fail("addition is not associative");
                    if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
                        fail("multiplication is not associative");
                    if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
                        fail("left distributivity fails");
                    if (r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)))
                        fail("right distributivity fails");
                }
            }
        }
    }
};

RingPtr ring_zmod(std::uint32_t n, std::uint32_t cap) {
    if (n < 1) throw std::invalid_argument("ring_zmod: n must be >= 1");
    return RingBuilder::build(
        n, 0, n == 1 ? 0 : 1, "zmod:" + std::to_string(n),
        [n](RingElem a, RingElem b) { return (a + b) % n; },
        [n](RingElem a, RingElem b) {
            return static_cast<RingElem>((static_cast<std::uint64_t>(a) * b) % n);
        },
        cap);
}

Matrix matrix_ring_decode(int n, const FieldPtr& f, RingElem idx) {
    Matrix m(n, n, f);
    const std::uint32_t q = f->q();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            m.at(r, c) = Fel{idx % q};
            idx /= q;
        }
    return m;
}

RingElem matrix_ring_encode(const Matrix& m) {
    const std::uint32_t q = m.field->q();
    RingElem idx = 0;
    std::uint64_t place = 1;
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) {
            idx += static_cast<RingElem>(m.at(r, c).v * place);
            place *= q;
        }
    return idx;
}

RingPtr ring_matrix(int n, FieldPtr f, std::uint32_t cap) {
    if (n < 1) throw std::invalid_argument("ring_matrix: n must be >= 1");
    std::uint64_t size = 1;
    for (int i = 0; i < n * n; ++i) {
        size *= f->q();
        if (size > cap)
            throw CapacityError("ring_matrix: q^(n*n) exceeds the cap " + std::to_string(cap));
    }
    std::string desc = "matrix:" + std::to_string(n) + ":" + std::to_string(f->q());
    auto add = [n, f](RingElem a, RingElem b) {
        Matrix ma = matrix_ring_decode(n, f, a), mb = matrix_ring_decode(n, f, b);
        for (std::size_t i = 0; i < ma.e.size(); ++i) ma.e[i] = f->add(ma.e[i], mb.e[i]);
        return matrix_ring_encode(ma);
    };
    auto mul = [n, f](RingElem a, RingElem b) {
        return matrix_ring_encode(matrix_ring_decode(n, f, a) * matrix_ring_decode(n, f, b));
    };
    Matrix id = Matrix::identity(n, f);
    return RingBuilder::build(static_cast<std::uint32_t>(size), 0, matrix_ring_encode(id),
                              std::move(desc), add, mul, cap);
}

RingPtr ring_product(const std::vector<RingPtr>& factors, std::uint32_t cap) {
    std::uint64_t size = 1;
    for (const auto& r : factors) {
        size *= r->size();
        if (size > cap) throw CapacityError("ring_product: product size exceeds the cap");
    }
    std::string desc = "product:";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) desc += ',';
        desc += factors[i]->descriptor();
    }
    // mixed-radix coordinates, factor 0 least significant
    auto coordinatewise = [factors](bool multiply) {
        return [factors, multiply](RingElem a, RingElem b) {
            RingElem out = 0;
            std::uint64_t place = 1;
            for (const auto& r : factors) {
                RingElem ca = a % r->size(), cb = b % r->size();
                a /= r->size();
                b /= r->size();
                RingElem c = multiply ? r->mul(ca, cb) : r->add(ca, cb);
                out += static_cast<RingElem>(c * place);
                place *= r->size();
            }
            return out;
        };
    };
    RingElem one = 0;
    {
        std::uint64_t place = 1;
        for (const auto& r : factors) {
            one += static_cast<RingElem>(r->one() * place);
            place *= r->size();
        }
    }
    return RingBuilder::build(static_cast<std::uint32_t>(size), 0, one, std::move(desc),
                              coordinatewise(false), coordinatewise(true), cap);
}

namespace {

RingPtr parse_simple(const std::string& desc, std::uint32_t cap) {
    std::vector<std::string> parts;
    std::stringstream ss(desc);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw std::invalid_argument("parse_ring: empty descriptor");
    try {
        if (parts[0] == "zmod" && parts.size() == 2) {
            return ring_zmod(static_cast<std::uint32_t>(std::stoul(parts[1])), cap);
        }
        if (parts[0] == "matrix" && parts.size() == 3) {
            int n = std::stoi(parts[1]);
            std::uint64_t q = std::stoull(parts[2]);
            int p, m;
            if (!split_prime_power(q, p, m))
                throw std::invalid_argument("parse_ring: q must be a prime power");
            return ring_matrix(n, make_field(p, m), cap);
        }
    } catch (const std::logic_error& e) {
        throw std::invalid_argument("parse_ring: bad descriptor '" + desc + "': " + e.what());
    }
    throw std::invalid_argument("parse_ring: unknown ring descriptor '" + desc + "'");
}

} // namespace

RingPtr parse_ring(const std::string& descriptor, std::uint32_t cap) {
    const std::string prefix = "product:";
    if (descriptor.rfind(prefix, 0) == 0) {
        std::vector<RingPtr> factors;
        std::stringstream ss(descriptor.substr(prefix.size()));
        std::string item;
        while (std::getline(ss, item, ',')) factors.push_back(parse_simple(item, cap));
        if (factors.empty()) throw std::invalid_argument("parse_ring: empty product");
        return ring_product(factors, cap);
    }
    return parse_simple(descriptor, cap);
}

std::vector<RingElem> units(const Ring& r) {
    std::vector<RingElem> out;
    for (RingElem a = 0; a < r.size(); ++a) {
        for (RingElem b = 0; b < r.size(); ++b) {
            if (r.mul(a, b) == r.one() && r.mul(b, a) == r.one()) {
                out.push_back(a);
                break;
            }
        }
    }
    return out;
}

namespace {

// aR when right_side, Ra otherwise
std::vector<RingElem> principal_ideal(const Ring& r, RingElem a, bool right_side) {
    std::vector<bool> seen(r.size(), false);
    for (RingElem x = 0; x < r.size(); ++x)
        seen[right_side ? r.mul(a, x) : r.mul(x, a)] = true;
    std::vector<RingElem> out;
    for (RingElem x = 0; x < r.size(); ++x)
        if (seen[x]) out.push_back(x);
    return out;
}

} // namespace

std::vector<ThetaClass> theta_classes(const Ring& r) {
    // fingerprint partition by the pair of principal ideals (aR, Ra)
    std::map<std::pair<std::vector<RingElem>, std::vector<RingElem>>, std::size_t> index;
    std::vector<ThetaClass> classes;
    for (RingElem a = 0; a < r.size(); ++a) {
        auto fp = std::make_pair(principal_ideal(r, a, true), principal_ideal(r, a, false));
        auto [it, inserted] = index.emplace(std::move(fp), classes.size());
        if (inserted) {
            ThetaClass c;
            c.representative = a;
            c.right_ideal = it->first.first;
            c.left_ideal = it->first.second;
            classes.push_back(std::move(c));
        }
        classes[it->second].members.push_back(a);
    }
    return classes;  // ordered by representative: first occurrence is least
}

Digraph theta_graph(const Ring& r) {
    auto classes = theta_classes(r);
    const int k = static_cast<int>(classes.size());
    Digraph g(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (r.mul(classes[i].representative, classes[j].representative) == r.zero())
                g.add_arc(i, j);
        }
        g.set_label(i, nlohmann::json{{"name", "[" + std::to_string(classes[i].representative) + "]"},
                                      {"rep", classes[i].representative},
                                      {"size", classes[i].members.size()}});
    }
    // edge well-definedness across class members
    if (r.size() <= 100) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                for (RingElem x : classes[i].members)
                    for (RingElem y : classes[j].members)
                        if ((r.mul(x, y) == r.zero()) != g.has_arc(i, j))
                            throw PropertyViolation("theta_graph: edge not well-defined on classes");
    } else {
        std::uint64_t state = 0x5eedull;
        for (int probes = 0; probes < 512; ++probes) {
            int i = static_cast<int>(splitmix64(state) % k);
            int j = static_cast<int>(splitmix64(state) % k);
            RingElem x = classes[i].members[splitmix64(state) % classes[i].members.size()];
            RingElem y = classes[j].members[splitmix64(state) % classes[j].members.size()];
            if ((r.mul(x, y) == r.zero()) != g.has_arc(i, j))
                throw PropertyViolation("theta_graph: edge not well-defined on classes");
        }
    }
    return g;
}

GraphHom theta_hom(const std::vector<RingElem>& f, const Ring& r, const Ring& s) {
    if (f.size() != r.size()) throw std::invalid_argument("theta_hom: map has wrong domain size");
    for (RingElem x : f)
        if (x >= s.size()) throw std::invalid_argument("theta_hom: value out of range");
    if (f[r.one()] != s.one()) throw std::invalid_argument("theta_hom: map is not unital");
    for (RingElem a = 0; a < r.size(); ++a)
        for (RingElem b = 0; b < r.size(); ++b) {
            if (f[r.add(a, b)] != s.add(f[a], f[b]))
                throw std::invalid_argument("theta_hom: map is not additive");
            if (f[r.mul(a, b)] != s.mul(f[a], f[b]))
                throw std::invalid_argument("theta_hom: map is not multiplicative");
        }

    auto rc = theta_classes(r);
    auto sc = theta_classes(s);
    std::vector<int> class_of_s(s.size());
    for (std::size_t c = 0; c < sc.size(); ++c)
        for (RingElem x : sc[c].members) class_of_s[x] = static_cast<int>(c);

    GraphHom hom;
    hom.vertex_map.resize(rc.size());
    for (std::size_t c = 0; c < rc.size(); ++c)
        hom.vertex_map[c] = class_of_s[f[rc[c].representative]];

    // functoriality sanity: arcs must be preserved
    Digraph gr = theta_graph(r), gs = theta_graph(s);
    for (int u = 0; u < gr.size(); ++u)
        for (int v : gr.out(u).to_vector())
            if (!gs.has_arc(hom.vertex_map[u], hom.vertex_map[v]))
                throw std::logic_error("theta_hom: induced map does not preserve arcs");
    return hom;
}

} // namespace zdg
