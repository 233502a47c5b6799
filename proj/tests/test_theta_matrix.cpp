#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "zdg/errors.hpp"
#include "zdg/finring.hpp"
#include "zdg/theta_matrix.hpp"

using namespace zdg;

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

FieldPtr field_of(std::uint64_t q) {
    int p, m;
    REQUIRE(split_prime_power(q, p, m));
    return make_field(p, m);
}

} // namespace

TEST_CASE("vertex counts and block layout") {
    for (auto [n, q, expected] :
         {std::tuple{2, 2, 11}, {2, 3, 18}, {3, 2, 100}, {3, 3, 340}, {1, 5, 2}}) {
        ThetaMatrixGraph tm(n, field_of(static_cast<std::uint64_t>(q)));
        CHECK(tm.vertex_count() == expected);
        CHECK(BigUint(static_cast<std::uint64_t>(expected)) ==
              vertex_count_formula(n, static_cast<std::uint64_t>(q)));
        // [0] first, [1] last
        CHECK(tm.vertex(tm.zero_vertex()).V.dim() == 0);
        CHECK(tm.vertex(tm.one_vertex()).W.dim() == 0);
    }
    CHECK(vertex_count_formula(4, 2) == BigUint(1677));
    CHECK_THROWS_AS(ThetaMatrixGraph(4, field_of(2), 1000), CapacityError);
    CHECK_THROWS_AS(ThetaMatrixGraph(0, field_of(2)), std::invalid_argument);
}

TEST_CASE("arc rule matches the subspace inclusion and matrix products") {
    ThetaMatrixGraph tm(2, field_of(3));
    const Digraph& g = tm.graph();
    for (int u = 0; u < tm.vertex_count(); ++u)
        for (int v = 0; v < tm.vertex_count(); ++v)
            CHECK(g.has_arc(u, v) == contains(tm.vertex(u).W, tm.vertex(v).V));

    // sampled cross-check against actual matrix products
    std::uint64_t state = 17;
    for (int t = 0; t < 200; ++t) {
        int u = static_cast<int>(splitmix64(state) % tm.vertex_count());
        int v = static_cast<int>(splitmix64(state) % tm.vertex_count());
        Matrix prod = matrix_of_vertex(tm.vertex(u)) * matrix_of_vertex(tm.vertex(v));
        CHECK(g.has_arc(u, v) == prod.is_zero());
    }
}

TEST_CASE("degree formulas") {
    for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
        ThetaMatrixGraph tm(n, field_of(static_cast<std::uint64_t>(q)));
        for (int id = 0; id < tm.vertex_count(); ++id) {
            BigUint expected =
                degree_formula(n, tm.vertex(id).W.dim(), static_cast<std::uint64_t>(q));
            CHECK(BigUint(static_cast<std::uint64_t>(tm.graph().outdeg(id))) == expected);
            CHECK(BigUint(static_cast<std::uint64_t>(tm.graph().indeg(id))) == expected);
        }
    }
    CHECK(degree_formula(2, 0, 2) == BigUint(1));
    CHECK(degree_formula(3, 2, 2) == BigUint(29));  // 1 + 3*7 + 1*7
}

TEST_CASE("distinguishing invariants") {
    CHECK(min_outdeg_above_one(2, 2) == BigUint(4));
    CHECK(min_outdeg_above_one(2, 3) == BigUint(5));
    CHECK(min_outdeg_above_one(3, 2) == BigUint(8));

    // min_outdeg_above_one matches the built graph
    for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
        ThetaMatrixGraph tm(n, field_of(static_cast<std::uint64_t>(q)));
        std::uint64_t best = ~0ull;
        for (int id = 0; id < tm.vertex_count(); ++id) {
            std::uint64_t d = static_cast<std::uint64_t>(tm.graph().outdeg(id));
            if (d > 1 && d < best) best = d;
        }
        CHECK(BigUint(best) == min_outdeg_above_one(n, static_cast<std::uint64_t>(q)));
    }

    // the pair (number of outdegrees, least outdegree above one) separates all
    // (n, q) with n in {2,3,4}, q in {2,3,4,5}
    std::set<std::pair<int, std::string>> seen;
    for (int n : {2, 3, 4})
        for (std::uint64_t q : {2, 3, 4, 5})
            CHECK(seen.emplace(n + 1, min_outdeg_above_one(n, q).str()).second);
}

TEST_CASE("type partition classes follow the image dimension") {
    ThetaMatrixGraph tm(3, field_of(2));
    TypePartition tp = type_partition(tm.graph());
    REQUIRE(tp.classes.size() == 4);
    CHECK(tp.classes[0].size() == 1);
    CHECK(tp.classes[1].size() == 49);
    CHECK(tp.classes[2].size() == 49);
    CHECK(tp.classes[3].size() == 1);
    for (int id = 0; id < tm.vertex_count(); ++id)
        CHECK(tp.type_of[id] == tm.vertex(id).V.dim());
}

TEST_CASE("matrix to vertex correspondence") {
    auto f = field_of(2);
    ThetaMatrixGraph tm(2, f);

    PairVertex vid = vertex_of_matrix(Matrix::identity(2, f));
    CHECK(vid.V == full_space(2, f));
    CHECK(vid.W == zero_subspace(2, f));

    PairVertex vzero = vertex_of_matrix(Matrix(2, 2, f));
    CHECK(vzero.V == zero_subspace(2, f));
    CHECK(vzero.W == full_space(2, f));

    // round trip through every vertex of small models
    for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
        ThetaMatrixGraph g(n, field_of(static_cast<std::uint64_t>(q)));
        for (int id = 0; id < g.vertex_count(); ++id) {
            PairVertex rt = vertex_of_matrix(matrix_of_vertex(g.vertex(id)));
            CHECK(rt.V == g.vertex(id).V);
            CHECK(rt.W == g.vertex(id).W);
        }
    }
}

TEST_CASE("opposite vertex is the coordinate swap") {
    for (auto [n, q] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
        ThetaMatrixGraph tm(n, field_of(static_cast<std::uint64_t>(q)));
        for (int id = 0; id < tm.vertex_count(); ++id)
            CHECK(opposite_vertex(tm.graph(), id) ==
                  tm.id_of(tm.vertex(id).W, tm.vertex(id).V));
        CHECK(opposite_vertex(tm.graph(), tm.zero_vertex()) == tm.one_vertex());
    }
}

TEST_CASE("target and source closures in the pair model") {
    auto f = field_of(2);
    ThetaMatrixGraph tm(2, f);
    const auto& lines = tm.subspaces_of_dim(1);
    int v = tm.id_of(lines[0], lines[2]);

    // cl_t of a single vertex (V, W) collects every vertex with image inside V
    Bitvec x(static_cast<std::size_t>(tm.vertex_count()));
    x.set(static_cast<std::size_t>(v));
    Bitvec closure = cl_t(tm.graph(), x);
    for (int id = 0; id < tm.vertex_count(); ++id)
        CHECK(closure.test(static_cast<std::size_t>(id)) ==
              contains(lines[0], tm.vertex(id).V));

    // cl_s collects every vertex whose kernel contains W
    Bitvec src = cl_s(tm.graph(), x);
    for (int id = 0; id < tm.vertex_count(); ++id)
        CHECK(src.test(static_cast<std::size_t>(id)) ==
              contains(tm.vertex(id).W, lines[2]));
}

TEST_CASE("cycle for a fixed subspace") {
    auto f = field_of(2);
    ThetaMatrixGraph tm(2, f);
    const auto& lines = tm.subspaces_of_dim(1);

    // dim V = n/2, nothing forbidden: spliced through the loop vertex (V, V)
    std::vector<int> cyc = cycle_for_subspace(tm, lines[0], {});
    CHECK(cyc.size() == 5);  // (V,V) plus (V,W),(W,V) for the two other lines
    CHECK(cyc.front() == tm.id_of(lines[0], lines[0]));
    SequenceCheck chk = validate_sequence(tm, cyc, true, false);
    CHECK(chk.ok);
    // visits exactly the vertices with image or kernel equal to V
    std::set<int> visited(cyc.begin(), cyc.end());
    for (int id = 0; id < tm.vertex_count(); ++id) {
        bool touches = tm.vertex(id).V == lines[0] || tm.vertex(id).W == lines[0];
        bool proper = tm.vertex(id).V.dim() == 1;
        CHECK(visited.count(id) == (touches && proper ? 1u : 0u));
    }

    // staircase arcs: consecutive vertices share kernel/image
    for (std::size_t i = 0; i + 1 < cyc.size(); ++i)
        CHECK(tm.vertex(cyc[i]).W == tm.vertex(cyc[i + 1]).V);

    // forbidding the two other lines leaves only V itself: the one-vertex loop
    std::vector<int> lone = cycle_for_subspace(tm, lines[0], {lines[1], lines[2]});
    CHECK(lone == std::vector<int>{tm.id_of(lines[0], lines[0])});
    CHECK(validate_sequence(tm, lone, true, false).ok);

    // a 3-dimensional example without the splice
    ThetaMatrixGraph t3(3, field_of(2));
    const Subspace& v1 = t3.subspaces_of_dim(1).front();
    std::vector<int> c3 = cycle_for_subspace(t3, v1, {});
    CHECK(c3.size() == 14);  // 7 planes, two vertices each
    CHECK(validate_sequence(t3, c3, true, false).ok);

    // every complementary subspace forbidden: the cycle is empty
    CHECK(cycle_for_subspace(t3, v1, t3.subspaces_of_dim(2)).empty());

    CHECK_THROWS_AS(cycle_for_subspace(tm, zero_subspace(2, f), {}), std::invalid_argument);
    CHECK_THROWS_AS(cycle_for_subspace(tm, full_space(2, f), {}), std::invalid_argument);
    CHECK_THROWS_AS(cycle_for_subspace(tm, lines[0], {lines[0]}), std::invalid_argument);
}

TEST_CASE("partition cycles") {
    // every arc, including the wraparound, has the staircase form
    // (X1,X2) -> (X2,X3)
    auto staircase = [](const ThetaMatrixGraph& g, const std::vector<int>& c) {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!(g.vertex(c[i]).W == g.vertex(c[(i + 1) % c.size()]).V)) return false;
        return true;
    };

    ThetaMatrixGraph t32(3, field_of(2));
    std::vector<int> c = cycle_for_partition(t32, 1, 2);
    CHECK(c.size() == 98);  // |S_{1,2}| + |S_{2,1}| = 49 + 49
    CHECK(validate_sequence(t32, c, true, false).ok);
    CHECK(staircase(t32, c));

    ThetaMatrixGraph t22(2, field_of(2));
    std::vector<int> c22 = cycle_for_partition(t22, 1, 1);
    CHECK(c22.size() == 9);
    CHECK(validate_sequence(t22, c22, true, true).ok);
    CHECK(staircase(t22, c22));

    ThetaMatrixGraph t23(2, field_of(3));
    std::vector<int> c23 = cycle_for_partition(t23, 1, 1);
    CHECK(c23.size() == 16);
    CHECK(validate_sequence(t23, c23, true, true).ok);
    CHECK(staircase(t23, c23));

    // the reversed partition covers the same vertex set
    std::vector<int> c_rev = cycle_for_partition(t32, 2, 1);
    CHECK(c_rev.size() == 98);
    CHECK(validate_sequence(t32, c_rev, true, false).ok);
    CHECK(staircase(t32, c_rev));
    std::set<int> a(c.begin(), c.end()), b(c_rev.begin(), c_rev.end());
    CHECK(a == b);

    CHECK_THROWS_AS(cycle_for_partition(t32, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(cycle_for_partition(t32, 0, 3), std::invalid_argument);
}

TEST_CASE("hamiltonian cycles and paths") {
    for (auto [n, q, len] : {std::tuple{2, 2, 9}, {2, 3, 16}, {3, 2, 98}}) {
        ThetaMatrixGraph tm(n, field_of(static_cast<std::uint64_t>(q)));
        Hamiltonian h = hamiltonian(tm);
        CHECK(h.kind == HamiltonianKind::cycle);
        CHECK(static_cast<int>(h.seq.size()) == len);
        CHECK(validate_sequence(tm, h.seq, true, true).ok);
    }

    ThetaMatrixGraph t42(4, field_of(2));
    Hamiltonian h = hamiltonian(t42);
    CHECK(h.kind == HamiltonianKind::path);
    CHECK(h.seq.size() == 1675);
    CHECK(validate_sequence(t42, h.seq, false, true).ok);

    NoCycleCertificate cert = no_hamiltonian_cycle_witness(t42);
    CHECK(cert.removed == 225);
    CHECK(cert.components > cert.removed);
    CHECK(cert.holds);
    CHECK_THROWS_AS(no_hamiltonian_cycle_witness(ThetaMatrixGraph(3, field_of(2))),
                    std::invalid_argument);
    CHECK_THROWS_AS(hamiltonian(ThetaMatrixGraph(1, field_of(2))), std::invalid_argument);
}

TEST_CASE("no-cycle certificates on the larger instances") {
    ThetaMatrixGraph t43(4, field_of(3));
    NoCycleCertificate c43 = no_hamiltonian_cycle_witness(t43);
    CHECK(c43.removed == 1600);  // 40 * 40
    CHECK(c43.holds);

    ThetaMatrixGraph t52(5, field_of(2));
    NoCycleCertificate c52 = no_hamiltonian_cycle_witness(t52);
    CHECK(c52.removed == 961);  // 31 * 31
    CHECK(c52.holds);

    // the n >= 4 Hamiltonian path also exists at (4,3)
    Hamiltonian h = hamiltonian(t43);
    CHECK(h.kind == HamiltonianKind::path);
    CHECK(h.seq.size() == 20100);
    CHECK(validate_sequence(t43, h.seq, false, true).ok);
}

TEST_CASE("validator catches broken sequences") {
    ThetaMatrixGraph tm(2, field_of(2));
    Hamiltonian h = hamiltonian(tm);
    std::vector<int> repeated = h.seq;
    repeated.push_back(h.seq.front());
    CHECK_FALSE(validate_sequence(tm, repeated, true, true).ok);

    std::vector<int> truncated(h.seq.begin(), h.seq.end() - 1);
    CHECK_FALSE(validate_sequence(tm, truncated, true, true).ok);

    std::vector<int> swapped = h.seq;
    std::swap(swapped[0], swapped[2]);
    CHECK_FALSE(validate_sequence(tm, swapped, true, true).ok);
}

TEST_CASE("directed cliques") {
    // K({0}) is the single vertex [0]
    ThetaMatrixGraph t32(3, field_of(2));
    CliqueKU k0 = clique_K(t32, zero_subspace(3, t32.field()));
    CHECK(k0.members == std::vector<int>{t32.zero_vertex()});

    for (auto [n, q, expected] : {std::tuple{2, 2, 2}, {3, 2, 4}, {2, 3, 2}}) {
        ThetaMatrixGraph tm(n, field_of(static_cast<std::uint64_t>(q)));
        MaxCliqueFormula formula = max_directed_clique(n, static_cast<std::uint64_t>(q));
        CHECK(formula.size == BigUint(static_cast<std::uint64_t>(expected)));

        std::vector<int> found = exhaustive_max_directed_clique(tm);
        CHECK(BigUint(found.size()) == formula.size);

        // every maximum clique is K(U) with dim U in the middle
        for (const auto& clique : all_max_directed_cliques(tm)) {
            Subspace u = full_space(n, tm.field());
            for (int id : clique) u = intersect(u, tm.vertex(id).W);
            bool dim_ok = false;
            for (int d : formula.witness_dims) dim_ok = dim_ok || u.dim() == d;
            CHECK(dim_ok);
            CHECK(clique_K(tm, u).members == clique);
            // directed-clique property: all ordered pairs including loops
            for (int a : clique)
                for (int b : clique) CHECK(tm.graph().has_arc(a, b));
        }
    }

    // K(U) member count formula at the balanced dimension
    ThetaMatrixGraph t42(4, field_of(2));
    CliqueKU ku = clique_K(t42, t42.subspaces_of_dim(2).front());
    CHECK(BigUint(ku.members.size()) == max_directed_clique(4, 2).size);
}

TEST_CASE("dominating sets") {
    for (auto [n, q] : {std::pair{3, 2}, {4, 2}, {3, 3}}) {
        ThetaMatrixGraph tm(n, field_of(static_cast<std::uint64_t>(q)));
        std::vector<int> d = dominating_set(tm);
        CHECK(BigUint(d.size()) == q_binomial(n, 1, static_cast<std::uint64_t>(q)));
        DominationCheck c = check_domination(tm, d);
        CHECK(c.dominates);
        CHECK(c.arc_into);
        CHECK(c.arc_from);
    }

    for (std::uint64_t q : {2, 3}) {
        ThetaMatrixGraph tm(2, field_of(q));
        DominatingN2 dn = dominating_set_n2(tm);
        CHECK(BigUint(dn.D.size() + 1) == q_binomial(2, 1, q));
        CHECK(check_domination(tm, dn.D).dominates);
        std::vector<int> dprime = dn.D;
        dprime.push_back(dn.d);
        DominationCheck cp = check_domination(tm, dprime);
        CHECK(cp.arc_into);
        CHECK(cp.arc_from);

        // the distinguished member (V1, V2) is adjacent to no other member of D
        const Digraph& g = tm.graph();
        int special = dn.D.front();
        for (std::size_t i = 1; i < dn.D.size(); ++i) {
            CHECK_FALSE(g.has_arc(special, dn.D[i]));
            CHECK_FALSE(g.has_arc(dn.D[i], special));
        }
    }

    CHECK_THROWS_AS(dominating_set(ThetaMatrixGraph(2, field_of(2))), std::invalid_argument);
    CHECK_THROWS_AS(dominating_set_n2(ThetaMatrixGraph(3, field_of(2))), std::invalid_argument);
}

TEST_CASE("characterization report") {
    for (auto [n, q] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
        ThetaMatrixGraph tm(n, field_of(static_cast<std::uint64_t>(q)));
        PropertyReport rep = verify_characterization(tm.graph(), n, static_cast<std::uint64_t>(q));
        CHECK(rep.all_pass());
        nlohmann::json j = rep.to_json();
        for (const char* key : {"i", "ii", "iii", "iv", "v"}) {
            CHECK(j[key]["pass"] == true);
            CHECK(j[key]["witness"].is_null());
        }
    }

    // a perturbed graph fails with a witness
    ThetaMatrixGraph tm(2, field_of(2));
    std::uint64_t state = 23;
    for (int t = 0; t < 5; ++t) {
        Digraph dmg = tm.graph();
        if (t % 2 == 0) {
            auto arcs = dmg.arcs();
            auto [u, v] = arcs[splitmix64(state) % arcs.size()];
            dmg.remove_arc(u, v);
        } else {
            int u, v;
            do {
                u = static_cast<int>(splitmix64(state) % dmg.size());
                v = static_cast<int>(splitmix64(state) % dmg.size());
            } while (dmg.has_arc(u, v));
            dmg.add_arc(u, v);
        }
        PropertyReport rep = verify_characterization(dmg, 2, 2);
        CHECK_FALSE(rep.all_pass());
        bool witnessed = false;
        for (const auto& item : rep.properties)
            witnessed = witnessed || (!item.pass && !item.witness.is_null());
        CHECK(witnessed);
    }
}

TEST_CASE("induced automorphisms") {
    ThetaMatrixGraph tm(2, field_of(2));
    auto sigmas = tm.field()->automorphisms();

    // identity on everything
    std::vector<int> id_perm =
        induced_automorphism(tm, Matrix::identity(2, tm.field()), sigmas[0]);
    for (std::size_t i = 0; i < id_perm.size(); ++i) CHECK(id_perm[i] == static_cast<int>(i));

    // swapping the basis vectors swaps the two axis lines everywhere
    Matrix swap(2, 2, tm.field());
    swap.at(0, 1) = tm.field()->one();
    swap.at(1, 0) = tm.field()->one();
    std::vector<int> sw = induced_automorphism(tm, swap, sigmas[0]);
    const auto& lines = tm.subspaces_of_dim(1);
    Subspace e1 = lines[0], e2 = lines[2];  // <10> and <01>
    CHECK(sw[static_cast<std::size_t>(tm.id_of(e1, e2))] == tm.id_of(e2, e1));
    CHECK(sw[static_cast<std::size_t>(tm.id_of(e1, e1))] == tm.id_of(e2, e2));

    CHECK_THROWS_AS(induced_automorphism(tm, Matrix(2, 2, tm.field()), sigmas[0]),
                    std::domain_error);

    // Frobenius-twisted maps on a non-prime field are arc-preserving bijections
    ThetaMatrixGraph t34(3, field_of(4));
    auto sig4 = t34.field()->automorphisms();
    REQUIRE(sig4.size() == 2);
    std::uint64_t state = 5;
    for (int t = 0; t < 10; ++t) {
        Matrix a(3, 3, t34.field());
        do {
            for (Fel& x : a.e)
                x = Fel{static_cast<std::uint32_t>(splitmix64(state) % t34.field()->q())};
        } while (!try_inverse(a));
        std::vector<int> perm = induced_automorphism(t34, a, sig4[t % 2]);
        CHECK(perm.size() == static_cast<std::size_t>(t34.vertex_count()));
    }
}

TEST_CASE("exotic automorphisms for n = 2") {
    // at q = 2 all 6 line permutations are induced (the projective group is
    // the full symmetric group on the 3 lines)
    ThetaMatrixGraph t22(2, field_of(2));
    ExoticAut e22 = exotic_automorphism_n2(t22, {1, 0, 2});
    CHECK(e22.induced);
    CHECK(e22.induced_line_perms == 6);

    // at q = 5 a transposition of two lines fixes 4 lines, which no projective
    // map does, so it is exotic; the search realizes exactly |PGL_2(F_5)| maps
    ThetaMatrixGraph t25(2, field_of(5));
    std::vector<int> pi{1, 0, 2, 3, 4, 5};
    ExoticAut e25 = exotic_automorphism_n2(t25, pi);
    CHECK_FALSE(e25.induced);
    CHECK(e25.induced_line_perms == 120);

    // identity permutation gives the identity vertex map
    std::vector<int> ident{0, 1, 2, 3, 4, 5};
    ExoticAut eid = exotic_automorphism_n2(t25, ident);
    CHECK(eid.induced);
    for (std::size_t i = 0; i < eid.vertex_perm.size(); ++i)
        CHECK(eid.vertex_perm[i] == static_cast<int>(i));

    CHECK_THROWS_AS(exotic_automorphism_n2(ThetaMatrixGraph(3, field_of(2)), {0, 1, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(exotic_automorphism_n2(t22, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("model equals the generic ring construction") {
    // q = 4 exercises a ring too large for exhaustive edge re-checking
    for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {2, 4}}) {
        auto f = field_of(static_cast<std::uint64_t>(q));
        ThetaMatrixGraph tm(n, f);
        Digraph from_ring = theta_graph(*ring_matrix(n, f));
        CHECK(isomorphic_small(tm.graph(), from_ring).has_value());
    }
    // class counts of the generic engine match the pair-model formula
    CHECK(BigUint(theta_classes(*ring_matrix(2, field_of(2))).size()) ==
          vertex_count_formula(2, 2));
    CHECK(BigUint(theta_classes(*ring_matrix(2, field_of(4))).size()) ==
          vertex_count_formula(2, 4));

    // different (n, q) give non-isomorphic graphs (11 vs 18 vertices)
    CHECK_FALSE(isomorphic_small(ThetaMatrixGraph(2, field_of(2)).graph(),
                                 ThetaMatrixGraph(2, field_of(3)).graph())
                    .has_value());
}

TEST_CASE("json export carries the pair labels") {
    ThetaMatrixGraph tm(2, field_of(2));
    nlohmann::json j = theta_matrix_to_json(tm);
    CHECK(j["n"] == 11);
    CHECK(j["model"]["n"] == 2);
    CHECK(j["model"]["q"] == 2);
    REQUIRE(j["labels"].size() == 11);
    CHECK(j["labels"][0]["V"]["basis"] == nlohmann::json::array());
    CHECK(j["labels"][0]["W"]["basis"] == nlohmann::json::array({{1, 0}, {0, 1}}));
    CHECK(j["labels"][0]["name"] == "(<>,<10,01>)");
}
