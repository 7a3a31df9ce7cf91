#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "tatebv/bv.hpp"
#include "tatebv/decomp.hpp"

using namespace tbv;
using namespace tbv::testing;

namespace {

struct Case {
    const char* name;
    int param;
    uint32_t p;
};

const Case kCases[] = {{"symmetric", 3, 3}, {"dihedral", 4, 2}};

TElem ubound(const TateComplex& T, const TElem& x)
{
    if (x.deg == -1) return {0, {}};
    return T.boundary(x);
}

} // namespace

TEST_CASE("cochain retract")
{
    for (auto c : kCases) {
        CAPTURE(c.name);
        Group G = preset_group(c.name, c.param);
        TateComplex T(G, Fp(c.p));
        const Fp& F = T.field();
        ClassDecomposition D(T);
        std::mt19937_64 rng(21);
        for (int k = 0; k < D.count(); ++k) {
            const ClassRetract& P = D.part(k);
            CAPTURE(k);
            for (int n = 0; n <= 3; ++n)
                for (int r = 0; r < 100; ++r) {
                    GElem y = random_gelem(P.gcomplex(), n, rng);
                    CHECK(P.iota_cochain(P.rho_cochain(y)).v == y.v);

                    TElem x = random_class_elem(T, D.conj(), k, n, rng);
                    TElem rest = x;
                    rest.v = sub(x.v, P.rho_cochain(P.iota_cochain(x)).v, F);
                    TElem h = P.homotopy_cochain(T.coboundary(x));
                    if (n >= 1) h.v = add(h.v, T.coboundary(P.homotopy_cochain(x)).v, F);
                    CHECK(rest.v == h.v);
                }
        }
    }
}

TEST_CASE("chain retract with the unsigned boundary")
{
    for (auto c : kCases) {
        CAPTURE(c.name);
        Group G = preset_group(c.name, c.param);
        TateComplex T(G, Fp(c.p));
        const Fp& F = T.field();
        ClassDecomposition D(T);
        std::mt19937_64 rng(22);
        for (int k = 0; k < D.count(); ++k) {
            const ClassRetract& P = D.part(k);
            CAPTURE(k);
            for (int m = -1; m >= -4; --m)
                for (int r = 0; r < 100; ++r) {
                    GElem y = random_gelem(P.gcomplex(), m, rng);
                    CHECK(P.rho_chain(P.iota_chain(y)).v == y.v);

                    TElem x = random_class_elem(T, D.conj(), k, m, rng);
                    SVec rest = sub(x.v, P.iota_chain(P.rho_chain(x)).v, F);
                    SVec h = ubound(T, P.homotopy_chain(x)).v;
                    if (m <= -2) h = add(h, P.homotopy_chain(ubound(T, x)).v, F);
                    CHECK(rest == h);
                }
        }
    }
}

TEST_CASE("assembled retract across the whole window")
{
    for (auto c : kCases) {
        CAPTURE(c.name);
        Group G = preset_group(c.name, c.param);
        TateComplex T(G, Fp(c.p));
        const Fp& F = T.field();
        ClassDecomposition D(T);
        std::mt19937_64 rng(23);
        for (int m = -4; m <= 3; ++m)
            for (int r = 0; r < 30; ++r) {
                CAPTURE(m);
                TElem x = random_elem(T, m, rng, 6);
                SVec lhs = sub(x.v, D.iota_rho(x).v, F);
                SVec rhs = add(T.dprime(D.s_hat(x)).v, D.s_hat(T.dprime(x)).v, F);
                CHECK(lhs == rhs);
                for (int k = 0; k < D.count(); ++k) {
                    const ClassRetract& P = D.part(k);
                    CHECK(P.project(T.dprime(x)).v == P.gcomplex().dprime(P.project(x)).v);
                    GElem y = random_gelem(P.gcomplex(), m, rng);
                    CHECK(T.dprime(P.embed(y)).v == P.embed(P.gcomplex().dprime(y)).v);
                    CHECK(P.project(P.embed(y)).v == y.v);
                }
            }
    }
}

TEST_CASE("degree zero and minus one conventions")
{
    Group G = preset_group("symmetric", 3);
    TateComplex T(G, Fp(3));
    ClassDecomposition D(T);
    for (int k = 0; k < D.count(); ++k) {
        const ClassRetract& P = D.part(k);
        for (int g = 0; g < G.n; ++g) {
            GElem y = P.iota_cochain(TElem{0, {{(uint64_t)g, 1}}});
            if (g == P.rep()) CHECK(y.v == SVec{{0, 1}});
            else CHECK(y.zero());
        }
        CHECK(P.iota_chain(GElem{-1, {{0, 1}}}).v == SVec{{(uint64_t)P.rep(), 1}});
    }
    // identity class: rho is the plain embedding psi -> psi(g) g1...gn
    const ClassRetract& P = D.part(0);
    std::mt19937_64 rng(24);
    for (int n = 0; n <= 3; ++n) {
        GElem y = random_gelem(P.gcomplex(), n, rng);
        SVec want;
        std::vector<int> t;
        for (auto& term : y.v) {
            P.gcomplex().decode_parent(term.i, n, t);
            want.push_back({T.index(t, G.prod(t)), term.c});
        }
        normalize(want, T.field());
        CHECK(P.rho_cochain(y).v == want);
    }
}

TEST_CASE("abelian groups: rho and iota are inverse")
{
    Group G = preset_group("cyclic", 3);
    TateComplex T(G, Fp(3));
    ClassDecomposition D(T);
    std::mt19937_64 rng(25);
    for (int k = 0; k < D.count(); ++k) {
        const ClassRetract& P = D.part(k);
        for (int n = 0; n <= 3; ++n)
            for (int r = 0; r < 20; ++r) {
                TElem x = random_class_elem(T, D.conj(), k, n, rng);
                CHECK(P.rho_cochain(P.iota_cochain(x)).v == x.v);
                if (n >= 1) {
                    TElem h = P.homotopy_cochain(T.coboundary(x));
                    h.v = add(h.v, T.coboundary(P.homotopy_cochain(x)).v, T.field());
                    CHECK(h.zero());
                }
            }
    }
}

TEST_CASE("image of rho has the centralizer dimension")
{
    Group G = preset_group("symmetric", 3);
    TateComplex T(G, Fp(3));
    ClassDecomposition D(T);
    for (int k = 0; k < D.count(); ++k) {
        const ClassRetract& P = D.part(k);
        for (int n = 0; n <= 2; ++n) {
            SparseMatrix M;
            M.rows = T.dim(n);
            for (uint64_t j = 0; j < P.gcomplex().dim(n); ++j) M.cols.push_back(P.rho_cochain(GElem{n, {{j, 1}}}).v);
            uint64_t want = 1;
            for (int q = 0; q < n; ++q) want *= P.centralizer().order() - 1;
            CHECK(rank(M, T.field()) == want);
        }
    }
}

TEST_CASE("additive decomposition of dimensions")
{
    struct Row {
        const char* name;
        int param;
        uint32_t p;
    };
    for (auto r : {Row{"symmetric", 3, 3}, Row{"dihedral", 4, 2}, Row{"cyclic", 2, 3}, Row{"cyclic", 3, 3},
                   Row{"klein_four", 0, 2}}) {
        CAPTURE(r.name);
        Group G = preset_group(r.name, r.param);
        TateComplex T(G, Fp(r.p));
        ClassDecomposition D(T);
        DecomposedBasis B(D);
        for (int n = -3; n <= 2; ++n) CHECK(B.dim(n) == T.cohomology(n)->dim());
    }
    Group C2 = preset_group("cyclic", 2), C3 = preset_group("cyclic", 3);
    TateComplex T2(C2, Fp(3)), T3(C3, Fp(3));
    ClassDecomposition D2(T2), D3(T3);
    DecomposedBasis B2(D2), B3(D3);
    for (int n = -8; n <= 8; ++n) {
        CHECK(B2.dim(n) == 0);
        CHECK(B3.dim(n) == 3);
    }
}

TEST_CASE("decomposed basis projects its own representatives")
{
    Group G = preset_group("dihedral", 4);
    TateComplex T(G, Fp(2));
    ClassDecomposition D(T);
    DecomposedBasis B(D);
    DirectBasis Bd(T);
    for (int n = -3; n <= 2; ++n) {
        SparseMatrix M;
        M.rows = B.dim(n);
        for (int j = 0; j < B.dim(n); ++j) {
            CohClass c = B.project(B.rep(n, j));
            for (int l = 0; l < B.dim(n); ++l) CHECK(c.coords[l] == (l == j ? 1u : 0u));
            // the decomposed representatives are independent in the direct cohomology
            CohClass d = Bd.project(B.rep(n, j));
            SVec col;
            for (int l = 0; l < (int)d.coords.size(); ++l)
                if (d.coords[l]) col.push_back({(uint64_t)l, d.coords[l]});
            M.cols.push_back(col);
        }
        CHECK(rank(M, T.field()) == (uint64_t)B.dim(n));
    }
}

TEST_CASE("global isomorphism to the conjugation coefficient complex")
{
    Group G = preset_group("symmetric", 3);
    TateComplex T(G, Fp(3));
    ConjugationComplex C(G, Fp(3));
    std::mt19937_64 rng(26);
    for (int m = -4; m <= 3; ++m)
        for (int r = 0; r < 30; ++r) {
            TElem x = random_elem(T, m, rng);
            CHECK(global_iso_rho_inv(T, global_iso_rho(T, x)).v == x.v);
            CHECK(global_iso_rho(T, global_iso_rho_inv(T, x)).v == x.v);
            CHECK(global_iso_rho(T, T.dprime(x)).v == C.diff(m, global_iso_rho(T, x).v));
        }
    for (uint64_t g = 0; g < 6; ++g) CHECK(global_iso_rho(T, TElem{0, {{g, 1}}}).v == SVec{{g, 1}});
}

TEST_CASE("transferred BV operators")
{
    Group G = preset_group("symmetric", 3);
    TateComplex T(G, Fp(3));
    ClassDecomposition D(T);
    std::mt19937_64 rng(27);
    for (int k = 0; k < D.count(); ++k) {
        const ClassRetract& P = D.part(k);
        const GroupTateComplex& C = P.gcomplex();
        // chain side: exact equality rho B iota = B~
        for (int m = -1; m >= -4; --m)
            for (int r = 0; r < 20; ++r) {
                GElem y = random_gelem(C, m, rng);
                CHECK(P.rho_chain(connes_b(T, P.iota_chain(y))).v == P.b_tilde(y).v);
            }
        // cochain side: on cohomology classes
        for (int n = 1; n <= 3; ++n) {
            auto H = C.cohomology(n);
            auto H1 = C.cohomology(n - 1);
            for (auto& rep : H->reps()) {
                GElem y{n, rep};
                TElem img = bv_operator(T, P.embed(y));
                auto a = H1->coords(P.project(img).v);
                auto b = H1->coords(P.delta_tilde(y).v);
                REQUIRE(a);
                REQUIRE(b);
                CHECK(*a == *b);
            }
        }
    }
    // b~ on the empty tuple
    for (int k = 0; k < D.count(); ++k) {
        const ClassRetract& P = D.part(k);
        GElem r = P.b_tilde(GElem{-1, {{0, 1}}});
        if (P.rep() == 0) CHECK(r.zero());
        else CHECK(r.v == SVec{{P.gcomplex().encode_parent(std::vector<int>{P.rep()}), 1}});
    }
    // delta~ of the class of a is onto degree zero
    const ClassRetract& Pa = D.part(1);
    auto H1 = Pa.gcomplex().cohomology(1);
    REQUIRE(H1->dim() == 1);
    auto c = Pa.gcomplex().cohomology(0)->coords(Pa.delta_tilde(GElem{1, H1->reps()[0]}).v);
    REQUIRE(c);
    CHECK((*c)[0] != 0);
}
