#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "tatebv/bv.hpp"
#include "tatebv/parallel.hpp"

using namespace tbv;
using tbv::testing::random_elem;

namespace {

struct S3F3 {
    Group G = preset_group("symmetric", 3);
    TateComplex T{G, Fp(3)};
};

const char* pattern(int a, int b, int c)
{
    static const char* names[8] = {"---", "--+", "-+-", "-++", "+--", "+-+", "++-", "+++"};
    return names[(a >= 0) * 4 + (b >= 0) * 2 + (c >= 0)];
}

} // namespace

TEST_CASE("pairing basics")
{
    Group C2 = preset_group("cyclic", 2);
    TateComplex T(C2, Fp(5));
    TElem phi{1, {{T.index(std::vector<int>{1}, 0), 1}}};
    TElem ch{-2, {{T.index(std::vector<int>{1}, 0), 1}}};
    CHECK(pairing(T, phi, ch) == 1);
    CHECK(pairing(T, ch, phi) == 1);
    std::mt19937_64 r1(1);
    TElem c2 = random_elem(T, 2, r1);
    CHECK(pairing(T, c2, ch) == 0);

    S3F3 s;
    std::mt19937_64 rng(2);
    for (int m = 0; m <= 3; ++m)
        for (int k = 0; k < 20; ++k) {
            TElem a = random_elem(s.T, m, rng), b = random_elem(s.T, -m - 1, rng);
            CHECK(pairing(s.T, a, b) == pairing(s.T, b, a));
        }
}

TEST_CASE("small cup and BV examples on kC2")
{
    Group C2 = preset_group("cyclic", 2);
    TateComplex T(C2, Fp(2));
    TElem e{-1, {{0, 1}}};
    TElem prod = cup(T, e, e);
    CHECK(prod.deg == -2);
    CHECK(prod.v == SVec{{T.index(std::vector<int>{1}, 1), 1}});

    TElem to_e{1, {{T.index(std::vector<int>{1}, 0), 1}}};
    TElem to_a{1, {{T.index(std::vector<int>{1}, 1), 1}}};
    CHECK(bv_operator(T, to_e).v == SVec{{1, 1}});
    CHECK(bv_operator(T, to_a).zero());

    TElem a{-1, {{1, 1}}};
    CHECK(connes_b(T, a).v == SVec{{T.index(std::vector<int>{1}, 0), 1}});
    CHECK(connes_b(T, e).zero());
    CHECK(bv_operator(T, TElem{0, {{0, 1}, {1, 1}}}).zero());
}

TEST_CASE("unit law")
{
    S3F3 s;
    std::mt19937_64 rng(3);
    TElem one{0, {{0, 1}}};
    for (int m = -4; m <= 3; ++m)
        for (int k = 0; k < 10; ++k) {
            TElem b = random_elem(s.T, m, rng);
            CHECK(cup(s.T, one, b).v == b.v);
            CHECK(cup(s.T, b, one).v == b.v);
        }
}

TEST_CASE("pairing adjunction with the differential")
{
    S3F3 s;
    std::mt19937_64 rng(4);
    const Fp& F = s.T.field();
    for (int da = -4; da <= 2; ++da) {
        int db = -da - 2;
        for (int k = 0; k < 10; ++k) {
            TElem a = random_elem(s.T, da, rng), b = random_elem(s.T, db, rng);
            uint32_t l = pairing(s.T, s.T.dprime(a), b);
            uint32_t r = F.signed_(pairing(s.T, a, s.T.dprime(b)), sgn(da + 1));
            CHECK(l == r);
        }
    }
}

TEST_CASE("Leibniz rule in all six cases")
{
    S3F3 s;
    std::mt19937_64 rng(5);
    const Fp& F = s.T.field();
    for (int da = -3; da <= 2; ++da)
        for (int db = -3; db <= 2; ++db)
            for (int k = 0; k < 4; ++k) {
                CAPTURE(da);
                CAPTURE(db);
                TElem a = random_elem(s.T, da, rng), b = random_elem(s.T, db, rng);
                TElem l = s.T.dprime(cup(s.T, a, b));
                TElem x = cup(s.T, s.T.dprime(a), b), y = cup(s.T, a, s.T.dprime(b));
                TElem r = lin(F, {{1, &x}, {sgn(da), &y}});
                CHECK(l.v == r.v);
            }
}

TEST_CASE("the alternative sign twist breaks Leibniz")
{
    S3F3 s;
    std::mt19937_64 rng(6);
    const Fp& F = s.T.field();
    int failures = 0;
    for (int da = -3; da <= 1; ++da)
        for (int db = -3; db <= 1; ++db)
            for (int k = 0; k < 3; ++k) {
                TElem a = random_elem(s.T, da, rng), b = random_elem(s.T, db, rng);
                TElem l = s.T.dprime_alt(cup(s.T, a, b));
                TElem x = cup(s.T, s.T.dprime_alt(a), b), y = cup(s.T, a, s.T.dprime_alt(b));
                TElem r = lin(F, {{1, &x}, {sgn(da), &y}});
                failures += l.v != r.v;
            }
    CHECK(failures > 0);
}

TEST_CASE("parallel and serial cup agree")
{
    S3F3 s;
    std::mt19937_64 rng(7);
    int old = threads();
    set_threads(4);
    for (int da = -3; da <= 2; ++da)
        for (int db = -3; db <= 2; ++db) {
            TElem a = random_elem(s.T, da, rng, 80), b = random_elem(s.T, db, rng, 5);
            CHECK(cup(s.T, a, b).v == cup_serial(s.T, a, b).v);
        }
    set_threads(old);
}

TEST_CASE("m3 vanishing patterns")
{
    S3F3 s;
    std::mt19937_64 rng(8);
    auto r = [&](int d) { return random_elem(s.T, d, rng); };
    for (int k = 0; k < 10; ++k) {
        CHECK(m3(s.T, r(1), r(2), r(1)).zero());
        CHECK(m3(s.T, r(-2), r(-1), r(-3)).zero());
        CHECK(m3(s.T, r(-2), r(-1), r(2)).zero());
        CHECK(m3(s.T, r(2), r(-2), r(-1)).zero());
        CHECK(m3(s.T, r(1), r(2), r(-2)).zero());
        CHECK(m3(s.T, r(-2), r(1), r(2)).zero());
        // r + 2 > m + n
        CHECK(m3(s.T, r(1), r(-3), r(1)).zero());
        // m - 1 > r + s
        CHECK(m3(s.T, r(-1), r(3), r(-1)).zero());
    }
    // the two nontrivial patterns are really nontrivial somewhere
    int nz1 = 0, nz2 = 0;
    for (int k = 0; k < 30; ++k) {
        nz1 += !m3(s.T, random_elem(s.T, 2, rng, 30), random_elem(s.T, -2, rng, 30), random_elem(s.T, 2, rng, 30)).zero();
        nz2 += !m3(s.T, random_elem(s.T, -2, rng, 30), random_elem(s.T, 2, rng, 30), random_elem(s.T, -2, rng, 30)).zero();
    }
    CHECK(nz1 > 0);
    CHECK(nz2 > 0);
}

TEST_CASE("homotopy associativity")
{
    S3F3 s;
    std::mt19937_64 rng(9);
    const Fp& F = s.T.field();
    int per_pattern[8] = {};
    for (int da = -3; da <= 2; ++da)
        for (int db = -3; db <= 2; ++db)
            for (int dc = -3; dc <= 2; ++dc) {
                if (std::abs(da + db + dc) > 4) continue;
                CAPTURE(pattern(da, db, dc));
                TElem a = random_elem(s.T, da, rng, 3), b = random_elem(s.T, db, rng, 3),
                      c = random_elem(s.T, dc, rng, 3);
                TElem l1 = cup(s.T, a, cup(s.T, b, c)), l2 = cup(s.T, cup(s.T, a, b), c);
                TElem t0 = s.T.dprime(m3(s.T, a, b, c));
                TElem t1 = m3(s.T, s.T.dprime(a), b, c);
                TElem t2 = m3(s.T, a, s.T.dprime(b), c);
                TElem t3 = m3(s.T, a, b, s.T.dprime(c));
                TElem l = lin(F, {{1, &l1}, {-1, &l2}});
                TElem r = lin(F, {{1, &t0}, {1, &t1}, {sgn(da), &t2}, {sgn(da + db), &t3}});
                CHECK(l.v == r.v);
                ++per_pattern[(da >= 0) * 4 + (db >= 0) * 2 + (dc >= 0)];
            }
    for (int q = 0; q < 8; ++q) CHECK(per_pattern[q] > 0);
}

TEST_CASE("cyclicity")
{
    S3F3 s;
    std::mt19937_64 rng(10);
    const Fp& F = s.T.field();
    for (int da = -3; da <= 2; ++da)
        for (int db = -3; db <= 2; ++db) {
            int dc = -da - db - 1;
            if (std::abs(dc) > 4) continue;
            TElem a = random_elem(s.T, da, rng), b = random_elem(s.T, db, rng), c = random_elem(s.T, dc, rng);
            CHECK(pairing(s.T, cup(s.T, a, b), c) == pairing(s.T, a, cup(s.T, b, c)));
        }
    for (int d0 = -3; d0 <= 2; ++d0)
        for (int d1 = -3; d1 <= 2; ++d1)
            for (int d2 = -3; d2 <= 2; ++d2) {
                int d3 = -(d0 + d1 + d2 - 1) - 1;
                if (std::abs(d3) > 3) continue;
                TElem a0 = random_elem(s.T, d0, rng, 6), a1 = random_elem(s.T, d1, rng, 6),
                      a2 = random_elem(s.T, d2, rng, 6), a3 = random_elem(s.T, d3, rng, 6);
                uint32_t l = pairing(s.T, a0, m3(s.T, a1, a2, a3));
                uint32_t r = F.signed_(pairing(s.T, m3(s.T, a0, a1, a2), a3), sgn(-d0 + 3));
                CHECK(l == r);
            }
}

TEST_CASE("BV operator is a square-zero chain map preserving class components")
{
    S3F3 s;
    std::mt19937_64 rng(11);
    const Fp& F = s.T.field();
    auto cd = conjugacy_classes(s.G);
    for (int d = -4; d <= 4; ++d)
        for (int k = 0; k < 25; ++k) {
            TElem x = random_elem(s.T, d, rng);
            CHECK(bv_operator(s.T, bv_operator(s.T, x)).zero());
            if (d <= 3) {
                TElem l1 = s.T.dprime(bv_operator(s.T, x)), l2 = bv_operator(s.T, s.T.dprime(x));
                CHECK(lin(F, {{1, &l1}, {1, &l2}}).zero());
            }
        }
    for (int d = -3; d <= 3; ++d)
        for (int k = 0; k < cd.count(); ++k) {
            TElem x = testing::random_class_elem(s.T, cd, k, d, rng);
            for (auto& t : bv_operator(s.T, x).v) CHECK(s.T.class_of_index(cd, d - 1, t.i) == k);
        }
}

TEST_CASE("pairing vanishes across unrelated classes")
{
    S3F3 s;
    std::mt19937_64 rng(12);
    auto cd = conjugacy_classes(s.G);
    int checked = 0;
    for (int m = 0; m <= 2; ++m)
        for (int x = 0; x < cd.count(); ++x)
            for (int y = 0; y < cd.count(); ++y) {
                if (cd.class_of[s.G.inv(cd.reps[x])] == y) continue;
                for (int k = 0; k < 5; ++k) {
                    TElem a = testing::random_class_elem(s.T, cd, x, m, rng, 10);
                    TElem b = testing::random_class_elem(s.T, cd, y, -m - 1, rng, 10);
                    CHECK(pairing(s.T, a, b) == 0);
                    ++checked;
                }
            }
    CHECK(checked > 0);
}

TEST_CASE("induced operations on cohomology")
{
    S3F3 s;
    DirectBasis B(s.T);
    const Fp& F = s.T.field();
    std::vector<CohClass> basis;
    for (int n = -4; n <= 3; ++n)
        for (int j = 0; j < B.dim(n); ++j) basis.push_back(B.basis_class(n, j));

    CohClass one = B.project(TElem{0, {{0, 1}}});
    for (auto& a : basis) {
        CHECK(induced_cup(B, one, a) == a);
        CHECK(induced_delta(B, induced_delta(B, a)).zero());
    }
    CHECK(induced_delta(B, one).zero());

    for (auto& a : basis)
        for (auto& b : basis) {
            if (std::abs(a.deg + b.deg) > 4) continue;
            CohClass ab = induced_cup(B, a, b), ba = induced_cup(B, b, a);
            for (auto& c : ba.coords) c = F.signed_(c, sgn((long long)a.deg * b.deg));
            CHECK(ab == ba);
            if (std::abs(a.deg + b.deg) > 3) continue;
            CohClass l = lie_bracket(B, a, b), r = lie_bracket(B, b, a);
            for (auto& c : r.coords) c = F.signed_(c, sgn((long long)(a.deg - 1) * (b.deg - 1) + 1));
            CHECK(l == r);
        }
    for (auto& a : basis)
        if (a.deg == 0) CHECK(lie_bracket(B, a, a).zero());

    // associativity and Poisson rule on low-degree triples
    for (auto& a : basis)
        for (auto& b : basis)
            for (auto& c : basis) {
                if (std::abs(a.deg) > 2 || std::abs(b.deg) > 2 || std::abs(c.deg) > 2) continue;
                if (std::abs(a.deg + b.deg + c.deg) > 3) continue;
                CHECK(induced_cup(B, induced_cup(B, a, b), c) == induced_cup(B, a, induced_cup(B, b, c)));
                CohClass l = lie_bracket(B, induced_cup(B, a, b), c);
                CohClass r1 = induced_cup(B, lie_bracket(B, a, c), b);
                CohClass r2 = induced_cup(B, a, lie_bracket(B, b, c));
                for (size_t q = 0; q < l.coords.size(); ++q)
                    CHECK(l.coords[q] ==
                          F.add(r1.coords[q], F.signed_(r2.coords[q], sgn((long long)a.deg * (c.deg - 1)))));
            }
}

TEST_CASE("duality pairing is nondegenerate on cohomology")
{
    S3F3 s;
    DirectBasis B(s.T);
    const Fp& F = s.T.field();
    for (int n = 0; n <= 3; ++n) {
        int d = B.dim(n);
        REQUIRE(d == B.dim(-n - 1));
        std::vector<std::vector<long long>> M(d, std::vector<long long>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) M[i][j] = pairing(s.T, B.rep(n, i), B.rep(-n - 1, j));
        CHECK(rank(SparseMatrix::from_dense(M, F), F) == (uint64_t)d);
    }
}
