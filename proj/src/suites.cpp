#include "tatebv/suites.hpp"

#include <cstdlib>
#include <sstream>

namespace tbv {

namespace {

uint32_t rand_coef(const Fp& F, Rng& rng) { return 1 + (uint32_t)(rng() % (F.p - 1)); }

std::string degs(std::initializer_list<int> ds)
{
    std::ostringstream s;
    s << "degrees";
    for (int d : ds) s << ' ' << d;
    return s.str();
}

int span(Window w) { return w.hi - w.lo + 1; }

} // namespace

void SuiteResult::record(bool pass, const std::string& what)
{
    ++trials;
    if (pass) return;
    if (failures++ == 0) first_failure = what;
}

std::string cup_case(int m, int n)
{
    if (m >= 0 && n >= 0) return "i";
    if (m < 0 && n < 0) return "ii";
    if (m >= 0) return m + n >= 0 ? "iii" : "iv";
    return m + n >= 0 ? "v" : "vi";
}

std::string sign_pattern(int a, int b, int c)
{
    std::string s;
    for (int d : {a, b, c}) s += d >= 0 ? '+' : '-';
    return s;
}

TElem random_elem(const TateComplex& T, int deg, Rng& rng, int terms)
{
    TElem x{deg, {}};
    uint64_t d = T.dim(deg);
    if (d == 0) return x;
    for (int k = 0; k < terms; ++k) x.v.push_back({rng() % d, rand_coef(T.field(), rng)});
    normalize(x.v, T.field());
    return x;
}

TElem random_class_elem(const TateComplex& T, const ConjugacyData& cd, int k, int deg, Rng& rng, int terms)
{
    TElem x{deg, {}};
    uint64_t d = T.dim(deg);
    if (d == 0) return x;
    int got = 0;
    for (int tries = 0; got < terms && tries < 200 * terms; ++tries) {
        uint64_t i = rng() % d;
        if (T.class_of_index(cd, deg, i) != k) continue;
        x.v.push_back({i, rand_coef(T.field(), rng)});
        ++got;
    }
    normalize(x.v, T.field());
    return x;
}

GElem random_gelem(const GroupTateComplex& C, int deg, Rng& rng, int terms)
{
    GElem x{deg, {}};
    uint64_t d = C.dim(deg);
    if (d == 0) return x;
    for (int k = 0; k < terms; ++k) x.v.push_back({rng() % d, rand_coef(C.field(), rng)});
    normalize(x.v, C.field());
    return x;
}

SVec random_vec(const BasisComplex& C, int deg, Rng& rng, int terms)
{
    SVec v;
    uint64_t d = C.dim(deg);
    if (d == 0) return v;
    for (int k = 0; k < terms; ++k) v.push_back({rng() % d, rand_coef(C.field(), rng)});
    normalize(v, C.field());
    return v;
}

SuiteResult suite_d2(const BasisComplex& C, Window w, int per_degree, Rng& rng)
{
    SuiteResult r{"d_squared"};
    for (int m = w.lo; m < w.hi; ++m)
        for (int k = 0; k < per_degree; ++k) {
            SVec x = random_vec(C, m, rng);
            r.record(C.diff(m + 1, C.diff(m, x)).empty(), degs({m}));
        }
    return r;
}

SuiteResult suite_leibniz(const TateComplex& T, Window w, int trials, Rng& rng)
{
    SuiteResult r{"leibniz"};
    const Fp& F = T.field();
    const int s = span(w);
    for (int q = 0; r.trials < trials && q < 50 * trials; ++q) {
        int da = w.lo + q % s, db = w.lo + (q / s) % s;
        if (!w.has(da + db + 1) && !w.has(da + db)) continue;
        TElem a = random_elem(T, da, rng), b = random_elem(T, db, rng);
        TElem l = T.dprime(cup(T, a, b));
        TElem x = cup(T, T.dprime(a), b), y = cup(T, a, T.dprime(b));
        r.record(l.v == lin(F, {{1, &x}, {sgn(da), &y}}).v, degs({da, db}));
        ++r.cases[cup_case(da, db)];
    }
    return r;
}

SuiteResult suite_homotopy_assoc(const TateComplex& T, Window w, int trials, Rng& rng)
{
    SuiteResult r{"homotopy_associativity"};
    const Fp& F = T.field();
    const int s = span(w);
    for (int t = 0, q = 0; t < trials && q < 50 * trials; ++q) {
        int da = w.lo + q % s, db = w.lo + (q / s) % s, dc = w.lo + (q / (s * s)) % s;
        if (std::abs(da + db + dc) > 4) continue;
        ++t;
        TElem a = random_elem(T, da, rng, 3), b = random_elem(T, db, rng, 3), c = random_elem(T, dc, rng, 3);
        TElem l1 = cup(T, a, cup(T, b, c)), l2 = cup(T, cup(T, a, b), c);
        TElem t0 = T.dprime(m3(T, a, b, c));
        TElem t1 = m3(T, T.dprime(a), b, c);
        TElem t2 = m3(T, a, T.dprime(b), c);
        TElem t3 = m3(T, a, b, T.dprime(c));
        TElem lhs = lin(F, {{1, &l1}, {-1, &l2}});
        TElem rhs = lin(F, {{1, &t0}, {1, &t1}, {sgn(da), &t2}, {sgn(da + db), &t3}});
        r.record(lhs.v == rhs.v, degs({da, db, dc}));
        ++r.cases[sign_pattern(da, db, dc)];
    }
    return r;
}

SuiteResult suite_m3_vanishing(const TateComplex& T, Window, int trials, Rng& rng)
{
    SuiteResult r{"m3_vanishing"};
    // all-positive, all-negative, and the mixed patterns outside the two nontrivial ones
    const int pats[][3] = {{1, 2, 1}, {-2, -1, -3}, {-2, -1, 2}, {2, -2, -1}, {1, 2, -2}, {-2, 1, 2},
                           {1, -3, 1}, {-1, 3, -1}};
    for (int t = 0; t < trials; ++t) {
        auto& p = pats[t % std::size(pats)];
        TElem a = random_elem(T, p[0], rng), b = random_elem(T, p[1], rng), c = random_elem(T, p[2], rng);
        r.record(m3(T, a, b, c).zero(), degs({p[0], p[1], p[2]}));
    }
    return r;
}

SuiteResult suite_cyclicity(const TateComplex& T, Window w, int k, int trials, Rng& rng)
{
    SuiteResult r{k == 2 ? "cyclicity_2" : "cyclicity_3"};
    const Fp& F = T.field();
    const int s = span(w);
    for (int t = 0, q = 0; t < trials && q < 50 * trials; ++q) {
        int d0 = w.lo + q % s, d1 = w.lo + (q / s) % s;
        if (k == 2) {
            int d2 = -d0 - d1 - 1;
            if (std::abs(d2) > 4) continue;
            ++t;
            TElem a = random_elem(T, d0, rng), b = random_elem(T, d1, rng), c = random_elem(T, d2, rng);
            r.record(pairing(T, cup(T, a, b), c) == pairing(T, a, cup(T, b, c)), degs({d0, d1, d2}));
        } else {
            int d2 = w.lo + (q / (s * s)) % s;
            int d3 = -d0 - d1 - d2;
            if (std::abs(d3) > 3) continue;
            ++t;
            TElem a0 = random_elem(T, d0, rng, 6), a1 = random_elem(T, d1, rng, 6), a2 = random_elem(T, d2, rng, 6),
                  a3 = random_elem(T, d3, rng, 6);
            uint32_t l = pairing(T, a0, m3(T, a1, a2, a3));
            uint32_t rr = F.signed_(pairing(T, m3(T, a0, a1, a2), a3), sgn(-d0 + 3));
            r.record(l == rr, degs({d0, d1, d2, d3}));
        }
    }
    return r;
}

SuiteResult suite_bv_chain_map(const TateComplex& T, Window w, int trials, Rng& rng)
{
    SuiteResult r{"bv_chain_map"};
    const Fp& F = T.field();
    const int s = span(w);
    for (int t = 0; t < trials; ++t) {
        int d = w.lo + t % s;
        TElem x = random_elem(T, d, rng);
        TElem l1 = T.dprime(bv_operator(T, x)), l2 = bv_operator(T, T.dprime(x));
        r.record(bv_operator(T, bv_operator(T, x)).zero() && lin(F, {{1, &l1}, {1, &l2}}).zero(), degs({d}));
    }
    return r;
}

SuiteResult suite_pairing_adjunction(const TateComplex& T, Window w, int trials, Rng& rng)
{
    SuiteResult r{"pairing_adjunction"};
    const Fp& F = T.field();
    const int s = span(w);
    for (int t = 0; t < trials; ++t) {
        int da = w.lo + t % s, db = -da - 2;
        TElem a = random_elem(T, da, rng), b = random_elem(T, db, rng);
        uint32_t l = pairing(T, T.dprime(a), b);
        uint32_t rr = F.signed_(pairing(T, a, T.dprime(b)), sgn(da + 1));
        r.record(l == rr, degs({da, db}));
    }
    return r;
}

SuiteResult suite_retract(const ClassDecomposition& D, Window w, int per_class, Rng& rng)
{
    SuiteResult r{"retract"};
    const TateComplex& T = D.complex();
    const Fp& F = T.field();
    auto ubound = [&](const TElem& x) { return x.deg == -1 ? TElem{0, {}} : T.boundary(x); };
    for (int k = 0; k < D.count(); ++k) {
        const ClassRetract& P = D.part(k);
        const std::string tag = "class " + std::to_string(k) + " ";
        for (int n = std::max(0, w.lo); n <= w.hi; ++n)
            for (int q = 0; q < per_class; ++q) {
                GElem y = random_gelem(P.gcomplex(), n, rng);
                TElem x = random_class_elem(T, D.conj(), k, n, rng);
                SVec rest = sub(x.v, P.rho_cochain(P.iota_cochain(x)).v, F);
                TElem h = P.homotopy_cochain(T.coboundary(x));
                if (n >= 1) h.v = add(h.v, T.coboundary(P.homotopy_cochain(x)).v, F);
                r.record(P.iota_cochain(P.rho_cochain(y)).v == y.v && rest == h.v, tag + "cochain " + degs({n}));
            }
        for (int m = std::min(-1, w.hi); m >= w.lo; --m)
            for (int q = 0; q < per_class; ++q) {
                GElem y = random_gelem(P.gcomplex(), m, rng);
                TElem x = random_class_elem(T, D.conj(), k, m, rng);
                SVec rest = sub(x.v, P.iota_chain(P.rho_chain(x)).v, F);
                SVec h = ubound(P.homotopy_chain(x)).v;
                if (m <= -2) h = add(h, P.homotopy_chain(ubound(x)).v, F);
                r.record(P.rho_chain(P.iota_chain(y)).v == y.v && rest == h, tag + "chain " + degs({m}));
            }
    }
    for (int m = w.lo; m <= w.hi; ++m) {
        TElem x = random_elem(T, m, rng, 6);
        SVec lhs = sub(x.v, D.iota_rho(x).v, F);
        SVec rhs = add(T.dprime(D.s_hat(x)).v, D.s_hat(T.dprime(x)).v, F);
        r.record(lhs == rhs, "assembled " + degs({m}));
    }
    return r;
}

SuiteResult suite_path_equivalence(const ClassDecomposition& D, const SubgroupCalculus& S, Window w, int pairs,
                                   Rng& rng)
{
    SuiteResult r{"path_equivalence"};
    const TateComplex& T = D.complex();
    const uint32_t p = T.field().p;
    const int s = span(w);
    for (int tries = 0; r.trials < pairs && tries < 50 * pairs; ++tries) {
        int i = (int)(rng() % D.count()), j = (int)(rng() % D.count());
        int da = w.lo + (int)(rng() % s), db = w.lo + (int)(rng() % s);
        if (!w.has(da + db)) continue;
        const Subgroup& Hi = D.conj().centralizers[i];
        const Subgroup& Hj = D.conj().centralizers[j];
        int di = S.dim(Hi, da), dj = S.dim(Hj, db);
        if (!di || !dj) continue;
        std::vector<uint32_t> ca(di), cb(dj);
        for (auto& c : ca) c = rng() % p;
        for (auto& c : cb) c = rng() % p;
        GElem a = S.lift(Hi, da, ca), b = S.lift(Hj, db, cb);
        TElem direct = cup(T, D.embed(i, a), D.embed(j, b));
        auto dc = double_coset_cup(S, D, i, j, a, b);
        bool ok = true;
        for (int k = 0; k < D.count(); ++k) {
            const Subgroup& Hk = D.conj().centralizers[k];
            auto want = S.coords(Hk, D.part(k).project(direct));
            auto it = dc.find(k);
            auto got = it == dc.end() ? std::vector<uint32_t>(want.size(), 0) : S.coords(Hk, it->second);
            ok = ok && got == want;
        }
        r.record(ok, "classes " + std::to_string(i) + "," + std::to_string(j) + " " + degs({da, db}));
    }
    return r;
}

SuiteResult suite_poisson(const CohBasis& B, Window w, int max_triples, Rng& rng)
{
    SuiteResult r{"poisson"};
    const Fp& F = B.complex().field();
    std::vector<CohClass> basis;
    for (int n = std::max(w.lo, -2); n <= std::min(w.hi, 2); ++n)
        for (int j = 0; j < B.dim(n); ++j) basis.push_back(B.basis_class(n, j));
    if (basis.empty()) return r;
    for (int t = 0; t < max_triples * 10 && r.trials < max_triples; ++t) {
        const CohClass& a = basis[rng() % basis.size()];
        const CohClass& b = basis[rng() % basis.size()];
        const CohClass& c = basis[rng() % basis.size()];
        if (std::abs(a.deg + b.deg + c.deg) > 3) continue;
        CohClass l = lie_bracket(B, induced_cup(B, a, b), c);
        CohClass r1 = induced_cup(B, lie_bracket(B, a, c), b);
        CohClass r2 = induced_cup(B, a, lie_bracket(B, b, c));
        bool ok = true;
        for (size_t q = 0; q < l.coords.size(); ++q)
            ok = ok && l.coords[q] == F.add(r1.coords[q], F.signed_(r2.coords[q], sgn((long long)a.deg * (c.deg - 1))));
        r.record(ok, degs({a.deg, b.deg, c.deg}));
    }
    return r;
}

} // namespace tbv
