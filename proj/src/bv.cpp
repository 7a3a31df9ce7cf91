#include "tatebv/bv.hpp"

#include <stdexcept>
#include <unordered_map>

#include "tatebv/parallel.hpp"

namespace tbv {

namespace {

struct Basis {
    std::vector<int> t;
    int g;
    uint32_t c;
};

std::vector<Basis> unpack(const TateComplex& T, const TElem& x)
{
    std::vector<Basis> out;
    out.reserve(x.v.size());
    int len = arity(x.deg);
    for (auto& term : x.v) {
        Basis b;
        T.split(term.i, len, b.t, b.g);
        b.c = term.c;
        out.push_back(std::move(b));
    }
    return out;
}

using Bucket = std::unordered_map<uint64_t, std::vector<std::pair<int, uint32_t>>>;

// tuple code -> (group element, coefficient)
Bucket by_tuple(const TateComplex& T, const TElem& x)
{
    Bucket m;
    uint64_t n = T.group().n;
    for (auto& term : x.v) m[term.i / n].push_back({(int)(term.i % n), term.c});
    return m;
}

template <class Apply>
TElem cup_impl(const TateComplex& T, const TElem& a, const TElem& b, Apply&& apply)
{
    const Group& G = T.group();
    const Fp& F = T.field();
    const TupleCodec& cd = T.codec();
    const uint64_t N = G.n;
    int m = a.deg, n = b.deg;
    TElem r{m + n, {}};
    if (a.v.empty() || b.v.empty()) return r;

    if (m >= 0 && n >= 0) {
        auto B = unpack(T, b);
        uint64_t shift = cd.count(n);
        r.v = apply(a.v, [&](uint64_t i, uint32_t c, SVec& out) {
            uint64_t code = i / N;
            int h = (int)(i % N);
            for (auto& y : b.v) {
                uint64_t idx = (code * shift + y.i / N) * N + G.mul(h, (int)(y.i % N));
                out.push_back({idx, F.mul(c, y.c)});
            }
        });
        return r;
    }
    if (m < 0 && n < 0) {
        int s = -m - 1;
        auto B = unpack(T, b);
        r.v = apply(a.v, [&](uint64_t i, uint32_t c, SVec& out) {
            std::vector<int> gs, w;
            int g0;
            T.split(i, s, gs, g0);
            for (auto& y : B) {
                uint32_t cc = F.mul(c, y.c);
                for (int g = 0; g < G.n; ++g) {
                    int mid = G.mul(G.inv(g), g0);
                    if (mid == 0) continue;
                    w = y.t;
                    w.push_back(mid);
                    w.insert(w.end(), gs.begin(), gs.end());
                    out.push_back({T.index(w, G.mul(g, y.g)), cc});
                }
            }
        });
        return r;
    }
    if (m >= 0) { // cochain a, chain b
        int t = -n - 1;
        if (m + n <= -1) {
            // (a(h_{t-m+1..t}) h0, h_{1..t-m})
            Bucket A = by_tuple(T, a);
            uint64_t split = cd.count(m);
            r.v = apply(b.v, [&](uint64_t i, uint32_t c, SVec& out) {
                uint64_t code = i / N;
                int h0 = (int)(i % N);
                auto it = A.find(code % split);
                if (it == A.end()) return;
                for (auto& [h, ca] : it->second) out.push_back({(code / split) * N + G.mul(h, h0), F.mul(c, ca)});
            });
        } else {
            // h_{1..k} -> sum_g a(h_{1..k}, g^-1, g_{1..t}) g0 g
            int k = m - t - 1;
            Bucket Bb = by_tuple(T, b);
            uint64_t split = cd.count(t);
            r.v = apply(a.v, [&](uint64_t i, uint32_t c, SVec& out) {
                uint64_t code = i / N;
                int h = (int)(i % N);
                auto it = Bb.find(code % split);
                if (it == Bb.end()) return;
                uint64_t head = code / split; // k+1 entries
                int ginv = (int)(head % cd.radix()) + 1;
                int g = G.inv(ginv);
                uint64_t rest = head / cd.radix();
                (void)k;
                for (auto& [g0, cb] : it->second) out.push_back({rest * N + G.mul(h, g0, g), F.mul(c, cb)});
            });
        }
        return r;
    }
    // chain a, cochain b
    int s = -m - 1;
    if (m + n <= -1) {
        // (g0 b(g_{1..n}), g_{n+1..s})
        Bucket Bb = by_tuple(T, b);
        uint64_t split = cd.count(s - n);
        r.v = apply(a.v, [&](uint64_t i, uint32_t c, SVec& out) {
            uint64_t code = i / N;
            int g0 = (int)(i % N);
            auto it = Bb.find(code / split);
            if (it == Bb.end()) return;
            for (auto& [h, cb] : it->second) out.push_back({(code % split) * N + G.mul(g0, h), F.mul(c, cb)});
        });
    } else {
        // h_{1..k} -> sum_g g g0 b(g_{1..s}, g^-1, h_{1..k})
        int k = n - s - 1;
        Bucket A = by_tuple(T, a);
        uint64_t split = cd.count(n - s); // low part holds g^-1 and h_{1..k}
        uint64_t low = cd.count(k);
        r.v = apply(b.v, [&](uint64_t i, uint32_t c, SVec& out) {
            uint64_t code = i / N;
            int h = (int)(i % N);
            auto it = A.find(code / split);
            if (it == A.end()) return;
            uint64_t tail = code % split;
            int ginv = (int)(tail / low) + 1;
            int g = G.inv(ginv);
            uint64_t rest = tail % low;
            for (auto& [g0, ca] : it->second) out.push_back({rest * N + G.mul(g, g0, h), F.mul(c, ca)});
        });
    }
    return r;
}

} // namespace

TElem cup(const TateComplex& T, const TElem& a, const TElem& b)
{
    return cup_impl(T, a, b, [&](const SVec& v, auto&& op) { return apply_linear(v, T.field(), op); });
}

TElem cup_serial(const TateComplex& T, const TElem& a, const TElem& b)
{
    return cup_impl(T, a, b, [&](const SVec& v, auto&& op) { return apply_linear_serial(v, T.field(), op); });
}

uint32_t pairing(const TateComplex& T, const TElem& a0, const TElem& b0)
{
    const TElem* a = &a0;
    const TElem* b = &b0;
    if (a->deg < 0 && b->deg >= 0) std::swap(a, b);
    if (!(a->deg >= 0 && b->deg < 0) || b->deg != -a->deg - 1) return 0;
    const Group& G = T.group();
    const Fp& F = T.field();
    uint64_t N = G.n;
    Bucket B = by_tuple(T, *b);
    uint32_t s = 0;
    for (auto& x : a->v) {
        auto it = B.find(x.i / N);
        if (it == B.end()) continue;
        int h = (int)(x.i % N);
        for (auto& [g0, cb] : it->second)
            if (G.mul(h, g0) == 0) s = F.add(s, F.mul(x.c, cb));
    }
    return s;
}

TElem m3(const TateComplex& T, const TElem& a, const TElem& b, const TElem& c)
{
    const Group& G = T.group();
    const Fp& F = T.field();
    TElem r{a.deg + b.deg + c.deg - 1, {}};
    if (a.deg >= 0 && b.deg < 0 && c.deg >= 0) {
        int m = a.deg, rr = -b.deg - 1, n = c.deg;
        if (rr + 2 > m + n) return r;
        auto A = unpack(T, a), Bv = unpack(T, b), C = unpack(T, c);
        std::vector<int> w;
        for (auto& x : A)
            for (auto& y : Bv)
                for (auto& z : C) {
                    uint32_t cc = F.mul(F.mul(x.c, y.c), z.c);
                    for (int j = 1; j <= std::min(n, rr + 1); ++j) {
                        int k = m - rr + j - 2;
                        if (k < 0) continue;
                        // A[k+1:] == gs[j-1:], B[:j-1] == gs[:j-1], B[j-1] == A[k]^-1
                        if (!std::equal(x.t.begin() + k + 1, x.t.end(), y.t.begin() + j - 1, y.t.end())) continue;
                        if (!std::equal(z.t.begin(), z.t.begin() + j - 1, y.t.begin())) continue;
                        if (z.t[j - 1] != G.inv(x.t[k])) continue;
                        w.assign(x.t.begin(), x.t.begin() + k);
                        w.insert(w.end(), z.t.begin() + j, z.t.end());
                        r.v.push_back({T.index(w, G.mul(x.g, y.g, z.g)), F.signed_(cc, sgn(m + rr + j - 1))});
                    }
                }
        normalize(r.v, F);
        return r;
    }
    if (a.deg < 0 && b.deg >= 0 && c.deg < 0) {
        int rr = -a.deg - 1, m = b.deg, s = -c.deg - 1;
        if (m - 1 > rr + s) return r;
        auto A = unpack(T, a), Bv = unpack(T, b), C = unpack(T, c);
        std::vector<int> w;
        for (auto& x : A)
            for (auto& y : Bv)
                for (auto& z : C) {
                    uint32_t cc = F.mul(F.mul(x.c, y.c), z.c);
                    for (int j = 1; j <= std::min(m, rr + 1); ++j) {
                        int jp = s - m + j;
                        if (jp < 0 || jp > s) continue;
                        // phi args: g_{1..j-1}, g^-1, h_{jp+1..s}
                        if (!std::equal(y.t.begin(), y.t.begin() + j - 1, x.t.begin())) continue;
                        if (!std::equal(y.t.begin() + j, y.t.end(), z.t.begin() + jp, z.t.end())) continue;
                        int g = G.inv(y.t[j - 1]);
                        w.assign(z.t.begin(), z.t.begin() + jp);
                        w.push_back(g);
                        w.insert(w.end(), x.t.begin() + j - 1, x.t.end());
                        r.v.push_back({T.index(w, G.mul(x.g, y.g, z.g)), F.signed_(cc, sgn(rr + j))});
                    }
                }
        normalize(r.v, F);
        return r;
    }
    return r;
}

TElem connes_b(const TateComplex& T, const TElem& a)
{
    if (a.deg >= 0) throw std::invalid_argument("connes_b needs a chain");
    const Fp& F = T.field();
    int s = -a.deg - 1;
    TElem r{a.deg - 1, {}};
    r.v = apply_linear(a.v, F, [&](uint64_t i, uint32_t c, SVec& out) {
        std::vector<int> gs, full, tail;
        int g0;
        T.split(i, s, gs, g0);
        full.push_back(g0);
        full.insert(full.end(), gs.begin(), gs.end());
        for (int k = 0; k <= s; ++k) {
            tail.assign(full.begin() + k, full.end());
            tail.insert(tail.end(), full.begin(), full.begin() + k);
            if (has_identity(tail)) continue;
            out.push_back({T.index(tail, 0), F.signed_(c, sgn((long long)k * s))});
        }
    });
    return r;
}

TElem bv_operator(const TateComplex& T, const TElem& a)
{
    const Group& G = T.group();
    const Fp& F = T.field();
    if (a.deg == 0) return {-1, {}};
    if (a.deg < 0) {
        TElem r = connes_b(T, a);
        int s = -a.deg - 1;
        if (sgn(s + 1) < 0) r.v = scaled(r.v, F.p - 1, F);
        return r;
    }
    int n = a.deg;
    TElem r{n - 1, {}};
    r.v = apply_linear(a.v, F, [&](uint64_t idx, uint32_t c, SVec& out) {
        std::vector<int> t, w;
        int h;
        T.split(idx, n, t, h);
        if (h != 0) return;
        for (int i = 1; i <= n; ++i) {
            // t = (g_i..g_{n-1}, g_n, g_1..g_{i-1})
            int gn = t[n - i];
            w.assign(t.begin() + (n - i + 1), t.end());
            w.insert(w.end(), t.begin(), t.begin() + (n - i));
            out.push_back({T.index(w, G.inv(gn)), F.signed_(c, sgn((long long)i * (n - 1)))});
        }
    });
    return r;
}

TElem lin(const Fp& F, std::initializer_list<std::pair<long long, const TElem*>> terms)
{
    TElem r;
    bool first = true;
    for (auto& [k, e] : terms) {
        if (first || (r.v.empty() && !e->v.empty())) r.deg = e->deg;
        first = false;
        if (!e->v.empty() && !r.v.empty() && e->deg != r.deg) throw std::invalid_argument("degree mismatch in lin");
        r.v = axpy(r.v, F.from(k), e->v, F);
    }
    return r;
}

TElem CohBasis::lift(const CohClass& c) const
{
    TElem r{c.deg, {}};
    const Fp& F = complex().field();
    for (size_t j = 0; j < c.coords.size(); ++j)
        if (c.coords[j]) r.v = axpy(r.v, c.coords[j], rep(c.deg, (int)j).v, F);
    return r;
}

CohClass CohBasis::basis_class(int n, int j) const
{
    CohClass c{n, std::vector<uint32_t>(dim(n), 0)};
    c.coords[j] = 1;
    return c;
}

CohClass DirectBasis::project(const TElem& x) const
{
    auto H = T_.cohomology(x.deg);
    auto c = H->coords(x.v);
    if (!c) throw std::runtime_error("not a cocycle in degree " + std::to_string(x.deg));
    return {x.deg, *c};
}

CohClass induced_cup(const CohBasis& B, const CohClass& a, const CohClass& b)
{
    return B.project(cup(B.complex(), B.lift(a), B.lift(b)));
}

CohClass induced_delta(const CohBasis& B, const CohClass& a) { return B.project(bv_operator(B.complex(), B.lift(a))); }

TElem bracket_chain(const TateComplex& T, const TElem& a, const TElem& b)
{
    const Fp& F = T.field();
    TElem ab = cup(T, a, b);
    TElem d1 = bv_operator(T, ab);
    TElem d2 = cup(T, bv_operator(T, a), b);
    TElem d3 = cup(T, a, bv_operator(T, b));
    int s = -sgn((long long)(a.deg - 1) * b.deg);
    TElem r = lin(F, {{s, &d1}, {-s, &d2}, {-s * sgn(a.deg), &d3}});
    r.deg = a.deg + b.deg - 1;
    return r;
}

CohClass lie_bracket(const CohBasis& B, const CohClass& a, const CohClass& b)
{
    return B.project(bracket_chain(B.complex(), B.lift(a), B.lift(b)));
}

} // namespace tbv
