#include "tatebv/decomp.hpp"

#include <stdexcept>

#include "tatebv/parallel.hpp"

namespace tbv {

ClassRetract::ClassRetract(const TateComplex& T, const ConjugacyData& cd, int k)
    : T_(T), k_(k), x_(cd.reps[k]), cs_(right_coset_system(T.group(), cd.centralizers[k]))
{
    const Group& G = T.group();
    xi_index_.assign(G.n, -1);
    for (int g : cs_.gamma) {
        int xi = G.mul(G.inv(g), x_, g);
        xi_index_[xi] = (int)xi_.size();
        xi_.push_back(xi);
    }
    gc_ = std::make_shared<GroupTateComplex>(cs_.sub, T.field());
}

GElem ClassRetract::iota_cochain(const TElem& phi) const
{
    if (phi.deg < 0) throw std::invalid_argument("iota_cochain needs a cochain");
    const Group& G = T_.group();
    const Fp& F = T_.field();
    const Subgroup& H = cs_.sub;
    GElem r{phi.deg, {}};
    std::vector<int> t;
    int h;
    for (auto& term : phi.v) {
        T_.split(term.i, phi.deg, t, h);
        bool inside = true;
        for (int g : t) inside = inside && H.contains(g);
        if (!inside) continue;
        if (G.mul(h, G.inv(G.prod(t))) != x_) continue;
        r.v.push_back({gc_->encode_parent(t), term.c});
    }
    normalize(r.v, F);
    return r;
}

TElem ClassRetract::rho_cochain(const GElem& psi) const
{
    if (psi.deg < 0) throw std::invalid_argument("rho_cochain needs a cochain");
    const Group& G = T_.group();
    const Fp& F = T_.field();
    int n = psi.deg, t = cs_.count();
    TElem r{n, {}};
    r.v = apply_linear(psi.v, F, [&](uint64_t code, uint32_t c, SVec& out) {
        std::vector<int> hs, gs(n);
        gc_->decode_parent(code, n, hs);
        // walk every coset path; gamma_cur * g_k = h_k * gamma_next
        auto rec = [&](auto&& self, int start, int cur, int pos, int prod) -> void {
            if (pos == n) {
                out.push_back({T_.index(gs, G.mul(xi_[start], prod)), c});
                return;
            }
            for (int j = 0; j < t; ++j) {
                int g = G.mul(G.inv(cs_.gamma[cur]), hs[pos], cs_.gamma[j]);
                if (g == 0) continue;
                gs[pos] = g;
                self(self, start, j, pos + 1, G.mul(prod, g));
            }
        };
        for (int i = 0; i < t; ++i) rec(rec, i, i, 0, 0);
    });
    return r;
}

TElem ClassRetract::homotopy_cochain(const TElem& phi) const
{
    if (phi.deg < 1) throw std::invalid_argument("homotopy_cochain needs degree >= 1");
    const Group& G = T_.group();
    const Fp& F = T_.field();
    int n = phi.deg, t = cs_.count();
    TElem r{n - 1, {}};
    if (phi.v.empty()) return r;
    const TupleCodec& cd = T_.codec();
    r.v = scan_range(cd.count(n - 1), F, [&](uint64_t code, SVec& out) {
        std::vector<int> gs, hs, args;
        cd.decode(code, n - 1, gs);
        int pr = G.prod(gs);
        for (int i = 0; i < t; ++i) {
            int target = G.mul(x_, G.mul(cs_.gamma[i], pr));
            uint32_t acc = 0;
            for (int j = 0; j < n; ++j) {
                int sj = cs_.thread(i, std::span<const int>(gs.data(), j), hs);
                args = hs;
                args.push_back(cs_.gamma[sj]);
                args.insert(args.end(), gs.begin() + j, gs.end());
                if (has_identity(args)) continue;
                uint32_t v = coeff(phi.v, T_.index(args, target));
                if (v) acc = F.add(acc, F.signed_(v, sgn(j)));
            }
            if (acc) out.push_back({T_.index(gs, G.mul(xi_[i], pr)), acc});
        }
    });
    return r;
}

TElem ClassRetract::iota_chain(const GElem& c) const
{
    if (c.deg >= 0) throw std::invalid_argument("iota_chain needs a chain");
    const Group& G = T_.group();
    int s = -c.deg - 1;
    TElem r{c.deg, {}};
    std::vector<int> hs;
    for (auto& term : c.v) {
        gc_->decode_parent(term.i, s, hs);
        r.v.push_back({T_.index(hs, G.mul(G.inv(G.prod(hs)), x_)), term.c});
    }
    normalize(r.v, T_.field());
    return r;
}

GElem ClassRetract::rho_chain(const TElem& a) const
{
    if (a.deg >= 0) throw std::invalid_argument("rho_chain needs a chain");
    const Group& G = T_.group();
    int s = -a.deg - 1;
    GElem r{a.deg, {}};
    std::vector<int> gs, hs;
    int u;
    for (auto& term : a.v) {
        T_.split(term.i, s, gs, u);
        int i = xi_index_[G.mul(G.prod(gs), u)];
        if (i < 0) continue;
        cs_.thread(i, gs, hs);
        if (has_identity(hs)) continue;
        r.v.push_back({gc_->encode_parent(hs), term.c});
    }
    normalize(r.v, T_.field());
    return r;
}

TElem ClassRetract::homotopy_chain(const TElem& a) const
{
    if (a.deg >= 0) throw std::invalid_argument("homotopy_chain needs a chain");
    const Group& G = T_.group();
    const Fp& F = T_.field();
    int s = -a.deg - 1;
    TElem r{a.deg - 1, {}};
    r.v = apply_linear(a.v, F, [&](uint64_t idx, uint32_t c, SVec& out) {
        std::vector<int> gs, hs, tail;
        int u;
        T_.split(idx, s, gs, u);
        int pr = G.prod(gs);
        int i = xi_index_[G.mul(pr, u)];
        if (i < 0) return;
        int head = G.mul(G.inv(G.mul(cs_.gamma[i], pr)), x_);
        for (int j = 0; j <= s; ++j) {
            int sj = cs_.thread(i, std::span<const int>(gs.data(), j), hs);
            tail = hs;
            tail.push_back(cs_.gamma[sj]);
            tail.insert(tail.end(), gs.begin() + j, gs.end());
            if (has_identity(tail)) continue;
            out.push_back({T_.index(tail, head), F.signed_(c, sgn(j))});
        }
    });
    return r;
}

TElem ClassRetract::embed(const GElem& y) const { return y.deg >= 0 ? rho_cochain(y) : iota_chain(y); }

GElem ClassRetract::project(const TElem& x) const { return x.deg >= 0 ? iota_cochain(x) : rho_chain(x); }

TElem ClassRetract::s_hat(const TElem& x) const
{
    if (x.deg >= 1) return homotopy_cochain(x);
    if (x.deg == 0) return {-1, {}};
    TElem r = homotopy_chain(x);
    if (sgn(x.deg) < 0) r.v = scaled(r.v, T_.field().p - 1, T_.field());
    return r;
}

GElem ClassRetract::delta_tilde(const GElem& psi) const
{
    if (psi.deg < 1) throw std::invalid_argument("delta_tilde needs degree >= 1");
    const Group& G = T_.group();
    const Fp& F = T_.field();
    int n = psi.deg;
    GElem r{n - 1, {}};
    std::vector<int> a, hs;
    int xinv = G.inv(x_);
    for (auto& term : psi.v) {
        gc_->decode_parent(term.i, n, a);
        for (int i = 1; i <= n; ++i) {
            // a = (h_i..h_{n-1}, mid, h_1..h_{i-1})
            int mid = a[n - i];
            hs.assign(a.begin() + (n - i + 1), a.end());
            hs.insert(hs.end(), a.begin(), a.begin() + (n - i));
            if (mid != G.mul(G.inv(G.prod(hs)), xinv)) continue;
            r.v.push_back({gc_->encode_parent(hs), F.signed_(term.c, sgn((long long)i * (n - 1)))});
        }
    }
    normalize(r.v, F);
    return r;
}

GElem ClassRetract::b_tilde(const GElem& c) const
{
    if (c.deg >= 0) throw std::invalid_argument("b_tilde needs a chain");
    const Group& G = T_.group();
    const Fp& F = T_.field();
    int s = -c.deg - 1;
    GElem r{c.deg - 1, {}};
    std::vector<int> hs, full, tail;
    for (auto& term : c.v) {
        gc_->decode_parent(term.i, s, hs);
        full.assign(1, G.mul(G.inv(G.prod(hs)), x_));
        full.insert(full.end(), hs.begin(), hs.end());
        for (int i = 0; i <= s; ++i) {
            tail.assign(full.begin() + i, full.end());
            tail.insert(tail.end(), full.begin(), full.begin() + i);
            if (has_identity(tail)) continue;
            r.v.push_back({gc_->encode_parent(tail), F.signed_(term.c, sgn((long long)i * s))});
        }
    }
    normalize(r.v, F);
    return r;
}

ClassDecomposition::ClassDecomposition(const TateComplex& T, uint64_t group_cost_cap)
    : T_(T), cd_(conjugacy_classes(T.group()))
{
    for (int k = 0; k < cd_.count(); ++k) {
        parts_.push_back(std::make_unique<ClassRetract>(T, cd_, k));
        parts_.back()->set_cost_cap(group_cost_cap);
    }
}

TElem ClassDecomposition::s_hat(const TElem& x) const
{
    TElem r{x.deg - 1, {}};
    for (auto& p : parts_) r.v = add(r.v, p->s_hat(x).v, T_.field());
    return r;
}

TElem ClassDecomposition::iota_rho(const TElem& x) const
{
    TElem r{x.deg, {}};
    for (auto& p : parts_) r.v = add(r.v, p->embed(p->project(x)).v, T_.field());
    return r;
}

std::vector<int> ClassDecomposition::class_dims(int n) const
{
    std::vector<int> d;
    for (auto& p : parts_) d.push_back(p->gcomplex().cohomology(n)->dim());
    return d;
}

int DecomposedBasis::offset(int n, int k) const
{
    int o = 0;
    for (int q = 0; q < k; ++q) o += D_.part(q).gcomplex().cohomology(n)->dim();
    return o;
}

int DecomposedBasis::dim(int n) const { return offset(n, D_.count()); }

std::pair<int, int> DecomposedBasis::locate(int n, int j) const
{
    for (int k = 0; k < D_.count(); ++k) {
        int d = D_.part(k).gcomplex().cohomology(n)->dim();
        if (j < d) return {k, j};
        j -= d;
    }
    throw std::out_of_range("basis index");
}

TElem DecomposedBasis::rep(int n, int j) const
{
    auto [k, l] = locate(n, j);
    const auto& P = D_.part(k);
    return P.embed(GElem{n, P.gcomplex().cohomology(n)->reps()[l]});
}

CohClass DecomposedBasis::project(const TElem& x) const
{
    CohClass c{x.deg, {}};
    for (int k = 0; k < D_.count(); ++k) {
        const auto& P = D_.part(k);
        auto H = P.gcomplex().cohomology(x.deg);
        auto co = H->coords(P.project(x).v);
        if (!co) throw std::runtime_error("not a cocycle in degree " + std::to_string(x.deg));
        c.coords.insert(c.coords.end(), co->begin(), co->end());
    }
    return c;
}

void ConjugationComplex::diff_basis(int m, uint64_t idx, uint32_t c, SVec& out) const
{
    const Group& G = *G_;
    std::vector<int> t, w;
    int v;
    T_.split(idx, arity(m), t, v);
    if (m == -1) {
        for (int g = 0; g < G.n; ++g) out.push_back({(uint64_t)G.conj(g, v), c});
        return;
    }
    if (m >= 0) {
        w.resize(m + 1);
        uint32_t last = F_.signed_(c, sgn(m + 1));
        for (int g = 1; g < G.n; ++g) {
            w[0] = g;
            std::copy(t.begin(), t.end(), w.begin() + 1);
            out.push_back({T_.index(w, G.conj(g, v)), c});
            std::copy(t.begin(), t.end(), w.begin());
            w[m] = g;
            out.push_back({T_.index(w, v), last});
        }
        for (int i = 0; i < m; ++i) {
            uint32_t ci = F_.signed_(c, sgn(i + 1));
            for (int u = 1; u < G.n; ++u) {
                int q = G.mul(G.inv(u), t[i]);
                if (q == 0) continue;
                std::copy(t.begin(), t.begin() + i, w.begin());
                w[i] = u;
                w[i + 1] = q;
                std::copy(t.begin() + i + 1, t.end(), w.begin() + i + 2);
                out.push_back({T_.index(w, v), ci});
            }
        }
        return;
    }
    int s = -m - 1;
    uint32_t cs = F_.signed_(c, sgn(s));
    w.assign(t.begin() + 1, t.end());
    out.push_back({T_.index(w, v), cs});
    for (int i = 1; i < s; ++i) {
        int mm = G.mul(t[i - 1], t[i]);
        if (mm == 0) continue;
        w.assign(t.begin(), t.begin() + i - 1);
        w.push_back(mm);
        w.insert(w.end(), t.begin() + i + 1, t.end());
        out.push_back({T_.index(w, v), F_.signed_(cs, sgn(i))});
    }
    w.assign(t.begin(), t.end() - 1);
    out.push_back({T_.index(w, G.conj(t[s - 1], v)), F_.signed_(cs, sgn(s))});
}

TElem global_iso_rho(const TateComplex& T, const TElem& x)
{
    const Group& G = T.group();
    TElem r{x.deg, {}};
    std::vector<int> t;
    int g;
    for (auto& term : x.v) {
        T.split(term.i, arity(x.deg), t, g);
        int v = x.deg >= 0 ? G.mul(g, G.inv(G.prod(t))) : G.mul(g, G.prod(t));
        r.v.push_back({T.index(t, v), term.c});
    }
    normalize(r.v, T.field());
    return r;
}

TElem global_iso_rho_inv(const TateComplex& T, const TElem& x)
{
    const Group& G = T.group();
    TElem r{x.deg, {}};
    std::vector<int> t;
    int v;
    for (auto& term : x.v) {
        T.split(term.i, arity(x.deg), t, v);
        int g = x.deg >= 0 ? G.mul(v, G.prod(t)) : G.mul(v, G.inv(G.prod(t)));
        r.v.push_back({T.index(t, g), term.c});
    }
    normalize(r.v, T.field());
    return r;
}

} // namespace tbv
