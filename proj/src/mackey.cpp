#include "tatebv/mackey.hpp"

#include <stdexcept>

namespace tbv {

SubgroupCalculus::SubgroupCalculus(const Group& G, Fp F, uint64_t cost_cap) : G_(G), F_(F), cap_(cost_cap) {}

SubgroupCalculus::Entry& SubgroupCalculus::entry(const Subgroup& H) const
{
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(H.members);
    if (it != cache_.end()) return *it->second;
    auto e = std::make_unique<Entry>();
    e->H = make_subgroup(G_, H.members);
    e->gc = std::make_unique<GroupTateComplex>(e->H, F_);
    e->gc->cost_cap = cap_;
    e->hh = std::make_unique<TateComplex>(e->H.group, F_);
    e->hh->cost_cap = cap_;
    auto& ref = *e;
    cache_.emplace(H.members, std::move(e));
    return ref;
}

const GroupTateComplex& SubgroupCalculus::complex(const Subgroup& H) const { return *entry(H).gc; }

const TateComplex& SubgroupCalculus::hochschild(const Subgroup& H) const { return *entry(H).hh; }

std::vector<uint32_t> SubgroupCalculus::coords(const Subgroup& H, const GElem& a) const
{
    auto c = complex(H).cohomology(a.deg)->coords(a.v);
    if (!c) throw std::runtime_error("not a cocycle of the subgroup complex");
    return *c;
}

GElem SubgroupCalculus::lift(const Subgroup& H, int deg, const std::vector<uint32_t>& c) const
{
    return {deg, complex(H).cohomology(deg)->q.lift(c)};
}

int SubgroupCalculus::dim(const Subgroup& H, int deg) const { return complex(H).cohomology(deg)->dim(); }

GElem SubgroupCalculus::transport(const Subgroup& from, const Subgroup& to, const GElem& a) const
{
    const auto& A = complex(from);
    const auto& B = complex(to);
    GElem r{a.deg, {}};
    std::vector<int> t;
    for (auto& term : a.v) {
        A.decode_parent(term.i, arity(a.deg), t);
        r.v.push_back({B.encode_parent(t), term.c});
    }
    normalize(r.v, F_);
    return r;
}

GElem SubgroupCalculus::conjugation(int g, const Subgroup& H, const GElem& a) const
{
    Subgroup gH = conjugate(G_, g, H);
    const auto& A = complex(H);
    const auto& B = complex(gH);
    GElem r{a.deg, {}};
    std::vector<int> t;
    for (auto& term : a.v) {
        A.decode_parent(term.i, arity(a.deg), t);
        for (int& h : t) h = G_.conj(g, h);
        r.v.push_back({B.encode_parent(t), term.c});
    }
    normalize(r.v, F_);
    return r;
}

GElem SubgroupCalculus::restriction(const Subgroup& K, const Subgroup& H, const GElem& a) const
{
    if (!is_subset(H, K)) throw GroupError(GroupError::NotSubgroup, "restriction target is not inside the source");
    const auto& A = complex(K);
    const auto& B = complex(H);
    GElem r{a.deg, {}};
    std::vector<int> t, hs;
    if (a.deg >= 0) {
        for (auto& term : a.v) {
            A.decode_parent(term.i, a.deg, t);
            bool inside = true;
            for (int g : t) inside = inside && H.contains(g);
            if (inside) r.v.push_back({B.encode_parent(t), term.c});
        }
    } else {
        CosetSystem cs = right_coset_system(G_, K, H);
        for (auto& term : a.v) {
            A.decode_parent(term.i, -a.deg - 1, t);
            for (int i = 0; i < cs.count(); ++i) {
                cs.thread(i, t, hs);
                if (has_identity(hs)) continue;
                r.v.push_back({B.encode_parent(hs), term.c});
            }
        }
    }
    normalize(r.v, F_);
    return r;
}

GElem SubgroupCalculus::corestriction(const Subgroup& K, const Subgroup& H, const GElem& a) const
{
    if (!is_subset(H, K)) throw GroupError(GroupError::NotSubgroup, "corestriction source is not inside the target");
    if (a.deg < 0) return transport(H, K, a);
    const auto& A = complex(H);
    const auto& B = complex(K);
    CosetSystem cs = right_coset_system(G_, K, H);
    int n = a.deg, t = cs.count();
    GElem r{n, {}};
    std::vector<int> hs, gs(n);
    // cor(phi)(g) = sum_i phi(thread_i(g)); enumerate the threads hitting each support tuple
    for (auto& term : a.v) {
        A.decode_parent(term.i, n, hs);
        auto rec = [&](auto&& self, int cur, int pos) -> void {
            if (pos == n) {
                r.v.push_back({B.encode_parent(gs), term.c});
                return;
            }
            for (int j = 0; j < t; ++j) {
                int g = G_.mul(G_.inv(cs.gamma[cur]), hs[pos], cs.gamma[j]);
                if (g == 0) continue;
                gs[pos] = g;
                self(self, j, pos + 1);
            }
        };
        for (int i = 0; i < t; ++i) rec(rec, i, 0);
    }
    normalize(r.v, F_);
    return r;
}

GElem SubgroupCalculus::group_cup(const Subgroup& H, const GElem& a, const GElem& b) const
{
    const TateComplex& T = hochschild(H);
    const Group& L = T.group();
    auto embed = [&](const GElem& y) {
        TElem e{y.deg, {}};
        std::vector<int> t;
        int len = arity(y.deg);
        for (auto& term : y.v) {
            T.codec().decode(term.i, len, t);
            int p = L.prod(t);
            e.v.push_back({T.index(t, y.deg >= 0 ? p : L.inv(p)), term.c});
        }
        normalize(e.v, F_);
        return e;
    };
    TElem pr = cup(T, embed(a), embed(b));
    GElem r{pr.deg, {}};
    std::vector<int> t;
    int g;
    for (auto& term : pr.v) {
        T.split(term.i, arity(pr.deg), t, g);
        int p = L.prod(t);
        bool keep = pr.deg >= 0 ? g == p : L.mul(p, g) == 0;
        if (keep) r.v.push_back({term.i / L.n, term.c});
    }
    normalize(r.v, F_);
    return r;
}

std::map<int, GElem> double_coset_cup(const SubgroupCalculus& S, const ClassDecomposition& D, int i, int j,
                                      const GElem& a, const GElem& b)
{
    const Group& G = S.group();
    const Fp& F = S.field();
    const ConjugacyData& cd = D.conj();
    const Subgroup& Hi = cd.centralizers[i];
    const Subgroup& Hj = cd.centralizers[j];
    int gi = cd.reps[i], gj = cd.reps[j];
    std::map<int, GElem> out;
    auto dc = double_cosets(G, Hi, Hj);
    for (int x : dc.reps) {
        int w = G.mul(gi, G.conj(x, gj));
        auto [k, y] = class_rep_and_witness(G, cd, w);
        int yx = G.mul(y, x);
        Subgroup A = conjugate(G, y, Hi);
        Subgroup B = conjugate(G, yx, Hj);
        Subgroup W = intersect(G, A, B);
        const Subgroup& Hk = cd.centralizers[k];
        if (!is_subset(W, Hk)) throw std::logic_error("intersection is not inside the centralizer");
        GElem ca = S.restriction(A, W, S.conjugation(y, Hi, a));
        GElem cb = S.restriction(B, W, S.conjugation(yx, Hj, b));
        GElem pr = S.corestriction(Hk, W, S.group_cup(W, ca, cb));
        auto it = out.find(k);
        if (it == out.end()) out.emplace(k, pr);
        else it->second.v = add(it->second.v, pr.v, F);
    }
    return out;
}

SylowDetector::SylowDetector(const ClassDecomposition& D, const SubgroupCalculus& S) : D_(D), S_(S)
{
    for (int k = 0; k < D.count(); ++k)
        P_.push_back(sylow_subgroup(S.group(), D.part(k).centralizer(), (int)S.field().p));
}

std::vector<uint32_t> SylowDetector::detect(const TElem& x) const
{
    std::vector<uint32_t> out;
    for (int k = 0; k < D_.count(); ++k) {
        const auto& part = D_.part(k);
        GElem y = part.project(x);
        // a trivial Sylow subgroup has zero Tate cohomology
        if (P_[k].order() == 1) continue;
        GElem z = P_[k].members == part.centralizer().members ? y : S_.restriction(part.centralizer(), P_[k], y);
        auto c = S_.coords(P_[k], z);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

} // namespace tbv
