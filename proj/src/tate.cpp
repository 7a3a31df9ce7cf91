#include "tatebv/tate.hpp"

#include <limits>

#include "tatebv/parallel.hpp"

namespace tbv {

namespace {
constexpr uint64_t kSat = std::numeric_limits<uint64_t>::max();

uint64_t sat_mul(uint64_t a, uint64_t b)
{
    if (a && b > kSat / a) return kSat;
    return a * b;
}
} // namespace

TupleCodec::TupleCodec(int order, int maxlen) : n(order)
{
    pw.assign(maxlen + 1, 0);
    pw[0] = 1;
    for (int k = 1; k <= maxlen; ++k) pw[k] = sat_mul(pw[k - 1], radix());
}

uint64_t TupleCodec::count(int len) const
{
    if (len < 0) return 0;
    if (len < (int)pw.size()) return pw[len];
    uint64_t r = pw.back();
    for (int k = (int)pw.size() - 1; k < len; ++k) r = sat_mul(r, radix());
    return r;
}

SVec BasisComplex::diff(int m, const SVec& v) const
{
    return apply_linear(v, field(), [&](uint64_t i, uint32_t c, SVec& out) { diff_basis(m, i, c, out); });
}

SparseMatrix BasisComplex::matrix(int m) const
{
    SparseMatrix M;
    M.rows = dim(m + 1);
    const Fp& F = field();
    M.cols = build_columns(dim(m), [&](uint64_t j) {
        SVec out;
        diff_basis(m, j, 1, out);
        normalize(out, F);
        return out;
    });
    return M;
}

SparseMatrix BasisComplex::matrix_serial(int m) const
{
    SparseMatrix M;
    M.rows = dim(m + 1);
    const Fp& F = field();
    M.cols = build_columns_serial(dim(m), [&](uint64_t j) {
        SVec out;
        diff_basis(m, j, 1, out);
        normalize(out, F);
        return out;
    });
    return M;
}

CohomologySpace BasisComplex::compute_cohomology(int n) const
{
    uint64_t a = dim(n - 1), b = dim(n);
    if (a > cost_cap || b > cost_cap)
        throw CostCapError("degree " + std::to_string(n) + " needs " + std::to_string(std::max(a, b)) + " columns",
                           std::max(a, b));
    const Fp& F = field();
    QuotientBuilder qb(F);
    {
        SparseMatrix Mi = matrix(n - 1);
        for (auto& col : Mi.cols) qb.add_image(col);
    }
    SparseMatrix Mk = matrix(n);
    // kernel by column insertion in natural order, histories give the canonical kernel basis
    Echelon E(F);
    for (uint64_t j = 0; j < Mk.cols.size(); ++j) {
        SVec labs;
        SVec r = E.reduce(std::move(Mk.cols[j]), &labs);
        SVec hist = axpy(SVec{{j, 1}}, F.p - 1, labs, F);
        if (r.empty()) qb.add_kernel(hist);
        else E.insert(std::move(r), std::move(hist));
    }
    CohomologySpace H;
    H.degree = n;
    H.q = qb.finish();
    // equality holds iff span(image) lies inside span(kernel)
    if (H.q.image_dim() + (uint64_t)H.q.dim() != H.q.kernel_dim())
        throw LinalgError("image not inside kernel in degree " + std::to_string(n) + " (d^2 != 0)");
    return H;
}

std::shared_ptr<const CohomologySpace> BasisComplex::cohomology(int n) const
{
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
    }
    auto h = std::make_shared<const CohomologySpace>(compute_cohomology(n));
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = cache_.emplace(n, h);
    return it->second;
}

uint64_t dim_degree(const Group& G, int m) { return sat_mul((uint64_t)G.n, TupleCodec(G.n).count(arity(m))); }

TateComplex::TateComplex(const Group& G, Fp F) : G_(&G), F_(F), codec_(G.n) {}

uint64_t TateComplex::dim(int m) const { return sat_mul((uint64_t)G_->n, codec_.count(arity(m))); }

void TateComplex::coboundary_basis(int m, uint64_t idx, uint32_t c, SVec& out) const
{
    const Group& G = *G_;
    std::vector<int> t, w;
    int h;
    split(idx, m, t, h);
    uint32_t last = F_.signed_(c, sgn(m + 1));
    w.resize(m + 1);
    for (int g = 1; g < G.n; ++g) {
        w[0] = g;
        std::copy(t.begin(), t.end(), w.begin() + 1);
        out.push_back({index(w, G.mul(g, h)), c});
        std::copy(t.begin(), t.end(), w.begin());
        w[m] = g;
        out.push_back({index(w, G.mul(h, g)), last});
    }
    for (int i = 0; i < m; ++i) {
        uint32_t ci = F_.signed_(c, sgn(i + 1));
        for (int u = 1; u < G.n; ++u) {
            int v = G.mul(G.inv(u), t[i]);
            if (v == 0) continue;
            std::copy(t.begin(), t.begin() + i, w.begin());
            w[i] = u;
            w[i + 1] = v;
            std::copy(t.begin() + i + 1, t.end(), w.begin() + i + 2);
            out.push_back({index(w, h), ci});
        }
    }
}

void TateComplex::boundary_basis(int s, uint64_t idx, uint32_t c, SVec& out) const
{
    const Group& G = *G_;
    std::vector<int> t, w;
    int g0;
    split(idx, s, t, g0);
    w.assign(t.begin() + 1, t.end());
    out.push_back({index(w, G.mul(g0, t[0])), c});
    for (int i = 1; i < s; ++i) {
        int mm = G.mul(t[i - 1], t[i]);
        if (mm == 0) continue;
        w.assign(t.begin(), t.begin() + i - 1);
        w.push_back(mm);
        w.insert(w.end(), t.begin() + i + 1, t.end());
        out.push_back({index(w, g0), F_.signed_(c, sgn(i))});
    }
    w.assign(t.begin(), t.end() - 1);
    out.push_back({index(w, G.mul(t[s - 1], g0)), F_.signed_(c, sgn(s))});
}

void TateComplex::trace_basis(uint64_t idx, uint32_t c, SVec& out) const
{
    int g0 = (int)(idx % G_->n);
    for (int g = 0; g < G_->n; ++g) out.push_back({(uint64_t)G_->conj(g, g0), c});
}

void TateComplex::diff_basis(int m, uint64_t idx, uint32_t c, SVec& out) const
{
    if (m >= 0) coboundary_basis(m, idx, c, out);
    else if (m == -1) trace_basis(idx, c, out);
    else {
        int s = -m - 1;
        boundary_basis(s, idx, F_.signed_(c, sgn(s)), out);
    }
}

TElem TateComplex::coboundary(const TElem& x) const
{
    if (x.deg < 0) throw std::invalid_argument("coboundary needs degree >= 0");
    return {x.deg + 1, apply_linear(x.v, F_, [&](uint64_t i, uint32_t c, SVec& o) { coboundary_basis(x.deg, i, c, o); })};
}

TElem TateComplex::boundary(const TElem& x) const
{
    if (x.deg > -2) throw std::invalid_argument("boundary needs degree <= -2");
    int s = -x.deg - 1;
    return {x.deg + 1, apply_linear(x.v, F_, [&](uint64_t i, uint32_t c, SVec& o) { boundary_basis(s, i, c, o); })};
}

TElem TateComplex::trace(const TElem& x) const
{
    if (x.deg != -1) throw std::invalid_argument("trace needs degree -1");
    return {0, apply_linear(x.v, F_, [&](uint64_t i, uint32_t c, SVec& o) { trace_basis(i, c, o); })};
}

TElem TateComplex::dprime(const TElem& x) const { return {x.deg + 1, diff(x.deg, x.v)}; }

TElem TateComplex::dprime_alt(const TElem& x) const
{
    if (x.deg >= 0) return coboundary(x);
    TElem y = x.deg == -1 ? trace(x) : boundary(x);
    if (sgn(x.deg) < 0) y.v = scaled(y.v, F_.p - 1, F_);
    return y;
}

int TateComplex::class_of_index(const ConjugacyData& cd, int m, uint64_t idx) const
{
    std::vector<int> t;
    int g;
    split(idx, arity(m), t, g);
    int pr = G_->prod(t);
    if (m >= 0) return cd.class_of[G_->mul(G_->inv(pr), g)];
    return cd.class_of[G_->mul(pr, g)];
}

GroupTateComplex::GroupTateComplex(const Subgroup& H, Fp F) : H_(H), F_(F), codec_(H.order()) {}

void GroupTateComplex::unsigned_boundary_basis(int s, uint64_t idx, uint32_t c, SVec& out) const
{
    const Group& L = H_.group;
    std::vector<int> t, w;
    codec_.decode(idx, s, t);
    w.assign(t.begin() + 1, t.end());
    out.push_back({codec_.encode(w), c});
    for (int i = 1; i < s; ++i) {
        int mm = L.mul(t[i - 1], t[i]);
        if (mm == 0) continue;
        w.assign(t.begin(), t.begin() + i - 1);
        w.push_back(mm);
        w.insert(w.end(), t.begin() + i + 1, t.end());
        out.push_back({codec_.encode(w), F_.signed_(c, sgn(i))});
    }
    w.assign(t.begin(), t.end() - 1);
    out.push_back({codec_.encode(w), F_.signed_(c, sgn(s))});
}

void GroupTateComplex::diff_basis(int m, uint64_t idx, uint32_t c, SVec& out) const
{
    const Group& L = H_.group;
    if (m == -1) {
        uint32_t v = F_.mul(c, F_.from(L.n));
        if (v) out.push_back({0, v});
        return;
    }
    if (m < -1) {
        int s = -m - 1;
        unsigned_boundary_basis(s, idx, F_.signed_(c, sgn(s)), out);
        return;
    }
    if (m == 0) return;
    std::vector<int> t, w(m + 1);
    codec_.decode(idx, m, t);
    uint32_t last = F_.signed_(c, sgn(m + 1));
    for (int g = 1; g < L.n; ++g) {
        w[0] = g;
        std::copy(t.begin(), t.end(), w.begin() + 1);
        out.push_back({codec_.encode(w), c});
        std::copy(t.begin(), t.end(), w.begin());
        w[m] = g;
        out.push_back({codec_.encode(w), last});
    }
    for (int i = 0; i < m; ++i) {
        uint32_t ci = F_.signed_(c, sgn(i + 1));
        for (int u = 1; u < L.n; ++u) {
            int v = L.mul(L.inv(u), t[i]);
            if (v == 0) continue;
            std::copy(t.begin(), t.begin() + i, w.begin());
            w[i] = u;
            w[i + 1] = v;
            std::copy(t.begin() + i + 1, t.end(), w.begin() + i + 2);
            out.push_back({codec_.encode(w), ci});
        }
    }
}

GElem GroupTateComplex::dprime(const GElem& x) const { return {x.deg + 1, diff(x.deg, x.v)}; }

uint64_t GroupTateComplex::encode_parent(std::span<const int> t) const
{
    uint64_t c = 0;
    for (int g : t) {
        int l = H_.local[g];
        if (l <= 0) throw std::invalid_argument("tuple entry outside subgroup or identity");
        c = c * codec_.radix() + (uint64_t)(l - 1);
    }
    return c;
}

void GroupTateComplex::decode_parent(uint64_t code, int len, std::vector<int>& out) const
{
    codec_.decode(code, len, out);
    for (int& g : out) g = H_.members[g];
}

} // namespace tbv
