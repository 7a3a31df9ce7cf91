#include "tatebv/linalg.hpp"

#include <map>
#include <numeric>

namespace tbv {

SVec Echelon::reduce(SVec v, SVec* labels) const
{
    SVec lab;
    while (!v.empty()) {
        auto it = pivot_.find(v.front().i);
        if (it == pivot_.end()) break;
        uint32_t f = v.front().c;
        v = axpy(v, F_.neg(f), rows_[it->second], F_);
        if (labels && !labels_[it->second].empty()) lab = axpy(lab, f, labels_[it->second], F_);
    }
    if (labels) *labels = std::move(lab);
    return v;
}

void Echelon::insert(SVec v, SVec label)
{
    if (v.empty()) throw LinalgError("inserting a zero row");
    if (pivot_.count(v.front().i)) throw LinalgError("row is not reduced");
    uint32_t s = F_.inv(v.front().c);
    if (s != 1) {
        v = scaled(v, s, F_);
        label = scaled(label, s, F_);
    }
    pivot_[v.front().i] = rows_.size();
    rows_.push_back(std::move(v));
    labels_.push_back(std::move(label));
}

namespace {

struct Dense {
    std::vector<uint64_t> rowid; // compressed row -> original row index
    size_t nr = 0, nc = 0;
    std::vector<uint32_t> a;
    std::vector<size_t> pivcol; // per pivot row
    uint32_t& at(size_t r, size_t c) { return a[r * nc + c]; }
};

Dense rref(const SparseMatrix& M, const Fp& F)
{
    Dense D;
    std::map<uint64_t, size_t> rmap;
    for (auto& c : M.cols)
        for (auto& t : c) rmap.emplace(t.i, 0);
    for (auto& [k, v] : rmap) {
        v = D.rowid.size();
        D.rowid.push_back(k);
    }
    D.nr = D.rowid.size();
    D.nc = M.cols.size();
    D.a.assign(D.nr * D.nc, 0);
    for (size_t c = 0; c < D.nc; ++c)
        for (auto& t : M.cols[c]) D.at(rmap[t.i], c) = t.c;
    size_t r = 0;
    for (size_t c = 0; c < D.nc && r < D.nr; ++c) {
        size_t p = r;
        while (p < D.nr && D.at(p, c) == 0) ++p;
        if (p == D.nr) continue;
        if (p != r)
            for (size_t k = 0; k < D.nc; ++k) std::swap(D.at(p, k), D.at(r, k));
        uint32_t s = F.inv(D.at(r, c));
        for (size_t k = c; k < D.nc; ++k) D.at(r, k) = F.mul(D.at(r, k), s);
        for (size_t q = 0; q < D.nr; ++q) {
            if (q == r || D.at(q, c) == 0) continue;
            uint32_t f = D.at(q, c);
            for (size_t k = c; k < D.nc; ++k)
                if (D.at(r, k)) D.at(q, k) = F.sub(D.at(q, k), F.mul(f, D.at(r, k)));
        }
        D.pivcol.push_back(c);
        ++r;
    }
    return D;
}

bool dense_ok(const SparseMatrix& M)
{
    if (M.cols.size() >= kDenseColumns) return false;
    return M.nnz() <= (1u << 22) && M.rows * M.cols.size() <= (1ull << 24);
}

} // namespace

uint64_t rank_dense(const SparseMatrix& M, const Fp& F) { return rref(M, F).pivcol.size(); }

uint64_t rank_sparse(const SparseMatrix& M, const Fp& F)
{
    // fewest entries first, lowest index on ties
    std::vector<size_t> order(M.cols.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return M.cols[a].size() < M.cols[b].size(); });
    Echelon E(F);
    for (size_t c : order) {
        SVec r = E.reduce(M.cols[c]);
        if (!r.empty()) E.insert(std::move(r));
    }
    return E.size();
}

uint64_t rank(const SparseMatrix& M, const Fp& F) { return dense_ok(M) ? rank_dense(M, F) : rank_sparse(M, F); }

std::vector<SVec> kernel_basis_dense(const SparseMatrix& M, const Fp& F)
{
    Dense D = rref(M, F);
    std::vector<int> is_piv(D.nc, -1);
    for (size_t r = 0; r < D.pivcol.size(); ++r) is_piv[D.pivcol[r]] = (int)r;
    std::vector<SVec> out;
    for (size_t f = 0; f < D.nc; ++f) {
        if (is_piv[f] >= 0) continue;
        SVec v{{f, 1}};
        for (size_t r = 0; r < D.pivcol.size(); ++r) {
            uint32_t a = D.nr ? D.at(r, f) : 0;
            if (a) v.push_back({D.pivcol[r], F.neg(a)});
        }
        normalize(v, F);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<SVec> kernel_basis_sparse(const SparseMatrix& M, const Fp& F)
{
    Echelon E(F);
    std::vector<SVec> out;
    for (uint64_t j = 0; j < M.cols.size(); ++j) {
        SVec labs;
        SVec r = E.reduce(M.cols[j], &labs);
        SVec hist = axpy(SVec{{j, 1}}, F.p - 1, labs, F);
        if (r.empty()) out.push_back(std::move(hist));
        else E.insert(std::move(r), std::move(hist));
    }
    return out;
}

std::vector<SVec> kernel_basis(const SparseMatrix& M, const Fp& F)
{
    return dense_ok(M) ? kernel_basis_dense(M, F) : kernel_basis_sparse(M, F);
}

std::optional<SVec> solve(const SparseMatrix& M, const SVec& b, const Fp& F)
{
    for (auto& t : b)
        if (t.i >= M.rows) throw LinalgError("dimension mismatch in solve");
    Echelon E(F);
    for (uint64_t j = 0; j < M.cols.size(); ++j) {
        SVec labs;
        SVec r = E.reduce(M.cols[j], &labs);
        if (!r.empty()) E.insert(std::move(r), axpy(SVec{{j, 1}}, F.p - 1, labs, F));
    }
    SVec x;
    SVec r = E.reduce(b, &x);
    if (!r.empty()) return std::nullopt;
    return x;
}

QuotientBuilder::QuotientBuilder(const Fp& F) : F_(F) { q_.E_ = Echelon(F); }

void QuotientBuilder::add_image(const SVec& v)
{
    SVec r = q_.E_.reduce(v);
    if (r.empty()) return;
    q_.E_.insert(std::move(r));
    ++q_.image_dim_;
}

void QuotientBuilder::add_kernel(const SVec& v)
{
    ++q_.kernel_dim_;
    SVec r = q_.E_.reduce(v);
    if (r.empty()) return;
    uint64_t j = q_.reps_.size();
    // the representative is kept unscaled; its label is scaled on insert
    q_.reps_.push_back(r);
    q_.E_.insert(std::move(r), SVec{{j, 1}});
}

QuotientSpace QuotientBuilder::finish() { return std::move(q_); }

QuotientSpace QuotientSpace::build(const std::vector<SVec>& kernel, const std::vector<SVec>& image, const Fp& F,
                                   bool validate)
{
    if (validate) {
        Echelon K(F);
        for (auto& v : kernel) {
            SVec r = K.reduce(v);
            if (!r.empty()) K.insert(std::move(r));
        }
        for (auto& v : image)
            if (!K.reduce(v).empty()) throw LinalgError("image is not inside the kernel (d^2 != 0?)");
    }
    QuotientBuilder b(F);
    for (auto& v : image) b.add_image(v);
    for (auto& v : kernel) b.add_kernel(v);
    auto q = b.finish();
    return q;
}

std::optional<std::vector<uint32_t>> QuotientSpace::project(const SVec& v) const
{
    SVec labs;
    SVec r = E_.reduce(v, &labs);
    if (!r.empty()) return std::nullopt;
    std::vector<uint32_t> c(reps_.size(), 0);
    for (auto& t : labs) c[t.i] = t.c;
    return c;
}

SVec QuotientSpace::lift(const std::vector<uint32_t>& c) const
{
    const Fp& F = E_.field();
    SVec v;
    for (size_t j = 0; j < c.size() && j < reps_.size(); ++j)
        if (c[j] % F.p) v = axpy(v, c[j] % F.p, reps_[j], F);
    return v;
}

bool QuotientSpace::in_image(const SVec& v) const
{
    auto c = project(v);
    if (!c) return false;
    for (auto x : *c)
        if (x) return false;
    return true;
}

} // namespace tbv
