#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "tatebv/field.hpp"

namespace tbv {

struct Term {
    uint64_t i;
    uint32_t c;
    bool operator==(const Term& o) const { return i == o.i && c == o.c; }
};

// sorted by index, no zero coefficients
using SVec = std::vector<Term>;

// sort, merge duplicates, drop zeros; coefficients must already be residues
inline void normalize(SVec& v, const Fp& F)
{
    if (v.empty()) return;
    std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) { return a.i < b.i; });
    size_t w = 0;
    for (size_t r = 0; r < v.size();) {
        uint64_t i = v[r].i;
        uint32_t c = 0;
        for (; r < v.size() && v[r].i == i; ++r) c = F.add(c, v[r].c);
        if (c) v[w++] = {i, c};
    }
    v.resize(w);
}

// a + f*b
inline SVec axpy(const SVec& a, uint32_t f, const SVec& b, const Fp& F)
{
    SVec r;
    r.reserve(a.size() + b.size());
    size_t x = 0, y = 0;
    while (x < a.size() || y < b.size()) {
        if (y == b.size() || (x < a.size() && a[x].i < b[y].i)) {
            r.push_back(a[x++]);
        } else if (x == a.size() || b[y].i < a[x].i) {
            uint32_t c = F.mul(f, b[y].c);
            if (c) r.push_back({b[y].i, c});
            ++y;
        } else {
            uint32_t c = F.add(a[x].c, F.mul(f, b[y].c));
            if (c) r.push_back({a[x].i, c});
            ++x;
            ++y;
        }
    }
    return r;
}

inline SVec scaled(const SVec& a, uint32_t f, const Fp& F)
{
    SVec r;
    if (f % F.p == 0) return r;
    r.reserve(a.size());
    for (auto& t : a) r.push_back({t.i, F.mul(t.c, f)});
    return r;
}

inline SVec add(const SVec& a, const SVec& b, const Fp& F) { return axpy(a, 1, b, F); }
inline SVec sub(const SVec& a, const SVec& b, const Fp& F) { return axpy(a, F.p - 1, b, F); }

inline uint32_t coeff(const SVec& v, uint64_t i)
{
    auto it = std::lower_bound(v.begin(), v.end(), i, [](const Term& t, uint64_t k) { return t.i < k; });
    return (it != v.end() && it->i == i) ? it->c : 0;
}

inline uint32_t dot(const SVec& a, const SVec& b, const Fp& F)
{
    uint32_t s = 0;
    size_t x = 0, y = 0;
    while (x < a.size() && y < b.size()) {
        if (a[x].i < b[y].i) ++x;
        else if (b[y].i < a[x].i) ++y;
        else s = F.add(s, F.mul(a[x++].c, b[y++].c));
    }
    return s;
}

// column-major
struct SparseMatrix {
    uint64_t rows = 0;
    std::vector<SVec> cols;

    uint64_t ncols() const { return cols.size(); }
    size_t nnz() const
    {
        size_t s = 0;
        for (auto& c : cols) s += c.size();
        return s;
    }
    SVec apply(const SVec& v, const Fp& F) const
    {
        SVec r;
        for (auto& t : v) {
            for (auto& e : cols[t.i]) r.push_back({e.i, F.mul(e.c, t.c)});
        }
        normalize(r, F);
        return r;
    }
    static SparseMatrix from_dense(const std::vector<std::vector<long long>>& rowsv, const Fp& F)
    {
        SparseMatrix M;
        M.rows = rowsv.size();
        size_t nc = rowsv.empty() ? 0 : rowsv[0].size();
        M.cols.resize(nc);
        for (size_t r = 0; r < rowsv.size(); ++r)
            for (size_t c = 0; c < nc; ++c) {
                uint32_t v = F.from(rowsv[r][c]);
                if (v) M.cols[c].push_back({r, v});
            }
        return M;
    }
};

} // namespace tbv
