#pragma once

#include <cstdint>
#include <vector>

#include "tatebv/sparse.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tbv {

// 1 selects the serial reference kernels
void set_threads(int t);
int threads();

// Linear extension of a basis operator. op(idx, coeff, out) appends terms of coeff*op(idx).
template <class Op>
SVec apply_linear_serial(const SVec& v, const Fp& F, Op&& op)
{
    SVec out;
    for (auto& t : v) op(t.i, t.c, out);
    normalize(out, F);
    return out;
}

template <class Op>
SVec apply_linear_parallel(const SVec& v, const Fp& F, Op&& op, int nt)
{
#ifdef _OPENMP
    std::vector<SVec> parts(nt);
    const int64_t n = (int64_t)v.size();
#pragma omp parallel num_threads(nt)
    {
        SVec& local = parts[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 32)
        for (int64_t k = 0; k < n; ++k) op(v[k].i, v[k].c, local);
        normalize(local, F);
    }
    SVec out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    normalize(out, F);
    return out;
#else
    (void)nt;
    return apply_linear_serial(v, F, op);
#endif
}

template <class Op>
SVec apply_linear(const SVec& v, const Fp& F, Op&& op)
{
    int nt = threads();
    if (nt <= 1 || v.size() < 64) return apply_linear_serial(v, F, op);
    return apply_linear_parallel(v, F, op, nt);
}

// op(k, out) for k in [0, count), outputs summed
template <class Op>
SVec scan_range(uint64_t count, const Fp& F, Op&& op)
{
    SVec out;
    int nt = threads();
#ifdef _OPENMP
    if (nt > 1 && count >= 256) {
        std::vector<SVec> parts(nt);
#pragma omp parallel num_threads(nt)
        {
            SVec& local = parts[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 64)
            for (int64_t k = 0; k < (int64_t)count; ++k) op((uint64_t)k, local);
            normalize(local, F);
        }
        for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
        normalize(out, F);
        return out;
    }
#endif
    (void)nt;
    for (uint64_t k = 0; k < count; ++k) op(k, out);
    normalize(out, F);
    return out;
}

// columns col(j) for j in [0, count)
template <class Col>
std::vector<SVec> build_columns_serial(uint64_t count, Col&& col)
{
    std::vector<SVec> cols(count);
    for (uint64_t j = 0; j < count; ++j) cols[j] = col(j);
    return cols;
}

template <class Col>
std::vector<SVec> build_columns_parallel(uint64_t count, Col&& col, int nt)
{
    std::vector<SVec> cols(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt)
    for (int64_t j = 0; j < (int64_t)count; ++j) cols[j] = col((uint64_t)j);
#else
    (void)nt;
    for (uint64_t j = 0; j < count; ++j) cols[j] = col(j);
#endif
    return cols;
}

template <class Col>
std::vector<SVec> build_columns(uint64_t count, Col&& col)
{
    int nt = threads();
    if (nt <= 1 || count < 256) return build_columns_serial(count, col);
    return build_columns_parallel(count, col, nt);
}

} // namespace tbv
