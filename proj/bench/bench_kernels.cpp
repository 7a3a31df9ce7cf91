#include <benchmark/benchmark.h>

#include "tatebv/bv.hpp"
#include "tatebv/linalg.hpp"
#include "tatebv/parallel.hpp"
#include "tatebv/suites.hpp"

using namespace tbv;

namespace {

struct Fixture {
    Group G = preset_group("dihedral", 4);
    TateComplex T{G, Fp(2)};
};

Fixture& fx()
{
    static Fixture f;
    return f;
}

// range(0) threads, 1 is the serial reference
void BM_cup(benchmark::State& st)
{
    auto& f = fx();
    Rng rng(1);
    TElem a = random_elem(f.T, 3, rng, 400), b = random_elem(f.T, -3, rng, 60);
    int old = threads();
    set_threads((int)st.range(0));
    for (auto _ : st) {
        TElem r = st.range(0) == 1 ? cup_serial(f.T, a, b) : cup(f.T, a, b);
        benchmark::DoNotOptimize(r.v.data());
    }
    set_threads(old);
}

void BM_bv(benchmark::State& st)
{
    auto& f = fx();
    Rng rng(2);
    TElem a = random_elem(f.T, 4, rng, 20000);
    int old = threads();
    set_threads((int)st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(bv_operator(f.T, a).v.data());
    set_threads(old);
}

void BM_matrix(benchmark::State& st)
{
    auto& f = fx();
    int old = threads();
    set_threads((int)st.range(0));
    for (auto _ : st) {
        SparseMatrix M = st.range(0) == 1 ? f.T.matrix_serial(2) : f.T.matrix(2);
        benchmark::DoNotOptimize(M.cols.data());
    }
    set_threads(old);
}

void BM_rank(benchmark::State& st)
{
    auto& f = fx();
    SparseMatrix M = f.T.matrix_serial(1);
    const Fp F(2);
    for (auto _ : st) benchmark::DoNotOptimize(st.range(0) ? rank_sparse(M, F) : rank_dense(M, F));
}

} // namespace

BENCHMARK(BM_cup)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_bv)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_matrix)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_rank)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
