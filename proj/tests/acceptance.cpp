#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "tatebv/harness.hpp"

using namespace tbv;

namespace {

JobConfig config(const std::string& group, uint32_t p, int lo, int hi, uint64_t seed = 1)
{
    JobConfig c;
    c.group = group;
    c.p = p;
    c.lo = lo;
    c.hi = hi;
    c.seed = seed;
    return c;
}

std::string describe(const SuiteResult& r)
{
    std::ostringstream s;
    s << r.name << " " << r.trials - r.failures << "/" << r.trials;
    if (!r.ok()) s << " (first: " << r.first_failure << ")";
    return s.str();
}

struct Outcome {
    bool ok;
    std::string detail;
};

Outcome dims_s3()
{
    Job job(config("S3", 3, -4, 3));
    std::vector<int> want{2, 1, 1, 2, 2, 1, 1, 2};
    std::ostringstream s;
    bool ok = true;
    for (int n = -4; n <= 3; ++n) {
        auto per = job.decomposition().class_dims(n);
        int total = 0;
        for (int d : per) total += d;
        s << total << (n < 3 ? " " : "");
        ok = ok && total == want[n + 4];
        if (n >= -3 && n <= 2) ok = ok && job.complex().cohomology(n)->dim() == total;
    }
    return {ok, "decomposition dims " + s.str() + ", direct path agrees on -3..2"};
}

Outcome suites_pass(std::vector<SuiteResult> rs, int min_trials)
{
    bool ok = true;
    std::string d;
    for (auto& r : rs) {
        ok = ok && r.ok() && r.trials >= min_trials;
        d += (d.empty() ? "" : "; ") + describe(r);
    }
    return {ok, d};
}

Outcome path_equivalence()
{
    Job a(config("S3", 3, -4, 3)), b(config("D4", 2, -3, 2));
    Rng ra(41), rb(42);
    auto s = suite_path_equivalence(a.decomposition(), a.subgroups(), {-4, 3}, 30, ra);
    auto t = suite_path_equivalence(b.decomposition(), b.subgroups(), {-3, 2}, 30, rb);
    s.name = "S3/F3";
    t.name = "D4/F2";
    return suites_pass({s, t}, 30);
}

Outcome retracts()
{
    Job a(config("S3", 3, -4, 3)), b(config("D4", 2, -3, 2));
    Rng ra(51), rb(52);
    auto s = suite_retract(a.decomposition(), {-4, 3}, 100, ra);
    auto t = suite_retract(b.decomposition(), {-3, 2}, 100, rb);
    s.name = "S3/F3";
    t.name = "D4/F2";
    return suites_pass({s, t}, 100);
}

Outcome a_infinity()
{
    Job job(config("S3", 3, -3, 2));
    const TateComplex& T = job.complex();
    Rng rng(61);
    Window w{-3, 2};
    std::vector<SuiteResult> rs{suite_leibniz(T, w, 108, rng),         suite_homotopy_assoc(T, w, 200, rng),
                                suite_m3_vanishing(T, w, 100, rng),    suite_cyclicity(T, w, 2, 100, rng),
                                suite_cyclicity(T, w, 3, 100, rng)};
    auto out = suites_pass(rs, 100);
    const auto& lc = rs[0].cases;
    const auto& hc = rs[1].cases;
    bool cover = lc.size() == 6 && hc.count("+-+") && hc.count("-+-");
    out.ok = out.ok && cover;
    out.detail += "; cup cases covered " + std::to_string(lc.size()) + "/6, m3 patterns +-+ " +
                  std::to_string(hc.count("+-+") ? hc.at("+-+") : 0) + " and -+- " +
                  std::to_string(hc.count("-+-") ? hc.at("-+-") : 0);
    auto bv = suite_bv_chain_map(T, {-4, 4}, 200, rng);
    out.ok = out.ok && bv.ok() && bv.trials >= 200;
    out.detail += "; " + describe(bv);
    return out;
}

Outcome vanishing_and_abelian()
{
    bool ok = true;
    std::ostringstream d;
    for (auto [g, p, want] : {std::tuple{"C2", 2u, 2}, std::tuple{"C2", 3u, 0}, std::tuple{"C3", 3u, 3}}) {
        Job job(config(g, p, -4, 3));
        bool good = true;
        for (int n = -4; n <= 3; ++n) {
            int total = job.basis().dim(n);
            good = good && total == want;
            if (job.direct_affordable(n)) good = good && job.complex().cohomology(n)->dim() == want;
        }
        d << g << "/F" << p << (good ? " ok, " : " wrong, ");
        ok = ok && good;
    }
    // kC2 over F2 is kC2 tensor F2[u, u^-1]: (g u^m)(h u^n) = gh u^(m+n)
    Job job(config("C2", 2, -4, 3));
    const DecomposedBasis& B = job.basis();
    const ClassDecomposition& D = job.decomposition();
    int pairs = 0, bad = 0;
    for (int m = -4; m <= 3; ++m)
        for (int n = -4; n <= 3; ++n) {
            if (m + n < -4 || m + n > 3) continue;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    int ki = B.locate(m, i).first, kj = B.locate(n, j).first;
                    int prod = job.group().mul(D.part(ki).rep(), D.part(kj).rep());
                    int kp = D.conj().class_of[prod];
                    std::vector<uint32_t> want(2, 0);
                    want[B.offset(m + n, kp)] = 1;
                    ++pairs;
                    bad += B.project(cup(job.complex(), B.rep(m, i), B.rep(n, j))).coords != want;
                }
        }
    TableSet ts = compute_tables(job);
    ok = ok && bad == 0 && ts.mismatches == 0;
    d << "kC2/F2 tensor rule " << pairs - bad << "/" << pairs << " pairs, table cross-check " << ts.checked - ts.mismatches
      << "/" << ts.checked;
    return {ok, d.str()};
}

Outcome bv_subalgebra()
{
    bool ok = true;
    std::ostringstream d;
    for (auto [g, p, lo, hi] : {std::tuple{"S3", 3u, -4, 3}, std::tuple{"D4", 2u, -3, 2}}) {
        Job job(config(g, p, lo, hi));
        const DecomposedBasis& B = job.basis();
        int k0 = job.decomposition().conj().class_of[0];
        auto outside_zero = [&](const CohClass& c) {
            int a = B.offset(c.deg, k0), b = B.offset(c.deg, k0 + 1);
            for (int q = 0; q < (int)c.coords.size(); ++q)
                if ((q < a || q >= b) && c.coords[q]) return false;
            return true;
        };
        auto ident = [&](int n) {
            std::vector<int> js;
            for (int j = 0; j < B.dim(n); ++j)
                if (B.locate(n, j).first == k0) js.push_back(j);
            return js;
        };
        int checked = 0, bad = 0;
        for (int m = lo; m <= hi; ++m)
            for (int i : ident(m)) {
                ++checked;
                bad += !outside_zero(B.project(bv_operator(job.complex(), B.rep(m, i))));
                for (int n = lo; n <= hi; ++n) {
                    if (m + n < lo || m + n > hi) continue;
                    for (int j : ident(n)) {
                        ++checked;
                        bad += !outside_zero(B.project(cup(job.complex(), B.rep(m, i), B.rep(n, j))));
                    }
                }
            }
        ok = ok && bad == 0 && checked > 0;
        d << g << "/F" << p << " " << checked - bad << "/" << checked << " products and Delta values closed; ";
    }
    return {ok, d.str()};
}

Outcome appendix_b()
{
    bool ok = true;
    std::ostringstream d;
    for (auto [g, p] : {std::pair{"C3", 3u}, std::pair{"S3", 3u}, std::pair{"V4", 2u}}) {
        Job job(config(g, p, -4, 3));
        Bundle b = cmd_verify_appendix_b(job);
        ok = ok && b.ok;
        d << g << "/F" << p << ":";
        for (auto& r : b.tables["appendix_b"])
            d << " s=" << r["s"] << " " << r["boundaries"] << "/" << r["cycles"];
        d << "; ";
    }
    return {ok, d.str()};
}

Outcome duality()
{
    Job job(config("S3", 3, -4, 3));
    const TateComplex& T = job.complex();
    const DecomposedBasis& B = job.basis();
    const Fp& F = job.field();
    const ConjugacyData& cd = job.decomposition().conj();
    bool ok = true;
    std::ostringstream d;
    for (int n = 0; n <= 3; ++n) {
        int dn = B.dim(n);
        std::vector<std::vector<long long>> M(dn, std::vector<long long>(B.dim(-n - 1)));
        for (int i = 0; i < dn; ++i)
            for (int j = 0; j < B.dim(-n - 1); ++j) M[i][j] = pairing(T, B.rep(n, i), B.rep(-n - 1, j));
        uint64_t r = dn ? rank(SparseMatrix::from_dense(M, F), F) : 0;
        ok = ok && dn == B.dim(-n - 1) && r == (uint64_t)dn;
        d << "n=" << n << " rank " << r << "/" << dn << ", ";
    }
    Rng rng(101);
    int checked = 0, bad = 0;
    for (int m = 0; m <= 2; ++m)
        for (int x = 0; x < cd.count(); ++x)
            for (int y = 0; y < cd.count(); ++y) {
                if (cd.class_of[job.group().inv(cd.reps[x])] == y) continue;
                for (int k = 0; k < 10; ++k) {
                    TElem a = random_class_elem(T, cd, x, m, rng, 10), b = random_class_elem(T, cd, y, -m - 1, rng, 10);
                    ++checked;
                    bad += pairing(T, a, b) != 0;
                }
            }
    ok = ok && bad == 0 && checked > 0;
    d << "cross-class pairings " << checked - bad << "/" << checked << " vanish";
    return {ok, d.str()};
}

} // namespace

int main()
{
    int failed = 0;
    auto run = [&](int id, const char* what, const std::function<Outcome()>& f) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.ok;
        while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';' || o.detail.back() == ','))
            o.detail.pop_back();
        std::printf("criterion %2d: %s  %s [%.1fs] %s\n", id, o.ok ? "PASS" : "FAIL", what, sec, o.detail.c_str());
        std::fflush(stdout);
    };

    run(1, "S3/F3 dimensions", dims_s3);

    // 2 and 3 share one run of the S3 verifier
    std::unique_ptr<Job> s3;
    S3Verification v;
    bool have = false;
    auto verifier = [&]() -> const S3Verification& {
        if (!have) {
            s3 = std::make_unique<Job>(config("S3", 3, -4, 3));
            v = verify_s3(*s3);
            have = true;
        }
        return v;
    };
    run(2, "S3/F3 presentation", [&] {
        const auto& r = verifier();
        std::string d;
        int bad = 0;
        for (auto& c : r.checks)
            if (c.group == "relations" && !c.ok) {
                ++bad;
                if (d.empty()) d = "violated: " + c.name;
            }
        d += (d.empty() ? "" : "; ") + std::to_string(r.presentation_solutions.size()) + " of 64 scalings satisfy it";
        return Outcome{r.presentation_ok(), d};
    });
    run(3, "S3/F3 BV table and 49 brackets", [&] {
        const auto& r = verifier();
        std::vector<std::string> si;
        for (auto& c : r.checks)
            if (c.group == "scale_invariant" && !c.ok) si.push_back(c.name);
        std::string d;
        if (r.bv_ok()) {
            d = std::to_string(r.bv_solutions.size()) + " scalings satisfy everything";
        } else {
            d = "no scaling works; best leaves " + std::to_string(r.best_failures.size()) + " violated:";
            for (auto& f : r.best_failures) d += " " + f;
        }
        if (!si.empty()) {
            d += "; scale-invariant failures:";
            for (auto& f : si) d += " " + f;
        }
        return Outcome{r.bv_ok() && si.empty(), d};
    });
    run(4, "double coset formula vs direct product", path_equivalence);
    run(5, "retract identities", retracts);
    run(6, "A-infinity and BV chain identities", a_infinity);
    run(7, "vanishing and abelian checks", vanishing_and_abelian);
    run(8, "identity class is a BV subalgebra", bv_subalgebra);
    run(9, "B~ kills group homology for s <= 2", appendix_b);
    run(10, "duality pairing", duality);

    std::printf("%d of 10 criteria failed\n", failed);
    return failed ? 1 : 0;
}
