#include <sstream>

#include "tatebv/harness.hpp"

namespace tbv {

namespace {

using Vec = std::vector<uint32_t>;

// generators with an unknown scale, in the order of S3Verification::Scales
const char* const kScaled[6] = {"x", "z", "zi", "W1", "W2", "W2i"};

struct Piece {
    long long c;
    char op; // P product, D Delta of the product, B bracket of two generators
    std::vector<std::string> gens;
};

struct Identity {
    std::string name;
    std::vector<Piece> lhs, rhs;
};

Piece P(long long c, std::vector<std::string> g) { return {c, 'P', std::move(g)}; }
Piece Dl(long long c, std::vector<std::string> g) { return {c, 'D', std::move(g)}; }

class S3Context {
public:
    explicit S3Context(const Job& job) : job_(job), T_(job.complex()), F_(job.field()), det_(job.decomposition(), job.subgroups())
    {
        const ClassDecomposition& D = job.decomposition();
        const ConjugacyData& cd = D.conj();
        k0_ = cd.class_of[0];
        for (int k = 0; k < cd.count(); ++k)
            if (cd.centralizers[k].order() == 3) ka_ = k;
        gen_["1"] = D.embed(k0_, GElem{0, {{0, 1}}});
        gen_["E2"] = D.embed(ka_, GElem{0, {{0, 1}}});
        gen_["C"] = TElem{0, add(gen_["1"].v, gen_["E2"].v, F_)};
        dims_ok_ = true;
        auto pick = [&](const char* name, int k, int n) {
            const GroupTateComplex& C = D.part(k).gcomplex();
            auto H = C.cohomology(n);
            if (H->dim() != 1) {
                dims_ok_ = false;
                gen_[name] = TElem{n, {}};
                return;
            }
            gen_[name] = D.embed(k, GElem{n, H->reps()[0]});
        };
        pick("x", k0_, 3);
        pick("z", k0_, 4);
        pick("zi", k0_, -4);
        pick("W1", ka_, 1);
        pick("W2", ka_, 2);
        pick("W2i", ka_, -2);
    }

    bool dims_ok() const { return dims_ok_; }

    const TElem& product(const std::vector<std::string>& g)
    {
        std::string key;
        for (auto& s : g) key += s + "*";
        auto it = prod_.find(key);
        if (it != prod_.end()) return it->second;
        TElem r = gen_.at(g[0]);
        for (size_t i = 1; i < g.size(); ++i) r = cup(T_, r, gen_.at(g[i]));
        return prod_[key] = r;
    }

    // detection vector of the unscaled term
    const std::pair<int, Vec>& raw(const Piece& t)
    {
        std::string key(1, t.op);
        for (auto& s : t.gens) key += s + ",";
        auto it = raw_.find(key);
        if (it != raw_.end()) return it->second;
        TElem e;
        if (t.op == 'P') e = product(t.gens);
        else if (t.op == 'D') e = bv_operator(T_, product(t.gens));
        else e = bracket_chain(T_, gen_.at(t.gens[0]), gen_.at(t.gens[1]));
        return raw_[key] = {e.deg, det_.detect(e)};
    }

    Vec value(const std::vector<Piece>& ts, const S3Verification::Scales& lam)
    {
        Vec out;
        for (auto& t : ts) {
            auto& [deg, v] = raw(t);
            if (out.empty()) out.assign(v.size(), 0);
            if (v.size() != out.size()) throw std::logic_error("terms of different degrees");
            uint32_t f = F_.from(t.c);
            for (auto& g : t.gens)
                for (int q = 0; q < 6; ++q)
                    if (g == kScaled[q]) f = F_.mul(f, lam[q]);
            for (size_t i = 0; i < v.size(); ++i) out[i] = F_.add(out[i], F_.mul(f, v[i]));
        }
        return out;
    }

    bool holds(const Identity& id, const S3Verification::Scales& lam)
    {
        Vec l = value(id.lhs, lam), r = value(id.rhs, lam);
        if (r.empty()) r.assign(l.size(), 0);
        if (l.empty()) l.assign(r.size(), 0);
        return l == r;
    }

    static bool is_zero(const Vec& v)
    {
        for (auto c : v)
            if (c) return false;
        return true;
    }

    // a = c b for some nonzero c
    bool proportional(const Vec& a, const Vec& b) const
    {
        for (uint32_t c = 1; c < F_.p; ++c) {
            bool ok = true;
            for (size_t i = 0; i < a.size() && ok; ++i) ok = a[i] == F_.mul(c, b[i]);
            if (ok) return true;
        }
        return false;
    }

    const Fp& field() const { return F_; }

private:
    const Job& job_;
    const TateComplex& T_;
    const Fp& F_;
    SylowDetector det_;
    int k0_ = 0, ka_ = -1;
    bool dims_ok_ = false;
    std::map<std::string, TElem> gen_;
    std::map<std::string, TElem> prod_;
    std::map<std::string, std::pair<int, Vec>> raw_;
};

std::vector<Identity> presentation()
{
    return {
        {"x^2 = 0", {P(1, {"x", "x"})}, {}},
        {"xW1 = 0", {P(1, {"x", "W1"})}, {}},
        {"xW2 = zW1", {P(1, {"x", "W2"})}, {P(1, {"z", "W1"})}},
        {"z^-1 W1 = x z^-1 W2^-1", {P(1, {"zi", "W1"})}, {P(1, {"x", "zi", "W2i"})}},
        {"C^2 = 0", {P(1, {"C", "C"})}, {}},
        {"CW2^-1 = 0", {P(1, {"C", "W2i"})}, {}},
        {"CW1 = 0", {P(1, {"C", "W1"})}, {}},
        {"CW2 = 0", {P(1, {"C", "W2"})}, {}},
        {"W2^2 = zC", {P(1, {"W2", "W2"})}, {P(1, {"z", "C"})}},
        {"W2^-2 = z^-1 C", {P(1, {"W2i", "W2i"})}, {P(1, {"zi", "C"})}},
        {"W1W2 = xC", {P(1, {"W1", "W2"})}, {P(1, {"x", "C"})}},
        {"W1W2^-1 = x z^-1 C", {P(1, {"W1", "W2i"})}, {P(1, {"x", "zi", "C"})}},
        {"W2W2^-1 = C", {P(1, {"W2", "W2i"})}, {P(1, {"C"})}},
        {"z z^-1 = 1", {P(1, {"z", "zi"})}, {P(1, {"1"})}},
        {"W2^3 = 0", {P(1, {"W2", "W2", "W2"})}, {}},
        {"W2^-3 = 0", {P(1, {"W2i", "W2i", "W2i"})}, {}},
    };
}

std::vector<Identity> delta_table()
{
    return {
        {"Delta(W1) = 1 - C", {Dl(1, {"W1"})}, {P(1, {"1"}), P(-1, {"C"})}},
        {"Delta(W1W2) = -W2", {Dl(1, {"W1", "W2"})}, {P(-1, {"W2"})}},
        {"Delta(W2^-1) = 0", {Dl(1, {"W2i"})}, {}},
        {"Delta(W1W2^-1) = -W2^-1", {Dl(1, {"W1", "W2i"})}, {P(-1, {"W2i"})}},
        {"Delta(W2^-2) = 0", {Dl(1, {"W2i", "W2i"})}, {}},
        {"Delta(x) = 0", {Dl(1, {"x"})}, {}},
        {"Delta(z) = 0", {Dl(1, {"z"})}, {}},
        {"Delta(z^-1) = 0", {Dl(1, {"zi"})}, {}},
        {"Delta(C) = 0", {Dl(1, {"C"})}, {}},
    };
}

std::string pretty(const std::string& g)
{
    if (g == "zi") return "z^-1";
    if (g == "W2i") return "W2^-1";
    return g;
}

// the 49 ordered pairs with their listed values
std::vector<Identity> brackets()
{
    const char* order[7] = {"x", "z", "zi", "C", "W1", "W2", "W2i"};
    std::map<std::pair<std::string, std::string>, std::vector<Piece>> listed{
        {{"x", "C"}, {P(1, {"W2"})}},
        {{"C", "x"}, {P(-1, {"W2"})}},
        {{"x", "W1"}, {P(1, {"x", "E2"})}},
        {{"W1", "x"}, {P(-1, {"x", "E2"})}},
        {{"x", "W2i"}, {P(1, {"E2"})}},
        {{"W2i", "x"}, {P(-1, {"E2"})}},
        {{"z", "W1"}, {P(1, {"z", "E2"})}},
        {{"W1", "z"}, {P(-1, {"z", "E2"})}},
        {{"zi", "W1"}, {P(1, {"zi", "E2"})}},
        {{"W1", "zi"}, {P(-1, {"zi", "E2"})}},
        {{"C", "W1"}, {P(1, {"C"})}},
        {{"W1", "C"}, {P(-1, {"C"})}},
        {{"W1", "W2"}, {P(-1, {"W2"})}},
        {{"W2", "W1"}, {P(1, {"W2"})}},
        {{"W1", "W2i"}, {P(1, {"W2i"})}},
        {{"W2i", "W1"}, {P(-1, {"W2i"})}},
    };
    std::vector<Identity> out;
    int item = 0;
    // grouped by the first generator, each group lists (a,a) then (a,b),(b,a) for later b
    for (int a = 0; a < 7; ++a)
        for (int b = a; b < 7; ++b)
            for (int flip = 0; flip < (a == b ? 1 : 2); ++flip) {
                std::string l = order[flip ? b : a], r = order[flip ? a : b];
                Identity id;
                id.name = "(" + std::to_string(++item) + ") [" + pretty(l) + "," + pretty(r) + "]";
                id.lhs = {Piece{1, 'B', {l, r}}};
                auto it = listed.find({l, r});
                if (it != listed.end()) id.rhs = it->second;
                out.push_back(id);
            }
    return out;
}

std::string scales_str(const S3Verification::Scales& s)
{
    std::ostringstream o;
    for (int q = 0; q < 6; ++q) o << (q ? " " : "") << kScaled[q] << "=" << s[q];
    return o.str();
}

} // namespace

bool S3Verification::scale_invariant_ok() const
{
    for (auto& c : checks)
        if (c.group == "scale_invariant" && !c.ok) return false;
    return true;
}

bool S3Verification::presentation_ok() const
{
    for (auto& c : checks)
        if (c.group == "relations" && !c.ok) return false;
    return !presentation_solutions.empty();
}

S3Verification verify_s3(const Job& job)
{
    const Group& G = job.group();
    if (G.n != 6 || G.is_abelian() || job.field().p != 3) throw ConfigError("verify-s3 needs S3 over F3");
    S3Verification out;
    S3Context cx(job);
    auto add = [&](const std::string& group, const std::string& name, bool ok, std::string detail = "") {
        out.checks.push_back({group, name, ok, std::move(detail)});
    };

    std::vector<int> want{2, 1, 1, 2, 2, 1, 1, 2}, got;
    for (int n = -4; n <= 3; ++n) got.push_back(job.basis().dim(n));
    add("relations", "dims for n = -4..3 are 2 1 1 2 2 1 1 2", got == want);
    add("relations", "generators are unique up to scalar", cx.dims_ok());
    if (!cx.dims_ok()) return out;

    const S3Verification::Scales one{1, 1, 1, 1, 1, 1};
    auto val = [&](Piece t) { return cx.value({t}, one); };

    // relations that hold or fail independently of the scalings
    for (auto& id : presentation()) {
        if (id.rhs.empty()) {
            add("relations", id.name, cx.holds(id, one));
        } else if (id.lhs.size() == 1 && id.rhs.size() == 1) {
            Vec a = val(id.lhs[0]), b = val(id.rhs[0]);
            add("relations", id.name + " up to a unit", cx.proportional(a, b));
        }
    }
    {
        Vec d = val(Dl(1, {"W1"})), e = val(P(1, {"E2"}));
        add("scale_invariant", "Delta(W1) in k^x E2", !S3Context::is_zero(d) && cx.proportional(d, e));
        Vec b = val(Piece{1, 'B', {"x", "C"}}), w = val(P(1, {"W2"}));
        add("scale_invariant", "[x,C] in k^x W2", !S3Context::is_zero(b) && cx.proportional(b, w));
        Vec c = val(P(1, {"W2", "W2i"})), cc = val(P(1, {"C"}));
        add("scale_invariant", "W2W2^-1 in k^x C", !S3Context::is_zero(c) && cx.proportional(c, cc));
    }
    auto br = brackets();
    for (auto& id : br) {
        bool zero = S3Context::is_zero(cx.value(id.lhs, one));
        bool listed_zero = id.rhs.empty();
        add("scale_invariant", id.name + (listed_zero ? " vanishes" : " is nonzero"), zero == listed_zero);
    }
    for (auto* n : {"x", "z", "zi"})
        for (auto* m : {"x", "z", "zi"}) {
            bool zero = S3Context::is_zero(val(Piece{1, 'B', {n, m}}));
            add("scale_invariant", "[" + pretty(n) + "," + pretty(m) + "] vanishes", zero);
        }

    // exhaustive search over (F3^x)^6
    auto pres = presentation();
    std::vector<Identity> full = pres;
    for (auto& id : delta_table()) full.push_back(id);
    for (auto& id : br) full.push_back(id);
    size_t best = SIZE_MAX;
    for (int mask = 0; mask < 64; ++mask) {
        S3Verification::Scales lam;
        for (int q = 0; q < 6; ++q) lam[q] = (mask >> (5 - q)) & 1 ? 2 : 1;
        bool pres_ok = true;
        for (auto& id : pres) pres_ok = pres_ok && cx.holds(id, lam);
        if (pres_ok) out.presentation_solutions.push_back(lam);
        std::vector<std::string> fails;
        for (auto& id : full)
            if (!cx.holds(id, lam)) fails.push_back(id.name);
        if (fails.empty()) out.bv_solutions.push_back(lam);
        if (fails.size() < best) {
            best = fails.size();
            out.best = lam;
            out.best_failures = fails;
        }
    }
    add("presentation", "a scaling satisfies the full presentation", !out.presentation_solutions.empty(),
        out.presentation_solutions.empty() ? "" : scales_str(out.presentation_solutions[0]));
    add("bv", "a scaling satisfies presentation, Delta table and 49 brackets", out.bv_ok(),
        out.bv_ok() ? scales_str(out.bv_solutions[0])
                    : "best " + scales_str(out.best) + ", first violated " + out.best_failures[0] + " (" +
                          std::to_string(out.best_failures.size()) + " violated)");
    if (!out.bv_ok()) {
        for (auto& f : out.best_failures) add("bv_violations", f, false, scales_str(out.best));
    }
    return out;
}

Bundle cmd_verify_s3(const Job& job)
{
    S3Verification v = verify_s3(job);
    Bundle b;
    b.command = "verify-s3";
    b.config = config_json(job.config());
    b.provenance = {{"tool", "tatebv"},
                    {"version", kToolVersion},
                    {"schema_version", kSchemaVersion},
                    {"command", b.command},
                    {"seed", job.config().seed},
                    {"config_hash", config_hash(job.config())}};
    json rows = json::array();
    for (auto& c : v.checks) rows.push_back({{"group", c.group}, {"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    json sols = json::array();
    for (auto& s : v.presentation_solutions) {
        bool bv = std::find(v.bv_solutions.begin(), v.bv_solutions.end(), s) != v.bv_solutions.end();
        sols.push_back({{"x", s[0]}, {"z", s[1]}, {"zi", s[2]}, {"W1", s[3]}, {"W2", s[4]}, {"W2i", s[5]}, {"bv", bv}});
    }
    b.tables = {{"checks", rows}, {"normalizations", sols}};
    for (int k = 0; k < job.decomposition().count(); ++k) {
        const auto& cd = job.decomposition().conj();
        b.classes.push_back({{"index", k},
                             {"rep", cd.reps[k]},
                             {"rep_label", job.group().label(cd.reps[k])},
                             {"size", cd.classes[k].size()},
                             {"centralizer_order", cd.centralizers[k].order()}});
    }
    b.provenance["scale_invariant_ok"] = v.scale_invariant_ok();
    b.provenance["presentation_ok"] = v.presentation_ok();
    b.provenance["bv_ok"] = v.bv_ok();
    b.ok = v.scale_invariant_ok() && v.presentation_ok() && v.bv_ok();
    return b;
}

} // namespace tbv
