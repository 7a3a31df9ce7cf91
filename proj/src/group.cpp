#include "tatebv/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace tbv {

int Group::element_order(int g) const
{
    int k = 1, x = g;
    while (x != 0) {
        x = mul(x, g);
        ++k;
    }
    return k;
}

bool Group::is_abelian() const
{
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

Group group_from_mult_table(const std::vector<std::vector<int>>& tab, std::vector<std::string> labels)
{
    int n = (int)tab.size();
    if (n == 0) throw GroupError(GroupError::NotSquare, "empty table");
    for (auto& row : tab) {
        if ((int)row.size() != n) throw GroupError(GroupError::NotSquare, "table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw GroupError(GroupError::OutOfRange, "entry out of range");
    }
    if (!labels.empty()) {
        if ((int)labels.size() != n) throw GroupError(GroupError::BadParam, "label count differs from order");
        std::set<std::string> seen(labels.begin(), labels.end());
        if ((int)seen.size() != n) throw GroupError(GroupError::BadParam, "labels are not distinct");
    }

    int e = -1;
    for (int c = 0; c < n && e < 0; ++c) {
        bool ok = true;
        for (int g = 0; g < n && ok; ++g)
            ok = tab[c][g] == g && tab[g][c] == g;
        if (ok) e = c;
    }
    if (e < 0) throw GroupError(GroupError::NoIdentity, "no identity element");

    // relabel so that the identity sits at 0
    std::vector<int> to(n), from(n);
    for (int g = 0; g < n; ++g) to[g] = g;
    std::swap(to[0], to[e]);
    for (int g = 0; g < n; ++g) from[to[g]] = g;

    Group G;
    G.n = n;
    G.table.resize((size_t)n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            G.table[(size_t)a * n + b] = to[tab[from[a]][from[b]]];

    auto assoc = [&](int a, int b, int c) { return G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)); };
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (!assoc(a, b, c)) throw GroupError(GroupError::NotAssociative, "not associative");
    } else {
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> d(0, n - 1);
        for (int t = 0; t < 200000; ++t)
            if (!assoc(d(rng), d(rng), d(rng))) throw GroupError(GroupError::NotAssociative, "not associative");
    }

    G.inverse.assign(n, -1);
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h)
            if (G.mul(g, h) == 0 && G.mul(h, g) == 0) {
                G.inverse[g] = h;
                break;
            }
        if (G.inverse[g] < 0) throw GroupError(GroupError::NoInverse, "element " + std::to_string(from[g]) + " has no inverse");
    }
    if (!labels.empty()) {
        G.labels.resize(n);
        for (int g = 0; g < n; ++g) G.labels[g] = labels[from[g]];
    }
    return G;
}

static std::string cycle_string(const std::vector<int>& p)
{
    std::string s;
    std::vector<bool> seen(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == (int)i) continue;
        s += "(";
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            s += (first ? "" : " ") + std::to_string(j);
            first = false;
            j = p[j];
        }
        s += ")";
    }
    return s.empty() ? "()" : s;
}

Group group_from_permutations(const std::vector<std::vector<int>>& gens, size_t cap)
{
    size_t d = gens.empty() ? 0 : gens[0].size();
    for (auto& g : gens) {
        if (g.size() != d) throw GroupError(GroupError::BadPermutation, "generators act on different domains");
        std::vector<bool> hit(d);
        for (int v : g) {
            if (v < 0 || (size_t)v >= d || hit[v]) throw GroupError(GroupError::BadPermutation, "generator is not a bijection");
            hit[v] = true;
        }
    }
    std::vector<int> id(d);
    for (size_t i = 0; i < d; ++i) id[i] = (int)i;
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    std::deque<int> queue{0};
    auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(d);
        for (size_t i = 0; i < d; ++i) r[i] = p[q[i]];
        return r;
    };
    while (!queue.empty()) {
        int a = queue.front();
        queue.pop_front();
        for (auto& g : gens) {
            auto c = compose(elems[a], g);
            if (index.count(c)) continue;
            if (elems.size() >= cap)
                throw GroupError(GroupError::TooLarge, "closure exceeds size cap " + std::to_string(cap));
            index[c] = (int)elems.size();
            elems.push_back(c);
            queue.push_back((int)elems.size() - 1);
        }
    }
    int n = (int)elems.size();
    std::vector<std::vector<int>> tab(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) tab[a][b] = index.at(compose(elems[a], elems[b]));
    std::vector<std::string> labels;
    for (auto& p : elems) labels.push_back(cycle_string(p));
    return group_from_mult_table(tab, labels);
}

std::vector<std::vector<int>> parse_cycle_generators(const std::string& s)
{
    std::vector<std::vector<std::vector<int>>> gens; // generator -> cycles
    std::vector<std::vector<int>> cur;
    int maxpt = -1;
    size_t i = 0;
    bool any = false;
    while (i < s.size()) {
        char c = s[i];
        if (c == '(') {
            size_t j = s.find(')', i);
            if (j == std::string::npos) throw GroupError(GroupError::BadPermutation, "unbalanced parenthesis");
            std::string body = s.substr(i + 1, j - i - 1);
            for (char& ch : body)
                if (ch == ',') ch = ' ';
            std::istringstream in(body);
            std::vector<int> cyc;
            std::string tok;
            while (in >> tok) {
                size_t pos = 0;
                int v = std::stoi(tok, &pos);
                if (pos != tok.size() || v < 0) throw GroupError(GroupError::BadPermutation, "bad point '" + tok + "'");
                cyc.push_back(v);
                maxpt = std::max(maxpt, v);
            }
            cur.push_back(cyc);
            any = true;
            i = j + 1;
        } else if (c == ',' || c == ';') {
            if (!cur.empty()) gens.push_back(cur);
            cur.clear();
            ++i;
        } else if (isspace((unsigned char)c)) {
            ++i;
        } else {
            throw GroupError(GroupError::BadPermutation, std::string("unexpected character '") + c + "'");
        }
    }
    if (!cur.empty()) gens.push_back(cur);
    if (!any) throw GroupError(GroupError::BadPermutation, "no cycles given");
    int d = maxpt + 1;
    std::vector<std::vector<int>> out;
    for (auto& g : gens) {
        std::vector<int> p(d);
        for (int k = 0; k < d; ++k) p[k] = k;
        // cycles compose right to left, like the permutation product
        for (auto it = g.rbegin(); it != g.rend(); ++it) {
            const auto& cyc = *it;
            std::set<int> pts(cyc.begin(), cyc.end());
            if (pts.size() != cyc.size()) throw GroupError(GroupError::BadPermutation, "repeated point in a cycle");
            std::vector<int> q(d);
            for (int k = 0; k < d; ++k) q[k] = k;
            for (size_t t = 0; t < cyc.size(); ++t) q[cyc[t]] = cyc[(t + 1) % cyc.size()];
            std::vector<int> r(d);
            for (int k = 0; k < d; ++k) r[k] = q[p[k]];
            p = r;
        }
        out.push_back(p);
    }
    return out;
}

static Group cyclic(int n)
{
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> lab;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        lab.push_back(i == 0 ? "e" : i == 1 ? "a" : "a^" + std::to_string(i));
    }
    return group_from_mult_table(t, lab);
}

// a^k at index k, a^k b at index n+k, with b a = a^-1 b
static Group dihedral(int n)
{
    int N = 2 * n;
    std::vector<std::vector<int>> t(N, std::vector<int>(N));
    std::vector<std::string> lab;
    for (int x = 0; x < N; ++x) {
        int i = x % n, e = x / n;
        for (int y = 0; y < N; ++y) {
            int j = y % n, f = y / n;
            int k = ((e ? i - j : i + j) % n + n) % n;
            t[x][y] = k + n * (e ^ f);
        }
        std::string s = i == 0 ? "" : i == 1 ? "a" : "a^" + std::to_string(i);
        if (e) s += "b";
        lab.push_back(s.empty() ? "e" : s);
    }
    return group_from_mult_table(t, lab);
}

static Group quaternion8()
{
    // units 1,i,j,k with sign; index = unit + 4*neg
    static const int U[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int S[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int u = x % 4, v = y % 4;
            int neg = (x / 4) ^ (y / 4) ^ S[u][v];
            t[x][y] = U[u][v] + 4 * neg;
        }
    return group_from_mult_table(t, {"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
}

Group preset_group(const std::string& name, int param)
{
    if (name == "cyclic") {
        if (param < 1) throw GroupError(GroupError::BadParam, "cyclic needs n >= 1");
        return cyclic(param);
    }
    if (name == "dihedral") {
        if (param < 2) throw GroupError(GroupError::BadParam, "dihedral needs n >= 2");
        return dihedral(param);
    }
    if (name == "symmetric") {
        if (param < 1 || param > 5) throw GroupError(GroupError::BadParam, "symmetric needs 1 <= n <= 5");
        if (param == 1) return cyclic(1);
        if (param == 2) return cyclic(2);
        if (param == 3) return dihedral(3);
        std::vector<int> cyc(param), tr(param);
        for (int i = 0; i < param; ++i) {
            cyc[i] = (i + 1) % param;
            tr[i] = i;
        }
        std::swap(tr[0], tr[1]);
        return group_from_permutations({cyc, tr});
    }
    if (name == "klein_four") {
        std::vector<std::vector<int>> t(4, std::vector<int>(4));
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y) t[x][y] = x ^ y;
        return group_from_mult_table(t, {"e", "a", "b", "ab"});
    }
    if (name == "quaternion8") return quaternion8();
    throw GroupError(GroupError::BadParam, "unknown preset '" + name + "'");
}

Subgroup make_subgroup(const Group& G, std::vector<int> members)
{
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members[0] != 0) throw GroupError(GroupError::NotSubgroup, "subgroup must contain the identity");
    Subgroup H;
    H.parent = &G;
    H.members = members;
    H.local.assign(G.n, -1);
    for (size_t i = 0; i < members.size(); ++i) {
        if (members[i] < 0 || members[i] >= G.n) throw GroupError(GroupError::NotSubgroup, "member out of range");
        H.local[members[i]] = (int)i;
    }
    int m = (int)members.size();
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int c = H.local[G.mul(members[a], members[b])];
            if (c < 0) throw GroupError(GroupError::NotSubgroup, "not closed under multiplication");
            t[a][b] = c;
        }
    std::vector<std::string> lab;
    for (int g : members) lab.push_back(G.label(g));
    H.group = group_from_mult_table(t, lab);
    return H;
}

Subgroup whole_group(const Group& G)
{
    std::vector<int> all(G.n);
    for (int g = 0; g < G.n; ++g) all[g] = g;
    return make_subgroup(G, all);
}

Subgroup generated_subgroup(const Group& G, const std::vector<int>& gens)
{
    std::vector<bool> in(G.n);
    std::vector<int> mem{0};
    in[0] = true;
    for (size_t k = 0; k < mem.size(); ++k)
        for (int g : gens) {
            int c = G.mul(mem[k], g);
            if (!in[c]) {
                in[c] = true;
                mem.push_back(c);
            }
        }
    return make_subgroup(G, mem);
}

Subgroup conjugate(const Group& G, int g, const Subgroup& H)
{
    std::vector<int> m;
    for (int h : H.members) m.push_back(G.conj(g, h));
    return make_subgroup(G, m);
}

Subgroup intersect(const Group& G, const Subgroup& H, const Subgroup& K)
{
    std::vector<int> m;
    std::set_intersection(H.members.begin(), H.members.end(), K.members.begin(), K.members.end(), std::back_inserter(m));
    return make_subgroup(G, m);
}

bool is_subset(const Subgroup& H, const Subgroup& K)
{
    return std::includes(K.members.begin(), K.members.end(), H.members.begin(), H.members.end());
}

Subgroup sylow_subgroup(const Group& G, const Subgroup& H, int p)
{
    int target = 1, m = H.order();
    while (m % p == 0) {
        m /= p;
        target *= p;
    }
    Subgroup P = make_subgroup(G, {0});
    while (P.order() < target) {
        bool grown = false;
        for (int g : H.members) {
            if (P.contains(g)) continue;
            bool normalizes = true;
            for (int h : P.members)
                if (!P.contains(G.conj(g, h))) {
                    normalizes = false;
                    break;
                }
            if (!normalizes) continue;
            int x = 0;
            for (int k = 0; k < p; ++k) x = G.mul(x, g);
            if (!P.contains(x)) continue;
            auto gens = P.members;
            gens.push_back(g);
            P = generated_subgroup(G, gens);
            grown = true;
            break;
        }
        if (!grown) throw std::logic_error("sylow growth stalled");
    }
    return P;
}

ConjugacyData conjugacy_classes(const Group& G)
{
    ConjugacyData cd;
    cd.class_of.assign(G.n, -1);
    for (int g = 0; g < G.n; ++g) {
        if (cd.class_of[g] >= 0) continue;
        int k = (int)cd.reps.size();
        cd.reps.push_back(g);
        std::vector<int> cl;
        for (int h = 0; h < G.n; ++h) {
            int c = G.conj(h, g);
            if (cd.class_of[c] < 0) {
                cd.class_of[c] = k;
                cl.push_back(c);
            }
        }
        std::sort(cl.begin(), cl.end());
        cd.classes.push_back(cl);
        std::vector<int> cent;
        for (int h = 0; h < G.n; ++h)
            if (G.mul(h, g) == G.mul(g, h)) cent.push_back(h);
        cd.centralizers.push_back(make_subgroup(G, cent));
    }
    return cd;
}

std::pair<int, int> class_rep_and_witness(const Group& G, const ConjugacyData& cd, int g)
{
    int k = cd.class_of[g];
    for (int y = 0; y < G.n; ++y)
        if (G.conj(y, g) == cd.reps[k]) return {k, y};
    throw std::logic_error("no conjugating witness");
}

CosetSystem right_coset_system(const Group& G, const Subgroup& K, const Subgroup& H)
{
    if (!is_subset(H, K)) throw GroupError(GroupError::NotSubgroup, "H is not inside K");
    CosetSystem cs;
    cs.parent = &G;
    cs.sub = H;
    cs.ambient = K.members;
    cs.decomp.assign(G.n, {-1, -1});
    for (int g : K.members) {
        if (cs.decomp[g].second >= 0) continue;
        int i = (int)cs.gamma.size();
        cs.gamma.push_back(g);
        for (int h : H.members) cs.decomp[G.mul(h, g)] = {h, i};
    }
    int t = cs.count();
    cs.step_h.assign((size_t)t * G.n, -1);
    cs.step_j.assign((size_t)t * G.n, -1);
    for (int i = 0; i < t; ++i)
        for (int g : K.members) {
            auto [h, j] = cs.decomp[G.mul(cs.gamma[i], g)];
            cs.step_h[(size_t)i * G.n + g] = h;
            cs.step_j[(size_t)i * G.n + g] = j;
        }
    return cs;
}

CosetSystem right_coset_system(const Group& G, const Subgroup& H)
{
    return right_coset_system(G, whole_group(G), H);
}

DoubleCosetSystem double_cosets(const Group& G, const Subgroup& H, const Subgroup& K)
{
    DoubleCosetSystem d;
    d.left = H;
    d.right = K;
    d.coset_of.assign(G.n, -1);
    for (int g = 0; g < G.n; ++g) {
        if (d.coset_of[g] >= 0) continue;
        int r = (int)d.reps.size();
        d.reps.push_back(g);
        int size = 0;
        for (int a : H.members)
            for (int b : K.members) {
                int c = G.mul(a, G.mul(g, b));
                if (d.coset_of[c] < 0) {
                    d.coset_of[c] = r;
                    ++size;
                }
            }
        d.sizes.push_back(size);
    }
    return d;
}

} // namespace tbv
