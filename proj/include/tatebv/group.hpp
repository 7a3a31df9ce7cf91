#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tbv {

struct GroupError : std::runtime_error {
    enum Kind { NotSquare, OutOfRange, NoIdentity, NotAssociative, NoInverse, TooLarge, BadPermutation, BadParam, NotSubgroup };
    Kind kind;
    GroupError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Finite group on indices 0..n-1, 0 is the identity.
struct Group {
    int n = 1;
    std::vector<int> table; // n*n
    std::vector<int> inverse;
    std::vector<std::string> labels;

    int mul(int a, int b) const { return table[(size_t)a * n + b]; }
    int inv(int a) const { return inverse[a]; }
    int mul(int a, int b, int c) const { return mul(mul(a, b), c); }
    int prod(std::span<const int> t) const
    {
        int r = 0;
        for (int g : t) r = mul(r, g);
        return r;
    }
    // g h g^-1
    int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }
    int order() const { return n; }
    int element_order(int g) const;
    std::string label(int g) const { return labels.empty() ? std::to_string(g) : labels[g]; }
    bool is_abelian() const;
};

Group group_from_mult_table(const std::vector<std::vector<int>>& table, std::vector<std::string> labels = {});
Group group_from_permutations(const std::vector<std::vector<int>>& gens, size_t cap = 512);
Group preset_group(const std::string& name, int param);
// "(0 1 2),(0 1)" ; a generator may be a product of cycles "(0 1)(2 3)"
std::vector<std::vector<int>> parse_cycle_generators(const std::string& s);

// members sorted ascending, so members[0] == 0
struct Subgroup {
    const Group* parent = nullptr;
    std::vector<int> members;
    std::vector<int> local; // parent index -> local index, -1 outside
    Group group;            // relabelled copy on 0..|H|-1

    int order() const { return (int)members.size(); }
    bool contains(int g) const { return local[g] >= 0; }
    bool operator==(const Subgroup& o) const { return members == o.members; }
};

Subgroup make_subgroup(const Group& G, std::vector<int> members);
Subgroup whole_group(const Group& G);
Subgroup whole_group(Group&&) = delete;
Subgroup generated_subgroup(const Group& G, const std::vector<int>& gens);
Subgroup conjugate(const Group& G, int g, const Subgroup& H); // g H g^-1
Subgroup intersect(const Group& G, const Subgroup& H, const Subgroup& K);
bool is_subset(const Subgroup& H, const Subgroup& K);
// a Sylow p-subgroup of H, grown greedily by minimal index
Subgroup sylow_subgroup(const Group& G, const Subgroup& H, int p);

struct ConjugacyData {
    std::vector<int> reps;
    std::vector<int> class_of;
    std::vector<std::vector<int>> classes;
    std::vector<Subgroup> centralizers;
    int count() const { return (int)reps.size(); }
};

ConjugacyData conjugacy_classes(const Group& G);
// (class k, minimal y with y g y^-1 = reps[k])
std::pair<int, int> class_rep_and_witness(const Group& G, const ConjugacyData& cd, int g);

// right cosets H*gamma_i of H in K (K = whole group unless given)
struct CosetSystem {
    const Group* parent = nullptr;
    Subgroup sub;
    std::vector<int> ambient;           // elements of K, sorted
    std::vector<int> gamma;             // gamma[0] = identity
    std::vector<std::pair<int, int>> decomp; // parent index -> (h, i) with g = h*gamma_i; (-1,-1) outside K
    // threading step: gamma_i * g = h * gamma_j
    std::vector<int> step_h, step_j; // indexed i*n + g

    int count() const { return (int)gamma.size(); }
    std::pair<int, int> step(int i, int g) const
    {
        size_t k = (size_t)i * parent->n + g;
        return {step_h[k], step_j[k]};
    }
    // thread a tuple from coset i; returns the final coset, fills out (parent indices)
    int thread(int i, std::span<const int> gs, std::vector<int>& out) const
    {
        out.clear();
        for (int g : gs) {
            auto [h, j] = step(i, g);
            out.push_back(h);
            i = j;
        }
        return i;
    }
};

CosetSystem right_coset_system(const Group& G, const Subgroup& H);
CosetSystem right_coset_system(const Group& G, const Subgroup& K, const Subgroup& H);

struct DoubleCosetSystem {
    Subgroup left, right;
    std::vector<int> reps;
    std::vector<int> coset_of;
    std::vector<int> sizes;
};

DoubleCosetSystem double_cosets(const Group& G, const Subgroup& H, const Subgroup& K);

} // namespace tbv
