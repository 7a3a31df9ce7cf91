#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "tatebv/bv.hpp"
#include "tatebv/decomp.hpp"
#include "tatebv/group.hpp"
#include "tatebv/tate.hpp"

namespace tbv {

// Group Tate complexes of subgroups of G, memoized by member list.
// Elements are GElem over the local indices of the named subgroup.
class SubgroupCalculus {
public:
    SubgroupCalculus(const Group& G, Fp F, uint64_t cost_cap = 1000000);
    const Group& group() const { return G_; }
    const Fp& field() const { return F_; }

    const GroupTateComplex& complex(const Subgroup& H) const;
    // D*(kH,kH) on the relabelled copy of H
    const TateComplex& hochschild(const Subgroup& H) const;
    std::vector<uint32_t> coords(const Subgroup& H, const GElem& a) const; // throws on non-cocycles
    GElem lift(const Subgroup& H, int deg, const std::vector<uint32_t>& c) const;
    int dim(const Subgroup& H, int deg) const;

    GElem conjugation(int g, const Subgroup& H, const GElem& a) const; // lands over g H g^-1
    GElem restriction(const Subgroup& K, const Subgroup& H, const GElem& a) const;
    GElem corestriction(const Subgroup& K, const Subgroup& H, const GElem& a) const;
    GElem group_cup(const Subgroup& H, const GElem& a, const GElem& b) const;

    // re-encode a tuple element between two subgroups holding all its entries
    GElem transport(const Subgroup& from, const Subgroup& to, const GElem& a) const;

private:
    struct Entry {
        Subgroup H;
        std::unique_ptr<GroupTateComplex> gc;
        std::unique_ptr<TateComplex> hh;
    };
    Entry& entry(const Subgroup& H) const;

    const Group& G_;
    Fp F_;
    uint64_t cap_;
    mutable std::mutex mu_;
    mutable std::map<std::vector<int>, std::unique_ptr<Entry>> cache_;
};

// gamma_i(a) cup gamma_j(b) as a sum over H_i \ G / H_j; result per target class
std::map<int, GElem> double_coset_cup(const SubgroupCalculus& S, const ClassDecomposition& D, int i, int j,
                                      const GElem& a, const GElem& b);

// Injective invariant of Tate-Hochschild classes: project to each centralizer, restrict to a
// Sylow p-subgroup, read coordinates there. Reaches degrees where the direct complex is too large.
class SylowDetector {
public:
    SylowDetector(const ClassDecomposition& D, const SubgroupCalculus& S);
    std::vector<uint32_t> detect(const TElem& x) const;
    const Subgroup& sylow(int k) const { return P_[k]; }

private:
    const ClassDecomposition& D_;
    const SubgroupCalculus& S_;
    std::vector<Subgroup> P_;
};

} // namespace tbv
