#pragma once

#include <vector>

#include "tatebv/tate.hpp"

namespace tbv {

uint32_t pairing(const TateComplex& T, const TElem& a, const TElem& b);
TElem cup(const TateComplex& T, const TElem& a, const TElem& b);
TElem cup_serial(const TateComplex& T, const TElem& a, const TElem& b);
TElem m3(const TateComplex& T, const TElem& a, const TElem& b, const TElem& c);

// Delta on positive degrees, 0 in degree 0, (-1)^{s+1} B on C_s
TElem bv_operator(const TateComplex& T, const TElem& a);
// untwisted cyclic operator on chains
TElem connes_b(const TateComplex& T, const TElem& a);

TElem lin(const Fp& F, std::initializer_list<std::pair<long long, const TElem*>> terms);

struct CohClass {
    int deg = 0;
    std::vector<uint32_t> coords;
    bool zero() const
    {
        for (auto c : coords)
            if (c) return false;
        return true;
    }
    bool operator==(const CohClass& o) const { return deg == o.deg && coords == o.coords; }
};

// a chosen basis of the cohomology of D*(kG,kG) in each degree
class CohBasis {
public:
    virtual ~CohBasis() = default;
    virtual const TateComplex& complex() const = 0;
    virtual int dim(int n) const = 0;
    virtual TElem rep(int n, int j) const = 0;
    // throws if x is not a cocycle
    virtual CohClass project(const TElem& x) const = 0;

    TElem lift(const CohClass& c) const;
    CohClass basis_class(int n, int j) const;
};

class DirectBasis : public CohBasis {
public:
    explicit DirectBasis(const TateComplex& T) : T_(T) {}
    const TateComplex& complex() const override { return T_; }
    int dim(int n) const override { return T_.cohomology(n)->dim(); }
    TElem rep(int n, int j) const override { return {n, T_.cohomology(n)->reps()[j]}; }
    CohClass project(const TElem& x) const override;

private:
    const TateComplex& T_;
};

CohClass induced_cup(const CohBasis& B, const CohClass& a, const CohClass& b);
CohClass induced_delta(const CohBasis& B, const CohClass& a);
CohClass lie_bracket(const CohBasis& B, const CohClass& a, const CohClass& b);
// chain level combination whose class is the bracket of the classes of a and b
TElem bracket_chain(const TateComplex& T, const TElem& a, const TElem& b);

} // namespace tbv
