#pragma once

#include <memory>
#include <vector>

#include "tatebv/bv.hpp"
#include "tatebv/group.hpp"
#include "tatebv/tate.hpp"

namespace tbv {

// Comparison maps between the class-x summand of D*(kG,kG) and the Tate complex of C_G(x).
class ClassRetract {
public:
    ClassRetract(const TateComplex& T, const ConjugacyData& cd, int k);

    int cls() const { return k_; }
    int rep() const { return x_; }
    const Subgroup& centralizer() const { return cs_.sub; }
    const CosetSystem& cosets() const { return cs_; }
    const std::vector<int>& xi() const { return xi_; }
    const GroupTateComplex& gcomplex() const { return *gc_; }
    std::shared_ptr<const GroupTateComplex> gcomplex_ptr() const { return gc_; }
    void set_cost_cap(uint64_t cap) { gc_->cost_cap = cap; }
    const TateComplex& complex() const { return T_; }

    // cochain side, degree n >= 0
    GElem iota_cochain(const TElem& phi) const; // coefficient of x in phi(h) h^-1
    TElem rho_cochain(const GElem& psi) const;  // threaded sum
    TElem homotopy_cochain(const TElem& phi) const;

    // chain side, unsigned boundaries
    TElem iota_chain(const GElem& c) const;
    GElem rho_chain(const TElem& a) const;
    TElem homotopy_chain(const TElem& a) const;

    // assembled with the signed differential on both sides
    TElem embed(const GElem& y) const;  // group -> D
    GElem project(const TElem& x) const; // D -> group
    TElem s_hat(const TElem& x) const;

    GElem delta_tilde(const GElem& psi) const;
    GElem b_tilde(const GElem& c) const;

    // coset index i with x_i == g, or -1
    int xi_index(int g) const { return xi_index_[g]; }

private:
    const TateComplex& T_;
    int k_, x_;
    CosetSystem cs_;
    std::vector<int> xi_;
    std::vector<int> xi_index_;
    std::shared_ptr<GroupTateComplex> gc_;
};

class ClassDecomposition {
public:
    ClassDecomposition(const TateComplex& T, uint64_t group_cost_cap = 1000000);
    const ConjugacyData& conj() const { return cd_; }
    int count() const { return (int)parts_.size(); }
    const ClassRetract& part(int k) const { return *parts_[k]; }
    const TateComplex& complex() const { return T_; }

    TElem embed(int k, const GElem& y) const { return parts_[k]->embed(y); }
    TElem s_hat(const TElem& x) const;         // sum over classes
    TElem iota_rho(const TElem& x) const;      // sum_k embed_k project_k
    std::vector<int> class_dims(int n) const;  // per class Tate cohomology dims

private:
    const TateComplex& T_;
    ConjugacyData cd_;
    std::vector<std::unique_ptr<ClassRetract>> parts_;
};

// cohomology basis built from the centralizer summands
class DecomposedBasis : public CohBasis {
public:
    explicit DecomposedBasis(const ClassDecomposition& D) : D_(D) {}
    const TateComplex& complex() const override { return D_.complex(); }
    int dim(int n) const override;
    TElem rep(int n, int j) const override;
    CohClass project(const TElem& x) const override;
    // (class, local index) of a global basis index
    std::pair<int, int> locate(int n, int j) const;
    int offset(int n, int k) const;

private:
    const ClassDecomposition& D_;
};

// D*(kG,kG) transported to the Tate complex of G with coefficients in kG under conjugation
class ConjugationComplex : public BasisComplex {
public:
    ConjugationComplex(const Group& G, Fp F) : G_(&G), F_(F), T_(G, F) {}
    const Fp& field() const override { return F_; }
    uint64_t dim(int m) const override { return T_.dim(m); }
    void diff_basis(int m, uint64_t idx, uint32_t c, SVec& out) const override;

private:
    const Group* G_;
    Fp F_;
    TateComplex T_;
};

TElem global_iso_rho(const TateComplex& T, const TElem& x);
TElem global_iso_rho_inv(const TateComplex& T, const TElem& x);

} // namespace tbv
