#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tatebv/field.hpp"
#include "tatebv/group.hpp"
#include "tatebv/linalg.hpp"
#include "tatebv/sparse.hpp"

namespace tbv {

struct CostCapError : std::runtime_error {
    uint64_t estimate;
    CostCapError(const std::string& m, uint64_t est) : std::runtime_error(m), estimate(est) {}
};

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tuples over {1..n-1}, base n-1, first entry most significant.
struct TupleCodec {
    int n = 1;
    std::vector<uint64_t> pw;

    TupleCodec() = default;
    explicit TupleCodec(int order, int maxlen = 40);
    uint64_t radix() const { return (uint64_t)(n - 1); }
    uint64_t count(int len) const;
    uint64_t encode(std::span<const int> t) const
    {
        uint64_t c = 0;
        for (int g : t) c = c * radix() + (uint64_t)(g - 1);
        return c;
    }
    void decode(uint64_t code, int len, std::vector<int>& out) const
    {
        out.resize(len);
        for (int k = len - 1; k >= 0; --k) {
            out[k] = (int)(code % radix()) + 1;
            code /= radix();
        }
    }
};

inline bool has_identity(std::span<const int> t)
{
    for (int g : t)
        if (g == 0) return true;
    return false;
}

// degree m >= 0: cochain basis (args, target) ; m < 0: chain basis (head, tail), tail length -m-1
struct TElem {
    int deg = 0;
    SVec v;
    bool zero() const { return v.empty(); }
};

inline int arity(int m) { return m >= 0 ? m : -m - 1; }

class CohomologySpace {
public:
    int degree = 0;
    QuotientSpace q;
    int dim() const { return q.dim(); }
    const std::vector<SVec>& reps() const { return q.reps(); }
    std::optional<std::vector<uint32_t>> coords(const SVec& v) const { return q.project(v); }
};

// Common plumbing for a cochain complex given by basis operators.
class BasisComplex {
public:
    virtual ~BasisComplex() = default;
    virtual const Fp& field() const = 0;
    virtual uint64_t dim(int m) const = 0;
    // terms of the official differential out of degree m applied to basis idx, scaled by c
    virtual void diff_basis(int m, uint64_t idx, uint32_t c, SVec& out) const = 0;

    SVec diff(int m, const SVec& v) const;
    SparseMatrix matrix(int m) const;
    SparseMatrix matrix_serial(int m) const;
    std::shared_ptr<const CohomologySpace> cohomology(int n) const;
    CohomologySpace compute_cohomology(int n) const;

    uint64_t cost_cap = 200000;

private:
    mutable std::mutex mu_;
    mutable std::map<int, std::shared_ptr<const CohomologySpace>> cache_;
};

// D*(kG,kG)
class TateComplex : public BasisComplex {
public:
    TateComplex(const Group& G, Fp F);
    TateComplex(Group&&, Fp) = delete; // keeps a pointer to the group
    const Group& group() const { return *G_; }
    const Fp& field() const override { return F_; }
    const TupleCodec& codec() const { return codec_; }
    uint64_t dim(int m) const override;

    uint64_t index(std::span<const int> tuple, int g) const { return codec_.encode(tuple) * G_->n + g; }
    void split(uint64_t idx, int len, std::vector<int>& tuple, int& g) const
    {
        g = (int)(idx % G_->n);
        codec_.decode(idx / G_->n, len, tuple);
    }

    void coboundary_basis(int m, uint64_t idx, uint32_t c, SVec& out) const;
    void boundary_basis(int s, uint64_t idx, uint32_t c, SVec& out) const; // unsigned d_s on C_s
    void trace_basis(uint64_t idx, uint32_t c, SVec& out) const;
    void diff_basis(int m, uint64_t idx, uint32_t c, SVec& out) const override;

    TElem coboundary(const TElem& x) const;
    TElem boundary(const TElem& x) const; // unsigned, degree <= -2
    TElem trace(const TElem& x) const;    // degree -1
    TElem dprime(const TElem& x) const;
    // the other sign twist, (-1)^m times the unsigned maps in negative degrees
    TElem dprime_alt(const TElem& x) const;

    int class_of_index(const ConjugacyData& cd, int m, uint64_t idx) const;

private:
    const Group* G_;
    Fp F_;
    TupleCodec codec_;
};

uint64_t dim_degree(const Group& G, int m);

// Tate complex of H with trivial coefficients, tuples in local indices of H
struct GElem {
    int deg = 0;
    SVec v;
    bool zero() const { return v.empty(); }
};

class GroupTateComplex : public BasisComplex {
public:
    GroupTateComplex(const Subgroup& H, Fp F);
    const Subgroup& subgroup() const { return H_; }
    const Group& local() const { return H_.group; }
    const Fp& field() const override { return F_; }
    const TupleCodec& codec() const { return codec_; }
    uint64_t dim(int m) const override { return codec_.count(arity(m)); }
    void diff_basis(int m, uint64_t idx, uint32_t c, SVec& out) const override;
    GElem dprime(const GElem& x) const;
    void unsigned_boundary_basis(int s, uint64_t idx, uint32_t c, SVec& out) const;

    // local <-> parent tuples
    uint64_t encode_parent(std::span<const int> t) const;
    void decode_parent(uint64_t code, int len, std::vector<int>& out) const;

private:
    Subgroup H_;
    Fp F_;
    TupleCodec codec_;
};

} // namespace tbv
