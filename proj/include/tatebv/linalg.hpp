#pragma once

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "tatebv/sparse.hpp"

namespace tbv {

struct LinalgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rows keyed by their leading (smallest) index, leading coefficient 1.
// Each row may carry a label vector that is transformed alongside it.
class Echelon {
public:
    explicit Echelon(Fp F) : F_(F) {}

    // head reduction; remainder is zero or has a non-pivot leading index
    SVec reduce(SVec v, SVec* labels = nullptr) const;
    // v must be a nonzero remainder from reduce
    void insert(SVec v, SVec label = {});
    size_t size() const { return rows_.size(); }
    bool has_pivot(uint64_t i) const { return pivot_.count(i) != 0; }
    const Fp& field() const { return F_; }

private:
    Fp F_;
    std::unordered_map<uint64_t, size_t> pivot_;
    std::vector<SVec> rows_;
    std::vector<SVec> labels_;
};

// below this many columns elimination runs on a dense array
constexpr uint64_t kDenseColumns = 512;

uint64_t rank(const SparseMatrix& M, const Fp& F);
uint64_t rank_dense(const SparseMatrix& M, const Fp& F);
uint64_t rank_sparse(const SparseMatrix& M, const Fp& F);

// canonical basis: one vector per free column f, e_f minus pivot-column combination
std::vector<SVec> kernel_basis(const SparseMatrix& M, const Fp& F);
std::vector<SVec> kernel_basis_dense(const SparseMatrix& M, const Fp& F);
std::vector<SVec> kernel_basis_sparse(const SparseMatrix& M, const Fp& F);

// free variables zero; nullopt when inconsistent
std::optional<SVec> solve(const SparseMatrix& M, const SVec& b, const Fp& F);

class QuotientSpace {
public:
    QuotientSpace() : E_(Fp(2)) {}
    // kernel / image, image must lie in span(kernel)
    static QuotientSpace build(const std::vector<SVec>& kernel, const std::vector<SVec>& image, const Fp& F,
                               bool validate = true);

    int dim() const { return (int)reps_.size(); }
    uint64_t kernel_dim() const { return kernel_dim_; }
    uint64_t image_dim() const { return image_dim_; }
    const std::vector<SVec>& reps() const { return reps_; }
    // nullopt when v is not in span(kernel)
    std::optional<std::vector<uint32_t>> project(const SVec& v) const;
    SVec lift(const std::vector<uint32_t>& c) const;
    bool in_image(const SVec& v) const;

private:
    friend class QuotientBuilder;
    Echelon E_;
    std::vector<SVec> reps_;
    uint64_t kernel_dim_ = 0, image_dim_ = 0;
};

// streaming construction used by the cohomology computation
class QuotientBuilder {
public:
    explicit QuotientBuilder(const Fp& F);
    void add_image(const SVec& v);
    void add_kernel(const SVec& v);
    QuotientSpace finish();

private:
    QuotientSpace q_;
    Fp F_;
};

} // namespace tbv
