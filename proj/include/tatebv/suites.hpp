#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "tatebv/bv.hpp"
#include "tatebv/decomp.hpp"
#include "tatebv/mackey.hpp"

namespace tbv {

using Rng = std::mt19937_64;

TElem random_elem(const TateComplex& T, int deg, Rng& rng, int terms = 4);
TElem random_class_elem(const TateComplex& T, const ConjugacyData& cd, int k, int deg, Rng& rng, int terms = 4);
GElem random_gelem(const GroupTateComplex& C, int deg, Rng& rng, int terms = 4);
SVec random_vec(const BasisComplex& C, int deg, Rng& rng, int terms = 4);

struct SuiteResult {
    SuiteResult() = default;
    explicit SuiteResult(std::string n) : name(std::move(n)) {}

    std::string name;
    int trials = 0;
    int failures = 0;
    std::string first_failure;
    std::map<std::string, int> cases; // trials per case label, where the suite tracks coverage
    bool ok() const { return failures == 0; }
    void record(bool pass, const std::string& what);
};

// which of the six cup formulas applies to degrees m, n: "i" .. "vi"
std::string cup_case(int m, int n);
// "+-+" style sign pattern of a degree triple, + for cochains
std::string sign_pattern(int a, int b, int c);

// degree window used by the chain-level suites
struct Window {
    int lo = -3, hi = 2;
    bool has(int n) const { return n >= lo && n <= hi; }
};

SuiteResult suite_d2(const BasisComplex& C, Window w, int per_degree, Rng& rng);
SuiteResult suite_leibniz(const TateComplex& T, Window w, int trials, Rng& rng);
SuiteResult suite_homotopy_assoc(const TateComplex& T, Window w, int trials, Rng& rng);
SuiteResult suite_m3_vanishing(const TateComplex& T, Window w, int trials, Rng& rng);
SuiteResult suite_cyclicity(const TateComplex& T, Window w, int k, int trials, Rng& rng);
SuiteResult suite_bv_chain_map(const TateComplex& T, Window w, int trials, Rng& rng);
SuiteResult suite_pairing_adjunction(const TateComplex& T, Window w, int trials, Rng& rng);
// cochain, chain and assembled retract identities; per_class elements per class, side and degree
SuiteResult suite_retract(const ClassDecomposition& D, Window w, int per_class, Rng& rng);
SuiteResult suite_path_equivalence(const ClassDecomposition& D, const SubgroupCalculus& S, Window w, int pairs,
                                   Rng& rng);
SuiteResult suite_poisson(const CohBasis& B, Window w, int max_triples, Rng& rng);

} // namespace tbv
