#pragma once

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tatebv/decomp.hpp"
#include "tatebv/mackey.hpp"
#include "tatebv/suites.hpp"

namespace tbv {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kSchemaVersion = 1;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv, Text };

struct JobConfig {
    std::string group = "preset:symmetric:3";
    uint32_t p = 3;
    int lo = -4, hi = 3;
    uint64_t seed = 1;
    Format format = Format::Json;
    int threads = 0; // 0 keeps the runtime default
    uint64_t direct_cap = 200000;
    uint64_t decomp_cap = 1000000;
};

// preset:NAME:PARAM, NAME:PARAM, short names (S3, D4, C2, V4, Q8), perms:CYCLES, file:PATH
Group parse_group_spec(const std::string& spec);
std::pair<int, int> parse_window(const std::string& s);
Format parse_format(const std::string& s);
json config_json(const JobConfig& c);
std::string config_hash(const JobConfig& c);

class Job {
public:
    explicit Job(const JobConfig& cfg);
    Job(const Job&) = delete;
    Job& operator=(const Job&) = delete;

    const JobConfig& config() const { return cfg_; }
    const Group& group() const { return G_; }
    const Fp& field() const { return F_; }
    const TateComplex& complex() const { return *T_; }
    const ClassDecomposition& decomposition() const { return *D_; }
    const DecomposedBasis& basis() const { return *B_; }
    const SubgroupCalculus& subgroups() const { return *S_; }

    // both neighbours of degree n fit under the direct cap
    bool direct_affordable(int n) const;
    // largest centralizer complex needed for degrees lo-1..hi+1
    uint64_t decomposition_estimate() const;
    void require_decomposition() const; // throws CostCapError

private:
    JobConfig cfg_;
    Group G_;
    Fp F_;
    std::unique_ptr<TateComplex> T_;
    std::unique_ptr<ClassDecomposition> D_;
    std::unique_ptr<DecomposedBasis> B_;
    std::unique_ptr<SubgroupCalculus> S_;
};

// Output of every command. "tables" holds arrays of flat rows.
struct Bundle {
    std::string command;
    json config, dims = json::array(), classes = json::array(), tables = json::object(), provenance;
    bool ok = true;
};

json to_json(const Bundle& b);
std::string render_text(const Bundle& b);
// one csv document per table, keyed by table name
std::map<std::string, std::string> render_csv(const Bundle& b);

Bundle cmd_info(const Job& job);
Bundle cmd_dims(const Job& job);
Bundle cmd_tables(const Job& job);
Bundle cmd_verify_appendix_b(const Job& job);
Bundle cmd_selftest(const Job& job, bool inject_fault = false);
Bundle cmd_export_diff(const Job& job);

// Generators of the S3 example and the checks run on them.
struct S3Verification {
    struct Check {
        std::string group, name;
        bool ok;
        std::string detail;
    };
    std::vector<Check> checks;
    using Scales = std::array<uint32_t, 6>; // x, z, z^-1, W1, W2, W2^-1
    std::vector<Scales> presentation_solutions, bv_solutions;
    Scales best{};
    std::vector<std::string> best_failures; // identities violated under the best scaling
    bool scale_invariant_ok() const;
    bool presentation_ok() const;
    bool bv_ok() const { return !bv_solutions.empty(); }
};

S3Verification verify_s3(const Job& job);
Bundle cmd_verify_s3(const Job& job);

// structure constants over the decomposed basis, one row per entry
struct TableSet {
    json basis = json::array(), cup = json::array(), delta = json::array(), bracket = json::array();
    int checked = 0, mismatches = 0;
};
TableSet compute_tables(const Job& job);

// suites from cmd_selftest in the order they ran
std::vector<SuiteResult> run_selftest(const Job& job, bool inject_fault);

} // namespace tbv
