#pragma once

#include <hermeig/backend.hh>
#include <hermeig/matrix.hh>
#include <hermeig/pipeline.hh>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hermeig::bench {

struct Pencil {
    DenseHermitian a;
    DenseHermitian b;
};

/// A: symmetrized complex Gaussian matrix. B = U^H diag(d) U with U Haar
/// unitary and d log-spaced from 1 to cond_b. Deterministic in its arguments.
Pencil generate_pencil(index_t n, std::uint64_t seed, double cond_b);

struct CaseSpec {
    index_t n = 0;
    Method method = Method::OneStage;
    EigenSelection sel;
    int repeats = 1;
    double cond_b = 100.0;
};

struct Plan {
    std::uint64_t seed = 42;
    index_t oracle_max_n = 128;
    double oracle_tolerance = 1e-12;  // relative to ||A'||_2
    SolverConfig solver;
    std::vector<CaseSpec> cases;
};

/// Parses a TOML plan. Throws FormatError with the offending key.
Plan parse_plan(std::istream& in, const std::string& source = "plan");
Plan load_plan(const std::filesystem::path& path);
/// n in {512, 1024, 2048} (plus 8000 when `large`), both methods, sel in {all, 10%}.
Plan default_plan(bool large = false);

/// "all", "fraction:F" or "range:IL:IU".
EigenSelection parse_selection(const std::string& s);
std::string selection_label(const EigenSelection& sel);

struct RunRecord {
    index_t n = 0;
    Method method = Method::OneStage;
    EigenSelection sel;
    std::uint64_t seed = 0;
    int repeat = 0;
    SolverConfig config;
    StepTimings timings;
    std::uint64_t level2_flops = 0;
    std::uint64_t level3_flops = 0;
    double max_residual = 0.0;  // max_i |A x - l B x| / (|A|_F + |l| |B|_F)
    double orth_norm = 0.0;     // |X^H B X - I|_F
    std::optional<double> oracle_error;  // max |l - l_oracle| / |T|_2
    double value_sum = 0.0;
    double value_min = 0.0;
    double value_max = 0.0;
    bool pass = false;
    std::string failure;
};

/// Solves one pencil and evaluates every correctness check.
RunRecord run_case(const CaseSpec& spec, int repeat, const Plan& plan, const std::string& backend_name);

struct SuiteOptions {
    std::string backend = "reference";
    int jobs = 1;  // > 1 runs cases concurrently; only meaningful for correctness runs
};

std::vector<RunRecord> run_suite(const Plan& plan, const SuiteOptions& options);

inline constexpr int csv_schema_version = 1;

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& records);
/// Median over repeats per (n, method, selection).
void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_runs_json(std::ostream& out, const std::vector<RunRecord>& records);
/// Grouped stacked bars of median step times per case.
void write_step_plot(std::ostream& out, const std::vector<RunRecord>& records);

/// Writes runs.csv, summary.csv, runs.json and steps.svg into `dir`.
void write_outputs(const std::filesystem::path& dir, const std::vector<RunRecord>& records);

}  // namespace hermeig::bench
