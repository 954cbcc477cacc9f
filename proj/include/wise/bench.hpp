#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wise/engine.hpp"
#include "wise/kernels.hpp"
#include "wise/simgen.hpp"
#include "wise/weights.hpp"

namespace wise::bench {

/// A grid of (n, p) cells, each run for `replications` simulated datasets.
/// The model's n, p and seed are overwritten per cell and replication.
struct ExperimentPlan {
    std::string setting = "setting1.1";  // label; also keys the seed streams
    sim::ModelSpec model = sim::setting("setting1.1", 100, 10, 0);
    std::vector<std::size_t> ns;
    std::vector<std::size_t> ps;
    std::size_t replications = 350;
    double alpha = 0.05;
    KernelSpec kernel = KernelSpec::neg_l1();
    WeightSpec weight;
    TestConfig test;  // method, permutation count, sidedness; alpha is taken from the plan
    std::uint64_t master_seed = 0;
    std::string output;  // optional report path

    friend bool operator==(const ExperimentPlan&, const ExperimentPlan&) = default;
};

/// Plan for a named setting with the default test.
ExperimentPlan make_plan(const std::string& setting, std::vector<std::size_t> ns, std::vector<std::size_t> ps,
                         std::size_t replications, std::uint64_t master_seed);

/// Throws BadPlan for an empty grid, fewer than 100 replications, or an
/// invalid model or test configuration.
void validate(const ExperimentPlan& plan);

struct CellResult {
    std::string setting;
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t replications = 0;  // completed replications
    std::size_t rejections = 0;
    std::size_t errors = 0;
    double alpha = 0.05;
    double rate = 0.0;
    double mc_se = 0.0;  // sqrt(rate (1 - rate) / replications)
    double seconds = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const CellResult&, const CellResult&) = default;
};

struct ExperimentReport {
    ExperimentPlan plan;
    std::vector<CellResult> cells;

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Seed of one replication: hash(master, setting, n, p, replicate).
std::uint64_t replication_seed(std::uint64_t master, const std::string& setting, std::size_t n, std::size_t p,
                               std::size_t replicate);

/// Runs every cell; replications run in parallel and the counts do not
/// depend on the thread count. A cell where more than 1% of replications
/// fail aborts the run.
ExperimentReport run_experiment(const ExperimentPlan& plan);

enum class ReportFormat { Csv, Json };

/// Header: setting,n,p,replications,alpha,rate,mc_se,seconds,seed
std::string report_to_csv(const ExperimentReport& report);

/// Writes the report; throws Io with the path on failure.
void export_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path);

}  // namespace wise::bench
