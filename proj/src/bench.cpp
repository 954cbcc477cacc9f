#include "wise/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wise/error.hpp"
#include "wise/parallel.hpp"
#include "wise/random.hpp"
#include "wise/serialize.hpp"
#include "wise/spec_grammar.hpp"

namespace wise::bench {

ExperimentPlan make_plan(const std::string& setting, std::vector<std::size_t> ns, std::vector<std::size_t> ps,
                         std::size_t replications, std::uint64_t master_seed) {
    ExperimentPlan plan;
    plan.setting = setting;
    plan.model = sim::setting(setting, ns.empty() ? 1 : ns.front(), ps.empty() ? 1 : ps.front(), 0);
    plan.ns = std::move(ns);
    plan.ps = std::move(ps);
    plan.replications = replications;
    plan.master_seed = master_seed;
    return plan;
}

void validate(const ExperimentPlan& plan) {
    if (plan.ns.empty() || plan.ps.empty()) fail(Errc::BadPlan, "experiment grid is empty");
    if (plan.replications < 100) {
        fail(Errc::BadPlan, "reported rates need at least 100 replications, got " + std::to_string(plan.replications));
    }
    for (std::size_t n : plan.ns) {
        if (n < kMinObservations) fail(Errc::BadPlan, "grid contains n = " + std::to_string(n) + " < 4");
    }
    for (std::size_t p : plan.ps) {
        if (p == 0) fail(Errc::BadPlan, "grid contains p = 0");
    }
    TestConfig config = plan.test;
    config.alpha = plan.alpha;
    try {
        validate(config);
        sim::ModelSpec probe = plan.model;
        probe.n = plan.ns.front();
        probe.p = plan.ps.front();
        sim::validate(probe);
        check_kernel(plan.kernel, ObservationKind::vector(probe.p));
    } catch (const Error& e) {
        fail(Errc::BadPlan, e.what());
    }
}

std::uint64_t replication_seed(std::uint64_t master, const std::string& setting, std::size_t n, std::size_t p,
                               std::size_t replicate) {
    return derive_seed(master, {hash_string(setting), n, p, replicate});
}

ExperimentReport run_experiment(const ExperimentPlan& plan) {
    validate(plan);
    ExperimentReport report;
    report.plan = plan;

    for (std::size_t n : plan.ns) {
        for (std::size_t p : plan.ps) {
            const auto start = std::chrono::steady_clock::now();
            const std::size_t R = plan.replications;
            std::vector<char> rejected(R, 0);
            std::vector<std::string> errors(R);

            parallel_for(R, [&](std::size_t rep) {
                const std::uint64_t seed = replication_seed(plan.master_seed, plan.setting, n, p, rep);
                sim::ModelSpec model = plan.model;
                model.n = n;
                model.p = p;
                model.seed = seed;
                TestConfig config = plan.test;
                config.alpha = plan.alpha;
                config.seed = derive_seed(seed, {1});
                try {
                    const auto series = sim::generate(model);
                    rejected[rep] = run_test(series, plan.kernel, plan.weight, config).reject ? 1 : 0;
                } catch (const Error& e) {
                    errors[rep] = e.what();
                }
            });

            CellResult cell;
            cell.setting = plan.setting;
            cell.n = n;
            cell.p = p;
            cell.alpha = plan.alpha;
            cell.seed = plan.master_seed;
            std::string first_error;
            for (std::size_t rep = 0; rep < R; ++rep) {
                if (!errors[rep].empty()) {
                    if (cell.errors++ == 0) first_error = "replication " + std::to_string(rep) + ": " + errors[rep];
                } else {
                    cell.rejections += rejected[rep] ? 1 : 0;
                }
            }
            if (cell.errors * 100 > R) {
                fail(Errc::BadPlan, "cell n=" + std::to_string(n) + ", p=" + std::to_string(p) + " failed in " +
                                        std::to_string(cell.errors) + " of " + std::to_string(R) +
                                        " replications; first failure: " + first_error);
            }
            cell.replications = R - cell.errors;
            cell.rate = cell.replications == 0 ? 0.0
                                               : static_cast<double>(cell.rejections) /
                                                     static_cast<double>(cell.replications);
            cell.mc_se = cell.replications == 0
                             ? 0.0
                             : std::sqrt(cell.rate * (1.0 - cell.rate) / static_cast<double>(cell.replications));
            cell.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "setting,n,p,replications,alpha,rate,mc_se,seconds,seed\n";
    for (const auto& c : report.cells) {
        char seconds[32];
        std::snprintf(seconds, sizeof seconds, "%.3f", c.seconds);
        out << c.setting << ',' << c.n << ',' << c.p << ',' << c.replications << ','
            << detail::format_real(c.alpha) << ',' << detail::format_real(c.rate) << ','
            << detail::format_real(c.mc_se) << ',' << seconds << ',' << c.seed << '\n';
    }
    return out.str();
}

void export_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) fail(Errc::Io, "cannot open '" + path.string() + "' for writing");
    if (format == ReportFormat::Csv) {
        file << report_to_csv(report);
    } else {
        file << report_to_json(report).dump(2) << '\n';
    }
    file.flush();
    if (!file) fail(Errc::Io, "failed writing '" + path.string() + "'");
}

}  // namespace wise::bench
