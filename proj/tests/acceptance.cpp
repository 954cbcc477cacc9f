// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "wise/bench.hpp"
#include "wise/engine.hpp"
#include "wise/ingest.hpp"
#include "wise/moments.hpp"
#include "wise/parallel.hpp"
#include "wise/random.hpp"
#include "wise/simgen.hpp"

using namespace wise;

namespace {

constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
    bool pass = false;
    std::string detail;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double binomial_se(double rate, std::size_t r) { return std::sqrt(rate * (1 - rate) / static_cast<double>(r)); }

bench::CellResult run_cell(const std::string& label, const sim::ModelSpec& model, std::size_t n, std::size_t p,
                           std::size_t reps) {
    auto plan = bench::make_plan("setting1.1", {n}, {p}, reps, kSeed);
    plan.setting = label;
    plan.model = model;
    return bench::run_experiment(plan).cells.at(0);
}

bench::CellResult run_setting(const std::string& setting, std::size_t n, std::size_t p, std::size_t reps) {
    return run_cell(setting, sim::setting(setting, n, p, 0), n, p, reps);
}

Outcome moment_oracle() {
    std::mt19937_64 gen(kSeed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::vector<WeightSpec> weights{WeightSpec{}, Geometric{0.5}, Cosine{3.0}};
    double worst_lib = 0.0, worst_ref = 0.0;
    std::size_t cases = 0;
    for (std::size_t n = 4; n <= 7; ++n) {
        for (int rep = 0; rep < 200; ++rep) {
            SquareMatrix raw(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) raw(i, j) = u(gen);
            const auto S = SimilarityMatrix::symmetrized(raw);
            for (const auto& w : weights) {
                const auto W = build_weight_matrix(n, w);
                const auto analytic = permutation_moments(moment_summary(S, W), n);
                const auto lib = enumerate_moments(S, W);
                const auto ref = oracle::enumerate(oracle::dense(W.values()), oracle::dense(S.values()));
                worst_lib = std::max({worst_lib, oracle::relative_error(analytic.mean, lib.mean),
                                      oracle::relative_error(analytic.variance, lib.variance)});
                worst_ref = std::max({worst_ref, oracle::relative_error(analytic.mean, ref.mean),
                                      oracle::relative_error(analytic.variance, ref.variance)});
                ++cases;
            }
        }
    }
    return {worst_lib <= 1e-10 && worst_ref <= 1e-10,
            fmt("%zu cases; max rel err %.2e vs enumerate_moments, %.2e vs independent enumeration (tol 1e-10)", cases,
                worst_lib, worst_ref)};
}

Outcome anchor() {
    SquareMatrix m(4);
    m(0, 1) = m(1, 0) = 1.0;
    const auto S = SimilarityMatrix::from_symmetric(m);
    const auto nm = permutation_moments(moment_summary(S, build_weight_matrix(4, {})), 4);
    const bool ok = nm.mean == -4.0 / 3.0 && std::abs(nm.variance - 0.1155556) <= 1e-6;
    return {ok, fmt("E(Z) = %.17g (want -4/3), var(Z) = %.10f (want 0.1155556 +- 1e-6)", nm.mean, nm.variance)};
}

Outcome null_size() {
    const auto a = run_setting("setting1.1", 50, 200, 350);
    const auto b = run_setting("setting1.3", 50, 200, 350);
    const bool ok = std::abs(a.rate - 0.05) <= 0.03 && std::abs(b.rate - 0.05) <= 0.03;
    return {ok, fmt("n=50 p=200 R=350: setting1.1 size %.4f, setting1.3 size %.4f (want 0.050 +- 0.03)", a.rate,
                    b.rate)};
}

Outcome null_normality() {
    const std::size_t R = 2000, n = 100, p = 50;
    std::vector<double> zg(R), pv(R);
    parallel_for(R, [&](std::size_t r) {
        const auto seed = bench::replication_seed(kSeed, "normality", n, p, r);
        const auto res = run_test(sim::generate(sim::setting("setting1.1", n, p, seed)), KernelSpec::neg_l1(), {}, {});
        zg[r] = res.z_g;
        pv[r] = res.p_value;
    });
    const double mean = std::accumulate(zg.begin(), zg.end(), 0.0) / R;
    double var = 0;
    for (double z : zg) var += (z - mean) * (z - mean);
    var /= R - 1;
    bool ok = std::abs(mean) <= 0.07 && var >= 0.90 && var <= 1.10;
    std::string sizes;
    for (double alpha : {0.01, 0.05, 0.10}) {
        const double rate = std::count_if(pv.begin(), pv.end(), [&](double q) { return q < alpha; }) / double(R);
        const double tol = 2 * binomial_se(alpha, R);
        ok &= std::abs(rate - alpha) <= tol;
        sizes += fmt(", size@%.2f %.4f (+-%.4f)", alpha, rate, tol);
    }
    return {ok, fmt("R=%zu: mean Z_G %.4f (+-0.07), var Z_G %.4f ([0.90, 1.10])", R, mean, var) + sizes};
}

Outcome power_uncorrelated() {
    const std::size_t n = 100, p = 200, R = 200;
    const auto null = run_setting("setting1.1", n, p, R);
    const auto nma = run_setting("setting5", n, p, R);
    const auto garch = run_setting("setting4", n, p, R);
    const auto good = [&](const bench::CellResult& c) { return c.rate >= 0.3 && c.rate >= null.rate + 0.2; };
    return {good(nma) && good(garch),
            fmt("n=100 p=200 R=200: null %.3f, setting5 %.3f, setting4 %.3f (want >= 0.3 and >= null + 0.2)", null.rate,
                nma.rate, garch.rate)};
}

Outcome power_correlated() {
    const std::size_t n = 100, p = 200, R = 200;
    const auto null = run_setting("setting1.1", n, p, R);
    const auto banded = run_setting("setting2.2", n, p, R);
    bool ok = banded.rate >= null.rate + 0.2;
    std::string curve;
    double prev_rate = -1, prev_se = 0;
    for (double c : {0.0, 0.015, 0.2}) {
        auto model = sim::setting("setting2.1", n, p, 0);
        model.a = sim::CoefRecipe::identity_times(c);
        const auto cell = run_cell(fmt("setting2.1:c=%g", c), model, n, p, R);
        if (prev_rate >= 0) ok &= cell.rate >= prev_rate - 2 * std::hypot(cell.mc_se, prev_se);
        prev_rate = cell.rate;
        prev_se = cell.mc_se;
        curve += fmt(" c=%g:%.3f", c, cell.rate);
    }
    return {ok, fmt("n=100 p=200 R=200: null %.3f, setting2.2 %.3f (want >= null + 0.2); A=cI monotone:", null.rate,
                    banded.rate) +
                    curve};
}

Outcome analytic_vs_permutation() {
    const std::size_t n = 100, p = 50, datasets = 20;
    double worst = 0;
    for (std::size_t d = 0; d < datasets; ++d) {
        const auto series =
            sim::generate(sim::setting("setting1.1", n, p, bench::replication_seed(kSeed, "agreement", n, p, d)));
        TestConfig c;
        const auto an = run_test(series, KernelSpec::neg_l1(), {}, c);
        c.method = Method::Permutation;
        c.permutations = 10000;
        c.seed = d;
        const auto pe = run_test(series, KernelSpec::neg_l1(), {}, c);
        worst = std::max(worst, std::abs(an.p_value - pe.p_value));
    }
    return {worst <= 0.02, fmt("%zu datasets n=100 p=50 B=10000: max |p_analytic - p_perm| = %.4f (want <= 0.02)",
                               datasets, worst)};
}

Outcome relabelling_bounds() {
    std::mt19937_64 gen(kSeed + 8);
    const std::vector<WeightSpec> weights{WeightSpec{}, Geometric{0.5}, Cosine{3.0}, Mixed{0.5, 1.0, 2.0}};
    std::size_t violations = 0, checked = 0;
    for (int inst = 0; inst < 1000; ++inst) {
        const std::size_t n = 4 + inst % 3;
        const auto S = oracle::similarity(oracle::random_symmetric(n, gen));
        const auto W = build_weight_matrix(n, weights[inst % weights.size()]);
        const auto b = rearrangement_bounds(S, W);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            const double z = compute_z_permuted(S, W, perm);
            violations += z < b.lower - 1e-12 || z > b.upper + 1e-12;
            ++checked;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return {violations == 0, fmt("1000 instances, %zu relabellings checked, %zu outside [lower, upper]", checked,
                                 violations)};
}

Outcome degenerate_models() {
    const std::size_t n = 50, p = 50, R = 1000;
    const auto iid = run_setting("setting1.1", n, p, R);
    auto garch = sim::setting("setting4", n, p, 0);
    garch.garch_a = {0.0, 0.0};
    garch.garch_b = {0.0, 0.0};
    auto var1 = sim::setting("setting2.1", n, p, 0);
    var1.a = sim::CoefRecipe::identity_times(0.0);
    const auto g = run_cell("garch:A=B=0", garch, n, p, R);
    const auto v = run_cell("var1:A=0", var1, n, p, R);
    const double tol_g = 2 * std::hypot(g.mc_se, iid.mc_se);
    const double tol_v = 2 * std::hypot(v.mc_se, iid.mc_se);
    const bool ok = std::abs(g.rate - iid.rate) <= tol_g && std::abs(v.rate - iid.rate) <= tol_v;
    return {ok, fmt("n=50 p=50 R=1000: iid %.3f, garch(A=B=0) %.3f (+-%.3f), var1(A=0) %.3f (+-%.3f)", iid.rate,
                    g.rate, tol_g, v.rate, tol_v)};
}

Outcome ingestion() {
    using namespace std::chrono;
    const ingest::GridConfig grid;
    const auto first = ingest::parse_date("2012-04-03");
    const auto last = ingest::parse_date("2012-06-30");
    const auto path = std::filesystem::temp_directory_path() / "wise_acceptance_checkins.csv";
    std::mt19937_64 gen(kSeed + 10);
    std::uniform_real_distribution<double> lat(35.5, 35.9), lon(139.0, 140.0), out_lat(36.0, 37.0);
    std::uniform_int_distribution<long> second(0, (last - first).count() * 86400L + 86399L);
    {
        std::ofstream csv(path);
        csv << "timestamp,lat,lon\n";
        csv.precision(17);
        auto stamp = [&] {
            // Local wall-clock time at +09:00, written as UTC.
            const sys_seconds local{first.time_since_epoch() + seconds(second(gen))};
            const sys_seconds utc = local - hours(9);
            const auto day = floor<days>(utc);
            const year_month_day ymd{day};
            const hh_mm_ss hms{utc - day};
            return fmt("%04d-%02u-%02uT%02ld:%02ld:%02ldZ", int(ymd.year()), unsigned(ymd.month()),
                       unsigned(ymd.day()), long(hms.hours().count()), long(hms.minutes().count()),
                       long(hms.seconds().count()));
        };
        for (int i = 0; i < 1000; ++i) csv << stamp() << ',' << lat(gen) << ',' << lon(gen) << '\n';
        for (int i = 0; i < 37; ++i) csv << stamp() << ',' << out_lat(gen) << ',' << lon(gen) << '\n';
    }
    std::ifstream in(path);
    const auto records = ingest::read_checkins_csv(in, hours(9));
    const auto r = ingest::ingest_checkins(records, grid, {first, last}, hours(9));
    std::filesystem::remove(path);
    double mass = 0;
    for (double v : r.series.data()) mass += v;

    const std::vector<ingest::CheckinRecord> single{{ingest::parse_timestamp("2012-04-03T12:00:00", hours(9)), 35.7,
                                                      139.5}};
    const auto one = ingest::ingest_checkins(single, grid, {first, first}, hours(9));
    bool single_ok = one.series.size() == 1;
    for (std::size_t k = 0; k < 400 && single_ok; ++k) single_ok = one.series[0][k] == (k == 10 * 20 + 10 ? 1.0 : 0.0);

    const bool ok = mass == 1000.0 && r.dropped_out_of_box == 37 && r.dropped_out_of_range == 0 && single_ok;
    return {ok, fmt("%zu days, total count %.0f (want 1000), dropped %zu (want 37), (35.7, 139.5) -> cell (10, 10): %s",
                    r.days.size(), mass, r.dropped_out_of_box, single_ok ? "yes" : "no")};
}

std::string strip_seconds(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() > 7) cells.erase(cells.begin() + 7);
        for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
        out += '\n';
    }
    return out;
}

Outcome determinism() {
    const std::size_t max_threads = std::max<std::size_t>(4, std::thread::hardware_concurrency());
    auto analytic = bench::make_plan("setting2.2", {40, 60}, {30, 80}, 100, kSeed);
    auto perm = bench::make_plan("setting4", {40}, {30}, 100, kSeed);
    perm.test.method = Method::Permutation;
    perm.test.permutations = 200;
    bool ok = true;
    for (const auto* plan : {&analytic, &perm}) {
        set_thread_count(1);
        const auto a = strip_seconds(bench::report_to_csv(bench::run_experiment(*plan)));
        const auto b = strip_seconds(bench::report_to_csv(bench::run_experiment(*plan)));
        set_thread_count(max_threads);
        const auto c = strip_seconds(bench::report_to_csv(bench::run_experiment(*plan)));
        const auto d = strip_seconds(bench::report_to_csv(bench::run_experiment(*plan)));
        ok &= a == b && a == c && a == d;
    }
    set_thread_count(0);
    return {ok, fmt("analytic and permutation plans, two runs each at 1 and %zu threads: CSV payloads %s",
                    max_threads, ok ? "identical" : "differ")};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"moment-oracle equivalence", moment_oracle},
        {"hand-verified anchor", anchor},
        {"null size", null_size},
        {"null normality of Z_G", null_normality},
        {"power, uncorrelated dependence", power_uncorrelated},
        {"power, correlated dependence", power_correlated},
        {"analytic vs permutation", analytic_vs_permutation},
        {"rearrangement bounds", relabelling_bounds},
        {"degenerate-model equivalence", degenerate_models},
        {"ingestion", ingestion},
        {"determinism", determinism},
    };
    int failures = 0;
    int id = 0;
    for (const auto& c : criteria) {
        ++id;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", id - failures, id);
    return failures == 0 ? 0 : 1;
}
