// wise: serial-independence testing from the command line.
//
//   wise test     --input x.csv [--kind vector] [--similarity neg_l1] [--weight default] ...
//   wise simulate --model setting5 --n 100 --p 200 --seed 7 [--out x.csv]
//   wise bench    --plan plan.json [--out report.csv]
//   wise ingest   --input checkins.csv --start 2012-04-03 --end 2013-02-16 --out days.jsonl
//   wise heatmap  --input x.csv --csv s.csv --pgm s.pgm
//
// Exit status: 0 when the command ran (whatever the test decided), 1 for
// data and I/O errors, 2 for bad flags or specs.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wise/bench.hpp"
#include "wise/engine.hpp"
#include "wise/error.hpp"
#include "wise/heatmap.hpp"
#include "wise/ingest.hpp"
#include "wise/io.hpp"
#include "wise/kernels.hpp"
#include "wise/matrices.hpp"
#include "wise/parallel.hpp"
#include "wise/serialize.hpp"
#include "wise/simgen.hpp"
#include "wise/spec_grammar.hpp"
#include "wise/weights.hpp"

namespace {

// Raised for anything the user typed wrong, as opposed to bad data.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
auto as_usage(F&& f) {
    try {
        return f();
    } catch (const wise::Error& e) {
        throw UsageError(e.what());
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) wise::fail(wise::Errc::Io, "cannot open '" + path + "' for writing");
    return out;
}

void close_out(std::ofstream& out, const std::string& path) {
    out.close();
    if (!out) wise::fail(wise::Errc::Io, "error writing '" + path + "'");
}

wise::ObservationSeries load_series(const std::string& path, const std::string& kind) {
    if (kind == "matrix") return wise::io::load_matrix_jsonl(path);
    auto rows = wise::io::load_vector_csv(path);
    if (kind == "vector") return rows;
    const std::size_t g = rows.dim();
    const auto k = kind == "function" ? wise::ObservationKind::function(g) : wise::ObservationKind::quantile(g);
    std::vector<double> data(rows.data().begin(), rows.data().end());
    return wise::ObservationSeries(k, rows.size(), std::move(data));
}

// --- test -------------------------------------------------------------

struct TestArgs {
    std::string input;
    std::string kind = "vector";
    std::string similarity = "neg_l1";
    std::string weight = "default";
    std::string method = "analytic";
    std::size_t perms = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::string sidedness = "two-sided";
    bool json = false;
};

void print_text(const wise::TestResult& r, std::ostream& out) {
    using wise::detail::format_real;
    out << "Z        " << format_real(r.z) << '\n'
        << "E(Z)     " << format_real(r.e_z) << '\n'
        << "var(Z)   " << format_real(r.var_z) << '\n'
        << "Z_G      " << format_real(r.z_g) << '\n'
        << "p-value  " << format_real(r.p_value) << "  (" << wise::to_string(r.method) << ", "
        << wise::to_string(r.sidedness);
    if (r.method == wise::Method::Permutation) out << ", B=" << r.permutations;
    out << ")\n"
        << "decision " << (r.reject ? "reject" : "do not reject") << " independence at alpha=" << format_real(r.alpha)
        << '\n'
        << "ratios   " << format_real(r.diagnostics.ratio1) << ' ' << format_real(r.diagnostics.ratio2) << ' '
        << format_real(r.diagnostics.ratio3) << "  alignment " << format_real(r.diagnostics.alignment) << '\n';
    for (const auto& w : r.diagnostics.warnings) out << "warning: " << w << '\n';
}

int run_test_cmd(const TestArgs& a) {
    const auto kernel = as_usage([&] { return wise::parse_kernel_spec(a.similarity); });
    const auto weight = as_usage([&] { return wise::parse_weight_spec(a.weight); });
    wise::TestConfig config;
    as_usage([&] {
        config.alpha = a.alpha;
        config.method = wise::parse_method(a.method);
        config.permutations = a.perms;
        config.seed = a.seed;
        config.sidedness = wise::parse_sidedness(a.sidedness);
        wise::validate(config);
        return 0;
    });

    const auto series = load_series(a.input, a.kind);
    const auto result = wise::run_test(series, kernel, weight, config);
    if (a.json) {
        std::cout << wise::to_json(result).dump(2) << '\n';
    } else {
        print_text(result, std::cout);
    }
    return 0;
}

// --- simulate -----------------------------------------------------------

struct SimulateArgs {
    std::string model = "setting1.1";
    std::size_t n = 100;
    std::size_t p = 10;
    std::uint64_t seed = 0;
    std::optional<std::size_t> burn_in;
    std::string out;
};

int run_simulate_cmd(const SimulateArgs& a) {
    auto spec = as_usage([&] {
        auto s = wise::sim::setting(a.model, a.n, a.p, a.seed);
        if (a.burn_in) s.burn_in = *a.burn_in;
        wise::sim::validate(s);
        return s;
    });
    const auto series = wise::sim::generate(spec);
    if (a.out.empty()) {
        wise::io::write_series_csv(std::cout, series);
        return 0;
    }
    auto out = open_out(a.out);
    wise::io::write_series_csv(out, series);
    close_out(out, a.out);
    return 0;
}

// --- bench --------------------------------------------------------------

struct BenchArgs {
    std::string plan;
    std::string out;
    std::string format;
};

wise::bench::ReportFormat format_for(const std::string& explicit_format, const std::string& path) {
    const std::string f = !explicit_format.empty() ? explicit_format
                          : std::filesystem::path(path).extension() == ".json" ? "json"
                                                                              : "csv";
    if (f == "csv") return wise::bench::ReportFormat::Csv;
    if (f == "json") return wise::bench::ReportFormat::Json;
    throw UsageError("unknown report format '" + f + "' (expected csv or json)");
}

int run_bench_cmd(const BenchArgs& a) {
    std::ifstream in(a.plan);
    if (!in) wise::fail(wise::Errc::Io, "cannot open plan '" + a.plan + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("plan '" + a.plan + "' is not valid JSON: " + e.what());
    }
    auto plan = as_usage([&] {
        auto p = wise::plan_from_json(j);
        wise::bench::validate(p);
        return p;
    });
    const std::string out = !a.out.empty() ? a.out : plan.output;
    const auto format = format_for(a.format, out);

    const auto report = wise::bench::run_experiment(plan);
    if (out.empty()) {
        if (format == wise::bench::ReportFormat::Json) {
            std::cout << wise::report_to_json(report).dump(2) << '\n';
        } else {
            std::cout << wise::bench::report_to_csv(report);
        }
    } else {
        wise::bench::export_report(report, format, out);
        std::cerr << "wrote " << report.cells.size() << " cell(s) to " << out << '\n';
    }
    return 0;
}

// --- ingest -------------------------------------------------------------

struct IngestArgs {
    std::string input;
    std::string out;
    std::string start;
    std::string end;
    std::string tz = "+09:00";
    wise::ingest::GridConfig grid;
};

int run_ingest_cmd(const IngestArgs& a) {
    using namespace std::chrono;
    const auto offset = as_usage([&] { return wise::ingest::parse_utc_offset(a.tz); });
    std::optional<sys_days> first, last;
    as_usage([&] {
        if (!a.start.empty()) first = wise::ingest::parse_date(a.start);
        if (!a.end.empty()) last = wise::ingest::parse_date(a.end);
        wise::ingest::validate(a.grid);
        return 0;
    });

    std::ifstream in(a.input);
    if (!in) wise::fail(wise::Errc::Io, "cannot open '" + a.input + "'");
    const auto records = wise::ingest::read_checkins_csv(in, offset);

    // Without explicit dates, span the local days of the in-box records.
    if (!first || !last) {
        std::optional<sys_days> lo, hi;
        for (const auto& r : records) {
            if (!wise::ingest::grid_cell(a.grid, r.latitude, r.longitude)) continue;
            const sys_days d = floor<days>(r.timestamp + offset);
            if (!lo || d < *lo) lo = d;
            if (!hi || d > *hi) hi = d;
        }
        if (!lo) wise::fail(wise::Errc::BadRange, "no in-box records to infer a date range from");
        if (!first) first = lo;
        if (!last) last = hi;
    }

    const auto result = wise::ingest::ingest_checkins(records, a.grid, {*first, *last}, offset);
    if (a.out.empty()) {
        wise::io::write_matrix_jsonl(std::cout, result.series);
    } else {
        auto out = open_out(a.out);
        wise::io::write_matrix_jsonl(out, result.series);
        close_out(out, a.out);
    }
    std::cerr << "days " << result.days.size() << ", binned " << result.binned << ", dropped "
              << result.dropped_out_of_box << " outside the box";
    if (result.dropped_out_of_range) std::cerr << ", " << result.dropped_out_of_range << " outside the dates";
    std::cerr << '\n';
    if (result.dropped_out_of_box) {
        std::cerr << "warning: " << result.dropped_out_of_box << " record(s) outside the bounding box were dropped\n";
    }
    return 0;
}

// --- heatmap ------------------------------------------------------------

struct HeatmapArgs {
    std::string input;
    std::string kind = "vector";
    std::string model;
    std::size_t n = 40;
    std::size_t p = 100;
    std::uint64_t seed = 0;
    std::string similarity = "neg_l1";
    std::string csv;
    std::string pgm;
    std::size_t near = 2;
    std::size_t far = 10;
};

int run_heatmap_cmd(const HeatmapArgs& a) {
    const auto kernel = as_usage([&] { return wise::parse_kernel_spec(a.similarity); });
    if (a.input.empty() == a.model.empty()) throw UsageError("give exactly one of --input and --model");
    if (a.csv.empty() && a.pgm.empty()) throw UsageError("nothing to write: give --csv and/or --pgm");

    std::optional<wise::ObservationSeries> series;
    if (!a.model.empty()) {
        const auto spec = as_usage([&] { return wise::sim::setting(a.model, a.n, a.p, a.seed); });
        series = wise::sim::generate(spec);
    } else {
        series = load_series(a.input, a.kind);
    }
    const auto S = wise::build_similarity_matrix(*series, kernel);

    if (!a.csv.empty()) {
        auto out = open_out(a.csv);
        wise::heatmap::write_matrix_csv(out, S);
        close_out(out, a.csv);
    }
    if (!a.pgm.empty()) {
        auto out = open_out(a.pgm);
        wise::heatmap::write_pgm(out, S);
        close_out(out, a.pgm);
    }
    if (S.size() > a.far + 1) {
        using wise::detail::format_real;
        const auto c = wise::heatmap::lag_contrast(S, a.near, a.far);
        std::cout << "lag<=" << a.near << " mean " << format_real(c.near_mean) << ", lag>" << a.far << " mean "
                  << format_real(c.far_mean) << ", difference " << format_real(c.near_mean - c.far_mean) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted similarity aggregation test for serial independence"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: WISE_THREADS or all cores)");

    TestArgs test;
    auto* t = app.add_subcommand("test", "Test a series for serial independence");
    t->add_option("--input", test.input, "CSV of vectors, or JSON lines of matrices")->required();
    t->add_option("--kind", test.kind, "vector|matrix|function|quantile")
        ->check(CLI::IsMember({"vector", "matrix", "function", "quantile"}));
    t->add_option("--similarity", test.similarity, "Kernel spec, e.g. neg_l2 or gaussian:sigma=2");
    t->add_option("--weight", test.weight, "Lag weight spec, e.g. geometric:rho=0.5");
    t->add_option("--method", test.method, "analytic|perm")->check(CLI::IsMember({"analytic", "perm", "permutation"}));
    t->add_option("--perms", test.perms, "Permutations for --method perm");
    t->add_option("--alpha", test.alpha, "Significance level");
    t->add_option("--seed", test.seed, "Seed for the permutation draws");
    t->add_option("--sidedness", test.sidedness, "two-sided|upper|lower");
    t->add_flag("--json", test.json, "Print the result as JSON");

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Generate a series from a named model");
    s->add_option("--model", sim.model, "setting1.1 ... setting5, var3")->required();
    s->add_option("--n", sim.n, "Observations");
    s->add_option("--p", sim.p, "Dimension");
    s->add_option("--seed", sim.seed, "Seed");
    s->add_option("--burn-in", sim.burn_in, "Discarded initial steps of recursive models");
    s->add_option("--out", sim.out, "Output CSV (default stdout)");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Run a size/power experiment plan");
    b->add_option("--plan", bench.plan, "Plan JSON")->required();
    b->add_option("--out", bench.out, "Report path (overrides the plan's output)");
    b->add_option("--format", bench.format, "csv|json (default: by extension)");

    IngestArgs ing;
    auto* i = app.add_subcommand("ingest", "Grid check-in records into daily count matrices");
    i->add_option("--input", ing.input, "CSV with timestamp,lat,lon")->required();
    i->add_option("--out", ing.out, "Output JSON lines (default stdout)");
    i->add_option("--start", ing.start, "First local day, YYYY-MM-DD");
    i->add_option("--end", ing.end, "Last local day, YYYY-MM-DD");
    i->add_option("--tz", ing.tz, "UTC offset for day boundaries and naive timestamps");
    i->add_option("--lat-min", ing.grid.lat_min);
    i->add_option("--lat-max", ing.grid.lat_max);
    i->add_option("--lon-min", ing.grid.lon_min);
    i->add_option("--lon-max", ing.grid.lon_max);
    i->add_option("--rows", ing.grid.rows);
    i->add_option("--cols", ing.grid.cols);

    HeatmapArgs heat;
    auto* h = app.add_subcommand("heatmap", "Write the similarity matrix as CSV and PGM");
    h->add_option("--input", heat.input, "Series file");
    h->add_option("--kind", heat.kind, "vector|matrix|function|quantile")
        ->check(CLI::IsMember({"vector", "matrix", "function", "quantile"}));
    h->add_option("--model", heat.model, "Simulate instead of reading --input");
    h->add_option("--n", heat.n, "Observations for --model");
    h->add_option("--p", heat.p, "Dimension for --model");
    h->add_option("--seed", heat.seed, "Seed for --model");
    h->add_option("--similarity", heat.similarity, "Kernel spec");
    h->add_option("--csv", heat.csv, "Matrix CSV path");
    h->add_option("--pgm", heat.pgm, "PGM image path");
    h->add_option("--near", heat.near, "Largest lag counted as near");
    h->add_option("--far", heat.far, "Lags beyond this are far");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (threads) wise::set_thread_count(threads);

    try {
        if (*t) return run_test_cmd(test);
        if (*s) return run_simulate_cmd(sim);
        if (*b) return run_bench_cmd(bench);
        if (*i) return run_ingest_cmd(ing);
        if (*h) return run_heatmap_cmd(heat);
    } catch (const UsageError& e) {
        std::cerr << "wise: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "wise: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
