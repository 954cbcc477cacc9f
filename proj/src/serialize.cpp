#include "wise/serialize.hpp"

#include <variant>

#include "wise/error.hpp"

namespace wise {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

json diagnostics_to_json(const DiagnosticsReport& d) {
    return {{"ratio1", d.ratio1},
            {"ratio2", d.ratio2},
            {"ratio3", d.ratio3},
            {"alignment", d.alignment},
            {"warnings", d.warnings}};
}

template <class T>
T value_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

json recipe_to_json(const sim::CoefRecipe& r) {
    if (r.kind == sim::CoefRecipe::Kind::Scalar) return {{"kind", "scalar"}, {"scalar", r.scalar}};
    return {{"kind", "banded"}, {"lo", r.lo}, {"hi", r.hi}, {"band_divisor", r.band_divisor}};
}

sim::CoefRecipe recipe_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "scalar") return sim::CoefRecipe::identity_times(j.at("scalar").get<double>());
    if (kind == "banded") {
        return sim::CoefRecipe::banded(j.at("lo").get<double>(), j.at("hi").get<double>(),
                                       value_or(j, "band_divisor", 50.0));
    }
    fail(Errc::BadModelParam, "unknown coefficient recipe '" + kind + "'");
}

json config_to_json(const TestConfig& c) {
    return {{"alpha", c.alpha},
            {"method", std::string(to_string(c.method))},
            {"permutations", c.permutations},
            {"seed", c.seed},
            {"sidedness", std::string(to_string(c.sidedness))}};
}

TestConfig config_from_json(const json& j) {
    TestConfig c;
    c.alpha = value_or(j, "alpha", c.alpha);
    if (j.contains("method")) c.method = parse_method(j.at("method").get<std::string>());
    c.permutations = value_or(j, "permutations", c.permutations);
    c.seed = value_or(j, "seed", c.seed);
    if (j.contains("sidedness")) c.sidedness = parse_sidedness(j.at("sidedness").get<std::string>());
    return c;
}

json cell_to_json(const bench::CellResult& c) {
    return {{"setting", c.setting},   {"n", c.n},         {"p", c.p},         {"replications", c.replications},
            {"rejections", c.rejections}, {"errors", c.errors}, {"alpha", c.alpha}, {"rate", c.rate},
            {"mc_se", c.mc_se},       {"seconds", c.seconds}, {"seed", c.seed}};
}

bench::CellResult cell_from_json(const json& j) {
    bench::CellResult c;
    c.setting = j.at("setting").get<std::string>();
    c.n = j.at("n").get<std::size_t>();
    c.p = j.at("p").get<std::size_t>();
    c.replications = j.at("replications").get<std::size_t>();
    c.rejections = j.at("rejections").get<std::size_t>();
    c.errors = j.at("errors").get<std::size_t>();
    c.alpha = j.at("alpha").get<double>();
    c.rate = j.at("rate").get<double>();
    c.mc_se = j.at("mc_se").get<double>();
    c.seconds = j.at("seconds").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

}  // namespace

json to_json(const TestResult& r) {
    json j = {{"z", r.z},
              {"e_z", r.e_z},
              {"var_z", r.var_z},
              {"z_g", r.z_g},
              {"p_value", r.p_value},
              {"reject", r.reject},
              {"alpha", r.alpha},
              {"method", std::string(to_string(r.method))},
              {"sidedness", std::string(to_string(r.sidedness))},
              {"diagnostics", diagnostics_to_json(r.diagnostics)}};
    if (r.method == Method::Permutation) j["permutations"] = r.permutations;
    return j;
}

json to_json(const MahalanobisResult& r) {
    return {{"statistic", r.statistic}, {"p_value", r.p_value},       {"z", r.z},
            {"mean", r.mean},           {"covariance", r.covariance}, {"permutations", r.permutations}};
}

json weight_to_json(const WeightSpec& spec) {
    json j = std::visit(overloaded{
                            [](const DefaultCauchy&) { return json::object(); },
                            [](const Algebraic& a) { return json{{"beta", a.beta}}; },
                            [](const Geometric& g) { return json{{"rho", g.rho}}; },
                            [](const ExpDecay& e) { return json{{"lambda", e.lambda}}; },
                            [](const Cosine& c) { return json{{"l", c.period}}; },
                            [](const AbsCosine& c) { return json{{"l", c.period}}; },
                            [](const Fourier& f) {
                                json terms = json::array();
                                for (const auto& t : f.terms) terms.push_back({{"alpha", t.alpha}, {"l", t.period}});
                                return json{{"components", terms}};
                            },
                            [](const Mixed& m) { return json{{"alpha", m.alpha}, {"beta", m.beta}, {"l", m.period}}; },
                        },
                        spec.family());
    j["family"] = std::string(spec.name());
    return j;
}

WeightSpec weight_from_json(const json& j) {
    if (j.is_string()) return parse_weight_spec(j.get<std::string>());
    try {
        const auto family = j.at("family").get<std::string>();
        if (family == "default" || family == "default_cauchy") return WeightSpec{};
        if (family == "algebraic") return WeightSpec(Algebraic{j.at("beta").get<double>()});
        if (family == "geometric") return WeightSpec(Geometric{j.at("rho").get<double>()});
        if (family == "exp_decay") return WeightSpec(ExpDecay{j.at("lambda").get<double>()});
        if (family == "cosine") return WeightSpec(Cosine{j.at("l").get<double>()});
        if (family == "abs_cosine") return WeightSpec(AbsCosine{j.at("l").get<double>()});
        if (family == "fourier") {
            Fourier f;
            for (const auto& t : j.at("components")) f.terms.push_back({t.at("alpha").get<double>(), t.at("l").get<double>()});
            return WeightSpec(std::move(f));
        }
        if (family == "mixed") {
            return WeightSpec(Mixed{j.at("alpha").get<double>(), j.at("beta").get<double>(), j.at("l").get<double>()});
        }
        fail(Errc::ParseError, "unknown weight family '" + family + "'");
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("malformed weight spec: ") + e.what());
    }
}

json model_to_json(const sim::ModelSpec& s) {
    return {{"family", std::string(sim::to_string(s.family))},
            {"n", s.n},
            {"p", s.p},
            {"seed", s.seed},
            {"burn_in", s.burn_in},
            {"cross_rho", s.cross_rho},
            {"a", recipe_to_json(s.a)},
            {"b", recipe_to_json(s.b)},
            {"lag_coefs", s.lag_coefs},
            {"season", s.season},
            {"garch_intercept", s.garch_intercept},
            {"garch_a", {s.garch_a.lo, s.garch_a.hi}},
            {"garch_b", {s.garch_b.lo, s.garch_b.hi}}};
}

sim::ModelSpec model_from_json(const json& j) {
    try {
        sim::ModelSpec s;
        if (j.contains("setting")) {
            s = sim::setting(j.at("setting").get<std::string>(), value_or<std::size_t>(j, "n", 100),
                             value_or<std::size_t>(j, "p", 10), value_or<std::uint64_t>(j, "seed", 0));
        }
        if (j.contains("family")) s.family = sim::parse_model_family(j.at("family").get<std::string>());
        s.n = value_or(j, "n", s.n);
        s.p = value_or(j, "p", s.p);
        s.seed = value_or(j, "seed", s.seed);
        s.burn_in = value_or(j, "burn_in", s.burn_in);
        s.cross_rho = value_or(j, "cross_rho", s.cross_rho);
        if (j.contains("a")) s.a = recipe_from_json(j.at("a"));
        if (j.contains("b")) s.b = recipe_from_json(j.at("b"));
        s.lag_coefs = value_or(j, "lag_coefs", s.lag_coefs);
        s.season = value_or(j, "season", s.season);
        s.garch_intercept = value_or(j, "garch_intercept", s.garch_intercept);
        if (j.contains("garch_a")) s.garch_a = {j.at("garch_a").at(0).get<double>(), j.at("garch_a").at(1).get<double>()};
        if (j.contains("garch_b")) s.garch_b = {j.at("garch_b").at(0).get<double>(), j.at("garch_b").at(1).get<double>()};
        sim::validate(s);
        return s;
    } catch (const json::exception& e) {
        fail(Errc::BadModelParam, std::string("malformed model spec: ") + e.what());
    }
}

json plan_to_json(const bench::ExperimentPlan& p) {
    return {{"setting", p.setting},
            {"model", model_to_json(p.model)},
            {"n", p.ns},
            {"p", p.ps},
            {"replications", p.replications},
            {"alpha", p.alpha},
            {"similarity", to_string(p.kernel)},
            {"weight", weight_to_json(p.weight)},
            {"test", config_to_json(p.test)},
            {"master_seed", p.master_seed},
            {"output", p.output}};
}

bench::ExperimentPlan plan_from_json(const json& j) {
    try {
        bench::ExperimentPlan p;
        p.setting = value_or<std::string>(j, "setting", p.setting);
        p.ns = j.at("n").get<std::vector<std::size_t>>();
        p.ps = j.at("p").get<std::vector<std::size_t>>();
        if (j.contains("model")) {
            p.model = model_from_json(j.at("model"));
        } else {
            p.model = sim::setting(p.setting, p.ns.empty() ? 1 : p.ns.front(), p.ps.empty() ? 1 : p.ps.front(), 0);
        }
        p.replications = value_or(j, "replications", p.replications);
        p.alpha = value_or(j, "alpha", p.alpha);
        if (j.contains("similarity")) p.kernel = parse_kernel_spec(j.at("similarity").get<std::string>());
        if (j.contains("weight")) p.weight = weight_from_json(j.at("weight"));
        if (j.contains("test")) p.test = config_from_json(j.at("test"));
        p.master_seed = value_or(j, "master_seed", p.master_seed);
        p.output = value_or<std::string>(j, "output", p.output);
        return p;
    } catch (const json::exception& e) {
        fail(Errc::BadPlan, std::string("malformed plan: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == Errc::BadPlan) throw;
        fail(Errc::BadPlan, e.what());
    }
}

json report_to_json(const bench::ExperimentReport& r) {
    json cells = json::array();
    for (const auto& c : r.cells) cells.push_back(cell_to_json(c));
    return {{"plan", plan_to_json(r.plan)}, {"cells", cells}};
}

bench::ExperimentReport report_from_json(const json& j) {
    bench::ExperimentReport r;
    r.plan = plan_from_json(j.at("plan"));
    for (const auto& c : j.at("cells")) r.cells.push_back(cell_from_json(c));
    return r;
}

}  // namespace wise
