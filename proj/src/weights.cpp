#include "wise/weights.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "wise/error.hpp"
#include "wise/spec_grammar.hpp"
#include "wise/summation.hpp"

namespace wise {
namespace {

using detail::format_real;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require(bool ok, const std::string& what) {
    if (!ok) fail(Errc::BadWeightParam, what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }
bool in_open_unit(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

void validate(const WeightFamily& family) {
    std::visit(overloaded{
                   [](const DefaultCauchy&) {},
                   [](const Algebraic& a) { require(std::isfinite(a.beta) && a.beta > 1.0, "algebraic beta must exceed 1, got " + format_real(a.beta)); },
                   [](const Geometric& g) { require(in_open_unit(g.rho), "geometric rho must lie in (0, 1), got " + format_real(g.rho)); },
                   [](const ExpDecay& e) { require(finite_positive(e.lambda), "exp_decay lambda must be positive, got " + format_real(e.lambda)); },
                   [](const Cosine& c) { require(finite_positive(c.period), "cosine period must be positive, got " + format_real(c.period)); },
                   [](const AbsCosine& c) { require(finite_positive(c.period), "abs_cosine period must be positive, got " + format_real(c.period)); },
                   [](const Fourier& f) {
                       require(!f.terms.empty(), "fourier needs at least one component");
                       CompensatedSum total;
                       for (const auto& t : f.terms) {
                           require(in_open_unit(t.alpha), "fourier coefficient must lie in (0, 1), got " + format_real(t.alpha));
                           require(finite_positive(t.period), "fourier period must be positive, got " + format_real(t.period));
                           total.add(t.alpha);
                       }
                       require(std::abs(total.value() - 1.0) <= 1e-12,
                               "fourier coefficients must sum to 1, got " + format_real(total.value()));
                   },
                   [](const Mixed& m) {
                       require(in_open_unit(m.alpha), "mixed alpha must lie in (0, 1), got " + format_real(m.alpha));
                       require(finite_positive(m.beta), "mixed beta must be positive, got " + format_real(m.beta));
                       require(finite_positive(m.period), "mixed period must be positive, got " + format_real(m.period));
                   },
               },
               family);
}

double cos_cycle(double lag, double period) {
    return std::cos(2.0 * std::numbers::pi * lag / period);
}

}  // namespace

WeightSpec::WeightSpec(WeightFamily family) : family_(std::move(family)) { validate(family_); }

std::string_view WeightSpec::name() const noexcept {
    return std::visit(overloaded{
                          [](const DefaultCauchy&) { return std::string_view("default"); },
                          [](const Algebraic&) { return std::string_view("algebraic"); },
                          [](const Geometric&) { return std::string_view("geometric"); },
                          [](const ExpDecay&) { return std::string_view("exp_decay"); },
                          [](const Cosine&) { return std::string_view("cosine"); },
                          [](const AbsCosine&) { return std::string_view("abs_cosine"); },
                          [](const Fourier&) { return std::string_view("fourier"); },
                          [](const Mixed&) { return std::string_view("mixed"); },
                      },
                      family_);
}

double weight_evaluate(const WeightSpec& spec, std::size_t lag) {
    if (lag == 0) return 0.0;
    const auto t = static_cast<double>(lag);
    return std::visit(overloaded{
                          [&](const DefaultCauchy&) { return 1.0 / (1.0 + t * t) - 1.0; },
                          [&](const Algebraic& a) { return std::pow(1.0 + t, -a.beta) - 1.0; },
                          [&](const Geometric& g) { return std::pow(g.rho, t) - 1.0; },
                          [&](const ExpDecay& e) {
                              const double r = t / e.lambda;
                              return std::exp(-r * r) - 1.0;
                          },
                          [&](const Cosine& c) { return cos_cycle(t, c.period) - 1.0; },
                          [&](const AbsCosine& c) { return std::abs(std::cos(std::numbers::pi * t / c.period)) - 1.0; },
                          [&](const Fourier& f) {
                              CompensatedSum s;
                              for (const auto& term : f.terms) s.add(term.alpha * cos_cycle(t, term.period));
                              s.add(-1.0);
                              return s.value();
                          },
                          [&](const Mixed& m) {
                              return m.alpha * (std::pow(t, -m.beta) - 1.0) +
                                     (1.0 - m.alpha) * (cos_cycle(t, m.period) - 1.0);
                          },
                      },
                      spec.family());
}

namespace {

class ParamReader {
public:
    ParamReader(std::string family, const std::vector<std::pair<std::string, std::string>>& params)
        : family_(std::move(family)) {
        for (const auto& [k, v] : params) {
            if (!values_.emplace(k, v).second) fail(Errc::ParseError, "duplicate parameter '" + k + "'");
        }
    }

    double real(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end()) fail(Errc::ParseError, family_ + " requires " + key + "=<value>");
        const double x = detail::parse_real(key, it->second);
        values_.erase(it);
        return x;
    }

    bool has(const std::string& key) const { return values_.contains(key); }

    void finish() const {
        if (!values_.empty()) {
            fail(Errc::ParseError, family_ + " has no parameter '" + values_.begin()->first + "'");
        }
    }

private:
    std::string family_;
    std::map<std::string, std::string> values_;
};

}  // namespace

WeightSpec parse_weight_spec(std::string_view text) {
    const auto parsed = detail::split_spec(text);
    const std::string& f = parsed.family;
    ParamReader p(f, parsed.params);
    WeightFamily family;
    if (f == "default" || f == "default_cauchy") {
        family = DefaultCauchy{};
    } else if (f == "algebraic") {
        family = Algebraic{p.real("beta")};
    } else if (f == "geometric") {
        family = Geometric{p.real("rho")};
    } else if (f == "exp_decay") {
        family = ExpDecay{p.real("lambda")};
    } else if (f == "cosine") {
        family = Cosine{p.real("l")};
    } else if (f == "abs_cosine") {
        family = AbsCosine{p.real("l")};
    } else if (f == "fourier") {
        Fourier four;
        for (std::size_t k = 1; p.has("a" + std::to_string(k)); ++k) {
            const double a = p.real("a" + std::to_string(k));
            four.terms.push_back({a, p.real("l" + std::to_string(k))});
        }
        if (four.terms.empty()) fail(Errc::ParseError, "fourier requires a1=<alpha>,l1=<period>,...");
        family = std::move(four);
    } else if (f == "mixed") {
        const double alpha = p.real("alpha");
        const double beta = p.real("beta");
        family = Mixed{alpha, beta, p.real("l")};
    } else {
        fail(Errc::ParseError, "unknown weight family '" + f + "'");
    }
    p.finish();
    return WeightSpec(std::move(family));
}

std::string to_string(const WeightSpec& spec) {
    return std::visit(overloaded{
                          [](const DefaultCauchy&) { return std::string("default"); },
                          [](const Algebraic& a) { return "algebraic:beta=" + format_real(a.beta); },
                          [](const Geometric& g) { return "geometric:rho=" + format_real(g.rho); },
                          [](const ExpDecay& e) { return "exp_decay:lambda=" + format_real(e.lambda); },
                          [](const Cosine& c) { return "cosine:l=" + format_real(c.period); },
                          [](const AbsCosine& c) { return "abs_cosine:l=" + format_real(c.period); },
                          [](const Fourier& f) {
                              std::string out = "fourier:";
                              for (std::size_t k = 0; k < f.terms.size(); ++k) {
                                  const auto idx = std::to_string(k + 1);
                                  if (k > 0) out += ',';
                                  out += "a" + idx + "=" + format_real(f.terms[k].alpha) + ",l" + idx + "=" +
                                         format_real(f.terms[k].period);
                              }
                              return out;
                          },
                          [](const Mixed& m) {
                              return "mixed:alpha=" + format_real(m.alpha) + ",beta=" + format_real(m.beta) +
                                     ",l=" + format_real(m.period);
                          },
                      },
                      spec.family());
}

}  // namespace wise
