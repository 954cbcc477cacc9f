#include "wise/simgen.hpp"

#include <cmath>
#include <deque>

#include "wise/error.hpp"
#include "wise/random.hpp"
#include "wise/spec_grammar.hpp"

namespace wise::sim {
namespace {

using detail::format_real;

void require(bool ok, const std::string& what) {
    if (!ok) fail(Errc::BadModelParam, what);
}

/// p x p matrix nonzero only within `band` of the diagonal.
class BandMatrix {
public:
    BandMatrix(std::size_t p, std::size_t band) : p_(p), band_(std::min(band, p == 0 ? 0 : p - 1)) {
        values_.assign(p_ * width(), 0.0);
    }

    static BandMatrix from_recipe(const CoefRecipe& recipe, std::size_t p, Rng& rng) {
        if (recipe.kind == CoefRecipe::Kind::Scalar) {
            BandMatrix m(p, 0);
            for (std::size_t i = 0; i < p; ++i) m.at(i, i) = recipe.scalar;
            return m;
        }
        const auto band = static_cast<std::size_t>(std::floor(static_cast<double>(p) / recipe.band_divisor));
        BandMatrix m(p, band);
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = m.first(i); j <= m.last(i); ++j) m.at(i, j) = rng.uniform(recipe.lo, recipe.hi);
        }
        return m;
    }

    // out += M x
    void multiply_add(const std::vector<double>& x, std::vector<double>& out, double sign = 1.0) const {
        for (std::size_t i = 0; i < p_; ++i) {
            double s = 0.0;
            for (std::size_t j = first(i); j <= last(i); ++j) s += at(i, j) * x[j];
            out[i] += sign * s;
        }
    }

    [[nodiscard]] std::vector<double> multiply(const std::vector<double>& x) const {
        std::vector<double> out(p_, 0.0);
        multiply_add(x, out);
        return out;
    }

private:
    [[nodiscard]] std::size_t width() const { return 2 * band_ + 1; }
    [[nodiscard]] std::size_t first(std::size_t i) const { return i >= band_ ? i - band_ : 0; }
    [[nodiscard]] std::size_t last(std::size_t i) const { return std::min(p_ - 1, i + band_); }
    double& at(std::size_t i, std::size_t j) { return values_[i * width() + (j + band_ - i)]; }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values_[i * width() + (j + band_ - i)]; }

    std::size_t p_;
    std::size_t band_;
    std::vector<double> values_;
};

std::vector<double> normal_vector(std::size_t p, Rng& rng) {
    std::vector<double> e(p);
    for (auto& v : e) v = rng.normal();
    return e;
}

void validate_recipe(const CoefRecipe& r, const char* name) {
    if (r.kind == CoefRecipe::Kind::Scalar) {
        require(std::isfinite(r.scalar), std::string(name) + " scalar must be finite");
    } else {
        require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi,
                std::string(name) + " range must satisfy lo <= hi, got [" + format_real(r.lo) + ", " +
                    format_real(r.hi) + "]");
        require(std::isfinite(r.band_divisor) && r.band_divisor > 0.0,
                std::string(name) + " band divisor must be positive");
    }
}

// Rolling window of the most recent states, newest at the back.
class History {
public:
    History(std::size_t depth, std::size_t p) : states_(depth, std::vector<double>(p, 0.0)) {}
    /// lag >= 1; lag 1 is the previous state.
    [[nodiscard]] const std::vector<double>& lag(std::size_t k) const { return states_[states_.size() - k]; }
    void push(std::vector<double> x) {
        states_.pop_front();
        states_.push_back(std::move(x));
    }

private:
    std::deque<std::vector<double>> states_;
};

}  // namespace

std::string_view to_string(ModelFamily family) noexcept {
    switch (family) {
        case ModelFamily::IidNormal: return "iid_normal";
        case ModelFamily::IidNormalArCov: return "iid_normal_ar_cov";
        case ModelFamily::IidT1: return "iid_t1";
        case ModelFamily::IidLogNormal: return "iid_lognormal";
        case ModelFamily::Var1: return "var1";
        case ModelFamily::VarLags: return "var_lags";
        case ModelFamily::Svar: return "svar";
        case ModelFamily::Garch: return "garch";
        case ModelFamily::Nma2: return "nma2";
    }
    return "unknown";
}

ModelFamily parse_model_family(std::string_view name) {
    for (auto f : {ModelFamily::IidNormal, ModelFamily::IidNormalArCov, ModelFamily::IidT1, ModelFamily::IidLogNormal,
                   ModelFamily::Var1, ModelFamily::VarLags, ModelFamily::Svar, ModelFamily::Garch, ModelFamily::Nma2}) {
        if (to_string(f) == name) return f;
    }
    fail(Errc::BadModelParam, "unknown model family '" + std::string(name) + "'");
}

void validate(const ModelSpec& s) {
    require(s.n >= 1, "n must be positive");
    require(s.p >= 1, "p must be positive");
    switch (s.family) {
        case ModelFamily::IidNormalArCov:
            require(std::isfinite(s.cross_rho) && std::abs(s.cross_rho) < 1.0,
                    "cross-sectional correlation must lie in (-1, 1), got " + format_real(s.cross_rho));
            break;
        case ModelFamily::Var1: validate_recipe(s.a, "A"); break;
        case ModelFamily::VarLags:
            require(!s.lag_coefs.empty(), "var_lags needs at least one coefficient");
            for (double c : s.lag_coefs) require(std::isfinite(c), "var_lags coefficients must be finite");
            break;
        case ModelFamily::Svar:
            validate_recipe(s.a, "A");
            validate_recipe(s.b, "B");
            require(s.season >= 1, "seasonal lag must be at least 1");
            break;
        case ModelFamily::Garch:
            require(std::isfinite(s.garch_intercept) && s.garch_intercept > 0.0, "GARCH intercept b must be positive");
            for (const Range* r : {&s.garch_a, &s.garch_b}) {
                require(std::isfinite(r->lo) && std::isfinite(r->hi) && 0.0 <= r->lo && r->lo <= r->hi,
                        "GARCH coefficient range must satisfy 0 <= lo <= hi, got [" + format_real(r->lo) + ", " +
                            format_real(r->hi) + "]");
            }
            // E h_t^2 stays finite only when A_ii + B_ii < 1.
            require(s.garch_a.hi + s.garch_b.hi < 1.0,
                    "GARCH needs A_ii + B_ii < 1, got upper limits summing to " +
                        format_real(s.garch_a.hi + s.garch_b.hi));
            break;
        default: break;
    }
}

ModelSpec setting(std::string_view id, std::size_t n, std::size_t p, std::uint64_t seed) {
    if (id.starts_with("setting")) id.remove_prefix(7);
    ModelSpec s;
    s.n = n;
    s.p = p;
    s.seed = seed;
    if (id == "1.1") {
        s.family = ModelFamily::IidNormal;
    } else if (id == "1.2") {
        s.family = ModelFamily::IidNormalArCov;
        s.cross_rho = 0.6;
    } else if (id == "1.3") {
        s.family = ModelFamily::IidT1;
    } else if (id == "1.4") {
        s.family = ModelFamily::IidLogNormal;
    } else if (id == "2.1") {
        s.family = ModelFamily::Var1;
        s.a = CoefRecipe::identity_times(0.015);
    } else if (id == "2.2") {
        s.family = ModelFamily::Var1;
        s.a = CoefRecipe::banded(-0.01, 0.04, 50.0);
    } else if (id == "2.3") {
        s.family = ModelFamily::Var1;
        s.a = CoefRecipe::banded(-0.04, 0.015, 20.0);
    } else if (id == "3.1" || id == "3.2") {
        s.family = ModelFamily::Svar;
        s.season = id == "3.1" ? 4 : 12;
        s.a = CoefRecipe::banded(-0.01, 0.03, 50.0);
        s.b = CoefRecipe::banded(-0.01, 0.04, 50.0);
    } else if (id == "4") {
        s.family = ModelFamily::Garch;
    } else if (id == "5") {
        s.family = ModelFamily::Nma2;
    } else if (id == "var3") {
        s.family = ModelFamily::VarLags;
        s.lag_coefs = {0.4, 0.3, 0.2};
    } else {
        fail(Errc::BadModelParam, "unknown setting '" + std::string(id) + "'");
    }
    return s;
}

std::vector<std::string> setting_names() {
    return {"setting1.1", "setting1.2", "setting1.3", "setting1.4", "setting2.1", "setting2.2", "setting2.3",
            "setting3.1", "setting3.2", "setting4",   "setting5",   "var3"};
}

ObservationSeries generate(const ModelSpec& s) {
    validate(s);
    Rng rng(s.seed);
    const std::size_t n = s.n;
    const std::size_t p = s.p;
    std::vector<double> out;
    out.reserve(n * p);
    auto emit = [&](const std::vector<double>& x) { out.insert(out.end(), x.begin(), x.end()); };

    switch (s.family) {
        case ModelFamily::IidNormal:
            for (std::size_t t = 0; t < n; ++t) emit(normal_vector(p, rng));
            break;
        case ModelFamily::IidNormalArCov: {
            const double innov = std::sqrt(1.0 - s.cross_rho * s.cross_rho);
            for (std::size_t t = 0; t < n; ++t) {
                auto x = normal_vector(p, rng);
                for (std::size_t k = 1; k < p; ++k) x[k] = s.cross_rho * x[k - 1] + innov * x[k];
                emit(x);
            }
            break;
        }
        case ModelFamily::IidT1:
            for (std::size_t t = 0; t < n; ++t) {
                auto x = normal_vector(p, rng);
                double chi = 0.0;
                while (chi == 0.0) chi = std::abs(rng.normal());
                for (auto& v : x) v /= chi;
                emit(x);
            }
            break;
        case ModelFamily::IidLogNormal:
            for (std::size_t t = 0; t < n; ++t) {
                auto x = normal_vector(p, rng);
                for (auto& v : x) v = std::exp(v);
                emit(x);
            }
            break;
        case ModelFamily::Var1: {
            const auto A = BandMatrix::from_recipe(s.a, p, rng);
            std::vector<double> x(p, 0.0);
            for (std::size_t t = 0; t < s.burn_in + n; ++t) {
                auto next = normal_vector(p, rng);
                A.multiply_add(x, next);
                x = std::move(next);
                if (t >= s.burn_in) emit(x);
            }
            break;
        }
        case ModelFamily::VarLags: {
            History hist(s.lag_coefs.size(), p);
            for (std::size_t t = 0; t < s.burn_in + n; ++t) {
                auto next = normal_vector(p, rng);
                for (std::size_t k = 0; k < s.lag_coefs.size(); ++k) {
                    const auto& prev = hist.lag(k + 1);
                    for (std::size_t i = 0; i < p; ++i) next[i] += s.lag_coefs[k] * prev[i];
                }
                if (t >= s.burn_in) emit(next);
                hist.push(std::move(next));
            }
            break;
        }
        case ModelFamily::Svar: {
            const auto A = BandMatrix::from_recipe(s.a, p, rng);
            const auto B = BandMatrix::from_recipe(s.b, p, rng);
            const std::size_t l = s.season;
            History hist(l + 1, p);
            for (std::size_t t = 0; t < s.burn_in + n; ++t) {
                auto next = normal_vector(p, rng);
                A.multiply_add(hist.lag(l), next);
                B.multiply_add(hist.lag(1), next);
                A.multiply_add(B.multiply(hist.lag(l + 1)), next, -1.0);
                if (t >= s.burn_in) emit(next);
                hist.push(std::move(next));
            }
            break;
        }
        case ModelFamily::Garch: {
            std::vector<double> a(p);
            std::vector<double> b(p);
            for (auto& v : a) v = rng.uniform(s.garch_a.lo, s.garch_a.hi);
            for (auto& v : b) v = rng.uniform(s.garch_b.lo, s.garch_b.hi);
            std::vector<double> h2(p, s.garch_intercept);
            std::vector<double> x(p, 0.0);
            for (std::size_t t = 0; t < s.burn_in + n; ++t) {
                const auto e = normal_vector(p, rng);
                for (std::size_t i = 0; i < p; ++i) {
                    h2[i] = s.garch_intercept + a[i] * x[i] * x[i] + b[i] * h2[i];
                    x[i] = std::sqrt(h2[i]) * e[i];
                }
                if (t >= s.burn_in) emit(x);
            }
            break;
        }
        case ModelFamily::Nma2: {
            History hist(2, p);
            for (std::size_t t = 0; t < n + 2; ++t) {
                auto e = normal_vector(p, rng);
                if (t >= 2) {
                    std::vector<double> x(p);
                    for (std::size_t i = 0; i < p; ++i) x[i] = e[i] * hist.lag(1)[i] * hist.lag(2)[i];
                    emit(x);
                }
                hist.push(std::move(e));
            }
            break;
        }
    }
    return {ObservationKind::vector(p), n, std::move(out)};
}

}  // namespace wise::sim
