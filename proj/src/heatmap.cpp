#include "wise/heatmap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "wise/error.hpp"
#include "wise/spec_grammar.hpp"
#include "wise/summation.hpp"

namespace wise::heatmap {

void write_matrix_csv(std::ostream& out, const SimilarityMatrix& S) {
    const std::size_t n = S.size();
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        line.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j) line += ',';
            line += detail::format_real(S(i, j));
        }
        line += '\n';
        out << line;
    }
}

void write_pgm(std::ostream& out, const SimilarityMatrix& S) {
    const std::size_t n = S.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            lo = std::min(lo, S(i, j));
            hi = std::max(hi, S(i, j));
        }
    }
    if (n < 2) lo = hi = n == 1 ? S(0, 0) : 0.0;
    const double span = hi - lo;

    out << "P2\n" << n << ' ' << n << "\n255\n";
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        line.clear();
        for (std::size_t j = 0; j < n; ++j) {
            const double v = std::clamp(S(i, j), lo, hi);
            const long px = span > 0.0 ? std::lround((v - lo) / span * 255.0) : 0;
            const std::string cell = std::to_string(px);
            // P2 readers expect lines of at most 70 characters.
            if (!line.empty() && line.size() + 1 + cell.size() > 70) {
                out << line << '\n';
                line.clear();
            }
            if (!line.empty()) line += ' ';
            line += cell;
        }
        out << line << '\n';
    }
}

std::vector<double> lag_profile(const SimilarityMatrix& S) {
    const std::size_t n = S.size();
    std::vector<double> profile(n, 0.0);
    for (std::size_t h = 0; h < n; ++h) {
        CompensatedSum sum;
        for (std::size_t i = 0; i + h < n; ++i) sum += S(i, i + h);
        profile[h] = sum.value() / static_cast<double>(n - h);
    }
    return profile;
}

LagContrast lag_contrast(const SimilarityMatrix& S, std::size_t near_max, std::size_t far_min, bool absolute) {
    const std::size_t n = S.size();
    CompensatedSum near_sum, near_sq, far_sum, far_sq;
    LagContrast out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = absolute ? std::abs(S(i, j)) : S(i, j);
            const std::size_t lag = j - i;
            if (lag <= near_max) {
                near_sum += v;
                near_sq += v * v;
                ++out.near_count;
            } else if (lag > far_min) {
                far_sum += v;
                far_sq += v * v;
                ++out.far_count;
            }
        }
    }
    if (out.near_count == 0 || out.far_count == 0) {
        fail(Errc::InvalidValue, "lag contrast needs entries at lag <= " + std::to_string(near_max) + " and lag > " +
                                     std::to_string(far_min) + " (n = " + std::to_string(n) + ")");
    }
    const auto nn = static_cast<double>(out.near_count);
    const auto nf = static_cast<double>(out.far_count);
    out.near_mean = near_sum.value() / nn;
    out.far_mean = far_sum.value() / nf;
    const double var_near = out.near_count > 1 ? std::max(0.0, (near_sq.value() - nn * out.near_mean * out.near_mean) / (nn - 1)) : 0.0;
    const double var_far = out.far_count > 1 ? std::max(0.0, (far_sq.value() - nf * out.far_mean * out.far_mean) / (nf - 1)) : 0.0;
    out.naive_se = std::sqrt(var_near / nn + var_far / nf);
    return out;
}

}  // namespace wise::heatmap
