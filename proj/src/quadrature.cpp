#include "graphene_ndr/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace graphene_ndr {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// 7-point rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double lo, hi, value, error;
};

Interval gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(centre);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

constexpr int kEvalsPerRule = 15;

}  // namespace

QuadratureResult integrate_panels(const std::function<double(double)>& f, std::span<const double> edges,
                                  const QuadratureSpec& spec) {
    QuadratureResult result;
    std::vector<Interval> intervals;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i + 1] > edges[i])) continue;
        intervals.push_back(gauss_kronrod(f, edges[i], edges[i + 1]));
        result.evaluations += kEvalsPerRule;
    }

    auto totals = [&] {
        double value = 0.0, error = 0.0;
        for (const auto& iv : intervals) {
            value += iv.value;
            error += iv.error;
        }
        return std::pair{value, error};
    };

    auto [value, error] = totals();
    while (error > std::max(spec.rel_tol * std::abs(value), spec.abs_tol)) {
        if (result.subdivisions >= spec.max_subdivisions) {
            result.converged = false;
            break;
        }
        auto worst = std::max_element(intervals.begin(), intervals.end(),
                                      [](const Interval& x, const Interval& y) { return x.error < y.error; });
        const double mid = 0.5 * (worst->lo + worst->hi);
        if (!(mid > worst->lo && mid < worst->hi)) {
            // Interval exhausted at machine resolution; keep its estimate.
            result.converged = false;
            worst->error = 0.0;
        } else {
            const Interval left = gauss_kronrod(f, worst->lo, mid);
            const Interval right = gauss_kronrod(f, mid, worst->hi);
            *worst = left;
            intervals.push_back(right);
            result.evaluations += 2 * kEvalsPerRule;
            ++result.subdivisions;
        }
        std::tie(value, error) = totals();
    }

    result.value = value;
    result.error = error;
    return result;
}

}  // namespace graphene_ndr
