// Copyright 2026 The tcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tcd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace tcd {

Interval wilson_interval(uint64_t k, uint64_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    if (k > n) throw std::invalid_argument("wilson_interval: k > n");
    const double nn = (double)n, ph = (double)k / nn, z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (ph + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn));
    return {k == 0 ? 0.0 : std::max(0.0, center - half), k == n ? 1.0 : std::min(1.0, center + half)};
}

double max_failure_rate(size_t num_qubits) {
    return 1.0 - std::ldexp(1.0, -(int)num_qubits);
}

double per_layer_rate(double total, size_t depth, size_t num_qubits) {
    if (depth == 0 || num_qubits == 0) throw std::invalid_argument("per_layer_rate: empty circuit");
    const double pmax = max_failure_rate(num_qubits);
    if (total < 0.0 || total > pmax) throw std::invalid_argument("per_layer_rate: rate above saturation");
    return pmax * (1.0 - std::pow(1.0 - total / pmax, 1.0 / (double)depth));
}

double fit_rate(const RatePoint &pt, const ThresholdOptions &opt) {
    double k = pt.failures ? (double)pt.failures : 0.5;
    double r = k / (double)pt.shots;
    if (opt.num_qubits == 0) return r;
    return per_layer_rate(std::min(r, max_failure_rate(opt.num_qubits)), opt.depth, opt.num_qubits);
}

namespace {

std::vector<size_t> distances_of(const std::vector<RatePoint> &pts) {
    std::vector<size_t> ds;
    for (auto &pt : pts) ds.push_back(pt.distance);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

Crossing cross(const std::vector<RatePoint> &pts, size_t d1, size_t d2, const ThresholdOptions &opt) {
    Crossing c{d1, d2, false, 0, 0.0};
    std::vector<std::pair<double, double>> g;  // (log p, log r2 - log r1)
    for (auto &a : pts) {
        if (a.distance != d1 || a.shots == 0) continue;
        for (auto &b : pts)
            if (b.distance == d2 && b.p == a.p && b.shots)
                g.push_back({std::log(a.p), std::log(fit_rate(b, opt)) - std::log(fit_rate(a, opt))});
    }
    std::sort(g.begin(), g.end());
    if (g.empty()) return c;
    for (size_t i = 0; i + 1 < g.size(); ++i) {
        if (g[i].second < 0.0 && g[i + 1].second >= 0.0) {
            double t = g[i].second / (g[i].second - g[i + 1].second);
            c.found = true;
            c.p = std::exp(g[i].first + t * (g[i + 1].first - g[i].first));
            return c;
        }
    }
    c.side = g.back().second < 0.0 ? 1 : -1;
    return c;
}

struct Estimate {
    bool bounded = false;
    int side = 0;
    double p = 0.0;
    std::vector<Crossing> crossings;
};

Estimate estimate(const std::vector<RatePoint> &pts, const ThresholdOptions &opt) {
    Estimate e;
    auto ds = distances_of(pts);
    std::vector<double> ps;
    for (size_t i = 0; i < ds.size(); ++i)
        for (size_t j = i + 1; j < ds.size(); ++j) {
            auto c = cross(pts, ds[i], ds[j], opt);
            if (c.found) ps.push_back(c.p);
            else if (c.side) e.side = c.side;
            e.crossings.push_back(c);
        }
    if (ps.empty()) return e;
    std::sort(ps.begin(), ps.end());
    size_t m = ps.size();
    e.p = m % 2 ? ps[m / 2] : std::sqrt(ps[m / 2 - 1] * ps[m / 2]);
    e.bounded = ps.size() == e.crossings.size();
    return e;
}

}  // namespace

LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: need two points");
    const double n = (double)x.size();
    double sx = 0, sy = 0;
    for (size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i];
    double mx = sx / n, my = sy / n, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: constant x");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0.0 ? 1.0 : sxy * sxy / (sxx * syy);
    return f;
}

SlopeFit fit_slope(const std::vector<RatePoint> &points, size_t distance, double p_max, const ThresholdOptions &opt) {
    SlopeFit s;
    s.distance = distance;
    s.expected = (int)((distance + 1) / 2);
    std::vector<double> x, y;
    for (auto &pt : points)
        if (pt.distance == distance && pt.p <= p_max && pt.failures > 0) {
            x.push_back(std::log(pt.p));
            y.push_back(std::log(fit_rate(pt, opt)));
        }
    s.points = x.size();
    if (x.size() >= 2) {
        auto f = linear_fit(x, y);
        s.exponent = f.slope;
        s.intercept = f.intercept;
    }
    return s;
}

ThresholdResult estimate_threshold(const std::vector<RatePoint> &points, const ThresholdOptions &opt) {
    ThresholdResult res;
    auto e = estimate(points, opt);
    res.crossings = e.crossings;
    res.bounded = e.bounded;
    res.p_th = e.p;
    double pmin = std::numeric_limits<double>::infinity(), pmax = 0.0;
    for (auto &pt : points) pmin = std::min(pmin, pt.p), pmax = std::max(pmax, pt.p);
    const double inf = std::numeric_limits<double>::infinity();
    if (!e.bounded) {
        // no threshold inside the scanned range
        if (e.p == 0.0) res.ci = e.side > 0 ? Interval{pmax, inf} : Interval{0.0, pmin};
        else res.ci = {0.0, inf};
        for (auto d : distances_of(points)) res.slopes.push_back(fit_slope(points, d, 0.0, opt));
        return res;
    }
    std::mt19937_64 rng(opt.seed);
    std::vector<double> boot;
    size_t below = 0;
    auto resampled = points;
    for (size_t b = 0; b < opt.bootstrap; ++b) {
        for (size_t i = 0; i < points.size(); ++i) {
            std::binomial_distribution<uint64_t> bin(points[i].shots, points[i].rate());
            resampled[i].failures = bin(rng);
        }
        auto eb = estimate(resampled, opt);
        if (eb.bounded) boot.push_back(eb.p);
        else if (eb.side < 0) ++below;
    }
    const double alpha = (1.0 - opt.confidence) / 2.0;
    const double total = (double)opt.bootstrap;
    std::sort(boot.begin(), boot.end());
    auto quantile = [&](double q) {
        // quantile over all resamples, unbounded ones placed at the ends
        double pos = q * total - (double)below;
        if (pos < 0.0) return 0.0;
        if (pos >= (double)boot.size()) return inf;
        return boot[(size_t)pos];
    };
    res.ci = {quantile(alpha), quantile(1.0 - alpha)};
    if (opt.bootstrap == 0) res.ci = {res.p_th, res.p_th};
    for (auto d : distances_of(points)) res.slopes.push_back(fit_slope(points, d, res.p_th / 2.0, opt));
    return res;
}

SurgeryEstimate surgery_factory(size_t edges, size_t max_vertex_degree) {
    return {2.0 * (double)edges, 1.0 + (double)max_vertex_degree / 2.0};
}

SurgeryEstimate surgery_distillation() { return surgery_factory(46, 7); }

SurgeryEstimate surgery_clifford(size_t num_qubits, size_t depth) {
    if (num_qubits == 0 || depth == 0) return {0.0, 0.0};
    return {2.0 * (double)(num_qubits * depth), 3.0};
}

}  // namespace tcd
