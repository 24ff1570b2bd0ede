#include "epdyn/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "epdyn/numerics.hpp"

namespace epdyn {

namespace {

// run fn(i) for i in [0, n) on up to `threads` workers; results must be
// written to disjoint slots so the outcome is independent of the split
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(threads, 1), n == 0 ? 1 : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

double component_abs(const StateVector& s, Component c) {
    return c == Component::z1 ? std::abs(s.z1) : std::abs(s.z2);
}

// least-squares slope of y over x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Trajectory trajectory_sweep(const ModelParams& params, double lo, double hi, int n) {
    if (!is_finite(params)) {
        throw InvalidInput("trajectory_sweep: non-finite parameters");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidInput("trajectory_sweep: need finite lo < hi");
    }
    if (n < 2) {
        throw InvalidInput("trajectory_sweep: need n >= 2");
    }

    Trajectory traj;
    traj.ep_pair = exceptional_points(params);
    traj.lambdas.resize(n);
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        traj.lambdas[i] = (i == n - 1) ? hi : lo + step * i;
    }

    PathSamples disc(n);
    for (int i = 0; i < n; ++i) {
        disc[i] = discriminant(params, Complex(traj.lambdas[i], 0.0));
    }
    PathSamples roots;
    try {
        roots = sqrt_continuous(disc);
    } catch (const StepTooCoarse& e) {
        throw StepTooCoarse(e.index, "increase the grid size n to resolve the branch");
    }

    traj.e1_path.resize(n);
    traj.e2_path.resize(n);
    for (int i = 0; i < n; ++i) {
        const Complex lam(traj.lambdas[i], 0.0);
        const Complex mean = 0.5 * (params.omega1 + params.omega2 +
                                    lam * (params.epsilon1 + params.epsilon2));
        traj.e1_path[i] = mean - 0.5 * roots[i];
        traj.e2_path[i] = mean + 0.5 * roots[i];
    }
    return traj;
}

TimeSeries time_series(const ModelParams& params, Complex lambda, const StateVector& psi0,
                       double t_max, int n, int threads) {
    if (!is_finite(params) || !is_finite(lambda) || !is_finite(psi0)) {
        throw InvalidInput("time_series: non-finite input");
    }
    if (!std::isfinite(t_max) || !(t_max > 0.0)) {
        throw InvalidInput("time_series: need t_max > 0");
    }
    if (n < 2) {
        throw InvalidInput("time_series: need n >= 2");
    }

    TimeSeries series;
    series.lambda = lambda;
    series.psi0 = psi0;
    series.times.resize(n);
    series.states.resize(n);
    const double step = t_max / (n - 1);
    for (int i = 0; i < n; ++i) {
        series.times[i] = (i == n - 1) ? t_max : step * i;
    }
    series.states[0] = psi0;
    parallel_for(static_cast<std::size_t>(n) - 1, threads, [&](std::size_t k) {
        const std::size_t i = k + 1;
        series.states[i] = evolve_auto(params, lambda, psi0, series.times[i]).state;
    });
    return series;
}

WidthBeat width_and_beat(const Spectrum& spectrum) {
    if (!is_finite(spectrum.e1) || !is_finite(spectrum.e2)) {
        throw InvalidInput("width_and_beat: non-finite spectrum");
    }
    WidthBeat wb;
    wb.gamma1 = -spectrum.e1.imag();
    wb.gamma2 = -spectrum.e2.imag();
    wb.delta_e = std::abs(spectrum.e1.real() - spectrum.e2.real());
    return wb;
}

std::vector<std::size_t> local_maxima(const TimeSeries& series, Component component) {
    const std::size_t n = series.states.size();
    std::vector<std::size_t> idx;
    if (n < 2) return idx;
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = component_abs(series.states[i], component);
    if (ys[0] >= ys[1]) idx.push_back(0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (ys[i] >= ys[i - 1] && ys[i] > ys[i + 1]) idx.push_back(i);
    }
    if (ys[n - 1] > ys[n - 2]) idx.push_back(n - 1);
    return idx;
}

std::vector<std::size_t> interior_maxima(const TimeSeries& series, Component component) {
    const std::size_t n = series.states.size();
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double prev = component_abs(series.states[i - 1], component);
        const double here = component_abs(series.states[i], component);
        const double next = component_abs(series.states[i + 1], component);
        if (here >= prev && here > next) idx.push_back(i);
    }
    return idx;
}

double envelope_fit(const TimeSeries& series, Component component) {
    const std::size_t n = series.states.size();
    if (n != series.times.size() || n < 2) {
        throw InvalidInput("envelope_fit: malformed series");
    }

    const auto maxima = local_maxima(series, component);
    if (maxima.size() >= 3) {
        std::vector<double> ts, logs;
        for (const auto i : maxima) {
            const double a = component_abs(series.states[i], component);
            if (a <= 0.0) {
                throw InsufficientData("envelope_fit: vanishing amplitude at a maximum");
            }
            ts.push_back(series.times[i]);
            logs.push_back(std::log(a));
        }
        return -fit_slope(ts, logs);
    }

    // monotone decay: fit log|z| directly
    bool monotone = n >= 10;
    for (std::size_t i = 0; monotone && i + 1 < n; ++i) {
        const double a = component_abs(series.states[i], component);
        const double b = component_abs(series.states[i + 1], component);
        if (b > a * (1.0 + 1e-12)) monotone = false;
    }
    if (monotone) {
        std::vector<double> ts, logs;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = component_abs(series.states[i], component);
            if (a <= 0.0) {
                throw InsufficientData("envelope_fit: vanishing amplitude");
            }
            ts.push_back(series.times[i]);
            logs.push_back(std::log(a));
        }
        return -fit_slope(ts, logs);
    }

    throw InsufficientData(
        "envelope_fit: need >= 3 local maxima or monotone decay over >= 10 samples");
}

}  // namespace epdyn
