#pragma once

#include <cstddef>
#include <vector>

#include "epdyn/evolution.hpp"
#include "epdyn/model.hpp"
#include "epdyn/spectral.hpp"
#include "epdyn/types.hpp"

namespace epdyn {

// Branch-tracked eigenvalue paths over a real coupling window
struct Trajectory {
    std::vector<double> lambdas;
    std::vector<Complex> e1_path;
    std::vector<Complex> e2_path;
    EPPair ep_pair;
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<StateVector> states;
    Complex lambda{};
    StateVector psi0;
};

// gamma_k = -Im(e_k) with amplitude envelope exp(-gamma*t);
// delta_e = |Re e1 - Re e2| sets the beat frequency
struct WidthBeat {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double delta_e = 0.0;
};

enum class Component { z1, z2 };

/// Eigenvalue trajectories on a uniform lambda grid with the discriminant
/// root tracked continuously (no branch swaps along the path).
Trajectory trajectory_sweep(const ModelParams& params, double lo, double hi, int n);

/// States on a uniform time grid from 0 to t_max via evolve_auto;
/// states[0] is psi0 exactly.  Grid points are independent, so `threads`
/// workers may evaluate them concurrently; output is in grid order and
/// bit-identical to the sequential evaluation.
TimeSeries time_series(const ModelParams& params, Complex lambda, const StateVector& psi0,
                       double t_max, int n, int threads = 1);

WidthBeat width_and_beat(const Spectrum& spectrum);

/// Local maxima of |z_component|, boundary samples included.
std::vector<std::size_t> local_maxima(const TimeSeries& series, Component component);

/// Strictly interior local maxima of |z_component| — the beat peaks.
std::vector<std::size_t> interior_maxima(const TimeSeries& series, Component component);

/// Decay rate from a least-squares fit of log|z| at the local maxima
/// (oscillatory case, needs >= 3 maxima) or of log|z| over all samples
/// (monotone decay, needs >= 10 samples).
double envelope_fit(const TimeSeries& series, Component component);

}  // namespace epdyn
