#pragma once

// Brute-force two-mode simulator used to cross-check every closed form in
// this library. It knows nothing about the analytic parity results: it
// builds the product state amplitude by amplitude, applies the beam-split
// rotation exactly on each total-photon-number sector, and measures.

#include <complex>
#include <utility>
#include <vector>

#include "mzi/states.hpp"

namespace mzi {

struct TwoModeFockState {
    int dim_a = 0;
    int dim_b = 0;
    // row-major: amp(n, m) = amps[n * dim_b + m], n photons in a, m in b
    std::vector<std::complex<double>> amps;

    std::complex<double>& at(int n, int m) { return amps[size_t(n) * size_t(dim_b) + size_t(m)]; }
    const std::complex<double>& at(int n, int m) const {
        return amps[size_t(n) * size_t(dim_b) + size_t(m)];
    }

    double norm_sq() const;
    // probability held in the top 10% of either index range
    double edge_mass() const;
};

// Cutoffs satisfying the per-mode tail rule for this scenario.
std::pair<int, int> recommended_cutoffs(const Scenario& sc);

// |z>_a tensor (modified squeezed vacuum)_b on a (cutoff_a+1) x (cutoff_b+1)
// grid. Throws TruncationError when either marginal leaves more than 1e-9
// probability in the top 10% of its range.
TwoModeFockState build_input_state(const Scenario& sc, int cutoff_a, int cutoff_b);

// exp(-i phi J2) with J2 = (a^+ b - a b^+)/(2i), applied exactly within
// each total-photon-number sector. The output grid is enlarged to a square
// that fully contains every sector holding non-negligible probability, so
// no sector is clipped mid-rotation.
TwoModeFockState apply_interferometer(const TwoModeFockState& state, double phi);

// sum over the grid of (-1)^m |amp|^2
double parity_oracle(const TwoModeFockState& state);

// Var(J2) by direct sparse application of J2; 4x this is the Fisher
// information of a pure input.
double j2_variance_oracle(const TwoModeFockState& state);

} // namespace mzi
