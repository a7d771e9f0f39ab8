#pragma once

#include <vector>

#include "mzi/errors.hpp"

namespace mzi {

// The squeezed input port carries S(r)|0> either untouched (Plain), with
// `ops` creation operators applied before normalization (Added), or with
// `ops` annihilation operators applied (Subtracted).
enum class StateKind { Plain, Added, Subtracted };

struct StateSpec {
    StateKind kind = StateKind::Plain;
    double r = 0.0;
    int ops = 0;

    StateSpec() = default;
    StateSpec(StateKind kind_, double r_, int ops_);
};

// Full interferometer input: StateSpec on port b, coherent light with mean
// photon number nz and phase theta on port a, amplitude z = sqrt(nz) e^{i theta}.
struct Scenario {
    StateSpec squeezed;
    double nz = 0.0;
    double theta = 0.0;

    Scenario() = default;
    Scenario(StateSpec squeezed_, double nz_, double theta_ = 0.0);
};

// Squared norm of the unnormalized modified state: <0|S^+ b^ops b^+ops S|0>
// for Added, <0|S^+ b^+ops b^ops S|0> for Subtracted, 1 for Plain.
// Closed form through Legendre polynomials of cosh r (real argument, Added)
// or of i sinh r with the phase stripped (Subtracted).
double normalization(const StateSpec& spec);

// Same quantity through the bivariate generating-function route; used as an
// independent consistency probe of the Legendre closed form.
double normalization_via_generating_function(const StateSpec& spec);

// <b^+ b> of the normalized state. Ratio of adjacent normalization factors.
double mean_photon_number(const StateSpec& spec);

// <b^2> of the normalized state (real and <= 0 for this squeezing
// convention). Extracted as an asymmetric (ops+2, ops) mixed derivative of
// the generating function.
double second_moment_b2(const StateSpec& spec);

// Normalized Fock-basis amplitudes c_0..c_cutoff (real for real squeezing).
// Throws TruncationError when the probability mass beyond the cutoff would
// exceed 1e-12.
std::vector<double> fock_amplitudes(const StateSpec& spec, int cutoff);

// Inverts r -> mean_photon_number by bisection to absolute 1e-10 in the
// target. Throws UnattainableTargetError when the target lies below the
// r = 0 (or r -> 0) minimum of the family.
double solve_r_for_nbar(StateKind kind, int ops, double target_nbar);

// Fock cutoff heuristic: max(40, ceil(4 nbar + 10 sqrt(nbar) + 20 + 2 ops)).
// Adequate for Poisson-tailed (coherent) occupation.
int recommended_cutoff(double nbar, int ops);

// Cutoff for a squeezed-family state. Applies the rule above plus a floor
// obtained by walking the geometric squeezed-vacuum weights (with their
// n^ops ladder enhancement) until the tail mass drops below ~1e-13; the
// mean-based rule alone underestimates slowly decaying large-r tails.
int recommended_cutoff(const StateSpec& spec);

// nz plus the squeezed-port mean photon number.
double total_mean_photons(const Scenario& sc);

} // namespace mzi
