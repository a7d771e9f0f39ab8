#pragma once

#include "mzi/interferometry.hpp"
#include "mzi/states.hpp"

namespace mzi {

struct ClassicalLimits {
    double snl = 0.0;  // 1/sqrt(N)
    double hl = 0.0;   // 1/N
};

// One fully evaluated operating point of the interferometer.
struct SensitivityPoint {
    double phi = 0.0;
    double delta_phi = 0.0;  // +inf when the signal slope vanishes
    double snl = 0.0;
    double hl = 0.0;
    double qfi = 0.0;
    double crb = 0.0;
};

// Error-propagation uncertainty sqrt(1 - <Pi>^2) / |d<Pi>/dphi|.
// Returns +inf at slope zeros with nonvanishing numerator and NaN in the
// 0/0 case (phi = 0 and its periodic images); use the zero-limit form there.
double phase_uncertainty(const Scenario& sc, double phi);

// Closed-form limit of phase_uncertainty as phi -> 0 (theta = 0 only).
// Literal supports ops <= 2.
double phase_uncertainty_zero_limit(const Scenario& sc, Variant variant);

// The subtracted constant in the zero-limit radical, normalized so the
// radicand reads nbar^2 + nbar - item; derived from the second moment as
// nbar^2 + nbar - <b^2>^2. Equals 2 for ops = 1 and has closed forms
// 24 cosh^4 r/(3 cosh^2 r - 1)^2 (added, ops = 2) and
// 24 sinh^4 r/(3 sinh^2 r + 1)^2 (subtracted, ops = 2).
double small_phi_radical_item(const StateSpec& spec);

// Fisher information of the phase for the pure input, 4 Var(J2); closed
// form 2 nz nbar + nz + nbar - 2 nz <b^2> at theta = 0.
double quantum_fisher_information(const Scenario& sc);

// 1/sqrt(qfi); requires qfi > 0.
double cramer_rao_bound(double qfi);

// Shot-noise and Heisenberg reference scalings for a total mean photon
// number supplied by the caller.
ClassicalLimits classical_limits(double total_nbar);

// Convenience bundle used by the sweep driver: delta_phi at the given phi
// (zero-limit substituted at phi = 0), reference limits at the scenario's
// total photon number, Fisher information and its bound.
SensitivityPoint sensitivity_point(const Scenario& sc, double phi, Variant variant);

} // namespace mzi
