#pragma once

#include "mzi/states.hpp"

namespace mzi {

struct ParityPoint {
    double phi = 0.0;
    double value = 0.0;  // <Pi_b(phi)>, in [-1, 1]
    double slope = 0.0;  // d<Pi_b>/dphi, per radian
};

// Two published closed-form flavors of the small-phi coefficients. They
// disagree for the unmodified squeezed port (constant term inside one
// radical); both are kept so the verification suite can adjudicate them
// against the exact series and the Fisher-information bound.
//   Literal          evaluates the tabulated closed forms as printed.
//   SeriesConsistent re-derives the coefficient from the exact signal via
//                    nested dual numbers; defined for every ops.
enum class Variant { Literal, SeriesConsistent };

// Parity signal <(-1)^{n_b}> at the output of the interferometer.
double parity_expectation(const Scenario& sc, double phi);

// Signal and its exact phi-derivative in one dual-number pass.
ParityPoint parity_phase_slope(const Scenario& sc, double phi);

// Coefficient L in <Pi(phi)> ~ sigma (1 - L phi^2) near phi = 0, with
// sigma = (-1)^ops. Literal supports ops <= 2 only.
double small_phi_parity_coeff(const Scenario& sc, Variant variant);

} // namespace mzi
