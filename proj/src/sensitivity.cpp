#include "mzi/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mzi/series.hpp"

namespace mzi {

namespace {

constexpr double kSlopeFloor = 1e-14;

void require_theta_zero(const Scenario& sc, const char* who) {
    if (sc.theta != 0.0)
        throw std::invalid_argument(std::string(who) + ": closed form assumes theta = 0");
}

// Extended-precision copies of the moment formulas. The radical item
// subtracts two O(nbar^2) quantities that cancel down to O(1); by r = 3
// (nbar ~ 500) a plain double evaluation keeps only ~1e-10 of it absolute.
// 80-bit intermediates push that rounding noise below 1e-12.

long double legendre_p_ext(int n, long double x) {
    if (n == 0) return 1.0L;
    long double pm = 1.0L, p = x;
    for (int m = 1; m < n; ++m) {
        long double pn = ((2 * m + 1) * x * p - m * pm) / (m + 1);
        pm = p;
        p = pn;
    }
    return p;
}

long double legendre_p_imag_ext(int n, long double s) {
    if (n == 0) return 1.0L;
    long double qm = 1.0L, q = s;
    for (int m = 1; m < n; ++m) {
        long double qn = ((2 * m + 1) * s * q + m * qm) / (m + 1);
        qm = q;
        q = qn;
    }
    return q;
}

long double factorial_ext(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

long double mean_photon_ext(const StateSpec& spec) {
    const long double sh = std::sinh(static_cast<long double>(spec.r));
    const long double ch = std::cosh(static_cast<long double>(spec.r));
    if (spec.kind == StateKind::Plain || spec.ops == 0) return sh * sh;
    if (spec.kind == StateKind::Added)
        return (spec.ops + 1) * ch * legendre_p_ext(spec.ops + 1, ch) /
                   legendre_p_ext(spec.ops, ch) -
               1.0L;
    return (spec.ops + 1) * sh * legendre_p_imag_ext(spec.ops + 1, sh) /
           legendre_p_imag_ext(spec.ops, sh);
}

long double second_moment_b2_ext(const StateSpec& spec) {
    const long double sh = std::sinh(static_cast<long double>(spec.r));
    const long double ch = std::cosh(static_cast<long double>(spec.r));
    if (spec.kind == StateKind::Plain || spec.ops == 0) return -sh * ch;
    const int k = spec.ops;
    QuadraticForm<long double> q;
    q.cross = (spec.kind == StateKind::Added) ? ch * ch : sh * sh;
    q.sq_h = -0.5L * sh * ch;
    q.sq_g = q.sq_h;
    BivariateJet<long double> jet = jet_exp_quadratic(q, k + 2, k);
    const long double raw = factorial_ext(k + 2) * factorial_ext(k) * jet.at(k + 2, k);
    const long double norm =
        (spec.kind == StateKind::Added)
            ? factorial_ext(k) * std::pow(ch, k) * legendre_p_ext(k, ch)
            : factorial_ext(k) * std::pow(sh, k) * legendre_p_imag_ext(k, sh);
    return raw / norm;
}

} // namespace

double phase_uncertainty(const Scenario& sc, double phi) {
    ParityPoint p = parity_phase_slope(sc, phi);
    double num_sq = std::max(0.0, 1.0 - p.value * p.value);
    double num = std::sqrt(num_sq);
    double den = std::fabs(p.slope);
    if (den < kSlopeFloor) {
        if (num > kSlopeFloor) return std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();  // 0/0: use the zero limit
    }
    return num / den;
}

double phase_uncertainty_zero_limit(const Scenario& sc, Variant variant) {
    require_theta_zero(sc, "phase_uncertainty_zero_limit");
    const double nb = mean_photon_number(sc.squeezed);
    const double nz = sc.nz;
    double radical;
    if (variant == Variant::SeriesConsistent) {
        // limit of the error-propagation formula: with <Pi> = sigma(1 - L phi^2),
        // delta = 1/sqrt(2 L); L comes out of the exact series for any ops
        double coeff = small_phi_parity_coeff(sc, variant);
        return 1.0 / std::sqrt(2.0 * coeff);
    }
    switch (sc.squeezed.ops) {
        case 0:
            radical = std::sqrt(nb * nb + nb + 1.0);
            break;
        case 1:
            radical = std::sqrt(nb * nb + nb - 2.0);
            break;
        case 2:
            radical = std::sqrt(nb * nb + nb - small_phi_radical_item(sc.squeezed));
            break;
        default:
            throw std::invalid_argument("phase_uncertainty_zero_limit: no tabulated form for ops = " +
                                        std::to_string(sc.squeezed.ops));
    }
    return 1.0 / std::sqrt(2.0 * nz * radical + 2.0 * nz * nb + nz + nb);
}

double small_phi_radical_item(const StateSpec& spec) {
    (void)normalization(spec);  // runs the spec and degeneracy checks
    const long double nb = mean_photon_ext(spec);
    const long double b2 = second_moment_b2_ext(spec);
    return static_cast<double>(nb * nb + nb - b2 * b2);
}

double quantum_fisher_information(const Scenario& sc) {
    require_theta_zero(sc, "quantum_fisher_information");
    const double nb = mean_photon_number(sc.squeezed);
    const double b2 = second_moment_b2(sc.squeezed);
    return 2.0 * sc.nz * nb + sc.nz + nb - 2.0 * sc.nz * b2;
}

double cramer_rao_bound(double qfi) {
    if (!(qfi > 0.0)) throw std::invalid_argument("cramer_rao_bound: qfi must be positive");
    return 1.0 / std::sqrt(qfi);
}

ClassicalLimits classical_limits(double total_nbar) {
    if (!(total_nbar > 0.0))
        throw std::invalid_argument("classical_limits: total photon number must be positive");
    return ClassicalLimits{1.0 / std::sqrt(total_nbar), 1.0 / total_nbar};
}

SensitivityPoint sensitivity_point(const Scenario& sc, double phi, Variant variant) {
    SensitivityPoint out;
    out.phi = phi;
    ClassicalLimits lim = classical_limits(total_mean_photons(sc));
    out.snl = lim.snl;
    out.hl = lim.hl;
    if (sc.theta == 0.0) {
        out.delta_phi = (phi == 0.0) ? phase_uncertainty_zero_limit(sc, variant)
                                     : phase_uncertainty(sc, phi);
        out.qfi = quantum_fisher_information(sc);
        out.crb = cramer_rao_bound(out.qfi);
    } else {
        // Fisher closed forms are theta = 0 only; the error-propagation
        // route stays valid for any theta away from the 0/0 point
        out.delta_phi = phase_uncertainty(sc, phi);
        out.qfi = std::numeric_limits<double>::quiet_NaN();
        out.crb = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

} // namespace mzi
