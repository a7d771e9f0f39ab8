#include "mzi/interferometry.hpp"

#include <cmath>
#include <string>

#include "mzi/detail/parity_kernel.hpp"
#include "mzi/dual.hpp"
#include "mzi/errors.hpp"

namespace mzi {

namespace {

void check_parity_bound(double value, const Scenario& sc, double phi) {
    if (!std::isfinite(value) || std::fabs(value) > 1.0 + 1e-9)
        throw InternalConsistencyError("parity expectation " + std::to_string(value) +
                                       " outside [-1, 1] at phi = " + std::to_string(phi) +
                                       ", nz = " + std::to_string(sc.nz));
}

} // namespace

double parity_expectation(const Scenario& sc, double phi) {
    double v = detail::parity_value(sc, phi);
    check_parity_bound(v, sc, phi);
    return v;
}

ParityPoint parity_phase_slope(const Scenario& sc, double phi) {
    auto d = detail::parity_value(sc, Dual<double>::seed(phi));
    check_parity_bound(d.val, sc, phi);
    return ParityPoint{phi, d.val, d.dot};
}

double small_phi_parity_coeff(const Scenario& sc, Variant variant) {
    const StateSpec& spec = sc.squeezed;
    const double sigma = (spec.ops % 2 == 0) ? 1.0 : -1.0;

    if (variant == Variant::SeriesConsistent) {
        // second phi-derivative at 0 through nested duals:
        // <Pi> = sigma (1 - L phi^2) + O(phi^4)  =>  L = -sigma <Pi>''(0)/2
        using D2 = Dual<Dual<double>>;
        D2 phi(Dual<double>(0.0, 1.0), Dual<double>(1.0, 0.0));
        D2 p = detail::parity_value(sc, phi);
        return -sigma * p.dot.dot / 2.0;
    }

    // tabulated closed forms, ops <= 2 only
    const double nb = mean_photon_number(spec);
    const double nz = sc.nz;
    const double ct = std::cos(sc.theta);
    const double half = (2.0 * nz * nb + nz + nb) / 2.0;
    double radicand;
    switch (spec.ops) {
        case 0:
            radicand = nb * nb + nb + 1.0;
            break;
        case 1:
            radicand = nb * nb + nb - 2.0;
            break;
        case 2: {
            // the tabulated ops = 2 coefficient subtracts an expression in
            // the mean photon number; the sign pattern differs between the
            // added and subtracted families
            const double u = std::sqrt(1.0 + 12.0 * nb);
            double item;
            if (spec.kind == StateKind::Added)
                item = 8.0 * (u + 1.0) * (u + 1.0) / (3.0 * (u - 1.0) * (u - 1.0));
            else
                item = 8.0 * (u - 1.0) * (u - 1.0) / (3.0 * (u + 1.0) * (u + 1.0));
            radicand = nb * nb + nb - item;
            break;
        }
        default:
            throw std::invalid_argument(
                "small_phi_parity_coeff: no tabulated form for ops = " + std::to_string(spec.ops));
    }
    return nz * ct * std::sqrt(radicand) + half;
}

} // namespace mzi
