#pragma once

// Generic evaluator for the parity signal of the interferometer. Templated
// over the scalar so that the same closed form yields values (double),
// first derivatives (Dual<double>) and second derivatives (nested duals)
// with no finite-difference noise anywhere in the chain.

#include <cmath>

#include "mzi/errors.hpp"
#include "mzi/series.hpp"
#include "mzi/states.hpp"

namespace mzi::detail {

// <Pi_b(phi)> for the squeezed-vacuum-only port (no addition/subtraction),
// valid for any coherent amplitude on port a. This is also the prefactor
// multiplying the derivative factor for the modified families.
template <class S>
S parity_prefactor(double nz, double theta, double sh2, double s2r, const S& sinphi,
                   const S& cosphi, const S& big_d) {
    using std::exp;
    using std::sqrt;
    const double re_z2 = nz * std::cos(2.0 * theta);
    S sin2 = sinphi * sinphi;
    S num = (cosphi - 1.0 - sh2 * sin2) * (2.0 * nz) - (s2r * re_z2) * sin2;
    return exp(num / (2.0 * big_d)) / sqrt(big_d);
}

template <class S>
S parity_value(const Scenario& sc, S phi) {
    using std::cos;
    using std::sin;

    const StateSpec& spec = sc.squeezed;
    const double norm = normalization(spec);  // rejects degenerate input
    const double sh = std::sinh(spec.r);
    const double ch = std::cosh(spec.r);
    const double sh2 = sh * sh;
    const double ch2 = ch * ch;
    const double s2r = 2.0 * sh * ch;

    S sinphi = sin(phi);
    S cosphi = cos(phi);
    S big_d = sh2 * (sinphi * sinphi) + 1.0;

    S pref = parity_prefactor(sc.nz, sc.theta, sh2, s2r, sinphi, cosphi, big_d);
    if (spec.ops == 0) return pref;

    const double za = std::sqrt(sc.nz);
    const double zr = za * std::cos(sc.theta);
    const double zi = za * std::sin(sc.theta);

    S sin2phi = 2.0 * sinphi * cosphi;
    QuadraticForm<Cplx<S>> q;
    if (spec.kind == StateKind::Added) {
        // exponent of the generating function for the photon-added family:
        //   -(ch^2 cosphi / D) h g
        //   + (4 z ch^2 sinphi + z* sinh2r sin2phi) / (4 D) h   (conjugate for g)
        //   - (sinh2r cos^2 phi / (4 D)) (h^2 + g^2)
        S inv4d = 0.25 / big_d;
        q.cross = Cplx<S>(-(ch2 * cosphi) / big_d);
        S lr = (sinphi * (4.0 * zr * ch2) + sin2phi * (zr * s2r)) * inv4d;
        S li = (sinphi * (4.0 * zi * ch2) - sin2phi * (zi * s2r)) * inv4d;
        q.lin_h = Cplx<S>(lr, li);
        q.lin_g = Cplx<S>(lr, -li);
        S sq = -(cosphi * cosphi * s2r) * inv4d;
        q.sq_h = Cplx<S>(sq);
        q.sq_g = q.sq_h;
    } else {
        // photon-subtracted family:
        //   -(sh^2 cosphi / D) h g
        //   - (z* sh^2 sin2phi + z sinh2r sinphi) / (2 D) h   (conjugate for g)
        //   - (sh ch / (2 D)) (h^2 + g^2)
        S inv2d = 0.5 / big_d;
        q.cross = Cplx<S>(-(sh2 * cosphi) / big_d);
        S lr = -(sin2phi * (zr * sh2) + sinphi * (zr * s2r)) * inv2d;
        S li = (sin2phi * (zi * sh2) - sinphi * (zi * s2r)) * inv2d;
        q.lin_h = Cplx<S>(lr, li);
        q.lin_g = Cplx<S>(lr, -li);
        S sq = (-(sh * ch)) * inv2d;
        q.sq_h = Cplx<S>(sq);
        q.sq_g = q.sq_h;
    }

    auto jet = jet_exp_quadratic(q, spec.ops, spec.ops);
    Cplx<S> deriv = jet_mixed_derivative(jet, spec.ops, spec.ops);
    // The (ops, ops) coefficient is real by the h <-> g conjugation symmetry
    // of the exponent; the imaginary part is pure roundoff.
    return pref * deriv.re * (1.0 / norm);
}

} // namespace mzi::detail
