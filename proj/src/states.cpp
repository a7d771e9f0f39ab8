#include "mzi/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mzi/series.hpp"

namespace mzi {

namespace {

void check_spec(const StateSpec& spec) {
    if (spec.r < 0.0) throw std::invalid_argument("StateSpec: r must be >= 0");
    if (spec.ops < 0) throw std::invalid_argument("StateSpec: ops must be >= 0");
    if (spec.kind == StateKind::Plain && spec.ops != 0)
        throw std::invalid_argument("StateSpec: Plain implies ops = 0");
    if (spec.ops > 64) throw std::invalid_argument("StateSpec: ops unreasonably large");
}

void check_degenerate(const StateSpec& spec) {
    if (spec.kind == StateKind::Subtracted && spec.ops >= 1 && spec.r == 0.0)
        throw DegenerateStateError(
            "subtracting photons from vacuum annihilates the state (r = 0, ops = " +
            std::to_string(spec.ops) + ")");
}

// Unnormalized squared norm via the Legendre closed forms:
//   Added:      k! cosh^k r P_k(cosh r)
//   Subtracted: l! sinh^l r Q_l(sinh r), Q_l(s) = (-i)^l P_l(i s)
double norm_closed(StateKind kind, int ops, double r) {
    if (ops == 0) return 1.0;
    if (kind == StateKind::Added)
        return factorial(ops) * std::pow(std::cosh(r), ops) * legendre_p(ops, std::cosh(r));
    return factorial(ops) * std::pow(std::sinh(r), ops) * legendre_p_imag(ops, std::sinh(r));
}

// Coefficient grid of exp[-(sinh2r/4)(t^2 + tau^2) + X t tau] with
// X = cosh^2 r (Added) or sinh^2 r (Subtracted). Mixed derivatives of this
// object give the norm (diagonal) and <b^2> (two off the diagonal).
BivariateJet<double> moment_jet(const StateSpec& spec, int order_t, int order_tau) {
    const double sh = std::sinh(spec.r);
    const double ch = std::cosh(spec.r);
    QuadraticForm<double> q;
    q.cross = (spec.kind == StateKind::Added) ? ch * ch : sh * sh;
    q.sq_h = -0.5 * sh * ch;
    q.sq_g = q.sq_h;
    return jet_exp_quadratic(q, order_t, order_tau);
}

} // namespace

StateSpec::StateSpec(StateKind kind_, double r_, int ops_) : kind(kind_), r(r_), ops(ops_) {
    check_spec(*this);
}

Scenario::Scenario(StateSpec squeezed_, double nz_, double theta_)
    : squeezed(squeezed_), nz(nz_), theta(theta_) {
    if (!(nz >= 0.0)) throw std::invalid_argument("Scenario: nz must be >= 0");
}

double normalization(const StateSpec& spec) {
    check_spec(spec);
    check_degenerate(spec);
    return norm_closed(spec.kind, spec.ops, spec.r);
}

double normalization_via_generating_function(const StateSpec& spec) {
    check_spec(spec);
    check_degenerate(spec);
    if (spec.ops == 0) return 1.0;
    auto jet = moment_jet(spec, spec.ops, spec.ops);
    double f = factorial(spec.ops);
    return f * f * jet.at(spec.ops, spec.ops);
}

double mean_photon_number(const StateSpec& spec) {
    check_spec(spec);
    check_degenerate(spec);
    const double sh = std::sinh(spec.r);
    switch (spec.kind) {
        case StateKind::Plain:
            return sh * sh;
        case StateKind::Added: {
            // N_{k+1}/N_k - 1 with the common k! cosh^k factors cancelled
            const double ch = std::cosh(spec.r);
            return (spec.ops + 1) * ch * legendre_p(spec.ops + 1, ch) / legendre_p(spec.ops, ch) -
                   1.0;
        }
        case StateKind::Subtracted:
            if (spec.ops == 0) return sh * sh;
            return (spec.ops + 1) * sh * legendre_p_imag(spec.ops + 1, sh) /
                   legendre_p_imag(spec.ops, sh);
    }
    throw std::logic_error("unreachable");
}

double second_moment_b2(const StateSpec& spec) {
    check_spec(spec);
    check_degenerate(spec);
    if (spec.kind == StateKind::Plain) return -std::sinh(spec.r) * std::cosh(spec.r);
    const int k = spec.ops;
    auto jet = moment_jet(spec, k + 2, k);
    const double raw = factorial(k + 2) * factorial(k) * jet.at(k + 2, k);
    return raw / norm_closed(spec.kind, k, spec.r);
}

std::vector<double> fock_amplitudes(const StateSpec& spec, int cutoff) {
    check_spec(spec);
    check_degenerate(spec);
    if (cutoff < 0) throw std::invalid_argument("fock_amplitudes: negative cutoff");

    const int subtract = (spec.kind == StateKind::Subtracted) ? spec.ops : 0;
    const int add = (spec.kind == StateKind::Added) ? spec.ops : 0;
    if (cutoff < add)
        throw TruncationError("fock_amplitudes: cutoff below the lowest occupied level",
                              recommended_cutoff(spec));

    // squeezed vacuum on an extended range; subtraction consumes the top
    const int top = cutoff + subtract;
    std::vector<double> v(size_t(top) + 1, 0.0);
    const double t = std::tanh(spec.r);
    v[0] = 1.0 / std::sqrt(std::cosh(spec.r));
    for (int m = 0; 2 * m + 2 <= top; ++m)
        v[size_t(2 * m + 2)] = v[size_t(2 * m)] * (-0.5 * t) *
                               std::sqrt(double(2 * m + 1) * double(2 * m + 2)) / double(m + 1);

    for (int step = 0; step < subtract; ++step) {
        for (size_t n = 0; n + 1 < v.size(); ++n) v[n] = v[n + 1] * std::sqrt(double(n + 1));
        v.pop_back();
    }
    for (int step = 0; step < add; ++step) {
        for (size_t n = v.size() - 1; n > 0; --n) v[n] = v[n - 1] * std::sqrt(double(n));
        v[0] = 0.0;
    }

    const double exact = norm_closed(spec.kind, spec.ops, spec.r);
    double sum = 0.0;
    for (double a : v) sum += a * a;
    const double tail = std::max(0.0, (exact - sum) / exact);
    if (tail > 1e-12)
        throw TruncationError("fock_amplitudes: truncated tail mass " + std::to_string(tail) +
                                  " exceeds 1e-12 at cutoff " + std::to_string(cutoff),
                              recommended_cutoff(spec));

    const double inv = 1.0 / std::sqrt(sum);
    for (double& a : v) a *= inv;
    return v;
}

double solve_r_for_nbar(StateKind kind, int ops, double target_nbar) {
    StateSpec probe(kind, 1.0, (kind == StateKind::Plain) ? 0 : ops);
    // family minimum: attained at r = 0 for Plain/Added, approached as
    // r -> 0+ for Subtracted (even ops -> vacuum, odd ops -> one photon)
    double min_nbar;
    bool attained;
    switch (kind) {
        case StateKind::Plain:
            min_nbar = 0.0;
            attained = true;
            break;
        case StateKind::Added:
            min_nbar = double(ops);
            attained = true;
            break;
        case StateKind::Subtracted:
            min_nbar = double(ops % 2);
            attained = (ops == 0);
            break;
        default:
            throw std::logic_error("unreachable");
    }
    if (target_nbar < min_nbar || (!attained && target_nbar == min_nbar))
        throw UnattainableTargetError(
            "solve_r_for_nbar: target " + std::to_string(target_nbar) +
                " below the attainable minimum " + std::to_string(min_nbar),
            min_nbar);
    if (attained && target_nbar == min_nbar) return 0.0;

    auto nbar_at = [&](double r) {
        probe.r = r;
        return mean_photon_number(probe);
    };

    double lo = (kind == StateKind::Subtracted && ops >= 1) ? 1e-9 : 0.0;
    double hi = 1.0 + 2.0 * std::asinh(std::sqrt(target_nbar));
    while (nbar_at(hi) < target_nbar) {
        hi *= 2.0;
        if (hi > 1e4) throw std::runtime_error("solve_r_for_nbar: bracket expansion failed");
    }
    if (nbar_at(lo) >= target_nbar) return lo;

    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        double mid = 0.5 * (lo + hi);
        (nbar_at(mid) < target_nbar ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

int recommended_cutoff(double nbar, int ops) {
    if (nbar < 0.0) throw std::invalid_argument("recommended_cutoff: negative nbar");
    double c = 4.0 * nbar + 10.0 * std::sqrt(nbar) + 20.0 + 2.0 * ops;
    return std::max(40, int(std::ceil(c)));
}

int recommended_cutoff(const StateSpec& spec) {
    int base = recommended_cutoff(mean_photon_number(spec), spec.ops);
    // The mean-based rule misses two effects: the squeezed-vacuum weights
    // only decay geometrically (slowly for large r), and the n^ops factor
    // from the ladder operators pushes mass toward high levels. Walk the
    // weights until the retained mass reaches the closed-form norm to
    // 1e-13, then pad a little.
    if (spec.r > 0.0) {
        const double t2 = std::tanh(spec.r) * std::tanh(spec.r);
        const double exact = norm_closed(spec.kind, spec.ops, spec.r);
        double w = 1.0 / std::cosh(spec.r);  // |<2m|S|0>|^2 at m = 0
        double sum = 0.0;
        int level = 0;
        for (int m = 0; m < 2000000; ++m) {
            const int n = 2 * m;
            double poly = 1.0;
            if (spec.kind == StateKind::Added) {
                for (int i = 1; i <= spec.ops; ++i) poly *= double(n + i);
            } else if (spec.kind == StateKind::Subtracted) {
                if (n < spec.ops) poly = 0.0;
                else
                    for (int i = 0; i < spec.ops; ++i) poly *= double(n - i);
            }
            sum += w * poly;
            if (exact - sum <= 1e-13 * exact) {
                level = (spec.kind == StateKind::Subtracted) ? n - spec.ops : n + spec.ops;
                break;
            }
            w *= t2 * double(2 * m + 1) / double(2 * m + 2);
        }
        base = std::max(base, level + 10);
    }
    return base;
}

double total_mean_photons(const Scenario& sc) { return sc.nz + mean_photon_number(sc.squeezed); }

} // namespace mzi
