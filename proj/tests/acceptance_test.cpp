// Acceptance gate. One verdict line per shipped claim; exits 0 only when
// every verdict matches the documented expectation. Two figure-structure
// sub-claims are red on purpose: the formulas they exercise are correct and
// independently cross-checked, but the claimed structure does not hold at
// the stated parameters (see README). Those lines print as [FAIL] with an
// "[expected red]" tag instead of being weakened into a green.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "mzi/detail/parallel.hpp"
#include "mzi/fock_oracle.hpp"
#include "mzi/interferometry.hpp"
#include "mzi/sensitivity.hpp"
#include "mzi/states.hpp"
#include "mzi/verify.hpp"

using namespace mzi;

namespace {

struct Outcome {
    std::string id;
    std::string label;
    bool pass = false;
    bool expected = true;  // what the documented analysis predicts
    std::string detail;
    bool sub = false;
};

template <class... Args>
std::string strf(const char* fmt, Args... args) {
    char buf[768];
    std::snprintf(buf, sizeof(buf), fmt, args...);
    return std::string(buf);
}

struct Fam {
    StateKind kind;
    int ops;
    const char* tag;
};

// kind x (ops <= 3) with the invalid plain/ops>0 cells dropped; the ops = 0
// added and subtracted entries coincide with plain and keep the grid honest.
const std::vector<Fam>& nine_families() {
    static const std::vector<Fam> f = {
        {StateKind::Plain, 0, "plain"},
        {StateKind::Added, 0, "added-0"},
        {StateKind::Added, 1, "added-1"},
        {StateKind::Added, 2, "added-2"},
        {StateKind::Added, 3, "added-3"},
        {StateKind::Subtracted, 0, "subtracted-0"},
        {StateKind::Subtracted, 1, "subtracted-1"},
        {StateKind::Subtracted, 2, "subtracted-2"},
        {StateKind::Subtracted, 3, "subtracted-3"},
    };
    return f;
}

Outcome run_c1() {
    const double tol = 1e-8;
    const double rs[] = {0.1, 0.3, 0.9};
    const double nzs[] = {0.0, 1.0, 4.0};
    const double phis[] = {0.0, 0.05, -0.05, 0.3, -0.3, 1.0, -1.0, 2.5, -2.5};
    std::vector<Scenario> scenarios;
    std::vector<std::string> tags;
    for (const Fam& f : nine_families())
        for (double r : rs)
            for (double nz : nzs) {
                scenarios.emplace_back(StateSpec(f.kind, r, f.ops), nz);
                tags.push_back(strf("%s r=%g nz=%g", f.tag, r, nz));
            }
    struct Slot {
        double residual = 0.0;
        std::string where, error;
    };
    std::vector<Slot> slots(scenarios.size());
    const auto t0 = std::chrono::steady_clock::now();
    detail::parallel_for(scenarios.size(), [&](size_t i) {
        try {
            const Scenario& sc = scenarios[i];
            auto cut = recommended_cutoffs(sc);
            TwoModeFockState in = build_input_state(sc, cut.first, cut.second);
            for (double phi : phis) {
                double oracle = parity_oracle(apply_interferometer(in, phi));
                double diff = std::fabs(oracle - parity_expectation(sc, phi));
                if (diff > slots[i].residual) {
                    slots[i].residual = diff;
                    slots[i].where = strf("%s phi=%g", tags[i].c_str(), phi);
                }
            }
        } catch (const std::exception& e) {
            slots[i].error = tags[i] + ": " + e.what();
        }
    });
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double worst = 0.0;
    std::string where, error;
    for (const Slot& s : slots) {
        if (!s.error.empty() && error.empty()) error = s.error;
        if (s.residual > worst) {
            worst = s.residual;
            where = s.where;
        }
    }
    const size_t points = scenarios.size() * (sizeof(phis) / sizeof(phis[0]));
    Outcome out{"1", "closed-form parity matches the Fock simulator", false, true, "", false};
    if (!error.empty()) {
        out.detail = "evaluation failed: " + error;
    } else {
        out.pass = worst <= tol;
        out.detail = strf("max |analytic - oracle| = %.3g at %s over %zu points, tol 1e-8, %.1f s",
                          worst, where.c_str(), points, secs);
    }
    return out;
}

Outcome run_c2() {
    const double band = 1e-3;  // |dphi * sqrt(F) - 1| via propagation at phi = 1e-5
    const double qtol = 1e-7;
    const double rs[] = {0.1, 0.3, 0.9};
    const double nzs[] = {1.0, 4.0, 16.0};
    std::vector<Scenario> scenarios;
    std::vector<std::string> tags;
    for (const Fam& f : nine_families())
        for (double r : rs)
            for (double nz : nzs) {
                scenarios.emplace_back(StateSpec(f.kind, r, f.ops), nz);
                tags.push_back(strf("%s r=%g nz=%g", f.tag, r, nz));
            }
    struct Slot {
        double band_dev = 0.0, qfi_res = 0.0;
        std::string error;
    };
    std::vector<Slot> slots(scenarios.size());
    detail::parallel_for(scenarios.size(), [&](size_t i) {
        try {
            const Scenario& sc = scenarios[i];
            const double qfi = quantum_fisher_information(sc);
            slots[i].band_dev = std::fabs(phase_uncertainty(sc, 1e-5) * std::sqrt(qfi) - 1.0);
            auto cut = recommended_cutoffs(sc);
            TwoModeFockState in = build_input_state(sc, cut.first, cut.second);
            slots[i].qfi_res = std::fabs(qfi - 4.0 * j2_variance_oracle(in));
        } catch (const std::exception& e) {
            slots[i].error = tags[i] + ": " + e.what();
        }
    });
    double worst_band = 0.0, worst_q = 0.0;
    std::string where_band, where_q, error;
    for (size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i].error.empty() && error.empty()) error = slots[i].error;
        if (slots[i].band_dev > worst_band) {
            worst_band = slots[i].band_dev;
            where_band = tags[i];
        }
        if (slots[i].qfi_res > worst_q) {
            worst_q = slots[i].qfi_res;
            where_q = tags[i];
        }
    }
    Outcome out{"2", "parity-based uncertainty saturates the Cramer-Rao bound", false, true, "",
                false};
    if (!error.empty()) {
        out.detail = "evaluation failed: " + error;
    } else {
        out.pass = worst_band <= band && worst_q <= qtol;
        out.detail = strf("max |dphi sqrt(F) - 1| = %.3g (%s, band 1e-3); "
                          "max |F - 4 Var(J2)| = %.3g (%s, tol 1e-7)",
                          worst_band, where_band.c_str(), worst_q, where_q.c_str());
    }
    return out;
}

Outcome run_c3() {
    const double tol = 1e-10;
    double worst = 0.0;
    std::string where;
    auto track = [&](double a, double b, double r, const char* what) {
        double d = std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
        if (d > worst) {
            worst = d;
            where = strf("%s at r=%.4f", what, r);
        }
    };
    const int samples = 200;
    for (int i = 0; i < samples; ++i) {
        const double r = 0.01 + (2.0 - 0.01) * double(i) / double(samples - 1);
        StateSpec add(StateKind::Added, r, 1);
        StateSpec sub(StateKind::Subtracted, r, 1);
        track(mean_photon_number(add), mean_photon_number(sub), r, "mean photons");
        track(second_moment_b2(add), second_moment_b2(sub), r, "<b^2>");
        Scenario sa(add, 4.0), ss(sub, 4.0);
        track(parity_expectation(sa, 0.3), parity_expectation(ss, 0.3), r, "parity(0.3)");
        track(parity_expectation(sa, 1.1), parity_expectation(ss, 1.1), r, "parity(1.1)");
        track(small_phi_parity_coeff(sa, Variant::SeriesConsistent),
              small_phi_parity_coeff(ss, Variant::SeriesConsistent), r, "series coeff");
        track(small_phi_parity_coeff(sa, Variant::Literal),
              small_phi_parity_coeff(ss, Variant::Literal), r, "tabulated coeff");
        track(quantum_fisher_information(sa), quantum_fisher_information(ss), r,
              "Fisher information");
        track(phase_uncertainty(sa, 0.05), phase_uncertainty(ss, 0.05), r, "dphi(0.05)");
        track(phase_uncertainty_zero_limit(sa, Variant::SeriesConsistent),
              phase_uncertainty_zero_limit(ss, Variant::SeriesConsistent), r, "dphi limit");
    }
    Outcome out{"3", "one addition and one subtraction give identical observables", worst <= tol,
                true, "", false};
    out.detail = strf("max scaled difference = %.3g (%s) over %d r samples in (0, 2], tol 1e-10",
                      worst, where.c_str(), samples);
    return out;
}

Outcome run_c4() {
    const double eq_tol = 1e-10;
    const double slack = 1e-12;
    const double third83 = 8.0 / 3.0;
    double lo_a = HUGE_VAL, hi_a = -HUGE_VAL, lo_s = HUGE_VAL, hi_s = -HUGE_VAL;
    double worst_eq = 0.0, worst_eq_r = 0.0;
    const int samples = 300;
    for (int i = 0; i < samples; ++i) {
        const double r = 0.01 + (3.0 - 0.01) * double(i) / double(samples - 1);
        const double na = mean_photon_number(StateSpec(StateKind::Added, r, 2));
        const double root = std::sqrt(1.0 + 12.0 * na);
        const double item_a =
            8.0 * (root + 1.0) * (root + 1.0) / (3.0 * (root - 1.0) * (root - 1.0));
        const double ch2 = std::cosh(r) * std::cosh(r);
        const double sh2 = std::sinh(r) * std::sinh(r);
        const double rform = 24.0 * ch2 * ch2 / ((3.0 * ch2 - 1.0) * (3.0 * ch2 - 1.0));
        const double item_s = 24.0 * sh2 * sh2 / ((3.0 * sh2 + 1.0) * (3.0 * sh2 + 1.0));
        lo_a = std::min(lo_a, item_a);
        hi_a = std::max(hi_a, item_a);
        lo_s = std::min(lo_s, item_s);
        hi_s = std::max(hi_s, item_s);
        const double item = small_phi_radical_item(StateSpec(StateKind::Added, r, 2));
        const double eq = std::fabs(item - rform);
        if (eq > worst_eq) {
            worst_eq = eq;
            worst_eq_r = r;
        }
    }
    const bool bounds = lo_a >= third83 - slack && hi_a <= 6.0 + slack && lo_s >= -slack &&
                        hi_s <= third83 + slack;
    Outcome out{"4", "small-phase radical items stay inside their windows", false, true, "",
                false};
    out.pass = bounds && worst_eq <= eq_tol;
    out.detail = strf("added item in [%.6f, %.6f] c [8/3, 6]; subtracted in [%.3g, %.6f] c "
                      "[0, 8/3]; max |moment-route item - closed form| = %.3g at r=%.3f, tol 1e-10",
                      lo_a, hi_a, lo_s, hi_s, worst_eq, worst_eq_r);
    return out;
}

Outcome run_c5() {
    const Fam fams[] = {
        {StateKind::Plain, 0, "plain"},           {StateKind::Added, 1, "added-1"},
        {StateKind::Added, 2, "added-2"},         {StateKind::Subtracted, 1, "subtracted-1"},
        {StateKind::Subtracted, 2, "subtracted-2"},
    };
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    std::string where_lo, where_hi;
    for (const Fam& f : fams) {
        Scenario sc(StateSpec(f.kind, 0.3, f.ops), 4.0);
        const double sigma = (f.ops % 2) ? -1.0 : 1.0;
        const double L = small_phi_parity_coeff(sc, Variant::SeriesConsistent);
        auto res = [&](double phi) {
            return std::fabs(parity_expectation(sc, phi) - sigma * (1.0 - L * phi * phi));
        };
        const double ratio = res(1e-2) / res(1e-3);
        if (ratio < lo) {
            lo = ratio;
            where_lo = f.tag;
        }
        if (ratio > hi) {
            hi = ratio;
            where_hi = f.tag;
        }
    }
    Outcome out{"5", "quadratic truncation error shrinks at fourth order", lo >= 5e3 && hi <= 2e4,
                true, "", false};
    out.detail = strf("residual ratio phi 1e-2 / 1e-3 in [%.0f (%s), %.0f (%s)], window [5e3, 2e4]",
                      lo, where_lo.c_str(), hi, where_hi.c_str());
    return out;
}

std::string seq_str(const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += strf(i ? " -> %.4g" : "%.4g", v[i]);
    return s;
}

std::vector<Outcome> run_c6() {
    std::vector<Outcome> subs;

    // peak-narrowing coefficient vs number of operations, r = 0.3, nz = 4
    {
        auto lambda_seq = [](StateKind kind) {
            std::vector<double> v;
            for (int m = 0; m <= 3; ++m)
                v.push_back(small_phi_parity_coeff(Scenario(StateSpec(kind, 0.3, m), 4.0),
                                                   Variant::SeriesConsistent));
            return v;
        };
        auto increasing = [](const std::vector<double>& v) {
            for (size_t i = 0; i + 1 < v.size(); ++i)
                if (!(v[i + 1] > v[i])) return false;
            return true;
        };
        std::vector<double> va = lambda_seq(StateKind::Added);
        std::vector<double> vs = lambda_seq(StateKind::Subtracted);
        subs.push_back({"6a-added", "fig2a: peak coefficient strictly increasing with additions",
                        increasing(va), true, seq_str(va), true});
        subs.push_back({"6a-subtracted",
                        "fig2a: peak coefficient strictly increasing with subtractions",
                        increasing(vs), false,
                        seq_str(vs) + " (the subtracted-port mean photon number is itself "
                                      "non-monotone in the subtraction count at fixed r)",
                        true});
    }

    // a phase window where addition beats both alternatives, all ports at mean 16
    {
        struct Curve {
            const char* tag;
            StateKind kind;
            int ops;
        };
        const Curve curves[] = {{"plain", StateKind::Plain, 0},
                                {"added-1", StateKind::Added, 1},
                                {"added-2", StateKind::Added, 2},
                                {"subtracted-1", StateKind::Subtracted, 1},
                                {"subtracted-2", StateKind::Subtracted, 2}};
        std::vector<Scenario> sc;
        for (const Curve& c : curves)
            sc.emplace_back(StateSpec(c.kind, solve_r_for_nbar(c.kind, c.ops, 16.0), c.ops), 16.0);
        double first = 0.0, last = 0.0;
        int wins = 0;
        const int n = 50;
        for (int j = 1; j <= n; ++j) {
            const double phi = 0.1 * double(j) / double(n);
            double dp[5];
            for (int c = 0; c < 5; ++c) dp[c] = phase_uncertainty(sc[c], phi);
            const double best_added = std::min(dp[1], dp[2]);
            const double best_other = std::min({dp[0], dp[3], dp[4]});
            if (best_added < best_other) {
                if (wins == 0) first = phi;
                last = phi;
                ++wins;
            }
        }
        Outcome o{"6b", "fig3b: a phase window exists where addition wins at mean 16", wins > 0,
                  true, "", true};
        o.detail = wins > 0 ? strf("addition beats plain and subtraction at %d of %d phases, "
                                   "phi in [%.4g, %.4g]",
                                   wins, n, first, last)
                            : "no winning phase found in (0, 0.1]";
        subs.push_back(o);
    }

    // containment between the Heisenberg and shot-noise references under an
    // even photon split between the ports
    {
        struct Curve {
            const char* tag;
            StateKind kind;
            int ops;
        };
        const Curve curves[] = {{"plain", StateKind::Plain, 0},
                                {"added-1", StateKind::Added, 1},
                                {"added-2", StateKind::Added, 2},
                                {"subtracted-1", StateKind::Subtracted, 1},
                                {"subtracted-2", StateKind::Subtracted, 2}};
        const int n = 25;
        int outside = 0, total = 0;
        std::string example;
        for (const Curve& c : curves) {
            for (int i = 0; i < n; ++i) {
                const double N = 4.0 * std::pow(200.0 / 4.0, double(i) / double(n - 1));
                const double half = N / 2.0;
                Scenario sc(StateSpec(c.kind, solve_r_for_nbar(c.kind, c.ops, half), c.ops), half);
                const double dp = phase_uncertainty(sc, 1e-4);
                const ClassicalLimits lim = classical_limits(N);
                ++total;
                if (dp < lim.hl || dp > lim.snl) {
                    ++outside;
                    if (example.empty())
                        example = strf("%s at total %.3g: dphi %.4g vs HL %.4g", c.tag, N, dp,
                                       lim.hl);
                }
            }
        }
        Outcome o{"6c", "fig5: curves stay inside [HL, SNL] under an even split", outside == 0,
                  false, "", true};
        o.detail = outside == 0
                       ? strf("all %d points contained", total)
                       : strf("%d of %d points outside; e.g. %s (an even split pushes the "
                              "Fisher bound 1/sqrt(N^2 + 1.5N) below the 1/N reference)",
                              outside, total, example.c_str());
        subs.push_back(o);
    }

    // addition vs subtraction at fixed r = 0.9, matched total photon number
    {
        double worst_ratio[2] = {0.0, 0.0};
        double last_loss[2] = {0.0, 0.0};
        bool all_below = true;
        const int n = 25;
        for (int k = 0; k < 2; ++k) {
            const int m = k + 2;
            StateSpec sa(StateKind::Added, 0.9, m);
            StateSpec ss(StateKind::Subtracted, 0.9, m);
            const double na = mean_photon_number(sa);
            const double ns = mean_photon_number(ss);
            for (int i = 0; i < n; ++i) {
                const double N = 12.0 * std::pow(200.0 / 12.0, double(i) / double(n - 1));
                const double dpa = phase_uncertainty(Scenario(sa, N - na), 1e-4);
                const double dps = phase_uncertainty(Scenario(ss, N - ns), 1e-4);
                worst_ratio[k] = std::max(worst_ratio[k], dpa / dps);
                if (!(dpa < dps)) {
                    all_below = false;
                    last_loss[k] = N;
                }
            }
        }
        Outcome o{"6d", "fig7: addition outperforms subtraction for m = 2, 3 at r = 0.9",
                  all_below, false, "", true};
        if (all_below)
            o.detail = strf("added below subtracted at every total in [12, 200], max dphi "
                            "ratio %.4f (m=2), %.4f (m=3)",
                            worst_ratio[0], worst_ratio[1]);
        else
            o.detail = strf("subtraction wins up to total %.1f (m=2) and %.1f (m=3), dphi "
                            "ratio added/subtracted up to %.3f and %.3f; at fixed r the added "
                            "port carries more photons, so at small totals it is left with "
                            "less coherent light",
                            last_loss[0], last_loss[1], worst_ratio[0], worst_ratio[1]);
        subs.push_back(o);
    }

    int hold = 0;
    for (const Outcome& s : subs) hold += s.pass ? 1 : 0;
    bool all = hold == int(subs.size());
    Outcome main_line{"6", "figure-structure claims", all, false, "", false};
    main_line.detail =
        strf("%d of %zu structural claims hold; red entries analyzed in README", hold,
             subs.size());
    std::vector<Outcome> out;
    out.push_back(main_line);
    out.insert(out.end(), subs.begin(), subs.end());
    return out;
}

Outcome run_c7() {
    VerifyReport rep = verify_consistency("quick");
    const CheckResult* adj = nullptr;
    for (const CheckResult& c : rep.checks)
        if (c.name == "variant_adjudication") adj = &c;
    Outcome out{"7", "the verification suite adjudicates the two closed-form flavors", false, true,
                "", false};
    if (!adj) {
        out.detail = "no variant_adjudication finding in the quick suite";
        return out;
    }
    const bool mentions = adj->detail.find("saturates the Cramer-Rao bound") != std::string::npos;
    out.pass = adj->informational && mentions;
    out.detail = adj->detail;
    if (!rep.all_pass) out.detail += " [note: quick suite reported failures elsewhere]";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    auto want = [&](int n) { return only == 0 || only == n; };
    std::vector<Outcome> outs;
    if (want(1)) outs.push_back(run_c1());
    if (want(2)) outs.push_back(run_c2());
    if (want(3)) outs.push_back(run_c3());
    if (want(4)) outs.push_back(run_c4());
    if (want(5)) outs.push_back(run_c5());
    if (want(6)) {
        std::vector<Outcome> six = run_c6();
        outs.insert(outs.end(), six.begin(), six.end());
    }
    if (want(7)) outs.push_back(run_c7());

    bool documented_red = false;
    for (const Outcome& o : outs) {
        const char* verdict = o.pass ? "PASS" : "FAIL";
        const char* tag = (!o.pass && !o.expected) ? " [expected red]" : "";
        if (!o.pass && !o.expected) documented_red = true;
        if (o.sub)
            std::printf("    [%s] %s: %s%s\n", verdict, o.label.c_str(), o.detail.c_str(), tag);
        else
            std::printf("[%s] criterion %s: %s (%s)%s\n", verdict, o.id.c_str(), o.label.c_str(),
                        o.detail.c_str(), tag);
    }

    std::vector<std::string> mismatches;
    for (const Outcome& o : outs)
        if (o.pass != o.expected)
            mismatches.push_back(o.label + (o.pass ? " passed but was documented red"
                                                   : " failed"));
    if (documented_red)
        std::printf("note: [expected red] entries are deliberate; the formulas involved are "
                    "cross-checked elsewhere, the structural claim itself does not hold at "
                    "these parameters.\n");
    if (mismatches.empty()) {
        std::printf("RESULT: all outcomes match the documented expectations\n");
        return 0;
    }
    std::printf("RESULT: %zu outcome(s) deviate from the documented expectations:\n",
                mismatches.size());
    for (const std::string& m : mismatches) std::printf("  - %s\n", m.c_str());
    return 1;
}
