#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzi/dual.hpp"

namespace mzi {

// n! as a double. Exact up to 22!, correctly rounded beyond; the jet code
// never needs more than a few tens.
inline double factorial(int n) {
    assert(n >= 0 && n <= 170);
    static const std::vector<double> table = [] {
        std::vector<double> t(171);
        t[0] = 1.0;
        for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * double(i);
        return t;
    }();
    return table[size_t(n)];
}

// Legendre polynomial P_n(x) by the three-term recurrence
//   (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}.
inline double legendre_p(int n, double x) {
    if (n < 0) throw std::invalid_argument("legendre_p: negative degree");
    if (n == 0) return 1.0;
    double pm = 1.0, p = x;
    for (int m = 1; m < n; ++m) {
        double pn = ((2 * m + 1) * x * p - m * pm) / (m + 1);
        pm = p;
        p = pn;
    }
    return p;
}

// (-i)^n P_n(i s), which is real for real s. Substituting x = i s into the
// Legendre recurrence and stripping the phase gives
//   (n+1) Q_{n+1} = (2n+1) s Q_n + n Q_{n-1},  Q_0 = 1, Q_1 = s,
// with all coefficients positive, so Q_n(s) > 0 for s > 0 and the
// evaluation involves no cancellation.
inline double legendre_p_imag(int n, double s) {
    if (n < 0) throw std::invalid_argument("legendre_p_imag: negative degree");
    if (n == 0) return 1.0;
    double qm = 1.0, q = s;
    for (int m = 1; m < n; ++m) {
        double qn = ((2 * m + 1) * s * q + m * qm) / (m + 1);
        qm = q;
        q = qn;
    }
    return q;
}

// Complex number over an arbitrary scalar (double, Dual, nested Dual).
// Only the ring operations are needed; transcendental functions of complex
// arguments never appear because the exponentials are expanded as jets.
template <class S>
struct Cplx {
    S re{};
    S im{};

    Cplx() = default;
    Cplx(S r) : re(std::move(r)) {}
    Cplx(S r, S i) : re(std::move(r)), im(std::move(i)) {}

    Cplx operator-() const { return Cplx(-re, -im); }
    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
};

template <class S> Cplx<S> operator+(Cplx<S> a, const Cplx<S>& b) { a += b; return a; }
template <class S> Cplx<S> operator-(const Cplx<S>& a, const Cplx<S>& b) { return Cplx<S>(a.re - b.re, a.im - b.im); }
template <class S> Cplx<S> operator*(const Cplx<S>& a, const Cplx<S>& b) {
    return Cplx<S>(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
template <class S> Cplx<S> operator*(const Cplx<S>& a, double c) { return Cplx<S>(a.re * c, a.im * c); }
template <class S> Cplx<S> operator*(double c, const Cplx<S>& a) { return a * c; }

template <class S> bool all_finite(const Cplx<S>& z) { return all_finite(z.re) && all_finite(z.im); }
template <class S> double leading_value(const Cplx<S>& z) { return leading_value(z.re); }

// Coefficients of a quadratic polynomial in two formal variables h and g
// with no constant term:
//   q(h, g) = lin_h h + lin_g g + cross h g + sq_h h^2 + sq_g g^2.
template <class S>
struct QuadraticForm {
    S lin_h{};
    S lin_g{};
    S cross{};
    S sq_h{};
    S sq_g{};
};

// Truncated bivariate power series ("jet"): a dense grid of Taylor
// coefficients c[i][j] of h^i g^j, 0 <= i <= order_h, 0 <= j <= order_g.
// Arithmetic is carried out in the quotient ring, i.e. products silently
// drop terms beyond the retained orders, which is exactly what makes the
// finite exp() expansion below exact for the retained coefficients.
template <class S>
class BivariateJet {
public:
    BivariateJet(int order_h, int order_g)
        : oh_(order_h), og_(order_g), c_(size_t(order_h + 1) * size_t(order_g + 1)) {
        if (order_h < 0 || order_g < 0)
            throw std::invalid_argument("BivariateJet: negative truncation order");
    }

    static BivariateJet unit(int order_h, int order_g) {
        BivariateJet j(order_h, order_g);
        j.at(0, 0) = S(1.0);
        return j;
    }

    int order_h() const { return oh_; }
    int order_g() const { return og_; }

    S& at(int i, int j) {
        assert(i >= 0 && i <= oh_ && j >= 0 && j <= og_);
        return c_[size_t(i) * size_t(og_ + 1) + size_t(j)];
    }
    const S& at(int i, int j) const {
        assert(i >= 0 && i <= oh_ && j >= 0 && j <= og_);
        return c_[size_t(i) * size_t(og_ + 1) + size_t(j)];
    }

    BivariateJet& operator+=(const BivariateJet& o) {
        assert(oh_ == o.oh_ && og_ == o.og_);
        for (size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
        return *this;
    }

    BivariateJet& scale(double f) {
        for (S& v : c_) v = v * f;
        return *this;
    }

    // truncated product
    BivariateJet operator*(const BivariateJet& o) const {
        assert(oh_ == o.oh_ && og_ == o.og_);
        BivariateJet out(oh_, og_);
        for (int i = 0; i <= oh_; ++i)
            for (int j = 0; j <= og_; ++j) {
                const S& a = at(i, j);
                for (int p = 0; i + p <= oh_; ++p)
                    for (int q = 0; j + q <= og_; ++q)
                        out.at(i + p, j + q) += a * o.at(p, q);
            }
        return out;
    }

private:
    int oh_, og_;
    std::vector<S> c_;
};

// exp of the quadratic form as a jet. Because q has no constant term, q^m
// contains no monomial of combined degree below m, so the series
//   exp(q) = sum_m q^m / m!
// terminates exactly at m = order_h + order_g within the retained grid.
template <class S>
BivariateJet<S> jet_exp_quadratic(const QuadraticForm<S>& q, int order_h, int order_g) {
    if (!all_finite(q.lin_h) || !all_finite(q.lin_g) || !all_finite(q.cross) ||
        !all_finite(q.sq_h) || !all_finite(q.sq_g))
        throw std::invalid_argument("jet_exp_quadratic: non-finite coefficient");

    BivariateJet<S> poly(order_h, order_g);
    if (order_h >= 1) poly.at(1, 0) = q.lin_h;
    if (order_g >= 1) poly.at(0, 1) = q.lin_g;
    if (order_h >= 1 && order_g >= 1) poly.at(1, 1) = q.cross;
    if (order_h >= 2) poly.at(2, 0) = q.sq_h;
    if (order_g >= 2) poly.at(0, 2) = q.sq_g;

    BivariateJet<S> acc = BivariateJet<S>::unit(order_h, order_g);
    BivariateJet<S> term = acc;
    const int mmax = order_h + order_g;
    for (int m = 1; m <= mmax; ++m) {
        term = term * poly;
        term.scale(1.0 / double(m));
        acc += term;
    }
    return acc;
}

// d^{k+l} / dh^k dg^l at h = g = 0, i.e. k! l! times the (k, l) coefficient.
template <class S>
S jet_mixed_derivative(const BivariateJet<S>& jet, int k, int l) {
    if (k < 0 || l < 0 || k > jet.order_h() || l > jet.order_g())
        throw std::out_of_range("jet_mixed_derivative: derivative order " + std::to_string(k) +
                                "," + std::to_string(l) + " outside truncation orders " +
                                std::to_string(jet.order_h()) + "," + std::to_string(jet.order_g()));
    return jet.at(k, l) * (factorial(k) * factorial(l));
}

} // namespace mzi
