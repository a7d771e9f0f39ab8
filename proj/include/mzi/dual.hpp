#pragma once

#include <cmath>
#include <utility>

namespace mzi {

// Forward-mode scalar: carries a value together with its derivative with
// respect to one seed variable. All arithmetic and the elementary functions
// below propagate the slope exactly, so derivatives obtained this way are
// free of finite-difference step error. Nesting, as in Dual<Dual<double>>,
// yields second derivatives.
template <class T>
struct Dual {
    T val{};
    T dot{};

    Dual() = default;
    Dual(double v) : val(v), dot() {}
    Dual(T v, T d) : val(std::move(v)), dot(std::move(d)) {}

    // independent variable: d/dx x = 1
    static Dual seed(T v) { return Dual(std::move(v), T(1.0)); }

    Dual operator-() const { return Dual(-val, -dot); }

    Dual& operator+=(const Dual& o) { val += o.val; dot += o.dot; return *this; }
    Dual& operator-=(const Dual& o) { val -= o.val; dot -= o.dot; return *this; }
};

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { a += b; return a; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { a -= b; return a; }

template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return Dual<T>(a.val * b.val, a.val * b.dot + a.dot * b.val);
}

template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T q = a.val / b.val;
    return Dual<T>(q, (a.dot - q * b.dot) / b.val);
}

// mixed forms with plain constants
template <class T> Dual<T> operator+(Dual<T> a, double c) { a.val += T(c); return a; }
template <class T> Dual<T> operator+(double c, Dual<T> a) { a.val += T(c); return a; }
template <class T> Dual<T> operator-(Dual<T> a, double c) { a.val -= T(c); return a; }
template <class T> Dual<T> operator-(double c, const Dual<T>& a) { return Dual<T>(T(c) - a.val, -a.dot); }
template <class T> Dual<T> operator*(const Dual<T>& a, double c) { return Dual<T>(a.val * c, a.dot * c); }
template <class T> Dual<T> operator*(double c, const Dual<T>& a) { return a * c; }
template <class T> Dual<T> operator/(const Dual<T>& a, double c) { return Dual<T>(a.val / c, a.dot / c); }
template <class T> Dual<T> operator/(double c, const Dual<T>& a) {
    T q = T(c) / a.val;
    return Dual<T>(q, -(q * a.dot) / a.val);
}

template <class T> Dual<T> sin(const Dual<T>& x) {
    using std::sin; using std::cos;
    return Dual<T>(sin(x.val), cos(x.val) * x.dot);
}

template <class T> Dual<T> cos(const Dual<T>& x) {
    using std::sin; using std::cos;
    return Dual<T>(cos(x.val), -(sin(x.val) * x.dot));
}

template <class T> Dual<T> exp(const Dual<T>& x) {
    using std::exp;
    T e = exp(x.val);
    return Dual<T>(e, e * x.dot);
}

template <class T> Dual<T> sqrt(const Dual<T>& x) {
    using std::sqrt;
    T s = sqrt(x.val);
    return Dual<T>(s, x.dot / (2.0 * s));
}

// innermost value, for tolerance checks on nested types
inline double leading_value(double x) { return x; }
template <class T> double leading_value(const Dual<T>& x) { return leading_value(x.val); }

inline bool all_finite(double x) { return std::isfinite(x); }
inline bool all_finite(long double x) { return std::isfinite(x); }
template <class T> bool all_finite(const Dual<T>& x) { return all_finite(x.val) && all_finite(x.dot); }

} // namespace mzi
