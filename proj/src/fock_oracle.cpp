#include "mzi/fock_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace mzi {

namespace {

constexpr double kSectorTailBudget = 1e-13;  // probability allowed outside retained sectors
constexpr double kEdgeBudget = 1e-9;         // probability allowed in the top 10% of a mode

// i^j for j >= 0
std::complex<double> ipow(int j) {
    switch (j & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// Eigensystem of the sector generator. Within the total-photon-number
// sector N, conjugating the beam-split generator by diag(i^j) leaves the
// real symmetric tridiagonal matrix T with zero diagonal and bonds
// t_j = sqrt((j+1)(N-j))/2; the full rotation is then
//   exp(-i phi J2) = D V diag(exp(i phi w)) V^T D^+,  T = V diag(w) V^T.
struct SectorEigen {
    Eigen::VectorXd w;
    Eigen::MatrixXd v;
};

const SectorEigen& sector_eigen(int n_total) {
    static std::mutex mu;
    static std::map<int, SectorEigen> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n_total);
    if (it != cache.end()) return it->second;

    const int dim = n_total + 1;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd sub(std::max(dim - 1, 0));
    for (int j = 0; j + 1 < dim; ++j)
        sub[j] = 0.5 * std::sqrt(double(j + 1) * double(n_total - j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("sector_eigen: eigensolver failed for sector " +
                                 std::to_string(n_total));
    SectorEigen se{es.eigenvalues(), es.eigenvectors()};
    return cache.emplace(n_total, std::move(se)).first->second;
}

} // namespace

double TwoModeFockState::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

double TwoModeFockState::edge_mass() const {
    const int a0 = dim_a - std::max(1, dim_a / 10);
    const int b0 = dim_b - std::max(1, dim_b / 10);
    double s = 0.0;
    for (int n = 0; n < dim_a; ++n)
        for (int m = 0; m < dim_b; ++m)
            if (n >= a0 || m >= b0) s += std::norm(at(n, m));
    return s;
}

std::pair<int, int> recommended_cutoffs(const Scenario& sc) {
    return {recommended_cutoff(sc.nz, 0), recommended_cutoff(sc.squeezed)};
}

TwoModeFockState build_input_state(const Scenario& sc, int cutoff_a, int cutoff_b) {
    if (cutoff_a < 0 || cutoff_b < 0)
        throw std::invalid_argument("build_input_state: negative cutoff");

    // coherent amplitudes |z|^n e^{i n theta} e^{-nz/2} / sqrt(n!)
    std::vector<double> mag(size_t(cutoff_a) + 1);
    mag[0] = std::exp(-0.5 * sc.nz);
    for (int n = 0; n < cutoff_a; ++n)
        mag[size_t(n) + 1] = mag[size_t(n)] * std::sqrt(sc.nz / double(n + 1));

    std::vector<double> b = fock_amplitudes(sc.squeezed, cutoff_b);

    TwoModeFockState st;
    st.dim_a = cutoff_a + 1;
    st.dim_b = cutoff_b + 1;
    st.amps.resize(size_t(st.dim_a) * size_t(st.dim_b));
    for (int n = 0; n < st.dim_a; ++n) {
        std::complex<double> ca = std::polar(mag[size_t(n)], double(n) * sc.theta);
        for (int m = 0; m < st.dim_b; ++m) st.at(n, m) = ca * b[size_t(m)];
    }

    const double ns = st.norm_sq();
    if (std::fabs(ns - 1.0) > 1e-10) {
        // the only possible deficit is the coherent tail; fold it back in
        const double inv = 1.0 / std::sqrt(ns);
        for (auto& a : st.amps) a *= inv;
    }

    const double edge = st.edge_mass();
    if (edge > kEdgeBudget) {
        auto [ra, rb] = recommended_cutoffs(sc);
        throw TruncationError("build_input_state: " + std::to_string(edge) +
                                  " probability in the top decile of the grid",
                              std::max(ra, rb));
    }
    return st;
}

TwoModeFockState apply_interferometer(const TwoModeFockState& state, double phi) {
    const int da = state.dim_a, db = state.dim_b;
    const int n_top = da + db - 2;

    std::vector<double> mass(size_t(n_top) + 1, 0.0);
    for (int n = 0; n < da; ++n)
        for (int m = 0; m < db; ++m) mass[size_t(n + m)] += std::norm(state.at(n, m));

    // keep whole sectors until the remainder is negligible, then widen the
    // grid to a square so no retained sector is clipped mid-rotation
    int n_max = n_top;
    double dropped = 0.0;
    while (n_max > 0 && dropped + mass[size_t(n_max)] <= kSectorTailBudget) {
        dropped += mass[size_t(n_max)];
        --n_max;
    }

    TwoModeFockState out;
    out.dim_a = out.dim_b = n_max + 1;
    out.amps.assign(size_t(out.dim_a) * size_t(out.dim_b), {0.0, 0.0});

    Eigen::VectorXcd u, y;
    for (int nt = 0; nt <= n_max; ++nt) {
        if (mass[size_t(nt)] == 0.0) continue;
        const int dim = nt + 1;
        u.resize(dim);
        for (int j = 0; j < dim; ++j) {
            const int m = nt - j;
            std::complex<double> c =
                (j < da && m < db) ? state.at(j, m) : std::complex<double>(0.0, 0.0);
            u[j] = std::conj(ipow(j)) * c;  // D^+ v
        }
        const SectorEigen& se = sector_eigen(nt);
        y = se.v.transpose() * u;
        for (int j = 0; j < dim; ++j) y[j] *= std::polar(1.0, phi * se.w[j]);
        u = se.v * y;
        for (int j = 0; j < dim; ++j) out.at(j, nt - j) = ipow(j) * u[j];
    }
    return out;
}

double parity_oracle(const TwoModeFockState& state) {
    double s = 0.0;
    for (int n = 0; n < state.dim_a; ++n)
        for (int m = 0; m < state.dim_b; ++m) {
            const double p = std::norm(state.at(n, m));
            s += (m % 2 == 0) ? p : -p;
        }
    return s;
}

double j2_variance_oracle(const TwoModeFockState& state) {
    const int da = state.dim_a, db = state.dim_b;
    // J2 psi on a grid enlarged by one so no component is clipped
    TwoModeFockState j;
    j.dim_a = da + 1;
    j.dim_b = db + 1;
    j.amps.assign(size_t(j.dim_a) * size_t(j.dim_b), {0.0, 0.0});
    const std::complex<double> inv2i(0.0, -0.5);  // 1/(2i)
    for (int n = 0; n < j.dim_a; ++n)
        for (int m = 0; m < j.dim_b; ++m) {
            std::complex<double> acc(0.0, 0.0);
            if (n >= 1 && m + 1 < db && n - 1 < da)
                acc += std::sqrt(double(n) * double(m + 1)) * state.at(n - 1, m + 1);
            if (m >= 1 && n + 1 < da && m - 1 < db)
                acc -= std::sqrt(double(n + 1) * double(m)) * state.at(n + 1, m - 1);
            j.at(n, m) = inv2i * acc;
        }

    double second = 0.0;
    std::complex<double> first(0.0, 0.0);
    for (int n = 0; n < da; ++n)
        for (int m = 0; m < db; ++m) first += std::conj(state.at(n, m)) * j.at(n, m);
    for (const auto& a : j.amps) second += std::norm(a);
    return second - std::norm(first);
}

} // namespace mzi
