#include "dll/lindblad/master.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "dll/core/errors.hpp"

namespace dll::lindblad {

namespace {

// Basis index = 2 * (qubit excited) + (photon present): g0, g1, e0, e1.
Matrix4c cavity_annihilation() {
    Matrix4c c = Matrix4c::Zero();
    c(0, 1) = 1.0;  // |g1> -> |g0>
    c(2, 3) = 1.0;  // |e1> -> |e0>
    return c;
}

Matrix4c sigma_minus() {
    Matrix4c s = Matrix4c::Zero();
    s(0, 2) = 1.0;  // |e0> -> |g0>
    s(1, 3) = 1.0;  // |e1> -> |g1>
    return s;
}

Matrix4c sigma_z() {
    Matrix4c s = Matrix4c::Zero();
    s(0, 0) = -1.0;
    s(1, 1) = -1.0;
    s(2, 2) = 1.0;
    s(3, 3) = 1.0;
    return s;
}

struct Generator {
    std::vector<Matrix4c> jump;         // sqrt-rate-free operators with rate > 0
    std::vector<Matrix4c> jump_adjoint;
    std::vector<double> rate;
    Matrix4c damping = Matrix4c::Zero();  // sum rate/2 L^+ L
    Matrix4c hamiltonian = Matrix4c::Zero();

    Matrix4c apply(const Matrix4c& rho) const {
        const std::complex<double> i_unit(0.0, 1.0);
        Matrix4c d = -i_unit * (hamiltonian * rho - rho * hamiltonian);
        for (std::size_t n = 0; n < jump.size(); ++n)
            d.noalias() += rate[n] * (jump[n] * rho * jump_adjoint[n]);
        d.noalias() -= damping * rho;
        d.noalias() -= rho * damping;
        return d;
    }
};

Generator make_generator(const CollapseSet& collapse, const Matrix4c& hamiltonian) {
    Generator gen;
    gen.hamiltonian = hamiltonian;
    for (const Collapse& c : collapse) {
        if (c.rate < 0) throw std::invalid_argument("collapse rate must be non-negative");
        if (c.rate == 0) continue;
        gen.jump.push_back(c.op);
        gen.jump_adjoint.push_back(c.op.adjoint());
        gen.rate.push_back(c.rate);
        gen.damping += 0.5 * c.rate * (c.op.adjoint() * c.op);
    }
    return gen;
}

void rk4_step(const Generator& gen, Matrix4c& rho, double dt) {
    const Matrix4c k1 = gen.apply(rho);
    const Matrix4c k2 = gen.apply(rho + 0.5 * dt * k1);
    const Matrix4c k3 = gen.apply(rho + 0.5 * dt * k2);
    const Matrix4c k4 = gen.apply(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

double DensityMatrix::trace_error() const { return std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag()); }

double DensityMatrix::hermiticity_error() const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(0.5 * (rho + rho.adjoint()));
    return solver.eigenvalues().minCoeff();
}

DensityMatrix initial_state(double n_th) {
    if (n_th < 0 || n_th > 1) throw std::invalid_argument("initial_state: n_th must be in [0,1]");
    DensityMatrix state;
    state.rho(1, 1) = 1.0 - n_th;  // |g1>
    state.rho(3, 3) = n_th;        // |e1>
    return state;
}

CollapseSet build_collapse_set(const DeviceParams& p, double kappa_dd, bool include_reverse) {
    const Matrix4c c = cavity_annihilation();
    const Matrix4c sm = sigma_minus();
    const Matrix4c sp = sm.adjoint();
    CollapseSet set;
    set.push_back({c, p.kappa0});
    set.push_back({sm, p.gamma});
    set.push_back({sp, p.gamma * p.n_th});
    set.push_back({sigma_z(), p.gamma_phi / 2.0});
    set.push_back({c * sp, kappa_dd});
    if (include_reverse) set.push_back({c.adjoint() * sm, kappa_dd});
    return set;
}

std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const CollapseSet& collapse,
                                  std::span<const double> times, const EvolveOptions& opts) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0 || (i > 0 && times[i] < times[i - 1]))
            throw std::invalid_argument("evolve: times must be sorted and non-negative");
    }
    const Generator gen = make_generator(collapse, opts.hamiltonian);

    double dt = opts.dt_override;
    if (dt <= 0) {
        const double span = times.empty() ? 0.0 : times.back();
        double max_rate = 0.0;
        for (const Collapse& c : collapse) max_rate = std::max(max_rate, c.rate);
        dt = span > 0 ? span / 1000.0 : 1.0;
        if (max_rate > 0) dt = std::min(dt, 1.0 / (100.0 * max_rate));
    }

    std::vector<DensityMatrix> out;
    out.reserve(times.size());
    Matrix4c rho = rho0.rho;
    double t = 0.0;
    for (double target : times) {
        const double gap = target - t;
        if (gap > 0) {
            const auto steps = static_cast<long long>(std::ceil(gap / dt - 1e-12));
            const double h = gap / static_cast<double>(steps);
            for (long long s = 0; s < steps; ++s) rk4_step(gen, rho, h);
        }
        t = target;
        DensityMatrix state;
        state.rho = rho;
        const double drift = state.trace_error();
        if (drift > opts.drift_tolerance) {
            std::ostringstream msg;
            msg << "evolve: trace drift " << drift << " at t = " << t
                << " exceeds tolerance " << opts.drift_tolerance
                << "; retry with a smaller step (dt < " << dt / 4.0 << ")";
            throw NumericalError(msg.str());
        }
        out.push_back(state);
    }
    return out;
}

double excited_population(const DensityMatrix& state) {
    return state.rho(2, 2).real() + state.rho(3, 3).real();
}

double photon_population(const DensityMatrix& state) {
    return state.rho(1, 1).real() + state.rho(3, 3).real();
}

double fit_kappa_dd_to_trace(std::span<const double> observed, std::span<const double> times,
                             const DeviceParams& params, bool include_reverse) {
    if (observed.size() != times.size())
        throw std::invalid_argument("fit_kappa_dd_to_trace: observed and times differ in length");
    if (observed.empty()) throw std::invalid_argument("fit_kappa_dd_to_trace: empty trace");

    const DensityMatrix rho0 = initial_state(params.n_th);
    auto ssr = [&](double kappa_dd) {
        const auto states = evolve(rho0, build_collapse_set(params, kappa_dd, include_reverse), times);
        double sum = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double r = excited_population(states[i]) - observed[i];
            sum += r * r;
        }
        return sum;
    };

    // Golden-section search on [0, 1000] s^-1.
    constexpr double inv_phi = 0.6180339887498949;
    double a = 0.0, b = 1000.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = ssr(x1);
    double f2 = ssr(x2);
    constexpr double tol = 2e-3;
    constexpr int max_iter = 80;
    int iter = 0;
    while (b - a > tol) {
        if (++iter > max_iter)
            throw NumericalError("fit_kappa_dd_to_trace: golden-section search failed to converge");
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = ssr(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = ssr(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace dll::lindblad
