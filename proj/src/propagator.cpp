#include "boxqd/propagator.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <fftw3.h>

#include "boxqd/errors.hpp"

namespace boxqd {
namespace {

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_real(n)) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    double* data;
};

// FFTW planning is not thread-safe; execution through fftw_execute_r2r on
// fresh fftw_alloc'd arrays is. Plans are cached per size and never freed.
fftw_plan dst1_plan(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, fftw_plan> plans;
    std::lock_guard lock(mu);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    FftwBuffer in(n), out(n);
    fftw_plan p = fftw_plan_r2r_1d(static_cast<int>(n), in.data, out.data, FFTW_RODFT00, FFTW_ESTIMATE);
    if (p == nullptr) throw Error("FFTW failed to plan a DST-I of size " + std::to_string(n));
    plans.emplace(n, p);
    return p;
}

// y = scale * DST-I(v), FFTW convention y_k = 2 sum_j v_j sin(pi (j+1)(k+1) / (n+1)).
Eigen::VectorXcd dst1(const Eigen::VectorXcd& v, double scale) {
    const std::size_t n = static_cast<std::size_t>(v.size());
    fftw_plan plan = dst1_plan(n);
    FftwBuffer re_in(n), im_in(n), re_out(n), im_out(n);
    for (std::size_t i = 0; i < n; ++i) {
        re_in.data[i] = v[static_cast<Eigen::Index>(i)].real();
        im_in.data[i] = v[static_cast<Eigen::Index>(i)].imag();
    }
    fftw_execute_r2r(plan, re_in.data, re_out.data);
    fftw_execute_r2r(plan, im_in.data, im_out.data);
    Eigen::VectorXcd y(v.size());
    for (std::size_t i = 0; i < n; ++i) {
        y[static_cast<Eigen::Index>(i)] = cplx(re_out.data[i], im_out.data[i]) * scale;
    }
    return y;
}

}  // namespace

SpectralCoeffs to_spectral(const WaveFunction& wf) {
    const Grid& g = wf.grid();
    const double scale = 0.5 * std::sqrt(2.0 / g.length()) * g.dx();
    return SpectralCoeffs{g, dst1(wf.amps(), scale)};
}

WaveFunction from_spectral(const SpectralCoeffs& sc) {
    const double scale = 0.5 * std::sqrt(2.0 / sc.grid.length());
    return WaveFunction(sc.grid, dst1(sc.coeffs, scale));
}

WaveFunction sine_mode(const Grid& grid, std::size_t n) {
    const double norm = std::sqrt(2.0 / grid.length());
    const double k = static_cast<double>(n) * std::numbers::pi / grid.length();
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(grid.n_points()));
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        amps[static_cast<Eigen::Index>(i)] = norm * std::sin(k * grid.x(i));
    }
    return WaveFunction(grid, std::move(amps));
}

double mode_energy(std::size_t n, const Grid& grid, const PhysicalParams& params) {
    if (n < 1 || n > grid.n_points()) {
        throw ConfigError("n", "mode index " + std::to_string(n) + " outside 1.." +
                                   std::to_string(grid.n_points()));
    }
    const double k = static_cast<double>(n) * std::numbers::pi / grid.length();
    return params.hbar * params.hbar * k * k / (2.0 * params.mass);
}

double mean_energy(const SpectralCoeffs& sc, const PhysicalParams& params) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < sc.coeffs.size(); ++i) {
        e += mode_energy(static_cast<std::size_t>(i + 1), sc.grid, params) * std::norm(sc.coeffs[i]);
    }
    return e;
}

WaveFunction evolve(const WaveFunction& wf, double t, const PhysicalParams& params) {
    if (t == 0.0) return wf;
    SpectralCoeffs sc = to_spectral(wf);
    for (Eigen::Index i = 0; i < sc.coeffs.size(); ++i) {
        const double e = mode_energy(static_cast<std::size_t>(i + 1), sc.grid, params);
        sc.coeffs[i] *= std::polar(1.0, -e * t / params.hbar);
    }
    return from_spectral(sc);
}

double reversal_fidelity(const WaveFunction& wf0, double t, const PhysicalParams& params) {
    return fidelity(wf0, evolve(evolve(wf0, t, params), -t, params));
}

double revival_time(double length, const PhysicalParams& params) {
    return 4.0 * params.mass * length * length / (std::numbers::pi * params.hbar);
}

}  // namespace boxqd
