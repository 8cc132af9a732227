#include "ellwave/scalar.hpp"

#include <cmath>
#include <stdexcept>

#include "ellwave/elliptic.hpp"

namespace ellwave {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

double WaveBackground::amplitude() const { return mu * std::pow(2.0 / lambda, 0.25); }

double WaveBackground::mass_squared() const { return mu * mu * std::sqrt(lambda / 2.0); }

double WaveBackground::mass() const { return std::sqrt(mass_squared()); }

double WaveBackground::phase(const FourVector& x) const { return minkowski_dot(p, x) + theta; }

double WaveBackground::dispersion_violation() const {
    return std::abs(minkowski_dot(p, p) - mass_squared());
}

WaveBackground make_background(double mu, double lambda,
                               const std::array<double, 3>& direction, double boost) {
    if (!(mu > 0.0)) throw std::invalid_argument("make_background: mu must be > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("make_background: lambda must be > 0");
    if (!(boost >= 0.0 && boost < 1.0)) throw std::invalid_argument("make_background: boost must be in [0, 1)");

    WaveBackground bg;
    bg.mu = mu;
    bg.lambda = lambda;
    bg.theta = elliptic_K_i();

    const double M = std::sqrt(mu * mu * std::sqrt(lambda / 2.0));
    if (boost == 0.0) {
        bg.p = FourVector{M, 0.0, 0.0, 0.0};
        return bg;
    }
    const double norm = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                                  direction[2] * direction[2]);
    if (!(norm > 0.0)) throw std::invalid_argument("make_background: direction must be nonzero when boosted");
    const double gamma = 1.0 / std::sqrt(1.0 - boost * boost);
    const double p0 = gamma * M;
    const double ps = gamma * M * boost / norm;
    bg.p = FourVector{p0, ps * direction[0], ps * direction[1], ps * direction[2]};
    return bg;
}

double phi0(const WaveBackground& bg, const FourVector& x) {
    return bg.amplitude() * jacobi_i(bg.phase(x)).sn;
}

double phi_h(const WaveBackground& bg, const FourVector& x) {
    const EllipticValue e = jacobi_i(bg.phase(x));
    return bg.amplitude() * e.cn * e.dn;
}

double phi0_at_phase(const WaveBackground& bg, double xi) {
    return bg.amplitude() * jacobi_i(xi + bg.theta).sn;
}

double phi_h_at_phase(const WaveBackground& bg, double xi) {
    const EllipticValue e = jacobi_i(xi + bg.theta);
    return bg.amplitude() * e.cn * e.dn;
}

double phi0_ode_residual(const WaveBackground& bg, double xi, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("phi0_ode_residual: h must be > 0");
    const double p2 = minkowski_dot(bg.p, bg.p);
    const double f0 = phi0_at_phase(bg, xi);
    const double fp = phi0_at_phase(bg, xi + h);
    const double fm = phi0_at_phase(bg, xi - h);
    return p2 * (fp - 2.0 * f0 + fm) / (h * h) + bg.lambda * f0 * f0 * f0;
}

double phi_h_ode_residual(const WaveBackground& bg, double xi, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("phi_h_ode_residual: h must be > 0");
    const double p2 = minkowski_dot(bg.p, bg.p);
    const double f0 = phi_h_at_phase(bg, xi);
    const double fp = phi_h_at_phase(bg, xi + h);
    const double fm = phi_h_at_phase(bg, xi - h);
    const double b = phi0_at_phase(bg, xi);
    return p2 * (fp - 2.0 * f0 + fm) / (h * h) + 3.0 * bg.lambda * b * b * f0;
}

double coefficient_A(int n) {
    if (n < 0) throw std::invalid_argument("coefficient_A: n must be >= 0");
    const double K = elliptic_K_i();
    return kPi * kPi / (K * K) * (2 * n + 1) * std::exp(-(n + 0.5) * kPi) /
           (1.0 + std::exp(-(2 * n + 1) * kPi));
}

double mass_spectrum(int n, double m) {
    if (n < 0) throw std::invalid_argument("mass_spectrum: n must be >= 0");
    if (!(m > 0.0)) throw std::invalid_argument("mass_spectrum: m must be > 0");
    return (2 * n + 1) * kPi / (2.0 * elliptic_K_i()) * m;
}

PoleSeries PoleSeries::make(double mass, double eps, int n_terms) {
    if (!(eps > 0.0)) throw std::invalid_argument("PoleSeries: eps must be > 0");
    if (!(mass > 0.0)) throw std::invalid_argument("PoleSeries: mass must be > 0");
    PoleSeries s;
    s.mass = mass;
    s.eps = eps;
    s.terms.reserve(static_cast<size_t>(n_terms));
    for (int n = 0; n < n_terms; ++n) s.terms.emplace_back(coefficient_A(n), n);
    return s;
}

std::complex<double> c1_frequency(double omega, const std::array<double, 3>& x3,
                                  const WaveBackground& bg, double eps, int n_terms) {
    if (!(eps > 0.0)) throw std::invalid_argument("c1_frequency: regulator eps must be > 0");
    const double K = elliptic_K_i();
    const double px = bg.p.x * x3[0] + bg.p.y * x3[1] + bg.p.z * x3[2];
    const std::complex<double> ie(0.0, eps);
    std::complex<double> sum = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        const double wn = (2 * n + 1) * kPi / (2.0 * K);
        const std::complex<double> phase(0.0, wn * px);
        sum += coefficient_A(n) * (std::exp(phase) / (omega - wn * bg.p.t + ie) -
                                   std::exp(-phase) / (omega + wn * bg.p.t + ie));
    }
    return 0.5 * sum;
}

std::complex<double> propagator_momentum(double omega, double kmag, const PoleSeries& series) {
    const double K = elliptic_K_i();
    const std::complex<double> ie(0.0, series.eps);
    std::complex<double> sum = 0.0;
    for (const auto& [an, n] : series.terms) {
        const double wn = (2 * n + 1) * kPi / (2.0 * K);
        const double en = std::sqrt(kmag * kmag / (wn * wn) + series.mass * series.mass);
        sum += an / (4.0 * en) *
               (1.0 / (omega - wn * en + ie) - 1.0 / (omega + wn * en + ie));
    }
    return sum;
}

}  // namespace ellwave
