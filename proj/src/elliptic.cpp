#include "ellwave/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ellwave {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// AGM fixed point of (a, b); stops when the means agree to 1e-15 relative.
double agm(double a, double b) {
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        if (std::abs(an - bn) <= 1e-15 * an) return an;
        a = an;
        b = bn;
    }
    return 0.5 * (a + b);
}

// sn, cn, dn at parameter m in (0, 1) by the descending-Landen phase
// recurrence (Abramowitz & Stegun 16.4).
void sncndn(double u, double m, double& sn, double& cn, double& dn) {
    double a[32], c[32];
    a[0] = 1.0;
    double b = std::sqrt(1.0 - m);
    c[0] = std::sqrt(m);
    int n = 0;
    while (std::abs(c[n]) > 1e-16 * a[n] && n < 31) {
        const double an = 0.5 * (a[n] + b);
        const double cn1 = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
        a[n] = an;
        c[n] = cn1;
    }
    double phi = std::ldexp(a[n] * u, n);
    double phi_prev = phi;
    for (int k = n; k >= 1; --k) {
        phi_prev = phi;
        phi = 0.5 * (phi + std::asin(std::clamp(c[k] / a[k] * std::sin(phi), -1.0, 1.0)));
    }
    sn = std::sin(phi);
    cn = std::cos(phi);
    // one Landen level above the final phase fixes dn
    dn = (n == 0) ? std::sqrt(1.0 - m * sn * sn) : cn / std::cos(phi_prev - phi);
}

}  // namespace

double complete_elliptic_K(double m) {
    if (!(m < 1.0)) throw std::domain_error("complete_elliptic_K: requires parameter m < 1");
    return kPi / (2.0 * agm(1.0, std::sqrt(1.0 - m)));
}

double elliptic_K_i() {
    static const double k = complete_elliptic_K(-1.0);
    return k;
}

EllipticValue jacobi_i(double u) {
    if (!std::isfinite(u)) throw std::invalid_argument("jacobi_i: non-finite argument");
    const double K = elliptic_K_i();
    // reduce modulo the full period 4K into [-2K, 2K)
    double r = std::remainder(u, 4.0 * K);
    // imaginary-modulus map: sn(u,i) = sd(v|1/2)/sqrt(2), cn = cd, dn = nd, v = sqrt(2) u
    double s, c, d;
    sncndn(std::sqrt(2.0) * r, 0.5, s, c, d);
    return EllipticValue{u, s / (std::sqrt(2.0) * d), c / d, 1.0 / d};
}

double sn_fourier(double u, const QSeriesSpec& spec) {
    if (spec.n_terms < 1) throw std::invalid_argument("sn_fourier: n_terms must be >= 1");
    const double K = spec.K_i > 0.0 ? spec.K_i : elliptic_K_i();
    if (!std::isfinite(u)) throw std::invalid_argument("sn_fourier: non-finite argument");
    const double r = std::remainder(u, 4.0 * K);
    double sum = 0.0;
    double sign = 1.0;
    for (int n = 0; n < spec.n_terms; ++n, sign = -sign) {
        const double q = std::exp(-(n + 0.5) * kPi) / (1.0 + std::exp(-(2 * n + 1) * kPi));
        sum += sign * q * std::sin((2 * n + 1) * kPi * r / (2.0 * K));
    }
    return 2.0 * kPi / K * sum;
}

double dsn_du(double u) {
    const EllipticValue e = jacobi_i(u);
    return e.cn * e.dn;
}

}  // namespace ellwave
