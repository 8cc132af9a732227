#ifndef ELLWAVE_SCALAR_HPP
#define ELLWAVE_SCALAR_HPP

#include <array>
#include <complex>
#include <vector>

#include "ellwave/fourvec.hpp"

namespace ellwave {

// Traveling-wave background of the quartic equation d^2 phi + lambda phi^3 = 0:
//
//   phi0(x) = mu (2/lambda)^{1/4} sn(p.x + theta, i),   p.p = mu^2 sqrt(lambda/2).
//
// mu carries energy units, lambda is the dimensionless coupling, theta the
// phase.  theta = K(i) is the canonical member of the phase family
// theta = (4m+1) K(i), for which sn(theta, i) = 1.
struct WaveBackground {
    double mu = 1.0;
    double lambda = 2.0;
    FourVector p{1.0, 0.0, 0.0, 0.0};
    double theta = 0.0;

    double amplitude() const;                  // mu (2/lambda)^{1/4}
    double mass_squared() const;               // mu^2 sqrt(lambda/2)
    double mass() const;
    double phase(const FourVector& x) const;   // p.x + theta
    double dispersion_violation() const;       // |p.p - mu^2 sqrt(lambda/2)|
};

// Builds a background whose momentum satisfies the dispersion constraint,
// moving along `direction` with speed `boost` in [0, 1).  theta defaults to
// K(i).  Throws std::invalid_argument on bad parameters.
WaveBackground make_background(double mu, double lambda,
                               const std::array<double, 3>& direction = {0.0, 0.0, 0.0},
                               double boost = 0.0);

// phi0 and its fluctuation mode phi_h = a cn dn (solution of the linearized
// equation about phi0).
double phi0(const WaveBackground& bg, const FourVector& x);
double phi_h(const WaveBackground& bg, const FourVector& x);

// Same objects as functions of the phase xi = p.x (theta applied inside).
double phi0_at_phase(const WaveBackground& bg, double xi);
double phi_h_at_phase(const WaveBackground& bg, double xi);

// Central-difference residual of p^2 phi0'' + lambda phi0^3 at phase xi;
// second order in h for the exact solution.
double phi0_ode_residual(const WaveBackground& bg, double xi, double h);

// Central-difference residual of (p^2 d^2/dxi^2 + 3 lambda phi0^2) phi_h.
double phi_h_ode_residual(const WaveBackground& bg, double xi, double h);

// Fourier weight of the fluctuation mode,
//   A_n = (pi^2/K^2(i)) (2n+1) e^{-(n+1/2) pi} / (1 + e^{-(2n+1) pi}).
double coefficient_A(int n);

// Frequency of the n-th propagator pole at spatial momentum zero:
//   omega_n = (2n+1) pi/(2 K(i)) m.
double mass_spectrum(int n, double m);

// Pole representation of the propagator: mass scale, Feynman regulator and
// the retained (A_n, n) pairs, decreasing in n.
struct PoleSeries {
    double mass = 1.0;
    double eps = 1e-6;
    std::vector<std::pair<double, int>> terms;  // (A_n, n)

    static PoleSeries make(double mass, double eps, int n_terms = 8);
};

// Truncated pole sum for C1(omega, x):
//   (1/2) sum_n A_n [ e^{+i w_n pvec.xvec} / (omega - w_n p0 + i eps)
//                   - e^{-i w_n pvec.xvec} / (omega + w_n p0 + i eps) ],
// with w_n = (2n+1) pi/(2 K(i)).
std::complex<double> c1_frequency(double omega, const std::array<double, 3>& x3,
                                  const WaveBackground& bg, double eps, int n_terms);

// Momentum-space propagator C1(k) after integrating out the wave momentum:
// each term carries weight A_n / (4 E_n) with E_n = sqrt(k^2/w_n^2 + m^2)
// and poles at omega = -+ w_n E_n.
std::complex<double> propagator_momentum(double omega, double kmag, const PoleSeries& series);

}  // namespace ellwave

#endif
