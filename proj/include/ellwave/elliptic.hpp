#ifndef ELLWAVE_ELLIPTIC_HPP
#define ELLWAVE_ELLIPTIC_HPP

namespace ellwave {

// Jacobi elliptic triple sn, cn, dn evaluated at modulus i (parameter m = -1).
// For real u they satisfy sn^2 + cn^2 = 1 and dn^2 = 1 + sn^2, with |sn| <= 1
// and common quarter period K(i).
struct EllipticValue {
    double u;
    double sn;
    double cn;
    double dn;
};

// Truncation of the sine series for sn(u, i).  Term n decays like e^{-n pi},
// so the default 12 terms are already below double precision.
struct QSeriesSpec {
    int n_terms = 12;
    double K_i = 0.0;  // filled from elliptic_K_i() when left at zero
};

// Complete elliptic integral of the first kind as a function of the
// parameter m (not the modulus), via the arithmetic-geometric mean.
// Valid for every m < 1; m >= 1 throws std::domain_error.
double complete_elliptic_K(double m);

// K at modulus i, i.e. complete_elliptic_K(-1).  Computed once and cached.
double elliptic_K_i();

// sn, cn, dn at modulus i for arbitrary real u.  The argument is reduced
// modulo the full period 4 K(i) and the parameter is mapped to m = 1/2 by
// the imaginary-modulus transformation, so all arithmetic stays real.
EllipticValue jacobi_i(double u);

// Partial sum of the sine series
//   sn(u, i) = (2 pi / K(i)) sum_n (-1)^n q_n sin((2n+1) pi u / (2 K(i))),
//   q_n = e^{-(n+1/2) pi} / (1 + e^{-(2n+1) pi}).
double sn_fourier(double u, const QSeriesSpec& spec);

// d/du sn(u, i) = cn(u, i) dn(u, i).
double dsn_du(double u);

}  // namespace ellwave

#endif
