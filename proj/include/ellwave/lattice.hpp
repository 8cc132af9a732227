#ifndef ELLWAVE_LATTICE_HPP
#define ELLWAVE_LATTICE_HPP

#include <span>
#include <vector>

#include "ellwave/scalar.hpp"

namespace ellwave {

// 1+1 dimensional spacetime grid, t_n = n dt, x_j = j dx.  The explicit
// stencil needs dt/dx <= 1 (discrete causality bound).
struct Lattice1p1 {
    int nt = 0;
    int nx = 0;
    double dt = 0.0;
    double dx = 0.0;

    double t(int n) const { return n * dt; }
    double x(int j) const { return j * dx; }
    double cell_volume() const { return dt * dx; }
    void validate() const;  // throws std::invalid_argument on violations
};

// Grid site (time sheet, spatial index).
struct Site {
    int n = 0;
    int j = 0;
    friend bool operator==(const Site&, const Site&) = default;
    friend auto operator<=>(const Site&, const Site&) = default;
};

// Dense nt x nx scalar field, row-major in time.
class Field {
  public:
    Field() = default;
    Field(int nt, int nx) : nt_(nt), nx_(nx), v_(static_cast<size_t>(nt) * nx, 0.0) {}

    int nt() const { return nt_; }
    int nx() const { return nx_; }
    bool empty() const { return v_.empty(); }
    double& at(int n, int j) { return v_[static_cast<size_t>(n) * nx_ + j]; }
    double at(int n, int j) const { return v_[static_cast<size_t>(n) * nx_ + j]; }
    std::span<double> data() { return v_; }
    std::span<const double> data() const { return v_; }

    double max_abs() const;
    bool same_shape(const Field& o) const { return nt_ == o.nt_ && nx_ == o.nx_; }

  private:
    int nt_ = 0;
    int nx_ = 0;
    std::vector<double> v_;
};

// Source j(t, x) with an overall amplitude, zero on the boundary sheets.
struct SourceField {
    Field values;
    double amplitude = 1.0;
};

// Output of a lattice solve: the full space-time field, the maximum
// interior residual of the discrete equation, and the relative drift of the
// discrete energy over one background period.
struct SolveReport {
    Field field;
    double max_residual = 0.0;
    double energy_drift = 0.0;
};

// Samples of the closed-form objects on the grid; the 1+1D phase is
// p0 t - p1 x + theta.
Field sample_background(const WaveBackground& bg, const Lattice1p1& lat);
Field sample_phi_h(const WaveBackground& bg, const Lattice1p1& lat);
Field sample_source_bump(const Lattice1p1& lat, double amplitude, double t0, double x0,
                         double sigma_t, double sigma_x);
Field delta_source(const Lattice1p1& lat, Site s);  // 1/(dt dx) at s

// Leapfrog evolution of d^2_t phi - d^2_x phi + lambda phi^3 = j.  The first
// two sheets and the spatial boundary are pinned to the exact background, so
// a run with j = 0 tracks phi0(t, x) to O(dt^2 + dx^2).  Throws on stability
// violations; a non-finite field aborts with the offending step index.
SolveReport solve_nonlinear(const WaveBackground& bg, const Field& source, const Lattice1p1& lat);

// Same stepper for the linear operator d^2 + 3 lambda base^2 with zero
// initial data and zero boundary: the retarded response.  `base` defaults to
// the exact phi0 samples.
SolveReport solve_linearized(const WaveBackground& bg, const Field& source, const Lattice1p1& lat);
SolveReport solve_linearized_about(const Field& base, double lambda, const Field& source,
                                   const Lattice1p1& lat);

// Linearized solve with the first two sheets and boundary columns pinned to
// `pinned` (e.g. phi_h samples for the mode-preservation check).
SolveReport solve_linearized_with_data(const WaveBackground& bg, const Field& source,
                                       const Lattice1p1& lat, const Field& pinned);

// Discrete energy sum_j dx [ v^2/2 + (grad phi)^2/2 + lambda phi^4/4 ]
// evaluated between sheets n and n+1 (velocities live on half steps).
double discrete_energy(const Field& phi, const Lattice1p1& lat, double lambda, int n);

// k-th directional functional derivative of the nonlinear solve in the
// amplitude of j, contracted with j tensor powers: central differences in
// the amplitude, Richardson-extrapolated over eps_list (each entry half the
// previous).  precision_warning flags a non-monotone Richardson table.
struct FunctionalDerivative {
    Field value;
    bool precision_warning = false;
};
FunctionalDerivative functional_derivative(int order, const SourceField& j,
                                           const WaveBackground& bg, const Lattice1p1& lat,
                                           std::span<const double> eps_list);

inline constexpr double default_eps_list[] = {1e-2, 5e-3, 2.5e-3};

}  // namespace ellwave

#endif
