#ifndef ELLWAVE_HIERARCHY_HPP
#define ELLWAVE_HIERARCHY_HPP

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "ellwave/lattice.hpp"

namespace ellwave {

// Lattice realization of the Green-function hierarchy about phi0:
//
//   (d^2 + 3 lambda phi0^2) C1(x, x1) = delta(x - x1)
//   (d^2 + 3 lambda phi0^2) C2(x, y, z) + 6 lambda phi0 C1(x,y) C1(x,z) = 0
//   (d^2 + 3 lambda phi0^2) C3(x, y, z, w)
//       + 6 lambda phi0 [C1(x,y) C2(x,z,w) + C1(x,z) C2(x,y,w) + C1(x,w) C2(x,y,z)]
//       + 6 lambda C1(x,y) C1(x,z) C1(x,w) = 0
//
// C1 columns are retarded responses to unit lattice deltas; C2 and C3 come
// from the closed-form convolutions, evaluated by the midpoint rule over
// lattice cells (cell-volume measure, cell-center values by averaging node
// neighbours; phi0 evaluated exactly at the centers).
//
// The expansion convention is C_k = delta^k phi / delta j^k at j = 0 with an
// explicit 1/k! in the functional Taylor series.
class KernelGrid {
  public:
    KernelGrid() = default;
    KernelGrid(const WaveBackground& bg, const Lattice1p1& lat);

    const Lattice1p1& lattice() const { return lat_; }
    double lambda() const { return lambda_; }
    const Field& background() const { return background_; }

    // replaces the sampled phi0 with an arbitrary base field (used by the
    // expression-identity tests); kernels built afterwards use it
    void set_background(Field f);

    // retarded C1 column for source point y, built on demand and cached
    const Field& c1(Site y);

    // inserts externally built kernels (keys are sorted site tuples)
    void put_c2(Site y, Site z, Field f);
    void put_c3(Site y, Site z, Site w, Field f);
    const Field* find_c2(Site y, Site z) const;
    const Field* find_c3(Site y, Site z, Site w) const;

    const std::map<std::pair<Site, Site>, Field>& c2_entries() const { return c2_; }
    const std::map<std::tuple<Site, Site, Site>, Field>& c3_entries() const { return c3_; }

  private:
    Lattice1p1 lat_;
    double lambda_ = 0.0;
    Field background_;
    std::map<Site, Field> c1_;
    std::map<std::pair<Site, Site>, Field> c2_;
    std::map<std::tuple<Site, Site, Site>, Field> c3_;
};

// C2(x, y, z) = -6 lambda integral dw C1(x, w) phi0(w) C1(w, y) C1(w, z),
// symmetric in (y, z); odd in lambda.  The result is cached in the grid.
const Field& c2_convolution(Site y, Site z, KernelGrid& kg);

// C3 with the three symmetric pairings plus the pure C1^4 term.
const Field& c3_convolution(Site y, Site z, Site w, KernelGrid& kg);

// Residual field of the order-k hierarchy equation for the stored kernels;
// interior sites only, boundary ring left at zero.
Field hierarchy_residual_field(int order, KernelGrid& kg, Site y, Site z = {}, Site w = {});

// Max interior |residual| over every stored kernel of the given order
// (order 1 ranges over the cached C1 columns).
double hierarchy_residual(int order, KernelGrid& kg);

// Residual of the homogeneous equation d^2 phi0 + lambda phi0^3 = 0 for the
// grid background.
Field background_residual_field(const KernelGrid& kg);

// Source-contracted responses u_k(x) = integral C_k(x, y_1..y_k) j(y_1)..j(y_k):
//   u1 = C1 j,   u2 = -6 lambda C1[phi0 u1^2],
//   u3 = -6 lambda C1[3 phi0 u1 u2 + u1^3].
// `midpoint` selects the cell-center quadrature of the convolution integrals;
// node quadrature reproduces the amplitude derivatives of the discrete solve.
enum class Quadrature { node, midpoint };
Field contracted_response(int order, const Field& j, KernelGrid& kg,
                          Quadrature q = Quadrature::node);

// Weak-form residual of the order-k equation contracted with j tensor powers.
Field contracted_residual_field(int order, const Field& j, KernelGrid& kg,
                                Quadrature q = Quadrature::midpoint);

// phi0 + sum_{k<=order} (1/k!) integral C_k j...j; order 0..3.
Field taylor_response(const SourceField& j, int order, KernelGrid& kg);

// C1 column of the self-adjoint discretization (symmetric operator
// d^2 + 3 lambda phi0^2, zero Dirichlet data on the whole space-time
// boundary), solved directly; satisfies reciprocity C1(x,y) = C1(y,x).
Field c1_selfadjoint_column(const KernelGrid& kg, Site y);

}  // namespace ellwave

#endif
