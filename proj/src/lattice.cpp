#include "ellwave/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ellwave {

void Lattice1p1::validate() const {
    if (nt < 8 || nx < 8) throw std::invalid_argument("Lattice1p1: nt and nx must be >= 8");
    if (!(dt > 0.0 && dx > 0.0)) throw std::invalid_argument("Lattice1p1: spacings must be > 0");
    if (dt > dx * (1.0 + 1e-12))
        throw std::invalid_argument("Lattice1p1: stability bound dt <= dx violated");
}

double Field::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

Field sample_background(const WaveBackground& bg, const Lattice1p1& lat) {
    Field f(lat.nt, lat.nx);
    for (int n = 0; n < lat.nt; ++n)
        for (int j = 0; j < lat.nx; ++j)
            f.at(n, j) = phi0(bg, FourVector{lat.t(n), lat.x(j), 0.0, 0.0});
    return f;
}

Field sample_phi_h(const WaveBackground& bg, const Lattice1p1& lat) {
    Field f(lat.nt, lat.nx);
    for (int n = 0; n < lat.nt; ++n)
        for (int j = 0; j < lat.nx; ++j)
            f.at(n, j) = phi_h(bg, FourVector{lat.t(n), lat.x(j), 0.0, 0.0});
    return f;
}

Field sample_source_bump(const Lattice1p1& lat, double amplitude, double t0, double x0,
                         double sigma_t, double sigma_x) {
    Field f(lat.nt, lat.nx);
    for (int n = 0; n < lat.nt; ++n) {
        const double gt = (lat.t(n) - t0) / sigma_t;
        for (int j = 0; j < lat.nx; ++j) {
            const double gx = (lat.x(j) - x0) / sigma_x;
            f.at(n, j) = amplitude * std::exp(-0.5 * (gt * gt + gx * gx));
        }
    }
    // keep the support off the boundary sheets
    for (int n = 0; n < lat.nt; ++n)
        for (int j : {0, 1, 2, 3, 4, 5, 6, 7})
            f.at(n, j) = f.at(n, lat.nx - 1 - j) = 0.0;
    return f;
}

Field delta_source(const Lattice1p1& lat, Site s) {
    Field f(lat.nt, lat.nx);
    f.at(s.n, s.j) = 1.0 / lat.cell_volume();
    return f;
}

namespace {

// shared leapfrog core; `cubic` selects the nonlinear equation, otherwise the
// linear one with potential 3 lambda base^2.  `pinned`, when present, supplies
// the first two sheets and the boundary columns; zero data otherwise.
SolveReport march(const Field* pinned, const Field* base, double lambda, const Field& source,
                  const Lattice1p1& lat, bool cubic) {
    lat.validate();
    if (!source.empty() && (source.nt() != lat.nt || source.nx() != lat.nx))
        throw std::invalid_argument("solve: source shape does not match lattice");

    SolveReport rep;
    rep.field = Field(lat.nt, lat.nx);
    Field& phi = rep.field;
    const int nt = lat.nt, nx = lat.nx;
    const double r2 = (lat.dt / lat.dx) * (lat.dt / lat.dx);
    const double dt2 = lat.dt * lat.dt;

    if (pinned) {
        for (int j = 0; j < nx; ++j) {
            phi.at(0, j) = pinned->at(0, j);
            phi.at(1, j) = pinned->at(1, j);
        }
    }

    for (int n = 1; n + 1 < nt; ++n) {
        for (int j = 1; j + 1 < nx; ++j) {
            const double c = phi.at(n, j);
            double force;
            if (cubic) {
                force = -lambda * c * c * c;
            } else {
                const double b = base->at(n, j);
                force = -3.0 * lambda * b * b * c;
            }
            if (!source.empty()) force += source.at(n, j);
            phi.at(n + 1, j) = 2.0 * c - phi.at(n - 1, j) +
                               r2 * (phi.at(n, j + 1) - 2.0 * c + phi.at(n, j - 1)) + dt2 * force;
        }
        if (pinned) {
            phi.at(n + 1, 0) = pinned->at(n + 1, 0);
            phi.at(n + 1, nx - 1) = pinned->at(n + 1, nx - 1);
        }
        if (!std::isfinite(phi.at(n + 1, nx / 2)))
            throw std::runtime_error("solve: field diverged at step " + std::to_string(n + 1));
    }

    // residual of the discrete equation over interior sites
    double rmax = 0.0;
    for (int n = 1; n + 1 < nt; ++n) {
        for (int j = 1; j + 1 < nx; ++j) {
            const double c = phi.at(n, j);
            const double lap_t = (phi.at(n + 1, j) - 2.0 * c + phi.at(n - 1, j)) / dt2;
            const double lap_x = (phi.at(n, j + 1) - 2.0 * c + phi.at(n, j - 1)) / (lat.dx * lat.dx);
            double pot;
            if (cubic) {
                pot = lambda * c * c * c;
            } else {
                const double b = base->at(n, j);
                pot = 3.0 * lambda * b * b * c;
            }
            const double src = source.empty() ? 0.0 : source.at(n, j);
            rmax = std::max(rmax, std::abs(lap_t - lap_x + pot - src));
        }
    }
    rep.max_residual = rmax;
    return rep;
}

}  // namespace

SolveReport solve_nonlinear(const WaveBackground& bg, const Field& source, const Lattice1p1& lat) {
    const Field exact = sample_background(bg, lat);
    SolveReport rep = march(&exact, nullptr, bg.lambda, source, lat, true);

    // energy drift over one background period
    const double period = 4.0 * elliptic_K_i() / bg.p.t;
    const int steps = std::min(lat.nt - 2, static_cast<int>(period / lat.dt));
    const double e0 = discrete_energy(rep.field, lat, bg.lambda, 0);
    double drift = 0.0;
    for (int n = 1; n <= steps; ++n)
        drift = std::max(drift, std::abs(discrete_energy(rep.field, lat, bg.lambda, n) - e0));
    rep.energy_drift = drift / std::abs(e0);
    return rep;
}

SolveReport solve_linearized(const WaveBackground& bg, const Field& source, const Lattice1p1& lat) {
    const Field base = sample_background(bg, lat);
    return march(nullptr, &base, bg.lambda, source, lat, false);
}

SolveReport solve_linearized_about(const Field& base, double lambda, const Field& source,
                                   const Lattice1p1& lat) {
    if (base.nt() != lat.nt || base.nx() != lat.nx)
        throw std::invalid_argument("solve_linearized_about: base shape does not match lattice");
    return march(nullptr, &base, lambda, source, lat, false);
}

SolveReport solve_linearized_with_data(const WaveBackground& bg, const Field& source,
                                       const Lattice1p1& lat, const Field& pinned) {
    const Field base = sample_background(bg, lat);
    return march(&pinned, &base, bg.lambda, source, lat, false);
}

double discrete_energy(const Field& phi, const Lattice1p1& lat, double lambda, int n) {
    double e = 0.0;
    for (int j = 0; j < lat.nx; ++j) {
        const double v = (phi.at(n + 1, j) - phi.at(n, j)) / lat.dt;
        const double pot = 0.5 * lambda / 4.0 *
                           (std::pow(phi.at(n, j), 4) + std::pow(phi.at(n + 1, j), 4));
        e += lat.dx * (0.5 * v * v + pot);
    }
    for (int j = 0; j + 1 < lat.nx; ++j) {
        const double g0 = (phi.at(n, j + 1) - phi.at(n, j)) / lat.dx;
        const double g1 = (phi.at(n + 1, j + 1) - phi.at(n + 1, j)) / lat.dx;
        e += lat.dx * 0.25 * (g0 * g0 + g1 * g1);
    }
    return e;
}

namespace {

Field stencil(int order, const WaveBackground& bg, const Lattice1p1& lat, const Field& j,
              double eps, const Field& phi_zero) {
    auto solve_at = [&](double a) {
        Field scaled(lat.nt, lat.nx);
        for (int n = 0; n < lat.nt; ++n)
            for (int k = 0; k < lat.nx; ++k) scaled.at(n, k) = a * j.at(n, k);
        return solve_nonlinear(bg, scaled, lat).field;
    };
    Field out(lat.nt, lat.nx);
    switch (order) {
        case 1: {
            const Field p = solve_at(eps), m = solve_at(-eps);
            for (size_t i = 0; i < out.data().size(); ++i)
                out.data()[i] = (p.data()[i] - m.data()[i]) / (2.0 * eps);
            break;
        }
        case 2: {
            const Field p = solve_at(eps), m = solve_at(-eps);
            for (size_t i = 0; i < out.data().size(); ++i)
                out.data()[i] =
                    (p.data()[i] - 2.0 * phi_zero.data()[i] + m.data()[i]) / (eps * eps);
            break;
        }
        case 3: {
            const Field p2 = solve_at(2.0 * eps), p1 = solve_at(eps);
            const Field m1 = solve_at(-eps), m2 = solve_at(-2.0 * eps);
            for (size_t i = 0; i < out.data().size(); ++i)
                out.data()[i] = (p2.data()[i] - 2.0 * p1.data()[i] + 2.0 * m1.data()[i] -
                                 m2.data()[i]) /
                                (2.0 * eps * eps * eps);
            break;
        }
        default:
            throw std::invalid_argument("functional_derivative: order must be 1, 2 or 3");
    }
    return out;
}

}  // namespace

FunctionalDerivative functional_derivative(int order, const SourceField& j,
                                           const WaveBackground& bg, const Lattice1p1& lat,
                                           std::span<const double> eps_list) {
    if (eps_list.size() < 2)
        throw std::invalid_argument("functional_derivative: need >= 2 amplitudes for Richardson");
    for (size_t i = 1; i < eps_list.size(); ++i)
        if (std::abs(eps_list[i] - 0.5 * eps_list[i - 1]) > 1e-12 * eps_list[i - 1])
            throw std::invalid_argument("functional_derivative: eps_list must halve");

    Field scaled(lat.nt, lat.nx);
    for (size_t i = 0; i < scaled.data().size(); ++i)
        scaled.data()[i] = j.amplitude * j.values.data()[i];
    const Field phi_zero = solve_nonlinear(bg, Field(lat.nt, lat.nx), lat).field;

    // Richardson table over halved amplitudes; central stencils are O(eps^2)
    std::vector<Field> row;
    row.reserve(eps_list.size());
    for (double e : eps_list) row.push_back(stencil(order, bg, lat, scaled, e, phi_zero));

    bool warn = false;
    double prev_corr = -1.0;
    for (size_t level = 1; level < row.size(); ++level) {
        const double w = std::pow(4.0, static_cast<double>(level));
        std::vector<Field> next;
        next.reserve(row.size() - 1);
        for (size_t i = 0; i + 1 < row.size(); ++i) {
            Field f(lat.nt, lat.nx);
            double corr = 0.0;
            for (size_t k = 0; k < f.data().size(); ++k) {
                f.data()[k] = (w * row[i + 1].data()[k] - row[i].data()[k]) / (w - 1.0);
                corr = std::max(corr, std::abs(f.data()[k] - row[i + 1].data()[k]));
            }
            if (i == 0) {
                if (prev_corr >= 0.0 && corr > prev_corr) warn = true;
                prev_corr = corr;
            }
            next.push_back(std::move(f));
        }
        row = std::move(next);
    }
    return FunctionalDerivative{std::move(row.front()), warn};
}

}  // namespace ellwave
