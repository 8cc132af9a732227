#include "ellwave/hierarchy.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "ellwave/elliptic.hpp"

namespace ellwave {

namespace {

std::pair<Site, Site> sorted_pair(Site a, Site b) {
    return a <= b ? std::pair{a, b} : std::pair{b, a};
}

std::tuple<Site, Site, Site> sorted_triple(Site a, Site b, Site c) {
    Site t[3] = {a, b, c};
    if (t[1] < t[0]) std::swap(t[0], t[1]);
    if (t[2] < t[1]) std::swap(t[1], t[2]);
    if (t[1] < t[0]) std::swap(t[0], t[1]);
    return {t[0], t[1], t[2]};
}

// cell-center values by averaging the four corner nodes
Field cell_average(const Field& f) {
    Field c(f.nt() - 1, f.nx() - 1);
    for (int n = 0; n + 1 < f.nt(); ++n)
        for (int j = 0; j + 1 < f.nx(); ++j)
            c.at(n, j) = 0.25 * (f.at(n, j) + f.at(n + 1, j) + f.at(n, j + 1) + f.at(n + 1, j + 1));
    return c;
}

// adjoint of cell_average: spreads cell values back to the corner nodes
Field smear_to_nodes(const Field& c) {
    Field f(c.nt() + 1, c.nx() + 1);
    for (int n = 0; n < c.nt(); ++n)
        for (int j = 0; j < c.nx(); ++j) {
            const double q = 0.25 * c.at(n, j);
            f.at(n, j) += q;
            f.at(n + 1, j) += q;
            f.at(n, j + 1) += q;
            f.at(n + 1, j + 1) += q;
        }
    return f;
}

}  // namespace

KernelGrid::KernelGrid(const WaveBackground& bg, const Lattice1p1& lat)
    : lat_(lat), lambda_(bg.lambda), background_(sample_background(bg, lat)) {
    lat_.validate();
}

void KernelGrid::set_background(Field f) {
    if (!f.same_shape(background_) && !background_.empty())
        throw std::invalid_argument("KernelGrid: background shape mismatch");
    background_ = std::move(f);
}

const Field& KernelGrid::c1(Site y) {
    auto it = c1_.find(y);
    if (it != c1_.end()) return it->second;
    if (y.n < 1 || y.n + 1 >= lat_.nt || y.j < 1 || y.j + 1 >= lat_.nx)
        throw std::invalid_argument("KernelGrid::c1: source site must be interior");
    SolveReport rep =
        solve_linearized_about(background_, lambda_, delta_source(lat_, y), lat_);
    return c1_.emplace(y, std::move(rep.field)).first->second;
}

void KernelGrid::put_c2(Site y, Site z, Field f) {
    if (f.nt() != lat_.nt || f.nx() != lat_.nx)
        throw std::invalid_argument("KernelGrid::put_c2: kernel shape does not match lattice");
    c2_[sorted_pair(y, z)] = std::move(f);
}

void KernelGrid::put_c3(Site y, Site z, Site w, Field f) {
    if (f.nt() != lat_.nt || f.nx() != lat_.nx)
        throw std::invalid_argument("KernelGrid::put_c3: kernel shape does not match lattice");
    c3_[sorted_triple(y, z, w)] = std::move(f);
}

const Field* KernelGrid::find_c2(Site y, Site z) const {
    auto it = c2_.find(sorted_pair(y, z));
    return it == c2_.end() ? nullptr : &it->second;
}

const Field* KernelGrid::find_c3(Site y, Site z, Site w) const {
    auto it = c3_.find(sorted_triple(y, z, w));
    return it == c3_.end() ? nullptr : &it->second;
}

const Field& c2_convolution(Site y, Site z, KernelGrid& kg) {
    if (const Field* f = kg.find_c2(y, z)) return *f;
    const Lattice1p1& lat = kg.lattice();
    const Field& cy = kg.c1(y);
    const Field& cz = kg.c1(z);

    // midpoint rule: integrand at cell centers, then one retarded application
    const Field ay = cell_average(cy);
    const Field az = cell_average(cz);
    const Field ab = cell_average(kg.background());
    Field g(lat.nt - 1, lat.nx - 1);
    for (int n = 0; n < g.nt(); ++n)
        for (int j = 0; j < g.nx(); ++j) g.at(n, j) = ab.at(n, j) * ay.at(n, j) * az.at(n, j);
    const Field src = smear_to_nodes(g);
    SolveReport rep = solve_linearized_about(kg.background(), kg.lambda(), src, lat);
    Field c2(lat.nt, lat.nx);
    for (size_t i = 0; i < c2.data().size(); ++i)
        c2.data()[i] = -6.0 * kg.lambda() * rep.field.data()[i];
    kg.put_c2(y, z, std::move(c2));
    return *kg.find_c2(y, z);
}

const Field& c3_convolution(Site y, Site z, Site w, KernelGrid& kg) {
    if (const Field* f = kg.find_c3(y, z, w)) return *f;
    const Lattice1p1& lat = kg.lattice();
    const Field ay = cell_average(kg.c1(y));
    const Field az = cell_average(kg.c1(z));
    const Field aw = cell_average(kg.c1(w));
    const Field byz = cell_average(c2_convolution(y, z, kg));
    const Field byw = cell_average(c2_convolution(y, w, kg));
    const Field bzw = cell_average(c2_convolution(z, w, kg));
    const Field ab = cell_average(kg.background());

    Field g(lat.nt - 1, lat.nx - 1);
    for (int n = 0; n < g.nt(); ++n)
        for (int j = 0; j < g.nx(); ++j) {
            const double pair_terms = ay.at(n, j) * bzw.at(n, j) + az.at(n, j) * byw.at(n, j) +
                                      aw.at(n, j) * byz.at(n, j);
            g.at(n, j) = ab.at(n, j) * pair_terms + ay.at(n, j) * az.at(n, j) * aw.at(n, j);
        }
    const Field src = smear_to_nodes(g);
    SolveReport rep = solve_linearized_about(kg.background(), kg.lambda(), src, lat);
    Field c3(lat.nt, lat.nx);
    for (size_t i = 0; i < c3.data().size(); ++i)
        c3.data()[i] = -6.0 * kg.lambda() * rep.field.data()[i];
    kg.put_c3(y, z, w, std::move(c3));
    return *kg.find_c3(y, z, w);
}

namespace {

// (d^2 + 3 lambda bg^2) f at interior sites
Field apply_operator(const Field& f, const Field& bg, double lambda, const Lattice1p1& lat) {
    Field r(lat.nt, lat.nx);
    const double idt2 = 1.0 / (lat.dt * lat.dt);
    const double idx2 = 1.0 / (lat.dx * lat.dx);
    for (int n = 1; n + 1 < lat.nt; ++n)
        for (int j = 1; j + 1 < lat.nx; ++j) {
            const double c = f.at(n, j);
            const double b = bg.at(n, j);
            r.at(n, j) = (f.at(n + 1, j) - 2.0 * c + f.at(n - 1, j)) * idt2 -
                         (f.at(n, j + 1) - 2.0 * c + f.at(n, j - 1)) * idx2 +
                         3.0 * lambda * b * b * c;
        }
    return r;
}

}  // namespace

Field hierarchy_residual_field(int order, KernelGrid& kg, Site y, Site z, Site w) {
    const Lattice1p1& lat = kg.lattice();
    const Field& bg = kg.background();
    const double lam = kg.lambda();
    switch (order) {
        case 1: {
            const Field& c = kg.c1(y);
            Field r = apply_operator(c, bg, lam, lat);
            r.at(y.n, y.j) -= 1.0 / lat.cell_volume();
            return r;
        }
        case 2: {
            const Field* c2 = kg.find_c2(y, z);
            if (!c2) throw std::invalid_argument("hierarchy_residual: C2 kernel not populated");
            const Field& cy = kg.c1(y);
            const Field& cz = kg.c1(z);
            Field r = apply_operator(*c2, bg, lam, lat);
            for (int n = 1; n + 1 < lat.nt; ++n)
                for (int j = 1; j + 1 < lat.nx; ++j)
                    r.at(n, j) += 6.0 * lam * bg.at(n, j) * cy.at(n, j) * cz.at(n, j);
            return r;
        }
        case 3: {
            const Field* c3 = kg.find_c3(y, z, w);
            if (!c3) throw std::invalid_argument("hierarchy_residual: C3 kernel not populated");
            const Field& cy = kg.c1(y);
            const Field& cz = kg.c1(z);
            const Field& cw = kg.c1(w);
            const Field& byz = c2_convolution(y, z, kg);
            const Field& byw = c2_convolution(y, w, kg);
            const Field& bzw = c2_convolution(z, w, kg);
            Field r = apply_operator(*c3, bg, lam, lat);
            for (int n = 1; n + 1 < lat.nt; ++n)
                for (int j = 1; j + 1 < lat.nx; ++j) {
                    const double pair_terms = cy.at(n, j) * bzw.at(n, j) +
                                              cz.at(n, j) * byw.at(n, j) +
                                              cw.at(n, j) * byz.at(n, j);
                    r.at(n, j) += 6.0 * lam * (bg.at(n, j) * pair_terms +
                                               cy.at(n, j) * cz.at(n, j) * cw.at(n, j));
                }
            return r;
        }
        default:
            throw std::invalid_argument("hierarchy_residual: order must be 1, 2 or 3");
    }
}

double hierarchy_residual(int order, KernelGrid& kg) {
    double m = 0.0;
    switch (order) {
        case 1: {
            std::vector<Site> keys;
            // residual needs the cached columns only; collect keys first
            for (const auto& e : kg.c2_entries()) {
                keys.push_back(e.first.first);
                keys.push_back(e.first.second);
            }
            if (keys.empty())
                throw std::invalid_argument("hierarchy_residual: no C1 columns cached");
            for (Site s : keys) m = std::max(m, hierarchy_residual_field(1, kg, s).max_abs());
            return m;
        }
        case 2:
            for (const auto& e : kg.c2_entries())
                m = std::max(m,
                             hierarchy_residual_field(2, kg, e.first.first, e.first.second).max_abs());
            return m;
        case 3:
            for (const auto& e : kg.c3_entries())
                m = std::max(m, hierarchy_residual_field(3, kg, std::get<0>(e.first),
                                                         std::get<1>(e.first), std::get<2>(e.first))
                                    .max_abs());
            return m;
        default:
            throw std::invalid_argument("hierarchy_residual: order must be 1, 2 or 3");
    }
}

Field background_residual_field(const KernelGrid& kg) {
    const Lattice1p1& lat = kg.lattice();
    const Field& bg = kg.background();
    Field r(lat.nt, lat.nx);
    const double idt2 = 1.0 / (lat.dt * lat.dt);
    const double idx2 = 1.0 / (lat.dx * lat.dx);
    for (int n = 1; n + 1 < lat.nt; ++n)
        for (int j = 1; j + 1 < lat.nx; ++j) {
            const double c = bg.at(n, j);
            r.at(n, j) = (bg.at(n + 1, j) - 2.0 * c + bg.at(n - 1, j)) * idt2 -
                         (bg.at(n, j + 1) - 2.0 * c + bg.at(n, j - 1)) * idx2 +
                         kg.lambda() * c * c * c;
        }
    return r;
}

namespace {

Field apply_c1(KernelGrid& kg, const Field& src) {
    return solve_linearized_about(kg.background(), kg.lambda(), src, kg.lattice()).field;
}

Field product_source_node(const KernelGrid& kg, const Field& a, const Field& b,
                          const Field* weight) {
    Field g(kg.lattice().nt, kg.lattice().nx);
    for (size_t i = 0; i < g.data().size(); ++i) {
        double v = a.data()[i] * b.data()[i];
        if (weight) v *= weight->data()[i];
        g.data()[i] = v;
    }
    return g;
}

Field product_source_midpoint(const KernelGrid& kg, const Field& a, const Field& b,
                              const Field* weight) {
    const Field ca = cell_average(a);
    const Field cb = cell_average(b);
    Field g(ca.nt(), ca.nx());
    if (weight) {
        const Field cw = cell_average(*weight);
        for (size_t i = 0; i < g.data().size(); ++i)
            g.data()[i] = cw.data()[i] * ca.data()[i] * cb.data()[i];
    } else {
        for (size_t i = 0; i < g.data().size(); ++i) g.data()[i] = ca.data()[i] * cb.data()[i];
    }
    return smear_to_nodes(g);
}

}  // namespace

Field contracted_response(int order, const Field& j, KernelGrid& kg, Quadrature q) {
    const Field& bg = kg.background();
    const double lam = kg.lambda();
    auto src2 = [&](const Field& a, const Field& b, const Field* w) {
        return q == Quadrature::node ? product_source_node(kg, a, b, w)
                                     : product_source_midpoint(kg, a, b, w);
    };
    Field u1 = apply_c1(kg, j);
    if (order == 1) return u1;
    Field s2 = src2(u1, u1, &bg);
    for (double& v : s2.data()) v *= -6.0 * lam;
    Field u2 = apply_c1(kg, s2);
    if (order == 2) return u2;
    if (order != 3) throw std::invalid_argument("contracted_response: order must be 1, 2 or 3");
    // -6 lambda [3 phi0 u1 u2 + u1^3]
    Field mix = src2(u1, u2, &bg);
    Field cub = src2(u1, product_source_node(kg, u1, u1, nullptr), nullptr);
    if (q == Quadrature::midpoint) {
        // cube must also be assembled at cell centers
        const Field ca = cell_average(u1);
        Field g(ca.nt(), ca.nx());
        for (size_t i = 0; i < g.data().size(); ++i)
            g.data()[i] = ca.data()[i] * ca.data()[i] * ca.data()[i];
        cub = smear_to_nodes(g);
    }
    Field s3(kg.lattice().nt, kg.lattice().nx);
    for (size_t i = 0; i < s3.data().size(); ++i)
        s3.data()[i] = -6.0 * lam * (3.0 * mix.data()[i] + cub.data()[i]);
    return apply_c1(kg, s3);
}

Field contracted_residual_field(int order, const Field& j, KernelGrid& kg, Quadrature q) {
    const Lattice1p1& lat = kg.lattice();
    const Field& bg = kg.background();
    const double lam = kg.lambda();
    Field u1 = contracted_response(1, j, kg, q);
    switch (order) {
        case 1: {
            Field r = apply_operator(u1, bg, lam, lat);
            for (int n = 1; n + 1 < lat.nt; ++n)
                for (int k = 1; k + 1 < lat.nx; ++k) r.at(n, k) -= j.at(n, k);
            return r;
        }
        case 2: {
            Field u2 = contracted_response(2, j, kg, q);
            Field r = apply_operator(u2, bg, lam, lat);
            for (int n = 1; n + 1 < lat.nt; ++n)
                for (int k = 1; k + 1 < lat.nx; ++k)
                    r.at(n, k) += 6.0 * lam * bg.at(n, k) * u1.at(n, k) * u1.at(n, k);
            return r;
        }
        case 3: {
            Field u2 = contracted_response(2, j, kg, q);
            Field u3 = contracted_response(3, j, kg, q);
            Field r = apply_operator(u3, bg, lam, lat);
            for (int n = 1; n + 1 < lat.nt; ++n)
                for (int k = 1; k + 1 < lat.nx; ++k)
                    r.at(n, k) += 6.0 * lam * (3.0 * bg.at(n, k) * u1.at(n, k) * u2.at(n, k) +
                                               u1.at(n, k) * u1.at(n, k) * u1.at(n, k));
            return r;
        }
        default:
            throw std::invalid_argument("contracted_residual_field: order must be 1, 2 or 3");
    }
}

Field taylor_response(const SourceField& j, int order, KernelGrid& kg) {
    if (order < 0 || order > 3)
        throw std::invalid_argument("taylor_response: kernels available up to order 3");
    const Lattice1p1& lat = kg.lattice();
    Field scaled(lat.nt, lat.nx);
    for (size_t i = 0; i < scaled.data().size(); ++i)
        scaled.data()[i] = j.amplitude * j.values.data()[i];

    Field out = kg.background();
    static const double inv_fact[4] = {1.0, 1.0, 0.5, 1.0 / 6.0};
    for (int k = 1; k <= order; ++k) {
        const Field uk = contracted_response(k, scaled, kg, Quadrature::node);
        for (size_t i = 0; i < out.data().size(); ++i)
            out.data()[i] += inv_fact[k] * uk.data()[i];
    }
    return out;
}

Field c1_selfadjoint_column(const KernelGrid& kg, Site y) {
    const Lattice1p1& lat = kg.lattice();
    const Field& bg = kg.background();
    const double lam = kg.lambda();
    const int ni = lat.nt - 2, nj = lat.nx - 2;
    if (y.n < 1 || y.n > ni || y.j < 1 || y.j > nj)
        throw std::invalid_argument("c1_selfadjoint_column: source site must be interior");

    const double idt2 = 1.0 / (lat.dt * lat.dt);
    const double idx2 = 1.0 / (lat.dx * lat.dx);
    auto idx = [&](int n, int j) { return (n - 1) * nj + (j - 1); };

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(ni) * nj * 5);
    for (int n = 1; n <= ni; ++n)
        for (int j = 1; j <= nj; ++j) {
            const double b = bg.at(n, j);
            trip.emplace_back(idx(n, j), idx(n, j), -2.0 * idt2 + 2.0 * idx2 + 3.0 * lam * b * b);
            if (n > 1) trip.emplace_back(idx(n, j), idx(n - 1, j), idt2);
            if (n < ni) trip.emplace_back(idx(n, j), idx(n + 1, j), idt2);
            if (j > 1) trip.emplace_back(idx(n, j), idx(n, j - 1), -idx2);
            if (j < nj) trip.emplace_back(idx(n, j), idx(n, j + 1), -idx2);
        }
    Eigen::SparseMatrix<double> A(ni * nj, ni * nj);
    A.setFromTriplets(trip.begin(), trip.end());

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni * nj);
    rhs[idx(y.n, y.j)] = 1.0 / lat.cell_volume();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("c1_selfadjoint_column: factorization failed");
    const Eigen::VectorXd sol = lu.solve(rhs);

    Field out(lat.nt, lat.nx);
    for (int n = 1; n <= ni; ++n)
        for (int j = 1; j <= nj; ++j) out.at(n, j) = sol[idx(n, j)];
    return out;
}

}  // namespace ellwave
