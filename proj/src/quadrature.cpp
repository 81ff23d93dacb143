#include "hardy/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hardy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long checked_node_count(int n, int m, const QuadratureLimits& limits) {
    long nodes = 1;
    for (int j = 0; j < n; ++j) {
        if (nodes > limits.max_nodes / m) {
            std::ostringstream msg;
            msg << "TorusGrid: node count " << m << "^" << n << " exceeds cap "
                << limits.max_nodes;
            throw std::invalid_argument(msg.str());
        }
        nodes *= m;
    }
    return nodes;
}

}  // namespace

TorusGrid::TorusGrid(int n, int m, const QuadratureLimits& limits) : n_(n), m_(m) {
    if (n < 1 || n > 3) {
        throw std::invalid_argument("TorusGrid: dimension must be 1, 2 or 3");
    }
    if (m < 4 || m % 2 != 0) {
        throw std::invalid_argument("TorusGrid: m must be even and >= 4");
    }
    nodes_ = checked_node_count(n, m, limits);
    weight_ = 1.0 / static_cast<double>(nodes_);
}

double TorusGrid::angle(int k) const { return kTwoPi * k / m_; }

Complex TorusGrid::circle_node(int k) const {
    return std::polar(1.0, angle(k));
}

void TorusGrid::decompose(long idx, int* k_out) const {
    for (int j = 0; j < n_; ++j) {
        k_out[j] = static_cast<int>(idx % m_);
        idx /= m_;
    }
}

BoundarySamples sample_boundary(const BoundaryFn& f, const TorusGrid& grid) {
    std::vector<Complex> circle(static_cast<size_t>(grid.samples_per_circle()));
    for (int k = 0; k < grid.samples_per_circle(); ++k) {
        circle[static_cast<size_t>(k)] = grid.circle_node(k);
    }

    std::vector<Complex> values(static_cast<size_t>(grid.node_count()));
    std::vector<Complex> z(static_cast<size_t>(grid.dim()));
    int k[3] = {0, 0, 0};
    for (long idx = 0; idx < grid.node_count(); ++idx) {
        grid.decompose(idx, k);
        for (int j = 0; j < grid.dim(); ++j) {
            z[static_cast<size_t>(j)] = circle[static_cast<size_t>(k[j])];
        }
        Complex v = f(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream msg;
            msg << "sample_boundary: non-finite value at node " << idx << " (angles";
            for (int j = 0; j < grid.dim(); ++j) msg << " " << grid.angle(k[j]);
            msg << ")";
            throw std::runtime_error(msg.str());
        }
        values[static_cast<size_t>(idx)] = v;
    }
    return BoundarySamples{grid, std::move(values)};
}

BoundarySamples sample_product(const TorusGrid& grid,
                               const std::vector<std::vector<Complex>>& factors) {
    if (static_cast<int>(factors.size()) != grid.dim()) {
        throw std::invalid_argument("sample_product: one factor table per coordinate");
    }
    for (const auto& f : factors) {
        if (static_cast<int>(f.size()) != grid.samples_per_circle()) {
            throw std::invalid_argument("sample_product: factor table size != m");
        }
    }
    const int m = grid.samples_per_circle();
    std::vector<Complex> values(static_cast<size_t>(grid.node_count()));
    switch (grid.dim()) {
        case 1:
            values = factors[0];
            break;
        case 2:
            for (int k2 = 0; k2 < m; ++k2) {
                const Complex f2 = factors[1][static_cast<size_t>(k2)];
                Complex* row = values.data() + static_cast<long>(k2) * m;
                for (int k1 = 0; k1 < m; ++k1) {
                    row[k1] = factors[0][static_cast<size_t>(k1)] * f2;
                }
            }
            break;
        default:
            for (int k3 = 0; k3 < m; ++k3) {
                for (int k2 = 0; k2 < m; ++k2) {
                    const Complex f23 = factors[1][static_cast<size_t>(k2)] *
                                        factors[2][static_cast<size_t>(k3)];
                    Complex* row = values.data() + (static_cast<long>(k3) * m + k2) * m;
                    for (int k1 = 0; k1 < m; ++k1) {
                        row[k1] = factors[0][static_cast<size_t>(k1)] * f23;
                    }
                }
            }
            break;
    }
    return BoundarySamples{grid, std::move(values)};
}

std::vector<Complex> kernel_factor_samples(Complex a_j, double coord_scale,
                                           const TorusGrid& grid) {
    std::vector<Complex> table(static_cast<size_t>(grid.samples_per_circle()));
    for (int k = 0; k < grid.samples_per_circle(); ++k) {
        table[static_cast<size_t>(k)] =
            coord_scale / (1.0 - std::conj(a_j) * grid.circle_node(k));
    }
    return table;
}

BoundarySamples sample_kernel(const KernelSpec& spec, const TorusGrid& grid) {
    if (spec.dim() != grid.dim()) {
        throw std::invalid_argument("sample_kernel: dimension mismatch");
    }
    std::vector<std::vector<Complex>> factors;
    factors.reserve(static_cast<size_t>(spec.dim()));
    for (int j = 0; j < spec.dim(); ++j) {
        // Fold the overall scale into the first coordinate's table.
        const double s = (j == 0) ? spec.scale() : 1.0;
        factors.push_back(kernel_factor_samples(spec.base().coord(j), s, grid));
    }
    return sample_product(grid, factors);
}

double lp_norm(const BoundarySamples& samples, Exponent p) {
    if (!p.is_finite()) {
        double sup = 0.0;
        for (const Complex& v : samples.values) sup = std::max(sup, std::abs(v));
        return sup;
    }
    const double pv = p.value();
    // Kahan summation keeps the reduction deterministic and tight.
    double sum = 0.0, comp = 0.0;
    for (const Complex& v : samples.values) {
        double term = std::pow(std::abs(v), pv) - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return std::pow(sum * samples.grid.weight(), 1.0 / pv);
}

double lp_norm(const BoundaryFn& f, Exponent p, const TorusGrid& grid) {
    return lp_norm(sample_boundary(f, grid), p);
}

Complex boundary_inner(const BoundarySamples& u, const BoundarySamples& v) {
    if (u.values.size() != v.values.size()) {
        throw std::invalid_argument("boundary_inner: sample count mismatch");
    }
    Complex sum = 0.0;
    for (size_t i = 0; i < u.values.size(); ++i) {
        sum += u.values[i] * std::conj(v.values[i]);
    }
    return sum * u.grid.weight();
}

RefineResult refine_until(const std::function<double(int)>& norm_at_m, double tol,
                          int m0, int max_m) {
    if (!(tol > 0.0)) throw std::invalid_argument("refine_until: tol must be > 0");
    double prev = norm_at_m(m0);
    for (int m = m0; m <= max_m / 2; m *= 2) {
        double next = norm_at_m(2 * m);
        double scale = std::max(std::abs(next), 1e-300);
        if (std::abs(next - prev) < tol * scale) {
            return RefineResult{next, m};
        }
        prev = next;
    }
    std::ostringstream msg;
    msg << "refine_until: no convergence to tol " << tol << " within m <= " << max_m
        << " (last estimate " << prev << ")";
    throw std::runtime_error(msg.str());
}

RefineResult refine_until(const BoundaryFn& f, int dim, Exponent p, double tol,
                          const QuadratureLimits& limits) {
    // Per-circle cap consistent with the total node cap: largest power of two
    // whose dim-th power stays under max_nodes.
    int max_m = 4;
    while (max_m <= limits.max_m / 2) {
        long nodes = 1;
        bool fits = true;
        for (int j = 0; j < dim; ++j) {
            if (nodes > limits.max_nodes / (2L * max_m)) {
                fits = false;
                break;
            }
            nodes *= 2 * max_m;
        }
        if (!fits) break;
        max_m *= 2;
    }
    return refine_until(
        [&](int m) { return lp_norm(f, p, TorusGrid(dim, m, limits)); }, tol, 4, max_m);
}

double kernel_norm_quadrature(const Point& a, Exponent p, double tol,
                              const QuadratureLimits& limits) {
    if (!p.is_finite()) {
        double sup = 1.0;
        for (const Complex& c : a.coords()) sup /= 1.0 - std::abs(c);
        return sup;
    }
    const double pv = p.value();
    double norm_p = 1.0;
    for (const Complex& c : a.coords()) {
        const double r = std::abs(c);
        auto factor_integral = [&](int m) {
            TorusGrid g(1, m, limits);
            double sum = 0.0;
            for (int k = 0; k < m; ++k) {
                sum += std::pow(std::abs(1.0 - r * g.circle_node(k)), -pv);
            }
            return sum / m;
        };
        norm_p *= refine_until(factor_integral, tol, 16, limits.max_m).value;
    }
    return std::pow(norm_p, 1.0 / pv);
}

}  // namespace hardy
