#pragma once

#include <functional>
#include <vector>

#include "hardy/exponent.hpp"
#include "hardy/kernel.hpp"
#include "hardy/point.hpp"

namespace hardy {

struct QuadratureLimits {
    long max_nodes = 1L << 24;  // cap on m^n
    int max_m = 1 << 20;        // cap on samples per circle during refinement
};

/// Uniform tensor trapezoid grid on T^n with the measure normalized to total
/// mass 1 (each node carries weight m^{-n}). Spectrally accurate for the
/// smooth periodic integrands produced by kernels with |a_j| < 1.
class TorusGrid {
public:
    TorusGrid(int n, int m, const QuadratureLimits& limits = {});

    [[nodiscard]] int dim() const { return n_; }
    [[nodiscard]] int samples_per_circle() const { return m_; }
    [[nodiscard]] long node_count() const { return nodes_; }
    [[nodiscard]] double weight() const { return weight_; }

    [[nodiscard]] double angle(int k) const;
    [[nodiscard]] Complex circle_node(int k) const;

    /// Decomposes a flat node index (coordinate 0 fastest) into per-circle
    /// sample indices.
    void decompose(long idx, int* k_out) const;

private:
    int n_;
    int m_;
    long nodes_;
    double weight_;
};

struct BoundarySamples {
    TorusGrid grid;
    std::vector<Complex> values;  // one per node, flat index
};

using BoundaryFn = std::function<Complex(std::span<const Complex>)>;

/// Evaluates f at every grid node. Throws if a non-finite value shows up,
/// reporting the offending node.
[[nodiscard]] BoundarySamples sample_boundary(const BoundaryFn& f, const TorusGrid& grid);

/// Tensor-product sampling: values[idx] = prod_j factors[j][k_j]. This is the
/// fast path for product kernels; factors[j] must have grid.m entries.
[[nodiscard]] BoundarySamples sample_product(const TorusGrid& grid,
                                             const std::vector<std::vector<Complex>>& factors);

/// Per-circle samples of one normalized kernel factor of k_{a,p}.
[[nodiscard]] std::vector<Complex> kernel_factor_samples(Complex a_j, double coord_scale,
                                                         const TorusGrid& grid);

[[nodiscard]] BoundarySamples sample_kernel(const KernelSpec& spec, const TorusGrid& grid);

/// (sum_k w |v_k|^p)^{1/p}; for p = inf the max modulus.
[[nodiscard]] double lp_norm(const BoundarySamples& samples, Exponent p);
[[nodiscard]] double lp_norm(const BoundaryFn& f, Exponent p, const TorusGrid& grid);

/// Discrete boundary pairing sum_k w u_k conj(v_k); approximates the H^2
/// scalar product of functions continuous up to the boundary.
[[nodiscard]] Complex boundary_inner(const BoundarySamples& u, const BoundarySamples& v);

struct RefineResult {
    double value;  // estimate from the doubled grid
    int m_used;    // coarsest m whose refinement already agreed within tol
};

/// Doubles m from m0 until norm(m) and norm(2m) agree to relative tol.
/// Throws on non-convergence within the caps, reporting the last gap.
[[nodiscard]] RefineResult refine_until(const std::function<double(int)>& norm_at_m,
                                        double tol, int m0 = 4, int max_m = 1 << 20);

[[nodiscard]] RefineResult refine_until(const BoundaryFn& f, int dim, Exponent p, double tol,
                                        const QuadratureLimits& limits = {});

/// H^p norm of a product kernel via one-dimensional quadrature per
/// coordinate; exact factorization ||k_a||_p^p = prod_j of circle integrals.
/// For p = inf returns prod_j 1/(1 - |a_j|).
[[nodiscard]] double kernel_norm_quadrature(const Point& a, Exponent p, double tol = 1e-10,
                                            const QuadratureLimits& limits = {});

}  // namespace hardy
