#pragma once

#include <vector>

#include "hardy/quadrature.hpp"

namespace hardy {

/// Finitely many nonnegative point masses in the polydisc.
struct DiscreteMeasure {
    struct Atom {
        Point point;
        double weight;
    };
    std::vector<Atom> atoms;

    [[nodiscard]] int dim() const;
    [[nodiscard]] double total_mass() const;
    void validate() const;
};

/// chi_S = sum_a ((1-|a|^2)) delta_a; S is Carleson iff chi_S is.
[[nodiscard]] DiscreteMeasure chi_measure(const PointSequence& S);

/// One closed arc per coordinate: |theta - center| <= half_length, or the
/// full circle. Measure is normalized so the full torus has mass 1.
struct ArcSpec {
    double center = 0.0;       // in [0, 2pi)
    double half_length = 0.0;  // in (0, pi]
    bool full = false;
};

struct Rectangle {
    std::vector<ArcSpec> arcs;

    [[nodiscard]] int dim() const { return static_cast<int>(arcs.size()); }
    [[nodiscard]] double measure() const;
    [[nodiscard]] static Rectangle full_torus(int n);
};

/// R_z: per coordinate the arc centered at arg(z_j) with half-length
/// 1 - |z_j|; a zero coordinate degenerates to the full circle.
[[nodiscard]] Rectangle rectangle_of(const Point& z);

[[nodiscard]] bool arc_contains(const ArcSpec& outer, const ArcSpec& inner);
[[nodiscard]] bool rect_contains(const Rectangle& outer, const Rectangle& inner);

/// |mu|(Gamma_R): total weight of atoms w with R_w contained in R.
[[nodiscard]] double region_mass(const DiscreteMeasure& mu, const Rectangle& R);

/// Product of dyadic arcs, possibly of different depths per coordinate;
/// depth 0 is the full circle.
struct DyadicRect {
    std::vector<int> depth;
    std::vector<long> index;
};

[[nodiscard]] Rectangle to_rectangle(const DyadicRect& d);

struct RectangularBound {
    double constant = 0.0;
    Rectangle witness;
};

/// Certified lower bound on the rectangular Carleson constant
/// sup_z |mu|(Gamma_{R_z}) / |R_z|. Candidates are products of the atoms' own
/// arcs and of dyadic arcs of depth 2..depth plus the full circle; depth-1
/// arcs are excluded because their half-length pi/2 exceeds 1 and no R_z
/// realizes them. Non-decreasing in depth.
[[nodiscard]] RectangularBound rectangular_constant(const DiscreteMeasure& mu, int depth);

/// Same scan restricted to the dyadic candidate family (no atom arcs); this
/// is the single-component baseline the open-set search must dominate.
[[nodiscard]] RectangularBound rectangular_constant_dyadic(const DiscreteMeasure& mu, int depth);

struct OpenSetBound {
    double constant = 0.0;
    std::vector<DyadicRect> witness;
};

/// Lower bound on the open-set Carleson constant via unions of at most
/// max_components dyadic rectangles (depths 0 and 2..depth per coordinate).
/// Greedy search: repeatedly add the component that maximizes the resulting
/// ratio, stopping when no addition strictly improves it.
[[nodiscard]] OpenSetBound open_set_constant_lower(const DiscreteMeasure& mu, int depth,
                                                   int max_components);

/// Exhaustive union enumeration over the same component family; a cross-check
/// for the greedy search at small sizes (depth <= 3, dim <= 2).
[[nodiscard]] OpenSetBound open_set_constant_exhaustive(const DiscreteMeasure& mu, int depth,
                                                        int max_components);

/// max over probe kernels k_w of ||R_p k_w||_{l^p(S)} / ||k_w||_{H^p}, the
/// H^p norm taken by quadrature; a lower bound on the embedding constant.
[[nodiscard]] double embedding_lower_bound(const PointSequence& S, Exponent p,
                                           const PointSequence& probes, double tol = 1e-9);

/// P(a,z) = prod_j (1-|a_j|^2)^{p-1} / |1 - conj(a_j) z_j|^p for p in (1,inf).
/// The boundary integral per coordinate is computed at construction; it is 1
/// exactly when p = 2.
class PoissonFamilyKernel {
public:
    PoissonFamilyKernel(Point base, double p, double tol = 1e-10);

    [[nodiscard]] const Point& base() const { return base_; }
    [[nodiscard]] double exponent() const { return p_; }
    /// Integral of the raw kernel over the normalized torus.
    [[nodiscard]] double boundary_mass() const { return mass_; }

    [[nodiscard]] double eval(std::span<const Complex> zeta) const;
    [[nodiscard]] double eval_normalized(std::span<const Complex> zeta) const;

private:
    Point base_;
    double p_;
    double mass_;
};

[[nodiscard]] double poisson_eval(const PoissonFamilyKernel& K, std::span<const Complex> zeta);

/// P*mu sampled on the grid: sum of weight * P(a, zeta) over atoms. With
/// per_atom_normalized the kernels are rescaled to unit boundary integral, so
/// the boundary mean equals the total mass of mu.
[[nodiscard]] BoundarySamples balayage(const DiscreteMeasure& mu, double p,
                                       const TorusGrid& grid, bool per_atom_normalized = true);

/// max over dyadic rectangles of per-coordinate depth <= max_depth of the
/// mean absolute oscillation of the samples; a rectangle-BMO proxy.
[[nodiscard]] double dyadic_bmo_proxy(const BoundarySamples& samples, int max_depth);

}  // namespace hardy
