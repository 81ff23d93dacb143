#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "hardy/quadrature.hpp"

namespace hardy {

/// Raised when the normalized Gram matrix is numerically singular (points too
/// close together for dual sequences or interpolation constants).
class NearSingularGram : public std::runtime_error {
public:
    explicit NearSingularGram(double lambda_min)
        : std::runtime_error("Gram matrix near-singular: lambda_min = " +
                             std::to_string(lambda_min)),
          lambda_min_(lambda_min) {}
    [[nodiscard]] double lambda_min() const { return lambda_min_; }

private:
    double lambda_min_;
};

/// Smallest Gram eigenvalue treated as nonsingular. Sits well above spectral
/// double-precision noise for sequences up to a couple hundred points.
inline constexpr double kGramSingularTol = 1e-10;

struct GramMatrix {
    PointSequence source;
    Eigen::MatrixXcd entries;  // G[a][b] = k_a(b) / (||k_a||_2 ||k_b||_2)
};

[[nodiscard]] GramMatrix gram_matrix(const PointSequence& S);

/// f = sum_a c_a k_{a,2}, an element of the span of normalized kernels.
class KernelCombination {
public:
    KernelCombination(PointSequence sequence, Eigen::VectorXcd coefficients);

    [[nodiscard]] const PointSequence& sequence() const { return seq_; }
    [[nodiscard]] const Eigen::VectorXcd& coefficients() const { return coeffs_; }
    [[nodiscard]] int dim() const { return seq_.dim(); }

    [[nodiscard]] Complex eval(std::span<const Complex> z) const;
    [[nodiscard]] Complex eval(const Point& z) const;

    /// Fast tensor-structured boundary sampling.
    [[nodiscard]] BoundarySamples sample_boundary(const TorusGrid& grid) const;

private:
    PointSequence seq_;
    Eigen::VectorXcd coeffs_;
};

/// One spectral computation shared by the singularity guard, the dual
/// sequence, and the interpolation constant.
class GramSystem {
public:
    explicit GramSystem(PointSequence S);

    [[nodiscard]] const PointSequence& sequence() const { return gram_.source; }
    [[nodiscard]] int size() const { return static_cast<int>(gram_.entries.rows()); }
    [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return gram_.entries; }
    [[nodiscard]] const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    [[nodiscard]] double lambda_min() const { return eigenvalues_(0); }

    /// G^{-1}; throws NearSingularGram below the tolerance.
    [[nodiscard]] const Eigen::MatrixXcd& inverse() const;

    /// <f, g> in H^2 for coefficient vectors against normalized kernels.
    [[nodiscard]] Complex inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;
    [[nodiscard]] double norm(const Eigen::VectorXcd& x) const;

    /// <rho_a, rho_b> = (G^{-1})[a][b].
    [[nodiscard]] const Eigen::MatrixXcd& dual_gram() const { return inverse(); }

private:
    GramMatrix gram_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
    Eigen::MatrixXcd inverse_;  // empty when near-singular
    bool singular_;
};

/// Biorthogonal system: <rho_a, k_{b,2}> = delta_ab inside the span.
[[nodiscard]] std::vector<KernelCombination> dual_sequence(const PointSequence& S);
[[nodiscard]] std::vector<KernelCombination> dual_sequence(const GramSystem& sys);

/// max_a ||rho_a||_2 = max_a sqrt((G^{-1})_aa); always >= 1.
[[nodiscard]] double dual_bound_h2(const PointSequence& S);
[[nodiscard]] double dual_bound_h2(const GramSystem& sys);

/// lambda_min(G)^{-1/2}: the norm of the minimal-norm extension map
/// l^2(S) -> span{k_{a,2}}.
[[nodiscard]] double interpolation_constant_h2(const PointSequence& S);
[[nodiscard]] double interpolation_constant_h2(const GramSystem& sys);

/// sqrt(c* G c) for f = sum c_a k_{a,2}.
[[nodiscard]] double h2_norm_closed_form(const KernelCombination& f);
[[nodiscard]] Complex h2_inner_closed_form(const KernelCombination& f,
                                           const KernelCombination& g);

/// Minimal-norm f in the span with chi_a^{1/2} f(a) = targets_a.
[[nodiscard]] KernelCombination min_norm_interpolant(const PointSequence& S,
                                                     std::span<const Complex> targets);
[[nodiscard]] KernelCombination min_norm_interpolant(const GramSystem& sys,
                                                     std::span<const Complex> targets);

}  // namespace hardy
