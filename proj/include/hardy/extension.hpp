#pragma once

#include <optional>

#include "hardy/gram.hpp"

namespace hardy {

/// l^p norm of a finite coefficient sequence; max modulus for p = inf.
[[nodiscard]] double sequence_lp_norm(std::span<const Complex> values, Exponent p);

/// Interpolation targets nu in l^s(S).
struct TargetSequence {
    std::vector<Complex> values;
    Exponent s;

    [[nodiscard]] double norm() const {
        return sequence_lp_norm(values, s);
    }
};

/// nu_a = lambda_a mu_a with |lambda| in l^p, mu >= 0 in l^q and
/// ||nu||_s = ||lambda||_p ||mu||_q exactly.
struct HolderSplit {
    std::vector<Complex> lambda;
    std::vector<double> mu;
    Exponent p;
    Exponent q;
};

[[nodiscard]] HolderSplit holder_split(const TargetSequence& nu, const HolderTriple& triple);

/// A dual function: a kernel combination, optionally multiplied by one extra
/// normalized kernel factor (the product form of the exponent transport).
struct DualElement {
    KernelCombination combo;
    std::optional<KernelSpec> factor;

    [[nodiscard]] Complex eval(std::span<const Complex> z) const;
    [[nodiscard]] Complex eval(const Point& z) const;
    [[nodiscard]] BoundarySamples sample_boundary(const TorusGrid& grid) const;
};

[[nodiscard]] std::vector<DualElement> as_dual_elements(std::vector<KernelCombination> duals);

struct TransportResult {
    std::vector<DualElement> duals;
    Exponent r;                    // 1/r = 1/q - 1/p
    double max_duality_residual;   // max |<rho_a, k_{b,q'}> - delta_ab| by quadrature
    int grid_m;
};

/// Transports duals bounded in H^p down to H^q (q <= p) via
/// rho_a = gamma_a k_{a,r}. The duality of the output is re-verified by
/// quadrature pairing and the residual reported.
[[nodiscard]] TransportResult transport_duals(const std::vector<KernelCombination>& gammas, Exponent p,
                                      Exponent q, int grid_m = 256);

enum class NormMode { convention, quadrature };

/// gamma_b = ||k_b||_{s'} ||k_b||_q / (||k_b||_{p'} ||k_b||_2^2).
/// In convention mode the chi exponents cancel and the value is exactly 1.
[[nodiscard]] double gamma_coefficient(const Point& b, const HolderTriple& triple,
                                       NormMode mode, double tol = 1e-9);

struct StructuralRatios {
    double diagonal_ratio;  // ||k_a||_2^2 / (||k_a||_q ||k_a||_{q'})
    double target_ratio;    // ||k_a||_{s'} / (||k_a||_{p'} ||k_a||_{q'})
};

[[nodiscard]] StructuralRatios structural_hypotheses_check(const Point& a,
                                                           const HolderTriple& triple,
                                                           NormMode mode, double tol = 1e-9);

struct ExtensionTerm {
    Complex gamma;
    Complex nu;
    DualElement rho;
    KernelSpec kernel_q;
};

struct ExtensionNorms {
    double h_norm_s = 0.0;
    double g_norm_p = 0.0;       // || (sum |lambda_a rho_a|^p)^{1/p} ||_p
    double f_norm_q = 0.0;       // || (sum |mu_a k_{a,q}|^{p'})^{1/p'} ||_q
    double gamma_max = 0.0;
    double holder_bound = 0.0;   // gamma_max * g_norm_p * f_norm_q
    int grid_m = 0;
};

/// h = sum_a gamma_a nu_a rho_a k_{a,q}, evaluable on the closed polydisc,
/// with its interpolation residuals and norm estimates.
class ExtensionResult {
public:
    ExtensionResult(PointSequence seq, HolderTriple triple, std::vector<ExtensionTerm> terms,
                    std::vector<double> residuals, ExtensionNorms norms)
        : seq_(std::move(seq)),
          triple_(std::move(triple)),
          terms_(std::move(terms)),
          residuals_(std::move(residuals)),
          norms_(norms) {}

    [[nodiscard]] const PointSequence& sequence() const { return seq_; }
    [[nodiscard]] const HolderTriple& triple() const { return triple_; }
    [[nodiscard]] const std::vector<ExtensionTerm>& terms() const { return terms_; }
    [[nodiscard]] const std::vector<double>& residuals() const { return residuals_; }
    [[nodiscard]] double max_residual() const;
    [[nodiscard]] const ExtensionNorms& norms() const { return norms_; }

    [[nodiscard]] Complex eval(std::span<const Complex> z) const;
    [[nodiscard]] Complex eval(const Point& z) const;

private:
    PointSequence seq_;
    HolderTriple triple_;
    std::vector<ExtensionTerm> terms_;
    std::vector<double> residuals_;
    ExtensionNorms norms_;
};

struct ExtensionOptions {
    int norm_grid_m = 256;
    bool compute_norms = true;
};

/// The explicit linear extension: gamma_b solves
/// gamma_b rho_b(b) k_{b,q}(b) = ||k_b||_{s'} pointwise, so that
/// chi_b^{1/s} h(b) = nu_b up to the recorded residual. Linear in nu.
[[nodiscard]] ExtensionResult build_extension(const PointSequence& S, const TargetSequence& nu,
                                              const HolderTriple& triple,
                                              const std::vector<DualElement>& duals,
                                              const ExtensionOptions& opts = {});

// =====================================================================
// Bernoulli sign machinery
// =====================================================================

struct SignVector {
    std::vector<int> signs;  // entries exactly +1 or -1
};

struct SignOptions {
    int exhaustive_cap = 14;           // exact averaging up to 2^cap vectors
    long samples = 100000;             // Monte Carlo budget beyond the cap
    unsigned long long seed = 1;
};

struct BernoulliStats {
    double lhs;  // E ||sum eps_a mu_a rho_a||_2^2 (exact or sampled)
    double rhs;  // sum |mu_a|^2 ||rho_a||_2^2 via the Gram closed form
    bool exhaustive;
    long samples_used;
};

[[nodiscard]] BernoulliStats bernoulli_expectation(const PointSequence& S,
                                                   std::span<const Complex> mu,
                                                   const std::vector<KernelCombination>& duals,
                                                   const SignOptions& opts = {});

enum class SignSearchMode { exhaustive, sampled };

class SignSearchFailure : public std::runtime_error {
public:
    SignSearchFailure(double best, double target, long budget)
        : std::runtime_error("best_signs: sampled search found no sign vector reaching " +
                             std::to_string(target) + " (best " + std::to_string(best) +
                             " after " + std::to_string(budget) + " draws)") {}
};

struct BestSigns {
    SignVector signs;
    double achieved;  // ||sum eps_a mu_a rho_a||_2^2 for the returned signs
    double target;    // sum |mu_a|^2, always dominated by the maximum
    bool exhaustive;
};

/// Finds signs with ||sum eps_a mu_a rho_a||_2^2 >= sum |mu_a|^2. Exhaustive
/// mode returns the true maximizer; sampled mode throws SignSearchFailure
/// rather than returning a violating vector.
[[nodiscard]] BestSigns best_signs(const PointSequence& S, std::span<const Complex> mu,
                                   const std::vector<KernelCombination>& duals,
                                   SignSearchMode mode, const SignOptions& opts = {});

}  // namespace hardy
