#pragma once

#include <optional>

#include "hardy/exponent.hpp"
#include "hardy/point.hpp"

namespace hardy {

/// The H^p "convention" norm of the reproducing kernel k_a:
/// prod_j (1 - |a_j|^2)^{-1/p'}. For p = 1 this is 1.
[[nodiscard]] double convention_norm(const Point& a, Exponent p);

/// A product Szegő kernel k_a(z) = prod_j 1/(1 - conj(a_j) z_j), either raw or
/// divided by its convention H^p norm.
class KernelSpec {
public:
    /// Raw kernel.
    explicit KernelSpec(Point base)
        : base_(std::move(base)), scale_(1.0) {}

    /// Normalized in H^p: k_{a,p} = k_a * prod_j (1 - |a_j|^2)^{1/p'}.
    KernelSpec(Point base, Exponent p)
        : base_(std::move(base)),
          normalization_(p),
          scale_(1.0 / convention_norm(base_, p)) {}

    [[nodiscard]] const Point& base() const { return base_; }
    [[nodiscard]] int dim() const { return base_.dim(); }
    [[nodiscard]] const std::optional<Exponent>& normalization() const {
        return normalization_;
    }
    /// The constant multiplying the raw kernel (1 when raw).
    [[nodiscard]] double scale() const { return scale_; }

    /// Evaluation anywhere in the closed polydisc (|z_j| <= 1 allowed).
    [[nodiscard]] Complex eval(std::span<const Complex> z) const;
    [[nodiscard]] Complex eval(const Point& z) const;

private:
    Point base_;
    std::optional<Exponent> normalization_;
    double scale_;
};

[[nodiscard]] Complex eval_kernel(const KernelSpec& spec, std::span<const Complex> z);
[[nodiscard]] Complex eval_kernel(const KernelSpec& spec, const Point& z);

}  // namespace hardy
