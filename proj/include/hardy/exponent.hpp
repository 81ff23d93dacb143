#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hardy {

/// Extended Lebesgue exponent in [1, inf] with Hölder-conjugate arithmetic.
/// The conventions 1' = inf and inf' = 1 are built in.
class Exponent {
public:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    // Implicit on purpose: `Exponent p = 2.0` reads naturally at call sites.
    Exponent(double p) : value_(p) {
        if (!(p >= 1.0)) {
            throw std::invalid_argument("Exponent: p must lie in [1, inf]");
        }
    }

    static Exponent infinity() { return Exponent(kInf); }

    [[nodiscard]] double value() const { return value_; }
    [[nodiscard]] bool is_finite() const { return std::isfinite(value_); }

    /// 1/p, with 1/inf = 0.
    [[nodiscard]] double reciprocal() const {
        return is_finite() ? 1.0 / value_ : 0.0;
    }

    /// The conjugate p' with 1/p + 1/p' = 1.
    [[nodiscard]] Exponent conjugate() const {
        if (value_ == 1.0) return infinity();
        if (!is_finite()) return Exponent(1.0);
        return Exponent(value_ / (value_ - 1.0));
    }

    friend bool operator==(const Exponent& a, const Exponent& b) {
        return a.value_ == b.value_;
    }
    friend bool operator<(const Exponent& a, const Exponent& b) {
        return a.value_ < b.value_;
    }

private:
    double value_;
};

[[nodiscard]] inline Exponent conjugate_exponent(Exponent p) { return p.conjugate(); }

/// Exponents (p, q, s) tied by 1/s = 1/p + 1/q with s >= 1, so s < p and s < q.
struct HolderTriple {
    Exponent p;
    Exponent q;
    Exponent s;

    /// Derives s from p and q. Requires 1/p + 1/q <= 1 so that s >= 1.
    HolderTriple(Exponent p_, Exponent q_)
        : p(p_), q(q_), s(derive_s(p_, q_)) {
        validate();
    }

    /// All three given; the defining identity is checked to machine precision.
    HolderTriple(Exponent p_, Exponent q_, Exponent s_) : p(p_), q(q_), s(s_) {
        double lhs = s.reciprocal();
        double rhs = p.reciprocal() + q.reciprocal();
        if (std::abs(lhs - rhs) > 1e-12) {
            throw std::invalid_argument("HolderTriple: 1/s = 1/p + 1/q violated");
        }
        validate();
    }

private:
    static Exponent derive_s(Exponent p_, Exponent q_) {
        double inv = p_.reciprocal() + q_.reciprocal();
        if (inv > 1.0 + 1e-15) {
            throw std::invalid_argument("HolderTriple: 1/p + 1/q > 1, no admissible s");
        }
        if (inv <= 0.0) return Exponent::infinity();
        return Exponent(1.0 / inv);
    }

    void validate() const {
        // Strict s < p and s < q; rules out infinite p or q (where s would
        // collapse onto the other exponent).
        if (!(s.value() < p.value()) || !(s.value() < q.value())) {
            throw std::invalid_argument("HolderTriple: requires s < p and s < q");
        }
    }
};

}  // namespace hardy
