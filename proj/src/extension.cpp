#include "hardy/extension.hpp"

#include <cmath>
#include <random>

namespace hardy {

double sequence_lp_norm(std::span<const Complex> values, Exponent p) {
    if (!p.is_finite()) {
        double sup = 0.0;
        for (const Complex& v : values) sup = std::max(sup, std::abs(v));
        return sup;
    }
    double sum = 0.0;
    for (const Complex& v : values) sum += std::pow(std::abs(v), p.value());
    return std::pow(sum, 1.0 / p.value());
}

HolderSplit holder_split(const TargetSequence& nu, const HolderTriple& triple) {
    if (std::abs(nu.s.reciprocal() - triple.s.reciprocal()) > 1e-12) {
        throw std::invalid_argument("holder_split: target exponent does not match the triple");
    }
    const double sp = triple.s.value() / triple.p.value();
    const double sq = triple.s.value() / triple.q.value();
    HolderSplit out{{}, {}, triple.p, triple.q};
    out.lambda.reserve(nu.values.size());
    out.mu.reserve(nu.values.size());
    for (const Complex& v : nu.values) {
        const double mod = std::abs(v);
        if (mod == 0.0) {
            out.lambda.emplace_back(0.0);
            out.mu.push_back(0.0);
        } else {
            out.lambda.push_back((v / mod) * std::pow(mod, sp));
            out.mu.push_back(std::pow(mod, sq));
        }
    }
    return out;
}

Complex DualElement::eval(std::span<const Complex> z) const {
    Complex v = combo.eval(z);
    if (factor) v *= factor->eval(z);
    return v;
}

Complex DualElement::eval(const Point& z) const {
    return eval(std::span<const Complex>(z.coords()));
}

BoundarySamples DualElement::sample_boundary(const TorusGrid& grid) const {
    BoundarySamples s = combo.sample_boundary(grid);
    if (factor) {
        BoundarySamples f = sample_kernel(*factor, grid);
        for (size_t i = 0; i < s.values.size(); ++i) s.values[i] *= f.values[i];
    }
    return s;
}

std::vector<DualElement> as_dual_elements(std::vector<KernelCombination> duals) {
    std::vector<DualElement> out;
    out.reserve(duals.size());
    for (auto& d : duals) out.push_back(DualElement{std::move(d), std::nullopt});
    return out;
}

TransportResult transport_duals(const std::vector<KernelCombination>& gammas, Exponent p, Exponent q,
                        int grid_m) {
    if (gammas.empty()) throw std::invalid_argument("transport_duals: no duals given");
    if (q.value() > p.value()) {
        throw std::invalid_argument("transport_duals: requires q <= p");
    }
    const PointSequence& S = gammas.front().sequence();
    const int N = S.size();
    if (static_cast<int>(gammas.size()) != N) {
        throw std::invalid_argument("transport_duals: one dual per point of S");
    }

    const double inv_r = q.reciprocal() - p.reciprocal();
    const Exponent r = inv_r <= 0.0 ? Exponent::infinity() : Exponent(1.0 / inv_r);

    TransportResult out{{}, r, 0.0, grid_m};
    for (int a = 0; a < N; ++a) {
        out.duals.push_back(DualElement{gammas[static_cast<size_t>(a)], KernelSpec(S[a], r)});
    }

    // re-verify duality against k_{b,q'} by boundary quadrature
    const Exponent qprime = q.conjugate();
    TorusGrid grid(S.dim(), grid_m);
    std::vector<BoundarySamples> dual_samples;
    std::vector<BoundarySamples> kernel_samples;
    for (int a = 0; a < N; ++a) {
        dual_samples.push_back(out.duals[static_cast<size_t>(a)].sample_boundary(grid));
        kernel_samples.push_back(sample_kernel(KernelSpec(S[a], qprime), grid));
    }
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            const Complex pairing = boundary_inner(dual_samples[static_cast<size_t>(a)],
                                                   kernel_samples[static_cast<size_t>(b)]);
            const double expect = (a == b) ? 1.0 : 0.0;
            out.max_duality_residual =
                std::max(out.max_duality_residual, std::abs(pairing - expect));
        }
    }
    return out;
}

namespace {

double kernel_norm(const Point& a, Exponent t, NormMode mode, double tol) {
    return mode == NormMode::convention ? convention_norm(a, t)
                                        : kernel_norm_quadrature(a, t, tol);
}

}  // namespace

double gamma_coefficient(const Point& b, const HolderTriple& triple, NormMode mode,
                         double tol) {
    const double num = kernel_norm(b, triple.s.conjugate(), mode, tol) *
                       kernel_norm(b, triple.q, mode, tol);
    const double n2 = kernel_norm(b, 2.0, mode, tol);
    const double den = kernel_norm(b, triple.p.conjugate(), mode, tol) * n2 * n2;
    return num / den;
}

StructuralRatios structural_hypotheses_check(const Point& a, const HolderTriple& triple,
                                             NormMode mode, double tol) {
    const double n2 = kernel_norm(a, 2.0, mode, tol);
    const double nq = kernel_norm(a, triple.q, mode, tol);
    const double nqp = kernel_norm(a, triple.q.conjugate(), mode, tol);
    const double nsp = kernel_norm(a, triple.s.conjugate(), mode, tol);
    const double npp = kernel_norm(a, triple.p.conjugate(), mode, tol);
    return StructuralRatios{n2 * n2 / (nq * nqp), nsp / (npp * nqp)};
}

double ExtensionResult::max_residual() const {
    double m = 0.0;
    for (double r : residuals_) m = std::max(m, r);
    return m;
}

Complex ExtensionResult::eval(std::span<const Complex> z) const {
    Complex sum = 0.0;
    for (const ExtensionTerm& t : terms_) {
        sum += t.gamma * t.nu * t.rho.eval(z) * t.kernel_q.eval(z);
    }
    return sum;
}

Complex ExtensionResult::eval(const Point& z) const {
    return eval(std::span<const Complex>(z.coords()));
}

ExtensionResult build_extension(const PointSequence& S, const TargetSequence& nu,
                                const HolderTriple& triple,
                                const std::vector<DualElement>& duals,
                                const ExtensionOptions& opts) {
    const int N = S.size();
    if (static_cast<int>(nu.values.size()) != N) {
        throw std::invalid_argument("build_extension: one target per point");
    }
    if (static_cast<int>(duals.size()) != N) {
        throw std::invalid_argument("build_extension: one dual per point");
    }
    if (std::abs(nu.s.reciprocal() - triple.s.reciprocal()) > 1e-12) {
        throw std::invalid_argument("build_extension: target exponent does not match the triple");
    }

    const Exponent sprime = triple.s.conjugate();
    std::vector<ExtensionTerm> terms;
    terms.reserve(static_cast<size_t>(N));
    for (int b = 0; b < N; ++b) {
        KernelSpec kq(S[b], triple.q);
        const Complex rho_bb = duals[static_cast<size_t>(b)].eval(S[b]);
        const Complex denom = rho_bb * kq.eval(S[b]);
        if (std::abs(denom) < 1e-300) {
            throw std::runtime_error("build_extension: degenerate dual, rho_b(b) k_{b,q}(b) = 0");
        }
        const Complex gamma = convention_norm(S[b], sprime) / denom;
        terms.push_back(ExtensionTerm{gamma, nu.values[static_cast<size_t>(b)],
                                      duals[static_cast<size_t>(b)], std::move(kq)});
    }

    ExtensionResult partial(S, triple, std::move(terms), {}, {});
    std::vector<double> residuals;
    residuals.reserve(static_cast<size_t>(N));
    const double inv_s = triple.s.reciprocal();
    for (int b = 0; b < N; ++b) {
        const Complex hb = partial.eval(S[b]);
        const double chi_pow = std::pow(S[b].chi_weight(), inv_s);
        residuals.push_back(std::abs(chi_pow * hb - nu.values[static_cast<size_t>(b)]));
    }

    ExtensionNorms norms;
    if (opts.compute_norms) {
        norms.grid_m = opts.norm_grid_m;
        TorusGrid grid(S.dim(), opts.norm_grid_m);
        const HolderSplit split = holder_split(nu, triple);
        const Exponent pprime = triple.p.conjugate();
        const double pv = triple.p.value();
        const double ppv = pprime.value();

        std::vector<Complex> h(static_cast<size_t>(grid.node_count()), Complex(0.0));
        std::vector<double> gp(static_cast<size_t>(grid.node_count()), 0.0);
        std::vector<double> fp(static_cast<size_t>(grid.node_count()), 0.0);
        for (int a = 0; a < N; ++a) {
            const ExtensionTerm& t = partial.terms()[static_cast<size_t>(a)];
            BoundarySamples rho_s = t.rho.sample_boundary(grid);
            BoundarySamples kq_s = sample_kernel(t.kernel_q, grid);
            const Complex weight = t.gamma * t.nu;
            const double lam = std::abs(split.lambda[static_cast<size_t>(a)]);
            const double mu = split.mu[static_cast<size_t>(a)];
            for (size_t i = 0; i < h.size(); ++i) {
                h[i] += weight * rho_s.values[i] * kq_s.values[i];
                gp[i] += std::pow(lam * std::abs(rho_s.values[i]), pv);
                fp[i] += std::pow(mu * std::abs(kq_s.values[i]), ppv);
            }
            norms.gamma_max = std::max(norms.gamma_max, std::abs(t.gamma));
        }
        std::vector<Complex> g(gp.size()), f(fp.size());
        for (size_t i = 0; i < gp.size(); ++i) {
            g[i] = std::pow(gp[i], 1.0 / pv);
            f[i] = std::pow(fp[i], 1.0 / ppv);
        }
        norms.h_norm_s = lp_norm(BoundarySamples{grid, std::move(h)}, triple.s);
        norms.g_norm_p = lp_norm(BoundarySamples{grid, std::move(g)}, triple.p);
        norms.f_norm_q = lp_norm(BoundarySamples{grid, std::move(f)}, triple.q);
        norms.holder_bound = norms.gamma_max * norms.g_norm_p * norms.f_norm_q;
    }

    return ExtensionResult(S, triple, std::vector<ExtensionTerm>(partial.terms()),
                           std::move(residuals), norms);
}

// =====================================================================
// Bernoulli signs
// =====================================================================

namespace {

/// R(a,b) = Re(mu_a conj(mu_b) <rho_a, rho_b>): the quadratic form whose
/// value at signs eps is ||sum eps_a mu_a rho_a||_2^2.
Eigen::MatrixXd sign_form(const PointSequence& S, std::span<const Complex> mu,
                          const std::vector<KernelCombination>& duals) {
    const int N = S.size();
    if (static_cast<int>(mu.size()) != N || static_cast<int>(duals.size()) != N) {
        throw std::invalid_argument("sign machinery: sizes of S, mu and duals must agree");
    }
    GramSystem sys(S);
    Eigen::MatrixXcd X(N, N);
    for (int a = 0; a < N; ++a) {
        X.row(a) = duals[static_cast<size_t>(a)].coefficients().transpose();
    }
    Eigen::MatrixXcd inner = X * sys.matrix() * X.adjoint();  // <rho_a, rho_b>
    Eigen::MatrixXd R(N, N);
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            R(a, b) = (mu[static_cast<size_t>(a)] * std::conj(mu[static_cast<size_t>(b)]) *
                       inner(a, b))
                          .real();
        }
    }
    return R;
}

double form_value(const Eigen::MatrixXd& R, unsigned long long mask) {
    const int N = static_cast<int>(R.rows());
    double value = 0.0;
    for (int a = 0; a < N; ++a) {
        const double ea = (mask >> a) & 1ULL ? 1.0 : -1.0;
        for (int b = 0; b < N; ++b) {
            const double eb = (mask >> b) & 1ULL ? 1.0 : -1.0;
            value += ea * eb * R(a, b);
        }
    }
    return value;
}

SignVector mask_to_signs(unsigned long long mask, int N) {
    SignVector s;
    for (int a = 0; a < N; ++a) s.signs.push_back((mask >> a) & 1ULL ? 1 : -1);
    return s;
}

}  // namespace

BernoulliStats bernoulli_expectation(const PointSequence& S, std::span<const Complex> mu,
                                     const std::vector<KernelCombination>& duals,
                                     const SignOptions& opts) {
    const Eigen::MatrixXd R = sign_form(S, mu, duals);
    const int N = S.size();
    const double rhs = R.trace();

    if (N <= opts.exhaustive_cap) {
        const unsigned long long count = 1ULL << N;
        double sum = 0.0;
        for (unsigned long long mask = 0; mask < count; ++mask) {
            sum += form_value(R, mask);
        }
        return BernoulliStats{sum / static_cast<double>(count), rhs, true,
                              static_cast<long>(count)};
    }

    std::mt19937_64 gen(opts.seed);
    double sum = 0.0;
    for (long i = 0; i < opts.samples; ++i) {
        sum += form_value(R, gen());
    }
    return BernoulliStats{sum / static_cast<double>(opts.samples), rhs, false, opts.samples};
}

BestSigns best_signs(const PointSequence& S, std::span<const Complex> mu,
                     const std::vector<KernelCombination>& duals, SignSearchMode mode,
                     const SignOptions& opts) {
    const Eigen::MatrixXd R = sign_form(S, mu, duals);
    const int N = S.size();
    double target = 0.0;
    for (const Complex& m : mu) target += std::norm(m);

    if (mode == SignSearchMode::exhaustive) {
        if (N > opts.exhaustive_cap) {
            throw std::invalid_argument("best_signs: N exceeds the exhaustive cap");
        }
        // global sign flip leaves the form invariant; fix the last sign
        const unsigned long long count = 1ULL << (N - 1);
        double best = -1.0;
        unsigned long long best_mask = 0;
        for (unsigned long long mask = 0; mask < count; ++mask) {
            const unsigned long long full = mask | (1ULL << (N - 1));
            const double value = form_value(R, full);
            if (value > best) {
                best = value;
                best_mask = full;
            }
        }
        return BestSigns{mask_to_signs(best_mask, N), best, target, true};
    }

    std::mt19937_64 gen(opts.seed);
    double best = -1.0;
    unsigned long long best_mask = 0;
    for (long i = 0; i < opts.samples; ++i) {
        const unsigned long long mask = gen();
        const double value = form_value(R, mask);
        if (value > best) {
            best = value;
            best_mask = mask;
        }
        if (best >= target) {
            return BestSigns{mask_to_signs(best_mask, N), best, target, false};
        }
    }
    throw SignSearchFailure(best, target, opts.samples);
}

}  // namespace hardy
