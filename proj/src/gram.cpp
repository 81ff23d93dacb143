#include "hardy/gram.hpp"

#include <cmath>

namespace hardy {

GramMatrix gram_matrix(const PointSequence& S) {
    const int N = S.size();
    Eigen::MatrixXcd G(N, N);
    std::vector<double> chi(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) chi[static_cast<size_t>(i)] = S[i].chi_weight();
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            Complex k = 1.0;
            for (int j = 0; j < S.dim(); ++j) {
                k /= 1.0 - std::conj(S[a].coord(j)) * S[b].coord(j);
            }
            G(a, b) = k * std::sqrt(chi[static_cast<size_t>(a)] * chi[static_cast<size_t>(b)]);
        }
    }
    return GramMatrix{S, std::move(G)};
}

KernelCombination::KernelCombination(PointSequence sequence, Eigen::VectorXcd coefficients)
    : seq_(std::move(sequence)), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != seq_.size()) {
        throw std::invalid_argument("KernelCombination: one coefficient per point");
    }
}

Complex KernelCombination::eval(std::span<const Complex> z) const {
    if (static_cast<int>(z.size()) != dim()) {
        throw std::invalid_argument("KernelCombination::eval: dimension mismatch");
    }
    Complex sum = 0.0;
    for (int a = 0; a < seq_.size(); ++a) {
        Complex k = std::sqrt(seq_[a].chi_weight());
        for (int j = 0; j < dim(); ++j) {
            k /= 1.0 - std::conj(seq_[a].coord(j)) * z[static_cast<size_t>(j)];
        }
        sum += coeffs_(a) * k;
    }
    return sum;
}

Complex KernelCombination::eval(const Point& z) const {
    return eval(std::span<const Complex>(z.coords()));
}

BoundarySamples KernelCombination::sample_boundary(const TorusGrid& grid) const {
    if (grid.dim() != dim()) {
        throw std::invalid_argument("KernelCombination::sample_boundary: dimension mismatch");
    }
    const int N = seq_.size();
    const int m = grid.samples_per_circle();

    // tables[a][j][k]: per-term per-coordinate circle factors, chi^{1/2} folded
    // into coordinate 0.
    std::vector<std::vector<std::vector<Complex>>> tables(static_cast<size_t>(N));
    for (int a = 0; a < N; ++a) {
        auto& per_coord = tables[static_cast<size_t>(a)];
        per_coord.reserve(static_cast<size_t>(dim()));
        for (int j = 0; j < dim(); ++j) {
            const double s = (j == 0) ? std::sqrt(seq_[a].chi_weight()) : 1.0;
            per_coord.push_back(kernel_factor_samples(seq_[a].coord(j), s, grid));
        }
    }

    std::vector<Complex> values(static_cast<size_t>(grid.node_count()), Complex(0.0));
    std::vector<Complex> partial(static_cast<size_t>(N));
    switch (dim()) {
        case 1:
            for (int k = 0; k < m; ++k) {
                Complex acc = 0.0;
                for (int a = 0; a < N; ++a) {
                    acc += coeffs_(a) * tables[static_cast<size_t>(a)][0][static_cast<size_t>(k)];
                }
                values[static_cast<size_t>(k)] = acc;
            }
            break;
        case 2:
            for (int k2 = 0; k2 < m; ++k2) {
                for (int a = 0; a < N; ++a) {
                    partial[static_cast<size_t>(a)] =
                        coeffs_(a) * tables[static_cast<size_t>(a)][1][static_cast<size_t>(k2)];
                }
                Complex* row = values.data() + static_cast<long>(k2) * m;
                for (int k1 = 0; k1 < m; ++k1) {
                    Complex acc = 0.0;
                    for (int a = 0; a < N; ++a) {
                        acc += partial[static_cast<size_t>(a)] *
                               tables[static_cast<size_t>(a)][0][static_cast<size_t>(k1)];
                    }
                    row[k1] = acc;
                }
            }
            break;
        default:
            for (int k3 = 0; k3 < m; ++k3) {
                std::vector<Complex> outer(static_cast<size_t>(N));
                for (int a = 0; a < N; ++a) {
                    outer[static_cast<size_t>(a)] =
                        coeffs_(a) * tables[static_cast<size_t>(a)][2][static_cast<size_t>(k3)];
                }
                for (int k2 = 0; k2 < m; ++k2) {
                    for (int a = 0; a < N; ++a) {
                        partial[static_cast<size_t>(a)] =
                            outer[static_cast<size_t>(a)] *
                            tables[static_cast<size_t>(a)][1][static_cast<size_t>(k2)];
                    }
                    Complex* row = values.data() + (static_cast<long>(k3) * m + k2) * m;
                    for (int k1 = 0; k1 < m; ++k1) {
                        Complex acc = 0.0;
                        for (int a = 0; a < N; ++a) {
                            acc += partial[static_cast<size_t>(a)] *
                                   tables[static_cast<size_t>(a)][0][static_cast<size_t>(k1)];
                        }
                        row[k1] = acc;
                    }
                }
            }
            break;
    }
    return BoundarySamples{grid, std::move(values)};
}

GramSystem::GramSystem(PointSequence S) : gram_(gram_matrix(S)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram_.entries);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("GramSystem: eigendecomposition failed");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
    singular_ = !(lambda_min() > kGramSingularTol);
    if (!singular_) {
        inverse_ = eigenvectors_ * eigenvalues_.cwiseInverse().asDiagonal() *
                   eigenvectors_.adjoint();
    }
}

const Eigen::MatrixXcd& GramSystem::inverse() const {
    if (singular_) throw NearSingularGram(lambda_min());
    return inverse_;
}

Complex GramSystem::inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
    return (x.transpose() * gram_.entries * y.conjugate())(0, 0);
}

double GramSystem::norm(const Eigen::VectorXcd& x) const {
    double v = inner(x, x).real();
    return std::sqrt(std::max(v, 0.0));
}

std::vector<KernelCombination> dual_sequence(const GramSystem& sys) {
    const Eigen::MatrixXcd& H = sys.inverse();
    std::vector<KernelCombination> duals;
    duals.reserve(static_cast<size_t>(sys.size()));
    for (int a = 0; a < sys.size(); ++a) {
        duals.emplace_back(sys.sequence(), H.row(a).transpose());
    }
    return duals;
}

std::vector<KernelCombination> dual_sequence(const PointSequence& S) {
    return dual_sequence(GramSystem(S));
}

double dual_bound_h2(const GramSystem& sys) {
    const Eigen::MatrixXcd& H = sys.inverse();
    double worst = 0.0;
    for (int a = 0; a < sys.size(); ++a) {
        worst = std::max(worst, std::sqrt(H(a, a).real()));
    }
    return worst;
}

double dual_bound_h2(const PointSequence& S) { return dual_bound_h2(GramSystem(S)); }

double interpolation_constant_h2(const GramSystem& sys) {
    if (!(sys.lambda_min() > kGramSingularTol)) throw NearSingularGram(sys.lambda_min());
    return 1.0 / std::sqrt(sys.lambda_min());
}

double interpolation_constant_h2(const PointSequence& S) {
    return interpolation_constant_h2(GramSystem(S));
}

double h2_norm_closed_form(const KernelCombination& f) {
    GramSystem sys(f.sequence());
    return sys.norm(f.coefficients());
}

Complex h2_inner_closed_form(const KernelCombination& f, const KernelCombination& g) {
    if (f.sequence().size() != g.sequence().size()) {
        throw std::invalid_argument("h2_inner_closed_form: combinations over one sequence");
    }
    GramSystem sys(f.sequence());
    return sys.inner(f.coefficients(), g.coefficients());
}

KernelCombination min_norm_interpolant(const GramSystem& sys,
                                       std::span<const Complex> targets) {
    if (static_cast<int>(targets.size()) != sys.size()) {
        throw std::invalid_argument("min_norm_interpolant: one target per point");
    }
    Eigen::VectorXcd lambda(sys.size());
    for (int a = 0; a < sys.size(); ++a) lambda(a) = targets[static_cast<size_t>(a)];
    // <f, k_{a,2}> = lambda_a  <=>  G^T c = lambda; G Hermitian so
    // (G^T)^{-1} = conj(G^{-1}).
    Eigen::VectorXcd c = sys.inverse().conjugate() * lambda;
    return KernelCombination(sys.sequence(), std::move(c));
}

KernelCombination min_norm_interpolant(const PointSequence& S,
                                       std::span<const Complex> targets) {
    return min_norm_interpolant(GramSystem(S), targets);
}

}  // namespace hardy
