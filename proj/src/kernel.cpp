#include "hardy/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace hardy {

double convention_norm(const Point& a, Exponent p) {
    const double inv_pprime = p.conjugate().reciprocal();
    double norm = 1.0;
    for (const Complex& c : a.coords()) {
        norm *= std::pow(1.0 - std::norm(c), -inv_pprime);
    }
    return norm;
}

Complex KernelSpec::eval(std::span<const Complex> z) const {
    if (static_cast<int>(z.size()) != dim()) {
        throw std::invalid_argument("KernelSpec::eval: dimension mismatch");
    }
    Complex value(scale_, 0.0);
    for (int j = 0; j < dim(); ++j) {
        value /= 1.0 - std::conj(base_.coord(j)) * z[static_cast<size_t>(j)];
    }
    return value;
}

Complex KernelSpec::eval(const Point& z) const {
    return eval(std::span<const Complex>(z.coords()));
}

Complex eval_kernel(const KernelSpec& spec, std::span<const Complex> z) {
    return spec.eval(z);
}

Complex eval_kernel(const KernelSpec& spec, const Point& z) {
    return spec.eval(z);
}

}  // namespace hardy
