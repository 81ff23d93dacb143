#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hardy {

using Complex = std::complex<double>;

/// Points whose coordinates come this close to the unit circle are rejected;
/// kernels at closer points are too ill-conditioned for double precision.
inline constexpr double kBoundaryMargin = 1e-12;

/// A point of the open polydisc: n complex coordinates, each of modulus < 1.
class Point {
public:
    explicit Point(std::vector<Complex> coords);
    Point(std::initializer_list<Complex> coords)
        : Point(std::vector<Complex>(coords)) {}

    [[nodiscard]] int dim() const { return static_cast<int>(coords_.size()); }
    [[nodiscard]] const std::vector<Complex>& coords() const { return coords_; }
    [[nodiscard]] Complex coord(int j) const { return coords_[static_cast<size_t>(j)]; }

    /// chi_a = prod_j (1 - |a_j|^2), the inverse square of the kernel H^2 norm.
    [[nodiscard]] double chi_weight() const;

    friend bool operator==(const Point& a, const Point& b) {
        return a.coords_ == b.coords_;
    }

private:
    std::vector<Complex> coords_;
};

[[nodiscard]] double chi_weight(const Point& a);

/// Pseudo-hyperbolic (Gleason) distance; for n > 1 the maximum of the
/// one-variable distances over coordinates.
[[nodiscard]] double gleason_distance(const Point& a, const Point& b);

/// A finite ordered sequence of pairwise distinct points of common dimension.
class PointSequence {
public:
    explicit PointSequence(std::vector<Point> points,
                           std::vector<std::string> labels = {});

    [[nodiscard]] int size() const { return static_cast<int>(points_.size()); }
    [[nodiscard]] int dim() const { return points_.front().dim(); }
    [[nodiscard]] const Point& operator[](int i) const {
        return points_[static_cast<size_t>(i)];
    }
    [[nodiscard]] const std::vector<Point>& points() const { return points_; }
    [[nodiscard]] const std::string& label(int i) const {
        return labels_[static_cast<size_t>(i)];
    }

    /// Index of the point equal to b, or -1.
    [[nodiscard]] int index_of(const Point& b) const;

private:
    std::vector<Point> points_;
    std::vector<std::string> labels_;
};

/// prod_{a in S, a != b} d_G(a, b); empty product 1 for a singleton.
/// Throws if b is not a member of S.
[[nodiscard]] double gleason_product(const PointSequence& S, const Point& b);

/// min over b in S of gleason_product(S, b); the separation quantity of the
/// one-variable interpolation condition.
[[nodiscard]] double min_gleason_product(const PointSequence& S);

}  // namespace hardy
