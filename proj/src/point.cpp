#include "hardy/point.hpp"

#include <cmath>
#include <stdexcept>

namespace hardy {

Point::Point(std::vector<Complex> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) {
        throw std::invalid_argument("Point: dimension must be >= 1");
    }
    for (const Complex& c : coords_) {
        if (!(std::abs(c) <= 1.0 - kBoundaryMargin)) {
            throw std::invalid_argument(
                "Point: coordinate modulus must stay below 1 - 1e-12");
        }
    }
}

double Point::chi_weight() const {
    double w = 1.0;
    for (const Complex& c : coords_) w *= 1.0 - std::norm(c);
    return w;
}

double chi_weight(const Point& a) { return a.chi_weight(); }

double gleason_distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("gleason_distance: dimension mismatch");
    }
    double d = 0.0;
    for (int j = 0; j < a.dim(); ++j) {
        Complex num = a.coord(j) - b.coord(j);
        Complex den = 1.0 - std::conj(a.coord(j)) * b.coord(j);
        d = std::max(d, std::abs(num / den));
    }
    return d;
}

PointSequence::PointSequence(std::vector<Point> points,
                             std::vector<std::string> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
    if (points_.empty()) {
        throw std::invalid_argument("PointSequence: must be nonempty");
    }
    const int n = points_.front().dim();
    for (const Point& p : points_) {
        if (p.dim() != n) {
            throw std::invalid_argument("PointSequence: mixed dimensions");
        }
    }
    for (size_t i = 0; i < points_.size(); ++i) {
        for (size_t j = i + 1; j < points_.size(); ++j) {
            if (points_[i] == points_[j]) {
                throw std::invalid_argument("PointSequence: points must be pairwise distinct");
            }
        }
    }
    if (labels_.empty()) {
        labels_.reserve(points_.size());
        for (size_t i = 0; i < points_.size(); ++i) {
            labels_.push_back("p" + std::to_string(i));
        }
    } else if (labels_.size() != points_.size()) {
        throw std::invalid_argument("PointSequence: one label per point");
    }
}

int PointSequence::index_of(const Point& b) const {
    for (size_t i = 0; i < points_.size(); ++i) {
        if (points_[i] == b) return static_cast<int>(i);
    }
    return -1;
}

double gleason_product(const PointSequence& S, const Point& b) {
    const int ib = S.index_of(b);
    if (ib < 0) {
        throw std::invalid_argument("gleason_product: b is not a member of S");
    }
    double prod = 1.0;
    for (int i = 0; i < S.size(); ++i) {
        if (i != ib) prod *= gleason_distance(S[i], b);
    }
    return prod;
}

double min_gleason_product(const PointSequence& S) {
    double m = 1.0;
    for (int i = 0; i < S.size(); ++i) {
        m = std::min(m, gleason_product(S, S[i]));
    }
    return m;
}

}  // namespace hardy
