#include "hardy/generators.hpp"

#include <cmath>
#include <random>

namespace hardy {

namespace {

std::vector<double> directions(const GeneratorSpec& spec) {
    std::vector<double> dir = spec.direction;
    if (dir.empty()) dir.assign(static_cast<size_t>(spec.dim), 0.0);
    if (static_cast<int>(dir.size()) != spec.dim) {
        throw std::invalid_argument("generate: one direction angle per coordinate");
    }
    return dir;
}

Point along(double radius, const std::vector<double>& dir) {
    std::vector<Complex> c;
    c.reserve(dir.size());
    for (double th : dir) c.push_back(std::polar(radius, th));
    return Point{std::move(c)};
}

PointSequence generate_radial(const GeneratorSpec& spec) {
    if (!(spec.ratio > 0.0 && spec.ratio < 1.0)) {
        throw std::invalid_argument("generate: radial ratio must lie in (0, 1)");
    }
    const std::vector<double> dir = directions(spec);
    std::vector<Point> pts;
    for (int k = 1; k <= spec.count; ++k) {
        const double r = 1.0 - std::pow(spec.ratio, k);
        if (r > 1.0 - kBoundaryMargin) {
            throw GenerationFailure("generate: radial count too large, points reach the boundary margin");
        }
        pts.push_back(along(r, dir));
    }
    return PointSequence(std::move(pts));
}

PointSequence generate_lattice(const GeneratorSpec& spec) {
    if (!(spec.ratio > 0.0 && spec.ratio < 1.0)) {
        throw std::invalid_argument("generate: lattice ratio must lie in (0, 1)");
    }
    std::vector<double> axis;
    for (int k = 1; k <= spec.count; ++k) {
        const double r = 1.0 - std::pow(spec.ratio, k);
        if (r > 1.0 - kBoundaryMargin) {
            throw GenerationFailure("generate: lattice side too large, points reach the boundary margin");
        }
        axis.push_back(r);
    }
    long total = 1;
    for (int j = 0; j < spec.dim; ++j) total *= spec.count;
    if (total > 4096) throw std::invalid_argument("generate: lattice size cap exceeded");

    std::vector<Point> pts;
    for (long id = 0; id < total; ++id) {
        long rest = id;
        std::vector<Complex> c;
        for (int j = 0; j < spec.dim; ++j) {
            c.emplace_back(axis[static_cast<size_t>(rest % spec.count)], 0.0);
            rest /= spec.count;
        }
        pts.push_back(Point{std::move(c)});
    }
    return PointSequence(std::move(pts));
}

PointSequence generate_random_separated(const GeneratorSpec& spec) {
    if (!(spec.min_distance > 0.0 && spec.min_distance < 1.0)) {
        throw std::invalid_argument("generate: min_distance must lie in (0, 1)");
    }
    std::mt19937_64 gen(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Point> pts;
    long tries = 0;
    while (static_cast<int>(pts.size()) < spec.count) {
        if (++tries > spec.rejection_budget) {
            throw GenerationFailure(
                "generate: rejection budget exhausted at " + std::to_string(pts.size()) +
                " of " + std::to_string(spec.count) + " points (min_distance " +
                std::to_string(spec.min_distance) + ")");
        }
        std::vector<Complex> c;
        for (int j = 0; j < spec.dim; ++j) {
            c.push_back(std::polar(spec.max_radius * std::sqrt(unif(gen)),
                                   2.0 * M_PI * unif(gen)));
        }
        Point cand{std::move(c)};
        bool ok = true;
        for (const Point& p : pts) {
            if (gleason_distance(p, cand) < spec.min_distance) {
                ok = false;
                break;
            }
        }
        if (ok) pts.push_back(std::move(cand));
    }
    return PointSequence(std::move(pts));
}

PointSequence generate_colliding(const GeneratorSpec& spec) {
    if (spec.count < 2 || spec.count % 2 != 0) {
        throw std::invalid_argument("generate: colliding count must be even and >= 2");
    }
    if (!(spec.shrink > 0.0 && spec.shrink < 1.0) ||
        !(spec.first_distance > 0.0 && spec.first_distance < 1.0)) {
        throw std::invalid_argument("generate: colliding gaps must lie in (0, 1)");
    }
    const std::vector<double> dir = directions(spec);
    const int pairs = spec.count / 2;
    std::vector<Point> pts;
    for (int k = 0; k < pairs; ++k) {
        const double phase = 2.0 * M_PI * k / pairs;
        std::vector<Complex> anchor, partner;
        const double d = spec.first_distance * std::pow(spec.shrink, k);
        for (int j = 0; j < spec.dim; ++j) {
            const Complex b = std::polar(spec.base_radius, dir[static_cast<size_t>(j)] + phase);
            // Möbius image of d at b: coordinate-wise Gleason distance exactly d
            const Complex w = (d + b) / (1.0 + std::conj(b) * d);
            anchor.push_back(b);
            partner.push_back(w);
        }
        pts.push_back(Point{std::move(anchor)});
        pts.push_back(Point{std::move(partner)});
    }
    return PointSequence(std::move(pts));
}

}  // namespace

Family family_from_string(const std::string& name) {
    if (name == "radial") return Family::radial;
    if (name == "lattice") return Family::lattice;
    if (name == "random-separated" || name == "random_separated") {
        return Family::random_separated;
    }
    if (name == "colliding") return Family::colliding;
    throw std::invalid_argument("unknown generator family: " + name);
}

std::string to_string(Family family) {
    switch (family) {
        case Family::radial: return "radial";
        case Family::lattice: return "lattice";
        case Family::random_separated: return "random-separated";
        case Family::colliding: return "colliding";
    }
    return "?";
}

PointSequence generate(const GeneratorSpec& spec) {
    if (spec.count < 1) throw std::invalid_argument("generate: count must be >= 1");
    if (spec.dim < 1 || spec.dim > 3) throw std::invalid_argument("generate: dim must be 1..3");
    switch (spec.family) {
        case Family::radial: return generate_radial(spec);
        case Family::lattice: return generate_lattice(spec);
        case Family::random_separated: return generate_random_separated(spec);
        case Family::colliding: return generate_colliding(spec);
    }
    throw std::invalid_argument("generate: unknown family");
}

double min_pairwise_gleason(const PointSequence& S) {
    double m = 1.0;
    for (int i = 0; i < S.size(); ++i) {
        for (int j = i + 1; j < S.size(); ++j) {
            m = std::min(m, gleason_distance(S[i], S[j]));
        }
    }
    return m;
}

}  // namespace hardy
