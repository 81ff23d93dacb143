#pragma once

#include <string>

#include "hardy/point.hpp"

namespace hardy {

enum class Family { radial, lattice, random_separated, colliding };

[[nodiscard]] Family family_from_string(const std::string& name);
[[nodiscard]] std::string to_string(Family family);

/// Deterministic sequence generators straddling the interpolation/Carleson
/// conditions: radial and lattice are well separated, random_separated holds
/// a prescribed Gleason gap, colliding is the degenerate control family.
struct GeneratorSpec {
    Family family = Family::radial;
    int count = 8;  // total points; per-axis size for lattice
    int dim = 1;
    unsigned long long seed = 1;

    double ratio = 0.5;  // radial / lattice: a_k = 1 - ratio^k

    double min_distance = 0.35;  // random_separated: pairwise Gleason floor
    double max_radius = 0.9;     // random_separated: coordinate modulus cap
    long rejection_budget = 200000;

    double base_radius = 0.6;     // colliding: modulus of the pair anchors
    double first_distance = 0.5;  // colliding: Gleason gap of the first pair
    double shrink = 0.5;          // colliding: per-pair gap shrink factor

    std::vector<double> direction;  // phase per coordinate; defaults to zeros
};

class GenerationFailure : public std::runtime_error {
public:
    explicit GenerationFailure(const std::string& what) : std::runtime_error(what) {}
};

[[nodiscard]] PointSequence generate(const GeneratorSpec& spec);

/// min over pairs of gleason_distance; the post-hoc separation check.
[[nodiscard]] double min_pairwise_gleason(const PointSequence& S);

}  // namespace hardy
