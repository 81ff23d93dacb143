#include "hardy/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hardy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalize_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    return r < 0.0 ? r + kTwoPi : r;
}

/// Circular distance of two angles, in [0, pi].
double circ_dist(double a, double b) {
    double d = std::abs(normalize_angle(a) - normalize_angle(b));
    return std::min(d, kTwoPi - d);
}

// =====================================================================
// Dyadic candidate machinery
//
// All dyadic scans speak one language: cells at the finest depth D,
// M = 2^D per coordinate, flat index c_0 + M c_1 + ... Candidate arcs per
// coordinate are the full circle (depth 0) and the dyadic arcs of depth
// 2..D. Depth-1 arcs (half-length pi/2 > 1) are excluded from candidates
// so every single-rectangle candidate is realizable as some R_z, keeping
// the rectangular bound a true lower bound of sup_z.
// =====================================================================

struct CellInterval {
    long start = 0;
    long len = 0;  // number of cells, cyclic from start
};

struct CandidateArc {
    int depth = 0;
    long index = 0;
    CellInterval cells;
};

bool interval_inside(const CellInterval& inner, const CellInterval& outer, long M) {
    if (outer.len >= M) return true;
    if (inner.len > outer.len) return false;
    long offset = ((inner.start - outer.start) % M + M) % M;
    return offset + inner.len <= outer.len;
}

struct DyadicScanner {
    int n = 0;
    int D = 0;
    long M = 1;           // cells per coordinate
    long total_cells = 1;  // M^n
    double cell_measure = 1.0;
    std::vector<double> weights;
    std::vector<std::vector<CellInterval>> required;  // [atom][coord]
    std::vector<CandidateArc> arcs;                   // shared across coordinates

    DyadicScanner(const DiscreteMeasure& mu, int depth) {
        if (mu.atoms.empty()) {
            throw std::invalid_argument("dyadic scan: measure must be nonempty");
        }
        if (depth < 0) throw std::invalid_argument("dyadic scan: depth must be >= 0");
        n = mu.dim();
        D = depth;
        M = 1L << D;
        for (int j = 0; j < n; ++j) {
            if (total_cells > (1L << 24) / M) {
                throw std::invalid_argument("dyadic scan: depth * dim exceeds resource cap");
            }
            total_cells *= M;
        }
        cell_measure = 1.0 / static_cast<double>(total_cells);

        const double w = kTwoPi / static_cast<double>(M);
        for (const auto& atom : mu.atoms) {
            weights.push_back(atom.weight);
            std::vector<CellInterval> per_coord;
            for (int j = 0; j < n; ++j) {
                const Complex z = atom.point.coord(j);
                if (z == Complex(0.0)) {
                    per_coord.push_back({0, M});
                    continue;
                }
                const double c = std::arg(z);
                const double h = 1.0 - std::abs(z);
                const long i0 = static_cast<long>(std::floor((c - h) / w));
                const long i1 = static_cast<long>(std::floor((c + h) / w));
                const long len = i1 - i0 + 1;
                if (len >= M) {
                    per_coord.push_back({0, M});
                } else {
                    per_coord.push_back({((i0 % M) + M) % M, len});
                }
            }
            required.push_back(std::move(per_coord));
        }

        arcs.push_back({0, 0, {0, M}});
        for (int d = 2; d <= D; ++d) {
            const long len = M >> d;
            for (long k = 0; k < (1L << d); ++k) {
                arcs.push_back({d, k, {k * len, len}});
            }
        }
    }

    [[nodiscard]] long component_count() const {
        long c = 1;
        for (int j = 0; j < n; ++j) c *= static_cast<long>(arcs.size());
        return c;
    }

    /// Decomposes a flat component id into per-coordinate arc indices.
    void component_arcs(long id, const CandidateArc** out) const {
        for (int j = 0; j < n; ++j) {
            out[j] = &arcs[static_cast<size_t>(id % static_cast<long>(arcs.size()))];
            id /= static_cast<long>(arcs.size());
        }
    }

    [[nodiscard]] bool atom_in_component(int atom, const CandidateArc* const* comp) const {
        for (int j = 0; j < n; ++j) {
            if (!interval_inside(required[static_cast<size_t>(atom)][static_cast<size_t>(j)],
                                 comp[j]->cells, M)) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] double component_measure(const CandidateArc* const* comp) const {
        double meas = 1.0;
        for (int j = 0; j < n; ++j) {
            meas *= static_cast<double>(comp[j]->cells.len) / static_cast<double>(M);
        }
        return meas;
    }

    [[nodiscard]] DyadicRect to_dyadic(const CandidateArc* const* comp) const {
        DyadicRect r;
        for (int j = 0; j < n; ++j) {
            r.depth.push_back(comp[j]->depth);
            r.index.push_back(comp[j]->index);
        }
        return r;
    }

    [[nodiscard]] bool cell_in_component(long flat, const CandidateArc* const* comp) const {
        for (int j = 0; j < n; ++j) {
            long c = flat % M;
            flat /= M;
            CellInterval single{c, 1};
            if (!interval_inside(single, comp[j]->cells, M)) return false;
        }
        return true;
    }

    /// Visits the flat indices of all cells in the product of intervals.
    template <typename F>
    void for_each_cell(const CandidateArc* const* comp, F&& fn) const {
        long counts[3] = {1, 1, 1};
        for (int j = 0; j < n; ++j) counts[j] = comp[j]->cells.len;
        for (long c2 = 0; c2 < counts[2]; ++c2) {
            for (long c1 = 0; c1 < counts[1]; ++c1) {
                for (long c0 = 0; c0 < counts[0]; ++c0) {
                    long flat = (comp[0]->cells.start + c0) % M;
                    if (n > 1) flat += M * ((comp[1]->cells.start + c1) % M);
                    if (n > 2) flat += M * M * ((comp[2]->cells.start + c2) % M);
                    fn(flat);
                }
            }
        }
    }

    template <typename F>
    void for_each_required_cell(int atom, F&& fn) const {
        const auto& req = required[static_cast<size_t>(atom)];
        long counts[3] = {1, 1, 1};
        for (int j = 0; j < n; ++j) counts[j] = req[static_cast<size_t>(j)].len;
        for (long c2 = 0; c2 < counts[2]; ++c2) {
            for (long c1 = 0; c1 < counts[1]; ++c1) {
                for (long c0 = 0; c0 < counts[0]; ++c0) {
                    long flat = (req[0].start + c0) % M;
                    if (n > 1) flat += M * ((req[1].start + c1) % M);
                    if (n > 2) flat += M * M * ((req[2].start + c2) % M);
                    fn(flat);
                }
            }
        }
    }
};

/// Best single dyadic component by mass/measure ratio.
struct SingleScanResult {
    double ratio = 0.0;
    long best_id = -1;
};

SingleScanResult scan_single_components(const DyadicScanner& sc) {
    SingleScanResult best;
    const CandidateArc* comp[3] = {nullptr, nullptr, nullptr};
    for (long id = 0; id < sc.component_count(); ++id) {
        sc.component_arcs(id, comp);
        double mass = 0.0;
        for (size_t i = 0; i < sc.weights.size(); ++i) {
            if (sc.atom_in_component(static_cast<int>(i), comp)) mass += sc.weights[i];
        }
        if (mass <= 0.0) continue;
        double ratio = mass / sc.component_measure(comp);
        if (ratio > best.ratio) {
            best.ratio = ratio;
            best.best_id = id;
        }
    }
    return best;
}

}  // namespace

// =====================================================================
// Measures, rectangles, region mass
// =====================================================================

int DiscreteMeasure::dim() const {
    if (atoms.empty()) throw std::invalid_argument("DiscreteMeasure: empty measure has no dimension");
    return atoms.front().point.dim();
}

double DiscreteMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.weight;
    return m;
}

void DiscreteMeasure::validate() const {
    for (const auto& a : atoms) {
        if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
            throw std::invalid_argument("DiscreteMeasure: weights must be finite and >= 0");
        }
        if (a.point.dim() != atoms.front().point.dim()) {
            throw std::invalid_argument("DiscreteMeasure: mixed dimensions");
        }
    }
}

DiscreteMeasure chi_measure(const PointSequence& S) {
    DiscreteMeasure mu;
    for (int i = 0; i < S.size(); ++i) {
        mu.atoms.push_back({S[i], S[i].chi_weight()});
    }
    return mu;
}

double Rectangle::measure() const {
    double m = 1.0;
    for (const ArcSpec& a : arcs) {
        m *= a.full ? 1.0 : std::min(1.0, a.half_length / std::numbers::pi);
    }
    return m;
}

Rectangle Rectangle::full_torus(int n) {
    Rectangle r;
    for (int j = 0; j < n; ++j) r.arcs.push_back({0.0, std::numbers::pi, true});
    return r;
}

Rectangle rectangle_of(const Point& z) {
    Rectangle r;
    for (int j = 0; j < z.dim(); ++j) {
        const Complex c = z.coord(j);
        if (c == Complex(0.0)) {
            r.arcs.push_back({0.0, std::numbers::pi, true});
        } else {
            r.arcs.push_back({normalize_angle(std::arg(c)), 1.0 - std::abs(c), false});
        }
    }
    return r;
}

bool arc_contains(const ArcSpec& outer, const ArcSpec& inner) {
    if (outer.full) return true;
    if (inner.full) return false;
    if (inner.half_length > outer.half_length) return false;
    return circ_dist(inner.center, outer.center) <=
           outer.half_length - inner.half_length + 1e-15;
}

bool rect_contains(const Rectangle& outer, const Rectangle& inner) {
    if (outer.dim() != inner.dim()) {
        throw std::invalid_argument("rect_contains: dimension mismatch");
    }
    for (int j = 0; j < outer.dim(); ++j) {
        if (!arc_contains(outer.arcs[static_cast<size_t>(j)],
                          inner.arcs[static_cast<size_t>(j)])) {
            return false;
        }
    }
    return true;
}

double region_mass(const DiscreteMeasure& mu, const Rectangle& R) {
    mu.validate();
    double mass = 0.0;
    for (const auto& atom : mu.atoms) {
        if (atom.point.dim() != R.dim()) {
            throw std::invalid_argument("region_mass: dimension mismatch");
        }
        if (rect_contains(R, rectangle_of(atom.point))) mass += atom.weight;
    }
    return mass;
}

Rectangle to_rectangle(const DyadicRect& d) {
    Rectangle r;
    for (size_t j = 0; j < d.depth.size(); ++j) {
        if (d.depth[j] == 0) {
            r.arcs.push_back({0.0, std::numbers::pi, true});
        } else {
            const double width = kTwoPi / static_cast<double>(1L << d.depth[j]);
            r.arcs.push_back({normalize_angle(width * (static_cast<double>(d.index[j]) + 0.5)),
                              width / 2.0, false});
        }
    }
    return r;
}

// =====================================================================
// Carleson constants
// =====================================================================

RectangularBound rectangular_constant_dyadic(const DiscreteMeasure& mu, int depth) {
    mu.validate();
    DyadicScanner sc(mu, depth);
    SingleScanResult best = scan_single_components(sc);
    const CandidateArc* comp[3] = {nullptr, nullptr, nullptr};
    RectangularBound out;
    out.constant = best.ratio;
    if (best.best_id >= 0) {
        sc.component_arcs(best.best_id, comp);
        out.witness = to_rectangle(sc.to_dyadic(comp));
    } else {
        out.witness = Rectangle::full_torus(sc.n);
    }
    return out;
}

RectangularBound rectangular_constant(const DiscreteMeasure& mu, int depth) {
    RectangularBound best = rectangular_constant_dyadic(mu, depth);

    // Products of the atoms' own arcs; every product is some R_z.
    const int n = mu.dim();
    const long N = static_cast<long>(mu.atoms.size());
    long products = 1;
    for (int j = 0; j < n; ++j) {
        if (products > 300000 / std::max(N, 1L)) {
            throw std::invalid_argument("rectangular_constant: atom-arc product family too large");
        }
        products *= N;
    }
    std::vector<Rectangle> atom_rects;
    atom_rects.reserve(static_cast<size_t>(N));
    for (const auto& atom : mu.atoms) atom_rects.push_back(rectangle_of(atom.point));

    for (long id = 0; id < products; ++id) {
        Rectangle cand;
        long rest = id;
        for (int j = 0; j < n; ++j) {
            cand.arcs.push_back(atom_rects[static_cast<size_t>(rest % N)].arcs[static_cast<size_t>(j)]);
            rest /= N;
        }
        const double meas = cand.measure();
        if (meas <= 0.0) continue;
        const double ratio = region_mass(mu, cand) / meas;
        if (ratio > best.constant) {
            best.constant = ratio;
            best.witness = cand;
        }
    }
    return best;
}

OpenSetBound open_set_constant_lower(const DiscreteMeasure& mu, int depth,
                                     int max_components) {
    mu.validate();
    if (max_components <= 0) {
        throw std::invalid_argument("open_set_constant_lower: max_components must be >= 1");
    }
    DyadicScanner sc(mu, depth);

    std::vector<char> mask(static_cast<size_t>(sc.total_cells), 0);
    std::vector<char> contained(sc.weights.size(), 0);
    long cur_cells = 0;
    double cur_mass = 0.0;
    double cur_ratio = 0.0;
    OpenSetBound out;

    const CandidateArc* comp[3] = {nullptr, nullptr, nullptr};
    for (int step = 0; step < max_components; ++step) {
        long best_id = -1;
        double best_ratio = cur_ratio;
        double best_mass = 0.0;
        long best_cells = 0;
        for (long id = 0; id < sc.component_count(); ++id) {
            sc.component_arcs(id, comp);
            long added = 0;
            sc.for_each_cell(comp, [&](long flat) {
                if (!mask[static_cast<size_t>(flat)]) ++added;
            });
            if (added == 0) continue;
            double mass = cur_mass;
            for (size_t i = 0; i < sc.weights.size(); ++i) {
                if (contained[i]) continue;
                bool inside;
                if (sc.atom_in_component(static_cast<int>(i), comp)) {
                    inside = true;  // the new component alone suffices
                } else {
                    inside = true;
                    sc.for_each_required_cell(static_cast<int>(i), [&](long flat) {
                        if (!inside) return;
                        if (!mask[static_cast<size_t>(flat)] && !sc.cell_in_component(flat, comp)) {
                            inside = false;
                        }
                    });
                }
                if (inside) mass += sc.weights[i];
            }
            const double ratio =
                mass / (static_cast<double>(cur_cells + added) * sc.cell_measure);
            if (ratio > best_ratio + 1e-15) {
                best_ratio = ratio;
                best_id = id;
                best_mass = mass;
                best_cells = added;
            }
        }
        if (best_id < 0) break;  // no strict improvement left

        sc.component_arcs(best_id, comp);
        sc.for_each_cell(comp, [&](long flat) { mask[static_cast<size_t>(flat)] = 1; });
        cur_cells += best_cells;
        cur_mass = best_mass;
        cur_ratio = best_ratio;
        out.witness.push_back(sc.to_dyadic(comp));
        // refresh containment flags against the enlarged union
        for (size_t i = 0; i < sc.weights.size(); ++i) {
            if (contained[i]) continue;
            bool inside = true;
            sc.for_each_required_cell(static_cast<int>(i), [&](long flat) {
                if (inside && !mask[static_cast<size_t>(flat)]) inside = false;
            });
            contained[i] = inside ? 1 : 0;
        }
    }
    out.constant = cur_ratio;
    return out;
}

OpenSetBound open_set_constant_exhaustive(const DiscreteMeasure& mu, int depth,
                                          int max_components) {
    mu.validate();
    if (max_components <= 0) {
        throw std::invalid_argument("open_set_constant_exhaustive: max_components must be >= 1");
    }
    if (depth > 3 || mu.dim() > 2 || max_components > 3) {
        throw std::invalid_argument(
            "open_set_constant_exhaustive: offered for depth <= 3, dim <= 2, "
            "max_components <= 3 only");
    }
    DyadicScanner sc(mu, depth);
    const long C = sc.component_count();

    std::vector<char> mask(static_cast<size_t>(sc.total_cells), 0);
    OpenSetBound best;
    std::vector<long> chosen;

    const CandidateArc* comp[3] = {nullptr, nullptr, nullptr};
    auto evaluate = [&]() {
        std::fill(mask.begin(), mask.end(), 0);
        long cells = 0;
        for (long id : chosen) {
            sc.component_arcs(id, comp);
            sc.for_each_cell(comp, [&](long flat) {
                if (!mask[static_cast<size_t>(flat)]) {
                    mask[static_cast<size_t>(flat)] = 1;
                    ++cells;
                }
            });
        }
        double mass = 0.0;
        for (size_t i = 0; i < sc.weights.size(); ++i) {
            bool inside = true;
            sc.for_each_required_cell(static_cast<int>(i), [&](long flat) {
                if (inside && !mask[static_cast<size_t>(flat)]) inside = false;
            });
            if (inside) mass += sc.weights[i];
        }
        if (cells == 0) return;
        const double ratio = mass / (static_cast<double>(cells) * sc.cell_measure);
        if (ratio > best.constant) {
            best.constant = ratio;
            best.witness.clear();
            for (long id : chosen) {
                sc.component_arcs(id, comp);
                best.witness.push_back(sc.to_dyadic(comp));
            }
        }
    };

    std::function<void(long, int)> recurse = [&](long from, int remaining) {
        if (remaining == 0) return;
        for (long id = from; id < C; ++id) {
            chosen.push_back(id);
            evaluate();
            recurse(id + 1, remaining - 1);
            chosen.pop_back();
        }
    };
    recurse(0, max_components);
    return best;
}

double embedding_lower_bound(const PointSequence& S, Exponent p,
                             const PointSequence& probes, double tol) {
    if (!p.is_finite()) {
        throw std::invalid_argument("embedding_lower_bound: p must be finite");
    }
    if (S.dim() != probes.dim()) {
        throw std::invalid_argument("embedding_lower_bound: dimension mismatch");
    }
    const double pv = p.value();
    double best = 0.0;
    for (int w = 0; w < probes.size(); ++w) {
        KernelSpec kw{probes[w]};
        double restriction = 0.0;
        for (int a = 0; a < S.size(); ++a) {
            restriction += S[a].chi_weight() * std::pow(std::abs(kw.eval(S[a])), pv);
        }
        restriction = std::pow(restriction, 1.0 / pv);
        best = std::max(best, restriction / kernel_norm_quadrature(probes[w], p, tol));
    }
    return best;
}

// =====================================================================
// Poisson family, balayage, BMO proxy
// =====================================================================

namespace {

/// Circle mean of |1 - r e^{i theta}|^{-p}: expanding (1-z)^{-p/2} binomially
/// and integrating kills the cross terms, leaving the Gauss series
/// 2F1(p/2, p/2; 1; r^2). At p = 2 this sums to 1/(1 - r^2) exactly.
double poisson_circle_mean(double r, double p, double tol) {
    const double x = r * r;
    if (p == 2.0) return 1.0 / (1.0 - x);
    const double a = p / 2.0;
    double term = 1.0, sum = 1.0;
    for (long k = 0; k < 20000000; ++k) {
        const double ratio = (a + k) / (k + 1.0);
        term *= ratio * ratio * x;
        sum += term;
        if (term <= tol * sum * (1.0 - x)) return sum;
    }
    throw std::runtime_error(
        "PoissonFamilyKernel: boundary mass series did not converge (base point too "
        "close to the boundary for p != 2)");
}

}  // namespace

PoissonFamilyKernel::PoissonFamilyKernel(Point base, double p, double tol)
    : base_(std::move(base)), p_(p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw std::invalid_argument("PoissonFamilyKernel: p must lie in (1, inf)");
    }
    mass_ = 1.0;
    for (const Complex& c : base_.coords()) {
        const double r = std::abs(c);
        mass_ *= std::pow(1.0 - r * r, p_ - 1.0) * poisson_circle_mean(r, p_, tol);
    }
}

double PoissonFamilyKernel::eval(std::span<const Complex> zeta) const {
    if (static_cast<int>(zeta.size()) != base_.dim()) {
        throw std::invalid_argument("PoissonFamilyKernel::eval: dimension mismatch");
    }
    double v = 1.0;
    for (int j = 0; j < base_.dim(); ++j) {
        const Complex a = base_.coord(j);
        v *= std::pow(1.0 - std::norm(a), p_ - 1.0) /
             std::pow(std::abs(1.0 - std::conj(a) * zeta[static_cast<size_t>(j)]), p_);
    }
    return v;
}

double PoissonFamilyKernel::eval_normalized(std::span<const Complex> zeta) const {
    return eval(zeta) / mass_;
}

double poisson_eval(const PoissonFamilyKernel& K, std::span<const Complex> zeta) {
    return K.eval(zeta);
}

BoundarySamples balayage(const DiscreteMeasure& mu, double p, const TorusGrid& grid,
                         bool per_atom_normalized) {
    mu.validate();
    if (mu.dim() != grid.dim()) {
        throw std::invalid_argument("balayage: dimension mismatch");
    }
    const int m = grid.samples_per_circle();
    const int n = grid.dim();
    std::vector<Complex> values(static_cast<size_t>(grid.node_count()), Complex(0.0));

    for (const auto& atom : mu.atoms) {
        PoissonFamilyKernel K(atom.point, p);
        const double scale = atom.weight / (per_atom_normalized ? K.boundary_mass() : 1.0);

        // per-coordinate factor tables of the product kernel
        std::vector<std::vector<double>> t(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const Complex a = atom.point.coord(j);
            const double num = std::pow(1.0 - std::norm(a), p - 1.0);
            auto& tj = t[static_cast<size_t>(j)];
            tj.resize(static_cast<size_t>(m));
            for (int k = 0; k < m; ++k) {
                tj[static_cast<size_t>(k)] =
                    num / std::pow(std::abs(1.0 - std::conj(a) * grid.circle_node(k)), p);
            }
        }

        switch (n) {
            case 1:
                for (int k = 0; k < m; ++k) {
                    values[static_cast<size_t>(k)] += scale * t[0][static_cast<size_t>(k)];
                }
                break;
            case 2:
                for (int k2 = 0; k2 < m; ++k2) {
                    const double f2 = scale * t[1][static_cast<size_t>(k2)];
                    Complex* row = values.data() + static_cast<long>(k2) * m;
                    for (int k1 = 0; k1 < m; ++k1) {
                        row[k1] += f2 * t[0][static_cast<size_t>(k1)];
                    }
                }
                break;
            default:
                for (int k3 = 0; k3 < m; ++k3) {
                    for (int k2 = 0; k2 < m; ++k2) {
                        const double f23 =
                            scale * t[2][static_cast<size_t>(k3)] * t[1][static_cast<size_t>(k2)];
                        Complex* row = values.data() + (static_cast<long>(k3) * m + k2) * m;
                        for (int k1 = 0; k1 < m; ++k1) {
                            row[k1] += f23 * t[0][static_cast<size_t>(k1)];
                        }
                    }
                }
                break;
        }
    }
    return BoundarySamples{grid, std::move(values)};
}

double dyadic_bmo_proxy(const BoundarySamples& samples, int max_depth) {
    const int n = samples.grid.dim();
    const int m = samples.grid.samples_per_circle();
    if (max_depth < 0 || m < (1 << max_depth) || m % (1 << max_depth) != 0) {
        std::ostringstream msg;
        msg << "dyadic_bmo_proxy: grid resolution " << m
            << " insufficient or misaligned for depth " << max_depth;
        throw std::invalid_argument(msg.str());
    }

    // per-coordinate node segments of every dyadic arc up to max_depth
    struct Seg {
        int start;
        int len;
    };
    std::vector<Seg> segs;
    for (int d = 0; d <= max_depth; ++d) {
        const int len = m >> d;
        for (int k = 0; k < (1 << d); ++k) segs.push_back({k * len, len});
    }

    const std::vector<Complex>& v = samples.values;
    double worst = 0.0;

    auto scan_rect = [&](const Seg* s1, const Seg* s2, const Seg* s3) {
        const long count = static_cast<long>(s1->len) * (s2 ? s2->len : 1) * (s3 ? s3->len : 1);
        Complex mean = 0.0;
        for (int c3 = 0; c3 < (s3 ? s3->len : 1); ++c3) {
            for (int c2 = 0; c2 < (s2 ? s2->len : 1); ++c2) {
                long base = 0;
                if (s3) base += static_cast<long>(s3->start + c3) * m * m;
                if (s2) base += static_cast<long>(s2->start + c2) * m;
                for (int c1 = 0; c1 < s1->len; ++c1) {
                    mean += v[static_cast<size_t>(base + s1->start + c1)];
                }
            }
        }
        mean /= static_cast<double>(count);
        double osc = 0.0;
        for (int c3 = 0; c3 < (s3 ? s3->len : 1); ++c3) {
            for (int c2 = 0; c2 < (s2 ? s2->len : 1); ++c2) {
                long base = 0;
                if (s3) base += static_cast<long>(s3->start + c3) * m * m;
                if (s2) base += static_cast<long>(s2->start + c2) * m;
                for (int c1 = 0; c1 < s1->len; ++c1) {
                    osc += std::abs(v[static_cast<size_t>(base + s1->start + c1)] - mean);
                }
            }
        }
        worst = std::max(worst, osc / static_cast<double>(count));
    };

    if (n == 1) {
        for (const Seg& s : segs) scan_rect(&s, nullptr, nullptr);
    } else if (n == 2) {
        for (const Seg& s2 : segs) {
            for (const Seg& s1 : segs) scan_rect(&s1, &s2, nullptr);
        }
    } else {
        for (const Seg& s3 : segs) {
            for (const Seg& s2 : segs) {
                for (const Seg& s1 : segs) scan_rect(&s1, &s2, &s3);
            }
        }
    }
    return worst;
}

}  // namespace hardy
