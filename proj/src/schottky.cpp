#include "schottky_zeta/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace szeta {

namespace {

constexpr int kMappingSamples = 32;
constexpr double kMappingTol = 1e-9;

// Index into the circle vector (C_1, C_-1, C_2, C_-2, ...).
int circle_slot(int letter) {
    return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
}

// Max relative distance of gamma(samples of C_src) from the boundary of C_dst.
double mapping_residual_on_samples(const MoebiusMap& gamma, const Circle& src, const Circle& dst) {
    double worst = 0.0;
    for (int k = 0; k < kMappingSamples; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / kMappingSamples;
        const SpherePoint img = gamma(SpherePoint(src.point(theta)));
        if (img.is_infinity()) return 1.0;
        const double err = std::abs(std::abs(img.value - dst.center) - dst.radius) / dst.radius;
        worst = std::max(worst, err);
    }
    return worst;
}

double min_pairwise_gap(const std::vector<Circle>& circles) {
    double margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < circles.size(); ++i) {
        for (size_t j = i + 1; j < circles.size(); ++j) {
            margin = std::min(margin, disk_gap(circles[i], circles[j]));
        }
    }
    return margin;
}

}  // namespace

GeneratorSpec GeneratorSpec::from_matrix(Complex a, Complex b, Complex c, Complex d) {
    GeneratorSpec s;
    s.matrix = {a, b, c, d};
    return s;
}

GeneratorSpec GeneratorSpec::from_points(SpherePoint alpha, SpherePoint beta, Complex q) {
    GeneratorSpec s;
    s.alpha = alpha;
    s.beta = beta;
    s.q = q;
    return s;
}

CircleReport fundamental_circles(const std::vector<MoebiusMap>& gens,
                                 const std::vector<SpherePoint>& alpha,
                                 const std::vector<SpherePoint>& alpha_neg,
                                 const std::vector<Complex>& q) {
    const int g = static_cast<int>(gens.size());
    CircleReport report;

    // Infinity, when present among the fixed points, must be the repelling
    // point of generator 1: that is the paper's normalized marking, and the
    // concentric recipe below covers it. Any other placement is reported as
    // unsupported rather than guessed at.
    int inf_count = 0;
    for (int i = 0; i < g; ++i) {
        if (alpha[static_cast<size_t>(i)].is_infinity()) ++inf_count;
        if (alpha_neg[static_cast<size_t>(i)].is_infinity()) ++inf_count;
    }
    const bool gen1_at_inf = g >= 1 && alpha_neg[0].is_infinity();
    if (inf_count > 1 || (inf_count == 1 && !gen1_at_inf)) {
        report.note = "circle recipe needs all fixed points finite, or infinity as the repelling point of generator 1; normalize the marking first";
        return report;
    }

    std::vector<Circle> isometric(static_cast<size_t>(2 * g));
    for (int i = (gen1_at_inf ? 1 : 0); i < g; ++i) {
        // C_{-i} is the isometric circle of gamma_i, C_i that of its inverse;
        // gamma_i then maps the exterior of C_{-i} onto the closure of the
        // interior of C_i.
        isometric[static_cast<size_t>(circle_slot(-(i + 1)))] = gens[static_cast<size_t>(i)].isometric_circle();
        isometric[static_cast<size_t>(circle_slot(i + 1))] =
            gens[static_cast<size_t>(i)].inverse().isometric_circle();
    }

    auto finalize = [&](std::vector<Circle> circles) {
        report.circles = std::move(circles);
        report.disjointness_margin = min_pairwise_gap(report.circles);
        double worst = 0.0;
        for (int i = 1; i <= g; ++i) {
            worst = std::max(worst, mapping_residual_on_samples(
                                        gens[static_cast<size_t>(i - 1)],
                                        report.circles[static_cast<size_t>(circle_slot(-i))],
                                        report.circles[static_cast<size_t>(circle_slot(i))]));
        }
        report.mapping_residual = worst;
        report.valid = report.disjointness_margin > 0.0 && worst < kMappingTol;
        if (!report.valid && report.note.empty()) {
            report.note = report.disjointness_margin <= 0.0 ? "disks are not pairwise disjoint"
                                                            : "mapping condition failed on boundary samples";
        }
        return report;
    };

    if (!gen1_at_inf) return finalize(std::move(isometric));

    // Generator 1 is z -> a + q_1 (z - a): concentric circles about a with
    // radii r and r/|q_1| pair exactly. Search r on a geometric grid for the
    // radius giving the best disjointness margin against the other disks.
    const Complex a = alpha[0].value;
    const double qa = std::abs(q[0]);
    double best_margin = -std::numeric_limits<double>::infinity();
    std::vector<Circle> best;
    constexpr int kGrid = 32;
    for (int k = 1; k <= kGrid; ++k) {
        const double r = std::pow(qa, 1.0 - static_cast<double>(k) / (kGrid + 1));
        std::vector<Circle> circles = isometric;
        circles[static_cast<size_t>(circle_slot(1))] = Circle(a, r, Circle::Orientation::counterclockwise);
        circles[static_cast<size_t>(circle_slot(-1))] = Circle(a, r / qa, Circle::Orientation::clockwise);
        const double margin = min_pairwise_gap(circles);
        if (margin > best_margin) {
            best_margin = margin;
            best = std::move(circles);
        }
    }
    if (best_margin <= 0.0) {
        report.note = "no radius in the geometric grid yields disjoint disks";
        report.circles = std::move(best);
        report.disjointness_margin = best_margin;
        return report;
    }
    return finalize(std::move(best));
}

SchottkyGroup SchottkyGroup::build(const GroupSpec& spec) {
    if (spec.genus < 1) throw BadSpec("genus must be >= 1");
    if (static_cast<int>(spec.generators.size()) != spec.genus) {
        throw BadSpec("generator count does not match genus");
    }

    SchottkyGroup grp;
    grp.genus_ = spec.genus;
    for (const GeneratorSpec& gs : spec.generators) {
        MoebiusMap m = MoebiusMap::identity();
        if (gs.matrix) {
            const auto& e = *gs.matrix;
            m = MoebiusMap(e[0], e[1], e[2], e[3]);
            if (!m.is_loxodromic()) throw NotLoxodromic();
        } else if (gs.alpha && gs.beta && gs.q) {
            m = MoebiusMap::from_fixed_points(*gs.alpha, *gs.beta, *gs.q);
            if (!m.is_loxodromic()) throw NotLoxodromic();
        } else {
            throw BadSpec("generator needs either a matrix or (alpha, beta, q)");
        }
        const auto [att, rep] = m.fixed_points();
        grp.gens_.push_back(m);
        grp.gen_inverses_.push_back(m.inverse());
        grp.alpha_.push_back(att);
        grp.alpha_neg_.push_back(rep);
        grp.q_.push_back(m.multiplier());
    }

    // All 2g fixed points pairwise distinct.
    std::vector<SpherePoint> pts;
    for (int i = 0; i < grp.genus_; ++i) {
        pts.push_back(grp.alpha_[static_cast<size_t>(i)]);
        pts.push_back(grp.alpha_neg_[static_cast<size_t>(i)]);
    }
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (chordal_distance(pts[i], pts[j]) < 1e-9) throw DegenerateFixedPoints();
        }
    }

    bool real = true;
    for (int i = 0; i < grp.genus_; ++i) {
        const Complex qi = grp.q_[static_cast<size_t>(i)];
        real = real && std::abs(qi.imag()) < 1e-12 && qi.real() > 0.0 &&
               grp.alpha_[static_cast<size_t>(i)].is_real(1e-12) &&
               grp.alpha_neg_[static_cast<size_t>(i)].is_real(1e-12);
    }
    grp.is_real_ = real;
    if (spec.real && !real) throw BadSpec("spec demands a real group but generators are not Fuchsian");

    if (spec.circles) {
        if (static_cast<int>(spec.circles->size()) != 2 * spec.genus) {
            throw BadSpec("expected 2g circles");
        }
        CircleReport rep;
        rep.circles = *spec.circles;
        rep.disjointness_margin = min_pairwise_gap(rep.circles);
        double worst = 0.0;
        for (int i = 1; i <= grp.genus_; ++i) {
            worst = std::max(worst, mapping_residual_on_samples(
                                        grp.gens_[static_cast<size_t>(i - 1)],
                                        rep.circles[static_cast<size_t>(circle_slot(-i))],
                                        rep.circles[static_cast<size_t>(circle_slot(i))]));
        }
        rep.mapping_residual = worst;
        rep.valid = rep.disjointness_margin > 0.0 && worst < kMappingTol;
        if (!rep.valid) rep.note = "user-supplied circles failed validation";
        grp.circle_report_ = std::move(rep);
    } else {
        grp.circle_report_ = fundamental_circles(grp.gens_, grp.alpha_, grp.alpha_neg_, grp.q_);
    }
    if (spec.strict && !grp.circle_report_.valid) {
        throw CirclesOverlap("strict validation: " + grp.circle_report_.note);
    }

    grp.letter_entries_.resize(static_cast<size_t>(2 * grp.genus_));
    grp.real_entries_.resize(static_cast<size_t>(2 * grp.genus_));
    grp.letters_real_ = true;
    for (int letter = -grp.genus_; letter <= grp.genus_; ++letter) {
        if (letter == 0) continue;
        const MoebiusMap m = grp.element(letter);
        const size_t slot = static_cast<size_t>(letter_rank(letter));
        grp.letter_entries_[slot] = {m.a(), m.b(), m.c(), m.d()};
        grp.real_entries_[slot] = {m.a().real(), m.b().real(), m.c().real(), m.d().real()};
        grp.letters_real_ = grp.letters_real_ && m.a().imag() == 0.0 && m.b().imag() == 0.0 &&
                            m.c().imag() == 0.0 && m.d().imag() == 0.0;
    }

    if (spec.normalize) {
        return grp.normalized().first;
    }
    return grp;
}

const MoebiusMap& SchottkyGroup::generator(int index) const {
    return gens_[static_cast<size_t>(index - 1)];
}

MoebiusMap SchottkyGroup::element(int letter) const {
    if (letter == 0 || std::abs(letter) > genus_) throw BadLetter();
    return letter > 0 ? gens_[static_cast<size_t>(letter - 1)]
                      : gen_inverses_[static_cast<size_t>(-letter - 1)];
}

const SpherePoint& SchottkyGroup::fixed_point(int letter) const {
    if (letter == 0 || std::abs(letter) > genus_) throw BadLetter();
    return letter > 0 ? alpha_[static_cast<size_t>(letter - 1)]
                      : alpha_neg_[static_cast<size_t>(-letter - 1)];
}

Complex SchottkyGroup::multiplier(int index) const { return q_[static_cast<size_t>(index - 1)]; }

const std::vector<Circle>& SchottkyGroup::circles() const {
    if (!circle_report_.valid) throw CirclesRequired(circle_report_.note);
    return circle_report_.circles;
}

const Circle& SchottkyGroup::circle(int letter) const {
    return circles()[static_cast<size_t>(circle_slot(letter))];
}

bool SchottkyGroup::is_normalized(double tol) const {
    if (!alpha_neg_[0].is_infinity()) return false;
    if (alpha_[0].is_infinity() || std::abs(alpha_[0].value) > tol) return false;
    if (genus_ >= 2) {
        if (alpha_[1].is_infinity() || std::abs(alpha_[1].value - 1.0) > tol) return false;
    }
    return true;
}

std::pair<SchottkyGroup, MoebiusMap> SchottkyGroup::normalized() const {
    MoebiusMap n = MoebiusMap::identity();
    if (genus_ >= 2) {
        n = cross_ratio_map(alpha_[0], alpha_[1], alpha_neg_[0]);
    } else if (!(is_normalized())) {
        // Genus 1: only alpha_1 = 0, alpha_{-1} = inf is imposed; the scale is
        // fixed by the cross-ratio map through an arbitrary deterministic
        // third point.
        SpherePoint anchor(1.0);
        if (chordal_distance(anchor, alpha_[0]) < 1e-6 || chordal_distance(anchor, alpha_neg_[0]) < 1e-6) {
            anchor = SpherePoint(Complex(0.372, 0.9282));
        }
        n = cross_ratio_map(alpha_[0], anchor, alpha_neg_[0]);
    } else {
        return {*this, n};
    }

    GroupSpec spec;
    spec.genus = genus_;
    for (int i = 0; i < genus_; ++i) {
        SpherePoint na = n(alpha_[static_cast<size_t>(i)]);
        SpherePoint nb = n(alpha_neg_[static_cast<size_t>(i)]);
        // Pin the normalization exactly; the conjugated values match these to
        // rounding error.
        if (i == 0) {
            na = SpherePoint(Complex(0.0));
            nb = SpherePoint::infinity();
        }
        if (i == 1) na = SpherePoint(Complex(1.0));
        spec.generators.push_back(GeneratorSpec::from_points(na, nb, q_[static_cast<size_t>(i)]));
    }
    return {SchottkyGroup::build(spec), n};
}

MoebiusMap SchottkyGroup::evaluate_word(const ReducedWord& w) const {
    MoebiusMap m = MoebiusMap::identity();
    for (const int letter : w.letters()) m = m * element(letter);
    return m;
}

namespace {

Complex multiplier_from_trace(Complex t) {
    Complex s = std::sqrt(t * t - 4.0);
    if (std::real(std::conj(t) * s) < 0.0) s = -s;
    const Complex lam = (t + s) / 2.0;
    const Complex q = 1.0 / (lam * lam);
    if (!(std::abs(q) < 1.0 - 1e-9)) throw NotLoxodromic();
    return q;
}

Complex multiplier_from_real_trace(double t) {
    const double disc = t * t - 4.0;
    if (disc <= 0.0) throw NotLoxodromic();  // elliptic or parabolic
    double s = std::sqrt(disc);
    if (t < 0.0) s = -s;  // match the sign of t to avoid cancellation
    const double lam = (t + s) / 2.0;
    const double q = 1.0 / (lam * lam);
    if (!(q < 1.0 - 1e-9)) throw NotLoxodromic();
    return Complex{q, 0.0};
}

}  // namespace

Complex SchottkyGroup::word_multiplier(const int* letters, int len) const {
    // Raw det-1 matrix product; the trace quadratic then gives the multiplier
    // as the inverse square of the large eigenvalue.
    if (letters_real_) {
        double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
        for (int k = 0; k < len; ++k) {
            const auto& e = real_entries_[static_cast<size_t>(letter_rank(letters[k]))];
            const double na = a * e[0] + b * e[2];
            const double nb = a * e[1] + b * e[3];
            const double nc = c * e[0] + d * e[2];
            const double nd = c * e[1] + d * e[3];
            a = na;
            b = nb;
            c = nc;
            d = nd;
        }
        return multiplier_from_real_trace(a + d);
    }
    Complex a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};
    for (int k = 0; k < len; ++k) {
        const auto& e = letter_entries_[static_cast<size_t>(letter_rank(letters[k]))];
        const Complex na = a * e[0] + b * e[2];
        const Complex nb = a * e[1] + b * e[3];
        const Complex nc = c * e[0] + d * e[2];
        const Complex nd = c * e[1] + d * e[3];
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    return multiplier_from_trace(a + d);
}

Complex SchottkyGroup::class_multiplier(const ConjClass& c) const {
    return evaluate_word(c.rep).multiplier();
}

double SchottkyGroup::delta_estimate(int max_len) const {
    const std::vector<Circle>& cs = circles();
    const int g = genus_;
    const int depth = std::max(3, max_len);

    // Chordal diameter of the disk side, so disks near infinity stay small.
    // The extremal chordal separation of a round disk lies on the radial line
    // through the origin.
    const auto chordal_diameter = [](const Circle& c) {
        const double ca = std::abs(c.center);
        const Complex u = ca > 0.0 ? c.center / ca : Complex{1.0, 0.0};
        return chordal_distance(SpherePoint(c.center - c.radius * u),
                                SpherePoint(c.center + c.radius * u));
    };

    // Sizes of the level-l disks w(D_s): level 1 holds the fundamental disks
    // themselves, deeper levels their nested images. The level-1 exterior
    // disk (when generator 1 fixes infinity) measures its complement, so the
    // fit only uses levels >= 2, where every disk is bounded.
    std::vector<std::vector<double>> radii(static_cast<size_t>(depth + 1));
    struct Node {
        MoebiusMap map;
        int last;
    };
    std::vector<Node> frontier;
    for (int letter = -g; letter <= g; ++letter) {
        if (letter == 0) continue;
        frontier.push_back({element(letter), letter});
        const Circle& c = cs[static_cast<size_t>(circle_slot(letter))];
        if (c.disk_is_interior()) radii[1].push_back(chordal_diameter(c));
    }
    for (int level = 2; level <= depth; ++level) {
        std::vector<Node> next;
        next.reserve(frontier.size() * static_cast<size_t>(2 * g - 1));
        for (const Node& node : frontier) {
            for (int letter = -g; letter <= g; ++letter) {
                if (letter == 0 || letter == -node.last) continue;
                const Circle img =
                    cs[static_cast<size_t>(circle_slot(letter))].image_under(node.map);
                radii[static_cast<size_t>(level)].push_back(chordal_diameter(img));
                if (level < depth) next.push_back({node.map * element(letter), letter});
            }
        }
        frontier = std::move(next);
    }

    auto growth_slope = [&](double s) {
        // Mean of log(R_{l+1}(s)/R_l(s)) over the deepest levels.
        double acc = 0.0;
        int n = 0;
        for (int level = std::max(2, depth - 3); level < depth; ++level) {
            double lo = 0.0, hi = 0.0;
            for (double r : radii[static_cast<size_t>(level)]) lo += std::pow(r, s);
            for (double r : radii[static_cast<size_t>(level + 1)]) hi += std::pow(r, s);
            if (lo <= 0.0 || hi <= 0.0) return -1.0;
            acc += std::log(hi / lo);
            ++n;
        }
        return n > 0 ? acc / n : -1.0;
    };

    double lo = 0.0, hi = 2.0;
    if (growth_slope(lo) <= 0.0) return 0.0;
    if (growth_slope(hi) >= 0.0) return hi;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (growth_slope(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

SchottkyGroup SchottkyGroup::scaled_multipliers(double t) const {
    GroupSpec spec;
    spec.genus = genus_;
    for (int i = 0; i < genus_; ++i) {
        spec.generators.push_back(GeneratorSpec::from_points(
            alpha_[static_cast<size_t>(i)], alpha_neg_[static_cast<size_t>(i)],
            q_[static_cast<size_t>(i)] * t));
    }
    return SchottkyGroup::build(spec);
}

}  // namespace szeta
