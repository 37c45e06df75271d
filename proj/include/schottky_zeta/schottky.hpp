#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "schottky_zeta/freegroup.hpp"
#include "schottky_zeta/moebius.hpp"

namespace szeta {

/// One generator, given either as a matrix or as (attracting fixed point,
/// repelling fixed point, multiplier).
struct GeneratorSpec {
    std::optional<std::array<Complex, 4>> matrix;  // row-major (a, b, c, d)
    std::optional<SpherePoint> alpha;              // attracting
    std::optional<SpherePoint> beta;               // repelling
    std::optional<Complex> q;                      // 0 < |q| < 1

    static GeneratorSpec from_matrix(Complex a, Complex b, Complex c, Complex d);
    static GeneratorSpec from_points(SpherePoint alpha, SpherePoint beta, Complex q);
};

struct GroupSpec {
    int genus = 0;
    std::vector<GeneratorSpec> generators;
    std::optional<std::vector<Circle>> circles;  // order C_1, C_{-1}, C_2, C_{-2}, ...
    bool normalize = false;
    bool strict = false;
    bool real = false;  // demand a Fuchsian (real) group; validated at build
};

/// Outcome of constructing or validating the fundamental circles.
struct CircleReport {
    std::vector<Circle> circles;  // order C_1, C_{-1}, C_2, C_{-2}, ...
    bool valid = false;
    double disjointness_margin = 0.0;  // min gap between closed disks
    double mapping_residual = 0.0;     // max boundary-sample error of the pairing condition
    std::string note;
};

/// A marked Schottky group: g loxodromic generators with pairwise distinct
/// fixed points, plus (when the recipe succeeds) fundamental circles.
/// Immutable after build; all operations are pure.
class SchottkyGroup {
public:
    static SchottkyGroup build(const GroupSpec& spec);

    int genus() const { return genus_; }

    /// Generator map for index 1..g, or its inverse for -1..-g.
    const MoebiusMap& generator(int index) const;
    MoebiusMap element(int letter) const;

    /// alpha_i for letter i > 0 (attracting), alpha_{-i} for i < 0 (repelling).
    const SpherePoint& fixed_point(int letter) const;
    Complex multiplier(int index) const;  // q_i, index 1..g

    bool is_real() const { return is_real_; }

    const CircleReport& circle_report() const { return circle_report_; }
    bool has_valid_circles() const { return circle_report_.valid; }
    /// The 2g circles; throws CirclesRequired when the recipe failed.
    const std::vector<Circle>& circles() const;
    /// C_i for letter i: circles()[2(i-1)] if i > 0, circles()[2(-i-1)+1] if i < 0.
    const Circle& circle(int letter) const;

    /// Conjugates the marking so alpha_1 = 0, alpha_{-1} = inf, and (g >= 2)
    /// alpha_2 = 1. Returns the normalized group and the conjugating map.
    std::pair<SchottkyGroup, MoebiusMap> normalized() const;
    bool is_normalized(double tol = 1e-9) const;

    MoebiusMap evaluate_word(const ReducedWord& w) const;

    /// Multiplier of the class representative; invariant under the choice of
    /// rotation. Throws NotLoxodromic if the element fails the test (which a
    /// genuine Schottky group never produces).
    Complex class_multiplier(const ConjClass& c) const;
    Complex word_multiplier(const int* letters, int len) const;

    /// Heuristic estimate of the exponent of convergence, from the transition
    /// point of sum-of-radii^s growth across word lengths. Requires circles.
    double delta_estimate(int max_len) const;

    /// Same fixed points, every multiplier scaled by t (degeneration families).
    SchottkyGroup scaled_multipliers(double t) const;

private:
    int genus_ = 0;
    std::vector<MoebiusMap> gens_;
    std::vector<MoebiusMap> gen_inverses_;
    std::vector<SpherePoint> alpha_;      // attracting, index 0..g-1
    std::vector<SpherePoint> alpha_neg_;  // repelling
    std::vector<Complex> q_;
    bool is_real_ = false;
    CircleReport circle_report_;
    // Determinant-1 entries per letter in rank order, for the bulk multiplier path.
    std::vector<std::array<Complex, 4>> letter_entries_;
    std::vector<std::array<double, 4>> real_entries_;
    bool letters_real_ = false;
};

/// Builds the fundamental circles from isometric circles (plus the concentric
/// recipe when generator 1 has its repelling point at infinity) and validates
/// disjointness and the mapping condition by boundary sampling.
CircleReport fundamental_circles(const std::vector<MoebiusMap>& gens,
                                 const std::vector<SpherePoint>& alpha,
                                 const std::vector<SpherePoint>& alpha_neg,
                                 const std::vector<Complex>& q);

}  // namespace szeta
