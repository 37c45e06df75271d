#include <doctest.h>

#include <cmath>
#include <fstream>

#include "schottky_zeta/json_io.hpp"
#include "schottky_zeta/tate.hpp"
#include "schottky_zeta/zetaprod.hpp"

using namespace szeta;

namespace {

SchottkyGroup load_spec_file(const std::string& name) {
    std::ifstream in(std::string(SPEC_DIR) + "/" + name);
    REQUIRE(in.good());
    Json j;
    in >> j;
    return SchottkyGroup::build(parse_group_spec(j));
}

SchottkyGroup genus1_group(Complex q) {
    GroupSpec spec;
    spec.genus = 1;
    spec.generators.push_back(
        GeneratorSpec::from_points(SpherePoint(0.0), SpherePoint::infinity(), q));
    return SchottkyGroup::build(spec);
}

SchottkyGroup genus2_group(Complex q1, Complex q2) {
    GroupSpec spec;
    spec.genus = 2;
    spec.generators.push_back(
        GeneratorSpec::from_points(SpherePoint(0.0), SpherePoint::infinity(), q1));
    spec.generators.push_back(GeneratorSpec::from_points(SpherePoint(1.0), SpherePoint(2.0), q2));
    return SchottkyGroup::build(spec);
}

// Term-by-term oracle: plain product arithmetic, no log accumulation, driven
// by the materialized class list.
Complex oracle_double_product(const SchottkyGroup& g, int m_start, int max_len, int inner_cap) {
    Complex prod{1.0, 0.0};
    for (const ConjClass& c : enumerate_classes(g.genus(), max_len)) {
        const Complex q = g.class_multiplier(c);
        Complex qm = std::pow(q, m_start);
        for (int m = m_start; m <= inner_cap; ++m) {
            prod *= (1.0 - qm);
            qm *= q;
        }
    }
    return prod;
}

Complex oracle_mt_prefactor(const SchottkyGroup& g, int k) {
    Complex p{1.0, 0.0};
    for (int m = 1; m <= k - 1; ++m) {
        const Complex f = 1.0 - std::pow(g.multiplier(1), m);
        p *= f * f;
    }
    return p * (1.0 - std::pow(g.multiplier(2), k - 1));
}

double scalar_euler_product(double q, int power) {
    // prod_{m>=1} (1 - q^m)^power
    double prod = 1.0;
    double qm = q;
    while (qm > 1e-18) {
        prod *= std::pow(1.0 - qm, power);
        qm *= q;
    }
    return prod;
}

}  // namespace

TEST_CASE("d_k") {
    CHECK(d_k(1) == 1);
    CHECK(d_k(2) == 13);
    CHECK(d_k(3) == 37);
}

TEST_CASE("zograf F(1): genus-1 scalar value") {
    const SchottkyGroup g = genus1_group(0.1);
    TruncationPolicy policy;
    const ProductValue f1 = zograf_F1(g, policy);
    // Two classes with multiplier 0.1 each.
    const double expected = scalar_euler_product(0.1, 2);
    CHECK(std::abs(f1.value - Complex(expected)) < 1e-13);
    CHECK(std::abs(f1.value - Complex(0.792117977)) < 1e-8);
    CHECK(f1.converged);
    CHECK(f1.tail_estimate == 0.0);  // rank 1 has finitely many classes
}

TEST_CASE("zograf F(1): empty-product limit") {
    TruncationPolicy policy;
    const ProductValue tiny = zograf_F1(genus1_group(1e-9), policy);
    CHECK(std::abs(tiny.value - 1.0) < 1e-8);
    const ProductValue below_floor = zograf_F1(genus1_group(1e-19), policy);
    CHECK(below_floor.value == Complex{1.0, 0.0});
}

TEST_CASE("zograf F(1): truncation self-consistency on the corpus") {
    const SchottkyGroup g = load_spec_file("genus2_complex.json");
    TruncationPolicy p10, p12;
    p10.max_word_len = 10;
    p12.max_word_len = 12;
    const ProductValue a = zograf_F1(g, p10);
    const ProductValue b = zograf_F1(g, p12);
    CHECK(std::abs(a.value - b.value) < 1e-10);
    CHECK(a.converged);
}

TEST_CASE("mt F(k): prefactor arithmetic and the oracle route") {
    const SchottkyGroup g = genus2_group(0.1, 0.2);
    CHECK(std::abs(oracle_mt_prefactor(g, 3) - Complex(0.76212576)) < 1e-8);

    TruncationPolicy policy;
    policy.max_word_len = 8;
    for (const int k : {2, 3}) {
        const ProductValue fk = mt_Fk(g, k, policy);
        const Complex want = oracle_mt_prefactor(g, k) * oracle_double_product(g, k, 8, 60);
        CHECK(std::abs(fk.value - want) < 1e-12 * std::abs(want) + 1e-13);
    }
}

TEST_CASE("mt F(k): small-multiplier limit is 1") {
    const SchottkyGroup g = genus2_group(1e-10, 1e-10);
    TruncationPolicy policy;
    const ProductValue fk = mt_Fk(g, 2, policy);
    CHECK(std::abs(fk.value - 1.0) < 1e-8);
}

TEST_CASE("mt F(k): degeneration to the one-variable product") {
    // q_2 -> 0 leaves prod_{m>=1} (1 - q_1^m)^2 for every k.
    const double q1 = 0.1;
    const double target = scalar_euler_product(q1, 2);
    TruncationPolicy policy;
    policy.max_word_len = 10;
    double prev = 1.0;
    for (const double t : {1e-2, 1e-3, 1e-4}) {
        const ProductValue fk = mt_Fk(genus2_group(q1, t), 3, policy);
        const double diff = std::abs(fk.value - Complex(target));
        CHECK(diff < 10.0 * t);
        if (t < 1e-2) CHECK(diff < prev);
        prev = diff;
    }
}

TEST_CASE("ruelle: genus-1 scalar value and limits") {
    TruncationPolicy policy;
    const ProductValue r = ruelle(genus1_group(0.1), 2.0, policy);
    const double expected = 1.0 / 0.9801;  // (1 - 0.01)^{-2}
    CHECK(std::abs(r.value - Complex(expected)) < 1e-13);
    CHECK(std::abs(r.value - Complex(1.020304)) < 1e-6);

    CHECK(std::abs(ruelle(genus1_group(1e-12), 2.0, policy).value - 1.0) < 1e-9);

    const SchottkyGroup g = load_spec_file("genus2_real.json");
    TruncationPolicy p10, p12;
    p10.max_word_len = 10;
    p12.max_word_len = 12;
    CHECK(std::abs(ruelle(g, 2.0, p10).value - ruelle(g, 2.0, p12).value) < 1e-10);

    CHECK_FALSE(ruelle(g, 1.5, p10).converged);  // outside the convergence range
}

TEST_CASE("modified ruelle: direct-formula oracle") {
    const SchottkyGroup g = genus2_group(0.04, 0.06);
    TruncationPolicy policy;
    policy.max_word_len = 8;
    const int k = 2;
    const ProductValue got = modified_ruelle(g, k, policy);

    Complex r{1.0, 0.0};
    for (const ConjClass& c : enumerate_classes(2, 8)) {
        r /= 1.0 - std::pow(std::abs(g.class_multiplier(c)), k);
    }
    const Complex q1 = g.multiplier(1);
    const Complex q2 = g.multiplier(2);
    const Complex want = r * std::pow(1.0 - std::pow(q1, k), 2) * (1.0 - std::pow(q2, k)) /
                         (1.0 - std::pow(q2, k - 1));
    CHECK(std::abs(got.value - want) < 1e-10);
}

TEST_CASE("modified ruelle equals F(k+1)/F(k) on real groups") {
    const SchottkyGroup g = load_spec_file("genus2_real.json");
    REQUIRE(g.is_real());
    TruncationPolicy policy;
    policy.max_word_len = 10;
    for (const int k : {2, 3}) {
        const Complex lhs = modified_ruelle(g, k, policy).value;
        const Complex rhs = mt_Fk(g, k + 1, policy).value / mt_Fk(g, k, policy).value;
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("genus-1 operations refuse the missing gamma_2 factor") {
    const SchottkyGroup g = genus1_group(0.1);
    TruncationPolicy policy;
    CHECK_THROWS_AS(mt_Fk(g, 2, policy), GenusTooSmall);
    CHECK_THROWS_AS(modified_ruelle(g, 2, policy), GenusTooSmall);
    CHECK_THROWS_AS(mumford_ratio(g, 2, policy), GenusTooSmall);
}

TEST_CASE("mumford ratio: the two routes agree") {
    TruncationPolicy policy;
    policy.max_word_len = 10;
    for (const char* name : {"genus2_complex.json", "genus2_real.json"}) {
        const SchottkyGroup g = load_spec_file(name);
        for (const int k : {2, 3}) {
            const auto [via_f, via_intro] = mumford_ratio(g, k, policy);
            INFO(name << " k=" << k);
            CHECK(std::abs(via_f.value - via_intro.value) < 1e-9);
        }
    }
    const SchottkyGroup small = genus2_group(1e-10, 1e-10);
    const auto [via_f, via_intro] = mumford_ratio(small, 2, policy);
    CHECK(std::abs(via_f.value - 1.0) < 1e-8);
    CHECK(std::abs(via_intro.value - 1.0) < 1e-8);
}

TEST_CASE("marking invariance of F(1) and the Ruelle product") {
    const SchottkyGroup g = load_spec_file("genus2_complex.json");
    const SchottkyGroup ng = g.normalized().first;
    TruncationPolicy policy;
    policy.max_word_len = 8;
    CHECK(std::abs(zograf_F1(g, policy).value - zograf_F1(ng, policy).value) < 1e-10);
    CHECK(std::abs(ruelle(g, 2.0, policy).value - ruelle(ng, 2.0, policy).value) < 1e-10);
}

TEST_CASE("generator permutation moves only the F(k) prefactor") {
    const SchottkyGroup g = load_spec_file("genus2_real.json");
    GroupSpec swapped;
    swapped.genus = 2;
    swapped.generators.push_back(
        GeneratorSpec::from_points(g.fixed_point(2), g.fixed_point(-2), g.multiplier(2)));
    swapped.generators.push_back(
        GeneratorSpec::from_points(g.fixed_point(1), g.fixed_point(-1), g.multiplier(1)));
    const SchottkyGroup h = SchottkyGroup::build(swapped);

    TruncationPolicy policy;
    policy.max_word_len = 8;
    for (const int k : {2, 3}) {
        const Complex double_g = mt_Fk(g, k, policy).value / oracle_mt_prefactor(g, k);
        const Complex double_h = mt_Fk(h, k, policy).value / oracle_mt_prefactor(h, k);
        CHECK(std::abs(double_g - double_h) < 1e-10);
    }
}

TEST_CASE("monotone truncation on the corpus") {
    const SchottkyGroup g = load_spec_file("genus2_real.json");
    TruncationPolicy policy;
    std::vector<double> jumps;
    Complex prev;
    for (const int len : {4, 6, 8, 10}) {
        policy.max_word_len = len;
        const Complex v = zograf_F1(g, policy).value;
        if (len > 4) jumps.push_back(std::abs(v - prev));
        prev = v;
    }
    CHECK(jumps[1] < jumps[0]);
    CHECK(jumps[2] < jumps[1]);
}

TEST_CASE("genus-1 reduction of the intro display matches the delta series") {
    const Complex q{0.05, 0.0};
    const Complex ratio = genus1_intro_ratio(q, 2, 1e-18);
    // Independent scalar route.
    const double direct = scalar_euler_product(0.05, 24);
    CHECK(std::abs(ratio - Complex(direct)) < 1e-12);
    // Exact-series route: Delta(q)/q.
    const Complex series_val = delta_series(50).eval(q) / q;
    CHECK(std::abs(ratio - series_val) < 1e-10);
}

TEST_CASE("parallel accumulation matches sequential") {
    const SchottkyGroup g = load_spec_file("genus2_complex.json");
    TruncationPolicy seq, par;
    seq.max_word_len = par.max_word_len = 8;
    seq.threads = 1;
    par.threads = 4;
    CHECK(std::abs(zograf_F1(g, seq).value - zograf_F1(g, par).value) < 1e-12);
    CHECK(std::abs(mt_Fk(g, 2, seq).value - mt_Fk(g, 2, par).value) < 1e-12);
    CHECK(std::abs(ruelle(g, 2.0, seq).value - ruelle(g, 2.0, par).value) < 1e-12);
}

TEST_CASE("product metadata is populated") {
    const SchottkyGroup g = load_spec_file("genus2_real.json");
    TruncationPolicy policy;
    policy.max_word_len = 6;
    const ProductValue f1 = zograf_F1(g, policy);
    CHECK(f1.max_word_len == 6);
    CHECK(f1.terms_used > 0);
    CHECK(f1.inner_cutoff >= 1);
    CHECK(f1.tail_estimate > 0.0);
    CHECK(std::isfinite(f1.tail_estimate));

    TruncationPolicy longer = policy;
    longer.max_word_len = 8;
    CHECK(zograf_F1(g, longer).tail_estimate < f1.tail_estimate);
}
