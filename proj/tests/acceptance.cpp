// Acceptance suite: one pass/fail line per criterion, exit 0 only when all
// pass. Each criterion carries the tolerance it must meet and a wall-clock
// budget; both are enforced.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "schottky_zeta/differentials.hpp"
#include "schottky_zeta/json_io.hpp"
#include "schottky_zeta/tate.hpp"
#include "schottky_zeta/zetaprod.hpp"

using namespace szeta;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int g_failures = 0;

void run_criterion(int number, const std::string& label, double budget_seconds,
                   const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome.pass = false;
        outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_budget = elapsed < budget_seconds;
    const bool pass = outcome.pass && in_budget;
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.2f s / budget %.0f s)%s%s\n", pass ? "PASS" : "FAIL",
                number, label.c_str(), elapsed, budget_seconds,
                outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
    std::fflush(stdout);
}

SchottkyGroup load_spec_file(const std::string& name) {
    std::ifstream in(std::string(SPEC_DIR) + "/" + name);
    if (!in) throw Error("missing spec file " + name);
    Json j;
    in >> j;
    return SchottkyGroup::build(parse_group_spec(j));
}

// ---- criterion 1: independent conjugacy-class counting oracle ------------

using Word = std::vector<int>;

void oracle_all_reduced(int rank, int len, Word& buf, const std::function<void(const Word&)>& f) {
    if (static_cast<int>(buf.size()) == len) {
        f(buf);
        return;
    }
    for (int x = -rank; x <= rank; ++x) {
        if (x == 0) continue;
        if (!buf.empty() && buf.back() == -x) continue;
        buf.push_back(x);
        oracle_all_reduced(rank, len, buf, f);
        buf.pop_back();
    }
}

bool oracle_rank_less(const Word& a, const Word& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (letter_rank(a[i]) != letter_rank(b[i])) return letter_rank(a[i]) < letter_rank(b[i]);
    }
    return false;
}

Outcome criterion_free_group_counts() {
    for (const int rank : {2, 3}) {
        std::map<int, long long> impl_counts;
        for_each_class(rank, 8, [&](const int*, int len) { ++impl_counts[len]; });
        for (int len = 1; len <= 8; ++len) {
            std::set<Word> classes;
            Word buf;
            oracle_all_reduced(rank, len, buf, [&](const Word& w) {
                Word core = w;
                while (core.size() >= 2 && core.front() == -core.back()) {
                    core.erase(core.begin());
                    core.pop_back();
                }
                if (static_cast<int>(core.size()) != len) return;
                bool primitive = true;
                const int n = len;
                for (int d = 1; d < n && primitive; ++d) {
                    if (n % d != 0) continue;
                    bool rep = true;
                    for (int k = 0; k < n; ++k) {
                        if (core[static_cast<size_t>(k)] != core[static_cast<size_t>(k % d)]) {
                            rep = false;
                            break;
                        }
                    }
                    if (rep) primitive = false;
                }
                if (!primitive) return;
                Word best = core;
                Word rot = core;
                for (int s = 1; s < n; ++s) {
                    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
                    if (oracle_rank_less(rot, best)) best = rot;
                }
                classes.insert(best);
            });
            if (impl_counts[len] != static_cast<long long>(classes.size())) {
                return {false, "count mismatch at rank " + std::to_string(rank) + " length " +
                                   std::to_string(len)};
            }
        }
    }
    return {true, "counts match for g=2,3 up to length 8"};
}

// ---- criterion 2 ----------------------------------------------------------

Outcome criterion_multiplier_laws() {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> mag(0.05, 0.8);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        Complex alpha, beta;
        do {
            alpha = Complex{coord(rng), coord(rng)};
            beta = Complex{coord(rng), coord(rng)};
        } while (std::abs(alpha - beta) < 0.3);
        const double phi = angle(rng);
        const Complex q = mag(rng) * Complex{std::cos(phi), std::sin(phi)};
        const MoebiusMap m =
            MoebiusMap::from_fixed_points(SpherePoint(alpha), SpherePoint(beta), q);

        Complex na, nb, nc, nd;
        do {
            na = Complex{coord(rng), coord(rng)};
            nb = Complex{coord(rng), coord(rng)};
            nc = Complex{coord(rng), coord(rng)};
            nd = Complex{coord(rng), coord(rng)};
        } while (std::abs(na * nd - nb * nc) < 0.2);
        const MoebiusMap n(na, nb, nc, nd);
        worst = std::max(worst, std::abs((n * m * n.inverse()).multiplier() - q));
        worst = std::max(worst, std::abs(m.inverse().multiplier() - q));
        MoebiusMap power = m;
        Complex qk = q;
        for (int k = 2; k <= 6; ++k) {
            power = power * m;
            qk *= q;
            worst = std::max(worst, std::abs(power.multiplier() - qk));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max law residual = %.3e", worst);
    return {worst < 1e-10, buf};
}

// ---- criterion 3 ----------------------------------------------------------

Outcome criterion_normalization_matrix() {
    const SchottkyGroup g = load_spec_file("genus2_real.json");
    const Matrix m = normalization_matrix(g, 8, 1e-10);
    double worst = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const Complex want = r == c ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            worst = std::max(worst, std::abs(m(r, c) - want));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max |M - I| = %.3e", worst);
    return {worst < 1e-6, buf};
}

// ---- criteria 4 and 6 ------------------------------------------------------

Outcome criterion_mumford_identity() {
    TruncationPolicy policy;
    policy.max_word_len = 10;
    double worst = 0.0;
    for (const char* name : {"genus2_complex.json", "genus2_real.json"}) {
        const SchottkyGroup g = load_spec_file(name);
        for (const int k : {2, 3}) {
            const auto [via_f, via_intro] = mumford_ratio(g, k, policy);
            worst = std::max(worst, std::abs(via_f.value - via_intro.value));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max |F-route - direct| = %.3e", worst);
    return {worst < 1e-9, buf};
}

Outcome criterion_ruelle_identity() {
    const SchottkyGroup g = load_spec_file("genus2_real.json");
    TruncationPolicy policy;
    policy.max_word_len = 10;
    double worst = 0.0;
    for (const int k : {2, 3}) {
        const Complex lhs = modified_ruelle(g, k, policy).value;
        const Complex rhs = mt_Fk(g, k + 1, policy).value / mt_Fk(g, k, policy).value;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max identity residual = %.3e", worst);
    return {worst < 1e-9, buf};
}

// ---- criterion 5 ----------------------------------------------------------

Outcome criterion_genus1_reduction() {
    const Complex q{0.05, 0.0};
    const Complex ratio = genus1_intro_ratio(q, 2, 1e-18);
    const Complex series_val = delta_series(50).eval(q) / q;
    const double diff = std::abs(ratio - series_val);
    char buf[64];
    std::snprintf(buf, sizeof buf, "|ratio - Delta(q)/q| = %.3e", diff);
    return {diff < 1e-10, buf};
}

// ---- criterion 7 ----------------------------------------------------------

Outcome criterion_degeneration_slope() {
    const double q1 = 0.05;
    double target = 1.0;
    {
        double qm = q1;
        while (qm > 1e-18) {
            target *= (1.0 - qm) * (1.0 - qm);
            qm *= q1;
        }
    }
    TruncationPolicy policy;
    policy.max_word_len = 10;
    const std::vector<double> ts{1e-2, 1e-3, 1e-4};
    std::vector<double> diffs;
    for (const double t : ts) {
        GroupSpec spec;
        spec.genus = 2;
        spec.generators.push_back(
            GeneratorSpec::from_points(SpherePoint(0.0), SpherePoint::infinity(), q1));
        spec.generators.push_back(
            GeneratorSpec::from_points(SpherePoint(1.0), SpherePoint(2.0), t));
        const SchottkyGroup g = SchottkyGroup::build(spec);
        diffs.push_back(std::abs(zograf_F1(g, policy).value - Complex(target)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        const double x = std::log(ts[i]);
        const double y = std::log(diffs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(ts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    char buf[64];
    std::snprintf(buf, sizeof buf, "fitted slope = %.4f", slope);
    return {std::abs(slope - 1.0) < 0.2, buf};
}

// ---- criterion 8 ----------------------------------------------------------

Outcome criterion_multiplier_vanishing_order() {
    GroupSpec base;
    base.genus = 2;
    base.generators.push_back(
        GeneratorSpec::from_points(SpherePoint(0.0), SpherePoint::infinity(), 0.5));
    base.generators.push_back(GeneratorSpec::from_points(SpherePoint(1.0), SpherePoint(2.0), 0.7));
    const SchottkyGroup family = SchottkyGroup::build(base);
    const double t = 1e-3;
    const SchottkyGroup g_t = family.scaled_multipliers(t);
    const SchottkyGroup g_half = family.scaled_multipliers(t / 2.0);
    double worst_rel = 0.0;
    for_each_class(2, 4, [&](const int* w, int len) {
        const double ratio =
            std::abs(g_t.word_multiplier(w, len)) / std::abs(g_half.word_multiplier(w, len));
        const double expect = std::pow(2.0, len);
        worst_rel = std::max(worst_rel, std::abs(ratio - expect) / expect);
    });
    char buf[64];
    std::snprintf(buf, sizeof buf, "max relative deviation from 2^l = %.3e", worst_rel);
    return {worst_rel <= 0.10, buf};
}

// ---- criterion 9 ----------------------------------------------------------

SchottkyGroup finite_family(int genus, double t) {
    GroupSpec spec;
    spec.genus = genus;
    spec.generators.push_back(
        GeneratorSpec::from_points(SpherePoint(3.0), SpherePoint(-3.0), 0.5 * t));
    spec.generators.push_back(
        GeneratorSpec::from_points(SpherePoint(1.0), SpherePoint(-1.0), 0.7 * t));
    if (genus >= 3) {
        spec.generators.push_back(GeneratorSpec::from_points(
            SpherePoint(Complex{0.5, 1.5}), SpherePoint(Complex{-0.8, -1.2}), 0.6 * t));
    }
    return SchottkyGroup::build(spec);
}

int find_row(const PairingMatrix& pm, int a, int b) {
    for (size_t r = 0; r < pm.row_products.size(); ++r) {
        if (pm.row_products[r] == std::pair<int, int>{a, b}) return static_cast<int>(r);
    }
    return -1;
}

int find_col(const PairingMatrix& pm, int i, int j) {
    for (size_t c = 0; c < pm.col_indices.size(); ++c) {
        if (pm.col_indices[c] == std::pair<int, int>{i, j}) return static_cast<int>(c);
    }
    return -1;
}

Outcome criterion_congruence_limits() {
    std::string detail;
    for (const int genus : {2, 3}) {
        const double t2 = 1e-3;
        const double t1 = 2e-3;
        const SchottkyGroup g1 = finite_family(genus, t1);
        const SchottkyGroup g2 = finite_family(genus, t2);
        const PairingMatrix p1 = pairing_matrix_k2(g1, 4, 1e-12, CocycleConvention::general_zeta);
        const PairingMatrix p2 = pairing_matrix_k2(g2, 4, 1e-12, CocycleConvention::general_zeta);

        // A displayed entry must sit near its limit at t = 1e-3 and approach
        // it at rate O(t) (error halves, within slack, from 2e-3 to 1e-3).
        auto check_limit = [&](int row, int col, Complex limit) {
            const double err1 = std::abs(p1.entries(row, col) - limit);
            const double err2 = std::abs(p2.entries(row, col) - limit);
            const double scale = 1.0 + std::abs(limit);
            if (err2 > 0.05 * scale) return false;
            if (err2 > 1e-7 && err1 < 1.35 * err2) return false;
            return true;
        };

        for (int i = 1; i <= genus; ++i) {
            const int col = find_col(p2, i, 1);
            for (int l = 1; l <= genus; ++l) {
                if (!check_limit(find_row(p2, l, l), col, l == i ? 1.0 : 0.0)) {
                    return {false, "omega_l^2 vs zeta_{i,1} limit failed"};
                }
            }
            for (const auto& [a, b] : p2.row_products) {
                if (a == b) continue;
                if (!check_limit(find_row(p2, a, b), col, 0.0)) {
                    return {false, "omega_a omega_b vs zeta_{i,1} limit failed"};
                }
            }
        }
        if (genus >= 3) {
            const Complex x1 = g2.fixed_point(1).value, xm1 = g2.fixed_point(-1).value;
            const Complex x2 = g2.fixed_point(2).value, xm2 = g2.fixed_point(-2).value;
            const Complex x3 = g2.fixed_point(3).value;
            const int col = find_col(p2, 3, 0);
            const Complex want_13 = (x1 - xm1) / ((x3 - x1) * (x3 - xm1));
            const Complex want_23 = (x2 - xm2) / ((x3 - x2) * (x3 - xm2));
            if (!check_limit(find_row(p2, 1, 3), col, want_13) ||
                !check_limit(find_row(p2, 1, 2), col, 0.0) ||
                !check_limit(find_row(p2, 2, 3), col, want_23)) {
                return {false, "zeta_{3,0} displayed limits failed"};
            }
        }
        for (int i = 2; i <= genus; ++i) {
            const int col = find_col(p2, i, 2);
            for (const auto& [a, b] : p2.row_products) {
                if (a == b) continue;
                if (!check_limit(find_row(p2, a, b), col, 0.0)) {
                    return {false, "zeta_{i,2} decay failed"};
                }
            }
        }

        const SchottkyGroup base = finite_family(genus, 1.0);
        const DetLeadingFit fit = det_leading_order(base, t1, t2, 4, 1e-12);
        if (std::abs(fit.exponent - (genus - 1)) > 0.05) {
            return {false, "det exponent " + std::to_string(fit.exponent) + " at genus " +
                               std::to_string(genus)};
        }
        if (std::abs(fit.magnitude_ratio - 1.0) > 0.01) {
            return {false, "det coefficient ratio " + std::to_string(fit.magnitude_ratio) +
                               " at genus " + std::to_string(genus)};
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "g=%d exponent %.4f coeff ratio %.5f; ", genus,
                      fit.exponent, fit.magnitude_ratio);
        detail += buf;
    }
    return {true, detail};
}

// ---- criterion 10 ----------------------------------------------------------

Outcome criterion_tate_exactness() {
    const int order = 50;
    const IntegerPowerSeries relation = a6_series(order).scaled(12) +
                                        s_k_series(3, order).scaled(5) +
                                        s_k_series(5, order).scaled(7);
    if (!relation.is_zero()) return {false, "12 a6 + 5 s3 + 7 s5 != 0"};
    if (!(discriminant_series(order) == delta_series(order))) {
        return {false, "discriminant != delta through order 50"};
    }

    const std::vector<Complex> zs{{0.25, 0.15}, {0.3, 0.2}, {-0.4, 0.1}, {0.5, -0.3}, {0.15, 0.45}};
    const std::vector<Complex> qs{{0.02, 0.0}, {0.04, 0.02}, {0.06, 0.0}, {0.08, -0.03}, {0.1, 0.0}};
    const int n = 40;
    double worst = 0.0;
    for (const Complex& z : zs) {
        for (const Complex& q : qs) {
            const Complex x = eval_X(z, q, n);
            const Complex y = eval_Y(z, q, n);
            const Complex a4 = a4_series(n).eval(q);
            const Complex a6 = a6_series(n).eval(q);
            worst = std::max(worst, std::abs(y * y + x * y - (x * x * x + a4 * x + a6)));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max Weierstrass residual = %.3e", worst);
    return {worst < 1e-8, buf};
}

// ---- criterion 11 ----------------------------------------------------------

Outcome criterion_performance() {
    const SchottkyGroup g = load_spec_file("genus2_real.json");

    // Best of three for both timings: the intrinsic cost, not scheduler noise.
    long long checksum = 0;
    long long count = 0;
    double enum_seconds = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 3; ++rep) {
        checksum = 0;
        count = 0;
        const auto t0 = Clock::now();
        for_each_class(2, 12, [&](const int* w, int len) {
            checksum += w[0] + len;
            ++count;
        });
        enum_seconds =
            std::min(enum_seconds, std::chrono::duration<double>(Clock::now() - t0).count());
    }

    TruncationPolicy policy;
    policy.max_word_len = 12;
    ProductValue f1_seq;
    double zeta_seconds = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 3; ++rep) {
        const auto t1 = Clock::now();
        f1_seq = zograf_F1(g, policy);
        zeta_seconds =
            std::min(zeta_seconds, std::chrono::duration<double>(Clock::now() - t1).count());
    }

    TruncationPolicy par = policy;
    par.threads = 4;
    const ProductValue f1_par = zograf_F1(g, par);
    const double par_diff = std::abs(f1_seq.value - f1_par.value);

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%lld classes (checksum %lld) in %.3f s; F(1) at L=12 in %.3f s (%.2fx); "
                  "|par - seq| = %.1e",
                  count, checksum, enum_seconds, zeta_seconds,
                  zeta_seconds / std::max(enum_seconds, 1e-9), par_diff);
    const bool ok = enum_seconds < 2.0 && zeta_seconds <= 2.0 * enum_seconds && par_diff < 1e-12;
    return {ok, buf};
}

}  // namespace

int main() {
    std::printf("schottky-zeta acceptance suite\n");
    run_criterion(1, "free-group class counts match the brute-force oracle (g=2,3, len<=8)", 10.0,
                  criterion_free_group_counts);
    run_criterion(2, "multiplier laws over 200 random loxodromic maps (1e-10)", 1.0,
                  criterion_multiplier_laws);
    run_criterion(3, "normalization matrix within 1e-6 of the identity (genus 2, L=8)", 30.0,
                  criterion_normalization_matrix);
    run_criterion(4, "product-formula identity |F(1)^dk/F(k) - direct| < 1e-9 (k=2,3)", 60.0,
                  criterion_mumford_identity);
    run_criterion(5, "genus-1 reduction matches Delta(q)/q at q=0.05 (1e-10)", 5.0,
                  criterion_genus1_reduction);
    run_criterion(6, "modified Ruelle equals F(k+1)/F(k) on the real group (1e-9)", 60.0,
                  criterion_ruelle_identity);
    run_criterion(7, "degeneration F(1)(t) -> one-variable product at slope 1 +- 20%", 60.0,
                  criterion_degeneration_slope);
    run_criterion(8, "class multipliers scale like t^l (within 10% of 2^l)", 30.0,
                  criterion_multiplier_vanishing_order);
    run_criterion(9, "Eichler pairing congruence limits and det leading order", 300.0,
                  criterion_congruence_limits);
    run_criterion(10, "Tate exactness and Weierstrass residual grid", 30.0,
                  criterion_tate_exactness);
    run_criterion(11, "enumeration under 2 s; products within 2x; parallel agrees", 30.0,
                  criterion_performance);

    if (g_failures == 0) {
        std::printf("ACCEPTANCE: all 11 criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
}
