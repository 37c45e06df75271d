#include "schottky_zeta/cli_commands.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "schottky_zeta/tate.hpp"

namespace szeta {

namespace {

using Clock = std::chrono::steady_clock;

Json report_shell(const std::string& command) {
    Json r;
    r["schema"] = kRunReportSchema;
    r["command"] = command;
    r["inputs"] = Json::object();
    r["results"] = Json::object();
    r["checks"] = Json::array();
    r["warnings"] = Json::array();
    return r;
}

void add_check(Json& report, const std::string& name, bool pass, double observed,
               double tolerance) {
    Json c;
    c["name"] = name;
    c["pass"] = pass;
    c["observed"] = observed;
    c["tolerance"] = tolerance;
    report["checks"].push_back(std::move(c));
}

void add_warning(Json& report, const std::string& text) { report["warnings"].push_back(text); }

int exit_from_checks(const Json& report) {
    for (const Json& c : report.at("checks")) {
        if (!c.at("pass").get<bool>()) return kExitIdentityFailure;
    }
    return kExitPass;
}

CommandResult input_error(Json report, const std::string& what) {
    report["error"] = what;
    return CommandResult{std::move(report), kExitInputError};
}

void stamp_timing(Json& report, Clock::time_point start) {
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

TruncationPolicy policy_from(const CommandOptions& opts) {
    TruncationPolicy p;
    p.max_word_len = opts.max_word_len;
    p.threads = opts.threads;
    return p;
}

// delta(Gamma) >= 1 voids the convergence hypothesis of the F(1) product; a
// heuristic estimate is enough for a warning.
void warn_if_delta_large(Json& report, const SchottkyGroup& group) {
    if (!group.has_valid_circles()) return;
    const double delta = group.delta_estimate(6);
    report["results"]["delta_estimate"] = delta;
    if (delta >= 1.0) {
        add_warning(report, "delta estimate >= 1: the F(1) product may not converge");
    }
}

double max_abs_dev_from_identity(const Matrix& m) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const Complex want = r == c ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            worst = std::max(worst, std::abs(m(r, c) - want));
        }
    }
    return worst;
}

}  // namespace

CommandResult run_validate(const Json& spec_json, const CommandOptions& /*opts*/) {
    const auto start = Clock::now();
    Json report = report_shell("validate");
    report["inputs"]["spec"] = spec_json;
    try {
        const GroupSpec spec = parse_group_spec(spec_json);
        const SchottkyGroup group = SchottkyGroup::build(spec);
        report["resolved"] = resolved_group_json(group);
        Json multipliers = Json::array();
        for (int i = 1; i <= group.genus(); ++i) {
            multipliers.push_back(std::abs(group.multiplier(i)));
        }
        report["results"]["multiplier_magnitudes"] = std::move(multipliers);
        add_check(report, "generators_loxodromic", true, 0.0, 1e-9);
        add_check(report, "fixed_points_distinct", true, 0.0, 1e-9);
        const CircleReport& cr = group.circle_report();
        add_check(report, "circles_valid", cr.valid, cr.mapping_residual, 1e-9);
        if (!cr.valid) add_warning(report, "circle recipe failed: " + cr.note);
        warn_if_delta_large(report, group);
        if (group.genus() == 1) {
            report["results"]["delta_estimate"] = 0.0;
        }
    } catch (const Error& e) {
        stamp_timing(report, start);
        return input_error(std::move(report), e.what());
    }
    stamp_timing(report, start);
    return CommandResult{report, exit_from_checks(report)};
}

CommandResult run_products(const Json& spec_json, const CommandOptions& opts) {
    const auto start = Clock::now();
    Json report = report_shell("products");
    report["inputs"]["spec"] = spec_json;
    report["inputs"]["k"] = opts.ks;
    report["inputs"]["max_word_len"] = opts.max_word_len;
    report["inputs"]["tol"] = opts.tol;
    report["inputs"]["threads"] = opts.threads;

    std::optional<SchottkyGroup> built;
    try {
        built = SchottkyGroup::build(parse_group_spec(spec_json));
    } catch (const Error& e) {
        stamp_timing(report, start);
        return input_error(std::move(report), e.what());
    }
    const SchottkyGroup& group = *built;
    report["resolved"] = resolved_group_json(group);

    const TruncationPolicy policy = policy_from(opts);
    bool bad_input = false;
    try {
        const ProductValue f1 = zograf_F1(group, policy);
        report["results"]["F1"] = product_value_to_json(f1);
        if (!f1.converged) add_warning(report, "F(1) successive-length values still moving");
        warn_if_delta_large(report, group);

        Json per_k = Json::array();
        for (const int k : opts.ks) {
            Json kj;
            kj["k"] = k;
            kj["d_k"] = d_k(k);
            if (group.genus() < 2) {
                kj["error"] = "F(k), the intro ratio, and modified Ruelle need genus >= 2";
                bad_input = true;
                per_k.push_back(std::move(kj));
                continue;
            }
            const ProductValue fk = mt_Fk(group, k, policy);
            kj["Fk"] = product_value_to_json(fk);
            const auto [via_f, via_intro] = mumford_ratio(group, k, policy);
            kj["mumford_via_F"] = product_value_to_json(via_f);
            kj["mumford_via_intro"] = product_value_to_json(via_intro);
            const double mdiff = std::abs(via_f.value - via_intro.value);
            kj["mumford_abs_diff"] = mdiff;
            add_check(report, "mumford_ratio_identity_k" + std::to_string(k), mdiff < opts.tol,
                      mdiff, opts.tol);

            const ProductValue rz = ruelle(group, static_cast<double>(k), policy);
            kj["ruelle"] = product_value_to_json(rz);
            const ProductValue mrz = modified_ruelle(group, k, policy);
            kj["modified_ruelle"] = product_value_to_json(mrz);
            const ProductValue fk1 = mt_Fk(group, k + 1, policy);
            const Complex ratio = fk1.value / fk.value;
            kj["Fk1_over_Fk"] = complex_to_json(ratio);
            if (group.is_real()) {
                const double rdiff = std::abs(mrz.value - ratio);
                kj["ruelle_identity_abs_diff"] = rdiff;
                add_check(report, "ruelle_identity_k" + std::to_string(k), rdiff < opts.tol,
                          rdiff, opts.tol);
            } else {
                add_warning(report,
                            "group is not real: modified Ruelle computed, identity with "
                            "F(k+1)/F(k) not asserted");
            }
            per_k.push_back(std::move(kj));
        }
        report["results"]["per_k"] = std::move(per_k);
    } catch (const Error& e) {
        stamp_timing(report, start);
        return input_error(std::move(report), e.what());
    }
    stamp_timing(report, start);
    if (bad_input) {
        report["error"] = "some requested k values are incompatible with the group genus";
        return CommandResult{report, kExitInputError};
    }
    return CommandResult{report, exit_from_checks(report)};
}

CommandResult run_pairing(const Json& spec_json, const CommandOptions& opts,
                          const std::optional<Json>& coeffs) {
    const auto start = Clock::now();
    Json report = report_shell("pairing");
    report["inputs"]["spec"] = spec_json;
    report["inputs"]["max_word_len"] = opts.max_word_len;
    report["inputs"]["tol"] = opts.tol;
    if (coeffs) report["inputs"]["coeff"] = *coeffs;

    try {
        SchottkyGroup group = SchottkyGroup::build(parse_group_spec(spec_json));
        if (!group.is_normalized()) {
            group = group.normalized().first;
            add_warning(report, "marking normalized (alpha_1 = 0, alpha_-1 = inf, alpha_2 = 1) "
                                "for the xi convention");
        }
        report["resolved"] = resolved_group_json(group);
        const int g = group.genus();

        const Matrix nm = normalization_matrix(group, opts.max_word_len, opts.tol);
        report["results"]["normalization_matrix"] = matrix_to_json(nm);
        const double nerr = max_abs_dev_from_identity(nm);
        report["results"]["norm_identity_error"] = nerr;
        add_check(report, "normalization_matrix_identity", nerr < 1e-6, nerr, 1e-6);

        Matrix coeff_1 = Matrix::Identity(g, g);
        Matrix coeff_k = Matrix::Identity(std::max(3 * g - 3, 0), std::max(3 * g - 3, 0));
        if (coeffs) {
            if (coeffs->contains("coeff_1")) coeff_1 = matrix_from_json(coeffs->at("coeff_1"));
            if (coeffs->contains("coeff_k")) coeff_k = matrix_from_json(coeffs->at("coeff_k"));
        }

        if (g >= 2) {
            const PairingMatrix pm =
                pairing_matrix_k2(group, opts.max_word_len, opts.tol, CocycleConvention::normalized_xi);
            Json pj;
            pj["entries"] = matrix_to_json(pm.entries);
            pj["condition_number"] = pm.condition_number;
            pj["singular"] = pm.singular;
            report["results"]["pairing_xi"] = std::move(pj);
            if (pm.singular) {
                add_warning(report, "pairing matrix numerically singular (condition > 1e12)");
                add_check(report, "pairing_nonsingular", false, pm.condition_number, 1e12);
            } else {
                const Matrix b = pm.entries.inverse();
                const double residual = max_abs_dev_from_identity(pm.entries * b);
                report["results"]["basis_change"] = matrix_to_json(b);
                report["results"]["basis_change_residual"] = residual;
                report["results"]["det_pairing"] = complex_to_json(pm.entries.determinant());
                report["results"]["det_basis_change"] = complex_to_json(b.determinant());
                add_check(report, "pairing_times_basis_change_identity", residual < 1e-8,
                          residual, 1e-8);
                const auto [omega_1, omega_k] =
                    period_determinants(coeff_1, coeff_k, nm, g);
                report["results"]["Omega_1"] = complex_to_json(omega_1);
                report["results"]["Omega_k"] = complex_to_json(omega_k);
                const ProductValue f1 = zograf_F1(group, policy_from(opts));
                report["results"]["c_gamma"] = complex_to_json(f1.value / omega_1);
            }
        } else {
            // Genus 1 has no k = 2 pairing block; the normalization matrix,
            // Omega_1, and c(Gamma) are still meaningful.
            const Complex omega_1 = coeff_1.determinant() * nm.determinant();
            report["results"]["Omega_1"] = complex_to_json(omega_1);
            const ProductValue f1 = zograf_F1(group, policy_from(opts));
            report["results"]["c_gamma"] = complex_to_json(f1.value / omega_1);
            add_warning(report, "genus 1: pairing block skipped");
        }

        if (!opts.det_fit_ts.empty() && g >= 2) {
            if (opts.det_fit_ts.size() != 2) {
                throw BadSpec("--det-fit needs exactly two t values");
            }
            const DetLeadingFit fit = det_leading_order(group, opts.det_fit_ts[0],
                                                        opts.det_fit_ts[1], 4, 1e-12);
            Json fj;
            fj["exponent"] = fit.exponent;
            fj["coefficient"] = complex_to_json(fit.coefficient);
            fj["sigma_tau"] = complex_to_json(fit.sigma_tau);
            fj["magnitude_ratio"] = fit.magnitude_ratio;
            report["results"]["det_leading_order"] = std::move(fj);
            add_check(report, "det_leading_exponent_is_genus_minus_1",
                      std::abs(fit.exponent - (g - 1)) < 0.05, fit.exponent, 0.05);
            add_check(report, "det_leading_coefficient_matches_sigma_tau",
                      std::abs(fit.magnitude_ratio - 1.0) < 0.01, fit.magnitude_ratio, 0.01);
        }
    } catch (const Error& e) {
        stamp_timing(report, start);
        return input_error(std::move(report), e.what());
    }
    stamp_timing(report, start);
    return CommandResult{report, exit_from_checks(report)};
}

CommandResult run_tate(const CommandOptions& opts) {
    const auto start = Clock::now();
    Json report = report_shell("tate");
    report["inputs"]["order"] = opts.tate_order;
    report["inputs"]["series"] = opts.tate_series;
    const int n = opts.tate_order;
    if (n < 1) {
        stamp_timing(report, start);
        return input_error(std::move(report), "order must be >= 1");
    }

    Json series = Json::object();
    try {
        for (const std::string& name : opts.tate_series) {
            if (name == "s1") {
                series["s1"] = s_k_series(1, n).coefficient_strings();
            } else if (name == "s3") {
                series["s3"] = s_k_series(3, n).coefficient_strings();
            } else if (name == "s5") {
                series["s5"] = s_k_series(5, n).coefficient_strings();
            } else if (name == "a4") {
                series["a4"] = a4_series(n).coefficient_strings();
            } else if (name == "a6") {
                series["a6"] = a6_series(n).coefficient_strings();
            } else if (name == "delta") {
                series["delta"] = delta_series(n).coefficient_strings();
            } else if (name == "disc-check") {
                const IntegerPowerSeries delta = delta_series(n);
                const IntegerPowerSeries disc = discriminant_series(n);
                series["delta"] = delta.coefficient_strings();
                series["discriminant"] = disc.coefficient_strings();
                const bool equal = delta == disc;
                add_check(report, "discriminant_equals_delta", equal, equal ? 0.0 : 1.0, 0.0);
                const IntegerPowerSeries relation = a6_series(n).scaled(12) +
                                                    s_k_series(3, n).scaled(5) +
                                                    s_k_series(5, n).scaled(7);
                const bool zero = relation.is_zero();
                add_check(report, "twelve_a6_plus_5s3_plus_7s5_zero", zero, zero ? 0.0 : 1.0, 0.0);
            } else {
                stamp_timing(report, start);
                return input_error(std::move(report), "unknown series: " + name);
            }
        }
    } catch (const Error& e) {
        stamp_timing(report, start);
        return input_error(std::move(report), e.what());
    }
    report["results"]["order"] = n;
    report["results"]["series"] = std::move(series);
    stamp_timing(report, start);
    return CommandResult{report, exit_from_checks(report)};
}

std::string render_report_text(const Json& report) {
    std::ostringstream out;
    out << "command: " << report.value("command", "?") << "\n";
    if (report.contains("error")) {
        out << "error:   " << report.at("error").get<std::string>() << "\n";
    }
    if (report.contains("resolved")) {
        const Json& r = report.at("resolved");
        out << "group:   genus " << r.value("genus", 0) << (r.value("is_real", false) ? ", real" : "")
            << (r.value("is_normalized", false) ? ", normalized marking" : "") << "\n";
    }
    const Json& checks = report.at("checks");
    if (!checks.empty()) {
        size_t width = 0;
        for (const Json& c : checks) width = std::max(width, c.at("name").get<std::string>().size());
        out << "checks:\n";
        for (const Json& c : checks) {
            const std::string name = c.at("name").get<std::string>();
            out << "  " << name << std::string(width - name.size() + 2, ' ')
                << (c.at("pass").get<bool>() ? "PASS" : "FAIL") << "  observed "
                << c.at("observed").get<double>() << "  tolerance "
                << c.at("tolerance").get<double>() << "\n";
        }
    }
    for (const Json& w : report.at("warnings")) {
        out << "warning: " << w.get<std::string>() << "\n";
    }
    if (report.contains("results") && report.at("results").contains("delta_estimate")) {
        out << "delta estimate: " << report.at("results").at("delta_estimate").get<double>() << "\n";
    }
    out << "timing: " << report.value("timing_ms", 0.0) << " ms\n";
    return out.str();
}

}  // namespace szeta
