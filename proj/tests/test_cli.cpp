#include <doctest.h>

#include <fstream>

#include "schottky_zeta/cli_commands.hpp"

using namespace szeta;

namespace {

Json load_spec(const std::string& name) {
    std::ifstream in(std::string(SPEC_DIR) + "/" + name);
    REQUIRE(in.good());
    Json j;
    in >> j;
    return j;
}

Json without_timing(Json j) {
    j.erase("timing_ms");
    return j;
}

}  // namespace

TEST_CASE("validate: corpus specs pass") {
    CommandOptions opts;
    for (const char* name :
         {"genus1_q01.json", "genus2_complex.json", "genus2_real.json", "genus3_real.json"}) {
        const CommandResult r = run_validate(load_spec(name), opts);
        INFO(name);
        CHECK(r.exit_code == kExitPass);
        CHECK(r.report.at("resolved").at("circles").at("valid").get<bool>());
        CHECK(r.report.at("results").contains("delta_estimate"));
    }
}

TEST_CASE("validate: strict overlap is an input error") {
    Json bad = load_spec("genus2_real.json");
    bad["generators"][1]["q"] = Json::array({0.9, 0.0});
    bad["flags"]["strict"] = true;
    const CommandResult r = run_validate(bad, CommandOptions{});
    CHECK(r.exit_code == kExitInputError);
    CHECK(r.report.contains("error"));
}

TEST_CASE("validate: wrong schema rejected") {
    Json j = load_spec("genus1_q01.json");
    j["schema"] = "something-else";
    CHECK(run_validate(j, CommandOptions{}).exit_code == kExitInputError);
}

TEST_CASE("validate: matrix-form generator") {
    Json j;
    j["schema"] = kGroupSpecSchema;
    j["genus"] = 1;
    j["generators"] = Json::array();
    Json gen;
    gen["matrix"] = Json::array({Json::array({Json::array({2.0, 0.0}), Json::array({1.0, 0.0})}),
                                 Json::array({Json::array({1.0, 0.0}), Json::array({1.0, 0.0})})});
    j["generators"].push_back(gen);
    const CommandResult r = run_validate(j, CommandOptions{});
    CHECK(r.exit_code == kExitPass);
    CHECK(r.report.at("resolved").at("is_real").get<bool>());
}

TEST_CASE("products: real genus-2 run passes its identities") {
    CommandOptions opts;
    opts.max_word_len = 8;
    opts.ks = {2, 3};
    const CommandResult r = run_products(load_spec("genus2_real.json"), opts);
    CHECK(r.exit_code == kExitPass);
    int checked = 0;
    for (const Json& c : r.report.at("checks")) {
        CHECK(c.at("pass").get<bool>());
        ++checked;
    }
    CHECK(checked == 4);  // mumford + ruelle identities for k = 2, 3

    // Reports re-serialize byte-identically and reruns agree modulo timing.
    const std::string dumped = r.report.dump();
    CHECK(Json::parse(dumped).dump() == dumped);
    const CommandResult again = run_products(load_spec("genus2_real.json"), opts);
    CHECK(without_timing(again.report).dump() == without_timing(r.report).dump());
}

TEST_CASE("products: genus-1 spec with k >= 2 surfaces GenusTooSmall") {
    CommandOptions opts;
    opts.ks = {2};
    const CommandResult r = run_products(load_spec("genus1_q01.json"), opts);
    CHECK(r.exit_code == kExitInputError);
    CHECK(r.report.at("results").at("per_k")[0].contains("error"));
    CHECK(r.report.at("results").contains("F1"));  // the genus-1 part still ran
}

TEST_CASE("pairing: corpus run passes") {
    CommandOptions opts;
    opts.max_word_len = 6;
    opts.tol = 1e-10;
    const CommandResult r = run_pairing(load_spec("genus2_real.json"), opts, std::nullopt);
    CHECK(r.exit_code == kExitPass);
    CHECK(r.report.at("results").contains("pairing_xi"));
    CHECK(r.report.at("results").contains("Omega_1"));
    CHECK(r.report.at("results").contains("c_gamma"));

    // Coefficient matrices scale the periods.
    Json coeffs;
    coeffs["coeff_1"] = Json::array(
        {Json::array({Json::array({2.0, 0.0}), Json::array({0.0, 0.0})}),
         Json::array({Json::array({0.0, 0.0}), Json::array({1.0, 0.0})})});
    const CommandResult r2 = run_pairing(load_spec("genus2_real.json"), opts, coeffs);
    const Complex omega_plain = complex_from_json(r.report.at("results").at("Omega_1"));
    const Complex omega_scaled = complex_from_json(r2.report.at("results").at("Omega_1"));
    CHECK(std::abs(omega_scaled - 2.0 * omega_plain) < 1e-10);
}

TEST_CASE("pairing: non-normalized input gets normalized with a warning") {
    Json j;
    j["schema"] = kGroupSpecSchema;
    j["genus"] = 2;
    j["generators"] = Json::array();
    {
        Json gen;
        gen["alpha"] = Json::array({3.0, 0.0});
        gen["beta"] = Json::array({-3.0, 0.0});
        gen["q"] = Json::array({0.02, 0.0});
        j["generators"].push_back(gen);
        gen["alpha"] = Json::array({1.0, 0.0});
        gen["beta"] = Json::array({-1.0, 0.0});
        gen["q"] = Json::array({0.03, 0.0});
        j["generators"].push_back(gen);
    }
    CommandOptions opts;
    opts.max_word_len = 5;
    opts.tol = 1e-9;
    const CommandResult r = run_pairing(j, opts, std::nullopt);
    CHECK(r.exit_code == kExitPass);
    CHECK(r.report.at("resolved").at("is_normalized").get<bool>());
    bool warned = false;
    for (const Json& w : r.report.at("warnings")) {
        if (w.get<std::string>().find("normalized") != std::string::npos) warned = true;
    }
    CHECK(warned);
}

TEST_CASE("pairing: complex corpus group normalizes and runs") {
    CommandOptions opts;
    opts.max_word_len = 5;
    opts.tol = 1e-9;
    const CommandResult r = run_pairing(load_spec("genus2_complex.json"), opts, std::nullopt);
    CHECK(r.exit_code == kExitPass);
    CHECK(r.report.at("resolved").at("is_normalized").get<bool>());
}

TEST_CASE("pairing: det leading-order fit through the CLI path") {
    CommandOptions opts;
    opts.max_word_len = 4;
    opts.tol = 1e-10;
    opts.det_fit_ts = {2e-3, 1e-3};
    const CommandResult r = run_pairing(load_spec("genus2_real.json"), opts, std::nullopt);
    CHECK(r.exit_code == kExitPass);
    const Json& fit = r.report.at("results").at("det_leading_order");
    CHECK(std::abs(fit.at("exponent").get<double>() - 1.0) < 0.05);
    CHECK(std::abs(fit.at("magnitude_ratio").get<double>() - 1.0) < 0.01);
}

TEST_CASE("tate: disc-check passes and N=1 gives leading terms") {
    CommandOptions opts;
    opts.tate_order = 20;
    opts.tate_series = {"disc-check"};
    const CommandResult r = run_tate(opts);
    CHECK(r.exit_code == kExitPass);
    for (const Json& c : r.report.at("checks")) CHECK(c.at("pass").get<bool>());

    CommandOptions tiny;
    tiny.tate_order = 1;
    tiny.tate_series = {"delta", "a4"};
    const CommandResult r1 = run_tate(tiny);
    CHECK(r1.exit_code == kExitPass);
    const auto delta = r1.report.at("results").at("series").at("delta");
    REQUIRE(delta.size() == 2);
    CHECK(delta[0].get<std::string>() == "0");
    CHECK(delta[1].get<std::string>() == "1");
    CHECK(r1.report.at("results").at("series").at("a4")[1].get<std::string>() == "-5");

    CommandOptions bad;
    bad.tate_series = {"nope"};
    CHECK(run_tate(bad).exit_code == kExitInputError);
}

TEST_CASE("report text rendering") {
    CommandOptions opts;
    opts.tate_order = 8;
    opts.tate_series = {"disc-check"};
    const CommandResult r = run_tate(opts);
    const std::string text = render_report_text(r.report);
    CHECK(text.find("command: tate") != std::string::npos);
    CHECK(text.find("PASS") != std::string::npos);
}
