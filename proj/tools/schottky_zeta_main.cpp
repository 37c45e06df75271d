#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "schottky_zeta/cli_commands.hpp"

namespace {

szeta::Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw szeta::BadSpec("cannot open " + path);
    szeta::Json j;
    in >> j;
    return j;
}

int threads_default() {
    if (const char* env = std::getenv("SCHOTTKY_ZETA_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

void emit(const szeta::CommandResult& result, bool pretty, const std::string& out_path) {
    const std::string text =
        pretty ? szeta::render_report_text(result.report) : result.report.dump() + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schottky groups, their multiplier products, Eichler pairings, and Tate series"};
    app.require_subcommand(1);

    std::string spec_path, out_path, coeff_path;
    bool pretty = false;
    szeta::CommandOptions opts;
    opts.threads = threads_default();

    auto add_common = [&](CLI::App* cmd, bool needs_spec) {
        if (needs_spec) cmd->add_option("--spec", spec_path, "group spec JSON")->required();
        cmd->add_flag("--pretty", pretty, "human-readable output");
        cmd->add_option("--out", out_path, "write the report to a file");
        cmd->add_option("--threads", opts.threads, "worker threads (1 = reproducible mode)");
    };

    CLI::App* validate = app.add_subcommand("validate", "build a group and report its health");
    add_common(validate, true);

    // Each subcommand binds its own locals so its defaults cannot leak into
    // another subcommand through the shared options struct.
    int products_len = 10, pairing_len = 6;
    double products_tol = 1e-9, pairing_tol = 1e-10;

    CLI::App* products = app.add_subcommand("products", "F(1), F(k), Mumford ratio, Ruelle values");
    add_common(products, true);
    products->add_option("--max-word-len", products_len, "class length cutoff (default 10)");
    products->add_option("--tol", products_tol, "identity tolerance (default 1e-9)");
    products->add_option("--k", opts.ks, "weights, e.g. --k 2,3")->delimiter(',');

    CLI::App* pairing = app.add_subcommand("pairing", "normalization matrix, Eichler pairing, periods");
    add_common(pairing, true);
    pairing->add_option("--max-word-len", pairing_len, "coset/series truncation (default 6)");
    pairing->add_option("--tol", pairing_tol, "quadrature tolerance (default 1e-10)");
    pairing->add_option("--coeff", coeff_path, "JSON file with coeff_1 / coeff_k matrices");
    pairing->add_option("--det-fit", opts.det_fit_ts,
                        "two t values for the det leading-order fit, e.g. --det-fit 2e-3,1e-3")
        ->delimiter(',');

    CLI::App* tate = app.add_subcommand("tate", "exact Tate-curve q-series");
    add_common(tate, false);
    tate->add_option("--order", opts.tate_order, "truncation order N (default 16)");
    tate->add_option("--series", opts.tate_series,
                     "any of s1,s3,s5,a4,a6,delta,disc-check")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    if (products->parsed()) {
        opts.max_word_len = products_len;
        opts.tol = products_tol;
    } else if (pairing->parsed()) {
        opts.max_word_len = pairing_len;
        opts.tol = pairing_tol;
    }

    try {
        szeta::CommandResult result;
        if (validate->parsed()) {
            result = szeta::run_validate(load_json(spec_path), opts);
        } else if (products->parsed()) {
            result = szeta::run_products(load_json(spec_path), opts);
        } else if (pairing->parsed()) {
            std::optional<szeta::Json> coeffs;
            if (!coeff_path.empty()) coeffs = load_json(coeff_path);
            result = szeta::run_pairing(load_json(spec_path), opts, coeffs);
        } else {
            result = szeta::run_tate(opts);
        }
        emit(result, pretty, out_path);
        return result.exit_code;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return szeta::kExitInputError;
    } catch (const szeta::Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return szeta::kExitInputError;
    }
}
