#include "CLI11.hpp"

#include "ew/csv.hpp"
#include "ew/experiments.hpp"
#include "ew/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string p1_text = "0.3";
    ew::Rational p1;
    bool p1_was_rational_syntax = false;
    int nu = 10;
    std::vector<long> n_list;
    std::optional<std::string> mode_text;
    ew::Mode mode = ew::Mode::floating;
    std::string out_path;
    unsigned long seed = 42;
    int max_n = 3;
    int max_nu = 3;
    bool corrupt = false;
    std::vector<std::string> eps_texts;
    std::vector<ew::Rational> eps_list;
};

int fail_usage(const std::string& message)
{
    std::cerr << "ewsim: " << message << "\n";
    return kExitUsage;
}

bool resolve_p1(RunConfig& config, std::string& error)
{
    const auto parsed = ew::parse_rational(config.p1_text);
    if (!parsed) {
        error = "cannot parse --p1 value '" + config.p1_text + "'";
        return false;
    }
    if (*parsed < 0 || *parsed > 1) {
        error = "--p1 must lie in [0,1]";
        return false;
    }
    config.p1 = *parsed;
    config.p1_was_rational_syntax = config.p1_text.find('/') != std::string::npos;
    return true;
}

// rational p1 syntax selects exact mode unless --mode overrides it
bool resolve_mode(RunConfig& config, std::string& error)
{
    if (config.mode_text) {
        if (*config.mode_text == "exact")
            config.mode = ew::Mode::exact;
        else if (*config.mode_text == "float")
            config.mode = ew::Mode::floating;
        else {
            error = "--mode must be 'exact' or 'float'";
            return false;
        }
        return true;
    }
    config.mode = config.p1_was_rational_syntax ? ew::Mode::exact
                                                : ew::Mode::floating;
    return true;
}

bool resolve_eps(RunConfig& config, std::string& error)
{
    if (config.eps_texts.empty())
        config.eps_texts = {"0.05"};
    for (const std::string& text : config.eps_texts) {
        const auto parsed = ew::parse_rational(text);
        if (!parsed || *parsed <= 0) {
            error = "cannot parse --eps value '" + text + "' as a positive number";
            return false;
        }
        config.eps_list.push_back(*parsed);
    }
    return true;
}

std::optional<std::ofstream> open_output(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        return std::nullopt;
    return out;
}

int write_and_close(std::ofstream& out, const std::string& path)
{
    out.flush();
    if (!out) {
        std::cerr << "ewsim: failed writing '" << path << "'\n";
        return kExitUsage;
    }
    return kExitSuccess;
}

int run_verify(RunConfig& config, bool p1_given)
{
    auto out = open_output(config.out_path);
    if (!out)
        return fail_usage("cannot open output file '" + config.out_path + "'");

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> theta_dist(0.1,
                                                      std::numbers::pi / 2 - 0.1);
    std::uniform_real_distribution<double> phase_dist(0.0, 2 * std::numbers::pi);

    ew::write_verify_csv_header(*out);
    bool all_pass = true;
    for (int n = 1; n <= config.max_n; ++n) {
        for (int nu = 1; nu <= config.max_nu; ++nu) {
            ew::Complex c1, c2;
            if (p1_given) {
                const double p = ew::to_double(config.p1);
                c1 = std::sqrt(p);
                c2 = std::sqrt(1.0 - p);
            } else {
                const double theta = theta_dist(rng);
                c1 = std::polar(std::cos(theta), phase_dist(rng));
                c2 = std::polar(std::sin(theta), phase_dist(rng));
            }
            const ew::Scenario scen(n, nu, c1, c2);
            ew::VerifyOptions options;
            options.corrupt_unitary = config.corrupt;
            const ew::OracleReport report = ew::verify_scenario(scen, options);

            const std::string prefix =
                "N" + std::to_string(n) + "_nu" + std::to_string(nu) + "/";
            ew::write_verify_csv_rows(*out, report, prefix);

            int passed = 0;
            double worst = 0.0;
            for (const ew::CheckResult& check : report.checks) {
                passed += check.pass ? 1 : 0;
                worst = std::max(worst, check.deviation);
            }
            all_pass = all_pass && report.all_pass();
            std::printf(
                "N=%d nu=%d: %d/%zu checks passed, max deviation %.3g, %.1f ms\n",
                n, nu, passed, report.checks.size(), worst, report.runtime_ms);
        }
    }
    const int io = write_and_close(*out, config.out_path);
    if (io != kExitSuccess)
        return io;
    std::printf("report written to %s\n", config.out_path.c_str());
    if (!all_pass) {
        std::printf("verification FAILED\n");
        return kExitCheckFailure;
    }
    std::printf("all checks passed\n");
    return kExitSuccess;
}

int run_sweep_cmd(RunConfig& config)
{
    if (config.n_list.empty())
        config.n_list = config.mode == ew::Mode::exact
                            ? std::vector<long>{10, 100, 1000, 2000}
                            : std::vector<long>{10, 100, 1000, 10000};
    auto out = open_output(config.out_path);
    if (!out)
        return fail_usage("cannot open output file '" + config.out_path + "'");

    const ew::SweepResult sweep =
        ew::run_sweep(config.p1, config.nu, config.n_list, config.mode);
    ew::write_sweep_csv(*out, sweep);
    const int io = write_and_close(*out, config.out_path);
    if (io != kExitSuccess)
        return io;

    const ew::PhiGrid grid(config.nu);
    std::printf("default tail epsilon (convention): %s\n",
                ew::rational_to_string(sweep.default_eps).c_str());
    for (const ew::SweepRow& row : sweep.rows) {
        if (row.nearest.tie) {
            std::printf(
                "N=%ld: tied pair phi=%s,%s with pair mass %.12g\n", row.n,
                ew::rational_to_string(grid.value(row.nearest.k_less)).c_str(),
                ew::rational_to_string(grid.value(row.nearest.k_greater)).c_str(),
                row.mass_at_kprime);
        } else if (row.tail_at_default_eps) {
            std::printf("N=%ld: k'=%d phi=%s mass %.12g elsewhere %.3g tail %.3g\n",
                        row.n, row.nearest.k_prime,
                        ew::rational_to_string(grid.value(row.nearest.k_prime)).c_str(),
                        row.mass_at_kprime, row.mass_elsewhere,
                        *row.tail_at_default_eps);
        } else {
            std::printf("N=%ld: k'=%d phi=%s mass %.12g elsewhere %.3g\n", row.n,
                        row.nearest.k_prime,
                        ew::rational_to_string(grid.value(row.nearest.k_prime)).c_str(),
                        row.mass_at_kprime, row.mass_elsewhere);
        }
    }
    std::printf("sweep written to %s\n", config.out_path.c_str());
    return kExitSuccess;
}

int run_tie_cmd(RunConfig& config)
{
    if (config.n_list.empty())
        config.n_list = {10, 100, 1000, 10000};
    auto out = open_output(config.out_path);
    if (!out)
        return fail_usage("cannot open output file '" + config.out_path + "'");

    const ew::SweepResult study = ew::run_tie_study(config.nu, config.n_list);
    ew::write_sweep_csv(*out, study);
    const int io = write_and_close(*out, config.out_path);
    if (io != kExitSuccess)
        return io;

    for (const ew::SweepRow& row : study.rows) {
        if (row.tie) {
            std::printf("N=%ld: W<=%s W>=%s T<=%s T>=%s\n", row.n,
                        ew::rational_to_string(row.tie->w_less).c_str(),
                        ew::rational_to_string(row.tie->w_greater).c_str(),
                        ew::rational_to_string(row.tie->t_less).c_str(),
                        ew::rational_to_string(row.tie->t_greater).c_str());
        } else {
            std::printf("N=%ld: pair mass %.12g (float only)\n", row.n,
                        row.mass_at_kprime);
        }
    }
    std::printf("tie study written to %s\n", config.out_path.c_str());
    return kExitSuccess;
}

int run_lln_cmd(RunConfig& config)
{
    if (config.n_list.empty())
        config.n_list = {100, 1000, 10000};
    auto out = open_output(config.out_path);
    if (!out)
        return fail_usage("cannot open output file '" + config.out_path + "'");

    const std::vector<ew::LlnRow> rows =
        ew::run_lln_study(config.p1, config.eps_list, config.n_list, config.mode);
    ew::write_lln_csv(*out, config.p1, config.mode, rows);
    const int io = write_and_close(*out, config.out_path);
    if (io != kExitSuccess)
        return io;

    for (const ew::LlnRow& row : rows)
        std::printf("N=%ld eps=%s: S_N = %.12g\n", row.n,
                    ew::rational_to_string(row.eps).c_str(), row.tail);
    std::printf("tail table written to %s\n", config.out_path.c_str());
    return kExitSuccess;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Heisenberg-picture measurement-model simulator"};
    app.require_subcommand(1);

    RunConfig config;

    CLI::App* verify = app.add_subcommand(
        "verify", "run the oracle check battery over a grid of model sizes");
    verify->add_option("--max-n", config.max_n, "largest ensemble size")
        ->check(CLI::Range(1, 4));
    verify->add_option("--max-nu", config.max_nu, "largest device resolution")
        ->check(CLI::Range(1, 4));
    verify->add_option("--seed", config.seed, "seed for the random amplitudes");
    CLI::Option* verify_p1 =
        verify->add_option("--p1", config.p1_text, "use a fixed |c1|^2 instead");
    verify->add_option("--out", config.out_path, "report CSV path")
        ->default_val("verify.csv");
    verify->add_flag("--corrupt", config.corrupt,
                     "negative control: perturb the total unitary");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "weight tables across ensemble sizes at fixed p1 and resolution");
    sweep->add_option("--p1", config.p1_text, "|c1|^2, decimal or num/den")
        ->required();
    sweep->add_option("--nu", config.nu, "device resolution")
        ->check(CLI::Range(1, 1000));
    sweep->add_option("--n", config.n_list, "ascending ensemble sizes")
        ->delimiter(',');
    sweep->add_option("--mode", config.mode_text, "exact or float");
    sweep->add_option("--out", config.out_path, "CSV path")->default_val("sweep.csv");

    CLI::App* tie = app.add_subcommand(
        "tie", "tied-pair study at p1 = 1/2 with an odd resolution");
    tie->add_option("--nu", config.nu, "odd device resolution")->default_val(5);
    tie->add_option("--n", config.n_list, "ascending even ensemble sizes")
        ->delimiter(',');
    tie->add_option("--out", config.out_path, "CSV path")->default_val("tie.csv");

    CLI::App* lln = app.add_subcommand(
        "lln", "binomial tail sums S_N across ensemble sizes");
    lln->add_option("--p1", config.p1_text, "|c1|^2, decimal or num/den")
        ->required();
    lln->add_option("--eps", config.eps_texts, "positive epsilon values")
        ->delimiter(',');
    lln->add_option("--n", config.n_list, "ascending ensemble sizes")
        ->delimiter(',');
    lln->add_option("--mode", config.mode_text, "exact or float");
    lln->add_option("--out", config.out_path, "CSV path")->default_val("lln.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    std::string error;
    if (!resolve_p1(config, error))
        return fail_usage(error);
    if (!resolve_mode(config, error))
        return fail_usage(error);
    if (lln->parsed() && !resolve_eps(config, error))
        return fail_usage(error);

    try {
        if (verify->parsed())
            return run_verify(config, verify_p1->count() > 0);
        if (sweep->parsed())
            return run_sweep_cmd(config);
        if (tie->parsed())
            return run_tie_cmd(config);
        if (lln->parsed())
            return run_lln_cmd(config);
    } catch (const std::invalid_argument& e) {
        return fail_usage(e.what());
    } catch (const ew::dimension_error& e) {
        return fail_usage(std::string(e.what()) + " (raise EW_MAX_DIM to override)");
    } catch (const std::exception& e) {
        std::cerr << "ewsim: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return fail_usage("no subcommand given");
}
