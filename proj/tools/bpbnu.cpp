// bpbnu: correct near-attaining (operator, vector, functional) triples on
// weighted l1 spaces and check the resulting attainment certificates.
//
// Exit codes: 0 success, 1 verdict false or suite failure, 2 malformed input,
// 3 internal invariant violated (message names the bound).

#include <cerrno>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <bpbnu/bpbnu.hpp>
#include <bpbnu/json_io.hpp>

namespace {

using bpbnu::io::json;
using complex_t = std::complex<double>;

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_malformed = 2;
constexpr int exit_invariant = 3;

struct RunConfig {
    std::string input_path;
    std::string output_path;
    std::string result_path;
    std::optional<double> eps;
    std::vector<double> eps_grid;
    std::optional<std::string> eta_mode;
    std::uint64_t seed = 0;
    std::size_t n = 1;
    std::size_t trials = 0;
    std::string field = "real";
    std::string structure = "attaining";
    std::optional<double> gap;
    double tolerance = bpbnu::default_verify_tolerance;
};

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw bpbnu::parse_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw bpbnu::parse_error("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw bpbnu::parse_error("cannot write '" + path + "'");
    out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

double tolerance_from_env()
{
    const char* v = std::getenv("BPBNU_TOL");
    if (!v || !*v)
        return bpbnu::default_verify_tolerance;
    char* end = nullptr;
    errno = 0;
    const double t = std::strtod(v, &end);
    if (errno != 0 || end == v || *end != '\0' || !(t > 0.0))
        throw bpbnu::parse_error("BPBNU_TOL must be a positive number");
    return t;
}

void report_failures(const bpbnu::Certificate& c)
{
    for (const auto& f : c.failures)
        std::cerr << "condition failed: " << f << "\n";
}

template <bpbnu::Scalar S>
bpbnu::CorrectionInput<S> load_instance(const json& j, const RunConfig& cfg)
{
    auto in = bpbnu::io::instance_from_json<S>(j);
    if (cfg.eps)
        in.eps = *cfg.eps;
    if (cfg.eta_mode)
        in.eta_mode = bpbnu::EtaMode::parse(*cfg.eta_mode);
    return in;
}

template <bpbnu::Scalar S>
int run_correct(const json& j, const RunConfig& cfg)
{
    const auto in = load_instance<S>(j, cfg);
    bpbnu::CorrectionOptions opt;
    opt.tolerance = cfg.tolerance;
    const auto r = bpbnu::correct(in, opt);
    const auto cert = bpbnu::verify(r, in, cfg.tolerance);
    write_json(cfg.output_path, bpbnu::io::report_to_json(in, r, cert));
    report_failures(cert);
    return cert.verdict ? exit_ok : exit_fail;
}

template <bpbnu::Scalar S>
int run_verify(const json& j, const json& result, const RunConfig& cfg)
{
    const auto in = load_instance<S>(j, cfg);
    const auto t = bpbnu::io::result_from_json<S>(result, in.space());
    const auto cert = bpbnu::verify(t.T3, t.f3, t.g2, in, cfg.tolerance);
    write_json(cfg.output_path, bpbnu::io::certificate_to_json(cert));
    report_failures(cert);
    return cert.verdict ? exit_ok : exit_fail;
}

template <bpbnu::Scalar S>
int run_gen(const bpbnu::GenSpec& spec, const RunConfig& cfg)
{
    write_json(cfg.output_path, bpbnu::io::instance_to_json(bpbnu::gen<S>(spec)));
    return exit_ok;
}

std::string csv_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <bpbnu::Scalar S>
int run_sweep(const RunConfig& cfg)
{
    const auto rows = bpbnu::sweep<S>(cfg.eps_grid, cfg.n, cfg.trials, cfg.seed);
    std::ostringstream out;
    out << "eps,eta_paper,eta_empirical,n,trials,seed\n";
    bool monotone = true;
    for (const auto& r : rows) {
        out << csv_number(r.eps) << ',' << csv_number(r.eta_paper) << ',' << csv_number(r.eta_empirical) << ',' << r.n
            << ',' << r.trials << ',' << r.seed << '\n';
        monotone = monotone && r.eta_empirical >= r.eta_paper;
    }
    write_text(cfg.output_path, out.str());
    return monotone ? exit_ok : exit_fail;
}

int run_lemmas(const RunConfig& cfg)
{
    const auto suites = bpbnu::run_lemma_suites(cfg.seed, cfg.trials == 0 ? 10000 : cfg.trials);
    json arr = json::array();
    bool all = true;
    for (const auto& s : suites) {
        arr.push_back(json{{"name", s.name},
                           {"trials", s.trials},
                           {"passed", s.passed},
                           {"failed", s.failed},
                           {"regenerated", s.regenerated}});
        all = all && s.ok();
    }
    write_json(cfg.output_path, json{{"seed", cfg.seed}, {"suites", std::move(arr)}, {"all_pass", all}});
    return all ? exit_ok : exit_fail;
}

template <class F>
int dispatch(bpbnu::Field field, F&& f)
{
    return field == bpbnu::Field::real ? f(double{}) : f(complex_t{});
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact-attainment correction for operators on weighted l1 spaces"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_eta = [&](CLI::App* sub) {
        sub->add_option("--eta-mode", cfg.eta_mode, "paper | custom:<float>");
    };

    auto* correct = app.add_subcommand("correct", "correct an instance and write the report (trace + certificate)");
    correct->add_option("--input", cfg.input_path, "instance JSON")->required();
    correct->add_option("--output", cfg.output_path, "report JSON (stdout if omitted)");
    correct->add_option("--eps", cfg.eps, "override the instance eps");
    add_eta(correct);

    auto* verify = app.add_subcommand("verify", "recompute the certificate of an output triple");
    verify->add_option("--input", cfg.input_path, "instance JSON")->required();
    verify->add_option("--result", cfg.result_path, "report or result JSON holding T3, f3, g2")->required();
    verify->add_option("--output", cfg.output_path, "certificate JSON (stdout if omitted)");
    verify->add_option("--eps", cfg.eps, "override the instance eps");
    add_eta(verify);

    auto* gen = app.add_subcommand("gen", "generate a valid instance");
    gen->add_option("--n", cfg.n, "atom count")->check(CLI::PositiveNumber);
    gen->add_option("--field", cfg.field, "real | complex")->check(CLI::IsMember({"real", "complex"}));
    gen->add_option("--structure", cfg.structure, "attaining | defected | clustered-blocks")
        ->check(CLI::IsMember({"attaining", "defected", "clustered-blocks"}));
    gen->add_option("--eps", cfg.eps, "epsilon in (0,1)");
    gen->add_option("--gap", cfg.gap, "hypothesis defect (default 0 for attaining, 1e-12 otherwise)");
    gen->add_option("--seed", cfg.seed, "64-bit seed");
    gen->add_option("--output", cfg.output_path, "instance JSON (stdout if omitted)");
    add_eta(gen);

    auto* sweep = app.add_subcommand("sweep", "empirical eta sweep, CSV output");
    sweep->add_option("--eps", cfg.eps_grid, "eps grid (repeat or comma-separate)")->delimiter(',')->required();
    sweep->add_option("--n", cfg.n, "atom count")->check(CLI::PositiveNumber);
    sweep->add_option("--trials", cfg.trials, "trials per eps")->check(CLI::PositiveNumber);
    sweep->add_option("--field", cfg.field, "real | complex")->check(CLI::IsMember({"real", "complex"}));
    sweep->add_option("--seed", cfg.seed, "64-bit seed");
    sweep->add_option("--output", cfg.output_path, "CSV (stdout if omitted)");

    auto* lemmas = app.add_subcommand("lemmas", "randomized lemma suites, JSON pass/fail counts");
    lemmas->add_option("--seed", cfg.seed, "64-bit seed");
    lemmas->add_option("--trials", cfg.trials, "base trial count (default 10000)");
    lemmas->add_option("--output", cfg.output_path, "JSON (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_malformed;
    }

    try {
        cfg.tolerance = tolerance_from_env();
        if (*correct) {
            const auto j = read_json(cfg.input_path);
            return dispatch(bpbnu::io::peek_field(j), [&](auto s) { return run_correct<decltype(s)>(j, cfg); });
        }
        if (*verify) {
            const auto j = read_json(cfg.input_path);
            const auto r = read_json(cfg.result_path);
            return dispatch(bpbnu::io::peek_field(j), [&](auto s) { return run_verify<decltype(s)>(j, r, cfg); });
        }
        if (*gen) {
            bpbnu::GenSpec spec;
            spec.n = cfg.n;
            spec.field = bpbnu::parse_field(cfg.field);
            spec.structure = bpbnu::parse_structure(cfg.structure);
            spec.eps = cfg.eps.value_or(0.5);
            spec.seed = cfg.seed;
            spec.eta_mode = cfg.eta_mode ? bpbnu::EtaMode::parse(*cfg.eta_mode) : bpbnu::EtaMode::paper();
            spec.gap = cfg.gap.value_or(spec.structure == bpbnu::Structure::attaining ? 0.0 : 1e-12);
            return dispatch(spec.field, [&](auto s) { return run_gen<decltype(s)>(spec, cfg); });
        }
        if (*sweep) {
            if (cfg.trials == 0)
                cfg.trials = 5;
            return dispatch(bpbnu::parse_field(cfg.field), [&](auto s) { return run_sweep<decltype(s)>(cfg); });
        }
        if (*lemmas)
            return run_lemmas(cfg);
    } catch (const bpbnu::invariant_error& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return exit_invariant;
    } catch (const std::invalid_argument& e) {
        // precondition_error, dimension_error
        std::cerr << "malformed input: " << e.what() << "\n";
        return exit_malformed;
    } catch (const bpbnu::parse_error& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return exit_malformed;
    } catch (const json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return exit_malformed;
    }
    return exit_malformed;
}
