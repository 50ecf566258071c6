// Command-line front end: array construction, merit measurement, rotation
// sweeps, convergence studies, exhaustive search, and identity verification.
//
// Exit codes: 0 ok, 1 verification failure, 2 input validation,
//             3 undefined merit, 4 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qca/qca.hpp"
#include "qca/report_json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUndefinedMerit = 3;
constexpr int kExitNumerical = 4;

qca::Rat parse_rotation_component(const std::string& text) {
    if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
        text.find('E') == std::string::npos)
        return qca::Rat::parse(text);
    // Decimal input: rationalize at denominator 10^6. Floor boundaries such
    // as s = 1/4 need exact rationals, so warn.
    double v = std::stod(text);
    auto num = static_cast<long long>(std::llround(v * 1e6));
    std::cerr << "warning: rotation component '" << text << "' treated as " << num << "/1000000\n";
    return qca::Rat(num, 1000000);
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path '" + out_path + "'");
    out << payload;
    if (!out) throw std::runtime_error("failed writing output path '" + out_path + "'");
}

void echo_config(const nlohmann::ordered_json& config) { std::cerr << config.dump() << "\n"; }

qca::Family parse_family(const std::string& name) {
    if (name == "legendre-seq") return qca::Family::legendre_seq;
    if (name == "ternary-legendre-seq") return qca::Family::ternary_legendre_seq;
    if (name == "legendre-array") return qca::Family::legendre_array;
    if (name == "qr") return qca::Family::qr_array;
    throw std::invalid_argument("unknown family '" + name + "'");
}

struct GlobalOptions {
    std::string out = "-";
    std::string format;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string engine = "auto";
};

std::optional<qca::Engine> parse_engine(const std::string& name) {
    if (name == "auto") return std::nullopt;
    if (name == "direct") return qca::Engine::direct;
    if (name == "spectral") return qca::Engine::spectral;
    throw std::invalid_argument("unknown engine '" + name + "'");
}

// --format is sugar for the per-subcommand native format; anything else is a
// validation error before any computation starts.
void validate_format(const GlobalOptions& global, const CLI::App& app) {
    if (global.format.empty()) return;
    const std::string sub = app.get_subcommands().front()->get_name();
    std::string native;
    if (sub == "construct") native = "array-text";
    else if (sub == "merit") native = "json";
    else if (sub == "sweep" || sub == "converge") native = "csv";
    else native = "text";
    if (global.format != native)
        throw std::invalid_argument("subcommand '" + sub + "' writes " + native + ", not '" + global.format + "'");
}

int run_construct(const GlobalOptions& global, const std::string& family, std::int64_t p_value, std::int64_t q_value,
                  bool ternary, const std::string& pattern, int y00) {
    nlohmann::ordered_json config{{"subcommand", "construct"}, {"family", family},   {"p", p_value},
                                  {"q", q_value},              {"ternary", ternary}, {"pattern", pattern},
                                  {"y00", y00},                {"seed", global.seed}, {"out", global.out}};
    echo_config(config);
    qca::PrimeModulus p(p_value);
    qca::TernaryArray array(1, 1);
    if (family == "legendre-seq") {
        array = qca::legendre_sequence(p, ternary);
    } else if (family == "legendre-array") {
        qca::PrimeModulus q(q_value);
        qca::SignPattern v = pattern == "random" ? qca::random_sign_pattern(p_value, q_value, global.seed)
                                                 : qca::calabro_wolf_pattern(p_value, q_value);
        array = qca::legendre_array(p, q, v);
    } else if (family == "calabro-wolf") {
        qca::PrimeModulus q(q_value);
        array = qca::calabro_wolf_array(p, q);
    } else if (family == "qr") {
        auto spec = qca::make_ext_field(p);
        array = ternary ? qca::ternary_qr_array(p, spec) : qca::qr_array(p, spec, y00);
    } else {
        throw std::invalid_argument("unknown construct family '" + family + "'");
    }
    write_output(global.out, qca::to_text(array));
    std::cerr << "n=" << array.n() << " m=" << array.m() << " nonzeros=" << array.nonzero_count() << "\n";
    return kExitOk;
}

int run_merit(const GlobalOptions& global, const std::string& input_path, const std::string& spectrum_path) {
    nlohmann::ordered_json config{{"subcommand", "merit"},
                                  {"input", input_path},
                                  {"engine", global.engine},
                                  {"spectrum", spectrum_path},
                                  {"out", global.out}};
    echo_config(config);
    std::ifstream in(input_path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input path '" + input_path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    qca::TernaryArray array = qca::parse_text(text);
    std::optional<qca::Engine> engine = parse_engine(global.engine);
    if (!spectrum_path.empty()) {
        qca::CorrelationSpectrum spectrum = (engine.value_or(array.size() <= 4096 ? qca::Engine::direct
                                                                                  : qca::Engine::spectral) ==
                                             qca::Engine::direct)
                                                ? qca::autocorrelation_direct(array)
                                                : qca::autocorrelation_spectral(array);
        write_output(spectrum_path, qca::spectrum_to_text(spectrum));
    }
    qca::MeritReport report = qca::merit_factor(array, engine);
    write_output(global.out, qca::merit_report_json(report) + "\n");
    return kExitOk;
}

int run_sweep(const GlobalOptions& global, const std::string& family, std::int64_t p_value, std::int64_t q_value,
              std::int64_t grid, const std::string& pattern, int y00, const std::string& plot_path) {
    nlohmann::ordered_json config{{"subcommand", "sweep"}, {"family", family}, {"p", p_value},
                                  {"q", q_value},          {"grid", grid},     {"pattern", pattern},
                                  {"y00", y00},            {"seed", global.seed}, {"threads", global.threads},
                                  {"out", global.out}};
    echo_config(config);
    qca::SweepSpec spec;
    spec.family = parse_family(family);
    spec.p = p_value;
    spec.q = q_value;
    spec.grid = grid;
    spec.random_variant = pattern == "random";
    spec.seed = global.seed;
    spec.y00 = y00;
    spec.threads = global.threads;
    qca::SweepResult result = qca::rotation_sweep(spec);
    write_output(global.out, qca::sweep_csv(result));
    if (!plot_path.empty()) {
        std::string plot = "s,t,F_measured,F_predicted\n";
        for (const auto& row : result.rows) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", row.s.to_double(), row.t.to_double(),
                          row.f_measured.to_double(), row.f_predicted.to_double());
            plot += buf;
        }
        write_output(plot_path, plot);
    }
    return kExitOk;
}

int run_converge(const GlobalOptions& global, const std::string& family, const std::vector<std::int64_t>& primes,
                 const std::string& s_text, const std::string& t_text, int trials) {
    qca::Rotation rotation(parse_rotation_component(s_text), parse_rotation_component(t_text));
    nlohmann::ordered_json config{{"subcommand", "converge"},
                                  {"family", family},
                                  {"primes", primes},
                                  {"s", rotation.s.to_string()},
                                  {"t", rotation.t.to_string()},
                                  {"trials", trials},
                                  {"seed", global.seed},
                                  {"threads", global.threads},
                                  {"out", global.out}};
    echo_config(config);
    qca::ConvergenceSpec spec;
    spec.family = parse_family(family);
    spec.primes = primes;
    spec.rotation = rotation;
    spec.trials_per_prime = trials;
    spec.seed = global.seed;
    spec.threads = global.threads;
    write_output(global.out, qca::convergence_csv(qca::convergence_study(spec)));
    return kExitOk;
}

int run_search(const GlobalOptions& global, std::int64_t n, std::int64_t m, bool mean, std::uint64_t samples,
               std::int64_t cap) {
    nlohmann::ordered_json config{{"subcommand", "search"}, {"n", n},       {"m", m},         {"mean", mean},
                                  {"samples", samples},     {"cap", cap},   {"seed", global.seed},
                                  {"out", global.out}};
    echo_config(config);
    std::string out;
    if (mean) {
        if (samples > 0) {
            qca::SampledMean sampled = qca::mean_inverse_merit_sampled(n, m, global.seed, samples);
            char buf[160];
            std::snprintf(buf, sizeof buf, "mean_inv_merit = %.12g (std_error %.12g, %llu samples, seed %llu)\n",
                          sampled.mean, sampled.std_error, static_cast<unsigned long long>(sampled.count),
                          static_cast<unsigned long long>(sampled.seed));
            out = buf;
        } else {
            qca::Rat mean_value = qca::mean_inverse_merit_exhaustive(n, m, cap);
            out = "mean_inv_merit = " + mean_value.to_string() + " (" +
                  qca::detail::format_g12(mean_value.to_double()) + ")\n";
        }
    } else {
        qca::BestMerit best = qca::exhaustive_best_merit(n, m, cap);
        out = "F = " + best.f.to_string() + " (" + qca::detail::format_g12(best.f.to_double()) + ")\n";
        out += qca::to_text(best.witness);
    }
    write_output(global.out, out);
    return kExitOk;
}

struct VerifyLine {
    bool pass;
    std::string text;
};

void print_check(std::vector<VerifyLine>& lines, const std::string& lemma, std::int64_t p, bool pass, double max_err) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %s p=%lld max_err=%.3g", pass ? "PASS" : "FAIL", lemma.c_str(),
                  static_cast<long long>(p), max_err);
    lines.push_back({pass, buf});
}

std::vector<std::int64_t> odd_primes_up_to(std::int64_t bound) {
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 3; p <= bound; p += 2)
        if (qca::is_prime(p)) primes.push_back(p);
    return primes;
}

int run_verify(const GlobalOptions& global, const std::string& suite, std::int64_t pmax) {
    nlohmann::ordered_json config{
        {"subcommand", "verify"}, {"suite", suite}, {"pmax", pmax}, {"seed", global.seed}, {"out", global.out}};
    echo_config(config);
    std::vector<VerifyLine> lines;
    const bool all = suite == "all";

    if (all || suite == "gauss") {
        for (std::int64_t pv : odd_primes_up_to(std::min<std::int64_t>(pmax, 31))) {
            qca::PrimeModulus p(pv);
            auto report = qca::verify_gauss_sum(p, qca::make_ext_field(p));
            double max_err = report.max_err;
            bool pass = report.pass;
            for (std::uint64_t basis = 1; basis <= 5; ++basis) {
                auto r = qca::verify_gauss_sum(p, qca::make_ext_field_random_basis(p, qca::derive_seed(global.seed, basis)));
                pass = pass && r.pass;
                max_err = std::max(max_err, r.max_err);
            }
            print_check(lines, "gauss_sum", pv, pass, max_err);
        }
    }
    if (all || suite == "omega") {
        for (std::int64_t pv : odd_primes_up_to(std::min<std::int64_t>(pmax, 7))) {
            qca::PrimeModulus p(pv);
            auto spec = qca::make_ext_field(p);
            bool pass = true;
            double max_err = 0.0;
            // Closed form on the diagonal set, all kappa.
            for (std::int64_t c0 = 0; c0 < pv && pass; ++c0)
                for (std::int64_t c1 = 0; c1 < pv; ++c1) {
                    qca::ExtFieldElement kappa{c0, c1};
                    std::int64_t expected = kappa.is_zero() ? pv * pv - 1 : pv * pv - 2;
                    if (qca::omega(kappa, kappa, {0, 0}, spec) != expected) {
                        pass = false;
                        break;
                    }
                }
            // Weil-type bound off the diagonal set: exhaustive for p <= 5,
            // seeded sample at p = 7.
            auto off_diagonal = [&](const qca::ExtFieldElement& a, const qca::ExtFieldElement& b,
                                    const qca::ExtFieldElement& c) {
                return !((a == b && c.is_zero()) || (a == c && b.is_zero()) || (b == c && a.is_zero()));
            };
            auto check_triple = [&](const qca::ExtFieldElement& a, const qca::ExtFieldElement& b,
                                    const qca::ExtFieldElement& c) {
                if (!off_diagonal(a, b, c)) return;
                std::int64_t value = qca::omega(a, b, c, spec);
                max_err = std::max(max_err, static_cast<double>(std::abs(value)) - 3.0 * static_cast<double>(pv));
                if (std::abs(value) > 3 * pv) pass = false;
            };
            if (pv <= 5) {
                for (std::int64_t a = 0; a < pv * pv; ++a)
                    for (std::int64_t b = 0; b < pv * pv; ++b)
                        for (std::int64_t c = 0; c < pv * pv; ++c)
                            check_triple({a / pv, a % pv}, {b / pv, b % pv}, {c / pv, c % pv});
            } else {
                qca::SplitMix64 gen(qca::derive_seed(global.seed, static_cast<std::uint64_t>(pv)));
                for (int trial = 0; trial < 500; ++trial) {
                    auto draw = [&]() -> qca::ExtFieldElement {
                        return {static_cast<std::int64_t>(gen.next_below(static_cast<std::uint64_t>(pv))),
                                static_cast<std::int64_t>(gen.next_below(static_cast<std::uint64_t>(pv)))};
                    };
                    check_triple(draw(), draw(), draw());
                }
            }
            print_check(lines, "omega", pv, pass, std::max(0.0, max_err));
        }
    }
    if (all || suite == "gamma") {
        for (std::int64_t pv : odd_primes_up_to(std::min<std::int64_t>(pmax, 13))) {
            qca::PrimeModulus p(pv);
            auto eps = qca::roots_of_unity(pv);
            bool pass = true;
            double max_err = 0.0;
            double pd = static_cast<double>(pv);
            for (std::int64_t k = 0; k < pv; ++k) {
                qca::cplx actual = qca::gamma_sum(k, k, 0, p);
                qca::cplx expected;
                if (k == 0)
                    expected = qca::cplx(pd * pd * (pd * pd + 2.0) / 48.0, 0.0);
                else
                    expected = pd * pd / 2.0 /
                               (eps[static_cast<std::size_t>(k)] * std::norm(1.0 - eps[static_cast<std::size_t>(k)]));
                double err = std::abs(actual - expected) / std::max(1.0, std::abs(expected));
                max_err = std::max(max_err, err);
                if (err > 1e-9) pass = false;
            }
            // Triple-sum bound (p log p)^4.
            double total = 0.0;
            for (std::int64_t k = 0; k < pv; ++k)
                for (std::int64_t l = 0; l < pv; ++l)
                    for (std::int64_t m = 0; m < pv; ++m) total += std::abs(qca::gamma_sum(k, l, m, p));
            if (total > std::pow(pd * std::log(pd), 4.0)) pass = false;
            print_check(lines, "gamma", pv, pass, max_err);
        }
    }
    if (all || suite == "expsum") {
        for (std::int64_t pv : odd_primes_up_to(std::min<std::int64_t>(pmax, 101))) {
            qca::PrimeModulus p(pv);
            bool pass = true;
            double max_err = 0.0;
            for (std::int64_t j = -pv; j <= pv; ++j) {
                auto report = qca::exp_sum_check(p, j);
                pass = pass && report.pass;
                max_err = std::max(max_err, report.max_err);
            }
            print_check(lines, "exp_sum", pv, pass, max_err);
        }
    }
    if (all || suite == "interp") {
        for (std::int64_t pv : odd_primes_up_to(std::min<std::int64_t>(pmax, 31))) {
            qca::PrimeModulus p(pv);
            auto report = qca::interpolation_bound_check(qca::legendre_sequence(p, true));
            print_check(lines, "interpolation_bound", pv, report.pass, report.max_err);
        }
    }

    std::string out;
    bool all_pass = true;
    for (const auto& line : lines) {
        out += line.text + "\n";
        all_pass = all_pass && line.pass;
    }
    write_output(global.out, out);
    return all_pass ? kExitOk : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary and ternary arrays from the quadratic character: construction, aperiodic "
                 "autocorrelation and merit factors, asymptotic predictions, and identity checks"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOptions global;
    app.add_option("--out", global.out, "Output path ('-' for stdout)")->capture_default_str();
    app.add_option("--format", global.format, "Output format override (csv, json, array-text)");
    app.add_option("--seed", global.seed, "Seed for randomized variants")->capture_default_str();
    app.add_option("--threads", global.threads, "Worker thread cap")->capture_default_str();
    app.add_option("--engine", global.engine, "Correlation engine: auto, direct, spectral")->capture_default_str();

    // construct
    auto* construct = app.add_subcommand("construct", "Construct an array and write it in text format");
    std::string c_family;
    std::int64_t c_p = 3, c_q = 3;
    bool c_ternary = false;
    std::string c_pattern = "calabro-wolf";
    int c_y00 = 1;
    construct->add_option("--family", c_family, "legendre-seq, legendre-array, calabro-wolf, qr")->required();
    construct->add_option("--p", c_p, "Row prime")->required();
    construct->add_option("--q", c_q, "Column prime (array families)");
    construct->add_flag("--ternary", c_ternary, "Ternary variant (zero at the convention cell)");
    construct->add_option("--pattern", c_pattern, "Sign pattern for legendre-array: calabro-wolf or random");
    construct->add_option("--y00", c_y00, "Corner value for qr arrays: +1 or -1");

    // merit
    auto* merit = app.add_subcommand("merit", "Measure the merit factor of an array file");
    std::string m_input;
    std::string m_spectrum;
    merit->add_option("input", m_input, "Array file in text format")->required();
    merit->add_option("--spectrum", m_spectrum, "Also export the correlation table in text format to this path");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Rotation grid sweep of measured vs predicted merit");
    std::string s_family = "qr";
    std::int64_t s_p = 3, s_q = 0, s_grid = 64;
    std::string s_pattern = "calabro-wolf";
    int s_y00 = 1;
    std::string s_plot;
    sweep->add_option("--family", s_family, "legendre-array or qr")->required();
    sweep->add_option("--p", s_p, "Row prime")->required();
    sweep->add_option("--q", s_q, "Column prime (defaults to p)");
    sweep->add_option("--grid", s_grid, "Grid resolution per axis")->capture_default_str();
    sweep->add_option("--pattern", s_pattern, "legendre-array sign pattern: calabro-wolf or random");
    sweep->add_option("--y00", s_y00, "Corner value for qr arrays");
    sweep->add_option("--plot-data", s_plot, "Also write a long-format CSV (s,t decimals) to this path");

    // converge
    auto* converge = app.add_subcommand("converge", "Finite-p residuals against the asymptotic formulas");
    std::string v_family = "legendre-seq";
    std::vector<std::int64_t> v_primes;
    std::string v_s = "0", v_t = "0";
    int v_trials = 1;
    converge->add_option("--family", v_family, "legendre-seq, ternary-legendre-seq, legendre-array, qr")->required();
    converge->add_option("--primes", v_primes, "Increasing odd primes")->required()->delimiter(',');
    converge->add_option("--s", v_s, "Row rotation (rational like 1/4, or decimal)");
    converge->add_option("--t", v_t, "Column rotation");
    converge->add_option("--trials", v_trials, "Trials per prime")->capture_default_str();

    // search
    auto* search = app.add_subcommand("search", "Exhaustive best merit factor or mean inverse merit");
    std::int64_t e_n = 2, e_m = 1, e_cap = 24;
    bool e_mean = false;
    std::uint64_t e_samples = 0;
    search->add_option("--n", e_n, "Rows")->required();
    search->add_option("--m", e_m, "Columns")->capture_default_str();
    search->add_flag("--mean", e_mean, "Mean of 1/F instead of the maximum");
    search->add_option("--samples", e_samples, "Monte-Carlo samples for --mean (0 = exhaustive)");
    search->add_option("--cap", e_cap, "Exhaustive cap on nm")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "Numeric verification of the number-theoretic identities");
    std::string y_suite = "all";
    std::int64_t y_pmax = 13;
    verify->add_option("--suite", y_suite, "all, gauss, omega, gamma, expsum, interp")->capture_default_str();
    verify->add_option("--pmax", y_pmax, "Largest prime to test")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        validate_format(global, app);
        if (construct->parsed()) return run_construct(global, c_family, c_p, c_q, c_ternary, c_pattern, c_y00);
        if (merit->parsed()) return run_merit(global, m_input, m_spectrum);
        if (sweep->parsed()) return run_sweep(global, s_family, s_p, s_q == 0 ? s_p : s_q, s_grid, s_pattern, s_y00, s_plot);
        if (converge->parsed()) return run_converge(global, v_family, v_primes, v_s, v_t, v_trials);
        if (search->parsed()) return run_search(global, e_n, e_m, e_mean, e_samples, e_cap);
        if (verify->parsed()) return run_verify(global, y_suite, y_pmax);
    } catch (const qca::undefined_merit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUndefinedMerit;
    } catch (const qca::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitValidation;
}
