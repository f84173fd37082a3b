// qcawalk_cli.hpp
// Command-line front end: argument parsing, command dispatch and CSV/JSON
// report rendering. Kept in a header so tests can drive `run` in-process.

#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcawalk/qcawalk.hpp"

namespace qcawalk::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- Number expressions -------------------------------------------------------

namespace detail {

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    double parse() {
        skip_spaces();
        double sign = 1.0;
        while (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            if (text_[pos_] == '-') sign = -sign;
            ++pos_;
        }
        double value = sign * product();
        skip_spaces();
        if (consume('/')) value /= product();
        skip_spaces();
        if (pos_ != text_.size()) fail();
        if (!std::isfinite(value)) fail();
        return value;
    }

private:
    double product() {
        double value = factor();
        for (;;) {
            skip_spaces();
            if (consume('*')) {
                value *= factor();
            } else if (starts_factor()) {
                value *= factor();
            } else {
                return value;
            }
        }
    }

    bool starts_factor() const {
        if (pos_ >= text_.size()) return false;
        const char ch = text_[pos_];
        return ch == 'p' || ch == 's' || ch == '(';
    }

    double factor() {
        skip_spaces();
        if (keyword("pi")) return std::numbers::pi;
        if (keyword("sqrt")) {
            if (consume('(')) {
                const double v = number();
                if (!consume(')')) fail();
                return std::sqrt(v);
            }
            return std::sqrt(number());
        }
        return number();
    }

    double number() {
        skip_spaces();
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
        if (ec != std::errc{} || ptr == first) fail();
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    bool keyword(std::string_view word) {
        if (text_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    bool consume(char ch) {
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_spaces() {
        while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    }

    [[noreturn]] void fail() const { throw UsageError("cannot parse number '" + std::string(text_) + "'"); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses decimals and simple pi / sqrt expressions: "0.5", "-pi/4", "3pi/2",
/// "2*pi/3", "1/sqrt2", "sqrt(3)/2".
inline double parse_real(std::string_view text) { return detail::ExpressionParser(text).parse(); }

/// Shortest round-trip decimal form (at most 17 significant digits).
inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// --- Configuration ------------------------------------------------------------

struct RunConfig {
    std::string command;

    std::string theta = "pi/4";
    std::string phi = "pi/4";
    std::string delta = "pi/2";
    std::vector<std::string> abcd;
    std::vector<std::string> qubit{"1/sqrt2", "1/sqrt2"};
    std::vector<std::string> coin{"0", "1/sqrt2", "1/sqrt2", "0", "1/sqrt2", "0", "0", "1/sqrt2"};
    int steps = -1;
    std::string family = "A";
    std::string sign = "+";
    long long origin = 0;
    std::string walk = "generalized";
    std::string kind;
    std::string theta1 = "0";
    std::string theta2 = "0";
    std::string phi1 = "pi/4";
    std::string phi2 = "pi/4";
    std::string tolerance = "0.08";
    int sweep = 0;
    std::string format = "csv";
    std::string out;
    bool timing = false;

    bool angles_given = false;
};

namespace detail {

inline Family parse_family(const std::string& s) {
    if (s == "A" || s == "a") return Family::A;
    if (s == "B" || s == "b") return Family::B;
    throw UsageError("--family must be A or B");
}

inline Json complex_json(Complex z) {
    auto clean = [](double v) { return v == 0.0 ? 0.0 : v; };
    return Json::array({clean(z.real()), clean(z.imag())});
}

inline Json mat2_json(const Mat2& m) {
    return Json::array({Json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                        Json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
}

inline Json distribution_json(const Distribution& dist) {
    Json rows = Json::array();
    for (const auto& [site, m] : dist) rows.push_back(Json::array({site, m}));
    return rows;
}

inline std::vector<Complex> parse_complex_list(const std::vector<std::string>& values, const char* flag) {
    std::vector<Complex> out;
    for (std::size_t i = 0; i + 1 < values.size(); i += 2) {
        out.emplace_back(parse_real(values[i]), parse_real(values[i + 1]));
    }
    if (values.size() % 2 != 0) throw UsageError(std::string(flag) + " expects re/im pairs");
    return out;
}

struct Resolved {
    std::optional<AngleTriple> angles;
    QcaParams params;
};

inline Resolved resolve_params(const RunConfig& cfg) {
    if (!cfg.abcd.empty()) {
        if (cfg.angles_given) throw UsageError("give either --theta/--phi/--delta or --abcd, not both");
        if (cfg.abcd.size() != 8) throw UsageError("--abcd expects 8 numbers (re im for a, b, c, d)");
        const auto z = parse_complex_list(cfg.abcd, "--abcd");
        try {
            return {std::nullopt, QcaParams(z[0], z[1], z[2], z[3])};
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    try {
        const AngleTriple angles(parse_real(cfg.theta), parse_real(cfg.phi), parse_real(cfg.delta));
        return {angles, params_from_angles(angles)};
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline QubitState resolve_qubit(const RunConfig& cfg) {
    std::vector<Complex> z;
    if (cfg.qubit.size() == 2) {
        z = {parse_real(cfg.qubit[0]), parse_real(cfg.qubit[1])};
    } else if (cfg.qubit.size() == 4) {
        z = parse_complex_list(cfg.qubit, "--qubit");
    } else {
        throw UsageError("--qubit expects 2 real or 4 (re im re im) numbers");
    }
    try {
        return {z[0], z[1]};
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline double parse_angle(const std::string& text, const char* flag) {
    const double v = parse_real(text);
    if (v < 0.0 || v >= kTwoPi) throw UsageError(std::string(flag) + " must lie in [0, 2pi)");
    return v;
}

inline Json params_json(const Resolved& r) {
    Json p;
    if (r.angles) {
        p["theta"] = r.angles->theta();
        p["phi"] = r.angles->phi();
        p["delta"] = r.angles->delta();
    }
    p["a"] = complex_json(r.params.a());
    p["b"] = complex_json(r.params.b());
    p["c"] = complex_json(r.params.c());
    p["d"] = complex_json(r.params.d());
    return p;
}

inline Json qubit_json(const QubitState& q) {
    return Json::array({complex_json(q.alpha()), complex_json(q.beta())});
}

inline int steps_or(const RunConfig& cfg, int fallback) {
    const int n = cfg.steps < 0 ? fallback : cfg.steps;
    if (n < 0) throw UsageError("--steps must be nonnegative");
    return n;
}

inline Json report_json(const CorrespondenceReport& r) {
    Json j;
    j["identity"] = r.identity_name;
    j["steps_checked"] = r.steps_checked;
    j["max_amplitude_error"] = r.max_amplitude_error;
    j["max_probability_error"] = r.max_probability_error;
    j["holds"] = r.holds();
    return j;
}

// Each command fills the envelope and returns its exit code.

inline int cmd_classify(const RunConfig& cfg, Json& env) {
    const Resolved r = resolve_params(cfg);
    env["params"] = params_json(r);
    env["result"]["type"] = std::string(to_string(classify(r.params)));
    env["result"]["abcd"] = Json::array({complex_json(r.params.a()), complex_json(r.params.b()),
                                         complex_json(r.params.c()), complex_json(r.params.d())});
    const auto res = r.params.residuals();
    for (std::size_t i = 0; i < res.values.size(); ++i) {
        env["residuals"]["eq" + std::to_string(i + 1)] = res.values[i];
    }
    if (cfg.sweep > 0) {
        const int g = cfg.sweep;
        // One task per theta slice; slices joined in index order.
        std::vector<std::future<std::array<long long, 9>>> tasks;
        for (int i = 0; i < g; ++i) {
            tasks.push_back(std::async(std::launch::async, [i, g] {
                std::array<long long, 9> counts{};
                for (int j = 0; j < g; ++j)
                    for (int k = 0; k < g; ++k) {
                        const AngleTriple t(kTwoPi * i / g, kTwoPi * j / g, kTwoPi * k / g);
                        ++counts[static_cast<std::size_t>(classify(params_from_angles(t)))];
                    }
                return counts;
            }));
        }
        std::array<long long, 9> total{};
        for (auto& t : tasks) {
            const auto c = t.get();
            for (std::size_t i = 0; i < total.size(); ++i) total[i] += c[i];
        }
        Json counts;
        for (std::size_t i = 0; i < total.size(); ++i) {
            counts[std::string(to_string(static_cast<QcaType>(i)))] = total[i];
        }
        env["result"]["sweep_grid"] = g;
        env["result"]["sweep_counts"] = counts;
    }
    return kSuccess;
}

inline int cmd_simulate_qca(const RunConfig& cfg, Json& env) {
    const Resolved r = resolve_params(cfg);
    const QubitState q = resolve_qubit(cfg);
    const int n = steps_or(cfg, 1);
    if (cfg.sign != "+" && cfg.sign != "-") throw UsageError("--sign must be + or -");
    const Branch branch = cfg.sign == "+" ? Branch::Plus : Branch::Minus;
    env["params"] = params_json(r);
    env["params"]["qubit"] = qubit_json(q);
    env["params"]["m"] = cfg.origin;
    env["params"]["sign"] = cfg.sign;
    env["params"]["steps"] = n;
    const Distribution dist = qca_distribution(cfg.origin, branch, q, n, r.params);
    env["result"]["distribution"] = distribution_json(dist);
    env["residuals"]["total_mass"] = std::abs(dist.total() - 1.0);
    return kSuccess;
}

inline int cmd_simulate_qw(const RunConfig& cfg, Json& env) {
    const QubitState q = resolve_qubit(cfg);
    const int n = steps_or(cfg, 1);
    const Family family = parse_family(cfg.family);
    CoinBlocks blocks;
    if (cfg.walk == "plain") {
        if (cfg.coin.size() != 8) throw UsageError("--coin expects 8 numbers (re im for a', b', c', d')");
        const auto z = parse_complex_list(cfg.coin, "--coin");
        try {
            const CoinMatrix coin(z[0], z[1], z[2], z[3]);
            blocks = plain_blocks(coin, family);
            env["params"]["coin"] = mat2_json(coin.matrix());
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else if (cfg.walk == "generalized") {
        const Resolved r = resolve_params(cfg);
        env["params"] = params_json(r);
        blocks = generalized_blocks_from_qca(r.params, family);
    } else {
        throw UsageError("--walk must be plain or generalized");
    }
    env["params"]["walk"] = cfg.walk;
    env["params"]["family"] = std::string(to_string(family));
    env["params"]["qubit"] = qubit_json(q);
    env["params"]["steps"] = n;
    const WalkState state = walk_evolve(WalkState::at_origin(q, blocks.order), blocks, n);
    const Distribution dist = walk_distribution(state);
    env["result"]["distribution"] = distribution_json(dist);
    env["residuals"]["total_mass"] = std::abs(dist.total() - 1.0);
    env["residuals"]["block_unitarity"] = blocks.unitarity_defect();
    return kSuccess;
}

inline int cmd_verify(const RunConfig& cfg, Json& env) {
    const int n = steps_or(cfg, 50);
    CorrespondenceReport report;
    if (cfg.kind == "patel") {
        const PatelParams p(parse_angle(cfg.phi1, "--phi1"), parse_angle(cfg.phi2, "--phi2"));
        env["params"]["phi1"] = p.phi1();
        env["params"]["phi2"] = p.phi2();
        auto [params, rep] = patel_factorize(p);
        report = rep;
        // Sparse even/odd application vs. one QCA step on a few deltas and a spread field.
        double worst = 0.0;
        AmplitudeField::container spread;
        for (Site s = -3; s <= 4; ++s) spread[s] = Complex(1.0 + 0.25 * static_cast<double>(s), 0.5 * s) / 6.0;
        std::vector<AmplitudeField> probes{AmplitudeField::delta(0), AmplitudeField::delta(1),
                                           AmplitudeField::delta(-3), AmplitudeField(spread)};
        for (const auto& f : probes) worst = std::max(worst, max_abs_difference(patel_step(f, p), qca_step(f, params)));
        report.max_amplitude_error = std::max(report.max_amplitude_error, worst);
        env["result"]["abcd"] = Json::array({complex_json(params.a()), complex_json(params.b()),
                                             complex_json(params.c()), complex_json(params.d())});
        env["result"]["type"] = std::string(to_string(classify(params)));
    } else {
        const Resolved r = resolve_params(cfg);
        const QubitState q = resolve_qubit(cfg);
        env["params"] = params_json(r);
        env["params"]["qubit"] = qubit_json(q);
        env["params"]["steps"] = n;
        if (cfg.kind == "A") {
            report = verify_A_correspondence(r.params, q, n);
        } else if (cfg.kind == "B") {
            report = verify_B_correspondence(r.params, q, n);
        } else if (cfg.kind == "reduction") {
            try {
                report = verify_type_reduction(r.params, q, n);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        } else if (cfg.kind == "two-step") {
            if (!r.angles) throw UsageError("--kind two-step needs angles, not --abcd");
            const Family family = parse_family(cfg.family);
            const double t1 = parse_angle(cfg.theta1, "--theta1"), t2 = parse_angle(cfg.theta2, "--theta2");
            env["params"]["family"] = std::string(to_string(family));
            env["params"]["theta1"] = t1;
            env["params"]["theta2"] = t2;
            report = verify_two_step(*r.angles, t1, t2, family, q, n);
        } else {
            throw UsageError("--kind must be A, B, reduction, two-step or patel");
        }
    }
    env["result"]["report"] = report_json(report);
    env["residuals"]["max_amplitude_error"] = report.max_amplitude_error;
    env["residuals"]["max_probability_error"] = report.max_probability_error;
    return report.holds() ? kSuccess : kVerificationFailure;
}

inline int cmd_factorize(const RunConfig& cfg, Json& env) {
    if (cfg.kind == "patel") {
        const PatelParams p(parse_angle(cfg.phi1, "--phi1"), parse_angle(cfg.phi2, "--phi2"));
        env["params"]["phi1"] = p.phi1();
        env["params"]["phi2"] = p.phi2();
        auto [params, report] = patel_factorize(p);
        env["result"]["U_e"] = mat2_json(pair_block(p.phi1()));
        env["result"]["U_o"] = mat2_json(pair_block(p.phi2()));
        env["result"]["abcd"] = Json::array({complex_json(params.a()), complex_json(params.b()),
                                             complex_json(params.c()), complex_json(params.d())});
        const AngleTriple t = patel_angles(p);
        env["result"]["angles"] = Json::array({t.theta(), t.phi(), t.delta()});
        env["result"]["type"] = std::string(to_string(classify(params)));
        env["residuals"]["max_error"] = report.max_error();
        return report.holds() ? kSuccess : kVerificationFailure;
    }
    if (cfg.kind != "two-step") throw UsageError("--kind must be two-step or patel");
    const Resolved r = resolve_params(cfg);
    if (!r.angles) throw UsageError("--kind two-step needs angles, not --abcd");
    const Family family = parse_family(cfg.family);
    const double t1 = parse_angle(cfg.theta1, "--theta1"), t2 = parse_angle(cfg.theta2, "--theta2");
    env["params"] = params_json(r);
    env["params"]["family"] = std::string(to_string(family));
    env["params"]["theta1"] = t1;
    env["params"]["theta2"] = t2;
    const TwoStepFactors f = two_step_factorize(*r.angles, t1, t2, family);
    env["result"]["P1"] = mat2_json(f.P1);
    env["result"]["Q1"] = mat2_json(f.Q1);
    env["result"]["P2"] = mat2_json(f.P2);
    env["result"]["Q2"] = mat2_json(f.Q2);
    env["result"]["U1"] = mat2_json(f.coin(1));
    env["result"]["U2"] = mat2_json(f.coin(2));
    const double products = product_identity_residual(f, generalized_blocks_from_qca(r.params, family));
    const double unitarity = half_coin_unitarity_defect(f);
    env["residuals"]["product_identities"] = products;
    env["residuals"]["coin_unitarity"] = unitarity;
    return std::max(products, unitarity) <= kTolerance ? kSuccess : kVerificationFailure;
}

inline int cmd_limit_compare(const RunConfig& cfg, Json& env) {
    const Resolved r = resolve_params(cfg);
    const QubitState q = resolve_qubit(cfg);
    const int n = steps_or(cfg, 500);
    if (n < 1) throw UsageError("--steps must be positive for limit-compare");
    const double tol = parse_real(cfg.tolerance);
    env["params"] = params_json(r);
    env["params"]["qubit"] = qubit_json(q);
    env["params"]["steps"] = n;
    env["params"]["tolerance"] = tol;
    const RescaledSample sample = rescaled_qca_sample(r.params, q, n);
    const double distance = kolmogorov_distance(sample);
    env["result"]["n"] = n;
    env["result"]["kolmogorov_distance"] = distance;
    env["result"]["pass"] = distance <= tol;
    env["residuals"]["total_mass"] = std::abs(sample.total_mass() - 1.0);
    return distance <= tol ? kSuccess : kVerificationFailure;
}

inline void flatten(const std::string& prefix, const Json& j, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(prefix.empty() ? k : prefix + "." + k, v, rows);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(prefix + "." + std::to_string(i), j[i], rows);
    } else if (j.is_number_float()) {
        rows.emplace_back(prefix, format_number(j.get<double>()));
    } else if (j.is_number()) {
        rows.emplace_back(prefix, std::to_string(j.get<long long>()));
    } else if (j.is_boolean()) {
        rows.emplace_back(prefix, j.get<bool>() ? "true" : "false");
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    }
}

inline std::string render_csv(const Json& env) {
    std::ostringstream os;
    const Json& result = env["result"];
    if (result.contains("distribution")) {
        os << "site,probability\n";
        for (const auto& row : result["distribution"]) {
            os << row[0].get<long long>() << ',' << format_number(row[1].get<double>()) << '\n';
        }
        return os.str();
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten("", result, rows);
    flatten("residuals", env["residuals"], rows);
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << k << ',' << v << '\n';
    return os.str();
}

} // namespace detail

inline void add_shared_options(CLI::App& sub, RunConfig& cfg, bool params, bool qubit) {
    if (params) {
        sub.add_option("--theta", cfg.theta, "Angle theta in [0, 2pi); accepts pi expressions")->capture_default_str();
        sub.add_option("--phi", cfg.phi, "Angle phi in [0, 2pi)")->capture_default_str();
        sub.add_option("--delta", cfg.delta, "Global phase angle delta in [0, 2pi)")->capture_default_str();
        sub.add_option("--abcd", cfg.abcd, "Raw tuple: re im for each of a, b, c, d (replaces the angles)")
            ->expected(8);
    }
    if (qubit) {
        sub.add_option("--qubit", cfg.qubit, "Initial coin state: 'alpha beta' (real) or 're im re im'")
            ->expected(2, 4)
            ->capture_default_str();
    }
    sub.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub.add_option("--out", cfg.out, "Write the report to this path instead of standard output");
    sub.add_flag("--timing", cfg.timing, "Record wall-clock duration in JSON output (otherwise null)");
}

/// Parses `args` (without the program name), runs the command, writes the
/// report to `out` (or --out) and diagnostics to `err`. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact simulator and verifier for 1D quantum cellular automata and coined quantum walks",
                 "qcawalk"};
    app.require_subcommand(1);

    auto* classify_cmd = app.add_subcommand("classify", "Classify a coefficient tuple and print its unitarity residuals");
    add_shared_options(*classify_cmd, cfg, true, false);
    classify_cmd->add_option("--sweep", cfg.sweep, "Also count types over an N^3 angle grid (0 = off)")->capture_default_str();

    auto* sim_qca = app.add_subcommand("simulate-qca", "Distribution x^(m:+-)(n) of the QCA");
    add_shared_options(*sim_qca, cfg, true, true);
    sim_qca->add_option("--steps", cfg.steps, "Number of steps (default 1)")->check(CLI::NonNegativeNumber);
    sim_qca->add_option("--m", cfg.origin, "Origin site m")->capture_default_str();
    sim_qca->add_option("--sign", cfg.sign, "Partner branch: + pairs m with m+1, - with m-1")->capture_default_str();

    auto* sim_qw = app.add_subcommand("simulate-qw", "Distribution of a coined walk started at the origin");
    add_shared_options(*sim_qw, cfg, true, true);
    sim_qw->add_option("--steps", cfg.steps, "Number of steps (default 1)")->check(CLI::NonNegativeNumber);
    sim_qw->add_option("--walk", cfg.walk, "plain (coin from --coin) or generalized (blocks from the QCA tuple)")
        ->check(CLI::IsMember({"plain", "generalized"}))
        ->capture_default_str();
    sim_qw->add_option("--family", cfg.family, "Walk family A or B")->capture_default_str();
    sim_qw->add_option("--coin", cfg.coin, "Plain-walk coin: re im for a', b', c', d' (default (1/sqrt2)[[i,1],[1,i]])")
        ->expected(8);

    auto* verify_cmd = app.add_subcommand("verify", "Check a correspondence; exit 1 if any error exceeds 1e-12");
    add_shared_options(*verify_cmd, cfg, true, true);
    verify_cmd->add_option("--kind", cfg.kind, "A, B, reduction, two-step or patel")->required();
    verify_cmd->add_option("--steps", cfg.steps, "Deepest step checked (default 50)")->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--family", cfg.family, "Family for two-step")->capture_default_str();
    verify_cmd->add_option("--theta1", cfg.theta1, "Two-step phase theta1")->capture_default_str();
    verify_cmd->add_option("--theta2", cfg.theta2, "Two-step phase theta2")->capture_default_str();
    verify_cmd->add_option("--phi1", cfg.phi1, "Even-pair angle (patel)")->capture_default_str();
    verify_cmd->add_option("--phi2", cfg.phi2, "Odd-pair angle (patel)")->capture_default_str();

    auto* factor_cmd = app.add_subcommand("factorize", "Print two-step or even/odd factor matrices");
    add_shared_options(*factor_cmd, cfg, true, false);
    factor_cmd->add_option("--kind", cfg.kind, "two-step or patel")->required();
    factor_cmd->add_option("--family", cfg.family, "Family for two-step")->capture_default_str();
    factor_cmd->add_option("--theta1", cfg.theta1, "Two-step phase theta1")->capture_default_str();
    factor_cmd->add_option("--theta2", cfg.theta2, "Two-step phase theta2")->capture_default_str();
    factor_cmd->add_option("--phi1", cfg.phi1, "Even-pair angle (patel)")->capture_default_str();
    factor_cmd->add_option("--phi2", cfg.phi2, "Odd-pair angle (patel)")->capture_default_str();

    auto* limit_cmd = app.add_subcommand("limit-compare", "Kolmogorov distance of X_n/n to the limit law");
    add_shared_options(*limit_cmd, cfg, true, true);
    limit_cmd->add_option("--steps", cfg.steps, "Number of steps n (default 500)")->check(CLI::NonNegativeNumber);
    limit_cmd->add_option("--tolerance", cfg.tolerance, "Pass threshold on the distance")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    for (auto* sub : app.get_subcommands()) {
        cfg.command = sub->get_name();
        for (const char* name : {"--theta", "--phi", "--delta"}) {
            if (sub->get_option_no_throw(name) && sub->count(name) > 0) cfg.angles_given = true;
        }
    }

    Json env;
    env["command"] = cfg.command;
    env["params"] = Json::object();
    env["result"] = Json::object();
    env["residuals"] = Json::object();
    const auto start = std::chrono::steady_clock::now();
    int code = kSuccess;
    try {
        if (cfg.command == "classify") code = detail::cmd_classify(cfg, env);
        else if (cfg.command == "simulate-qca") code = detail::cmd_simulate_qca(cfg, env);
        else if (cfg.command == "simulate-qw") code = detail::cmd_simulate_qw(cfg, env);
        else if (cfg.command == "verify") code = detail::cmd_verify(cfg, env);
        else if (cfg.command == "factorize") code = detail::cmd_factorize(cfg, env);
        else if (cfg.command == "limit-compare") code = detail::cmd_limit_compare(cfg, env);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    env["duration_ms"] = cfg.timing ? Json(elapsed.count()) : Json(nullptr);

    const std::string text = cfg.format == "json" ? env.dump(2) + "\n" : detail::render_csv(env);
    if (cfg.out.empty()) {
        out << text;
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.out << " for writing\n";
            return kUsageError;
        }
        file << text;
    }
    return code;
}

} // namespace qcawalk::cli
