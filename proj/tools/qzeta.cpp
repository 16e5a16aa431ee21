// qzeta command line: verify | eval | compositions | limit
//
// Exit codes: 0 = all checks passed, 1 = mathematical failure (an identity
// failed or a term cap was breached), 2 = usage error. JSON output is
// line-delimited and byte-identical across runs with the same configuration.

#include "qzeta/qzeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        out.push_back(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<qzeta::QPoint> parse_q_list(const std::string& text) {
    std::vector<qzeta::QPoint> out;
    for (const auto& tok : split_commas(text))
        out.emplace_back(qzeta::Rational::parse(tok));
    if (out.empty()) throw std::invalid_argument("--q: at least one point is required");
    return out;
}

long term_cap_from_env() {
    if (const char* v = std::getenv("QZETA_TERM_CAP")) {
        char* end = nullptr;
        const long cap = std::strtol(v, &end, 10);
        if (end == v || *end != '\0' || cap < 1)
            throw std::invalid_argument("QZETA_TERM_CAP must be a positive integer");
        return cap;
    }
    return 10000;
}

std::string seconds_str(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", s);
    return buf;
}

void emit_report(const qzeta::VerificationReport& rep, bool json) {
    if (json) {
        for (const auto& c : rep.checks) std::cout << qzeta::to_json_line(rep.identity, c) << "\n";
        return;
    }
    if (rep.all_passed()) {
        std::cout << rep.identity << ": " << rep.checks.size() << " checks, all passed ("
                  << seconds_str(rep.elapsed_seconds) << " s)\n";
        return;
    }
    std::cout << rep.identity << ": " << rep.failure_count() << " of " << rep.checks.size()
              << " checks FAILED (" << seconds_str(rep.elapsed_seconds) << " s)\n";
    for (const auto& c : rep.checks) {
        if (c.pass) continue;
        std::cout << "  FAIL";
        for (const auto& [k, v] : c.int_params) std::cout << " " << k << "=" << v;
        for (const auto& [k, v] : c.str_params) std::cout << " " << k << "=" << v;
        std::cout << " q=" << c.q.fraction_string() << "\n    lhs = " << c.lhs.fraction_string()
                  << "\n    rhs = " << c.rhs.fraction_string() << "\n";
    }
}

std::string value_json(const qzeta::BoundedValue& bv, unsigned digits) {
    nlohmann::ordered_json j;
    j["exact_partial"] = bv.partial_sum.fraction_string();
    j["decimal"] = bv.partial_sum.decimal_string(digits);
    j["tail_bound_decimal"] = bv.tail_bound.decimal_string(digits);
    j["terms"] = bv.terms_used;
    return j.dump();
}

struct VerifyArgs {
    std::string identities = "all";
    std::string q_list = "1/2,1/3,2/3,7/10";
    qzeta::GridBounds bounds;
    bool json = false;
    bool skip_reconstruction = false;
    unsigned threads = 0;
};

int run_verify(const VerifyArgs& a) {
    const auto qs = parse_q_list(a.q_list);
    std::vector<qzeta::IdentityId> ids;
    for (const auto& tok : split_commas(a.identities)) {
        if (tok == "all") {
            for (const auto& [id, name] : qzeta::identity_names()) ids.push_back(id);
        } else {
            ids.push_back(qzeta::identity_from_string(tok));
        }
    }
    const unsigned threads =
        a.threads > 0 ? a.threads : std::max(1u, std::thread::hardware_concurrency());

    bool ok = true;
    if (!a.skip_reconstruction) {
        try {
            const auto rep =
                qzeta::validate_reconstructions(qs, a.bounds.n_max < 12 ? a.bounds.n_max : 12);
            emit_report(rep, a.json);
        } catch (const qzeta::ReconstructionError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitMathFailure;
        }
    }
    std::size_t checks = 0;
    for (const auto id : ids) {
        const auto rep = qzeta::verify(id, a.bounds, qs, threads);
        emit_report(rep, a.json);
        checks += rep.checks.size();
        ok = ok && rep.all_passed();
    }
    if (!a.json)
        std::cout << (ok ? "verify: all " : "verify: FAILURES among ") << checks << " checks\n";
    return ok ? kExitPass : kExitMathFailure;
}

struct EvalArgs {
    std::string string_spec;
    std::string q;
    std::string eps = "1e-30";
    unsigned digits = 30;
    bool json = false;
    long term_cap = 10000;
};

int run_eval(const EvalArgs& a) {
    qzeta::SeriesOptions opt;
    opt.term_cap = a.term_cap;
    const qzeta::Rational eps = qzeta::Rational::parse(a.eps);
    if (!(eps.sign() > 0)) throw std::invalid_argument("--eps must be > 0");
    const auto qs = parse_q_list(a.q);
    if (qs.size() != 1) throw std::invalid_argument("eval takes exactly one q point");

    qzeta::BoundedValue bv{qzeta::Rational(1), qzeta::Rational(0), 0};
    if (!a.string_spec.empty()) {
        const auto s = qzeta::IndexString::parse_expanded(a.string_spec);
        bv = qzeta::two_one_eval(s, qs[0], eps, opt);
    }
    if (a.json) {
        std::cout << value_json(bv, a.digits) << "\n";
    } else {
        std::cout << "string " << (a.string_spec.empty() ? "(empty)" : a.string_spec) << "\n"
                  << "q      " << qs[0].value().fraction_string() << "\n"
                  << "value  " << bv.partial_sum.decimal_string(a.digits) << "\n"
                  << "tail   <= " << bv.tail_bound.decimal_string(a.digits) << "\n"
                  << "terms  " << bv.terms_used << "\n";
    }
    return kExitPass;
}

struct CompositionsArgs {
    std::string exponents;
    std::string ending = "one";
    bool json = false;
};

int run_compositions(const CompositionsArgs& a) {
    std::vector<int> exps;
    for (const auto& tok : split_commas(a.exponents)) {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("--s: bad exponent '" + tok + "'");
        exps.push_back(v);
    }
    qzeta::IndexString s = a.ending == "one" ? qzeta::IndexString::ends_with_one(exps)
                         : a.ending == "two" ? qzeta::IndexString::ends_with_two(exps)
                                             : throw std::invalid_argument("--ending must be one|two");

    const auto join = [](const std::vector<int>& v) {
        std::string out;
        for (int x : v) {
            if (!out.empty()) out += ',';
            out += std::to_string(x);
        }
        return out;
    };
    for (const auto& c : qzeta::enumerate_compositions(s)) {
        if (a.json) {
            nlohmann::ordered_json j;
            j["mask"] = c.mask_string();
            j["p"] = c.p;
            j["p_tilde"] = c.p_tilde;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "mask=" << c.mask_string() << " p=" << join(c.p)
                      << " p~=" << join(c.p_tilde) << "\n";
        }
    }
    return kExitPass;
}

struct LimitArgs {
    std::string string_spec;
    std::string q;
    std::string eps = "1e-12";
    std::string target_eps = "1e-15";
    unsigned digits = 20;
    bool json = false;
    long term_cap = 10000;
};

int run_limit(const LimitArgs& a) {
    const auto s = qzeta::IndexString::parse_expanded(a.string_spec);
    const auto qs = parse_q_list(a.q);
    const qzeta::Rational eps = qzeta::Rational::parse(a.eps);
    const qzeta::Rational target_eps = qzeta::Rational::parse(a.target_eps);
    if (!(eps.sign() > 0) || !(target_eps.sign() > 0))
        throw std::invalid_argument("--eps and --target-eps must be > 0");
    qzeta::SeriesOptions opt;
    opt.term_cap = a.term_cap;

    const auto points = qzeta::limit_probe(s, qs, eps, target_eps, opt);
    for (const auto& pt : points) {
        if (a.json) {
            nlohmann::ordered_json j;
            j["q"] = pt.q.fraction_string();
            j["value"] = nlohmann::ordered_json::parse(value_json(pt.value, a.digits));
            j["target_decimal"] = pt.target.decimal_string(a.digits);
            j["distance_decimal"] = pt.distance.decimal_string(a.digits);
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "q=" << pt.q.fraction_string()
                      << " value=" << pt.value.partial_sum.decimal_string(a.digits)
                      << " target=" << pt.target.decimal_string(a.digits)
                      << " distance=" << pt.distance.decimal_string(a.digits) << "\n";
        }
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-analogue multiple harmonic sums, identity verification, and two-one series"};
    app.set_config("--config");
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "verify catalog identities over parameter grids");
    verify->add_option("--identity", va.identities, "identity ids, comma separated, or 'all'");
    verify->add_option("--q", va.q_list, "q points as exact rationals, comma separated");
    verify->add_option("--n-max", va.bounds.n_max, "upper n bound");
    verify->add_option("--a-max", va.bounds.a_max, "upper bound for {2}^a prefixes");
    verify->add_option("--b-max", va.bounds.b_max, "upper bound for trailing {2}^b runs");
    verify->add_option("--k-max", va.bounds.k_max, "certificate grid bound");
    verify->add_option("--m-max", va.bounds.m_max, "maximum number of 1s in string grids");
    verify->add_option("--s-sum-max", va.bounds.s_sum_max, "maximum total string exponent");
    verify->add_option("--threads", va.threads, "worker threads (default: hardware)");
    verify->add_flag("--json", va.json, "line-delimited JSON reports");
    verify->add_flag("--skip-reconstruction", va.skip_reconstruction,
                     "skip the reconstruction gate");

    EvalArgs ea;
    ea.term_cap = -1;  // resolved after parsing so the env var is read lazily
    auto* eval = app.add_subcommand("eval", "evaluate a two-one q-zeta star series");
    eval->add_option("--string", ea.string_spec, "expanded two-one string, e.g. 2,2,1")
        ->required();
    eval->add_option("--q", ea.q, "evaluation point, exact rational in (0,1)")->required();
    eval->add_option("--eps", ea.eps, "tail bound target");
    eval->add_option("--digits", ea.digits, "decimal digits printed")->check(CLI::PositiveNumber);
    eval->add_option("--term-cap", ea.term_cap, "series term cap");
    eval->add_flag("--json", ea.json, "JSON output");

    CompositionsArgs ca;
    auto* comps = app.add_subcommand("compositions", "enumerate comma/plus composition strings");
    comps->add_option("--s", ca.exponents, "exponent list s_1,...,s_m")->required();
    comps->add_option("--ending", ca.ending, "one | two");
    comps->add_flag("--json", ca.json, "JSON output");

    LimitArgs la;
    la.term_cap = -1;
    auto* limit = app.add_subcommand("limit", "probe the q -> 1 limit against a classical target");
    limit->add_option("--string", la.string_spec, "expanded two-one string")->required();
    limit->add_option("--q", la.q, "q points, comma separated")->required();
    limit->add_option("--eps", la.eps, "per-value tail bound target");
    limit->add_option("--target-eps", la.target_eps, "classical target accuracy");
    limit->add_option("--digits", la.digits, "decimal digits printed")->check(CLI::PositiveNumber);
    limit->add_option("--term-cap", la.term_cap, "series term cap");
    limit->add_flag("--json", la.json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return kExitPass;
        }
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return run_verify(va);
        if (eval->parsed()) {
            if (ea.term_cap < 0) ea.term_cap = term_cap_from_env();
            return run_eval(ea);
        }
        if (comps->parsed()) return run_compositions(ca);
        if (limit->parsed()) {
            if (la.term_cap < 0) la.term_cap = term_cap_from_env();
            return run_limit(la);
        }
    } catch (const qzeta::TermCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    }
    return kExitUsage;
}
