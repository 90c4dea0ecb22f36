// thetakit: evaluate Siegel theta functions and verify theta identities.
//
// Exit codes: 0 success, 1 a check failed (or an evaluation failed),
// 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "thetakit/campaign.h"
#include "thetakit/fourier.h"
#include "thetakit/halphen.h"
#include "thetakit/theta.h"

using namespace thetakit;
using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// "1.5", "2i", "-0.5+1i", "0-2.5i"
cplx parse_complex(const std::string& text) {
    const char* s = text.c_str();
    char* end = nullptr;
    const double first = std::strtod(s, &end);
    if (end == s) {
        if (text == "i" || text == "+i") return {0, 1};
        if (text == "-i") return {0, -1};
        throw UsageError("cannot parse complex number '" + text + "'");
    }
    if (*end == '\0') return {first, 0};
    if (*end == 'i' && end[1] == '\0') return {0, first};
    const char* rest = end;
    double second = 0;
    if ((*rest == '+' || *rest == '-') && rest[1] == 'i' && rest[2] == '\0') {
        second = *rest == '-' ? -1 : 1;
    } else {
        second = std::strtod(rest, &end);
        if (end == rest || *end != 'i' || end[1] != '\0') throw UsageError("cannot parse complex number '" + text + "'");
    }
    return {first, second};
}

CVector parse_vector(const std::string& text, int genus) {
    CVector v = CVector::Zero(genus);
    if (text.empty()) return v;
    std::stringstream ss(text);
    std::string item;
    int k = 0;
    while (std::getline(ss, item, ',')) {
        if (k >= genus) throw UsageError("--z has more than " + std::to_string(genus) + " entries");
        v(k++) = parse_complex(item);
    }
    if (k != genus) throw UsageError("--z needs " + std::to_string(genus) + " comma-separated entries");
    return v;
}

void write_json(const std::string& path, const json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

/// --tau takes inline JSON or a path to a JSON file.
SiegelPoint load_tau(const std::string& tau_arg, const std::string& scalar_arg, int genus) {
    if (!tau_arg.empty() && !scalar_arg.empty()) throw UsageError("give either --tau or --scalar-tau, not both");
    if (!scalar_arg.empty()) return SiegelPoint::scalar(genus, parse_complex(scalar_arg));
    if (tau_arg.empty()) return SiegelPoint::scalar(genus, kI);
    json j;
    const auto first = tau_arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && tau_arg[first] == '{') {
        try {
            j = json::parse(tau_arg);
        } catch (const json::parse_error& e) {
            throw UsageError(std::string("--tau: ") + e.what());
        }
    } else {
        j = read_json(tau_arg);
    }
    try {
        auto tau = siegel_point_from_json(j);
        if (tau.genus() != genus) throw UsageError("--tau has genus " + std::to_string(tau.genus()));
        return tau;
    } catch (const json::exception& e) {
        throw UsageError(std::string("--tau: ") + e.what());
    }
}

Characteristic load_char(const std::string& text, int genus) {
    try {
        return Characteristic::parse(text, genus);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void print_checks(const std::vector<IdentityCheck>& checks) {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back(to_json(c));
    std::cout << render_table(arr);
}

struct Options {
    // shared
    int genus = 0;
    std::uint64_t seed = 7;
    int samples = 20;
    double eps = kDefaultEps;
    double tol = 0;
    int workers = default_workers();
    std::string json_path;
    // eval / fourier
    std::string characteristic;
    std::string tau;
    std::string scalar_tau;
    std::string z;
    int order = -1;
    // verify
    std::string identity;
    // formal
    std::string formal = "all";
    // halphen
    std::string from = "0+1i";
    std::string to = "0+2i";
    int steps = 10000;
    // report
    std::string input;
};

int cmd_eval(const Options& o) {
    if (o.genus < 1 || o.genus > kMaxGenus) throw UsageError("--genus must be 1, 2 or 3");
    const auto a = load_char(o.characteristic, o.genus);
    const auto tau = load_tau(o.tau, o.scalar_tau, o.genus);
    const auto z = parse_vector(o.z, o.genus);
    const auto j = to_json(theta_jet(a, z, tau, o.eps));
    std::cout << j.dump(2) << '\n';
    write_json(o.json_path, j);
    return 0;
}

RunConfig run_config(const Options& o, std::vector<std::string> identities) {
    RunConfig cfg;
    if (o.genus != 0) cfg.genus = o.genus;
    cfg.seed = o.seed;
    cfg.samples = o.samples;
    cfg.eps = o.eps;
    if (o.tol != 0) cfg.tol = o.tol;
    cfg.identities = std::move(identities);
    cfg.workers = o.workers;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

int cmd_verify(const Options& o) {
    const auto cfg = run_config(o, {o.identity});
    try {
        select_jobs(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto report = run_campaign(cfg);
    json arr = json::array();
    for (const auto& c : report.checks) arr.push_back(to_json(c));
    std::cout << render_table(arr);
    std::cout << report.checks.size() << " checks, " << (report.passed() ? "all passed" : "FAILURES") << '\n';
    write_json(o.json_path, arr);
    return report.passed() ? 0 : 1;
}

int cmd_formal(const Options& o) {
    std::vector<FormalCheck> results;
    const auto& which = o.formal;
    if (which == "chi" || which == "all") results.push_back(verify_chi_identity());
    if (which == "phi" || which == "all") results.push_back(verify_phi_identity());
    if (which == "gopel-sum" || which == "all") results.push_back(verify_gopel_sum_lemma());
    if (results.empty()) throw UsageError("formal expects chi, phi, gopel-sum or all");
    json arr = json::array();
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.holds ? "PASS" : "FAIL") << "  " << r.name << "  residual_terms=" << r.residual_terms << '\n';
        for (const auto& [label, n] : r.term_counts) std::cout << "      " << label << ": " << n << " terms\n";
        for (const auto& note : r.notes) std::cout << "      note: " << note << '\n';
        ok = ok && r.holds;
        arr.push_back(to_json(r));
    }
    write_json(o.json_path, arr);
    return ok ? 0 : 1;
}

int cmd_halphen_integrate(const Options& o) {
    if (o.steps < 1) throw UsageError("--steps must be positive");
    const cplx from = parse_complex(o.from), to = parse_complex(o.to);
    const auto end = integrate(theta_seeded_state(from, o.eps), to, o.steps);
    const auto exact = theta_seeded_state(to, o.eps);
    auto pair = [](cplx v) { return json::array({v.real(), v.imag()}); };
    const double err = std::max({std::abs(end.psi10 - exact.psi10), std::abs(end.psi00 - exact.psi00),
                                 std::abs(end.psi01 - exact.psi01)});
    const json j = {{"from", pair(from)},
                    {"to", pair(to)},
                    {"steps", o.steps},
                    {"integrated", {{"psi_10", pair(end.psi10)}, {"psi_00", pair(end.psi00)}, {"psi_01", pair(end.psi01)}}},
                    {"theta_series", {{"psi_10", pair(exact.psi10)}, {"psi_00", pair(exact.psi00)}, {"psi_01", pair(exact.psi01)}}},
                    {"max_abs_error", err}};
    std::cout << j.dump(2) << '\n';
    write_json(o.json_path, j);
    return 0;
}

int cmd_halphen_check(const Options& o) {
    Options g1 = o;
    g1.genus = 1;
    const auto cfg = run_config(g1, {"halphen_theta4", "halphen_system", "halphen_rk4", "legendre_lambda"});
    const auto report = run_campaign(cfg);
    print_checks(report.checks);
    json arr = json::array();
    for (const auto& c : report.checks) arr.push_back(to_json(c));
    write_json(o.json_path, arr);
    return report.passed() ? 0 : 1;
}

int cmd_fourier(const Options& o) {
    if (o.genus < 1 || o.genus > 2) throw UsageError("fourier supports genus 1 and 2");
    const auto a = load_char(o.characteristic, o.genus);
    const int order = o.order < 0 ? (o.genus == 1 ? 20 : 8) : o.order;
    if (order > max_qexp_order(o.genus))
        throw UsageError("--order at most " + std::to_string(max_qexp_order(o.genus)) + " for this genus");
    const auto q = thetanull_qexp(a, order);
    json arr = json::array();
    for (const auto& [key, c] : q.coefficients()) arr.push_back({{"exponent", key}, {"coeff", c.get_str()}});
    std::cout << arr.dump(2) << '\n';
    write_json(o.json_path, arr);
    return 0;
}

int cmd_gopel(const Options& o) {
    if (o.genus != 2) throw UsageError("Goepel systems are listed for genus 2 only");
    json arr = json::array();
    for (const auto& g : gopel_systems(2)) {
        json members = json::array();
        std::string line;
        for (const auto& a : g.members()) {
            members.push_back(digit_encode(a));
            line += (line.empty() ? "" : " ") + digit_encode(a);
        }
        std::cout << line << '\n';
        arr.push_back(members);
    }
    write_json(o.json_path, arr);
    return 0;
}

int cmd_report(const Options& o) {
    if (!o.input.empty()) {
        std::cout << render_table(read_json(o.input));
        return 0;
    }
    auto cfg = run_config(o, {"all"});
    cfg.include_formal = true;
    const auto report = run_campaign(cfg);
    const auto j = to_json(report);
    std::cout << render_table(j);
    write_json(o.json_path, j);
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siegel theta functions with characteristics: evaluation and identity checks"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    Options o;
    int (*action)(const Options&) = nullptr;

    auto add_json = [&](CLI::App* c) { c->add_option("--json", o.json_path, "Also write the JSON output to this path"); };
    auto add_plan = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "Sample seed");
        c->add_option("--samples", o.samples, "Sample points per check");
        c->add_option("--eps", o.eps, "Truncation error target per series");
        c->add_option("--tol", o.tol, "Relative tolerance (default: per family)");
        c->add_option("--workers", o.workers, "Worker threads (default: THETAKIT_WORKERS or hardware)");
    };

    auto* eval = app.add_subcommand("eval", "Value, z-gradient and z-Hessian of one theta function");
    eval->add_option("--char", o.characteristic, "Characteristic, e.g. (1,0;0,1) or 20 in genus 2")->required();
    eval->add_option("--genus", o.genus, "Genus (1..3)")->required();
    eval->add_option("--tau", o.tau, "tau as JSON {\"genus\":g,\"tau\":[[re,im],...]} or a path to such a file");
    eval->add_option("--scalar-tau", o.scalar_tau, "Use tau = t * identity, e.g. 0+1i");
    eval->add_option("--z", o.z, "Comma-separated complex entries of z (default 0)");
    eval->add_option("--eps", o.eps, "Truncation error target");
    add_json(eval);
    eval->callback([&] { action = cmd_eval; });

    auto* verify = app.add_subcommand("verify", "Check identity families at seeded sample points");
    verify->add_option("identity", o.identity, "Family name or 'all'")->required();
    verify->add_option("--genus", o.genus, "Genus (default: every supported genus)");
    add_plan(verify);
    add_json(verify);
    verify->callback([&] { action = cmd_verify; });

    auto* formal = app.add_subcommand("formal", "Exact polynomial identities");
    formal->add_option("which", o.formal, "chi, phi, gopel-sum or all");
    add_json(formal);
    formal->callback([&] { action = cmd_formal; });

    auto* halphen = app.add_subcommand("halphen", "Genus-one Halphen system");
    halphen->require_subcommand(1);
    auto* integ = halphen->add_subcommand("integrate", "RK4 from theta-seeded psi values");
    integ->add_option("--from", o.from, "Start tau");
    integ->add_option("--to", o.to, "End tau");
    integ->add_option("--steps", o.steps, "RK4 steps");
    integ->add_option("--eps", o.eps, "Truncation error target");
    add_json(integ);
    integ->callback([&] { action = cmd_halphen_integrate; });
    auto* hcheck = halphen->add_subcommand("check", "Run the genus-one families");
    add_plan(hcheck);
    add_json(hcheck);
    hcheck->callback([&] { action = cmd_halphen_check; });

    auto* fourier = app.add_subcommand("fourier", "Exact q-expansion coefficients of a thetanull");
    fourier->add_option("--char", o.characteristic, "Characteristic")->required();
    fourier->add_option("--genus", o.genus, "Genus (1 or 2)")->required();
    fourier->add_option("--order", o.order, "Keep terms with |m|^2 <= order");
    add_json(fourier);
    fourier->callback([&] { action = cmd_fourier; });

    auto* gopel = app.add_subcommand("gopel", "List the Goepel systems");
    gopel->add_option("--genus", o.genus, "Genus (2)")->required();
    add_json(gopel);
    gopel->callback([&] { action = cmd_gopel; });

    auto* report = app.add_subcommand("report", "Full campaign report, or render a saved one");
    report->add_option("--input", o.input, "Render this saved JSON instead of running");
    report->add_option("--genus", o.genus, "Genus (default: every supported genus)");
    add_plan(report);
    add_json(report);
    report->callback([&] { action = cmd_report; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return action ? action(o) : 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
