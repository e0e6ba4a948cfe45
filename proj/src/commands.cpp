#include "thetapress/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "thetapress/classical.hpp"
#include "thetapress/errors.hpp"
#include "thetapress/harness.hpp"
#include "thetapress/measure.hpp"

namespace thetapress {

std::string format_number(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot write " + path.string());
    }
    f << content;
    if (!f) {
        throw Error("write failed for " + path.string());
    }
}

void prepare_out(const RunConfig& cfg)
{
    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    if (ec) {
        throw ConfigError("cannot create output directory " + cfg.out.string() + ": " + ec.message());
    }
}

const NdsSystem& require_system(const RunConfig& cfg)
{
    if (!cfg.system) {
        throw ConfigError("config has no `system`");
    }
    return *cfg.system;
}

std::string theta_text(Theta t) { return format_number(t.value()); }

}  // namespace

std::string render_pressure_svg(const std::vector<std::vector<PressureProfile>>& sweeps)
{
    constexpr double width = 800;
    constexpr double height = 500;
    constexpr double left = 70;
    constexpr double right = 170;
    constexpr double top = 40;
    constexpr double bottom = 60;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& sweep : sweeps) {
        for (const auto& p : sweep) {
            lo = std::min(lo, p.lower);
            hi = std::max(hi, p.upper);
        }
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-9) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto px = [&](double theta) { return left + theta * (width - left - right); };
    auto py = [&](double v) { return top + (hi - v) / (hi - lo) * (height - top - bottom); };
    auto num = [](double v) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(2) << v;
        return os.str();
    };
    static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    svg << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg << "<text x=\"" << num(left) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
        << "Pressure against theta</text>\n";
    // Axes and ticks.
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(height - bottom) << "\" x2=\"" << num(width - right)
        << "\" y2=\"" << num(height - bottom) << "\"/>\n";
    svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
        << num(height - bottom) << "\"/>\n";
    svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int k = 0; k <= 10; k += 2) {
        double t = k / 10.0;
        svg << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(height - bottom) << "\" x2=\"" << num(px(t))
            << "\" y2=\"" << num(height - bottom + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(px(t)) << "\" y=\"" << num(height - bottom + 20)
            << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
    }
    for (int k = 0; k <= 5; ++k) {
        double v = lo + (hi - lo) * k / 5.0;
        svg << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(py(v)) << "\" x2=\"" << num(left) << "\" y2=\""
            << num(py(v)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(v) + 4) << "\" text-anchor=\"end\">"
            << format_number(std::round(v * 1000) / 1000) << "</text>\n";
    }
    svg << "<text x=\"" << num((left + width - right) / 2) << "\" y=\"" << num(height - 15)
        << "\" text-anchor=\"middle\">theta</text>\n";
    svg << "</g>\n";

    for (std::size_t e = 0; e < sweeps.size(); ++e) {
        const auto& sweep = sweeps[e];
        if (sweep.empty()) {
            continue;
        }
        const char* colour = colours[e % std::size(colours)];
        for (int which = 0; which < 2; ++which) {
            svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\""
                << (which == 0 ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
            for (std::size_t i = 0; i < sweep.size(); ++i) {
                double v = which == 0 ? sweep[i].lower : sweep[i].upper;
                svg << (i ? " " : "") << num(px(sweep[i].theta.value())) << "," << num(py(v));
            }
            svg << "\"/>\n";
        }
        for (const auto& p : sweep) {
            svg << "<circle cx=\"" << num(px(p.theta.value())) << "\" cy=\"" << num(py(p.upper))
                << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
        }
        const double ly = top + 20 + 40 * static_cast<double>(e);
        const double lx = width - right + 15;
        svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
        svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 25) << "\" y2=\""
            << num(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\">upper, eps="
            << format_number(sweep.front().epsilon) << "</text>\n";
        svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly + 16) << "\" x2=\"" << num(lx + 25) << "\" y2=\""
            << num(ly + 16) << "\" stroke=\"" << colour << "\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";
        svg << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 20) << "\">lower</text>\n";
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

int cmd_pressure(const RunConfig& cfg, std::ostream& out)
{
    const auto& sys = require_system(cfg);
    auto options = cfg.profile_options();
    std::vector<std::vector<PressureProfile>> sweeps;
    for (double eps : cfg.eps_ladder) {
        sweeps.push_back(theta_sweep(sys, cfg.z, eps, cfg.theta_grid, cfg.N_lo, cfg.N_hi, options));
    }

    std::string profiles = "theta,epsilon,lower,upper\n";
    std::string ladder = "theta,epsilon,N,alpha_N,solver_status,candidates,cover_cardinality\n";
    for (const auto& sweep : sweeps) {
        for (const auto& p : sweep) {
            const auto t = theta_text(p.theta);
            const auto e = format_number(p.epsilon);
            profiles += t + "," + e + "," + format_number(p.lower) + "," + format_number(p.upper) + "\n";
            for (const auto& s : p.scales) {
                ladder += t + "," + e + "," + std::to_string(s.N) + "," + format_number(s.alpha) + "," +
                          std::string(to_string(s.status)) + "," + std::to_string(s.candidates) + "," +
                          std::to_string(s.cover_cardinality) + "\n";
            }
        }
    }
    prepare_out(cfg);
    write_file(cfg.out / "profiles.csv", profiles);
    write_file(cfg.out / "alpha_ladder.csv", ladder);
    write_file(cfg.out / "pressure_vs_theta.svg", render_pressure_svg(sweeps));

    out << std::left << std::setw(10) << "theta" << std::setw(10) << "epsilon" << std::setw(14) << "lower"
        << "upper\n";
    for (const auto& sweep : sweeps) {
        for (const auto& p : sweep) {
            out << std::setw(10) << theta_text(p.theta) << std::setw(10) << format_number(p.epsilon)
                << std::setw(14) << std::setprecision(6) << p.lower << p.upper;
            if (p.theta.is_zero()) {
                out << "  (lengths capped at " << p.cap << ")";
            }
            out << "\n";
        }
    }
    out << "wrote " << (cfg.out / "profiles.csv").string() << ", alpha_ladder.csv, pressure_vs_theta.svg\n";
    return exit_ok;
}

int cmd_classical(const RunConfig& cfg, std::ostream& out)
{
    const auto& sys = require_system(cfg);
    ClassicalOptions options;
    options.solver = cfg.solver;
    options.with_entropy = false;
    options.jobs = cfg.jobs;
    auto report = classical_pressure(sys, cfg.z, cfg.eps_ladder, cfg.N_lo, cfg.N_hi, options);
    auto sup = sup_entropy(sys, cfg.z, cfg.eps_ladder, cfg.N_lo, cfg.N_hi, cfg.solver);

    std::string csv = "kind,n,epsilon,value,log_value_over_n,witness_size\n";
    auto row = [&](const char* kind, std::size_t n, double eps, double value, std::size_t witness) {
        csv += std::string(kind) + "," + std::to_string(n) + "," + format_number(eps) + "," + format_number(value) +
               "," + format_number(std::log(value) / static_cast<double>(n)) + "," + std::to_string(witness) + "\n";
    };
    for (std::size_t i = 0; i < report.cells.size(); ++i) {
        const auto& c = report.cells[i];
        const auto& s = sup.cells[i];
        row("Q", c.n, c.epsilon, c.spanning_value, c.spanning.points.size());
        row("P", c.n, c.epsilon, c.separated_value, c.separated.points.size());
        row("sup", s.n, s.epsilon, static_cast<double>(s.spanning_count), s.spanning_count);
    }
    prepare_out(cfg);
    write_file(cfg.out / "classical.csv", csv);

    out << std::left << std::setw(10) << "epsilon" << std::setw(14) << "spanning" << std::setw(14) << "separated"
        << "sup_entropy\n";
    for (std::size_t e = 0; e < cfg.eps_ladder.size(); ++e) {
        double sup_value = -std::numeric_limits<double>::infinity();
        for (const auto& c : sup.cells) {
            if (c.epsilon == cfg.eps_ladder[e]) {
                sup_value = std::max(sup_value, std::log(static_cast<double>(c.spanning_count)) /
                                                    static_cast<double>(c.n));
            }
        }
        const auto& s = report.pressure[e];
        out << std::setw(10) << format_number(s.epsilon) << std::setw(14) << std::setprecision(6) << s.spanning
            << std::setw(14) << s.separated << sup_value << "\n";
    }
    out << "wrote " << (cfg.out / "classical.csv").string() << "\n";
    return exit_ok;
}

int cmd_measure(const RunConfig& cfg, std::ostream& out)
{
    const auto& sys = require_system(cfg);
    auto options = cfg.profile_options();
    std::string csv = "measure,theta,epsilon,support_size,lower,upper,z_lower,z_upper,inf_gap,inf_passed\n";
    std::string checks = "check,measure,theta,epsilon,passed,worst_gap,evaluated\n";
    bool all_passed = true;
    for (double eps : cfg.eps_ladder) {
        for (auto theta : cfg.theta_grid) {
            const auto t = theta_text(theta);
            const auto e = format_number(eps);
            auto pz = pressure_profile(sys, cfg.z, eps, theta, cfg.N_lo, cfg.N_hi, options);
            for (const auto& mu : cfg.measures) {
                auto pm = measure_pressure_profile(sys, mu, eps, theta, cfg.N_lo, cfg.N_hi, options);
                auto inf = variational_inf_check(sys, mu, eps, theta, cfg.N_lo, cfg.N_hi, options, 1024, 64, cfg.seed);
                all_passed = all_passed && inf.passed;
                csv += mu.name() + "," + t + "," + e + "," + std::to_string(mu.support().count()) + "," +
                       format_number(pm.lower) + "," + format_number(pm.upper) + "," + format_number(pz.lower) + "," +
                       format_number(pz.upper) + "," + format_number(inf.worst_gap) + "," +
                       (inf.passed ? "true" : "false") + "\n";
                checks += "variational_inf," + mu.name() + "," + t + "," + e + "," + (inf.passed ? "true" : "false") +
                          "," + format_number(inf.worst_gap) + "," + std::to_string(inf.evaluated) + "\n";
            }
            auto sup = variational_sup_check(sys, cfg.z, eps, theta, cfg.N_lo, cfg.N_hi, options, 4, cfg.seed);
            all_passed = all_passed && sup.passed;
            checks += "variational_sup,family," + t + "," + e + "," + (sup.passed ? "true" : "false") + "," +
                      format_number(sup.worst_gap) + "," + std::to_string(sup.evaluated) + "\n";
            for (const auto& d : sup.details) {
                spdlog::debug("theta={} eps={}: {}", t, e, d);
            }
        }
    }
    prepare_out(cfg);
    write_file(cfg.out / "measure.csv", csv);
    write_file(cfg.out / "variational.csv", checks);
    out << "variational checks " << (all_passed ? "passed" : "FAILED") << "; wrote "
        << (cfg.out / "measure.csv").string() << ", variational.csv\n";
    return all_passed ? exit_ok : exit_check_failed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out)
{
    auto result = run_suite(cfg.suite);
    using nlohmann::json;
    auto number = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json report;
    report["schema_version"] = schema_version;
    report["theta"] = theta_text(cfg.suite.params.theta);
    report["window"] = {cfg.suite.params.N_lo, cfg.suite.params.N_hi};
    report["epsilon"] = cfg.suite.params.eps;
    report["tol"] = cfg.suite.params.profile.tol;
    report["seed"] = cfg.suite.seed;
    json instances = json::array();
    for (const auto& inst : cfg.suite.battery) {
        instances.push_back(inst.name);
    }
    report["instances"] = instances;
    report["hard_failure"] = result.hard_failure;
    json checks = json::array();
    for (const auto& rep : result.reports) {
        json c;
        c["name"] = rep.name;
        c["exact"] = rep.exact;
        c["diagnostic"] = rep.diagnostic;
        c["instances"] = rep.instances;
        c["passes"] = rep.passes;
        c["failures"] = rep.failures();
        c["worst_margin"] = number(rep.worst_margin);
        json details = json::array();
        for (const auto& d : rep.details) {
            details.push_back({{"instance", d.instance},
                               {"observed", number(d.observed)},
                               {"allowed", number(d.allowed)},
                               {"passed", d.passed},
                               {"note", d.note}});
        }
        c["details"] = details;
        checks.push_back(c);
    }
    report["checks"] = checks;
    prepare_out(cfg);
    write_file(cfg.out / "verify_report.json", report.dump(2) + "\n");

    out << std::left << std::setw(28) << "check" << std::setw(7) << "kind" << std::setw(10) << "passed"
        << "worst margin\n";
    for (const auto& rep : result.reports) {
        std::ostringstream ratio;
        ratio << rep.passes << "/" << rep.instances;
        out << std::setw(28) << rep.name << std::setw(7) << (rep.exact ? "exact" : "tol") << std::setw(10)
            << ratio.str() << std::setprecision(3) << rep.worst_margin << (rep.failures() ? "  FAIL" : "") << "\n";
        for (const auto& d : rep.details) {
            if (!d.passed) {
                out << "    " << d.instance << ": observed " << d.observed << " > allowed " << d.allowed
                    << (d.note.empty() ? "" : "  [" + d.note + "]") << "\n";
            }
        }
    }
    out << (result.hard_failure ? "FAILED" : "all checks passed") << "; report in "
        << (cfg.out / "verify_report.json").string() << "\n";
    return result.hard_failure ? exit_check_failed : exit_ok;
}

int run_command(std::string_view name, const std::optional<std::filesystem::path>& config, const Overrides& overrides,
                std::ostream& out, std::ostream& err)
{
    try {
        if (name == "schema") {
            out << config_schema();
            return exit_ok;
        }
        RunConfig cfg;
        if (config) {
            cfg = load_config(*config, overrides);
        } else if (name == "verify") {
            cfg = parse_config(R"({"schema_version": 1})", ".", overrides, "defaults");
        } else {
            throw ConfigError(std::string(name) + " needs --config");
        }
        if (name == "pressure") {
            return cmd_pressure(cfg, out);
        }
        if (name == "classical") {
            return cmd_classical(cfg, out);
        }
        if (name == "measure") {
            return cmd_measure(cfg, out);
        }
        if (name == "verify") {
            return cmd_verify(cfg, out);
        }
        throw ConfigError("unknown command '" + std::string(name) + "'");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const InvalidSystem& e) {
        err << "invalid system: " << e.what() << "\n";
        return exit_config;
    } catch (const NotSemiconjugate& e) {
        err << "invalid factor map: " << e.what() << "\n";
        return exit_config;
    } catch (const InvalidInvariance& e) {
        err << "invalid subset: " << e.what() << "\n";
        return exit_config;
    } catch (const Infeasible& e) {
        err << "infeasible: " << e.what() << "\n";
        return exit_compute;
    } catch (const CandidateExplosion& e) {
        err << "candidate explosion: " << e.what() << "\n";
        return exit_compute;
    } catch (const BracketFailure& e) {
        err << "bisection failure: " << e.what() << "\n";
        return exit_compute;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_internal;
    }
}

}  // namespace thetapress
