#include "logpot/jobs.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "logpot/inequalities.hpp"
#include "logpot/operators.hpp"
#include "logpot/perturbation.hpp"

namespace logpot {

namespace {

using nlohmann::json;

std::vector<double> number_list(const json& node, const std::string& key) {
    std::vector<double> out;
    for (const auto& v : node.at(key)) {
        if (!v.is_number())
            throw JobError("field '" + key + "' must be a list of numbers");
        const double x = v.get<double>();
        if (!std::isfinite(x))
            throw JobError("field '" + key + "' contains a non-finite number");
        out.push_back(x);
    }
    return out;
}

MeasureSpec measure_spec(const json& node, const std::string& key) {
    const json& m = node.at(key);
    MeasureSpec spec;
    if (!m.contains("support") || !m.at("support").is_array() || m.at("support").size() != 2)
        throw JobError("measure '" + key + "' needs a [center, scale] support");
    spec.center = m.at("support").at(0).get<double>();
    spec.scale = m.at("support").at(1).get<double>();
    if (!std::isfinite(spec.center) || !(spec.scale > 0.0))
        throw JobError("measure '" + key + "' has an invalid support");
    if (m.contains("base")) {
        spec.base = m.at("base").get<std::string>();
        if (spec.base != "semicircle" && spec.base != "arcsine")
            throw JobError("measure '" + key + "' base must be semicircle or arcsine");
    }
    spec.coeffs = number_list(m, "coeffs");
    return spec;
}

DensityMeasure to_measure(const MeasureSpec& spec) {
    const Support s = make_support(spec.center, spec.scale);
    const MeasureBase base = spec.base == "arcsine" ? MeasureBase::Arcsine : MeasureBase::Semicircle;
    return DensityMeasure{MeasureKind{base, s}, ChebSeries(s, spec.coeffs)};
}

json measure_json(const MeasureSpec& spec) {
    return json{{"base", spec.base}, {"support", {spec.center, spec.scale}}, {"coeffs", spec.coeffs}};
}

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    out << header << "\n";
    char buf[32];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
    write_text(path, out.str());
}

json inputs_echo(const JobSpec& spec) {
    json in{{"command", spec.command}};
    if (!spec.potential.empty())
        in["potential"] = spec.potential;
    if (!spec.f.empty())
        in["f"] = spec.f;
    if (!spec.g.empty())
        in["g"] = spec.g;
    if (spec.nu)
        in["nu"] = measure_json(*spec.nu);
    if (spec.weight)
        in["w"] = measure_json(*spec.weight);
    in["rho"] = spec.rho;
    in["kind"] = spec.kind;
    in["K"] = spec.truncation;
    in["tol"] = spec.tol;
    in["grid"] = spec.grid;
    in["t"] = spec.step;
    in["threads"] = spec.threads;
    in["gas"] = json{{"n", spec.gas.n},
                     {"sweeps", spec.gas.sweeps},
                     {"burn_in", spec.gas.burn_in},
                     {"step", spec.gas.step},
                     {"seed", spec.gas.seed}};
    return in;
}

json solution_json(const EquilibriumSolution& sol) {
    return json{{"b", sol.support.center},
                {"c", sol.support.scale},
                {"positivity_margin", sol.positivity_margin},
                {"residuals", {sol.residuals[0], sol.residuals[1]}},
                {"density_coeffs", sol.w.coeffs()}};
}

void emit_density_tables(const EquilibriumSolution& sol, int grid, const std::filesystem::path& dir) {
    const DensityMeasure mu = sol.measure();
    const Support s = sol.support;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i <= grid; ++i) {
        const double theta = 3.14159265358979323846 * i / grid;
        const double x = s.center - 2.0 * s.scale * std::cos(theta);
        const double weight = std::sqrt(std::max(4.0 * s.scale * s.scale - (x - s.center) * (x - s.center), 0.0)) /
                              (2.0 * 3.14159265358979323846 * s.scale * s.scale);
        rows.push_back({x, sol.w(x) * weight, cdf(mu, x)});
    }
    write_csv(dir / "density.csv", "x,density,cdf", rows);

    rows.clear();
    for (int i = 1; i < grid; ++i) {
        const double p = static_cast<double>(i) / grid;
        rows.push_back({p, quantile(mu, p)});
    }
    write_csv(dir / "quantiles.csv", "p,quantile", rows);
}

int run_checked(const JobSpec& spec, std::ostream& log, json& report,
                const std::filesystem::path& dir);

}  // namespace

JobSpec parse_job(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw JobError(std::string("invalid job document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("command") || !doc.at("command").is_string())
        throw JobError("job document needs a 'command' string");

    JobSpec spec;
    try {
        spec.command = doc.at("command").get<std::string>();
        const bool needs_potential = spec.command != "selftest" && !(spec.command == "poincare" && doc.contains("w"));
        if (doc.contains("potential"))
            spec.potential = number_list(doc, "potential");
        else if (needs_potential)
            throw JobError("command '" + spec.command + "' needs a 'potential' list");
        if (doc.contains("f"))
            spec.f = number_list(doc, "f");
        if (doc.contains("g"))
            spec.g = number_list(doc, "g");
        if (doc.contains("nu"))
            spec.nu = measure_spec(doc, "nu");
        if (doc.contains("w"))
            spec.weight = measure_spec(doc, "w");
        if (doc.contains("rho"))
            spec.rho = doc.at("rho").get<double>();
        if (doc.contains("kind"))
            spec.kind = doc.at("kind").get<std::string>();
        if (doc.contains("K"))
            spec.truncation = doc.at("K").get<int>();
        if (doc.contains("tol"))
            spec.tol = doc.at("tol").get<double>();
        if (doc.contains("grid"))
            spec.grid = doc.at("grid").get<int>();
        if (doc.contains("t"))
            spec.step = doc.at("t").get<double>();
        if (doc.contains("out"))
            spec.out_dir = doc.at("out").get<std::string>();
        if (doc.contains("gas")) {
            const json& gas = doc.at("gas");
            if (gas.contains("n"))
                spec.gas.n = gas.at("n").get<int>();
            if (gas.contains("sweeps"))
                spec.gas.sweeps = gas.at("sweeps").get<long long>();
            if (gas.contains("burn_in"))
                spec.gas.burn_in = gas.at("burn_in").get<long long>();
            if (gas.contains("step"))
                spec.gas.step = gas.at("step").get<double>();
            if (gas.contains("seed"))
                spec.gas.seed = gas.at("seed").get<std::uint64_t>();
        }
    } catch (const json::exception& e) {
        throw JobError(std::string("invalid job field: ") + e.what());
    }

    static const char* known[] = {"solve", "energy", "poincare", "deficit", "perturb", "sample", "selftest"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return spec.command == k; }) == std::end(known))
        throw JobError("unknown command '" + spec.command + "'");
    if (spec.command == "deficit" && !spec.nu)
        throw JobError("command 'deficit' needs a test measure 'nu'");
    if (spec.command == "perturb" && spec.f.empty() && spec.g.empty())
        throw JobError("command 'perturb' needs perturbation fields 'f' and/or 'g'");
    if (!(spec.tol > 0.0) || !std::isfinite(spec.rho) || spec.grid < 2 || spec.truncation < 1)
        throw JobError("numeric knobs out of range");
    if (spec.kind != "transport" && spec.kind != "lsi" && spec.kind != "hwi")
        throw JobError("deficit kind must be transport, lsi, or hwi");
    if (spec.gas.n < 2 || spec.gas.burn_in < 0 || spec.gas.sweeps <= spec.gas.burn_in ||
        !(spec.gas.step > 0.0))
        throw JobError("gas configuration out of range");
    return spec;
}

JobSpec load_job(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw JobError("cannot open job file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_job(buf.str());
}

namespace {

int run_checked(const JobSpec& spec, std::ostream& log, json& report,
                const std::filesystem::path& dir) {
    const Potential V(spec.potential);
    const SolveOptions opts{spec.tol, 50};
    json results;

    if (spec.command == "selftest") {
        std::ostringstream capture;
        const int failures = selftest(capture);
        log << capture.str();
        results["failures"] = failures;
        results["log"] = capture.str();
        report["results"] = results;
        return failures == 0 ? 0 : 4;
    }

    if (spec.command == "solve" || spec.command == "energy") {
        const EquilibriumSolution sol = solve_equilibrium(V, opts);
        results["solution"] = solution_json(sol);
        results["energy"] = {{"variational", energy(V, sol, EnergyRoute::Variational)},
                             {"spectral", energy(V, sol, EnergyRoute::Spectral)},
                             {"quadrature", energy(V, sol, EnergyRoute::Quadrature)}};
        const double spread = std::max(std::abs(results["energy"]["variational"].get<double>() -
                                                results["energy"]["spectral"].get<double>()),
                                       std::abs(results["energy"]["variational"].get<double>() -
                                                results["energy"]["quadrature"].get<double>()));
        results["energy"]["route_spread"] = spread;
        if (spread > 1e-6)
            log << "warning: energy routes disagree by " << spread << "\n";
        if (spec.command == "solve") {
            const VariationalReport vr = verify_variational(V, sol, spec.grid);
            results["variational_residuals"] = {{"equality", vr.equality_residual},
                                                {"exterior_violation", vr.exterior_violation},
                                                {"hilbert", vr.hilbert_residual}};
            emit_density_tables(sol, spec.grid, dir);
        }
    } else if (spec.command == "poincare") {
        ChebSeries w = ChebSeries::constant(Support{0.0, 1.0}, 1.0);
        Support s{0.0, 1.0};
        if (spec.weight) {
            s = make_support(spec.weight->center, spec.weight->scale);
            w = ChebSeries(s, spec.weight->coeffs);
        } else {
            const EquilibriumSolution sol = solve_equilibrium(V, opts);
            s = sol.support;
            w = sol.w;
            results["solution"] = solution_json(sol);
        }
        const PoincareReport pr = poincare_constant(w, s, spec.truncation);
        results["poincare"] = {{"rho_p", pr.rho_p},
                               {"rho_p2", pr.rho_p2},
                               {"rho_p4", pr.rho_p4},
                               {"K", pr.truncation},
                               {"cross_form_spread", pr.cross_form_spread}};
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < pr.eigen_profile.size(); ++i)
            rows.push_back({static_cast<double>(i + 1), pr.eigen_profile[i] * 2.0 * static_cast<double>(i + 1)});
        write_csv(dir / "spectrum.csv", "n,lambda_n", rows);
    } else if (spec.command == "deficit") {
        const DensityMeasure nu = to_measure(*spec.nu);
        const DeficitKind kind = spec.kind == "transport" ? DeficitKind::Transport
                                 : spec.kind == "lsi"     ? DeficitKind::LSI
                                                          : DeficitKind::HWI;
        const DeficitReport dr = deficit(V, nu, spec.rho, kind);
        results["deficit"] = {{"kind", spec.kind}, {"rho", spec.rho}, {"lhs", dr.lhs}, {"rhs", dr.rhs}, {"deficit", dr.deficit}};
    } else if (spec.command == "perturb") {
        const Potential f(spec.f.empty() ? std::vector<double>{0.0} : spec.f);
        const Potential g(spec.g.empty() ? std::vector<double>{0.0} : spec.g);
        const FiniteDifferenceReport fd = finite_difference_check(V, f, g, spec.step);
        results["expansion"] = {{"e0", fd.expansion.e0}, {"a1", fd.expansion.a1}, {"a2", fd.expansion.a2}};
        results["finite_difference"] = {{"t", fd.step},
                                        {"a1_fd", fd.a1_fd},
                                        {"a1_fd_half", fd.a1_fd_half},
                                        {"a1_richardson", fd.a1_richardson},
                                        {"a2_fd", fd.a2_fd},
                                        {"a2_fd_half", fd.a2_fd_half},
                                        {"a2_richardson", fd.a2_richardson},
                                        {"a1_error", fd.a1_error},
                                        {"a2_error", fd.a2_error}};
    } else if (spec.command == "sample") {
        const EquilibriumSolution sol = solve_equilibrium(V, opts);
        const GasResult gas = sample_gas(V, spec.gas);
        results["sample"] = {{"acceptance_rate", gas.acceptance_rate},
                             {"step_well_tuned", gas.step_well_tuned},
                             {"ks_distance", ks_distance(gas.positions, sol)},
                             {"n", spec.gas.n},
                             {"seed", spec.gas.seed}};
        if (!gas.step_well_tuned)
            log << "warning: acceptance rate " << gas.acceptance_rate << " outside (0.1, 0.9); retune the step\n";
        write_positions_csv((dir / "positions.csv").string(), gas.positions);
    }
    report["results"] = results;
    return 0;
}

}  // namespace

int run_job(const JobSpec& spec, std::ostream& log) {
    json report;
    report["version"] = kVersion;
    report["inputs"] = inputs_echo(spec);
    report["timestamp"] = timestamp_utc();

    const std::filesystem::path dir(spec.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);

    int code = 0;
    try {
        code = run_checked(spec, log, report, dir);
    } catch (const std::exception& e) {
        report["error"] = e.what();
        log << "error: " << e.what() << "\n";
        code = 3;
    }
    report["exit_code"] = code;
    write_text(dir / "report.json", report.dump(2) + "\n");
    return code;
}

}  // namespace logpot
