// Command-line front end: sieve generation, spline/inverse evaluation,
// coefficient tables, triplet census, pi/li/R comparison, variance windows,
// figure datasets and the Diophantine solver.
//
// Exit codes: 0 success, 1 domain/config error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "primespline/analysis.hpp"
#include "primespline/asymptotics.hpp"
#include "primespline/cubic_spline.hpp"
#include "primespline/dioph_solver.hpp"
#include "primespline/inversion.hpp"
#include "primespline/prime_table.hpp"
#include "primespline/quad_spline.hpp"

using nlohmann::json;
using namespace primespline;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

struct GlobalOptions {
    std::int64_t limit = 1000000;
    bool limit_given = false;
    std::string primes_file;
    std::string spline = "quad";

    std::shared_ptr<const PrimeTable> table() const {
        if (!primes_file.empty())
            return std::make_shared<const PrimeTable>(PrimeTable::load(primes_file));
        if (!limit_given) {
            if (const char* env = std::getenv("PRIMESPLINE_PRIMES"); env && *env)
                return std::make_shared<const PrimeTable>(PrimeTable::load(env));
        }
        return std::make_shared<const PrimeTable>(PrimeTable::sieve(limit));
    }
    SplineKind kind() const {
        return spline == "cubic" ? SplineKind::cubic : SplineKind::quad;
    }
};

struct Grid {
    double from = 0, to = 0, step = 0;
};

Grid parse_grid(const std::string& s) {
    Grid g;
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> g.from >> c1 >> g.to >> c2 >> g.step) || c1 != ':' || c2 != ':' ||
        !(g.step > 0))
        throw std::runtime_error("bad grid spec '" + s + "' (want A:B:STEP)");
    return g;
}

int run_sieve(std::int64_t limit, const std::string& out_path) {
    const auto t = PrimeTable::sieve(limit);
    Output out;
    out.open(out_path);
    for (std::int64_t i = 1; i <= t.size(); ++i) {
        out.stream() << t.prime(i);
        out.stream() << (i % 6 == 0 || i == t.size() ? '\n' : ' ');
    }
    return 0;
}

int run_eval(const GlobalOptions& g, const std::string& fn, std::optional<double> x,
             const std::string& grid_spec, bool csv, const std::string& backend,
             const std::string& y0, bool trace, const std::string& out_path) {
    if (g.kind() == SplineKind::cubic && (fn == "pinv" || fn == "dpinv") && backend != "newton")
        throw std::domain_error(
            "the cubic spline has no closed-form inverse; use --backend newton");

    const PrimeFunction p(g.table(), g.kind());
    NewtonConfig cfg;
    if (y0 == "xlnx") cfg.start = StartValue::x_over_lnx;
    if (y0 == "R") cfg.start = StartValue::riemann_r;

    auto newton = [&](double v) {
        auto [yy, tr] = p.inverse_newton(v, cfg);
        if (!tr.converged) throw std::runtime_error("newton inversion failed at x = " + fmt(v));
        return yy;
    };
    auto evaluate = [&](double v) -> double {
        if (fn == "p") return p.value(v);
        if (fn == "dp") return p.deriv(v);
        if (fn == "pinv") return backend == "newton" ? newton(v) : p.inverse(v);
        if (backend == "newton") return 1.0 / p.deriv(newton(v));
        return p.inverse_deriv(v);
    };

    Output out;
    out.open(out_path);
    if (trace) {
        if (!x) throw std::runtime_error("--trace needs a single --x");
        auto [yy, tr] = p.inverse_newton(*x, cfg);
        out.stream() << "k,y,residual,eps\n";
        for (std::size_t k = 0; k < tr.iterations.size(); ++k) {
            const auto& it = tr.iterations[k];
            out.stream() << k << ',' << fmt(it.y) << ',' << fmt(it.residual) << ','
                         << fmt(it.eps) << '\n';
        }
        if (!tr.converged) throw std::runtime_error("newton inversion failed at x = " + fmt(*x));
        return 0;
    }
    if (x) {
        if (csv)
            out.stream() << "x," << fn << '\n' << fmt(*x) << ',' << fmt(evaluate(*x)) << '\n';
        else
            out.stream() << fmt(evaluate(*x)) << '\n';
        return 0;
    }
    const Grid grid = parse_grid(grid_spec);
    out.stream() << "x," << fn << '\n';
    for (double v = grid.from; v <= grid.to + 1e-12; v += grid.step)
        out.stream() << fmt(v) << ',' << fmt(evaluate(v)) << '\n';
    return 0;
}

int run_table1(const GlobalOptions& g, std::int64_t from, std::int64_t to, bool csv,
               const std::string& out_path) {
    const auto t = g.table();
    Output out;
    out.open(out_path);
    if (csv) {
        out.stream() << "i,p,alpha_l,beta_l,gamma_l,d_l,alpha_r,beta_r,gamma_r,d_r\n";
        for (std::int64_t i = from; i <= to; ++i) {
            const auto r = quad_coeff_row(i, *t);
            out.stream() << r.i << ',' << r.p_i << ',' << r.alpha_l << ',' << r.beta_l << ','
                         << r.gamma_l << ',' << r.d_l << ',' << r.alpha_r << ',' << r.beta_r
                         << ',' << r.gamma_r << ',' << r.d_r << '\n';
        }
        return 0;
    }
    char buf[176];
    std::snprintf(buf, sizeof buf, "%5s %8s | %8s %10s %12s %16s | %8s %10s %12s %16s\n", "i",
                  "p(i)", "alpha_l", "beta_l", "gamma_l", "d_l", "alpha_r", "beta_r", "gamma_r",
                  "d_r");
    out.stream() << buf;
    for (std::int64_t i = from; i <= to; ++i) {
        const auto r = quad_coeff_row(i, *t);
        std::snprintf(buf, sizeof buf,
                      "%5lld %8lld | %8lld %10lld %12lld %16lld | %8lld %10lld %12lld %16lld\n",
                      static_cast<long long>(r.i), static_cast<long long>(r.p_i),
                      static_cast<long long>(r.alpha_l), static_cast<long long>(r.beta_l),
                      static_cast<long long>(r.gamma_l), static_cast<long long>(r.d_l),
                      static_cast<long long>(r.alpha_r), static_cast<long long>(r.beta_r),
                      static_cast<long long>(r.gamma_r), static_cast<long long>(r.d_r));
        out.stream() << buf;
    }
    return 0;
}

int run_triplets(const GlobalOptions& g, std::int64_t count, bool csv,
                 const std::string& out_path) {
    const auto t = g.table();
    const auto rows = cubic_violations(count, *t);
    Output out;
    out.open(out_path);
    if (csv) {
        out.stream() << "i,p_im1,p_i,p_ip1,d,violates\n";
        for (const auto& r : rows)
            out.stream() << r.i << ',' << t->prime(r.i - 1) << ',' << t->prime(r.i) << ','
                         << t->prime(r.i + 1) << ',' << fmt(r.d) << ",1\n";
    } else {
        out.stream() << rows.size() << " violating triplet(s) among the first " << count
                     << " primes\n";
        for (const auto& r : rows)
            out.stream() << "  i=" << r.i << "  (" << t->prime(r.i - 1) << ", " << t->prime(r.i)
                         << ", " << t->prime(r.i + 1) << ")  d=" << fmt(r.d) << '\n';
    }
    return 0;
}

int run_compare(const GlobalOptions& g, double from, double to, double step,
                const std::string& out_path) {
    const auto t = g.table();
    const PrimeFunction p(t, SplineKind::quad);
    Output out;
    out.open(out_path);
    out.stream() << "x,pi,pinv,li,R\n";
    for (double x = from; x <= to + 1e-12; x += step)
        out.stream() << fmt(x) << ',' << t->count_upto(x) << ',' << fmt(p.inverse(x)) << ','
                     << fmt(log_integral(x)) << ',' << fmt(riemann_r(x)) << '\n';
    return 0;
}

int run_variance(const GlobalOptions& g, const std::string& kind, double x0, double eps,
                 double step, const std::string& out_path) {
    const PrimeFunction p(g.table(), SplineKind::quad);
    const VarianceWindow w{x0, eps, kind == "B" ? VarianceKind::B : VarianceKind::A};
    Output out;
    out.open(out_path);
    out.stream() << "x," << kind << '\n';
    for (double x = x0; x < x0 + w.length() - 1e-12; x += step) {
        const double v = w.kind == VarianceKind::A ? variance_a(x, w, p) : variance_b(x, w, p);
        out.stream() << fmt(x) << ',' << fmt(v) << '\n';
    }
    return 0;
}

void write_rows(const std::string& path, const std::string& header,
                const std::vector<std::string>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "'");
    out << header << '\n';
    for (const auto& r : rows) out << r << '\n';
}

int run_figures(const GlobalOptions& g, const std::string& which, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const auto t = g.table();
    const PrimeFunction quad(t, SplineKind::quad);
    const PrimeFunction cub(t, SplineKind::cubic);
    auto want = [&](int k) { return which == "all" || which == std::to_string(k); };
    auto path = [&](int k) { return dir + "/fig" + std::to_string(k) + ".csv"; };

    // The first pair of derivative-violating triplets sits at indices 429-430.
    if (want(1)) {
        std::vector<std::string> rows;
        for (double x = 428.0; x <= 432.0 + 1e-12; x += 1e-3)
            rows.push_back(fmt(x) + "," + fmt(cub.value(x)) + "," + fmt(quad.value(x)));
        write_rows(path(1), "x,s_cub,s_quad", rows);
    }
    if (want(2)) {
        std::vector<std::string> rows;
        for (double x = 428.0; x <= 432.0 + 1e-12; x += 1e-3)
            rows.push_back(fmt(x) + "," + fmt(cub.deriv(x)) + "," + fmt(quad.deriv(x)));
        write_rows(path(2), "x,ds_cub,ds_quad", rows);
    }
    if (want(3)) {
        std::vector<std::string> rows;
        const double lo = static_cast<double>(t->prime(428));
        const double hi = static_cast<double>(t->prime(432));
        for (double x = lo; x <= hi + 1e-12; x += 0.01) {
            std::string cub_inv;
            auto [y, tr] = cub.inverse_newton(x);
            if (tr.converged) cub_inv = fmt(y);
            rows.push_back(fmt(x) + "," + fmt(quad.inverse(x)) + "," + cub_inv);
        }
        write_rows(path(3), "x,pinv_quad,pinv_cub_newton", rows);
    }
    if (want(4)) {
        // 6000-prime table sewn at x = 5999.5.
        auto t6 = std::make_shared<const PrimeTable>(PrimeTable::sieve(59359));
        const PrimeFunction p6(t6, SplineKind::quad);
        const auto& sew = p6.sewing();
        std::vector<std::string> rows;
        for (double x = sew.sew_x - 10.0; x <= sew.sew_x + 10.0 + 1e-12; x += 0.01) {
            const double corrected = prime_asymptote(x) + sew.c0 + sew.c1 * (x - sew.sew_x);
            rows.push_back(fmt(x) + "," + fmt(p6.value(x)) + "," + fmt(prime_asymptote(x)) +
                           "," + fmt(corrected));
        }
        write_rows(path(4), "x,p,asymptote,asymptote_corrected", rows);
    }
    if (want(5)) {
        std::vector<std::string> rows;
        for (double x = 2.0; x <= 1000.0 + 1e-12; x += 0.5)
            rows.push_back(fmt(x) + "," + std::to_string(t->count_upto(x)) + "," +
                           fmt(quad.inverse(x)) + "," + fmt(log_integral(x)) + "," +
                           fmt(riemann_r(x)));
        write_rows(path(5), "x,pi,pinv,li,R", rows);
    }
    if (want(6)) {
        std::vector<std::string> rows;
        for (double x = 154.78; x <= 168.2 + 1e-12; x += 1e-3)
            rows.push_back(fmt(x) + "," + fmt(quad.value(x)));
        write_rows(path(6), "x,p", rows);
    }
    if (want(7)) {
        const VarianceWindow w{154.78, 168.2 - 154.78 + 1e-6, VarianceKind::A};
        std::vector<std::string> rows;
        for (double x = 154.78; x <= 168.2 + 1e-12; x += 1e-3)
            rows.push_back(fmt(x) + "," + fmt(variance_a(x, w, quad)));
        write_rows(path(7), "x,A", rows);
    }
    if (want(8)) {
        const VarianceWindow w{900.0, 100.0, VarianceKind::B};
        std::vector<std::string> rows;
        for (double x = 900.0; x < 1000.0; x += 1e-3)
            rows.push_back(fmt(x) + "," + fmt(variance_b(x, w, quad)));
        write_rows(path(8), "x,B", rows);
    }
    if (want(9)) {
        const VarianceWindow w{900.0, 250.0, VarianceKind::B};
        std::vector<std::string> rows;
        for (double x = 900.0; x < 1150.0; x += 1e-3)
            rows.push_back(fmt(x) + "," + fmt(variance_b(x, w, quad)));
        write_rows(path(9), "x,B", rows);
    }
    return 0;
}

json solve_run_to_json(const SolveRun& run, std::uint64_t seed) {
    json j;
    j["seed"] = seed;
    j["exhausted_extractions"] = run.exhausted_extractions;
    j["discarded_stationary"] = run.discarded_stationary;
    j["rounded"] = run.rounded;
    j["found"] = json::array();
    for (const auto& f : run.found)
        j["found"].push_back(
            {{"x", f.x}, {"rounded", f.rounded}, {"residual_norm", f.residual_norm}});
    j["restart_log"] = json::array();
    for (const auto& l : run.restart_log)
        j["restart_log"].push_back({{"round", l.round},
                                    {"attempt", l.attempt},
                                    {"eps0", l.eps0},
                                    {"iterations", l.iterations},
                                    {"outcome", l.outcome}});
    j["traces"] = json::array();
    for (const auto& tr : run.traces) {
        json steps = json::array();
        for (const auto& it : tr)
            steps.push_back({{"eps", it.eps}, {"tau", it.tau}, {"rho", it.rho}});
        j["traces"].push_back(std::move(steps));
    }
    return j;
}

int run_solve(const GlobalOptions& g, const std::string& config_path,
              std::optional<std::uint64_t> seed_override, bool as_json,
              const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config '" + config_path + "'");
    json cfg_json;
    try {
        cfg_json = json::parse(in, nullptr, true, true);   // comments allowed
    } catch (const json::parse_error& e) {
        std::cerr << "malformed config: " << e.what() << '\n';
        return 2;
    }

    ResidualSystem base;
    if (cfg_json.contains("preset")) {
        const std::string preset = cfg_json["preset"];
        if (preset == "quasi_pythagorean")
            base = quasi_pythagorean_system();
        else if (preset == "quasi_pythagorean_twin")
            base = quasi_pythagorean_twin_system();
        else
            throw std::runtime_error("unknown preset '" + preset + "'");
        if (cfg_json.contains("domain")) {
            base.domain.lo = cfg_json["domain"]["lo"].get<Vec>();
            base.domain.hi = cfg_json["domain"]["hi"].get<Vec>();
        }
    } else if (cfg_json.contains("residuals")) {
        std::vector<PolyResidual> residuals;
        for (const auto& rj : cfg_json["residuals"]) {
            PolyResidual r;
            r.target = rj.value("target", 0LL);
            for (const auto& tj : rj["terms"]) {
                Monomial m;
                m.c = tj.at("c").get<long long>();
                m.powers = tj.at("powers").get<std::vector<int>>();
                r.terms.push_back(std::move(m));
            }
            residuals.push_back(std::move(r));
        }
        Box box;
        box.lo = cfg_json.at("domain").at("lo").get<Vec>();
        box.hi = cfg_json.at("domain").at("hi").get<Vec>();
        base = polynomial_system(residuals, std::move(box));
    } else {
        throw std::runtime_error("config needs either \"preset\" or \"residuals\"");
    }

    PenaltyKind kind = PenaltyKind::primes;
    const std::string kind_str = cfg_json.value("penalty", "primes");
    if (kind_str == "none")
        kind = PenaltyKind::none;
    else if (kind_str == "integers")
        kind = PenaltyKind::integers;
    else if (kind_str != "primes")
        throw std::runtime_error("unknown penalty '" + kind_str + "'");

    RgnConfig rcfg;
    rcfg.rng_seed = cfg_json.value("seed", 1ULL);
    if (seed_override) rcfg.rng_seed = *seed_override;
    rcfg.restarts = cfg_json.value("restarts", 40);
    rcfg.max_extractions = cfg_json.value("max_extractions", 20);
    rcfg.max_iter = cfg_json.value("max_iter", 200);
    rcfg.tol_F = cfg_json.value("tol", 1e-10);
    if (cfg_json.contains("eps0_table"))
        rcfg.eps0_table = cfg_json["eps0_table"].get<std::vector<double>>();
    if (cfg_json.contains("x0")) rcfg.x0 = cfg_json["x0"].get<Vec>();
    rcfg.column_scaling = cfg_json.value("scaling", std::string("off")) == "column_norm";

    std::unique_ptr<PrimeFunction> pf;
    if (kind == PenaltyKind::primes) {
        std::shared_ptr<const PrimeTable> tbl;
        if (cfg_json.contains("prime_limit"))
            tbl = std::make_shared<const PrimeTable>(
                PrimeTable::sieve(cfg_json["prime_limit"].get<std::int64_t>()));
        else
            tbl = g.table();
        pf = std::make_unique<PrimeFunction>(tbl, SplineKind::quad);
    }

    const auto run = solve_all(base, kind, rcfg, pf.get());

    Output out;
    out.open(out_path);
    if (as_json) {
        out.stream() << solve_run_to_json(run, rcfg.rng_seed).dump(2) << '\n';
        return 0;
    }
    out.stream() << "FOUND SOLUTIONS (" << run.rounded.size() << " extraction"
                 << (run.rounded.size() == 1 ? "" : "s") << ", " << run.restart_log.size()
                 << " attempts, seed " << rcfg.rng_seed << ")\n";
    for (std::size_t r = 0; r < run.found.size(); ++r) {
        const auto& f = run.found[r];
        out.stream() << "  r=" << (r + 1) << ":  (";
        for (std::size_t j = 0; j < f.rounded.size(); ++j)
            out.stream() << f.rounded[j] << (j + 1 < f.rounded.size() ? ", " : ")");
        out.stream() << "   x = (";
        for (std::size_t j = 0; j < f.x.size(); ++j)
            out.stream() << fmt(f.x[j]) << (j + 1 < f.x.size() ? ", " : ")");
        out.stream() << "   |f-y|_inf = " << fmt(f.residual_norm) << '\n';
    }
    if (run.exhausted_extractions)
        out.stream() << "extraction cap reached; more solutions may remain\n";
    else
        out.stream() << "a full restart round found nothing new; search exhausted\n";
    if (run.discarded_stationary > 0)
        out.stream() << run.discarded_stationary
                     << " stationary point(s) failed integer verification and were discarded\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime-series splines, their inverses, and Diophantine search over primes"};
    app.require_subcommand(1);
    app.fallthrough();   // accept the global table/spline options after the subcommand too

    GlobalOptions g;
    auto* opt_limit =
        app.add_option("--limit", g.limit, "sieve limit for the prime table (default 1e6)");
    auto* opt_file = app.add_option("--primes-file", g.primes_file, "read primes from a file");
    opt_limit->excludes(opt_file);
    app.add_option("--spline", g.spline, "spline backend: quad|cubic")
        ->check(CLI::IsMember({"quad", "cubic"}));

    auto* sieve_cmd = app.add_subcommand("sieve", "generate primes and print them");
    std::int64_t sieve_limit = 0;
    std::string sieve_out;
    sieve_cmd->add_option("--limit", sieve_limit, "sieve limit")->required();
    sieve_cmd->add_option("--out", sieve_out, "output file");

    auto* eval_cmd = app.add_subcommand("eval", "evaluate p, dp, pinv or dpinv");
    std::string eval_fn, eval_grid, eval_backend = "closed", eval_y0 = "li", eval_out;
    double eval_x = 0;
    bool eval_csv = false, eval_trace = false;
    eval_cmd->add_option("--fn", eval_fn, "function: p|dp|pinv|dpinv")
        ->required()
        ->check(CLI::IsMember({"p", "dp", "pinv", "dpinv"}));
    auto* opt_x = eval_cmd->add_option("--x", eval_x, "single abscissa");
    auto* opt_grid = eval_cmd->add_option("--grid", eval_grid, "grid A:B:STEP");
    opt_x->excludes(opt_grid);
    eval_cmd->add_flag("--csv", eval_csv, "CSV output");
    eval_cmd->add_option("--backend", eval_backend, "inverse backend: closed|newton")
        ->check(CLI::IsMember({"closed", "newton"}));
    eval_cmd->add_option("--y0", eval_y0, "newton start: li|xlnx|R")
        ->check(CLI::IsMember({"li", "xlnx", "R"}));
    eval_cmd->add_flag("--trace", eval_trace, "dump the newton trace as CSV");
    eval_cmd->add_option("--out", eval_out, "output file");

    auto* table_cmd = app.add_subcommand("table1", "integer coefficients of the parabola pairs");
    std::int64_t tbl_from = 2, tbl_to = 20;
    bool tbl_csv = false;
    std::string tbl_out;
    table_cmd->add_option("--from", tbl_from, "first index");
    table_cmd->add_option("--to", tbl_to, "last index");
    table_cmd->add_flag("--csv", tbl_csv, "CSV output");
    table_cmd->add_option("--out", tbl_out, "output file");

    auto* trip_cmd = app.add_subcommand("triplets", "census of monotonicity-violating triplets");
    std::int64_t trip_count = 1000;
    bool trip_csv = false;
    std::string trip_out;
    trip_cmd->add_option("--count", trip_count, "number of leading primes to scan");
    trip_cmd->add_flag("--csv", trip_csv, "CSV output");
    trip_cmd->add_option("--out", trip_out, "output file");

    auto* cmp_cmd = app.add_subcommand("compare", "tabulate pi, pinv, li and R");
    double cmp_from = 2, cmp_to = 100, cmp_step = 1;
    std::string cmp_out;
    bool cmp_csv = false;
    cmp_cmd->add_option("--from", cmp_from, "first x");
    cmp_cmd->add_option("--to", cmp_to, "last x");
    cmp_cmd->add_option("--step", cmp_step, "grid step");
    cmp_cmd->add_flag("--csv", cmp_csv, "CSV output (compare always emits CSV)");
    cmp_cmd->add_option("--out", cmp_out, "output file");

    auto* var_cmd = app.add_subcommand("variance", "local variance windows A and B");
    std::string var_kind = "A", var_out;
    double var_x0 = 0, var_eps = 0, var_step = 0.001;
    bool var_csv = false;
    var_cmd->add_option("--kind", var_kind, "A|B")->check(CLI::IsMember({"A", "B"}));
    var_cmd->add_option("--x0", var_x0, "window origin")->required();
    var_cmd->add_option("--eps", var_eps, "window length (default 0.25*x0)");
    var_cmd->add_option("--step", var_step, "grid step");
    var_cmd->add_flag("--csv", var_csv, "CSV output (variance always emits CSV)");
    var_cmd->add_option("--out", var_out, "output file");

    auto* fig_cmd = app.add_subcommand("figures", "regenerate the plot datasets as CSV");
    std::string fig_which = "all", fig_dir;
    fig_cmd->add_option("--which", fig_which, "figure number 1..9 or 'all'");
    fig_cmd->add_option("--out", fig_dir, "output directory")->required();

    auto* solve_cmd = app.add_subcommand("solve", "deflated rgn search for Diophantine systems");
    std::string solve_config, solve_out;
    bool solve_json = false;
    std::uint64_t solve_seed = 0;
    solve_cmd->add_option("--config", solve_config, "JSON problem description")->required();
    solve_cmd->add_flag("--json", solve_json, "emit the run as JSON");
    auto* opt_seed = solve_cmd->add_option("--seed", solve_seed, "override the config seed");
    solve_cmd->add_option("--out", solve_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);   // --help and friends
        app.exit(e);
        return 2;
    }
    g.limit_given = opt_limit->count() > 0;

    try {
        if (sieve_cmd->parsed()) return run_sieve(sieve_limit, sieve_out);
        if (eval_cmd->parsed()) {
            std::optional<double> x;
            if (opt_x->count() > 0) x = eval_x;
            if (!x && eval_grid.empty()) throw std::runtime_error("eval needs --x or --grid");
            return run_eval(g, eval_fn, x, eval_grid, eval_csv, eval_backend, eval_y0,
                            eval_trace, eval_out);
        }
        if (table_cmd->parsed()) return run_table1(g, tbl_from, tbl_to, tbl_csv, tbl_out);
        if (trip_cmd->parsed()) return run_triplets(g, trip_count, trip_csv, trip_out);
        if (cmp_cmd->parsed()) return run_compare(g, cmp_from, cmp_to, cmp_step, cmp_out);
        if (var_cmd->parsed())
            return run_variance(g, var_kind, var_x0, var_eps, var_step, var_out);
        if (fig_cmd->parsed()) return run_figures(g, fig_which, fig_dir);
        if (solve_cmd->parsed())
            return run_solve(g, solve_config,
                             opt_seed->count() > 0 ? std::optional<std::uint64_t>(solve_seed)
                                                   : std::nullopt,
                             solve_json, solve_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
