#include "primespline/dioph_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primespline {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kExtractorCap = 1e12;

double inf_norm(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Vec clamp_to(const Box& box, Vec x) {
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = std::min(std::max(x[j], box.lo[j]), box.hi[j]);
    return x;
}

// One-sided Jacobi SVD of an m x n matrix (works for m < n as well; missing
// directions come out with zero singular values).  Returns V (n x n, columns
// are right singular vectors) and sigma (length n).
void jacobi_svd(const Mat& a_in, Mat& v, Vec& sigma) {
    const std::size_t m = a_in.size();
    const std::size_t n = a_in.empty() ? 0 : a_in[0].size();
    // Column-major copy.
    std::vector<Vec> col(n, Vec(m));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) col[c][r] = a_in[r][c];

    v.assign(n, Vec(n, 0.0));
    for (std::size_t c = 0; c < n; ++c) v[c][c] = 1.0;

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t r = 0; r < m; ++r) {
                    app += col[p][r] * col[p][r];
                    aqq += col[q][r] * col[q][r];
                    apq += col[p][r] * col[q][r];
                }
                if (std::abs(apq) <= 1e-30) continue;
                off = std::max(off, std::abs(apq) / std::sqrt(app * aqq + 1e-300));
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < m; ++r) {
                    const double tmp = col[p][r];
                    col[p][r] = c * tmp - s * col[q][r];
                    col[q][r] = s * tmp + c * col[q][r];
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double tmp = v[r][p];
                    v[r][p] = c * tmp - s * v[r][q];
                    v[r][q] = s * tmp + c * v[r][q];
                }
            }
        }
        if (off < 1e-15) break;
    }

    sigma.assign(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        double s2 = 0.0;
        for (std::size_t r = 0; r < m; ++r) s2 += col[c][r] * col[c][r];
        sigma[c] = std::sqrt(s2);
    }
}

// Deterministic uniform draw in [0,1) independent of the standard library's
// distribution implementation.
double uniform01(std::uint64_t& state) {
    // splitmix64
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// Solves (J^T J + eps I) dx = -grad via the SVD of J; empty result signals a
// numerical failure.
Vec rgn_step_impl(const ResidualSystem& sys, const Mat& jac, const Vec& grad, double eps,
                  bool column_scaling) {
    const auto n = static_cast<std::size_t>(sys.n);
    Vec scale(n, 1.0);
    Mat jac_s = jac;
    if (column_scaling) {
        for (std::size_t j = 0; j < n; ++j) {
            double s2 = 0.0;
            for (const auto& row : jac) s2 += row[j] * row[j];
            scale[j] = s2 > 0.0 ? 1.0 / std::sqrt(s2) : 1.0;
        }
        for (auto& row : jac_s)
            for (std::size_t j = 0; j < n; ++j) row[j] *= scale[j];
    }

    Mat v;
    Vec sigma;
    jacobi_svd(jac_s, v, sigma);
    double smax = 0.0;
    for (double s : sigma) smax = std::max(smax, s);

    Vec gs(n);
    for (std::size_t j = 0; j < n; ++j) gs[j] = grad[j] * scale[j];

    Vec step(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        double vtg = 0.0;
        for (std::size_t j = 0; j < n; ++j) vtg += v[j][c] * gs[j];
        const double s = sigma[c] < 1e-12 * smax ? 0.0 : sigma[c];
        const double denom = s * s + eps;
        if (denom <= 0.0) continue;
        const double coef = -vtg / denom;
        for (std::size_t j = 0; j < n; ++j) step[j] += coef * v[j][c];
    }
    for (std::size_t j = 0; j < n; ++j) {
        step[j] *= scale[j];
        if (!std::isfinite(step[j])) return {};
    }
    return step;
}

struct RgnOutcome {
    bool converged = false;
    Vec x;
    int iterations = 0;
    std::vector<IterRecord> trace;
};

RgnOutcome rgn_run(const ResidualSystem& sys, Vec x, double eps0, double tol_f, int max_iter,
                   const std::vector<Vec>& deflated, bool column_scaling) {
    RgnOutcome out;
    x = clamp_to(sys.domain, std::move(x));
    double n_factor = 0.0;
    for (int k = 0; k < max_iter; ++k) {
        const Vec fx = sys.f(x);
        const Mat jac = sys.jacobian(x);
        Vec r(fx.size());
        for (std::size_t i = 0; i < fx.size(); ++i) r[i] = fx[i] - sys.targets[i];

        const double defl = extractor_product(x, deflated);
        Vec grad(static_cast<std::size_t>(sys.n), 0.0);
        for (std::size_t i = 0; i < r.size(); ++i)
            for (int j = 0; j < sys.n; ++j) grad[j] += jac[i][j] * r[i];
        for (int j = 0; j < sys.n; ++j) grad[j] *= defl;

        const double rho = inf_norm(grad);
        double tau = 0.0;
        {
            // tau = ||J^T J||_inf (max absolute row sum)
            for (int a = 0; a < sys.n; ++a) {
                double row = 0.0;
                for (int b = 0; b < sys.n; ++b) {
                    double g = 0.0;
                    for (std::size_t i = 0; i < r.size(); ++i) g += jac[i][a] * jac[i][b];
                    row += std::abs(g);
                }
                tau = std::max(tau, row);
            }
        }
        if (k == 0) {
            if (rho <= tol_f) {
                out.trace.push_back(IterRecord{0.0, tau, rho});
                out.converged = true;
                out.x = std::move(x);
                out.iterations = 0;
                return out;
            }
            n_factor = (eps0 + eps0 * tau) / rho;
        }
        const double eps = 0.5 * (std::sqrt(tau * tau + 4.0 * n_factor * rho) - tau);
        out.trace.push_back(IterRecord{eps, tau, rho});

        if (rho <= tol_f) {
            out.converged = true;
            out.x = std::move(x);
            out.iterations = k;
            return out;
        }

        const auto step = rgn_step_impl(sys, jac, grad, eps, column_scaling);
        if (step.empty()) break;   // SVD produced non-finite entries
        bool finite = true;
        for (int j = 0; j < sys.n; ++j) {
            x[j] += step[j];
            finite = finite && std::isfinite(x[j]);
        }
        if (!finite) break;
        x = clamp_to(sys.domain, std::move(x));
        out.iterations = k + 1;
    }
    out.x = std::move(x);
    return out;
}

}  // namespace

ResidualSystem build_penalty(const ResidualSystem& base, PenaltyKind kind,
                             const PrimeFunction* pinv) {
    if (kind == PenaltyKind::none) return base;
    if (kind == PenaltyKind::primes) {
        if (pinv == nullptr) throw std::invalid_argument("build_penalty: primes mode needs p^{-1}");
        for (double lo : base.domain.lo)
            if (lo < 2.0)
                throw std::domain_error("build_penalty: primes mode requires domain in [2,inf)^n");
    }

    ResidualSystem sys = base;
    sys.m = base.m + 1;
    sys.targets.push_back(0.0);

    auto g = [kind, pinv](double t) { return kind == PenaltyKind::primes ? pinv->inverse(t) : t; };
    auto gd = [kind, pinv](double t) {
        return kind == PenaltyKind::primes ? pinv->inverse_deriv(t) : 1.0;
    };

    sys.f = [base, g](const Vec& x) {
        Vec fx = base.f(x);
        double pen = 0.0;
        for (double xj : x) {
            const double s = std::sin(kPi * g(xj));
            pen += s * s;
        }
        fx.push_back(pen);
        return fx;
    };
    sys.jacobian = [base, g, gd](const Vec& x) {
        Mat jac = base.jacobian(x);
        Vec row(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double u = g(x[j]);
            row[j] = kPi * std::sin(2.0 * kPi * u) * gd(x[j]);
        }
        jac.push_back(std::move(row));
        return jac;
    };
    return sys;
}

double extractor_product(const Vec& x, const std::vector<Vec>& found) {
    double prod = 1.0;
    for (const Vec& s : found) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) d2 += (x[j] - s[j]) * (x[j] - s[j]);
        const double d = std::sqrt(d2);
        const double denom = 1.0 - std::exp(-d);
        prod *= denom > 0.0 ? 1.0 / denom : kExtractorCap;
        if (prod >= kExtractorCap) return kExtractorCap;
    }
    return prod;
}

RgnStepResult rgn_step(const ResidualSystem& sys, const Vec& x, double n_factor,
                       const std::vector<Vec>& deflated, bool column_scaling) {
    const Vec fx = sys.f(x);
    const Mat jac = sys.jacobian(x);
    Vec r(fx.size());
    for (std::size_t i = 0; i < fx.size(); ++i) r[i] = fx[i] - sys.targets[i];

    const double defl = extractor_product(x, deflated);
    Vec grad(static_cast<std::size_t>(sys.n), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (int j = 0; j < sys.n; ++j) grad[j] += jac[i][j] * r[i];
    for (int j = 0; j < sys.n; ++j) grad[j] *= defl;

    double tau = 0.0;
    for (int a = 0; a < sys.n; ++a) {
        double row = 0.0;
        for (int b = 0; b < sys.n; ++b) {
            double g = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) g += jac[i][a] * jac[i][b];
            row += std::abs(g);
        }
        tau = std::max(tau, row);
    }
    const double rho = inf_norm(grad);
    const double eps = 0.5 * (std::sqrt(tau * tau + 4.0 * n_factor * rho) - tau);

    Vec step = rgn_step_impl(sys, jac, grad, eps, column_scaling);
    if (step.empty()) throw std::runtime_error("rgn_step: SVD produced non-finite entries");
    Vec xn = x;
    for (int j = 0; j < sys.n; ++j) xn[j] += step[j];
    return RgnStepResult{clamp_to(sys.domain, std::move(xn)), eps, tau, rho};
}

std::optional<std::vector<long long>> verify_rounded(const Vec& x, const ResidualSystem& base,
                                                     PenaltyKind kind, const PrimeTable* table,
                                                     double round_tol) {
    std::vector<long long> r(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        r[j] = std::llround(x[j]);
        if (std::abs(x[j] - static_cast<double>(r[j])) > round_tol) return std::nullopt;
    }
    if (kind == PenaltyKind::primes) {
        for (long long v : r) {
            const bool prime = (table != nullptr && v <= table->limit())
                                   ? table->index_of(static_cast<double>(v)) > 0
                                   : is_prime_slow(v);
            if (!prime) return std::nullopt;
        }
    }
    if (base.exact_base) {
        for (long long resid : base.exact_base(r))
            if (resid != 0) return std::nullopt;
    } else {
        Vec xr(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) xr[j] = static_cast<double>(r[j]);
        const Vec fx = base.f(xr);
        for (int i = 0; i < base.base_rows; ++i)
            if (fx[i] - base.targets[i] != 0.0) return std::nullopt;
    }
    return r;
}

SolveRun solve_all(const ResidualSystem& base, PenaltyKind kind, const RgnConfig& cfg,
                   const PrimeFunction* pinv) {
    if (cfg.max_extractions < 1 || cfg.max_extractions > 20)
        throw std::invalid_argument("solve_all: max_extractions must be in [1, 20]");
    if (cfg.restarts < 1) throw std::invalid_argument("solve_all: restarts must be >= 1");
    if (!cfg.x0.empty() && static_cast<int>(cfg.x0.size()) != base.n)
        throw std::invalid_argument("solve_all: x0 has wrong dimension");

    const ResidualSystem sys = build_penalty(base, kind, pinv);
    const PrimeTable* table = pinv ? &pinv->table() : nullptr;

    SolveRun run;
    std::vector<Vec> found_x;
    std::uint64_t rng = cfg.rng_seed;

    auto sample = [&]() {
        Vec x(static_cast<std::size_t>(base.n));
        for (int j = 0; j < base.n; ++j)
            x[j] = base.domain.lo[j] +
                   uniform01(rng) * (base.domain.hi[j] - base.domain.lo[j]);
        return x;
    };

    int round = 0;
    while (static_cast<int>(found_x.size()) < cfg.max_extractions) {
        bool new_this_round = false;
        for (int attempt = 0; attempt < cfg.restarts && !new_this_round; ++attempt) {
            const Vec x0 = (attempt == 0 && !cfg.x0.empty()) ? cfg.x0 : sample();
            for (double eps0 : cfg.eps0_table) {
                auto res = rgn_run(sys, x0, eps0, cfg.tol_F, cfg.max_iter, found_x,
                                   cfg.column_scaling);
                AttemptLog log{round, attempt, eps0, res.iterations, "maxiter"};
                if (res.converged) {
                    bool dup = false;
                    for (const Vec& s : found_x) {
                        double d2 = 0.0;
                        for (int j = 0; j < base.n; ++j)
                            d2 += (res.x[j] - s[j]) * (res.x[j] - s[j]);
                        if (std::sqrt(d2) < cfg.dedupe_tol) {
                            dup = true;
                            break;
                        }
                    }
                    auto tup = dup ? std::nullopt
                                   : verify_rounded(res.x, base, kind, table, cfg.round_tol);
                    if (tup) {
                        // Distinct converged points can straddle one integer
                        // tuple; the tuple identity is what counts.
                        for (const auto& seen : run.rounded)
                            if (seen == *tup) {
                                dup = true;
                                break;
                            }
                    }
                    if (dup) {
                        log.outcome = "dup";
                    } else if (tup) {
                        log.outcome = "new";
                        const Vec fx = sys.f(res.x);
                        double rn = 0.0;
                        for (std::size_t i = 0; i < fx.size(); ++i)
                            rn = std::max(rn, std::abs(fx[i] - sys.targets[i]));
                        found_x.push_back(res.x);
                        run.found.push_back(FoundSolution{res.x, *tup, rn});
                        run.rounded.push_back(*tup);
                        run.traces.push_back(std::move(res.trace));
                        new_this_round = true;
                    } else {
                        log.outcome = "stationary";
                        ++run.discarded_stationary;
                    }
                }
                run.restart_log.push_back(std::move(log));
                if (new_this_round) break;
            }
        }
        if (!new_this_round) break;
        ++round;
    }
    run.exhausted_extractions = static_cast<int>(found_x.size()) >= cfg.max_extractions;
    return run;
}

namespace {

ResidualSystem quasi_pythagorean_base(bool twin) {
    ResidualSystem sys;
    sys.n = 3;
    sys.m = twin ? 2 : 1;
    sys.base_rows = sys.m;
    sys.targets.assign(static_cast<std::size_t>(sys.m), 0.0);
    sys.domain = Box{{2.0, 2.0, 2.0}, {100.0, 100.0, 100.0}};
    sys.f = [twin](const Vec& x) {
        Vec fx{x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - 1.0};
        if (twin) fx.push_back(x[2] - x[0] - 2.0);
        return fx;
    };
    sys.jacobian = [twin](const Vec& x) {
        Mat jac{{2.0 * x[0], 2.0 * x[1], -2.0 * x[2]}};
        if (twin) jac.push_back({-1.0, 0.0, 1.0});
        return jac;
    };
    sys.exact_base = [twin](const std::vector<long long>& v) {
        std::vector<long long> out{v[0] * v[0] + v[1] * v[1] - v[2] * v[2] - 1};
        if (twin) out.push_back(v[2] - v[0] - 2);
        return out;
    };
    return sys;
}

}  // namespace

ResidualSystem quasi_pythagorean_system() { return quasi_pythagorean_base(false); }

ResidualSystem quasi_pythagorean_twin_system() { return quasi_pythagorean_base(true); }

ResidualSystem polynomial_system(const std::vector<PolyResidual>& residuals, Box domain) {
    if (residuals.empty()) throw std::invalid_argument("polynomial_system: no residuals");
    const auto n = domain.lo.size();
    if (n == 0 || domain.hi.size() != n)
        throw std::invalid_argument("polynomial_system: inconsistent domain");
    for (const auto& res : residuals)
        for (const auto& t : res.terms)
            if (t.powers.size() != n)
                throw std::invalid_argument("polynomial_system: power list has wrong length");

    ResidualSystem sys;
    sys.n = static_cast<int>(n);
    sys.m = static_cast<int>(residuals.size());
    sys.base_rows = sys.m;
    sys.domain = std::move(domain);
    for (const auto& res : residuals) sys.targets.push_back(static_cast<double>(res.target));

    sys.f = [residuals](const Vec& x) {
        Vec fx;
        fx.reserve(residuals.size());
        for (const auto& res : residuals) {
            double v = 0.0;
            for (const auto& t : res.terms) {
                double term = static_cast<double>(t.c);
                for (std::size_t j = 0; j < x.size(); ++j)
                    for (int k = 0; k < t.powers[j]; ++k) term *= x[j];
                v += term;
            }
            fx.push_back(v);
        }
        return fx;
    };
    sys.jacobian = [residuals, n](const Vec& x) {
        Mat jac;
        jac.reserve(residuals.size());
        for (const auto& res : residuals) {
            Vec row(n, 0.0);
            for (const auto& t : res.terms) {
                for (std::size_t d = 0; d < n; ++d) {
                    if (t.powers[d] == 0) continue;
                    double term = static_cast<double>(t.c) * t.powers[d];
                    for (std::size_t j = 0; j < n; ++j) {
                        const int pw = t.powers[j] - (j == d ? 1 : 0);
                        for (int k = 0; k < pw; ++k) term *= x[j];
                    }
                    row[d] += term;
                }
            }
            jac.push_back(std::move(row));
        }
        return jac;
    };
    sys.exact_base = [residuals](const std::vector<long long>& v) {
        std::vector<long long> out;
        out.reserve(residuals.size());
        for (const auto& res : residuals) {
            long long val = 0;
            for (const auto& t : res.terms) {
                long long term = t.c;
                for (std::size_t j = 0; j < v.size(); ++j)
                    for (int k = 0; k < t.powers[j]; ++k) term *= v[j];
                val += term;
            }
            out.push_back(val - res.target);
        }
        return out;
    };
    return sys;
}

}  // namespace primespline
