#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "primespline/inversion.hpp"
#include "primespline/prime_table.hpp"

namespace primespline {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;   // rows

struct Box {
    Vec lo;
    Vec hi;
};

/// Residual map f: D_f in R^n -> R^m with analytic Jacobian and targets.
/// base_rows counts the rows of the original Diophantine system (before any
/// penalty row); exact_base evaluates those rows minus their targets in
/// integer arithmetic, for zero-tolerance verification of rounded solutions.
struct ResidualSystem {
    int n = 0;
    int m = 0;
    std::function<Vec(const Vec&)> f;
    std::function<Mat(const Vec&)> jacobian;
    Vec targets;
    Box domain;
    int base_rows = 0;
    std::function<std::vector<long long>(const std::vector<long long>&)> exact_base;
};

enum class PenaltyKind { none, integers, primes };

struct RgnConfig {
    std::vector<double> eps0_table = {1e-4, 1e-2, 1.0, 100.0};
    int max_iter = 200;
    double tol_F = 1e-10;        // stop when ||Fx||_inf <= tol_F (deflated)
    int restarts = 40;           // attempts per extraction round
    std::uint64_t rng_seed = 1;
    int max_extractions = 20;    // hard cap, must be <= 20
    bool column_scaling = false; // printed formulas are the tested path
    Vec x0;                      // optional user start, tried first each round
    double round_tol = 1e-4;
    double dedupe_tol = 1e-6;
};

struct FoundSolution {
    Vec x;
    std::vector<long long> rounded;
    double residual_norm;   // ||f(x) - targets||_inf of the penalized system
};

struct AttemptLog {
    int round;
    int attempt;
    double eps0;
    int iterations;
    // "new": verified solution; "dup": converged near a known solution;
    // "stationary": converged but failed integer verification; "maxiter".
    std::string outcome;
};

struct IterRecord {
    double eps, tau, rho;
};

struct SolveRun {
    std::vector<FoundSolution> found;
    std::vector<std::vector<long long>> rounded;
    std::vector<AttemptLog> restart_log;
    std::vector<std::vector<IterRecord>> traces;   // one per accepted solution
    int discarded_stationary = 0;
    bool exhausted_extractions = false;
};

/// Appends the reals-to-integers (sum_j sin^2(pi x_j)) or reals-to-primes
/// (sum_j sin^2(pi p^{-1}(x_j))) residual row.  primes mode needs a facade
/// and a domain inside [2, inf)^n.
ResidualSystem build_penalty(const ResidualSystem& base, PenaltyKind kind,
                             const PrimeFunction* pinv);

/// Product of deflation factors (1 - exp(-||x - s||_2))^{-1} over found
/// solutions; 1 for an empty list, capped at 1e12.
double extractor_product(const Vec& x, const std::vector<Vec>& found);

struct RgnStepResult {
    Vec x_next;
    double eps, tau, rho;
};

/// One iteration of the autoregularized Gauss-Newton process:
///   (J^T J + eps_k I) dx = -(prod extractors) * J^T (f(x) - targets),
///   eps_k = (sqrt(tau_k^2 + 4 N rho_k) - tau_k) / 2,
/// solved through the singular value decomposition of J; the step is clamped
/// into the domain box componentwise.
RgnStepResult rgn_step(const ResidualSystem& sys, const Vec& x, double n_factor,
                       const std::vector<Vec>& deflated = {}, bool column_scaling = false);

/// Rounds x to the nearest integer tuple (within round_tol per coordinate),
/// requires primality per coordinate in primes mode, and accepts only tuples
/// that satisfy the base rows exactly in integer arithmetic.
std::optional<std::vector<long long>> verify_rounded(const Vec& x, const ResidualSystem& base,
                                                     PenaltyKind kind, const PrimeTable* table,
                                                     double round_tol = 1e-4);

/// Deflated multi-start search for every solution in the domain box.
/// Each extraction round retries from cfg.restarts starting points crossed
/// with the eps0 table; the first verified new solution opens the next round,
/// and a fully empty round (or max_extractions) stops the run.  Identical
/// seeds give identical runs.
SolveRun solve_all(const ResidualSystem& base, PenaltyKind kind, const RgnConfig& cfg,
                   const PrimeFunction* pinv);

/// x1^2 + x2^2 = x3^2 + 1 over [2,100]^3.
ResidualSystem quasi_pythagorean_system();

/// Same with the twin constraint x3 - x1 = 2 appended.
ResidualSystem quasi_pythagorean_twin_system();

/// Generic polynomial residual: sum of c * prod_j x_j^powers[j] terms.
struct Monomial {
    long long c;
    std::vector<int> powers;
};
struct PolyResidual {
    std::vector<Monomial> terms;
    long long target = 0;
};
ResidualSystem polynomial_system(const std::vector<PolyResidual>& residuals, Box domain);

}  // namespace primespline
