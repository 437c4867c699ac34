#include "primespline/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "primespline/quad_spline.hpp"

namespace primespline {

namespace {

// Gauss-Kronrod 7-15 rule (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double fsum = f(c - dx) + f(c + dx);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    value = resk * h;
    // |K15 - G7| badly overestimates the K15 error for smooth integrands,
    // which just means a few extra splits here.
    err = std::abs((resk - resg) * h);
}

// Adaptive bisection; abs_tol is distributed over subintervals.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol, int depth = 0) {
    double value, err;
    gk15(f, a, b, value, err);
    // Second clause: stop once the estimate is at rounding level for this panel.
    if (err <= abs_tol || err <= 64.0 * 2.220446049250313e-16 * std::abs(value) || depth >= 40)
        return value;
    const double mid = 0.5 * (a + b);
    return integrate_adaptive(f, a, mid, 0.5 * abs_tol, depth + 1) +
           integrate_adaptive(f, mid, b, 0.5 * abs_tol, depth + 1);
}

double inv_log(double t) { return 1.0 / std::log(t); }

// Cumulative li checkpoints at powers of two: kLiOctave[k] = li(2^k), k = 1..62.
const std::vector<double>& li_octaves() {
    static const std::vector<double> cache = [] {
        std::vector<double> cum(63, 0.0);
        for (int k = 2; k <= 62; ++k) {
            const double lo = std::ldexp(1.0, k - 1);
            const double hi = std::ldexp(1.0, k);
            const double tol = 1e-13 * std::max(1.0, cum[k - 1]);
            cum[k] = cum[k - 1] + integrate_adaptive(inv_log, lo, hi, tol);
        }
        return cum;
    }();
    return cache;
}

}  // namespace

double prime_asymptote(double x) {
    constexpr double e = 2.718281828459045235;
    if (!(x > e)) throw std::domain_error("prime_asymptote: requires x > e");
    const double u = std::log(x);
    const double m = std::log(u);
    return x * (u + m - 1.0 + (m - 2.0) / u - (0.5 * m * m - 3.0 * m + 5.5) / (u * u));
}

double prime_asymptote_deriv(double x) {
    constexpr double e = 2.718281828459045235;
    if (!(x > e)) throw std::domain_error("prime_asymptote_deriv: requires x > e");
    const double u = std::log(x);
    const double m = std::log(u);
    return u + m + (m - 1.0) / u + (-0.5 * m * m + 2.0 * m - 2.5) / (u * u) +
           (m * m - 7.0 * m + 14.0) / (u * u * u);
}

double log_integral(double x) {
    if (!(x >= 2.0)) throw std::domain_error("log_integral: requires x >= 2");
    if (x == 2.0) return 0.0;
    const auto& cum = li_octaves();
    int k = std::min(62, std::max(1, static_cast<int>(std::floor(std::log2(x)))));
    double base = std::ldexp(1.0, k);
    if (base > x) {
        --k;
        base = std::ldexp(1.0, k);
    }
    const double tol = std::max(1e-13 * cum[k], 1e-13);
    return cum[k] + integrate_adaptive(inv_log, base, x, tol);
}

MobiusCache::MobiusCache(std::int64_t n_max) {
    if (n_max < 1) throw std::domain_error("mobius: n_max must be >= 1");
    mu_.assign(static_cast<std::size_t>(n_max) + 1, 0);
    std::vector<std::int64_t> spf(static_cast<std::size_t>(n_max) + 1, 0);
    std::vector<std::int64_t> primes;
    mu_[1] = 1;
    for (std::int64_t i = 2; i <= n_max; ++i) {
        if (spf[i] == 0) {
            spf[i] = i;
            primes.push_back(i);
            mu_[i] = -1;
        }
        for (std::int64_t p : primes) {
            if (p > spf[i] || i * p > n_max) break;
            spf[i * p] = p;
            mu_[i * p] = (i % p == 0) ? 0 : -mu_[i];
        }
    }
}

int MobiusCache::at(std::int64_t n) const {
    if (n < 1 || n >= static_cast<std::int64_t>(mu_.size()))
        throw std::out_of_range("mobius: n = " + std::to_string(n) + " outside cache");
    return mu_[static_cast<std::size_t>(n)];
}

MobiusCache mobius_sieve(std::int64_t n_max) { return MobiusCache(n_max); }

double riemann_r(double x) {
    if (!(x >= 2.0)) throw std::domain_error("riemann_r: requires x >= 2");
    static const MobiusCache mu(64);
    const double lx = std::log(x);
    double sum = 0.0;
    for (std::int64_t n = 1; n <= 64; ++n) {
        const double root = std::exp(lx / static_cast<double>(n));
        if (root < 2.0) break;
        const int m = mu.at(n);
        if (m == 0) continue;
        sum += static_cast<double>(m) / static_cast<double>(n) * log_integral(root);
    }
    return sum;
}

AsymptoteSewing make_sewing(std::int64_t sew_index, double sew_x, double spline_value,
                            double spline_deriv) {
    return AsymptoteSewing{sew_index, sew_x, spline_value - prime_asymptote(sew_x),
                           spline_deriv - prime_asymptote_deriv(sew_x)};
}

AsymptoteSewing make_sewing(const PrimeTable& table) {
    if (table.size() < 4) throw std::domain_error("make_sewing: table too short (need >= 4 primes)");
    const double sew_x = static_cast<double>(table.size()) - 0.5;
    return make_sewing(table.size(), sew_x, quad_eval(sew_x, table), quad_deriv(sew_x, table));
}

}  // namespace primespline
