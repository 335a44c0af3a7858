#ifndef ROADROUGH_TESTS_ORACLES_HPP
#define ROADROUGH_TESTS_ORACLES_HPP

// Independent reference computations for the tests. Nothing here calls into
// the library; formulas are evaluated a different way from the implementation.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                               double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

/// Density of the F(d1, d2) distribution.
inline double f_density(double x, double d1, double d2) {
    if (x <= 0.0) return 0.0;
    const double log_beta = std::lgamma(d1 / 2) + std::lgamma(d2 / 2) - std::lgamma((d1 + d2) / 2);
    const double log_pdf = (d1 / 2) * std::log(d1) + (d2 / 2) * std::log(d2) + (d1 / 2 - 1) * std::log(x) -
                           ((d1 + d2) / 2) * std::log(d1 * x + d2) - log_beta;
    return std::exp(log_pdf);
}

/// P(X > f) by integrating the density over [f, inf) after mapping it onto [0, 1).
inline double f_upper_tail_numeric(double f, double d1, double d2) {
    auto g = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double x = f + u / (1.0 - u);
        return f_density(x, d1, d2) / ((1.0 - u) * (1.0 - u));
    };
    // Split so the peak near f gets its own panels.
    return integrate(g, 0.0, 0.5) + integrate(g, 0.5, 0.9) + integrate(g, 0.9, 1.0);
}

/// Mean square of A sin(2 pi f t + phi) by a dense Riemann sum over whole periods.
inline double sine_rms_dense(double amplitude, double freq_hz, double phase, int periods = 50,
                             int steps_per_period = 2000) {
    const int n = periods * steps_per_period;
    const double dt = 1.0 / (freq_hz * steps_per_period);
    long double acc = 0.0L;
    for (int i = 0; i < n; ++i) {
        const double v = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * i * dt + phase);
        acc += static_cast<long double>(v) * v;
    }
    return std::sqrt(static_cast<double>(acc / n));
}

struct Line {
    double slope, intercept, r2;
};

/// Least squares from the raw normal equations in long double.
inline Line ols(const std::vector<double>& x, const std::vector<double>& y) {
    long double n = static_cast<long double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        sxy += static_cast<long double>(x[i]) * y[i];
        syy += static_cast<long double>(y[i]) * y[i];
    }
    const long double det = n * sxx - sx * sx;
    const long double slope = (n * sxy - sx * sy) / det;
    const long double intercept = (sxx * sy - sx * sxy) / det;
    const long double r = (n * sxy - sx * sy) / std::sqrt(det * (n * syy - sy * sy));
    return {static_cast<double>(slope), static_cast<double>(intercept), static_cast<double>(r * r)};
}

/// Two-sample Student t with pooled variance.
inline double pooled_t(const std::vector<double>& a, const std::vector<double>& b) {
    auto mean = [](const std::vector<double>& v) {
        long double s = 0;
        for (double x : v) s += x;
        return static_cast<double>(s / v.size());
    };
    auto ss = [](const std::vector<double>& v, double m) {
        long double s = 0;
        for (double x : v) s += (x - m) * (x - m);
        return static_cast<double>(s);
    };
    const double ma = mean(a), mb = mean(b);
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double sp2 = (ss(a, ma) + ss(b, mb)) / (na + nb - 2.0);
    return (ma - mb) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
}

struct OneWay {
    double ss_between, ss_within, f;
};

/// Textbook computing formulas: sums of squares from raw totals.
inline OneWay one_way(const std::vector<std::vector<double>>& groups) {
    long double grand = 0, sumsq = 0, between_raw = 0;
    std::size_t n = 0;
    for (const auto& g : groups) {
        long double t = 0;
        for (double x : g) {
            t += x;
            sumsq += static_cast<long double>(x) * x;
        }
        between_raw += t * t / g.size();
        grand += t;
        n += g.size();
    }
    const long double correction = grand * grand / n;
    const double ssb = static_cast<double>(between_raw - correction);
    const double ssw = static_cast<double>(sumsq - between_raw);
    const double k = static_cast<double>(groups.size());
    return {ssb, ssw, (ssb / (k - 1.0)) / (ssw / (static_cast<double>(n) - k))};
}

}  // namespace oracle

#endif
