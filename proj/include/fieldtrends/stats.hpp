#pragma once

#include <cmath>
#include <limits>

namespace fieldtrends {

namespace detail {

// Continued fraction for the regularized incomplete beta, evaluated with the
// modified Lentz algorithm. Converges fast for x < (a+1)/(a+b+2); callers use
// the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) to stay in that region.
inline double beta_cont_frac(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 3e-16;
    constexpr double fpmin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_prefactor = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_prefactor);
    double r;
    if (x < (a + 1.0) / (a + b + 2.0)) {
        r = bt * detail::beta_cont_frac(a, b, x) / a;
    } else {
        r = 1.0 - bt * detail::beta_cont_frac(b, a, 1.0 - x) / b;
    }
    if (r < 0.0) return 0.0;
    if (r > 1.0) return 1.0;
    return r;
}

// Two-sided p-value of a Student-t statistic with df degrees of freedom,
// via p = I_{df/(df+t^2)}(df/2, 1/2). An infinite statistic gives p = 0.
inline double student_t_two_sided_p(double t, double df) {
    if (std::isnan(t) || df <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return 0.0;
    const double x = df / (df + t * t);
    return regularized_incomplete_beta(0.5 * df, 0.5, x);
}

}  // namespace fieldtrends
