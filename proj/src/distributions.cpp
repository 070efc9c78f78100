#include "ma1est/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ma1est {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int max_iter = 400;
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

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_pdf(double nu, double x) {
    const double lc = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                      0.5 * std::log(nu * std::numbers::pi);
    return std::exp(lc - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
}

double student_t_cdf(double nu, double x) {
    if (x == 0.0) return 0.5;
    const double tail = 0.5 * reg_inc_beta(0.5 * nu, 0.5, nu / (nu + x * x));
    return x > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double nu, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("student_t quantile: p must lie in (0,1)");
    if (p == 0.5) return 0.0;

    // Cornish-Fisher start from the normal quantile.
    const double z = normal_quantile(p);
    double x = z + (z * z * z + z) / (4.0 * nu) +
               (5.0 * std::pow(z, 5) + 16.0 * z * z * z + 3.0 * z) /
                   (96.0 * nu * nu);

    // Bracket the root, expanding geometrically if the start is off.
    double lo = x - 1.0, hi = x + 1.0;
    double step = 1.0;
    while (student_t_cdf(nu, lo) > p) {
        lo -= step;
        step *= 2.0;
    }
    step = 1.0;
    while (student_t_cdf(nu, hi) < p) {
        hi += step;
        step *= 2.0;
    }
    x = std::min(std::max(x, lo), hi);

    // Safeguarded Newton on the CDF.
    for (int it = 0; it < 100; ++it) {
        const double err = student_t_cdf(nu, x) - p;
        if (err > 0.0) {
            hi = x;
        } else if (err < 0.0) {
            lo = x;
        } else {
            return x;
        }
        const double dens = student_t_pdf(nu, x);
        double next = x - err / dens;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 1e-15 * (1.0 + std::fabs(x))) return next;
        x = next;
    }
    return x;
}

// E T^{2m} = nu^m (2m-1)!! / prod_{i=1..m} (nu - 2i), finite for nu > 2m.
double student_t_even_moment(double nu, int m) {
    if (nu <= 2.0 * m) return kInf;
    double dfact = 1.0;
    for (int i = 1; i <= m; ++i) dfact *= 2.0 * i - 1.0;
    double denom = 1.0;
    for (int i = 1; i <= m; ++i) denom *= nu - 2.0 * i;
    return std::pow(nu, m) * dfact / denom;
}

double logistic_cdf(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double logistic_pdf(double x) {
    const double e = std::exp(-std::fabs(x));
    const double d = 1.0 + e;
    return e / (d * d);
}

} // namespace

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie in (0,1)");

    // Acklam's rational approximation, then one Halley step against the
    // exact CDF brings the result to full double precision.
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;

    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double err = normal_cdf(x) - p;
    const double u = err * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

bool InnovationDistribution::has_finite_eighth_moment() const {
    return std::isfinite(eighth_moment);
}

std::pair<double, double> InnovationDistribution::effective_support(
    double tail_mass) const {
    return {quantile(tail_mass), quantile(1.0 - tail_mass)};
}

InnovationDistribution make_normal() {
    InnovationDistribution d;
    d.name = "normal";
    d.density = normal_pdf;
    d.density_derivative = [](double x) { return -x * normal_pdf(x); };
    d.cdf = normal_cdf;
    d.quantile = normal_quantile;
    d.second_moment = 1.0;
    d.eighth_moment = 105.0;  // 7!!
    d.sup_abs_density_derivative = normal_pdf(1.0);  // |g'| peaks at x = +-1
    return d;
}

InnovationDistribution make_student_t(double nu) {
    if (!(nu > 2.0))
        throw std::invalid_argument(
            "make_student_t: need nu > 2 for a finite innovation variance");
    InnovationDistribution d;
    d.name = "student_t:" + std::to_string(nu);
    // Trim trailing zeros from the default formatting.
    while (d.name.find('.') != std::string::npos &&
           (d.name.back() == '0' || d.name.back() == '.')) {
        const bool dot = d.name.back() == '.';
        d.name.pop_back();
        if (dot) break;
    }
    d.density = [nu](double x) { return student_t_pdf(nu, x); };
    d.density_derivative = [nu](double x) {
        return -student_t_pdf(nu, x) * (nu + 1.0) * x / (nu + x * x);
    };
    d.cdf = [nu](double x) { return student_t_cdf(nu, x); };
    d.quantile = [nu](double p) { return student_t_quantile(nu, p); };
    d.second_moment = student_t_even_moment(nu, 1);
    d.eighth_moment = student_t_even_moment(nu, 4);
    // |g'| peaks at x* = sqrt(nu/(nu+2)).
    const double xs = std::sqrt(nu / (nu + 2.0));
    d.sup_abs_density_derivative =
        student_t_pdf(nu, xs) * (nu + 1.0) * xs / (nu + xs * xs);
    return d;
}

InnovationDistribution make_logistic() {
    InnovationDistribution d;
    d.name = "logistic";
    d.density = logistic_pdf;
    d.density_derivative = [](double x) {
        return logistic_pdf(x) * (1.0 - 2.0 * logistic_cdf(x));
    };
    d.cdf = logistic_cdf;
    d.quantile = [](double p) {
        if (!(p > 0.0 && p < 1.0))
            throw std::domain_error("logistic quantile: p must lie in (0,1)");
        return std::log(p) - std::log1p(-p);
    };
    const double pi2 = std::numbers::pi * std::numbers::pi;
    d.second_moment = pi2 / 3.0;
    d.eighth_moment = 127.0 * pi2 * pi2 * pi2 * pi2 / 15.0;
    // max |G(1-G)(1-2G)| over G in (0,1) is 1/(6 sqrt 3).
    d.sup_abs_density_derivative = 1.0 / (6.0 * std::numbers::sqrt3);
    return d;
}

InnovationDistribution make_distribution(const std::string& id) {
    if (id == "normal") return make_normal();
    if (id == "logistic") return make_logistic();
    if (id == "student_t") return make_student_t(9.0);
    const std::string prefix = "student_t:";
    if (id.rfind(prefix, 0) == 0) {
        const std::string arg = id.substr(prefix.size());
        std::size_t pos = 0;
        double nu = 0.0;
        try {
            nu = std::stod(arg, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("make_distribution: bad degrees of freedom in '" + id + "'");
        }
        if (pos != arg.size())
            throw std::invalid_argument("make_distribution: bad degrees of freedom in '" + id + "'");
        return make_student_t(nu);
    }
    throw std::invalid_argument(
        "make_distribution: unknown identifier '" + id +
        "' (expected normal, student_t[:<nu>], logistic)");
}

} // namespace ma1est
