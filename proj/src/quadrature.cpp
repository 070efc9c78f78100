#include "ma1est/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ma1est {

namespace {

// QUADPACK 15-point Kronrod abscissae (positive half) and weights, with
// the embedded 7-point Gauss weights on the shared nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Interval {
    double a, b, value, error;
};

// One G7-K15 panel; returns the K15 value with |K15-G7| based error.
Interval gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(mid);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;

    const double diff = std::fabs(kronrod - gauss);
    // QUADPACK-style sharpened estimate; never below the raw difference
    // scaled to double precision.
    double err = diff;
    if (diff > 0.0) err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return {a, b, kronrod, err};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, int max_intervals) {
    QuadratureResult out;
    if (a == b) return out;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::vector<Interval> stack;
    stack.push_back(gk15(f, a, b));
    const double total_len = b - a;

    double value = 0.0;
    double error = 0.0;
    int used = 1;
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        const double share = abs_tol * (iv.b - iv.a) / total_len;
        if (iv.error <= share || used >= max_intervals ||
            iv.b - iv.a < 1e-14 * (1.0 + std::fabs(iv.a))) {
            if (iv.error > share) out.converged = false;
            value += iv.value;
            error += iv.error;
            continue;
        }
        const double mid = 0.5 * (iv.a + iv.b);
        stack.push_back(gk15(f, iv.a, mid));
        stack.push_back(gk15(f, mid, iv.b));
        used += 2;
    }
    out.value = sign * value;
    out.error = error;
    return out;
}

QuadratureResult integrate_segmented(const std::function<double(double)>& f,
                                     double a, double b,
                                     const std::vector<double>& breakpoints,
                                     double abs_tol) {
    std::vector<double> knots{a, b};
    for (double x : breakpoints) {
        if (x > a && x < b) knots.push_back(x);
    }
    std::sort(knots.begin(), knots.end());

    QuadratureResult out;
    const double total_len = b - a;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double share =
            std::max(abs_tol * (knots[i + 1] - knots[i]) / total_len, 1e-16);
        QuadratureResult part = integrate(f, knots[i], knots[i + 1], share);
        out.value += part.value;
        out.error += part.error;
        out.converged = out.converged && part.converged;
    }
    return out;
}

} // namespace ma1est
