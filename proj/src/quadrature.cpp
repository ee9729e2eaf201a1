#include "decosim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace decosim {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
constexpr double kWg[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

struct PanelResult {
    double value = 0.0;
    double error = 0.0;
};

PanelResult gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double fv[15];
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));
    }
    resasc *= std::abs(h);

    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    return {resk * h, err};
}

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace

double integrate(const Integrand& f, double a, double b, std::vector<double> breakpoints,
                 const QuadratureControls& ctl) {
    if (a == b) return 0.0;
    if (b < a) return -integrate(f, b, a, std::move(breakpoints), ctl);

    breakpoints.erase(std::remove_if(breakpoints.begin(), breakpoints.end(),
                                     [a, b](double x) { return !(x > a && x < b); }),
                      breakpoints.end());
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    std::priority_queue<Interval> queue;
    double total = 0.0;
    double total_err = 0.0;
    double lo = a;
    for (std::size_t i = 0; i <= breakpoints.size(); ++i) {
        const double hi = i < breakpoints.size() ? breakpoints[i] : b;
        const PanelResult r = gk15(f, lo, hi);
        queue.push({lo, hi, r.value, r.error});
        total += r.value;
        total_err += r.error;
        lo = hi;
    }

    int splits = 0;
    while (total_err > std::max(ctl.abs_tol, ctl.rel_tol * std::abs(total))) {
        if (splits >= ctl.max_subdivisions) {
            throw QuadratureError("adaptive quadrature did not converge within the subdivision budget");
        }
        const Interval worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; accept its estimate
            total_err -= worst.error;
            continue;
        }
        const PanelResult left = gk15(f, worst.a, mid);
        const PanelResult right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.value, left.error});
        queue.push({mid, worst.b, right.value, right.error});
        ++splits;
    }
    return total;
}

double integrate(const Integrand& f, double a, double b, const QuadratureControls& ctl) {
    return integrate(f, a, b, {}, ctl);
}

double integrate_decaying_tail(const Integrand& f, double a, double osc_scale,
                               const QuadratureControls& ctl) {
    double width_cap = std::numeric_limits<double>::infinity();
    if (osc_scale > 0.0) {
        // keep roughly max_subdivisions/16 oscillation cycles per block
        width_cap = (ctl.max_subdivisions / 16.0) * (2.0 * std::numbers::pi / osc_scale);
    }

    double total = 0.0;
    double lo = a;
    double width = std::min(std::max(a, 1.0), width_cap);
    int consecutive_small = 0;
    for (int block = 0; block < 4000; ++block) {
        const double hi = lo + width;
        const double contribution = integrate(f, lo, hi, ctl);
        total += contribution;
        const double target = std::max(ctl.abs_tol, ctl.rel_tol * std::abs(total));
        if (std::abs(contribution) < 0.25 * target) {
            if (++consecutive_small >= 2) return total;
        } else {
            consecutive_small = 0;
        }
        lo = hi;
        width = std::min(2.0 * width, width_cap);
    }
    throw QuadratureError("semi-infinite quadrature tail did not decay");
}

}  // namespace decosim
