#include "xicor/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace xicor {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw precondition_error("quadrature: tolerances must be positive");
    if (!(truncation >= 8.0))
        throw precondition_error("quadrature: truncation must be at least 8 standard deviations");
}

namespace {

// 15-point Kronrod abscissae (positive half) with the embedded 7-point Gauss
// rule on the odd-indexed nodes; QUADPACK dqk15 constants.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct Panel {
    double lo;
    double hi;
    double integral;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    auto eval = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v))
            throw numeric_error("quadrature: integrand returned a non-finite value");
        return v;
    };

    const double fc = eval(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = eval(center - dx) + eval(center + dx);
        kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return Panel{lo, hi, kronrod, std::fabs(kronrod - gauss)};
}

} // namespace

// Global adaptivity: keep a worklist ordered by panel error and always split
// the worst panel. An initial uniform subdivision keeps narrow features
// (convolution spikes of width sigma) visible to the error estimator.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& spec) {
    spec.validate();
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw precondition_error("quadrature: need finite lo < hi");

    constexpr int kInitialPanels = 16;
    constexpr int kMaxPanels = 4096;

    std::priority_queue<Panel> worklist;
    double integral = 0.0;
    double error = 0.0;
    for (int i = 0; i < kInitialPanels; ++i) {
        const double a = lo + (hi - lo) * i / kInitialPanels;
        const double b = i + 1 == kInitialPanels ? hi : lo + (hi - lo) * (i + 1) / kInitialPanels;
        Panel p = gk15(f, a, b);
        integral += p.integral;
        error += p.error;
        worklist.push(p);
    }

    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::fabs(integral)); };

    while (error > tolerance()) {
        if (static_cast<int>(worklist.size()) >= kMaxPanels)
            throw numeric_error("quadrature: failed to converge (subdivision limit reached)");
        const Panel worst = worklist.top();
        worklist.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi))
            throw numeric_error("quadrature: failed to converge (panel width exhausted)");
        const Panel left = gk15(f, worst.lo, mid);
        const Panel right = gk15(f, mid, worst.hi);
        integral += left.integral + right.integral - worst.integral;
        error += left.error + right.error - worst.error;
        worklist.push(left);
        worklist.push(right);
    }
    return integral;
}

} // namespace xicor
