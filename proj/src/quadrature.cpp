#include "decay/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "decay/error.hpp"

namespace decay {
namespace {

// Kronrod abscissae and weights of the 15-point rule; the 7-point Gauss rule
// uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUnderflow = std::numeric_limits<double>::min();

struct Segment {
    ScalarFunction g;
    double lo;
    double hi;
};

struct Panel {
    std::size_t segment;
    double lo;
    double hi;
    double value;
    double error;
};

struct WorstFirst {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        // Deterministic tie-break.
        if (x.segment != y.segment) return x.segment > y.segment;
        return x.lo > y.lo;
    }
};

double checked(const ScalarFunction& g, double u) {
    const double v = g(u);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "integrand returned a non-finite value (" << v << ") at mapped point " << u;
        throw NumericalError(msg.str());
    }
    return v;
}

Panel gauss_kronrod(const Segment& s, std::size_t id, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double abs_half = std::abs(half);

    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    const double fc = checked(s.g, centre);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double res_abs = std::abs(res_k);
    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        const double a = checked(s.g, centre - dx);
        const double b = checked(s.g, centre + dx);
        f1[jtw] = a;
        f2[jtw] = b;
        res_g += kWg[j] * (a + b);
        res_k += kWgk[jtw] * (a + b);
        res_abs += kWgk[jtw] * (std::abs(a) + std::abs(b));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        const double a = checked(s.g, centre - dx);
        const double b = checked(s.g, centre + dx);
        f1[jtwm1] = a;
        f2[jtwm1] = b;
        res_k += kWgk[jtwm1] * (a + b);
        res_abs += kWgk[jtwm1] * (std::abs(a) + std::abs(b));
    }
    const double mean = 0.5 * res_k;
    double res_asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    res_asc *= abs_half;
    res_abs *= abs_half;

    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    if (res_abs > kUnderflow / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * res_abs, err);
    }
    return Panel{id, lo, hi, res_k * half, err};
}

bool accepted(double error, double value, const QuadratureOptions& o) {
    return error <= std::max(o.abs_tol, o.rel_tol * std::abs(value));
}

// Global adaptive bisection over all segments at once.
QuadratureResult adapt(const std::vector<Segment>& segments, const QuadratureOptions& options) {
    QuadratureResult result;
    if (segments.empty()) return result;

    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> work;
    std::vector<Panel> done;  // panels too narrow to split further
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        Panel p = gauss_kronrod(segments[i], i, segments[i].lo, segments[i].hi);
        result.evaluations += 15;
        total += p.value;
        total_err += p.error;
        work.push(p);
    }

    std::size_t panels = segments.size();
    std::size_t since_resum = 0;
    bool stalled = false;
    while (!accepted(total_err, total, options)) {
        if (panels >= options.max_panels || work.empty()) break;
        Panel worst = work.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi) ||
            std::abs(worst.hi - worst.lo) <= 4.0 * kEps * std::max(std::abs(worst.lo), std::abs(worst.hi))) {
            stalled = true;
            break;
        }
        work.pop();
        const Segment& s = segments[worst.segment];
        Panel left = gauss_kronrod(s, worst.segment, worst.lo, mid);
        Panel right = gauss_kronrod(s, worst.segment, mid, worst.hi);
        result.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
        ++panels;
        if (++since_resum == 64) {
            // Refresh the running sums to keep cancellation drift out of the test.
            since_resum = 0;
            auto copy = work;
            total = 0.0;
            total_err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                copy.pop();
            }
        }
    }

    while (!work.empty()) {
        done.push_back(work.top());
        work.pop();
    }
    // Fixed summation order makes the result independent of heap history.
    std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) {
        return x.segment != y.segment ? x.segment < y.segment : x.lo < y.lo;
    });
    result.value = 0.0;
    result.error_estimate = 0.0;
    for (const Panel& p : done) {
        result.value += p.value;
        result.error_estimate += p.error;
    }
    result.converged = !stalled && accepted(result.error_estimate, result.value, options);
    return result;
}

void require_exponent(double g, const char* which) {
    if (!(g > -1.0)) {
        std::ostringstream msg;
        msg << which << " endpoint exponent " << g << " is not integrable (need > -1)";
        throw InvalidArgument(msg.str());
    }
}

// Adds segments covering [lo, hi] of f, removing declared endpoint singularities.
void push_finite(std::vector<Segment>& out, const ScalarFunction& f, double lo, double hi,
                 double left_exp, double right_exp) {
    if (!(hi > lo)) return;
    const bool left_sing = left_exp < 0.0;
    const bool right_sing = right_exp < 0.0;
    if (left_sing && right_sing) {
        const double mid = 0.5 * (lo + hi);
        push_finite(out, f, lo, mid, left_exp, 0.0);
        push_finite(out, f, mid, hi, 0.0, right_exp);
        return;
    }
    const double length = hi - lo;
    if (left_sing) {
        const double p = 1.0 / (1.0 + left_exp);
        out.push_back({[f, lo, length, p](double u) {
                           return f(lo + length * std::pow(u, p)) * length * p * std::pow(u, p - 1.0);
                       },
                       0.0, 1.0});
    } else if (right_sing) {
        const double p = 1.0 / (1.0 + right_exp);
        out.push_back({[f, hi, length, p](double u) {
                           return f(hi - length * std::pow(u, p)) * length * p * std::pow(u, p - 1.0);
                       },
                       0.0, 1.0});
    } else {
        out.push_back({f, lo, hi});
    }
}

std::vector<double> interior_points(std::span<const double> breakpoints, double lo, double hi) {
    std::vector<double> pts;
    for (double b : breakpoints) {
        if (std::isfinite(b) && b > lo && b < hi) pts.push_back(b);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

QuadratureResult& operator+=(QuadratureResult& lhs, const QuadratureResult& rhs) {
    lhs.value += rhs.value;
    lhs.error_estimate += rhs.error_estimate;
    lhs.evaluations += rhs.evaluations;
    lhs.converged = lhs.converged && rhs.converged;
    return lhs;
}

QuadratureResult integrate(const ScalarFunction& f, double a, double b, const QuadratureOptions& options,
                           const EndpointBehavior& behavior, std::span<const double> breakpoints) {
    if (!(std::isfinite(a) && std::isfinite(b))) {
        throw InvalidArgument("integrate: limits must be finite; use integrate_semi_infinite");
    }
    if (a > b) throw InvalidArgument("integrate: requires a <= b");
    if (a == b) return {};
    require_exponent(behavior.left_exponent, "left");
    require_exponent(behavior.right_exponent, "right");

    std::vector<double> pts = interior_points(breakpoints, a, b);
    pts.insert(pts.begin(), a);
    pts.push_back(b);
    std::vector<Segment> segments;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double le = i == 0 ? behavior.left_exponent : 0.0;
        const double re = i + 2 == pts.size() ? behavior.right_exponent : 0.0;
        push_finite(segments, f, pts[i], pts[i + 1], le, re);
    }
    return adapt(segments, options);
}

QuadratureResult integrate(const ScalarFunction& f, double a, double b, double tol) {
    return integrate(f, a, b, QuadratureOptions{tol, tol, 10000});
}

QuadratureResult integrate_semi_infinite(const ScalarFunction& f, double a, const QuadratureOptions& options,
                                         const EndpointBehavior& behavior, std::span<const double> breakpoints) {
    if (!std::isfinite(a)) throw InvalidArgument("integrate_semi_infinite: lower limit must be finite");
    require_exponent(behavior.left_exponent, "left");
    const double p = behavior.tail_exponent;
    if (!(p > 1.0)) {
        std::ostringstream msg;
        msg << "integrand decays like x^-" << p << " at infinity; the integral diverges";
        throw InvalidArgument(msg.str());
    }

    const std::vector<double> pts = interior_points(breakpoints, a, std::numeric_limits<double>::infinity());
    std::vector<Segment> segments;
    double start = a;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        push_finite(segments, f, start, pts[i], i == 0 ? behavior.left_exponent : 0.0, 0.0);
        start = pts[i];
    }
    // Tail: x = start + (1-t)/t on t in (0, 1]. A power tail x^-p becomes t^(p-2) at t = 0.
    const double c = start;
    ScalarFunction tail = [f, c](double t) {
        const double x = c + (1.0 - t) / t;
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        return fx / (t * t);
    };
    const double t0_exp = std::isfinite(p) ? std::min(p - 2.0, 0.0) : 0.0;
    const double t1_exp = pts.empty() ? behavior.left_exponent : 0.0;
    push_finite(segments, tail, 0.0, 1.0, t0_exp, t1_exp);
    return adapt(segments, options);
}

QuadratureResult integrate_semi_infinite(const ScalarFunction& f, double a, double tol) {
    return integrate_semi_infinite(f, a, QuadratureOptions{tol, tol, 10000});
}

}  // namespace decay
