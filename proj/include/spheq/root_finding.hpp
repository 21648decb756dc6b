#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace spheq {

class BracketError : public std::runtime_error {
public:
    explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

// Brent's method on a sign-changing bracket [a,b].  Returns the abscissa once
// the bracket has shrunk below xtol (plus machine slack) or f hits ftol.
template <class F>
double brent(F&& f, double a, double b, double xtol = 1e-14, double ftol = 0.0,
             int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0))
        throw BracketError("brent: f(a) and f(b) have the same sign");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0 || std::abs(fb) <= ftol) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic interpolation, falling back to secant
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::abs(d) > tol1)
            b += d;
        else
            b += (xm > 0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

}  // namespace spheq
