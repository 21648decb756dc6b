#include "spheq/spheroid.hpp"

#include <algorithm>

namespace spheq {

double lambda_root(double x1, double r, const Spheroid& s) {
    const double a2 = s.a * s.a;
    const double b2 = s.b * s.b;
    double lam;
    if (s.kind() == SpheroidKind::ball) {
        lam = x1 * x1 + r * r - a2;
    } else {
        const double c = s.focal();
        if (s.a < s.b) {
            const double p = std::sqrt(x1 * x1 + (r + c) * (r + c));
            const double q = std::sqrt(x1 * x1 + (r - c) * (r - c));
            lam = 0.25 * (p + q) * (p + q) - b2;
        } else {
            const double p = std::sqrt((x1 + c) * (x1 + c) + r * r);
            const double q = std::sqrt((x1 - c) * (x1 - c) + r * r);
            lam = 0.25 * (p + q) * (p + q) - a2;
        }
    }
    const double scale = std::max({a2, b2, x1 * x1 + r * r});
    if (lam < -64 * std::numeric_limits<double>::epsilon() * scale)
        throw std::domain_error("lambda_root: point is interior to the spheroid");
    return std::max(lam, 0.0);
}

double lambda_root(const Eigen::Ref<const Eigen::VectorXd>& x, const Spheroid& s) {
    const auto [x1, r] = meridian(x);
    return lambda_root(x1, r, s);
}

SpheroidalPoint to_spheroidal(double x1, double r, const Spheroid& s) {
    if (s.kind() == SpheroidKind::ball)
        throw std::domain_error("to_spheroidal: coordinates degenerate for a ball");
    const double c = s.focal();
    const double lam = lambda_root(x1, r, s);
    // lambda = c^2 z^2 - a^2 in both kinds
    const double z = std::sqrt(lam + s.a * s.a) / c;
    double rho = x1 / (c * z);
    rho = std::clamp(rho, -1.0, 1.0);
    return {z, rho, c, s.kind()};
}

std::pair<double, double> spheroidal_to_meridian(const SpheroidalPoint& p) {
    const double x1 = p.c * p.z * p.rho;
    const double w = (p.kind == SpheroidKind::oblate) ? (1.0 + p.z * p.z) : (p.z * p.z - 1.0);
    const double r = p.c * std::sqrt(std::max(w * (1.0 - p.rho * p.rho), 0.0));
    return {x1, r};
}

}  // namespace spheq
