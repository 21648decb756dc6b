#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace spheq {

// Gauss-Legendre nodes and weights on [-1,1], by Newton iteration on the
// Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
    std::vector<double> x(m), w(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return {x, w};
}

}  // namespace spheq
