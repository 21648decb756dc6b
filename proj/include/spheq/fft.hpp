#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace spheq {

// Iterative radix-2 complex FFT (size must be a power of two).  Forward uses
// the e^{-2 pi i} convention; inverse is unscaled (divide by n outside).
inline void fft_inplace(std::complex<double>* a, std::size_t n, bool inverse) {
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: size must be a power of 2");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        tw[k] = std::polar(1.0, sign * 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n));
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> w = tw[k * stride];
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

}  // namespace spheq
