#ifndef KEPLERGEO_STENCILS_HPP
#define KEPLERGEO_STENCILS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "keplergeo/errors.hpp"

namespace keplergeo {

/// Fornberg finite-difference weights: given nodes x and evaluation point z,
/// returns weights w such that sum_i w[i] f(x[i]) approximates f^(m)(z) to
/// the order permitted by the node count.
inline std::vector<double> fd_weights(double z, std::span<const double> x, int m) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = static_cast<int>(std::min<std::size_t>(i, m));
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int kk = mn; kk >= 1; --kk)
                    c[i][kk] = c1 * (kk * c[i - 1][kk - 1] - c5 * c[i - 1][kk]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int kk = mn; kk >= 1; --kk)
                c[j][kk] = (c4 * c[j][kk] - kk * c[j][kk - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

/// First derivative of sampled data y(t) on an arbitrary strictly increasing
/// grid, one value per sample, using a sliding window of `width` nodes
/// (default 5, fourth-order accurate in the interior).
inline std::vector<double> sampled_derivative(std::span<const double> t,
                                              std::span<const double> y,
                                              std::size_t width = 5) {
    const std::size_t n = t.size();
    if (n != y.size() || n < 2) throw AlignmentError("sampled_derivative: bad input sizes");
    width = std::min(width, n);
    std::vector<double> dy(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i >= width / 2 ? i - width / 2 : 0;
        lo = std::min(lo, n - width);
        const auto w = fd_weights(t[i], t.subspan(lo, width), 1);
        double acc = 0.0;
        for (std::size_t j = 0; j < width; ++j) acc += w[j] * y[lo + j];
        dy[i] = acc;
    }
    return dy;
}

/// Running integral of uniformly sampled data by composite Simpson: per
/// sample-interval three-point rules whose pairwise sums telescope to the
/// classic composite rule, so prefix values exist at every node with
/// fourth-order accuracy.  Exact for quadratic integrands.
inline std::vector<double> prefix_simpson(double h, std::span<const double> f) {
    const std::size_t n = f.size();
    if (n < 3) throw ResolutionError("prefix_simpson: need at least 3 samples");
    std::vector<double> acc(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double piece;
        if (j % 2 == 0 && j + 2 < n)
            piece = h / 12.0 * (5.0 * f[j] + 8.0 * f[j + 1] - f[j + 2]);
        else
            piece = h / 12.0 * (-f[j - 1] + 8.0 * f[j] + 5.0 * f[j + 1]);
        acc[j + 1] = acc[j] + piece;
    }
    return acc;
}

}  // namespace keplergeo

#endif
