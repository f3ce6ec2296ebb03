#pragma once

#include <span>

#include "freqaug/image.hpp"

namespace freqaug {

// Orthonormal 2D DCT-II / DCT-III on one full-size block. The forward
// transform of an M×N plane A is
//
//   B[p][q] = a(p,M) a(q,N) sum_{m,n} A[m][n]
//             cos(pi (2m+1) p / 2M) cos(pi (2n+1) q / 2N)
//
// with a(0,M) = sqrt(1/M) and a(p,M) = sqrt(2/M) for p >= 1; the inverse
// applies the same weights inside the double sum. With this scaling the
// transform is orthonormal, so energy is conserved and idct2(fdct2(x)) == x
// up to rounding.
//
// fdct2/idct2 run in O(MN (log M + log N)) via separable fast cosine
// transforms. fdct2_naive/idct2_naive evaluate the double sums directly
// (O(M^2 N^2)) with compensated accumulation and exist as the independent
// cross-check for the fast path.
//
// All functions reject empty planes and non-finite values.

Plane fdct2(const Plane& plane);
Plane idct2(const Plane& coeffs);

Plane fdct2_naive(const Plane& plane);
Plane idct2_naive(const Plane& coeffs);

/// In-place transforms on a raw row-major buffer (used by the augmentation
/// hot path to avoid copies). rows, cols >= 1; src and dst may alias.
void fdct2(const double* src, double* dst, int rows, int cols);
void idct2(const double* src, double* dst, int rows, int cols);

/// Sum of squared values. Identical for a plane and its transform
/// (Parseval, orthonormal scaling).
double energy(std::span<const double> values);
double energy(const Plane& p);
double energy(const Image& img);

}  // namespace freqaug
