#pragma once

#include <cblas.h>

#include <numeric>
#include <stdexcept>
#include <vector>

namespace freqaug::nn {

/// Dense row-major tensor. Shape conventions used by the layers:
/// activations are (N, C, H, W) or (N, D), conv weights (Cout, Cin*Kh*Kw).
template <typename T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
        data.assign(numel(), T(0));
    }

    size_t numel() const {
        size_t n = 1;
        for (int d : shape) {
            if (d < 1) throw std::invalid_argument("tensor dim < 1");
            n *= static_cast<size_t>(d);
        }
        return n;
    }

    int dim(int i) const { return shape.at(i); }
    T* ptr() { return data.data(); }
    const T* ptr() const { return data.data(); }

    void fill(T v) { std::fill(data.begin(), data.end(), v); }
};

// Row-major GEMM: C = alpha * op(A) * op(B) + beta * C.
inline void gemm(bool trans_a, bool trans_b, int m, int n, int k, float alpha,
                 const float* a, int lda, const float* b, int ldb, float beta,
                 float* c, int ldc) {
    cblas_sgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans,
                trans_b ? CblasTrans : CblasNoTrans, m, n, k, alpha, a, lda, b, ldb,
                beta, c, ldc);
}

inline void gemm(bool trans_a, bool trans_b, int m, int n, int k, double alpha,
                 const double* a, int lda, const double* b, int ldb, double beta,
                 double* c, int ldc) {
    cblas_dgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans,
                trans_b ? CblasTrans : CblasNoTrans, m, n, k, alpha, a, lda, b, ldb,
                beta, c, ldc);
}

/// Caps the GEMM thread pool; 1 gives bit-reproducible runs.
void set_blas_threads(int n);

}  // namespace freqaug::nn
