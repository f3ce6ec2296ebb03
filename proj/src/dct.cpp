#include "freqaug/dct.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace freqaug {

namespace {

void check_plane(const double* data, int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("dct: empty plane");
    if (!all_finite({data, static_cast<size_t>(rows) * cols}))
        throw std::invalid_argument("dct: non-finite values");
}

// FFTW plan creation is not thread-safe, execution via the new-array
// interface is. Plans are cached per (rows, cols, direction) behind a mutex
// and executed lock-free. FFTW_UNALIGNED keeps the plans valid for any
// caller buffer.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int rows, int cols, bool forward) {
        std::scoped_lock lock(mu_);
        auto key = std::tuple{rows, cols, forward};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::vector<double> in(static_cast<size_t>(rows) * cols);
        std::vector<double> out(in.size());
        fftw_r2r_kind kind = forward ? FFTW_REDFT10 : FFTW_REDFT01;
        fftw_plan plan = fftw_plan_r2r_2d(rows, cols, in.data(), out.data(), kind,
                                          kind, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("dct: fftw plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

double alpha(int k, int n) {
    return k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
}

// Direct evaluation of the transform double sums. Kahan-compensated so the
// oracle's own rounding error stays well under the 1e-9 bar it arbitrates.
Plane naive_transform(const Plane& src, bool forward) {
    check_plane(src.v.data(), src.rows, src.cols);
    const int m_size = src.rows, n_size = src.cols;
    Plane dst(m_size, n_size);

    std::vector<double> cos_row(static_cast<size_t>(m_size) * m_size);
    std::vector<double> cos_col(static_cast<size_t>(n_size) * n_size);
    for (int p = 0; p < m_size; ++p)
        for (int m = 0; m < m_size; ++m)
            cos_row[p * m_size + m] = std::cos(M_PI * (2 * m + 1) * p / (2.0 * m_size));
    for (int q = 0; q < n_size; ++q)
        for (int n = 0; n < n_size; ++n)
            cos_col[q * n_size + n] = std::cos(M_PI * (2 * n + 1) * q / (2.0 * n_size));

    for (int p = 0; p < m_size; ++p) {
        for (int q = 0; q < n_size; ++q) {
            double sum = 0.0, comp = 0.0;
            for (int m = 0; m < m_size; ++m) {
                for (int n = 0; n < n_size; ++n) {
                    double w = forward
                                   ? src.at(m, n)
                                   : alpha(m, m_size) * alpha(n, n_size) * src.at(m, n);
                    double term = w * cos_row[forward ? p * m_size + m : m * m_size + p] *
                                  cos_col[forward ? q * n_size + n : n * n_size + q];
                    double y = term - comp;
                    double t = sum + y;
                    comp = (t - sum) - y;
                    sum = t;
                }
            }
            dst.at(p, q) = forward ? alpha(p, m_size) * alpha(q, n_size) * sum : sum;
        }
    }
    return dst;
}

}  // namespace

void fdct2(const double* src, double* dst, int rows, int cols) {
    check_plane(src, rows, cols);
    fftw_plan plan = PlanCache::instance().get(rows, cols, true);

    std::vector<double> in(src, src + static_cast<size_t>(rows) * cols);
    fftw_execute_r2r(plan, in.data(), dst);

    // REDFT10 computes 4x the unweighted double sum; fold in the
    // orthonormal alpha factors.
    for (int p = 0; p < rows; ++p) {
        double sp = 0.25 * alpha(p, rows);
        for (int q = 0; q < cols; ++q) dst[p * cols + q] *= sp * alpha(q, cols);
    }
}

void idct2(const double* src, double* dst, int rows, int cols) {
    check_plane(src, rows, cols);
    fftw_plan plan = PlanCache::instance().get(rows, cols, false);

    // REDFT01 weighs the k=0 term once and every other term twice, so
    // pre-scale by alpha/1 and alpha/2 respectively.
    std::vector<double> in(static_cast<size_t>(rows) * cols);
    for (int p = 0; p < rows; ++p) {
        double sp = alpha(p, rows) * (p == 0 ? 1.0 : 0.5);
        for (int q = 0; q < cols; ++q) {
            double sq = alpha(q, cols) * (q == 0 ? 1.0 : 0.5);
            in[p * cols + q] = src[p * cols + q] * sp * sq;
        }
    }
    fftw_execute_r2r(plan, in.data(), dst);
}

Plane fdct2(const Plane& plane) {
    Plane out(plane.rows, plane.cols);
    fdct2(plane.v.data(), out.v.data(), plane.rows, plane.cols);
    return out;
}

Plane idct2(const Plane& coeffs) {
    Plane out(coeffs.rows, coeffs.cols);
    idct2(coeffs.v.data(), out.v.data(), coeffs.rows, coeffs.cols);
    return out;
}

Plane fdct2_naive(const Plane& plane) { return naive_transform(plane, true); }
Plane idct2_naive(const Plane& coeffs) { return naive_transform(coeffs, false); }

double energy(std::span<const double> values) {
    if (!all_finite(values)) throw std::invalid_argument("energy: non-finite values");
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        double y = v * v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double energy(const Plane& p) { return energy(std::span<const double>{p.v}); }
double energy(const Image& img) { return energy(std::span<const double>{img.values}); }

}  // namespace freqaug
