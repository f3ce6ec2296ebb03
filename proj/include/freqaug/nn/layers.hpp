#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "freqaug/nn/tensor.hpp"
#include "freqaug/rng.hpp"

namespace freqaug::nn {

/// Per-forward intermediates a layer needs for its backward pass. One
/// context per layer per batch; owned by the caller so layers stay
/// reusable across threads.
template <typename T>
struct LayerContext {
    Tensor<T> saved;            // layer-specific (input, col matrix, mask, ...)
    std::vector<int> indices;   // maxpool argmax positions
    std::vector<int> in_shape;  // shape of the forward input
};

/// References into a layer's parameters and their gradient slots.
template <typename T>
struct ParamRef {
    std::string name;
    Tensor<T>* value;
    Tensor<T>* grad;
};

template <typename T>
class Layer {
public:
    virtual ~Layer() = default;
    virtual std::string name() const = 0;

    /// dropout_seed feeds only stochastic layers; deterministic layers
    /// ignore it. Gradients are written (not accumulated) by backward.
    virtual Tensor<T> forward(const Tensor<T>& x, LayerContext<T>& ctx, bool training,
                              uint64_t dropout_seed, T dropout_p) = 0;
    virtual Tensor<T> backward(const Tensor<T>& dy, const LayerContext<T>& ctx) = 0;

    virtual std::vector<ParamRef<T>> params() { return {}; }
    virtual std::vector<int> output_shape(const std::vector<int>& in) const = 0;
};

// --- 3x3 same-padding convolution ---------------------------------------

template <typename T>
class Conv3x3 : public Layer<T> {
public:
    Conv3x3(int in_channels, int out_channels, std::string name)
        : in_c_(in_channels), out_c_(out_channels), name_(std::move(name)),
          weight_({out_channels, in_channels * 9}), bias_({out_channels}),
          dweight_(weight_.shape), dbias_(bias_.shape) {}

    std::string name() const override { return name_; }

    void init_he(uint64_t seed) {
        auto rng = make_rng(seed);
        std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / (in_c_ * 9)));
        for (T& w : weight_.data) w = static_cast<T>(normal(rng));
        bias_.fill(T(0));
    }

    std::vector<int> output_shape(const std::vector<int>& in) const override {
        return {in[0], out_c_, in[2], in[3]};
    }

    Tensor<T> forward(const Tensor<T>& x, LayerContext<T>& ctx, bool, uint64_t,
                      T) override {
        const int n = x.dim(0), h = x.dim(2), w = x.dim(3);
        if (x.dim(1) != in_c_) throw std::invalid_argument(name_ + ": channel mismatch");
        ctx.in_shape = x.shape;
        const int hw = h * w, k = in_c_ * 9;

        Tensor<T> out({n, out_c_, h, w});
        ctx.saved = Tensor<T>({n, k, hw});  // unfolded input, kept for backward
        for (int img = 0; img < n; ++img) {
            T* col = ctx.saved.ptr() + static_cast<size_t>(img) * k * hw;
            im2col(x.ptr() + static_cast<size_t>(img) * in_c_ * hw, h, w, col);
            // out[img] = W (out_c x k) * col (k x hw)
            gemm(false, false, out_c_, hw, k, T(1), weight_.ptr(), k, col, hw, T(0),
                 out.ptr() + static_cast<size_t>(img) * out_c_ * hw, hw);
            T* o = out.ptr() + static_cast<size_t>(img) * out_c_ * hw;
            for (int c = 0; c < out_c_; ++c)
                for (int i = 0; i < hw; ++i) o[c * hw + i] += bias_.data[c];
        }
        return out;
    }

    Tensor<T> backward(const Tensor<T>& dy, const LayerContext<T>& ctx) override {
        const int n = ctx.in_shape[0], h = ctx.in_shape[2], w = ctx.in_shape[3];
        const int hw = h * w, k = in_c_ * 9;
        dweight_.fill(T(0));
        dbias_.fill(T(0));
        Tensor<T> dx({n, in_c_, h, w});
        std::vector<T> dcol(static_cast<size_t>(k) * hw);
        for (int img = 0; img < n; ++img) {
            const T* col = ctx.saved.ptr() + static_cast<size_t>(img) * k * hw;
            const T* g = dy.ptr() + static_cast<size_t>(img) * out_c_ * hw;
            // dW += dY * col^T ; dX via folded W^T * dY
            gemm(false, true, out_c_, k, hw, T(1), g, hw, col, hw, T(1),
                 dweight_.ptr(), k);
            for (int c = 0; c < out_c_; ++c) {
                T s = 0;
                for (int i = 0; i < hw; ++i) s += g[c * hw + i];
                dbias_.data[c] += s;
            }
            gemm(true, false, k, hw, out_c_, T(1), weight_.ptr(), k, g, hw, T(0),
                 dcol.data(), hw);
            col2im(dcol.data(), h, w,
                   dx.ptr() + static_cast<size_t>(img) * in_c_ * hw);
        }
        return dx;
    }

    std::vector<ParamRef<T>> params() override {
        return {{name_ + ".weight", &weight_, &dweight_},
                {name_ + ".bias", &bias_, &dbias_}};
    }

private:
    // zero-padded 3x3 unfold: col[(c*9 + ky*3 + kx)][y*w + x]
    void im2col(const T* src, int h, int w, T* col) const {
        const int hw = h * w;
        for (int c = 0; c < in_c_; ++c)
            for (int ky = 0; ky < 3; ++ky)
                for (int kx = 0; kx < 3; ++kx) {
                    T* dst = col + ((c * 9 + ky * 3 + kx) * static_cast<size_t>(hw));
                    for (int y = 0; y < h; ++y) {
                        int sy = y + ky - 1;
                        if (sy < 0 || sy >= h) {
                            std::fill(dst + y * w, dst + (y + 1) * w, T(0));
                            continue;
                        }
                        for (int x = 0; x < w; ++x) {
                            int sx = x + kx - 1;
                            dst[y * w + x] =
                                (sx < 0 || sx >= w) ? T(0) : src[c * hw + sy * w + sx];
                        }
                    }
                }
    }

    void col2im(const T* col, int h, int w, T* dst) const {
        const int hw = h * w;
        std::fill(dst, dst + static_cast<size_t>(in_c_) * hw, T(0));
        for (int c = 0; c < in_c_; ++c)
            for (int ky = 0; ky < 3; ++ky)
                for (int kx = 0; kx < 3; ++kx) {
                    const T* src = col + ((c * 9 + ky * 3 + kx) * static_cast<size_t>(hw));
                    for (int y = 0; y < h; ++y) {
                        int sy = y + ky - 1;
                        if (sy < 0 || sy >= h) continue;
                        for (int x = 0; x < w; ++x) {
                            int sx = x + kx - 1;
                            if (sx >= 0 && sx < w) dst[c * hw + sy * w + sx] += src[y * w + x];
                        }
                    }
                }
    }

    int in_c_, out_c_;
    std::string name_;
    Tensor<T> weight_, bias_, dweight_, dbias_;
};

// --- ReLU ----------------------------------------------------------------

template <typename T>
class ReLU : public Layer<T> {
public:
    explicit ReLU(std::string name) : name_(std::move(name)) {}
    std::string name() const override { return name_; }

    std::vector<int> output_shape(const std::vector<int>& in) const override { return in; }

    Tensor<T> forward(const Tensor<T>& x, LayerContext<T>& ctx, bool, uint64_t,
                      T) override {
        ctx.in_shape = x.shape;
        Tensor<T> out(x.shape);
        for (size_t i = 0; i < x.data.size(); ++i)
            out.data[i] = x.data[i] > T(0) ? x.data[i] : T(0);
        ctx.saved = out;  // positive mask is recoverable from the output
        return out;
    }

    Tensor<T> backward(const Tensor<T>& dy, const LayerContext<T>& ctx) override {
        Tensor<T> dx(dy.shape);
        for (size_t i = 0; i < dy.data.size(); ++i)
            dx.data[i] = ctx.saved.data[i] > T(0) ? dy.data[i] : T(0);
        return dx;
    }

private:
    std::string name_;
};

// --- 2x2 stride-2 max pooling --------------------------------------------

template <typename T>
class MaxPool2x2 : public Layer<T> {
public:
    explicit MaxPool2x2(std::string name) : name_(std::move(name)) {}
    std::string name() const override { return name_; }

    std::vector<int> output_shape(const std::vector<int>& in) const override {
        return {in[0], in[1], in[2] / 2, in[3] / 2};
    }

    Tensor<T> forward(const Tensor<T>& x, LayerContext<T>& ctx, bool, uint64_t,
                      T) override {
        const int n = x.dim(0), c = x.dim(1), h = x.dim(2), w = x.dim(3);
        if (h < 2 || w < 2) throw std::invalid_argument(name_ + ": input too small");
        const int oh = h / 2, ow = w / 2;
        ctx.in_shape = x.shape;
        Tensor<T> out({n, c, oh, ow});
        ctx.indices.assign(out.numel(), 0);
        size_t oi = 0;
        for (int img = 0; img < n; ++img)
            for (int ch = 0; ch < c; ++ch) {
                const T* p = x.ptr() + (static_cast<size_t>(img) * c + ch) * h * w;
                size_t base = (static_cast<size_t>(img) * c + ch) * h * w;
                for (int y = 0; y < oh; ++y)
                    for (int x2 = 0; x2 < ow; ++x2, ++oi) {
                        int y0 = 2 * y, x0 = 2 * x2;
                        int best = y0 * w + x0;
                        for (int dy = 0; dy < 2; ++dy)
                            for (int dx = 0; dx < 2; ++dx) {
                                int idx = (y0 + dy) * w + (x0 + dx);
                                if (p[idx] > p[best]) best = idx;
                            }
                        out.data[oi] = p[best];
                        ctx.indices[oi] = static_cast<int>(base) + best;
                    }
            }
        return out;
    }

    Tensor<T> backward(const Tensor<T>& dy, const LayerContext<T>& ctx) override {
        Tensor<T> dx(ctx.in_shape);
        for (size_t i = 0; i < dy.data.size(); ++i)
            dx.data[ctx.indices[i]] += dy.data[i];
        return dx;
    }

private:
    std::string name_;
};

// --- flatten (N,C,H,W) -> (N, C*H*W) --------------------------------------

template <typename T>
class Flatten : public Layer<T> {
public:
    std::string name() const override { return "flatten"; }

    std::vector<int> output_shape(const std::vector<int>& in) const override {
        int d = 1;
        for (size_t i = 1; i < in.size(); ++i) d *= in[i];
        return {in[0], d};
    }

    Tensor<T> forward(const Tensor<T>& x, LayerContext<T>& ctx, bool, uint64_t,
                      T) override {
        ctx.in_shape = x.shape;
        Tensor<T> out = x;
        out.shape = output_shape(x.shape);
        return out;
    }

    Tensor<T> backward(const Tensor<T>& dy, const LayerContext<T>& ctx) override {
        Tensor<T> dx = dy;
        dx.shape = ctx.in_shape;
        return dx;
    }
};

// --- fully connected ------------------------------------------------------

template <typename T>
class Dense : public Layer<T> {
public:
    Dense(int in_features, int out_features, std::string name)
        : in_f_(in_features), out_f_(out_features), name_(std::move(name)),
          weight_({out_features, in_features}), bias_({out_features}),
          dweight_(weight_.shape), dbias_(bias_.shape) {}

    std::string name() const override { return name_; }

    void init_he(uint64_t seed) {
        auto rng = make_rng(seed);
        std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / in_f_));
        for (T& w : weight_.data) w = static_cast<T>(normal(rng));
        bias_.fill(T(0));
    }

    std::vector<int> output_shape(const std::vector<int>& in) const override {
        return {in[0], out_f_};
    }

    Tensor<T> forward(const Tensor<T>& x, LayerContext<T>& ctx, bool, uint64_t,
                      T) override {
        if (x.dim(1) != in_f_) throw std::invalid_argument(name_ + ": feature mismatch");
        const int n = x.dim(0);
        ctx.in_shape = x.shape;
        ctx.saved = x;
        Tensor<T> out({n, out_f_});
        // out = x (n x in) * W^T (in x out)
        gemm(false, true, n, out_f_, in_f_, T(1), x.ptr(), in_f_, weight_.ptr(), in_f_,
             T(0), out.ptr(), out_f_);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < out_f_; ++j) out.data[i * out_f_ + j] += bias_.data[j];
        return out;
    }

    Tensor<T> backward(const Tensor<T>& dy, const LayerContext<T>& ctx) override {
        const int n = dy.dim(0);
        // dW = dY^T * X, db = column sums, dX = dY * W
        gemm(true, false, out_f_, in_f_, n, T(1), dy.ptr(), out_f_,
             ctx.saved.ptr(), in_f_, T(0), dweight_.ptr(), in_f_);
        dbias_.fill(T(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < out_f_; ++j) dbias_.data[j] += dy.data[i * out_f_ + j];
        Tensor<T> dx({n, in_f_});
        gemm(false, false, n, in_f_, out_f_, T(1), dy.ptr(), out_f_, weight_.ptr(),
             in_f_, T(0), dx.ptr(), in_f_);
        return dx;
    }

    std::vector<ParamRef<T>> params() override {
        return {{name_ + ".weight", &weight_, &dweight_},
                {name_ + ".bias", &bias_, &dbias_}};
    }

private:
    int in_f_, out_f_;
    std::string name_;
    Tensor<T> weight_, bias_, dweight_, dbias_;
};

// --- inverted dropout -----------------------------------------------------

// Active only during training; kept units are scaled by 1/(1-p) so the
// inference path applies no correction.
template <typename T>
class Dropout : public Layer<T> {
public:
    explicit Dropout(std::string name) : name_(std::move(name)) {}
    std::string name() const override { return name_; }

    std::vector<int> output_shape(const std::vector<int>& in) const override { return in; }

    Tensor<T> forward(const Tensor<T>& x, LayerContext<T>& ctx, bool training,
                      uint64_t dropout_seed, T p) override {
        ctx.in_shape = x.shape;
        if (!training || p <= T(0)) {
            ctx.saved = Tensor<T>();  // empty mask marks the pass-through case
            return x;
        }
        if (p >= T(1)) throw std::invalid_argument(name_ + ": dropout p must be < 1");
        auto rng = make_rng(dropout_seed);
        std::bernoulli_distribution keep(1.0 - static_cast<double>(p));
        const T scale = T(1) / (T(1) - p);
        ctx.saved = Tensor<T>(x.shape);
        Tensor<T> out(x.shape);
        for (size_t i = 0; i < x.data.size(); ++i) {
            T m = keep(rng) ? scale : T(0);
            ctx.saved.data[i] = m;
            out.data[i] = x.data[i] * m;
        }
        return out;
    }

    Tensor<T> backward(const Tensor<T>& dy, const LayerContext<T>& ctx) override {
        if (ctx.saved.data.empty()) return dy;
        Tensor<T> dx(dy.shape);
        for (size_t i = 0; i < dy.data.size(); ++i)
            dx.data[i] = dy.data[i] * ctx.saved.data[i];
        return dx;
    }

private:
    std::string name_;
};

}  // namespace freqaug::nn
