#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "freqaug/augment.hpp"
#include "freqaug/dct.hpp"
#include "freqaug/rng.hpp"

using namespace freqaug;

namespace {

Image random_image(int h, int w, int c, uint64_t seed) {
    Image img(h, w, c);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    for (double& v : img.values) v = dist(rng);
    return img;
}

}  // namespace

TEST_CASE("sample_threshold: degenerate distribution") {
    ThresholdDistribution d{7, 7};
    for (uint64_t s = 0; s < 20; ++s) CHECK(sample_threshold(d, s) == 7);
}

TEST_CASE("sample_threshold: uniform over [0,50] within 5 sigma") {
    ThresholdDistribution d{0, 50};
    const int n = 100000;
    std::vector<int> counts(51, 0);
    for (int i = 0; i < n; ++i) ++counts[sample_threshold(d, derive_seed(9001, {(uint64_t)i}))];
    const double expected = n / 51.0;
    const double sigma = std::sqrt(n * (1.0 / 51.0) * (50.0 / 51.0));
    for (int v = 0; v <= 50; ++v) CHECK(std::abs(counts[v] - expected) <= 5.0 * sigma);
}

TEST_CASE("sample_threshold: deterministic under fixed seed") {
    ThresholdDistribution d{0, 50};
    for (uint64_t s : {1u, 2u, 99u}) CHECK(sample_threshold(d, s) == sample_threshold(d, s));
}

TEST_CASE("apply_dct_threshold: X = 0 is the identity") {
    Image img = random_image(16, 16, 3, 42);
    Image out = apply_dct_threshold(img, 0);
    CHECK(max_abs_diff(img, out) == 0.0);  // fed forward untouched
}

TEST_CASE("apply_dct_threshold: constant plane survives any in-range threshold") {
    Image img(32, 32, 1, 128.0);  // DC = 128*32 = 4096, all AC coefficients 0
    Image out = apply_dct_threshold(img, 50);
    CHECK(max_abs_diff(img, out) < 1e-9);
}

TEST_CASE("apply_dct_threshold: strict inequality on the 2x2 example") {
    // B of [[10,0],[0,0]] is [[5,5],[5,5]] per the direct transform
    Image img(2, 2, 1);
    img.at(0, 0, 0) = 10.0;
    {
        Plane p(2, 2);
        p.at(0, 0) = 10.0;
        Plane b = fdct2_naive(p);
        for (double v : b.v) CHECK(v == doctest::Approx(5.0).epsilon(1e-12));
    }

    Image killed = apply_dct_threshold(img, 6);
    for (double v : killed.values) CHECK(std::abs(v) < 1e-9);

    Image kept = apply_dct_threshold(img, 5);  // 5 is not strictly under 5
    CHECK(max_abs_diff(kept, img) < 1e-9);
}

TEST_CASE("apply_dct_threshold: output stays within [0,255]") {
    for (uint64_t s = 0; s < 5; ++s) {
        Image img = random_image(17, 23, 3, 100 + s);
        Image out = apply_dct_threshold(img, 40);
        for (double v : out.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 255.0);
        }
    }
}

TEST_CASE("apply_dct_threshold: rejects bad input") {
    Image img(4, 4, 1, 1.0);
    CHECK_THROWS_AS(apply_dct_threshold(img, -1), std::invalid_argument);
    img.at(0, 1, 1) = std::nan("");
    CHECK_THROWS_AS(apply_dct_threshold(img, 3), std::invalid_argument);
}

TEST_CASE("zero_coefficients_below: retained energy is monotone in X") {
    Plane b = fdct2(
        [] {
            Image i = random_image(32, 32, 1, 77);
            Plane p(32, 32);
            std::copy(i.values.begin(), i.values.end(), p.v.begin());
            return p;
        }());
    double prev = energy(b);
    for (int x = 1; x <= 50; ++x) {
        Plane t = b;
        zero_coefficients_below(t, x);
        double e = energy(t);
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
}

TEST_CASE("zero_coefficients_below: idempotent at fixed X") {
    Plane b(8, 8);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> dist(0.0, 30.0);
    for (double& v : b.v) v = dist(rng);
    Plane once = b;
    zero_coefficients_below(once, 25);
    Plane twice = once;
    zero_coefficients_below(twice, 25);
    for (size_t i = 0; i < once.v.size(); ++i) CHECK(once.v[i] == twice.v[i]);
}

TEST_CASE("augment_batch: reproducible thresholds, per-image independence") {
    AugmentConfig cfg;
    cfg.rng_seed = 31337;
    std::vector<Image> a{random_image(8, 8, 3, 1), random_image(8, 8, 3, 2),
                         random_image(8, 8, 3, 3)};
    std::vector<Image> b = a;

    auto ta = augment_batch(a, cfg, 1);
    auto tb = augment_batch(b, cfg, 1);
    CHECK(ta == tb);
    for (size_t i = 0; i < a.size(); ++i) CHECK(max_abs_diff(a[i], b[i]) == 0.0);

    std::vector<Image> c{random_image(8, 8, 3, 1), random_image(8, 8, 3, 2),
                         random_image(8, 8, 3, 3)};
    auto tc = augment_batch(c, cfg, 2);  // another epoch: fresh draws
    CHECK(ta != tc);
}

TEST_CASE("augment_batch: degenerate U[0,0] leaves the batch unchanged") {
    AugmentConfig cfg;
    cfg.distribution = {0, 0};
    std::vector<Image> batch{random_image(8, 8, 3, 4), random_image(8, 8, 3, 5)};
    std::vector<Image> before = batch;
    auto thresholds = augment_batch(batch, cfg, 0);
    for (int t : thresholds) CHECK(t == 0);
    for (size_t i = 0; i < batch.size(); ++i) CHECK(max_abs_diff(batch[i], before[i]) == 0.0);
}

TEST_CASE("augment_batch: empty batch rejected") {
    std::vector<Image> batch;
    AugmentConfig cfg;
    CHECK_THROWS_AS(augment_batch(batch, cfg), std::invalid_argument);
}

TEST_CASE("augment_batch: errors carry the image index") {
    AugmentConfig cfg;
    std::vector<Image> batch{random_image(4, 4, 1, 6), random_image(4, 4, 1, 7)};
    batch[1].values[3] = std::nan("");
    try {
        augment_batch(batch, cfg);
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("image 1") != std::string::npos);
    }
}
