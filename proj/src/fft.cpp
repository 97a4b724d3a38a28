#include "tstyle/fft.hpp"

#include <cmath>
#include <cstddef>
#include <unordered_map>

namespace tstyle::fft {

namespace {

constexpr double kPi = 3.14159265358979323846;

using cvec = std::vector<std::complex<double>>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Twiddle factors exp(-2*pi*i*k/n) for k < n/2, one table per length.
const cvec& twiddles(std::size_t n) {
    thread_local std::unordered_map<std::size_t, cvec> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    cvec w(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double a = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        w[k] = {std::cos(a), std::sin(a)};
    }
    return cache.emplace(n, std::move(w)).first->second;
}

// Iterative radix-2 Cooley-Tukey; n must be a power of two.
void fft_pow2(cvec& a, bool inverse) {
    const std::size_t n = a.size();
    if (n <= 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const cvec& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> t = w[k * stride];
                if (inverse) t = std::conj(t);
                t *= a[i + k + len / 2];
                a[i + k + len / 2] = a[i + k] - t;
                a[i + k] += t;
            }
        }
    }
}

struct BluesteinPlan {
    std::size_t m = 0;  // convolution length (power of two, >= 2n-1)
    cvec chirp;         // exp(-i*pi*k^2/n), k < n
    cvec fft_b;         // FFT of the zero-padded conjugate chirp
};

const BluesteinPlan& bluestein_plan(std::size_t n) {
    thread_local std::unordered_map<std::size_t, BluesteinPlan> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    BluesteinPlan plan;
    plan.m = next_pow2(2 * n - 1);
    plan.chirp.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument small for large n
        const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % (2 * n);
        const double a = -kPi * static_cast<double>(k2) / static_cast<double>(n);
        plan.chirp[k] = {std::cos(a), std::sin(a)};
    }
    plan.fft_b.assign(plan.m, {0.0, 0.0});
    plan.fft_b[0] = std::conj(plan.chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
        plan.fft_b[k] = std::conj(plan.chirp[k]);
        plan.fft_b[plan.m - k] = std::conj(plan.chirp[k]);
    }
    fft_pow2(plan.fft_b, false);
    return cache.emplace(n, std::move(plan)).first->second;
}

// Arbitrary-length DFT as a chirp-modulated circular convolution.
void fft_bluestein(cvec& a) {
    const std::size_t n = a.size();
    const BluesteinPlan& plan = bluestein_plan(n);

    cvec tmp(plan.m, {0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) tmp[k] = a[k] * plan.chirp[k];
    fft_pow2(tmp, false);
    for (std::size_t k = 0; k < plan.m; ++k) tmp[k] *= plan.fft_b[k];
    fft_pow2(tmp, true);
    const double scale = 1.0 / static_cast<double>(plan.m);
    for (std::size_t k = 0; k < n; ++k) a[k] = tmp[k] * scale * plan.chirp[k];
}

}  // namespace

void fft(cvec& data) {
    if (data.size() <= 1) return;
    if (is_pow2(data.size())) {
        fft_pow2(data, false);
    } else {
        fft_bluestein(data);
    }
}

void ifft(cvec& data) {
    const std::size_t n = data.size();
    if (n <= 1) return;
    for (auto& z : data) z = std::conj(z);
    fft(data);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& z : data) z = std::conj(z) * scale;
}

}  // namespace tstyle::fft
