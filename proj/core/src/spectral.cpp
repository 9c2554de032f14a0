#include "caloron/spectral.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace caloron::spectral {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
// Plans and their buffers live in thread-local caches, creation is serialized.
std::mutex plan_mutex;

struct LinePlans {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    int n = 0;

    LinePlans() = default;
    LinePlans(const LinePlans&) = delete;
    LinePlans& operator=(const LinePlans&) = delete;
    LinePlans(LinePlans&& o) noexcept { *this = std::move(o); }
    LinePlans& operator=(LinePlans&& o) noexcept {
        std::swap(buf, o.buf);
        std::swap(fwd, o.fwd);
        std::swap(bwd, o.bwd);
        std::swap(n, o.n);
        return *this;
    }
    ~LinePlans() {
        if (buf) {
            std::lock_guard<std::mutex> lock(plan_mutex);
            fftw_destroy_plan(fwd);
            fftw_destroy_plan(bwd);
            fftw_free(buf);
        }
    }
};

LinePlans make_plans(int n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    LinePlans p;
    p.n = n;
    p.buf = fftw_alloc_complex(static_cast<size_t>(n));
    p.fwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    return p;
}

LinePlans& plans_for(int n) {
    thread_local std::map<int, LinePlans> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_plans(n)).first;
    return it->second;
}

cd* as_cd(fftw_complex* p) { return reinterpret_cast<cd*>(p); }

void gather(const cd* src, int n, long stride, cd* dst) {
    for (int j = 0; j < n; ++j) dst[j] = src[static_cast<long>(j) * stride];
}

void scatter(const cd* src, int n, cd* dst, long stride) {
    for (int j = 0; j < n; ++j) dst[static_cast<long>(j) * stride] = src[j];
}

} // namespace

void circle_derivative(cd* p, int n, long stride, double period) {
    LinePlans& pl = plans_for(n);
    gather(p, n, stride, as_cd(pl.buf));
    fftw_execute(pl.fwd);
    cd* c = as_cd(pl.buf);
    const double base = theta_period / period;
    for (int j = 0; j < n; ++j) {
        const int m = (2 * j < n) ? j : j - n;
        // Nyquist mode has no odd-derivative representative; drop it.
        const double freq = (2 * j == n) ? 0.0 : base * m;
        c[j] *= cd(0.0, freq) / static_cast<double>(n);
    }
    fftw_execute(pl.bwd);
    scatter(c, n, p, stride);
}

void circle_resample(const cd* src, int n, long sstride, cd* dst, int m, long dstride) {
    if (m == n) {
        for (int j = 0; j < n; ++j)
            dst[static_cast<long>(j) * dstride] = src[static_cast<long>(j) * sstride];
        return;
    }
    if (m < n) throw DimensionMismatch("circle_resample: target grid must not be coarser");
    LinePlans& ps = plans_for(n);
    gather(src, n, sstride, as_cd(ps.buf));
    fftw_execute(ps.fwd);
    std::vector<cd> spec(static_cast<size_t>(n));
    std::memcpy(spec.data(), ps.buf, sizeof(cd) * static_cast<size_t>(n));

    LinePlans& pd = plans_for(m);
    cd* out = as_cd(pd.buf);
    std::memset(pd.buf, 0, sizeof(cd) * static_cast<size_t>(m));
    const double scale = 1.0 / n;
    for (int j = 0; j < n; ++j) {
        const int f = (2 * j < n) ? j : j - n;
        if (2 * j == n) {
            // Split the Nyquist coefficient symmetrically.
            out[(f + m) % m] += 0.5 * scale * spec[static_cast<size_t>(j)];
            out[(m - f) % m] += 0.5 * scale * spec[static_cast<size_t>(j)];
        } else {
            out[(f + m) % m] = scale * spec[static_cast<size_t>(j)];
        }
    }
    fftw_execute(pd.bwd);
    scatter(out, m, dst, dstride);
}

void interval_derivative(cd* p, int n, long stride) {
    if (n < 5) throw DimensionMismatch("interval_derivative: need at least 5 nodes");
    thread_local std::vector<cd> f;
    f.resize(static_cast<size_t>(n));
    gather(p, n, stride, f.data());
    const double inv12h = (n - 1) / 12.0;
    auto at = [&](int i) { return f[static_cast<size_t>(i)]; };

    p[0] = (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) * inv12h;
    p[stride] = (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) * inv12h;
    for (int i = 2; i <= n - 3; ++i)
        p[static_cast<long>(i) * stride] =
            (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) * inv12h;
    p[static_cast<long>(n - 2) * stride] =
        (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) + 6.0 * at(n - 4) - at(n - 5)) * inv12h;
    p[static_cast<long>(n - 1) * stride] =
        (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) - 16.0 * at(n - 4) + 3.0 * at(n - 5)) * inv12h;
}

std::vector<cd> dft(const cd* p, int n, long stride) {
    LinePlans& pl = plans_for(n);
    gather(p, n, stride, as_cd(pl.buf));
    fftw_execute(pl.fwd);
    std::vector<cd> out(static_cast<size_t>(n));
    std::memcpy(out.data(), pl.buf, sizeof(cd) * static_cast<size_t>(n));
    return out;
}

} // namespace caloron::spectral
