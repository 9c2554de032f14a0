#include "caloron/loop.hpp"

#include <cmath>

#include "caloron/spectral.hpp"

namespace caloron {

namespace {

using MapRM = Eigen::Map<Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using MapRMConst =
    Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

void require_power_of_two(int n) {
    if (n < 8 || (n & (n - 1)) != 0)
        throw DimensionMismatch("loop sample count must be a power of two >= 8");
}

} // namespace

SampledLoop::SampledLoop(GroupSpec spec, int samples, bool algebra_valued)
    : spec_(spec), samples_(samples), algebra_(algebra_valued) {
    if (spec.rank_n < 1) throw DimensionMismatch("rank_n must be >= 1");
    require_power_of_two(samples);
    data_.assign(static_cast<size_t>(samples) * spec.rank_n * spec.rank_n, cd(0.0, 0.0));
}

MapRM SampledLoop::sample(int j) { return MapRM(sample_data(j), rank(), rank()); }

MapRMConst SampledLoop::sample(int j) const { return MapRMConst(sample_data(j), rank(), rank()); }

void SampledLoop::set_sample(int j, const cmat& m) { sample(j) = m; }

double SampledLoop::invariant_defect() const {
    double worst = 0.0;
    for (int j = 0; j < samples_; ++j) {
        const cmat g = sample(j);
        if (algebra_) {
            if (spec_.family != GroupFamily::GeneralLinearGL)
                worst = std::max(worst, skew_defect(g));
        } else if (spec_.family == GroupFamily::UnitaryU ||
                   spec_.family == GroupFamily::SpecialUnitarySU) {
            worst = std::max(worst, unitary_defect(g));
            if (spec_.family == GroupFamily::SpecialUnitarySU)
                worst = std::max(worst, std::abs(g.determinant() - cd(1.0, 0.0)));
        }
    }
    return worst;
}

double SampledLoop::based_defect() const {
    if (algebra_) return 0.0;
    return max_abs(cmat(sample(0)) - cmat::Identity(rank(), rank()));
}

SampledLoop SampledLoop::constant(GroupSpec spec, int samples, const cmat& value,
                                  bool algebra_valued) {
    SampledLoop out(spec, samples, algebra_valued);
    for (int j = 0; j < samples; ++j) out.set_sample(j, value);
    return out;
}

SampledLoop pointwise_product(const SampledLoop& a, const SampledLoop& b) {
    if (a.sample_count() != b.sample_count() || a.rank() != b.rank())
        throw DimensionMismatch("pointwise_product: sample count or rank mismatch");
    SampledLoop out(a.spec(), a.sample_count(), a.algebra_valued());
    for (int j = 0; j < a.sample_count(); ++j) out.sample(j) = a.sample(j) * b.sample(j);
    return out;
}

SampledLoop pointwise_inverse(const SampledLoop& a) {
    if (a.algebra_valued()) throw DimensionMismatch("pointwise_inverse: group-valued loops only");
    SampledLoop out(a.spec(), a.sample_count());
    const bool unitary = a.spec().family != GroupFamily::GeneralLinearGL;
    for (int j = 0; j < a.sample_count(); ++j) {
        if (unitary)
            out.sample(j) = a.sample(j).adjoint();
        else
            out.sample(j) = lu_inverse(a.sample(j));
    }
    return out;
}

SampledLoop log_derivative(const SampledLoop& a) {
    if (a.algebra_valued()) throw DimensionMismatch("log_derivative: group-valued loops only");
    const int n = a.rank();
    const int N = a.sample_count();
    SampledLoop deriv = a;
    const long stride = static_cast<long>(n) * n;
    for (int e = 0; e < n * n; ++e)
        spectral::circle_derivative(deriv.raw_data().data() + e, N, stride);
    const SampledLoop inv = pointwise_inverse(a);
    SampledLoop out(a.spec(), N, true);
    for (int j = 0; j < N; ++j) out.sample(j) = inv.sample(j) * deriv.sample(j);
    return out;
}

WindingResult winding_number(const SampledLoop& a, double tol_int) {
    const SampledLoop xi = log_derivative(a);
    cd acc(0.0, 0.0);
    for (int j = 0; j < a.sample_count(); ++j) acc += xi.sample(j).trace();
    acc *= theta_period / static_cast<double>(a.sample_count());
    const double raw = (acc * inv_two_pi_i).real();
    const double nearest = std::nearbyint(raw);
    const double dist = std::abs(raw - nearest);
    if (dist > tol_int)
        throw IntegralityViolation("winding_number: quadrature is not integral", raw, dist);
    WindingResult r;
    r.winding = static_cast<long long>(nearest);
    r.raw = raw;
    r.distance = dist;
    return r;
}

SampledLoop block_sum(const SampledLoop& a, const SampledLoop& b) {
    if (a.sample_count() != b.sample_count())
        throw DimensionMismatch("block_sum: sample count mismatch");
    if (a.algebra_valued() != b.algebra_valued())
        throw DimensionMismatch("block_sum: cannot mix group- and algebra-valued loops");
    GroupSpec spec = a.spec();
    spec.rank_n = a.rank() + b.rank();
    // SU is not closed under block sum unless both determinants are 1; the
    // combined family is recorded as U in the mixed case.
    if (a.spec().family != b.spec().family) spec.family = GroupFamily::UnitaryU;
    SampledLoop out(spec, a.sample_count(), a.algebra_valued());
    for (int j = 0; j < a.sample_count(); ++j) {
        auto m = out.sample(j);
        m.setZero();
        m.topLeftCorner(a.rank(), a.rank()) = a.sample(j);
        m.bottomRightCorner(b.rank(), b.rank()) = b.sample(j);
    }
    return out;
}

} // namespace caloron
