#pragma once

#include <vector>

#include "caloron/dense.hpp"

namespace caloron {

enum class GroupFamily { UnitaryU, GeneralLinearGL, SpecialUnitarySU };

struct GroupSpec {
    GroupFamily family = GroupFamily::UnitaryU;
    int rank_n = 1;
};

/// Result of a winding-number quadrature: the nearest integer plus the raw
/// value and its distance to that integer, so callers can see how sharp the
/// integrality was.
struct WindingResult {
    long long winding;
    double raw;
    double distance;
};

/// A loop in a matrix group or algebra, stored as N uniform samples at
/// theta_j = 2*pi*j/N with N a power of two. Storage is sample-major with
/// row-major n x n matrices.
class SampledLoop {
public:
    SampledLoop() = default;
    SampledLoop(GroupSpec spec, int samples, bool algebra_valued = false);

    const GroupSpec& spec() const { return spec_; }
    int rank() const { return spec_.rank_n; }
    int sample_count() const { return samples_; }
    bool algebra_valued() const { return algebra_; }

    cd* sample_data(int j) { return data_.data() + static_cast<size_t>(j) * rank() * rank(); }
    const cd* sample_data(int j) const {
        return data_.data() + static_cast<size_t>(j) * rank() * rank();
    }
    Eigen::Map<Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> sample(int j);
    Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
    sample(int j) const;
    void set_sample(int j, const cmat& m);

    std::vector<cd>& raw_data() { return data_; }
    const std::vector<cd>& raw_data() const { return data_; }

    /// Max over samples of the group invariant defect: ||g* g - I|| for U/SU,
    /// |det - 1| additionally for SU; skew defect for algebra-valued loops.
    double invariant_defect() const;
    /// ||gamma_0 - I||, the basedness defect.
    double based_defect() const;
    bool is_based(double tol = 1e-12) const { return based_defect() <= tol; }

    static SampledLoop constant(GroupSpec spec, int samples, const cmat& value,
                                bool algebra_valued = false);

private:
    GroupSpec spec_{};
    int samples_ = 0;
    bool algebra_ = false;
    std::vector<cd> data_;
};

/// Sample-wise product a_j b_j. Basedness is preserved when both are based.
SampledLoop pointwise_product(const SampledLoop& a, const SampledLoop& b);

/// Sample-wise inverse; conjugate transpose for U/SU, LU otherwise.
SampledLoop pointwise_inverse(const SampledLoop& a);

/// gamma^{-1} d_theta gamma with the derivative taken spectrally per matrix
/// entry. Result is algebra-valued.
SampledLoop log_derivative(const SampledLoop& a);

/// (1/2*pi*i) * trapezoid of tr(gamma^{-1} gamma'). Throws
/// IntegralityViolation when the raw value sits further than tol_int from an
/// integer.
WindingResult winding_number(const SampledLoop& a, double tol_int = 1e-6);

/// Block-diagonal sum, a in the top-left block.
SampledLoop block_sum(const SampledLoop& a, const SampledLoop& b);

} // namespace caloron
