#include "caloron/dense.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace caloron {

cmat lu_inverse(const cmat& m, double cond_threshold) {
    Eigen::PartialPivLU<cmat> lu(m);
    // |det(U)| factors give a cheap condition proxy: max/min pivot magnitude.
    const auto& u = lu.matrixLU();
    double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const double p = std::abs(u(i, i));
        pmax = std::max(pmax, p);
        pmin = std::min(pmin, p);
    }
    if (!(pmin > 0.0) || pmax / pmin > cond_threshold)
        throw SingularSample("matrix sample is singular or ill-conditioned");
    return lu.inverse();
}

cmat skew_exp(const cmat& x) {
    // x = i h with h Hermitian; exp(x) = V diag(exp(i lambda)) V^*.
    const cmat h = x / iunit;
    Eigen::SelfAdjointEigenSolver<cmat> es(h);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(iunit * es.eigenvalues()(i));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

cmat polar_unitary(const cmat& g) {
    Eigen::JacobiSVD<cmat> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

} // namespace caloron
