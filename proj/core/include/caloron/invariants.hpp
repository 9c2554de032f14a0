#pragma once

#include <utility>
#include <vector>

#include "caloron/coefficients.hpp"
#include "caloron/gauge.hpp"

namespace caloron {

/// The normalized symmetrized trace of degree k: the value on algebra
/// arguments is 1/((k!)^2 (2 pi i)^k) sum over permutations of the trace of
/// the product. On forms the extension is graded-symmetric, so the
/// permutation sum carries Koszul signs from the argument degrees.
struct SymTrace {
    int k = 1;
};

/// Evaluate f on k matrix-valued forms (plain or loop-valued; wedge-style
/// rank/depth broadcasting applies). Scalar-valued result of the summed
/// degree.
MatrixForm sym_trace(const SymTrace& f, const std::vector<MatrixForm>& args);

/// cw_f(A) = f(F,...,F) with F = curvature(A); closed scalar 2k-form.
MatrixForm chern_weil(const SymTrace& f, const MatrixForm& a);

/// tr(exp(F/2pi i)) truncated at the mesh dimension; the degree-0 part is the
/// constant rank of A. Computed through the power series, not through
/// chern_weil, so the two routes cross-check each other.
GradedForm chern_character_even(const MatrixForm& a);

/// s_f = k * integral over theta of f(cov Higgs derivative, F^{k-1}); closed
/// (2k-1)-form on the base mesh.
MatrixForm string_form(const SymTrace& f, const GaugePair& p);

/// Odd-graded sum of string_form over 2k-1 <= dim.
GradedForm total_string_form(const GaugePair& p);

/// A one-parameter family of GaugePairs with an exact t-derivative. Two
/// nodes give the affine path (the interpolant and its derivative are then
/// exactly linear/constant); more nodes give the Catmull-Rom piecewise cubic
/// through them. Node times must start at 0 and end at 1.
class SmoothPath {
public:
    static SmoothPath affine(GaugePair start, GaugePair end);
    static SmoothPath through(std::vector<double> times, std::vector<GaugePair> nodes);

    GaugePair at(double t) const;
    /// (dA/dt, dPhi/dt) of the interpolant, evaluated in closed form.
    std::pair<MatrixForm, MatrixForm> velocity(double t) const;

    /// Node times; the interpolant is polynomial between consecutive ones.
    const std::vector<double>& knot_times() const { return times_; }

    const GaugePair& start() const { return nodes_.front(); }
    const GaugePair& end() const { return nodes_.back(); }

private:
    SmoothPath(std::vector<double> times, std::vector<GaugePair> nodes);
    std::vector<double> times_;
    std::vector<GaugePair> nodes_;
};

/// Same interpolation machinery for a path of plain 1-forms.
class FormPath {
public:
    static FormPath affine(MatrixForm start, MatrixForm end);
    static FormPath through(std::vector<double> times, std::vector<MatrixForm> nodes);

    MatrixForm at(double t) const;
    MatrixForm velocity(double t) const;

    const std::vector<double>& knot_times() const { return times_; }

    const MatrixForm& start() const { return nodes_.front(); }
    const MatrixForm& end() const { return nodes_.back(); }

private:
    FormPath(std::vector<double> times, std::vector<MatrixForm> nodes);
    std::vector<double> times_;
    std::vector<MatrixForm> nodes_;
};

/// Relative string potential
///   S_f = k int_0^1 int_theta ((k-1) f(B_t, F_t^{k-2}, cov dPhi_t)
///                              + f(F_t^{k-1}, dPhi_t/dt)) dt,
/// Gauss-Legendre in t per knot interval (default 16 nodes each), so
/// piecewise-polynomial interpolants of modest degree integrate exactly.
MatrixForm string_potential_relative(const SymTrace& f, const SmoothPath& path,
                                     int t_quad_nodes = 16);

/// Total string potential in closed form: the c_i-weighted sum of
/// f(Phi,[A,A]^i,F^{k-1-i}) plus the mixed A terms, integrated over theta.
MatrixForm string_potential_total(const SymTrace& f, const GaugePair& p);

/// CS_f(A) = sum_{j=0}^{k-1} cs_j f(A, [A,A]^j, F^{k-1-j}).
MatrixForm chern_simons_total(const SymTrace& f, const MatrixForm& a);

/// CS_f(path) = k int_0^1 f(dA_t/dt, F_t^{k-1}) dt.
MatrixForm chern_simons_relative(const SymTrace& f, const FormPath& path, int t_quad_nodes = 16);

/// g* tau_f with tau_f = (-1/2)^{k-1} (k!(k-1)!/(2k-1)!) f(W, [W,W]^{k-1}),
/// W the left Maurer-Cartan pullback of g.
MatrixForm transgression_pullback(const SymTrace& f, const GroupMap& g);

/// sum_j (-j!/(2j+1)!) (-1/(2 pi i))^{j+1} tr((g^{-1}dg)^{2j+1}), truncated
/// at the mesh dimension; keys are the odd degrees 2j+1.
GradedForm odd_chern_character(const GroupMap& g);

/// Sampled smooth ramp on [0, 2 pi] with exact endpoint values 0 and 1 and
/// closed-form derivative samples on the same uniform grid.
struct CutoffFunction {
    std::vector<double> alpha;
    std::vector<double> alpha_prime;
};

/// (3u^2 - 2u^3) in u = theta/2 pi.
CutoffFunction smoothstep_cutoff(int samples);
/// u - sin(2 pi u)/(2 pi) in u = theta/2 pi.
CutoffFunction sine_ramp_cutoff(int samples);

struct BetaCheck {
    rational alternating;
    rational beta;
    bool exact_equal = false;
    bool has_quadrature = false;
    /// int_0^{2 pi} alpha^{k-1} (1-alpha)^{k-1} alpha' d theta.
    double quadrature = 0.0;
};

/// Exact check of the alternating sum against B(k,k); with a cutoff supplied
/// also quadratures the ramp integral, whose value depends only on the
/// endpoint values of alpha.
BetaCheck beta_coefficients(int k);
BetaCheck beta_coefficients(int k, const CutoffFunction& alpha);

/// Per-grid-point value of (1/2 pi i) int_theta tr(Phi) reduced mod Z to the
/// representative in [-1/2, 1/2) (1/2 maps to -1/2). Row-major over the grid.
std::vector<double> degree1_character(const MatrixForm& higgs);

} // namespace caloron
