#include "doctest.h"

#include <cmath>

#include "caloron/errors.hpp"
#include "caloron/form.hpp"
#include "caloron/quadrature.hpp"
#include "caloron/random_data.hpp"
#include "caloron/rng.hpp"

using namespace caloron;

namespace {

// scalar field samples f(x, y) written into a fresh component
MatrixForm scalar_form(const Mesh& mesh, int degree, const AxisSet& axes,
                       double (*f)(double, double)) {
    MatrixForm w(mesh, degree, 1, 0);
    std::vector<cd>& comp = w.component(axes);
    const std::vector<long> strides = mesh.point_strides();
    for (long p = 0; p < mesh.total_points(); ++p) {
        const int i = static_cast<int>(p / strides[0]);
        const int j = static_cast<int>((p / (mesh.dim() > 1 ? strides[1] : 1)) %
                                       (mesh.dim() > 1 ? mesh.factor(1).samples : 1));
        comp[static_cast<size_t>(p)] = cd(f(mesh.coordinate(0, i), mesh.coordinate(1, j)), 0.0);
    }
    return w;
}

} // namespace

TEST_CASE("mesh shapes, coordinates and quadrature weights") {
    const Mesh t2 = make_torus_mesh({16, 32});
    CHECK(t2.dim() == 2);
    CHECK(t2.total_points() == 512);
    CHECK(t2.coordinate(0, 4) == doctest::Approx(theta_period / 4.0));
    const Mesh mixed({{FactorKind::Interval, 9}, {FactorKind::Circle, 16}});
    CHECK(mixed.coordinate(0, 0) == 0.0);
    CHECK(mixed.coordinate(0, 8) == 1.0);

    // interval weights integrate low-degree polynomials exactly
    const std::vector<double> w = quadrature::interval_node_weights(9);
    double cubic = 0.0;
    for (int j = 0; j < 9; ++j) cubic += w[static_cast<size_t>(j)] * std::pow(j / 8.0, 3);
    CHECK(std::abs(cubic - 0.25) <= 1e-12);

    // the 3-sphere chart carries its Jacobian as the mesh weight
    const Mesh chart = make_s3_chart_mesh(9, 4, 4);
    REQUIRE(chart.has_weight());
    const long mid = 4L * 4 * 4; // u = 0.5
    CHECK(chart.weight()[static_cast<size_t>(mid)] == doctest::Approx(pi / 4.0));
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
    std::vector<double> xs, ws;
    quadrature::gauss_legendre_01(16, xs, ws);
    double acc = 0.0;
    for (size_t q = 0; q < xs.size(); ++q) acc += ws[q] * std::pow(xs[q], 31);
    CHECK(std::abs(acc - 1.0 / 32.0) <= 1e-15);
}

TEST_CASE("spectral derivative of a trig polynomial is exact") {
    const Mesh t2 = make_torus_mesh({16, 16});
    const MatrixForm w =
        scalar_form(t2, 0, {}, [](double x, double) { return std::cos(2.0 * x + 0.3); });
    const MatrixForm dw = exterior_derivative(w);
    const std::vector<cd>* dx = dw.find_component({0});
    REQUIRE(dx != nullptr);
    double err = 0.0;
    for (long p = 0; p < t2.total_points(); ++p) {
        const double x = t2.coordinate(0, static_cast<int>(p / 16));
        err = std::max(err,
                       std::abs((*dx)[static_cast<size_t>(p)] - cd(-2.0 * std::sin(2.0 * x + 0.3), 0.0)));
    }
    CHECK(err <= 1e-12);
    CHECK(dw.find_component({1}) == nullptr);
}

TEST_CASE("d of d vanishes on random trig data") {
    CounterRng rng(31);
    const Mesh t2 = make_torus_mesh({16, 16});
    TrigFieldOptions opt;
    opt.base_bandwidth = 3;
    for (int deg = 0; deg <= 1; ++deg) {
        const MatrixForm w = random_skew_form(rng, t2, deg, 2, 0, opt);
        CHECK(exterior_derivative(exterior_derivative(w)).max_abs() <= 1e-10);
    }
    const Mesh mixed({{FactorKind::Interval, 12}, {FactorKind::Circle, 16}});
    const MatrixForm w = random_skew_form(rng, mixed, 0, 2, 0, opt);
    CHECK(exterior_derivative(exterior_derivative(w)).max_abs() <= 1e-10);
}

TEST_CASE("wedge satisfies the graded Leibniz rule") {
    CounterRng rng(32);
    const Mesh t3 = make_torus_mesh({16, 16, 16});
    TrigFieldOptions opt;
    opt.base_bandwidth = 1;
    const MatrixForm a = random_skew_form(rng, t3, 1, 2, 0, opt);
    const MatrixForm b = random_skew_form(rng, t3, 1, 2, 0, opt);
    const MatrixForm lhs = exterior_derivative(wedge(a, b));
    MatrixForm rhs = wedge(exterior_derivative(a), b);
    rhs -= wedge(a, exterior_derivative(b)); // (-1)^{|a|}
    CHECK((lhs - rhs).max_abs() <= 1e-9);
}

TEST_CASE("scalar wedge is graded commutative and the bracket graded skew") {
    CounterRng rng(33);
    const Mesh t3 = make_torus_mesh({16, 16, 16});
    TrigFieldOptions opt;
    opt.base_bandwidth = 1;
    const MatrixForm p = random_scalar_form(rng, t3, 1, opt);
    const MatrixForm q = random_scalar_form(rng, t3, 2, opt);
    CHECK((wedge(p, q) - wedge(q, p)).max_abs() <= 1e-12); // (-1)^{1*2} = 1
    const MatrixForm a = random_skew_form(rng, t3, 1, 2, 0, opt);
    const MatrixForm b = random_skew_form(rng, t3, 1, 2, 0, opt);
    CHECK((bracket(a, b) - bracket(b, a)).max_abs() <= 1e-12); // odd-odd: symmetric
}

TEST_CASE("top-degree integral of an explicit 2-form") {
    const Mesh t2 = make_torus_mesh({16, 16});
    const MatrixForm w = scalar_form(t2, 2, {0, 1}, [](double x, double y) {
        return (2.0 + std::cos(x)) * (3.0 + std::sin(y));
    });
    // separable trig polynomial: 4 pi * 6 pi = 24 pi^2
    CHECK(std::abs(integrate_top(w)(0, 0) - cd(236.87050562614459, 0.0)) <= 1e-10);
}

TEST_CASE("circle periods of explicit forms") {
    const Mesh t2 = make_torus_mesh({16, 16});
    MatrixForm dx(t2, 1, 1, 0);
    std::vector<cd>& c = dx.component({0});
    std::fill(c.begin(), c.end(), cd(1.0, 0.0));
    const auto periods = circle_periods(dx);
    REQUIRE(periods.count({0}) == 1);
    REQUIRE(periods.count({1}) == 1);
    CHECK(std::abs(periods.at({0}) - cd(theta_period, 0.0)) <= 1e-12);
    CHECK(std::abs(periods.at({1})) <= 1e-12);
}

TEST_CASE("fiber integration over the last circle factor") {
    // w = g(x) (1/2 + cos theta) dtheta: the fiber integral is pi g(x)
    const Mesh m = make_torus_mesh({16, 16});
    const MatrixForm w = scalar_form(m, 1, {1}, [](double x, double th) {
        return (0.5 + std::cos(th)) * (1.0 + 0.25 * std::sin(x));
    });
    const MatrixForm out = fiber_integrate(w, 1);
    REQUIRE(out.mesh().dim() == 1);
    const std::vector<cd>* v = out.find_component({});
    REQUIRE(v != nullptr);
    double err = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double x = m.coordinate(0, i);
        err = std::max(err, std::abs((*v)[static_cast<size_t>(i)] -
                                     cd(pi * (1.0 + 0.25 * std::sin(x)), 0.0)));
    }
    CHECK(err <= 1e-12);
}

TEST_CASE("fiber integration commutes with d and nests symmetrically") {
    CounterRng rng(34);
    const Mesh m = make_torus_mesh({16, 16, 16});
    TrigFieldOptions opt;
    opt.base_bandwidth = 1;
    for (int deg = 1; deg <= 2; ++deg) {
        const MatrixForm w = random_skew_form(rng, m, deg, 2, 0, opt);
        const MatrixForm lhs = exterior_derivative(fiber_integrate(w, 2));
        const MatrixForm rhs = fiber_integrate(exterior_derivative(w), 2);
        CHECK((lhs - rhs).max_abs() <= 1e-10);
    }
    const MatrixForm w = random_skew_form(rng, m, 2, 2, 0, opt);
    const MatrixForm ab = fiber_integrate(fiber_integrate(w, 2), 1);
    // minus: swapping the two fiber differentials flips the orientation
    MatrixForm ba = fiber_integrate(fiber_integrate(w, 1), 1);
    ba *= cd(-1.0, 0.0);
    CHECK((ab - ba).max_abs() <= 1e-10);
}

TEST_CASE("fiber integration is natural under slicing an untouched axis") {
    CounterRng rng(35);
    const Mesh m = make_torus_mesh({16, 16, 16});
    TrigFieldOptions opt;
    opt.base_bandwidth = 1;
    const MatrixForm w = random_skew_form(rng, m, 2, 2, 0, opt);
    for (int idx : {0, 5}) {
        const MatrixForm lhs = slice(fiber_integrate(w, 2), 0, idx);
        const MatrixForm rhs = fiber_integrate(slice(w, 0, idx), 1);
        CHECK((lhs - rhs).max_abs() <= 1e-10);
    }
}

TEST_CASE("fiber integration rejects weighted meshes and bad axes") {
    const Mesh chart = make_s3_chart_mesh(9, 4, 4);
    MatrixForm w(chart, 1, 1, 0);
    CHECK_THROWS_AS(fiber_integrate(w, 2), Error);
    const Mesh t2 = make_torus_mesh({16, 16});
    MatrixForm v(t2, 1, 1, 0);
    CHECK_THROWS_AS(fiber_integrate(v, 5), InvalidAxis);
}

TEST_CASE("form arithmetic checks shapes") {
    const Mesh t2 = make_torus_mesh({16, 16});
    MatrixForm a(t2, 1, 2, 0);
    MatrixForm b(t2, 2, 2, 0);
    CHECK_THROWS_AS(a += b, DimensionMismatch);
    MatrixForm c(make_torus_mesh({32, 32}), 1, 2, 0);
    CHECK_THROWS_AS(a += c, DimensionMismatch);
}
