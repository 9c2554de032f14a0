#include "doctest.h"

#include "caloron/errors.hpp"
#include "caloron/gauge.hpp"
#include "caloron/random_data.hpp"
#include "caloron/rng.hpp"
#include "helpers.hpp"

using namespace caloron;
using caloron::testing::conjugated_loop_map;
using caloron::testing::phase_loop;

namespace {

GaugePair sample_pair(CounterRng& rng, const Mesh& mesh, int loop_samples) {
    TrigFieldOptions opt;
    opt.base_bandwidth = 2;
    opt.theta_bandwidth = 3;
    opt.scale = 0.5;
    return random_gauge_pair(rng, GroupSpec{GroupFamily::UnitaryU, 2}, mesh, loop_samples, opt);
}

} // namespace

TEST_CASE("the caloron re-indexing round trips bit for bit") {
    CounterRng rng(51);
    const Mesh t2 = make_torus_mesh({16, 16});
    const GaugePair p = sample_pair(rng, t2, 32);
    const MatrixForm ext = caloron_transform(p);
    REQUIRE(ext.mesh().dim() == 3);
    REQUIRE(ext.loop_samples() == 0);
    const GaugePair back = inverse_caloron_transform(ext, 2, p.spec);
    CHECK((back.connection - p.connection).max_abs() == 0.0);
    CHECK((back.higgs - p.higgs).max_abs() == 0.0);
}

TEST_CASE("extended curvature splits into curvature and Higgs derivative") {
    CounterRng rng(52);
    const Mesh t2 = make_torus_mesh({16, 16});
    const GaugePair p = sample_pair(rng, t2, 64);
    const MatrixForm lhs = curvature(caloron_transform(p));
    const MatrixForm F = curvature(p.connection);
    const MatrixForm covd = higgs_cov_derivative(p);
    const MatrixForm rhs = extend_to_caloron(F, &covd);
    CHECK((lhs - rhs).max_abs() <= 1e-10);
}

TEST_CASE("extend and split are mutually inverse") {
    CounterRng rng(53);
    const Mesh t2 = make_torus_mesh({16, 16});
    TrigFieldOptions opt;
    opt.base_bandwidth = 1;
    const MatrixForm h = random_skew_form(rng, t2, 2, 2, 16, opt);
    const MatrixForm v = random_skew_form(rng, t2, 1, 2, 16, opt);
    const MatrixForm ext = extend_to_caloron(h, &v);
    const auto [h2, v2] = split_from_caloron(ext, 2);
    CHECK((h2 - h).max_abs() == 0.0);
    CHECK((v2 - v).max_abs() == 0.0);
}

TEST_CASE("maurer-cartan pullbacks satisfy the structure equation") {
    CounterRng rng(54);
    const Mesh t2 = make_torus_mesh({16, 16});
    const GroupMap g =
        random_phase_conjugate_map(rng, GroupSpec{GroupFamily::UnitaryU, 2}, t2, 1, 2);
    const MatrixForm w = map_mc_pullback(g);
    MatrixForm defect = exterior_derivative(w) + wedge(w, w);
    CHECK(defect.max_abs() <= 1e-9);
    // right pullback obeys the opposite sign
    const MatrixForm r = map_mc_pullback(g, McSide::Right);
    defect = exterior_derivative(r) - wedge(r, r);
    CHECK(defect.max_abs() <= 1e-9);
}

TEST_CASE("curvature satisfies the Bianchi identity") {
    CounterRng rng(55);
    const Mesh t2 = make_torus_mesh({16, 16});
    TrigFieldOptions opt;
    opt.base_bandwidth = 2;
    const MatrixForm a = random_skew_form(rng, t2, 1, 2, 0, opt);
    const MatrixForm F = curvature(a);
    CHECK((exterior_derivative(F) + bracket(a, F)).max_abs() <= 1e-10);
}

TEST_CASE("curvature and Higgs derivative transform by conjugation") {
    CounterRng rng(56);
    const GroupSpec u2{GroupFamily::UnitaryU, 2};
    const Mesh t2 = make_torus_mesh({16, 16});
    const GaugePair p = sample_pair(rng, t2, 32);
    const GroupMap gamma = conjugated_loop_map(rng, u2, t2, 32);
    const GaugeTransformed moved = gauge_transform_pair(p, gamma);

    const MatrixForm gi = map_inverse_values(gamma);
    const MatrixForm F = curvature(p.connection);
    const MatrixForm Fg = curvature(moved.pair.connection);
    CHECK((Fg - wedge(wedge(gi, F), gamma.values)).max_abs() <= 1e-9);

    const MatrixForm D = higgs_cov_derivative(p);
    const MatrixForm Dg = higgs_cov_derivative(moved.pair);
    CHECK((Dg - wedge(wedge(gi, D), gamma.values)).max_abs() <= 1e-9);
    CHECK(moved.pre_projection_skew_defect <= 1e-9);
}

TEST_CASE("gauge transforms require based maps") {
    CounterRng rng(57);
    const GroupSpec u2{GroupFamily::UnitaryU, 2};
    const Mesh t2 = make_torus_mesh({16, 16});
    const GaugePair p = sample_pair(rng, t2, 32);
    // diag(e^{i(theta + 0.5)}, 1): the value at theta = 0 is not the identity
    SampledLoop shifted(u2, 32);
    for (int j = 0; j < 32; ++j) {
        cmat v = cmat::Identity(2, 2);
        v(0, 0) = std::exp(cd(0.0, theta_period * j / 32.0 + 0.5));
        shifted.set_sample(j, v);
    }
    const GroupMap gamma = loop_constant_map(t2, shifted);
    CHECK_THROWS_AS(gauge_transform_pair(p, gamma), NonBasedGauge);
}

TEST_CASE("pair validation rejects structural and invariant defects") {
    CounterRng rng(58);
    const Mesh t2 = make_torus_mesh({16, 16});
    GaugePair p = sample_pair(rng, t2, 32);
    CHECK_NOTHROW(check_gauge_pair(p));

    GaugePair bad = p;
    cmat c = cmat::Zero(2, 2);
    c(0, 0) = cd(0.05, 0.0);
    bad.higgs += broadcast_loop_values(constant_matrix_form(t2, c), 32);
    CHECK_THROWS_AS(check_gauge_pair(bad), ValidationError);

    GaugePair mismatched = p;
    mismatched.higgs = MatrixForm(make_torus_mesh({32, 32}), 0, 2, 32);
    CHECK_THROWS_AS(check_gauge_pair(mismatched), DimensionMismatch);
}

TEST_CASE("skew projection reports the removed defect") {
    const Mesh t2 = make_torus_mesh({16, 16});
    cmat c = cmat::Zero(2, 2);
    c(0, 0) = cd(0.1, 0.0); // Hermitian contamination
    c(0, 1) = cd(0.0, 0.3);
    c(1, 0) = cd(0.0, 0.3);
    MatrixForm w = constant_matrix_form(t2, c);
    const double defect = skew_project_form(w);
    CHECK(defect == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(w.skew_defect() <= 1e-15);
}

TEST_CASE("loop value helpers: integral, derivative, broadcast") {
    const Mesh t2 = make_torus_mesh({16, 16});
    // Phi(theta) = i(0.25 + 0.5 cos theta): mean i/4, derivative -i sin/2
    MatrixForm phi(t2, 0, 1, 32);
    std::vector<cd>& comp = phi.component({});
    for (long p = 0; p < t2.total_points(); ++p)
        for (int t = 0; t < 32; ++t)
            comp[static_cast<size_t>(p * 32 + t)] =
                cd(0.0, 0.25 + 0.5 * std::cos(theta_period * t / 32.0));
    const MatrixForm mean = loop_value_integral(phi);
    CHECK(std::abs((*mean.find_component({}))[0] - cd(0.0, 0.25 * theta_period)) <= 1e-12);
    const MatrixForm dphi = loop_value_derivative(phi);
    CHECK(std::abs((*dphi.find_component({}))[8] - cd(0.0, -0.5)) <= 1e-12); // theta = pi/2
    const MatrixForm b = broadcast_loop_values(mean, 8);
    CHECK(b.loop_samples() == 8);
}
