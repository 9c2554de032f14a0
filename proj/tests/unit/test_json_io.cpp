#include "doctest.h"

#include <cstring>

#include "caloron/errors.hpp"
#include "caloron/invariants.hpp"
#include "caloron/json_io.hpp"
#include "caloron/random_data.hpp"
#include "caloron/rng.hpp"

using namespace caloron;

namespace {

const GroupSpec u2{GroupFamily::UnitaryU, 2};

bool same_samples(const SampledLoop& a, const SampledLoop& b) {
    if (a.rank() != b.rank() || a.sample_count() != b.sample_count()) return false;
    const size_t len = static_cast<size_t>(a.rank()) * a.rank();
    for (int s = 0; s < a.sample_count(); ++s)
        if (std::memcmp(a.sample_data(s), b.sample_data(s), len * sizeof(cd)) != 0) return false;
    return true;
}

} // namespace

TEST_CASE("meshes round trip, weights and factor kinds included") {
    const Mesh t2 = make_torus_mesh({8, 16});
    const Mesh t2b = mesh_from_json(to_json(t2));
    CHECK(t2b.same_factors(t2));
    CHECK_FALSE(t2b.has_weight());

    Mesh mixed({MeshFactor{FactorKind::Interval, 9}, MeshFactor{FactorKind::Circle, 8}});
    std::vector<double> w(static_cast<size_t>(mixed.total_points()));
    for (size_t i = 0; i < w.size(); ++i) w[i] = 0.5 + 0.25 * static_cast<double>(i);
    mixed.set_weight(w);
    const Mesh back = mesh_from_json(to_json(mixed));
    CHECK(back.same_factors(mixed));
    REQUIRE(back.has_weight());
    CHECK(back.weight() == w);
}

TEST_CASE("sampled loops round trip bit for bit") {
    CounterRng rng(301);
    const SampledLoop loop = random_winding_loop(rng, u2, 32, 3).loop;
    const SampledLoop back = loop_from_json(to_json(loop));
    CHECK(back.spec().family == GroupFamily::UnitaryU);
    CHECK_FALSE(back.algebra_valued());
    CHECK(same_samples(loop, back));

    const SampledLoop alg = random_algebra_loop(rng, u2, 16, 2);
    const SampledLoop alg_back = loop_from_json(to_json(alg));
    CHECK(alg_back.algebra_valued());
    CHECK(same_samples(alg, alg_back));
}

TEST_CASE("matrix forms round trip, loop-valued components included") {
    CounterRng rng(302);
    const Mesh t2 = make_torus_mesh({8, 8});
    const MatrixForm plain = random_skew_form(rng, t2, 1, 2, 0);
    const MatrixForm plain_back = form_from_json(to_json(plain));
    CHECK(plain_back.degree() == 1);
    CHECK(plain_back.rank() == 2);
    CHECK((plain_back - plain).max_abs() == 0.0);

    const MatrixForm looped = random_skew_form(rng, t2, 2, 2, 16);
    const MatrixForm looped_back = form_from_json(to_json(looped));
    CHECK(looped_back.loop_samples() == 16);
    CHECK((looped_back - looped).max_abs() == 0.0);
}

TEST_CASE("graded forms, group maps and generator pairs round trip") {
    CounterRng rng(303);
    const Mesh t2 = make_torus_mesh({16, 16});
    const GroupMap g = random_phase_conjugate_map(rng, u2, t2, 2, 2);

    const GradedForm ch = odd_chern_character(g);
    CHECK(graded_distance(graded_form_from_json(to_json(ch)), ch) == 0.0);

    const GroupMap g_back = group_map_from_json(to_json(g));
    CHECK(g_back.spec.rank_n == 2);
    CHECK((g_back.values - g.values).max_abs() == 0.0);

    const TwzElement e = random_twz_element(rng, u2, t2);
    const TwzElement e_back = twz_element_from_json(to_json(e));
    CHECK((e_back.g.values - e.g.values).max_abs() == 0.0);
    CHECK(graded_distance(e_back.chi, e.chi) == 0.0);
    CHECK(e_back.notes.empty());
}

TEST_CASE("gauge pairs round trip and are validated on the way in") {
    CounterRng rng(304);
    const Mesh t2 = make_torus_mesh({8, 8});
    const GaugePair pair = random_gauge_pair(rng, u2, t2, 16);
    const GaugePair back = gauge_pair_from_json(to_json(pair));
    CHECK((back.connection - pair.connection).max_abs() == 0.0);
    CHECK((back.higgs - pair.higgs).max_abs() == 0.0);

    GaugePair bad = pair;
    bad.higgs.component(AxisSet{})[0] += cd(0.05, 0.0);
    CHECK_THROWS_AS(gauge_pair_from_json(to_json(bad)), ValidationError);
}

TEST_CASE("malformed documents report schema errors, not crashes") {
    CHECK_THROWS_AS(mesh_from_json("{\"factors\": ["), SchemaError);
    CHECK_THROWS_AS(mesh_from_json("{\"factors\": [{\"kind\": \"sphere\", \"samples\": 8}]}"),
                    SchemaError);
    CHECK_THROWS_AS(mesh_from_json("{\"factors\": [{\"kind\": \"circle\", \"samples\": 1}]}"),
                    SchemaError);
    CHECK_THROWS_AS(
        mesh_from_json(
            "{\"factors\": [{\"kind\": \"circle\", \"samples\": 4}], \"weight\": [1.0]}"),
        SchemaError);
    CHECK_THROWS_AS(loop_from_json("{\"n\": 1, \"N\": 4, \"group\": \"SO\", \"samples\": []}"),
                    SchemaError);
    CHECK_THROWS_AS(loop_from_json("{\"n\": 1, \"N\": 4, \"group\": \"U\", \"samples\": "
                                   "[[[1.0, 0.0]], [[1.0, 0.0]], [[1.0, 0.0]]]}"),
                    SchemaError);
    CHECK_THROWS_AS(loop_from_json("{\"n\": 1, \"N\": 4, \"group\": \"U\", \"samples\": "
                                   "[[[1.0]], [[1.0]], [[1.0]], [[1.0]]]}"),
                    SchemaError);
}

TEST_CASE("inconsistent form documents are rejected field by field") {
    const Mesh t2 = make_torus_mesh({4, 4});
    const std::string mesh_json = to_json(t2);

    const std::string bad_degree = "{\"mesh\": " + mesh_json +
                                   ", \"degree\": 3, \"n\": 1, \"loop_samples\": 0, "
                                   "\"components\": {}}";
    CHECK_THROWS_AS(form_from_json(bad_degree), SchemaError);

    const std::string bad_key = "{\"mesh\": " + mesh_json +
                                ", \"degree\": 2, \"n\": 1, \"loop_samples\": 0, "
                                "\"components\": {\"(1<0)\": []}}";
    CHECK_THROWS_AS(form_from_json(bad_key), SchemaError);

    const std::string wrong_degree_key = "{\"mesh\": " + mesh_json +
                                         ", \"degree\": 1, \"n\": 1, \"loop_samples\": 0, "
                                         "\"components\": {\"(0<1)\": []}}";
    CHECK_THROWS_AS(form_from_json(wrong_degree_key), SchemaError);

    const std::string short_grid = "{\"mesh\": " + mesh_json +
                                   ", \"degree\": 0, \"n\": 1, \"loop_samples\": 0, "
                                   "\"components\": {\"()\": [[0.0, 0.0]]}}";
    CHECK_THROWS_AS(form_from_json(short_grid), SchemaError);

    const std::string zero_form = "{\"mesh\": " + mesh_json +
                                  ", \"degree\": 1, \"n\": 2, \"loop_samples\": 0, "
                                  "\"components\": {}}";
    CHECK(form_from_json(zero_form).max_abs() == 0.0);

    // graded parts must be filed under their own degree
    const std::string mis_filed =
        "{\"2\": {\"mesh\": " + mesh_json +
        ", \"degree\": 0, \"n\": 1, \"loop_samples\": 0, \"components\": {}}}";
    CHECK_THROWS_AS(graded_form_from_json(mis_filed), SchemaError);
}

TEST_CASE("group map documents must be rank-consistent 0-forms") {
    CounterRng rng(305);
    const Mesh s1 = make_circle_mesh(8);
    const GroupMap g = random_phase_conjugate_map(rng, u2, s1, 1, 1);
    std::string text = to_json(g);
    const std::string from = "\"n\":2";
    const size_t at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), "\"n\":3");
    CHECK_THROWS_AS(group_map_from_json(text), SchemaError);
}
