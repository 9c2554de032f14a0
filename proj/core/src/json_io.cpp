#include "caloron/json_io.hpp"

#include <sstream>

#include "json.hpp"

namespace caloron {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("json parse: ") + e.what());
    }
}

json complex_to(cd z) { return json::array({z.real(), z.imag()}); }

cd complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError("complex values must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json grid_to(const std::vector<cd>& values) {
    json out = json::array();
    for (cd z : values) out.push_back(complex_to(z));
    return out;
}

std::vector<cd> grid_from(const json& j, size_t expected) {
    if (!j.is_array() || j.size() != expected)
        throw SchemaError("value grid has the wrong length");
    std::vector<cd> out(expected);
    for (size_t i = 0; i < expected; ++i) out[i] = complex_from(j[i]);
    return out;
}

std::string family_to(GroupFamily f) {
    switch (f) {
        case GroupFamily::UnitaryU: return "U";
        case GroupFamily::GeneralLinearGL: return "GL";
        case GroupFamily::SpecialUnitarySU: return "SU";
    }
    throw SchemaError("unknown group family");
}

GroupFamily family_from(const std::string& s) {
    if (s == "U") return GroupFamily::UnitaryU;
    if (s == "GL") return GroupFamily::GeneralLinearGL;
    if (s == "SU") return GroupFamily::SpecialUnitarySU;
    throw SchemaError("group must be one of \"U\", \"GL\", \"SU\"");
}

json spec_to(const GroupSpec& spec) {
    return json{{"group", family_to(spec.family)}, {"n", spec.rank_n}};
}

GroupSpec spec_from(const json& j) {
    GroupSpec spec;
    spec.family = family_from(j.at("group").get<std::string>());
    spec.rank_n = j.at("n").get<int>();
    if (spec.rank_n < 1) throw SchemaError("rank must be positive");
    return spec;
}

json mesh_to(const Mesh& mesh) {
    json factors = json::array();
    for (const MeshFactor& f : mesh.factors())
        factors.push_back(json{
            {"kind", f.kind == FactorKind::Circle ? "circle" : "interval"},
            {"samples", f.samples}});
    json out{{"factors", factors}};
    if (mesh.has_weight()) out["weight"] = mesh.weight();
    return out;
}

Mesh mesh_from(const json& j) {
    const json& factors = j.at("factors");
    if (!factors.is_array()) throw SchemaError("mesh factors must be an array");
    std::vector<MeshFactor> fs;
    for (const json& f : factors) {
        const std::string kind = f.at("kind").get<std::string>();
        MeshFactor mf;
        if (kind == "circle")
            mf.kind = FactorKind::Circle;
        else if (kind == "interval")
            mf.kind = FactorKind::Interval;
        else
            throw SchemaError("factor kind must be \"circle\" or \"interval\"");
        mf.samples = f.at("samples").get<int>();
        if (mf.samples < 2) throw SchemaError("factor sample counts must be at least 2");
        fs.push_back(mf);
    }
    Mesh mesh(std::move(fs));
    if (j.contains("weight")) {
        auto w = j.at("weight").get<std::vector<double>>();
        if (static_cast<long>(w.size()) != mesh.total_points())
            throw SchemaError("weight length must equal the grid size");
        mesh.set_weight(std::move(w));
    }
    return mesh;
}

std::string axes_key(const AxisSet& axes) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < axes.size(); ++i) {
        if (i) os << '<';
        os << axes[i];
    }
    os << ')';
    return os.str();
}

AxisSet axes_from_key(const std::string& key) {
    if (key.size() < 2 || key.front() != '(' || key.back() != ')')
        throw SchemaError("component keys look like \"(i<j<...)\"");
    AxisSet axes;
    const std::string body = key.substr(1, key.size() - 2);
    if (body.empty()) return axes;
    std::istringstream is(body);
    std::string piece;
    while (std::getline(is, piece, '<')) {
        try {
            axes.push_back(std::stoi(piece));
        } catch (const std::exception&) {
            throw SchemaError("component keys look like \"(i<j<...)\"");
        }
    }
    for (size_t i = 1; i < axes.size(); ++i)
        if (axes[i - 1] >= axes[i]) throw SchemaError("component axes must increase");
    return axes;
}

json form_to(const MatrixForm& form) {
    json comps = json::object();
    for (const auto& [axes, values] : form.components()) comps[axes_key(axes)] = grid_to(values);
    return json{{"mesh", mesh_to(form.mesh())},
                {"degree", form.degree()},
                {"n", form.rank()},
                {"loop_samples", form.loop_samples()},
                {"components", comps}};
}

MatrixForm form_from(const json& j) {
    const Mesh mesh = mesh_from(j.at("mesh"));
    const int degree = j.at("degree").get<int>();
    const int n = j.at("n").get<int>();
    const int loop_samples = j.value("loop_samples", 0);
    if (degree < 0 || degree > mesh.dim()) throw SchemaError("degree out of range");
    if (n < 1) throw SchemaError("value rank must be positive");
    if (loop_samples < 0) throw SchemaError("loop_samples must be nonnegative");
    MatrixForm form(mesh, degree, n, loop_samples);
    const size_t expected =
        static_cast<size_t>(mesh.total_points()) * static_cast<size_t>(form.value_len());
    for (const auto& [key, grid] : j.at("components").items()) {
        const AxisSet axes = axes_from_key(key);
        if (!form.valid_axis_set(axes))
            throw SchemaError("component " + key + " does not match the form degree");
        form.component(axes) = grid_from(grid, expected);
    }
    return form;
}

json graded_to(const GradedForm& graded) {
    json out = json::object();
    for (const auto& [degree, part] : graded) out[std::to_string(degree)] = form_to(part);
    return out;
}

GradedForm graded_from(const json& j) {
    if (!j.is_object()) throw SchemaError("graded forms are objects keyed by degree");
    GradedForm out;
    for (const auto& [key, part] : j.items()) {
        int degree = 0;
        try {
            degree = std::stoi(key);
        } catch (const std::exception&) {
            throw SchemaError("graded-form keys are degrees");
        }
        MatrixForm form = form_from(part);
        if (form.degree() != degree)
            throw SchemaError("graded part stored under the wrong degree");
        out.emplace(degree, std::move(form));
    }
    return out;
}

json group_map_to(const GroupMap& map) {
    return json{{"spec", spec_to(map.spec)}, {"values", form_to(map.values)}};
}

GroupMap group_map_from(const json& j) {
    GroupMap map;
    map.spec = spec_from(j.at("spec"));
    map.values = form_from(j.at("values"));
    if (map.values.degree() != 0) throw SchemaError("map values must form a 0-form");
    if (map.values.rank() != map.spec.rank_n)
        throw SchemaError("map value rank disagrees with the spec");
    return map;
}

template <typename Fn>
auto guarded(const std::string& text, Fn&& fn) {
    const json j = parse_text(text);
    try {
        return fn(j);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("schema: ") + e.what());
    } catch (const DimensionMismatch& e) {
        // shape constraints violated while building the value: the document
        // is malformed, not merely invalid gauge data
        throw SchemaError(std::string("schema: ") + e.what());
    }
}

} // namespace

std::string to_json(const Mesh& mesh) { return mesh_to(mesh).dump(); }

Mesh mesh_from_json(const std::string& text) {
    return guarded(text, [](const json& j) { return mesh_from(j); });
}

std::string to_json(const SampledLoop& loop) {
    json samples = json::array();
    const int len = loop.rank() * loop.rank();
    for (int s = 0; s < loop.sample_count(); ++s) {
        json m = json::array();
        const cd* d = loop.sample_data(s);
        for (int i = 0; i < len; ++i) m.push_back(complex_to(d[i]));
        samples.push_back(std::move(m));
    }
    json out{{"n", loop.rank()},
             {"N", loop.sample_count()},
             {"group", family_to(loop.spec().family)},
             {"samples", samples}};
    if (loop.algebra_valued()) out["algebra"] = true;
    return out.dump();
}

SampledLoop loop_from_json(const std::string& text) {
    return guarded(text, [](const json& j) {
        GroupSpec spec;
        spec.rank_n = j.at("n").get<int>();
        spec.family = family_from(j.at("group").get<std::string>());
        const int samples = j.at("N").get<int>();
        if (spec.rank_n < 1 || samples < 2) throw SchemaError("loop shape out of range");
        SampledLoop loop(spec, samples, j.value("algebra", false));
        const json& data = j.at("samples");
        if (!data.is_array() || static_cast<int>(data.size()) != samples)
            throw SchemaError("sample count disagrees with N");
        const size_t len = static_cast<size_t>(spec.rank_n) * spec.rank_n;
        for (int s = 0; s < samples; ++s) {
            const std::vector<cd> m = grid_from(data[static_cast<size_t>(s)], len);
            std::copy(m.begin(), m.end(), loop.sample_data(s));
        }
        return loop;
    });
}

std::string to_json(const MatrixForm& form) { return form_to(form).dump(); }

MatrixForm form_from_json(const std::string& text) {
    return guarded(text, [](const json& j) { return form_from(j); });
}

std::string to_json(const GradedForm& graded) { return graded_to(graded).dump(); }

GradedForm graded_form_from_json(const std::string& text) {
    return guarded(text, [](const json& j) { return graded_from(j); });
}

std::string to_json(const GroupMap& map) { return group_map_to(map).dump(); }

GroupMap group_map_from_json(const std::string& text) {
    return guarded(text, [](const json& j) { return group_map_from(j); });
}

std::string to_json(const GaugePair& pair) {
    return json{{"mesh", mesh_to(pair.connection.mesh())},
                {"spec", spec_to(pair.spec)},
                {"connection", form_to(pair.connection)},
                {"higgs", form_to(pair.higgs)}}
        .dump();
}

GaugePair gauge_pair_from_json(const std::string& text) {
    return guarded(text, [](const json& j) {
        GaugePair pair;
        pair.spec = spec_from(j.at("spec"));
        pair.connection = form_from(j.at("connection"));
        pair.higgs = form_from(j.at("higgs"));
        if (j.contains("mesh")) {
            const Mesh mesh = mesh_from(j.at("mesh"));
            if (!mesh.same_factors(pair.connection.mesh()))
                throw SchemaError("pair mesh disagrees with the connection mesh");
        }
        check_gauge_pair(pair);
        return pair;
    });
}

std::string to_json(const TwzElement& element) {
    return json{{"g", group_map_to(element.g)},
                {"chi", graded_to(element.chi)},
                {"n", element.g.spec.rank_n}}
        .dump();
}

TwzElement twz_element_from_json(const std::string& text) {
    return guarded(text, [](const json& j) {
        TwzElement e;
        e.g = group_map_from(j.at("g"));
        e.chi = graded_from(j.at("chi"));
        for (const auto& [degree, part] : e.chi) {
            if (degree % 2 != 0) throw SchemaError("chi parts must have even degree");
            if (part.rank() != 1) throw SchemaError("chi parts must be scalar forms");
            if (!part.mesh().same_factors(e.g.values.mesh()))
                throw SchemaError("chi lives on a different mesh than g");
        }
        return e;
    });
}

} // namespace caloron
