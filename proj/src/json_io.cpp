#include "schottky_zeta/json_io.hpp"

namespace szeta {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw BadSpec("complex numbers are [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json sphere_point_to_json(const SpherePoint& p) {
    if (p.is_infinity()) return Json("inf");
    return complex_to_json(p.value);
}

SpherePoint sphere_point_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return SpherePoint::infinity();
        throw BadSpec("sphere points are [re, im] or \"inf\"");
    }
    return SpherePoint(complex_from_json(j));
}

Json circle_to_json(const Circle& c) {
    Json j;
    j["center"] = complex_to_json(c.center);
    j["radius"] = c.radius;
    j["disk"] = c.disk_is_interior() ? "interior" : "exterior";
    return j;
}

Circle circle_from_json(const Json& j) {
    if (!j.contains("center") || !j.contains("radius")) {
        throw BadSpec("circles need center and radius");
    }
    const Complex center = complex_from_json(j.at("center"));
    const double radius = j.at("radius").get<double>();
    auto orientation = Circle::Orientation::counterclockwise;
    if (j.contains("disk")) {
        const std::string side = j.at("disk").get<std::string>();
        if (side == "exterior") {
            orientation = Circle::Orientation::clockwise;
        } else if (side != "interior") {
            throw BadSpec("circle disk side must be \"interior\" or \"exterior\"");
        }
    }
    if (!(radius > 0.0)) throw BadSpec("circle radius must be positive");
    return Circle(center, radius, orientation);
}

GroupSpec parse_group_spec(const Json& j) {
    if (!j.is_object()) throw BadSpec("group spec must be a JSON object");
    if (!j.contains("schema") || j.at("schema") != kGroupSpecSchema) {
        throw BadSpec(std::string("group spec schema must be ") + kGroupSpecSchema);
    }
    if (!j.contains("genus") || !j.at("genus").is_number_integer()) {
        throw BadSpec("group spec needs an integer genus");
    }
    GroupSpec spec;
    spec.genus = j.at("genus").get<int>();
    if (!j.contains("generators") || !j.at("generators").is_array()) {
        throw BadSpec("group spec needs a generators array");
    }
    for (const Json& gj : j.at("generators")) {
        GeneratorSpec gs;
        if (gj.contains("matrix")) {
            const Json& m = gj.at("matrix");
            if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) {
                throw BadSpec("generator matrix must be 2x2");
            }
            gs.matrix = {complex_from_json(m[0][0]), complex_from_json(m[0][1]),
                         complex_from_json(m[1][0]), complex_from_json(m[1][1])};
        } else if (gj.contains("alpha") && gj.contains("beta") && gj.contains("q")) {
            gs.alpha = sphere_point_from_json(gj.at("alpha"));
            gs.beta = sphere_point_from_json(gj.at("beta"));
            gs.q = complex_from_json(gj.at("q"));
        } else {
            throw BadSpec("each generator needs a matrix or alpha/beta/q");
        }
        spec.generators.push_back(std::move(gs));
    }
    if (j.contains("circles")) {
        std::vector<Circle> circles;
        for (const Json& cj : j.at("circles")) circles.push_back(circle_from_json(cj));
        spec.circles = std::move(circles);
    }
    if (j.contains("flags")) {
        const Json& f = j.at("flags");
        spec.normalize = f.value("normalize", false);
        spec.strict = f.value("strict", false);
        spec.real = f.value("real", false);
    }
    return spec;
}

Json resolved_group_json(const SchottkyGroup& group) {
    Json j;
    j["genus"] = group.genus();
    j["is_real"] = group.is_real();
    j["is_normalized"] = group.is_normalized();
    Json gens = Json::array();
    for (int i = 1; i <= group.genus(); ++i) {
        Json gj;
        gj["alpha"] = sphere_point_to_json(group.fixed_point(i));
        gj["beta"] = sphere_point_to_json(group.fixed_point(-i));
        gj["q"] = complex_to_json(group.multiplier(i));
        const MoebiusMap& m = group.generator(i);
        gj["matrix"] = Json::array(
            {Json::array({complex_to_json(m.a()), complex_to_json(m.b())}),
             Json::array({complex_to_json(m.c()), complex_to_json(m.d())})});
        gens.push_back(std::move(gj));
    }
    j["generators"] = std::move(gens);
    const CircleReport& rep = group.circle_report();
    Json cj;
    cj["valid"] = rep.valid;
    cj["disjointness_margin"] = rep.disjointness_margin;
    cj["mapping_residual"] = rep.mapping_residual;
    if (!rep.note.empty()) cj["note"] = rep.note;
    Json list = Json::array();
    for (const Circle& c : rep.circles) list.push_back(circle_to_json(c));
    cj["list"] = std::move(list);
    j["circles"] = std::move(cj);
    return j;
}

Json product_value_to_json(const ProductValue& pv) {
    Json j;
    j["value"] = complex_to_json(pv.value);
    j["max_word_len"] = pv.max_word_len;
    j["inner_cutoff"] = pv.inner_cutoff;
    j["terms_used"] = pv.terms_used;
    j["tail_estimate"] = pv.tail_estimate;
    j["converged"] = pv.converged;
    return j;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw BadSpec("matrix must be a non-empty array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j[static_cast<size_t>(r)].size()) != cols) {
            throw BadSpec("matrix rows must have equal length");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(j[static_cast<size_t>(r)][static_cast<size_t>(c)]);
        }
    }
    return m;
}

}  // namespace szeta
