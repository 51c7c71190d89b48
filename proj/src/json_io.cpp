#include "cubiclin/json_io.hpp"

#include <fstream>

namespace cubiclin {

namespace {

std::string need_string(const Json& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string("expected a string for ") + what);
    return j.get<std::string>();
}

const Json& need_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

Json to_json(const Rat& q) { return rat_str(q); }

Json to_json(const Vec& v) {
    Json coords = Json::array();
    for (std::size_t i = 0; i < v.size(); ++i) coords.push_back(rat_str(v[i]));
    return Json{{"coords", coords}};
}

Json to_json(const FloatVec& v) {
    Json j{{"coords", v.coords}};
    if (v.overflowed) j["overflowed"] = true;
    return j;
}

Json to_json(const Mat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
        rows.push_back(row);
    }
    return Json{{"rows", rows}};
}

Json to_json(const SubspaceBasis& b) {
    Json vectors = Json::array();
    for (const Vec& v : b.vectors()) vectors.push_back(to_json(v));
    return Json{{"ambient_dim", b.ambient_dim()},
                {"label", basis_label_str(b.label())},
                {"vectors", vectors}};
}

Json to_json(const PropernessCertificate& c) {
    return Json{{"matrix", to_json(c.a)},
                {"subspace", to_json(c.v_space)},
                {"x_inf", to_json(c.x_inf)},
                {"v", to_json(c.v)}};
}

Json to_json(const DruzkowskiVerdict& v) {
    Json j{{"trials", v.trials}, {"seed", v.seed}, {"note", v.note}};
    switch (v.kind) {
        case DruzkowskiVerdict::Kind::certified_no: j["verdict"] = "certified_no"; break;
        case DruzkowskiVerdict::Kind::probably_yes: j["verdict"] = "probably_yes"; break;
        case DruzkowskiVerdict::Kind::undetermined: j["verdict"] = "undetermined"; break;
    }
    if (v.witness) j["witness"] = to_json(*v.witness);
    return j;
}

Json to_json(const ProbeStats& s) {
    return Json{{"runs", s.runs},
                {"converged_to_zero", s.converged_to_zero},
                {"diverged", s.diverged},
                {"budget_exceeded", s.budget_exceeded},
                {"stalled", s.stalled}};
}

Json to_json(const ClassZVerdict& v) {
    Json j{{"stats", to_json(v.stats)},
           {"lambdas", v.lambdas},
           {"starts_per_lambda", v.starts_per_lambda},
           {"seed", v.seed},
           {"tolerances",
            Json{{"root_tol", v.options.root_tol},
                 {"nonzero_floor", v.options.nonzero_floor},
                 {"divergence_norm", v.options.divergence_norm},
                 {"max_iters", v.options.max_iters},
                 {"max_halvings", v.options.max_halvings}}}};
    if (v.kind == ClassZVerdict::Kind::counterexample) {
        j["verdict"] = "counterexample";
        j["lambda"] = v.lambda;
        j["root"] = to_json(v.root);
        j["residual"] = v.residual;
    } else {
        j["verdict"] = "no_counterexample_found";
    }
    return j;
}

Json to_json(const ClassZCertificate& c) {
    return Json{{"matrix", to_json(c.matrix)},
                {"alpha", rat_str(c.alpha)},
                {"check_1", c.check_1},
                {"check_2", c.check_2},
                {"corank_check", c.corank_check}};
}

Json to_json(const FamilyParams& p) {
    return Json{{"a11", rat_str(p.a11)}, {"a12", rat_str(p.a12)},
                {"a13", rat_str(p.a13)}, {"a21", rat_str(p.a21)},
                {"a22", rat_str(p.a22)}, {"a23", rat_str(p.a23)},
                {"lambda", rat_str(p.lambda)}, {"mu", rat_str(p.mu)}};
}

Json to_json(const FamilySample& s) {
    return Json{{"params", to_json(s.params)}, {"matrix", to_json(s.matrix)}};
}

Json to_json(const WitnessTable& t) {
    Json rows = Json::array();
    for (const WitnessRow& r : t.rows)
        rows.push_back(Json{{"gamma", rat_str(r.gamma)},
                            {"x", to_json(r.x)},
                            {"fhat", to_json(r.fhat)}});
    return Json{{"certificate", to_json(t.cert)}, {"rows", rows}};
}

Json to_json(const LiftedWitness& w) {
    Json records = Json::array();
    for (const LiftRecord& r : w.records)
        records.push_back(Json{{"gamma", rat_str(r.gamma)},
                               {"u", to_json(r.u)},
                               {"y", to_json(r.y)},
                               {"v_small", to_json(r.v_small)},
                               {"x_ker", to_json(r.x_ker)},
                               {"z", to_json(r.z)}});
    return Json{{"solve_matrix", to_json(w.solve_matrix)}, {"records", records}};
}

Json to_json(const NonProperLine& l) {
    return Json{{"anchor", to_json(l.anchor)},
                {"direction", to_json(l.direction)},
                {"empirical_sign", l.empirical_sign}};
}

Json to_json(const LineSample& s) {
    return Json{{"t", s.t},
                {"limit", to_json(s.limit)},
                {"conv_residual", s.conv_residual},
                {"collinearity_residual", s.collinearity_residual},
                {"magnitude_residual", s.magnitude_residual},
                {"empirical_sign", s.empirical_sign}};
}

Json to_json(const SfStructureReport& r) {
    Json lines = Json::array();
    for (const NonProperLine& l : r.lines) lines.push_back(to_json(l));
    return Json{{"lines", lines},
                {"kernel_basis", to_json(r.kernel)},
                {"note", r.note}};
}

Json to_json(const SfCertification& c) {
    return Json{{"certificate", to_json(c.cert)},
                {"witness", to_json(c.witness)},
                {"lift", to_json(c.lift)},
                {"report", to_json(c.report)}};
}

Json to_json(const DecayTable& t) {
    Json rows = Json::array();
    for (const DecayRow& r : t.rows)
        rows.push_back(Json{{"gamma", rat_str(r.gamma)},
                            {"norm_x", r.norm_x},
                            {"norm_fhat", r.norm_fhat},
                            {"norm_z", r.norm_z},
                            {"norm_FA_z", r.norm_fa_z}});
    return Json{{"rows", rows}};
}

Json to_json(const RefutationReport& r) {
    return Json{{"matrix", to_json(r.matrix)},
                {"alpha", rat_str(r.alpha)},
                {"class_z_certificate", to_json(r.class_z)},
                {"nonproperness", to_json(r.nonproperness)},
                {"druzkowski", to_json(r.druzkowski)},
                {"decay_csv", r.decay_csv},
                {"decay_slope", r.decay_slope}};
}

Rat parse_rat_json(const Json& j) { return parse_rat(need_string(j, "rational")); }

Vec parse_vec(const Json& j) {
    const Json& coords = need_field(j, "coords");
    if (!coords.is_array()) throw ParseError("'coords' must be an array");
    std::vector<Rat> c;
    for (const Json& e : coords) c.push_back(parse_rat_json(e));
    return Vec(std::move(c));
}

Mat parse_mat(const Json& j) {
    const Json& rows = need_field(j, "rows");
    if (!rows.is_array() || rows.empty()) throw ParseError("'rows' must be a non-empty array");
    std::vector<std::vector<Rat>> data;
    for (const Json& row : rows) {
        if (!row.is_array()) throw ParseError("matrix rows must be arrays");
        std::vector<Rat> r;
        for (const Json& e : row) r.push_back(parse_rat_json(e));
        data.push_back(std::move(r));
        if (data.back().size() != data.front().size())
            throw ParseError("matrix rows differ in length");
    }
    return Mat::from_rows(data);
}

SubspaceBasis parse_subspace_basis(const Json& j) {
    std::size_t ambient = need_field(j, "ambient_dim").get<std::size_t>();
    BasisLabel label = basis_label_from_str(need_string(need_field(j, "label"), "label"));
    std::vector<Vec> vs;
    for (const Json& e : need_field(j, "vectors")) vs.push_back(parse_vec(e));
    return SubspaceBasis(ambient, std::move(vs), label);
}

PropernessCertificate parse_properness_certificate(const Json& j) {
    return PropernessCertificate::make(parse_mat(need_field(j, "matrix")),
                                       parse_subspace_basis(need_field(j, "subspace")),
                                       parse_vec(need_field(j, "x_inf")),
                                       parse_vec(need_field(j, "v")));
}

ClassZCertificate parse_class_z_certificate(const Json& j) {
    ClassZCertificate c{parse_mat(need_field(j, "matrix")),
                        parse_rat(need_string(need_field(j, "alpha"), "alpha")),
                        need_field(j, "check_1").get<bool>(),
                        need_field(j, "check_2").get<bool>(),
                        need_field(j, "corank_check").get<bool>()};
    c.verify();
    return c;
}

DruzkowskiVerdict parse_druzkowski_verdict(const Json& j) {
    DruzkowskiVerdict v;
    std::string kind = need_string(need_field(j, "verdict"), "verdict");
    if (kind == "certified_no") v.kind = DruzkowskiVerdict::Kind::certified_no;
    else if (kind == "probably_yes") v.kind = DruzkowskiVerdict::Kind::probably_yes;
    else if (kind == "undetermined") v.kind = DruzkowskiVerdict::Kind::undetermined;
    else throw ParseError("unknown verdict '" + kind + "'");
    v.trials = need_field(j, "trials").get<int>();
    v.seed = need_field(j, "seed").get<std::uint64_t>();
    v.note = need_string(need_field(j, "note"), "note");
    if (j.contains("witness")) v.witness = parse_vec(j.at("witness"));
    return v;
}

WitnessTable parse_witness_table(const Json& j) {
    WitnessTable t{parse_properness_certificate(need_field(j, "certificate")), {}};
    for (const Json& e : need_field(j, "rows"))
        t.rows.push_back(WitnessRow{parse_rat(need_string(need_field(e, "gamma"), "gamma")),
                                    parse_vec(need_field(e, "x")),
                                    parse_vec(need_field(e, "fhat"))});
    return t;
}

LiftedWitness parse_lifted_witness(const Json& j, const Mat& a) {
    LiftedWitness w;
    w.solve_matrix = parse_mat(need_field(j, "solve_matrix"));
    for (const Json& e : need_field(j, "records"))
        w.records.push_back(LiftRecord{parse_rat(need_string(need_field(e, "gamma"), "gamma")),
                                       parse_vec(need_field(e, "u")),
                                       parse_vec(need_field(e, "y")),
                                       parse_vec(need_field(e, "v_small")),
                                       parse_vec(need_field(e, "x_ker")),
                                       parse_vec(need_field(e, "z"))});
    w.verify(a);
    return w;
}

Mat load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return parse_mat(j);
}

}  // namespace cubiclin
