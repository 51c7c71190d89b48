#include "cubiclin/report.hpp"

#include <chrono>

#include "cubiclin/version.hpp"

namespace cubiclin {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

Json analyze_matrix(const Mat& a, const AnalyzeOptions& opts) {
    if (!a.is_square()) throw DimensionMismatch("analysis needs a square matrix");
    Json report;
    Json timings;
    report["tool"] = kToolName;
    report["tool_version"] = kToolVersion;
    report["seed"] = opts.seed;
    report["input"] = Json{{"dims", a.rows()}, {"matrix", to_json(a)}};

    std::size_t r = rank(a);
    report["rank"] = r;
    report["corank"] = a.rows() - r;
    report["kernel_basis"] = to_json(kernel_basis(a));
    report["rowspace_basis"] = to_json(rowspace_basis(a));
    report["image_basis"] = to_json(colspace_basis(a));

    Clock::time_point t0 = Clock::now();
    DruzkowskiVerdict dz = druzkowski_test(a, opts.trials, opts.seed);
    timings["druzkowski_ms"] = ms_since(t0);
    report["druzkowski"] = to_json(dz);

    t0 = Clock::now();
    Json class_z;
    ClassZOutcome cz = certify_class_z(a);
    if (cz.ok()) {
        class_z["verdict"] = "certified_yes";
        class_z["certificate"] = to_json(*cz.certificate);
    } else {
        class_z["structural_refusal"] = class_z_refusal_str(cz.refusal);
        ClassZVerdict probe = class_z_probe(a, default_lambda_grid(), opts.trials,
                                            opts.seed);
        class_z["verdict"] = probe.kind == ClassZVerdict::Kind::counterexample
                                 ? "counterexample"
                                 : "no_counterexample_found";
        class_z["probe"] = to_json(probe);
    }
    timings["class_z_ms"] = ms_since(t0);
    report["class_z"] = class_z;

    t0 = Clock::now();
    Json properness;
    Json candidates = Json::array();
    for (const Candidate& c : candidate_directions(a, CandidateSearch{})) {
        Json e;
        e["exact"] = c.exact.has_value();
        if (c.exact) e["direction"] = to_json(*c.exact);
        else e["direction_numeric"] = to_json(c.approx);
        candidates.push_back(e);
    }
    properness["candidates"] = candidates;
    SfOptions sf_opts;
    sf_opts.seed = opts.seed;
    SfOutcome sf = certify_zero_in_Sf(a, sf_opts);
    if (sf.ok()) {
        properness["verdict"] = "nonproper_certified";
        properness["certificate"] = to_json(sf.success->cert);
        properness["witness"] = to_json(sf.success->witness);
        properness["lift"] = to_json(sf.success->lift);
        properness["report"] = to_json(sf.success->report);
        DecayTable table = decay_table(sf.success->witness, sf.success->lift);
        properness["decay"] = to_json(table);
        properness["decay_slope"] = table.slope_fhat();
    } else {
        properness["verdict"] = "inconclusive";
        properness["refusal"] = sf.refusal_reason;
    }
    timings["properness_ms"] = ms_since(t0);
    report["properness"] = properness;

    if (opts.timings) report["timings"] = timings;
    return report;
}

}  // namespace cubiclin
