// cubiclin: properness analysis of cubic-linear maps x + (Ax)^3 with exact
// rational certificates. See README.md for the file formats.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cubiclin/report.hpp"
#include "cubiclin/version.hpp"

namespace {

using namespace cubiclin;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << content;
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

std::vector<Rat> parse_gamma_list(const std::string& text) {
    std::vector<Rat> gammas;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw ParseError("empty entry in gamma list");
        gammas.push_back(parse_rat(item));
    }
    if (gammas.empty()) throw ParseError("empty gamma list");
    return gammas;
}

int run_analyze(const std::string& matrix_path, const AnalyzeOptions& opts,
                const std::string& out_path) {
    Mat a = load_matrix_file(matrix_path);
    Json report = analyze_matrix(a, opts);
    write_output(out_path, report.dump(2) + "\n");
    return 0;
}

int run_witness(const std::string& matrix_path, const std::string& gamma_arg,
                const std::string& csv_path, std::uint64_t seed) {
    Mat a = load_matrix_file(matrix_path);
    SfOptions opts;
    opts.seed = seed;
    if (!gamma_arg.empty()) opts.gammas = parse_gamma_list(gamma_arg);
    SfOutcome sf = certify_zero_in_Sf(a, opts);
    if (!sf.ok()) {
        std::cerr << "witness construction inconclusive: " << sf.refusal_reason << "\n";
        return 2;
    }
    DecayTable table = decay_table(sf.success->witness, sf.success->lift);
    write_output(csv_path, table.to_csv());
    return 0;
}

int run_family_sample(int count, std::uint64_t seed, bool general,
                      const std::string& out_path) {
    std::vector<FamilySample> samples = sample_family(count, seed, !general);
    Json j = Json::array();
    for (const FamilySample& s : samples) j.push_back(to_json(s));
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int run_family_reference(const std::string& out_path) {
    ReferenceInstance inst = reference_instance();
    Json j{{"matrix", to_json(inst.matrix)},
           {"alpha", rat_str(inst.alpha)},
           {"params", to_json(inst.params.general())}};
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int run_family_certify(const std::string& matrix_path, const std::string& out_path) {
    Mat m = load_matrix_file(matrix_path);
    ClassZOutcome out = certify_class_z(m);
    if (!out.ok()) {
        Json j{{"verdict", "refused"}, {"reason", class_z_refusal_str(out.refusal)}};
        write_output(out_path, j.dump(2) + "\n");
        return 1;
    }
    Json j{{"verdict", "certified"}, {"certificate", to_json(*out.certificate)}};
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int run_family_refute(const std::string& out_path) {
    RefutationReport rep = build_refutation_report();
    write_output(out_path, to_json(rep).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"properness analysis of cubic-linear maps x + (Ax)^3"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    if (const char* env = std::getenv("CUBICLIN_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (...) {
            std::cerr << "invalid CUBICLIN_SEED value '" << env << "'\n";
            return 1;
        }
    }

    std::string matrix_path, out_path, csv_path, gamma_arg;
    AnalyzeOptions opts;
    bool exact_mode = false;
    double tol = 1e-9;
    int count = 5;
    bool general = false;

    CLI::App* analyze = app.add_subcommand("analyze", "full report for one matrix");
    analyze->add_option("matrix", matrix_path, "matrix JSON file")->required();
    CLI::Option* exact_opt = analyze->add_flag("--exact", exact_mode,
                                               "exact arithmetic only (default)");
    analyze->add_option("--tol", tol, "tolerance for numeric membership filters")
        ->excludes(exact_opt);
    analyze->add_option("--seed", seed, "random seed (env CUBICLIN_SEED)");
    analyze->add_option("--trials", opts.trials, "sample points / probe starts")
        ->check(CLI::PositiveNumber);
    analyze->add_option("--out", out_path, "write the report to this path");
    analyze->add_flag("--no-timings", "omit timings for byte-stable output");

    CLI::App* witness = app.add_subcommand("witness", "decay table along a witness");
    witness->add_option("matrix", matrix_path, "matrix JSON file")->required();
    witness->add_option("--gammas", gamma_arg, "comma-separated gamma ladder");
    witness->add_option("--csv", csv_path, "write the CSV to this path");
    witness->add_option("--seed", seed, "random seed (env CUBICLIN_SEED)");

    CLI::App* family = app.add_subcommand("family", "the 3x3 counterexample family");
    family->require_subcommand(1);
    CLI::App* sample = family->add_subcommand("sample", "draw family members");
    sample->add_option("--count", count, "number of samples")->required();
    sample->add_option("--seed", seed, "random seed (env CUBICLIN_SEED)");
    sample->add_flag("--general", general, "sample the full family, not the row3=row1 slice");
    sample->add_option("--out", out_path, "write the samples to this path");
    CLI::App* refinst = family->add_subcommand("reference-instance", "the reference member");
    refinst->add_option("--out", out_path, "write to this path");
    CLI::App* certify = family->add_subcommand("certify", "exact class-Z certificate");
    certify->add_option("matrix", matrix_path, "matrix JSON file")->required();
    certify->add_option("--out", out_path, "write to this path");
    CLI::App* refute = family->add_subcommand("refutation", "full counterexample report");
    refute->add_option("--out", out_path, "write to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    opts.seed = seed;
    opts.tol = tol;
    opts.timings = analyze->count("--no-timings") == 0;

    try {
        if (app.got_subcommand(analyze)) return run_analyze(matrix_path, opts, out_path);
        if (app.got_subcommand(witness))
            return run_witness(matrix_path, gamma_arg, csv_path, seed);
        if (family->got_subcommand(sample))
            return run_family_sample(count, seed, general, out_path);
        if (family->got_subcommand(refinst)) return run_family_reference(out_path);
        if (family->got_subcommand(certify))
            return run_family_certify(matrix_path, out_path);
        if (family->got_subcommand(refute)) return run_family_refute(out_path);
    } catch (const NonConvergent& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const SamplingExhausted& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
