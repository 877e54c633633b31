// twinheart: command-line front end of the workbench.
//
// Exit codes: 0 all rows hold, 1 some required row fails, 2 some required
// row is indeterminate, 3 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "twinheart/io.hpp"
#include "twinheart/nakayama.hpp"
#include "twinheart/workbench.hpp"

using namespace twinheart;
using nlohmann::json;

namespace {

constexpr int kInputError = 3;

int env_int(const char* name, int fallback)
{
    const char* v = std::getenv(name);
    if (!v || !*v)
        return fallback;
    char* end = nullptr;
    long x = std::strtol(v, &end, 10);
    if (*end || x <= 0)
        throw InputError(std::string(name) + " must be a positive integer");
    return int(x);
}

ValidationReport full_validation(const TriangulatedStructure& t)
{
    ValidationReport rep = validate_category(t.cat());
    if (rep.ok())
        rep.append(validate_triangulation(t));
    return rep;
}

int cmd_validate(const std::string& file)
{
    TriangulatedStructure t = [&] {
        try {
            return load_structure(file);
        } catch (const FormatError& e) {
            throw InputError(e.what());
        }
    }();
    ValidationReport rep = full_validation(t);
    for (const std::string& issue : rep.issues)
        std::cout << "issue: " << issue << "\n";
    std::cout << file << ": " << t.size() << " indecomposables, " << (rep.ok() ? "valid" : "invalid") << "\n";
    return rep.ok() ? 0 : 1;
}

int cmd_generate(int m, int n, int p, const std::string& out)
{
    if (m < 1 || n < 2 || !Fp::is_prime(p))
        throw InputError("nakayama parameters need m >= 1, n >= 2 and p prime");
    TriangulatedStructure t = generate_nakayama_stable(m, n, p);
    ValidationReport rep = full_validation(t);
    if (!rep.ok()) {
        for (const std::string& issue : rep.issues)
            std::cerr << "issue: " << issue << "\n";
        return 1;
    }
    save_structure(t, out);
    std::cout << "wrote " << out << " (" << t.size() << " indecomposables)\n";
    return 0;
}

int cmd_enumerate(const std::string& spec, const RunConfig& cfg, const std::string& out)
{
    Substrate s = load_substrate(spec);
    EnumerationOptions eo = cfg.enumeration;
    eo.jobs = cfg.jobs;
    PairEnumeration e = enumerate_cotorsion_pairs(*s.t, eo);
    json catalog = {{"substrate", spec}, {"pairs", json::array()}, {"indeterminate", json::array()}};
    for (const CotorsionPair& p : e.pairs) {
        PairFlags f = classify_pair(*s.t, p);
        std::cout << "U=" << p.u.key() << "  V=" << p.v.key() << (f.t_structure ? "  t-structure" : "")
                  << (f.co_t_structure ? "  co-t-structure" : "") << (f.rigid ? "  rigid" : "")
                  << (f.cluster_tilting ? "  cluster-tilting" : "") << "\n";
        catalog["pairs"].push_back({{"u", p.u.key()},
                                    {"v", p.v.key()},
                                    {"t_structure", f.t_structure},
                                    {"co_t_structure", f.co_t_structure},
                                    {"rigid", f.rigid},
                                    {"cluster_tilting", f.cluster_tilting}});
    }
    for (const Subcategory& u : e.indeterminate) {
        std::cout << "U=" << u.key() << "  indeterminate\n";
        catalog["indeterminate"].push_back(u.key());
    }
    std::cout << e.pairs.size() << " cotorsion pairs\n";
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f)
            throw InputError("cannot write " + out);
        f << dump_canonical(catalog);
    }
    return e.indeterminate.empty() ? 0 : 2;
}

int cmd_analyze(std::vector<std::string> specs, const RunConfig& cfg)
{
    std::vector<std::string> expanded;
    for (const std::string& s : specs) {
        if (s == "grid") {
            auto g = default_substrates({});
            expanded.insert(expanded.end(), g.begin(), g.end());
        } else {
            expanded.push_back(s);
        }
    }
    std::vector<Substrate> subs;
    for (const std::string& s : expanded)
        subs.push_back(load_substrate(s));  // all inputs are checked before any work
    std::vector<SubstrateResult> results;
    for (const Substrate& s : subs) {
        std::cerr << "analyzing " << s.name << " ..." << std::flush;
        results.push_back(run_substrate(s, cfg));
        std::cerr << " " << results.back().twins.size() << " twins, " << results.back().seconds << " s\n";
    }
    write_run(results, cfg);
    std::cout << render_summary(results);
    std::cout << "run directory: " << cfg.out_dir << "\n";
    return exit_code(results);
}

int cmd_report(const std::string& dir)
{
    ReportCheck r = check_report(dir);
    std::cout << r.summary;
    for (const std::string& p : r.problems)
        std::cout << "report problem: " << p << "\n";
    if (r.problems.empty())
        std::cout << "report is consistent; every failing row replays\n";
    return r.exit;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"twinheart: hearts of twin cotorsion pairs on finite triangulated categories"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file, cache = "use", mutation = "none", out_dir, enum_out;
    int jobs = 0;

    auto* validate = app.add_subcommand("validate", "check a structure file against both validators");
    std::string file;
    validate->add_option("file", file, "structure JSON")->required();

    auto* generate = app.add_subcommand("generate", "write a generated substrate");
    auto* nak = generate->add_subcommand("nakayama", "stable category of a self-injective Nakayama algebra");
    generate->require_subcommand(1);
    int m = 0, n = 0, p = 0;
    std::string gen_out;
    nak->add_option("--m", m, "number of vertices")->required();
    nak->add_option("--n", n, "Loewy length")->required();
    nak->add_option("--p", p, "field characteristic")->required();
    nak->add_option("--out", gen_out, "output file")->required();

    auto* enumerate = app.add_subcommand("enumerate-pairs", "list the cotorsion pairs of a substrate");
    std::string enum_spec;
    enumerate->add_option("substrate", enum_spec, "nakayama:m,n,p or a structure file")->required();
    enumerate->add_option("--out", enum_out, "write the catalog as JSON");

    auto* analyze = app.add_subcommand("analyze", "run the full property suite");
    std::vector<std::string> specs;
    analyze->add_option("substrates", specs, "nakayama:m,n,p, a structure file, or 'grid'")->required();
    analyze->add_option("--twin-filter", cfg.twin_filter, "all | single | nonzero-heart | <twin key>");
    analyze->add_option("--config", config_file, "JSON config file");
    analyze->add_option("--out", out_dir, "run directory (default $TWINHEART_OUT or ./twinheart-run)");
    analyze->add_option("--cache", cache, "pair catalog cache: use | refresh | off");
    analyze->add_option("--mutation", mutation, "negative control for the semi-abelian and integral checks");
    for (auto* sc : {enumerate, analyze})
        sc->add_option("--jobs", jobs, "worker threads (default $TWINHEART_JOBS or 1)");

    auto* report = app.add_subcommand("report", "re-render and cross-check a run directory");
    std::string run_dir;
    report->add_option("run-dir", run_dir, "directory written by analyze")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*validate)
            return cmd_validate(file);
        if (*generate)
            return cmd_generate(m, n, p, gen_out);
        if (*report)
            return cmd_report(run_dir);

        // Precedence: flags, then environment, then config file.
        if (!config_file.empty()) {
            std::ifstream in(config_file);
            if (!in)
                throw InputError("cannot read config " + config_file);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::parse_error& e) {
                throw InputError("config " + config_file + ": " + e.what());
            }
            apply_config_json(cfg, j);
        }
        cfg.jobs = env_int("TWINHEART_JOBS", cfg.jobs);
        if (jobs > 0)
            cfg.jobs = jobs;
        json overrides = json::object();
        if (analyze->count("--cache"))
            overrides["cache"] = cache;
        if (analyze->count("--mutation"))
            overrides["mutation"] = mutation;
        apply_config_json(cfg, overrides);

        if (*enumerate)
            return cmd_enumerate(enum_spec, cfg, enum_out);

        const char* env_out = std::getenv("TWINHEART_OUT");
        cfg.out_dir = !out_dir.empty() ? out_dir : env_out && *env_out ? env_out : "twinheart-run";
        return cmd_analyze(specs, cfg);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const FormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
}
