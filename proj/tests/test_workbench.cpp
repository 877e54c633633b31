#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "twinheart/workbench.hpp"

using namespace twinheart;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name)
{
    fs::path d = fs::temp_directory_path() / "twinheart-workbench-test" / name;
    fs::remove_all(d);
    return d;
}

// Relative path -> contents, for every file except timing.json.
std::map<std::string, std::string> snapshot(const fs::path& root)
{
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file() || e.path().filename() == "timing.json")
            continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        out[fs::relative(e.path(), root).string()] = ss.str();
    }
    return out;
}

std::vector<SubstrateResult> run(const std::vector<std::string>& specs, RunConfig cfg)
{
    std::vector<SubstrateResult> out;
    for (const auto& s : specs)
        out.push_back(run_substrate(load_substrate(s), cfg));
    write_run(out, cfg);
    return out;
}

}  // namespace

TEST_CASE("bad substrate specs are input errors")
{
    CHECK_THROWS_AS(load_substrate("nakayama:0,3,2"), InputError);
    CHECK_THROWS_AS(load_substrate("nakayama:1,3,4"), InputError);
    CHECK_THROWS_AS(load_substrate("nakayama:1,3"), InputError);
    CHECK_THROWS_AS(load_substrate("/no/such/file.json"), InputError);
    CHECK(load_substrate("nakayama:2,3,2").name == "nakayama_2_3_2");
    CHECK(default_substrates({"x.json"}).size() == 19);
}

TEST_CASE("config files reject unknown keys and bad values")
{
    RunConfig cfg;
    CHECK_THROWS_AS(apply_config_json(cfg, {{"nope", 1}}), InputError);
    CHECK_THROWS_AS(apply_config_json(cfg, {{"seed", -1}}), InputError);
    CHECK_THROWS_AS(apply_config_json(cfg, {{"mutation", "bogus"}}), InputError);
    apply_config_json(cfg, {{"seed", 7}, {"cache", "off"}, {"mutation", "dropped_square_leg"}});
    CHECK(cfg.verify.seed == 7);
    CHECK(cfg.cache == CachePolicy::off);
    CHECK_FALSE(config_json(cfg).contains("cache"));  // does not change results
    RunConfig again;
    apply_config_json(again, config_json(cfg));
    CHECK(config_json(again) == config_json(cfg));
}

TEST_CASE("twin keys round-trip")
{
    Substrate s = load_substrate("nakayama:2,3,2");
    RunConfig cfg;
    SubstrateResult r = run_substrate(s, cfg);
    REQUIRE(!r.twins.empty());
    for (const auto& tr : r.twins)
        CHECK(twin_from_key(*s.t, tr.key).key() == tr.key);
    CHECK_THROWS_AS(twin_from_key(*s.t, "01"), InputError);
    CHECK_THROWS_AS(twin_from_key(*s.t, "1111/0000"), InputError);
}

TEST_CASE("runs are byte-identical apart from timing, with and without the cache")
{
    RunConfig cfg;
    cfg.out_dir = fresh_dir("a").string();
    cfg.jobs = 2;
    auto first = run({"nakayama:2,4,2", TWINHEART_FIXTURES "/pentagon.json"}, cfg);
    CHECK(exit_code(first) == 0);
    auto a = snapshot(cfg.out_dir);

    // Second run into the same directory consults the cache.
    run({"nakayama:2,4,2", TWINHEART_FIXTURES "/pentagon.json"}, cfg);
    CHECK(snapshot(cfg.out_dir) == a);

    RunConfig other = cfg;
    other.out_dir = fresh_dir("b").string();
    other.jobs = 1;
    other.cache = CachePolicy::refresh;
    run({"nakayama:2,4,2", TWINHEART_FIXTURES "/pentagon.json"}, other);
    CHECK(snapshot(other.out_dir) == a);
    CHECK(a.count("pairs/nakayama_2_4_2.json") == 1);
    CHECK(a.count("summary.txt") == 1);

    ReportCheck rc = check_report(cfg.out_dir);
    CHECK(rc.problems.empty());
    CHECK(rc.exit == 0);
    CHECK(rc.summary == a["summary.txt"]);
}

TEST_CASE("failing rows link to counterexamples that replay")
{
    RunConfig cfg;
    cfg.out_dir = fresh_dir("mutant").string();
    cfg.verify.mutation = Mutation::unreflected_cokernel;
    auto res = run({"nakayama:2,4,2"}, cfg);
    CHECK(exit_code(res) == 1);
    ReportCheck rc = check_report(cfg.out_dir);
    for (const auto& p : rc.problems)
        MESSAGE(p);
    CHECK(rc.problems.empty());
    CHECK(rc.exit == 1);
    CHECK(fs::exists(fs::path(cfg.out_dir) / "counterexamples"));

    // Tampering with a stored verdict is caught.
    for (const auto& e : fs::directory_iterator(fs::path(cfg.out_dir) / "counterexamples")) {
        std::ifstream in(e.path());
        auto j = nlohmann::json::parse(in);
        if (j["verdict"] != "fails" || j["twin"] == "")
            continue;
        j["counterexample"] = {{"property", "twin_check"}, {"check", "extension_closure"}};
        j["row"] = "extension_closure";
        std::ofstream(e.path()) << j.dump();
        break;
    }
    CHECK_FALSE(check_report(cfg.out_dir).problems.empty());
}

TEST_CASE("the twin filter narrows the evaluated set")
{
    RunConfig cfg;
    cfg.twin_filter = "single";
    SubstrateResult r = run_substrate(load_substrate("nakayama:2,3,2"), cfg);
    CHECK(r.twins.size() == r.pairs);
    for (const auto& t : r.twins)
        CHECK(t.single);
    CHECK(r.twins_total > r.twins.size());
}
