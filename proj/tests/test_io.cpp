#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "twinheart/io.hpp"
#include "twinheart/nakayama.hpp"

using namespace twinheart;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    fs::path dir = fs::temp_directory_path() / "twinheart-io-test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("save and load round-trip byte for byte")
{
    auto t = generate_nakayama_stable(2, 4, 3);
    fs::path a = scratch("a.json"), b = scratch("b.json");
    save_structure(t, a.string());
    auto back = load_structure(a.string());
    save_structure(back, b.string());
    std::ifstream fa(a), fb(b);
    std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
    CHECK(sa == sb);
    CHECK(back.size() == t.size());
    CHECK(back.shift_perm() == t.shift_perm());
    CHECK(dump_canonical(to_json(back)) == dump_canonical(to_json(t)));
}

TEST_CASE("the pentagon fixture loads and validates")
{
    auto t = load_fixture(TWINHEART_FIXTURES "/pentagon.json");
    CHECK(t.size() == 5);
    CHECK(t.procedure()->name() == "exact_completion");
}

TEST_CASE("malformed inputs raise FormatError")
{
    json good = to_json(generate_nakayama_stable(1, 3, 2));
    CHECK_NOTHROW(structure_from_json(good));

    json j = good;
    j.erase("hom_dims");
    CHECK_THROWS_AS(structure_from_json(j), FormatError);

    j = good;
    j["p"] = 4;
    CHECK_THROWS_AS(structure_from_json(j), FormatError);

    j = good;
    j["shift"]["perm"] = {0, 0};
    CHECK_THROWS_AS(structure_from_json(j), FormatError);

    j = good;
    j["format"] = "something-else/2";
    CHECK_THROWS_AS(structure_from_json(j), FormatError);

    CHECK_THROWS_AS(structure_from_json(json::array()), FormatError);
}

TEST_CASE("a fixture breaking the axioms is rejected by load_fixture")
{
    json j = to_json(generate_nakayama_stable(2, 3, 2));
    j["identities"][0][0] = 0;
    fs::path p = scratch("broken.json");
    std::ofstream(p) << j.dump();
    CHECK_NOTHROW(load_structure(p.string()));
    CHECK_THROWS_AS(load_fixture(p.string()), ValidationError);
}
