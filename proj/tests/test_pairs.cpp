#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twinheart/io.hpp"
#include "twinheart/nakayama.hpp"
#include "twinheart/pairs.hpp"

using namespace twinheart;

namespace {

std::vector<TriangulatedStructure> small_substrates()
{
    std::vector<TriangulatedStructure> out;
    out.push_back(generate_nakayama_stable(1, 4, 2));
    out.push_back(generate_nakayama_stable(2, 3, 3));
    out.push_back(generate_nakayama_stable(3, 3, 2));
    out.push_back(load_structure(TWINHEART_FIXTURES "/pentagon.json"));
    return out;
}

}  // namespace

TEST_CASE("the trivial pairs are cotorsion pairs")
{
    auto t = generate_nakayama_stable(2, 4, 2);
    int n = t.size();
    CHECK(is_cotorsion_pair(t, Subcategory::all(n), Subcategory::none(n)).verdict == Verdict::holds);
    CHECK(is_cotorsion_pair(t, Subcategory::none(n), Subcategory::all(n)).verdict == Verdict::holds);
    CHECK(is_cotorsion_pair(t, Subcategory::all(n), Subcategory::all(n)).verdict == Verdict::fails);
}

TEST_CASE("enumeration through perpendiculars matches brute force")
{
    for (const auto& t : small_substrates()) {
        auto e = enumerate_cotorsion_pairs(t);
        CHECK(e.indeterminate.empty());
        auto bf = brute_force_cotorsion_pairs(t);
        REQUIRE(bf.size() == e.pairs.size());
        for (std::size_t i = 0; i < bf.size(); ++i) {
            CHECK(bf[i].first == e.pairs[i].u);
            CHECK(bf[i].second == e.pairs[i].v);
        }
    }
}

TEST_CASE("pair flags agree with their reformulations")
{
    for (const auto& t : small_substrates())
        for (const auto& p : enumerate_cotorsion_pairs(t).pairs)
            CHECK(classify_pair(t, p).consistent());
}

TEST_CASE("the three twin conditions coincide and twins satisfy the closure checks")
{
    for (const auto& t : small_substrates()) {
        auto pairs = enumerate_cotorsion_pairs(t).pairs;
        for (const auto& a : pairs)
            for (const auto& b : pairs) {
                TwinLink l = twin_link(t, a, b);
                CHECK(l.agree());
                if (!l.ext_vanishes) {
                    CHECK_THROWS_AS(make_twin(t, a, b), NotATwinError);
                    continue;
                }
                auto twin = make_twin(t, a, b);
                CHECK(twin.w == twin.t().intersect(twin.u()));
                CHECK(twin.h == twin.cminus.intersect(twin.cplus));
                CHECK(check_extension_closure(t, twin).empty());
                CHECK(check_approximation_factoring(t, twin).empty());
                CHECK(check_summand_closure(t, twin).empty());
            }
    }
}

TEST_CASE("a pair is a twin with itself")
{
    auto t = generate_nakayama_stable(2, 3, 2);
    for (const auto& p : enumerate_cotorsion_pairs(t).pairs) {
        auto twin = make_twin(t, p, p);
        CHECK(twin.single());
        CHECK(twin.w == p.u.intersect(p.v));
    }
}
