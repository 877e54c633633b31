#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twinheart/heart.hpp"
#include "twinheart/io.hpp"
#include "twinheart/nakayama.hpp"

using namespace twinheart;

namespace {

template <class F>
void for_each_twin(const TriangulatedStructure& t, F&& f)
{
    auto pairs = enumerate_cotorsion_pairs(t).pairs;
    for (const auto& a : pairs)
        for (const auto& b : pairs)
            if (twin_link(t, a, b).ext_vanishes)
                f(make_twin(t, a, b));
}

}  // namespace

TEST_CASE("K_C lies in C- and Z_C in C+")
{
    auto t = generate_nakayama_stable(2, 4, 2);
    for_each_twin(t, [&](const TwinCotorsionPair& twin) {
        Heart h(t, twin);
        for (int i = 0; i < t.size(); ++i) {
            Obj c = Obj::single(i);
            CHECK(membership_Cpm(t, twin, h.construct_K(c).object).in_cminus == Verdict::holds);
            CHECK(membership_Cpm(t, twin, h.construct_Z(c).object).in_cplus == Verdict::holds);
        }
    });
}

TEST_CASE("constructions on the zero object are zero")
{
    auto t = generate_nakayama_stable(2, 3, 2);
    for_each_twin(t, [&](const TwinCotorsionPair& twin) {
        Heart h(t, twin);
        CHECK(h.construct_K(Obj()).object.is_zero());
        CHECK(h.construct_Z(Obj()).object.is_zero());
    });
}

TEST_CASE("tau+ and tau- preserve identities")
{
    auto t = load_structure(TWINHEART_FIXTURES "/pentagon.json");
    for_each_twin(t, [&](const TwinCotorsionPair& twin) {
        Heart h(t, twin);
        const auto& q = h.quotient();
        for (int i = 0; i < t.size(); ++i) {
            Obj c = Obj::single(i);
            auto zp = h.tau_plus(t.cat().identity(c));
            auto km = h.tau_minus(t.cat().identity(c));
            REQUIRE(zp);
            REQUIRE(km);
            CHECK(q.equal(*zp, t.cat().identity(h.construct_Z(c).object)));
            CHECK(q.equal(*km, t.cat().identity(h.construct_K(c).object)));
        }
    });
}

TEST_CASE("heart cokernels and kernels compose to zero")
{
    auto t = generate_nakayama_stable(3, 3, 3);
    for_each_twin(t, [&](const TwinCotorsionPair& twin) {
        Heart h(t, twin);
        const auto& q = h.quotient();
        auto hs = twin.h.members();
        for (int a : hs)
            for (int b : hs)
                for (const Mor& f : t.cat().hom_space(Obj::single(a), Obj::single(b)).elems) {
                    CHECK(q.is_zero(t.cat().compose(h.cokernel(f), f)));
                    CHECK(q.is_zero(t.cat().compose(f, h.kernel(f))));
                }
    });
}

TEST_CASE("ideal quotient by everything is zero")
{
    auto t = generate_nakayama_stable(2, 3, 2);
    int n = t.size();
    QuotientCategory q(t, Subcategory::all(n), Subcategory::all(n));
    for (int i = 0; i < n; ++i)
        CHECK(q.is_zero_object(Obj::single(i)));
    CHECK(q.nonzero_indecs().empty());
}

TEST_CASE("traces render each construction step")
{
    auto t = generate_nakayama_stable(1, 4, 2);
    auto pairs = enumerate_cotorsion_pairs(t).pairs;
    auto twin = make_twin(t, pairs.front(), pairs.front());
    Heart h(t, twin);
    std::string s = render_trace(t.cat(), "K", h.construct_K(Obj::single(0)));
    CHECK(s.find("K") != std::string::npos);
    CHECK(h.construct_K(Obj::single(0)).steps.size() >= 2);
}
