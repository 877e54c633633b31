#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "twinheart/io.hpp"
#include "twinheart/nakayama.hpp"

using namespace twinheart;
using nlohmann::json;

TEST_CASE("generated categories satisfy the category axioms")
{
    for (int p : {2, 3})
        for (int m = 1; m <= 3; ++m)
            for (int n = 2; n <= 4; ++n) {
                CAPTURE(m);
                CAPTURE(n);
                CAPTURE(p);
                auto t = generate_nakayama_stable(m, n, p);
                CHECK(t.size() == m * (n - 1));
                CHECK(validate_category(t.cat()).ok());
            }
}

TEST_CASE("identities are two-sided units on sums")
{
    auto t = generate_nakayama_stable(2, 3, 3);
    const auto& cat = t.cat();
    Obj x({0, 1}), y({1, 2, 3});
    enumerate_morphisms(cat, x, y, [&](const Mor& f) {
        CHECK(cat.compose(f, cat.identity(x)) == f);
        CHECK(cat.compose(cat.identity(y), f) == f);
        return true;
    });
}

TEST_CASE("enumeration visits p^dim morphisms")
{
    auto t = generate_nakayama_stable(1, 4, 3);
    Obj x({0, 1});
    int dim = t.cat().hom_dim(x, x);
    std::uint64_t seen = 0;
    enumerate_morphisms(t.cat(), x, x, [&](const Mor&) { return ++seen, true; });
    CHECK(seen == checked_power(3, dim, 1u << 20));
    CHECK_THROWS_AS(enumerate_morphisms(t.cat(), x, x, [](const Mor&) { return true; }, 2),
                    EnumerationBudgetError);
}

TEST_CASE("direct sum injections and projections")
{
    auto t = generate_nakayama_stable(2, 3, 2);
    const auto& cat = t.cat();
    DirectSum ds = direct_sum(Obj({1}), Obj({0, 2}));
    Mor i1 = cat.injection(ds, true), p1 = cat.projection(ds, true);
    Mor i2 = cat.injection(ds, false), p2 = cat.projection(ds, false);
    CHECK(cat.compose(p1, i1) == cat.identity(Obj({1})));
    CHECK(cat.compose(p2, i2) == cat.identity(Obj({0, 2})));
    CHECK(is_zero(cat.compose(p2, i1).coords));
    CHECK(cat.add(cat.compose(i1, p1), cat.compose(i2, p2)) == cat.identity(ds.obj));
}

TEST_CASE("category mutants are rejected")
{
    auto t = generate_nakayama_stable(2, 3, 2);
    json j = to_json(t);
    CHECK(testing::json_validates(j));
    int tried = 0;
    for (const auto& m : testing::mutation_controls(t)) {
        if (m.name.find("structure constant") != std::string::npos ||
            m.name.find("identity coefficient") != std::string::npos) {
            CAPTURE(m.name);
            CHECK(m.rejected());
            ++tried;
        }
    }
    CHECK(tried == 2);
}
