#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "twinheart/io.hpp"
#include "twinheart/nakayama.hpp"

using namespace twinheart;

TEST_CASE("generated triangulations pass the validator")
{
    for (int p : {2, 3})
        for (int m = 1; m <= 3; ++m)
            for (int n = 2; n <= 4; ++n) {
                CAPTURE(m);
                CAPTURE(n);
                CAPTURE(p);
                CHECK(validate_triangulation(generate_nakayama_stable(m, n, p)).ok());
            }
}

TEST_CASE("k[x]/(x^4): shift exchanges lengths 1 and 3 and fixes length 2")
{
    auto t = generate_nakayama_stable(1, 4, 2);
    REQUIRE(t.size() == 3);
    NakayamaAlgebra a(1, 4, 2);
    for (int id = 0; id < 3; ++id) {
        int len = a.indec(id).len;
        CHECK(a.indec(t.shift_id(id)).len == 4 - len);
    }
}

TEST_CASE("k[x]/(x^2): one indecomposable, fixed by the shift")
{
    auto t = generate_nakayama_stable(1, 2, 3);
    REQUIRE(t.size() == 1);
    CHECK(t.shift_id(0) == 0);
    CHECK(t.cat().hom_dim(0, 0) == 1);
    CHECK(validate_triangulation(t).ok());
}

TEST_CASE("cone of an identity has zero third term; cone of zero splits")
{
    auto t = generate_nakayama_stable(2, 4, 2);
    for (int i = 0; i < t.size(); ++i) {
        Obj x = Obj::single(i);
        CHECK(t.cone(t.cat().identity(x)).c.is_zero());
        Triangle z = t.cone(t.cat().zero(x, x));
        CHECK(z.c.size() == 2);
        CHECK(validate_triangle(t, z).ok());
    }
}

TEST_CASE("rotations of distinguished triangles validate")
{
    auto t = generate_nakayama_stable(3, 3, 3);
    const auto& cat = t.cat();
    for (int i = 0; i < t.size(); ++i)
        for (int j = 0; j < t.size(); ++j)
            for (const Mor& f : cat.hom_space(Obj::single(i), Obj::single(j)).elems) {
                Triangle tri = t.cone(f);
                CHECK(validate_triangle(t, t.rotate(tri)).ok());
                CHECK(validate_triangle(t, t.rotate_back(tri)).ok());
                CHECK(validate_triangle(t, t.cocone(f)).ok());
            }
}

TEST_CASE("shift and cone mutants are rejected")
{
    for (const char* spec : {"nak", "pentagon"}) {
        CAPTURE(spec);
        auto t = std::string(spec) == "nak" ? generate_nakayama_stable(3, 3, 2)
                                            : load_structure(TWINHEART_FIXTURES "/pentagon.json");
        REQUIRE(testing::structure_validates(t));
        for (const auto& m : testing::mutation_controls(t)) {
            CAPTURE(m.name);
            CHECK(m.rejected());
        }
    }
}

TEST_CASE("ext1 of k[x]/(x^4) over F_2 is symmetric under the duality")
{
    auto t = generate_nakayama_stable(1, 4, 2);
    for (int i = 0; i < t.size(); ++i)
        for (int j = 0; j < t.size(); ++j)
            CHECK(t.ext1(Obj::single(i), Obj::single(j)) == t.ext1(Obj::single(j), Obj::single(i)));
}
