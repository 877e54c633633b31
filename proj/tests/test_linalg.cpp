#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twinheart/linalg.hpp"

using namespace twinheart;

TEST_CASE("field arithmetic")
{
    Fp f(3);
    CHECK(f.add(2, 2) == 1);
    CHECK(f.neg(1) == 2);
    CHECK(f.mul(f.inv(2), 2) == 1);
    CHECK(f.norm(-4) == 2);
    CHECK(Fp::is_prime(7));
    CHECK_FALSE(Fp::is_prime(9));
    CHECK_FALSE(Fp::is_prime(1));
}

TEST_CASE("rank, nullspace and solve agree")
{
    Fp f(2);
    Matrix a = Matrix::from_rows(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    CHECK(rank(f, a) == 2);
    auto ns = nullspace(f, a);
    REQUIRE(ns.size() == 1);
    CHECK(is_zero(apply(f, a, ns[0])));
    auto x = solve(f, a, {1, 1, 0});
    REQUIRE(x);
    CHECK(apply(f, a, *x) == Vec{1, 1, 0});
    CHECK_FALSE(solve(f, a, {1, 0, 0}));
    CHECK_FALSE(inverse(f, a));
}

TEST_CASE("inverse over F_3")
{
    Fp f(3);
    Matrix a = Matrix::from_rows(2, {{1, 2}, {0, 2}});
    auto inv = inverse(f, a);
    REQUIRE(inv);
    CHECK(multiply(f, a, *inv) == Matrix::identity(2));
}

TEST_CASE("subspace cosets have canonical representatives")
{
    Fp f(2);
    Subspace s = Subspace::span(f, 3, {{1, 1, 0}, {0, 1, 1}});
    CHECK(s.dim() == 2);
    CHECK(s.codim() == 1);
    CHECK_FALSE(s.add({1, 0, 1}));
    CHECK(s.reduce({1, 0, 0}) == s.reduce({0, 1, 0}));
    CHECK(s.contains({1, 0, 1}));
}
