#include "doctest.h"
#include "helpers.hpp"
#include "ordkit/order.hpp"

using namespace ordkit;
using namespace ordkit::testing;

TEST_CASE("add") {
    CHECK(add(one(), pow(big_i())) == pow(big_i()));
    CHECK(debug_string(add(pow(big_i()), one())) == "Sum[Pow(BigI),Pow(Zero)]");
    CHECK(debug_string(add(sum({pow(big_i()), one()}), one())) == "Sum[Pow(BigI),Pow(Zero),Pow(Zero)]");
    CHECK(add(zero(), big_i()) == big_i());
    CHECK(add(big_i(), zero()) == big_i());
    CHECK(add(nat(2), nat(3)) == nat(5));
}

TEST_CASE("omega_pow and omega_times") {
    CHECK(omega_pow(zero()) == one());
    // I is an epsilon number, so w^I = I
    CHECK(omega_pow(big_i()) == big_i());
    CHECK(omega_pow(phi(one(), zero())) == phi(one(), zero()));
    CHECK(omega_times(zero()) == zero());
    CHECK(omega_times(one()) == pow(one()));
    CHECK(omega_times(big_i()) == big_i());
    CHECK(omega_times(nat(2)) == T("w^(w^(0))+w^(w^(0))"));
}

TEST_CASE("veblen") {
    CHECK(veblen(zero(), one()) == pow(one()));
    CHECK(veblen(zero(), veblen(one(), zero())) == veblen(one(), zero()));
    CHECK(debug_string(veblen(one(), zero())) == "Phi(Pow(Zero),Zero)");
    // a > 0 and b a fixed point of phi_a absorbs
    Term e0 = veblen(one(), zero());
    CHECK(veblen(one(), succ(e0)) != succ(e0));
    CHECK(lt(e0, veblen(one(), one())));
}

TEST_CASE("omega_tower") {
    CHECK(omega_tower(0, big_i()) == big_i());
    CHECK(omega_tower(1, add(big_i(), one())) == pow(sum({big_i(), one()})));
    Term t = add(big_i(), one());
    CHECK(omega_tower(2, t) == pow(pow(t)));
    CHECK(omega_tower(3, zero()) == pow(pow(one())));
}

TEST_CASE("next_regular") {
    CHECK(next_regular(zero()) == w1());
    CHECK(next_regular(aleph(one())) == reg_succ(one()));
    CHECK(next_regular(psi(w1(), zero())) == w1());
    CHECK(next_regular(T("W(0+1)+w^(0)")) == reg_succ(one()));
}

TEST_CASE("misc arithmetic") {
    CHECK(succ(big_i()) == T("I+w^(0)"));
    CHECK(i_times(3) == T("I+I+I"));
    CHECK(is_epsilon(big_i()));
    CHECK(is_epsilon(veblen(one(), zero())));
    CHECK_FALSE(is_epsilon(omega()));
    CHECK(aleph_of(zero()) == omega());
}
