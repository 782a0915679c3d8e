#include "doctest.h"

#include <vector>

#include "autstr/buchi.hpp"
#include "autstr/difftest.hpp"
#include "autstr/rng.hpp"

using namespace autstr;

namespace {

BuchiAutomaton finitely_many_ones() {
  BuchiAutomaton a;
  a.alphabet = Alphabet::binary();
  a.num_states = 2;
  a.initial = {0};
  a.accepting = {1};
  a.transitions = {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}};
  a.normalize();
  return a;
}

LassoWord lasso(std::vector<int> stem, std::vector<int> loop) {
  LassoWord w;
  w.alphabet = Alphabet::binary();
  w.stem = std::move(stem);
  w.loop = std::move(loop);
  return w;
}

}  // namespace

TEST_CASE("complement of hand-built languages") {
  BuchiAutomaton co_fin = word_complement(finitely_many_ones());
  CHECK(word_membership(co_fin, lasso({}, {1})));
  CHECK_FALSE(word_membership(co_fin, lasso({}, {0})));
  CHECK_FALSE(word_membership(co_fin, lasso({1, 1, 1}, {0})));
  CHECK(word_membership(co_fin, lasso({0, 0}, {0, 1})));

  SUBCASE("complement of the universal automaton is empty") {
    CHECK_FALSE(word_emptiness(word_complement(universal_buchi(Alphabet::binary()))).has_value());
  }

  SUBCASE("complement of the empty automaton is universal") {
    BuchiAutomaton none;
    none.alphabet = Alphabet::binary();
    none.num_states = 0;
    Rng rng(21);
    BuchiAutomaton everything = word_complement(none);
    for (int i = 0; i < 20; ++i)
      CHECK(word_membership(everything, random_lasso(rng, none.alphabet, 6, 6)));
  }
}

TEST_CASE("membership of automaton and complement is exclusive") {
  Rng rng(22);
  Alphabet b = Alphabet::binary();
  for (int i = 0; i < 30; ++i) {
    BuchiAutomaton a = random_buchi(rng, b, 5);
    BuchiAutomaton co = word_complement(a);
    for (int j = 0; j < 20; ++j) {
      LassoWord w = random_lasso(rng, b, 6, 6);
      CAPTURE(i);
      CAPTURE(j);
      CHECK(word_membership(a, w) != word_membership(co, w));
    }
  }
}

TEST_CASE("double complement preserves membership") {
  Rng rng(23);
  Alphabet b = Alphabet::binary();
  for (int i = 0; i < 15; ++i) {
    BuchiAutomaton a = random_buchi(rng, b, 4);
    BuchiAutomaton again = word_complement(word_complement(a));
    for (int j = 0; j < 15; ++j) {
      LassoWord w = random_lasso(rng, b, 5, 5);
      CHECK(word_membership(a, w) == word_membership(again, w));
    }
  }
}

TEST_CASE("differential suite wrapper") {
  DiffReport r = run_complement_suite(7, 25, 10);
  CHECK(r.ok());
  CHECK(r.cases == 250);
  CHECK(r.to_text() == run_complement_suite(7, 25, 10).to_text());
}

TEST_CASE("capacity limits abort instead of answering") {
  SUBCASE("irreducibly large inputs are refused") {
    // A 70-state counter automaton none of whose states are merged by the
    // simulation-based preprocessing.
    BuchiAutomaton big;
    big.alphabet = Alphabet::binary();
    big.num_states = 70;
    big.initial = {0};
    big.accepting = {0};
    for (int q = 0; q < 70; ++q) {
      big.transitions.push_back({q, 0, (q + 1) % 70});
      big.transitions.push_back({q, 1, 0});
    }
    big.normalize();
    CHECK_THROWS_AS(word_complement(big), CapacityError);
  }

  SUBCASE("a tiny state budget trips the declared error") {
    Rng rng(24);
    Budget tiny;
    tiny.max_states = 4;
    BuchiAutomaton a = random_buchi(rng, Alphabet::binary(), 5);
    CHECK_THROWS_AS(word_complement(a, tiny), CapacityError);
  }
}

TEST_CASE("complementation is deterministic") {
  Rng rng(25);
  BuchiAutomaton a = random_buchi(rng, Alphabet::binary(), 5);
  CHECK(word_complement(a) == word_complement(a));
}
