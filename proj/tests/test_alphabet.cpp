#include "doctest.h"

#include "autstr/alphabet.hpp"

using namespace autstr;

TEST_CASE("binary alphabet basics") {
  Alphabet b = Alphabet::binary();
  CHECK(b.arity() == 1);
  CHECK(b.size() == 2);
  CHECK(b.letter_name(0) == "0");
  CHECK(b.letter_name(1) == "1");
  CHECK(b.find_letter("1") == 1);
  CHECK(b.find_letter("2") == -1);
}

TEST_CASE("product alphabet structure") {
  Alphabet b = Alphabet::binary();
  Alphabet p = Alphabet::product({b, b});
  CHECK(p.arity() == 2);
  CHECK(p.size() == 4);

  SUBCASE("letters are component tuples in mixed radix, track 0 most significant") {
    for (int letter = 0; letter < p.size(); ++letter) {
      std::vector<int> comps = p.components(letter);
      REQUIRE(comps.size() == 2);
      CHECK(comps[0] == letter / 2);
      CHECK(comps[1] == letter % 2);
      CHECK(p.letter_of(comps) == letter);
      CHECK(p.component(letter, 0) == comps[0]);
      CHECK(p.component(letter, 1) == comps[1]);
    }
  }

  SUBCASE("track alphabets are recoverable") {
    REQUIRE(p.tracks().size() == 2);
    CHECK(p.tracks()[0] == b.tracks()[0]);
    CHECK(p.tracks()[1] == b.tracks()[0]);
  }

  SUBCASE("tuple letter names round-trip") {
    CHECK(p.letter_name(2) == "(1,0)");
    CHECK(p.find_letter("(1,0)") == 2);
    CHECK(p.find_letter("(2,0)") == -1);
  }
}

TEST_CASE("track surgery") {
  Alphabet b = Alphabet::binary();
  Alphabet p = Alphabet::product({b, b, b});

  SUBCASE("drop_track removes one position") {
    Alphabet d = p.drop_track(1);
    CHECK(d.arity() == 2);
    CHECK(d == Alphabet::product({b, b}));
  }

  SUBCASE("insert then drop is the identity") {
    Alphabet widened = p.insert_track(1, {"a", "b", "c"});
    CHECK(widened.arity() == 4);
    CHECK(widened.size() == 24);
    CHECK(widened.drop_track(1) == p);
  }
}

TEST_CASE("power and selection maps") {
  Alphabet b = Alphabet::binary();
  CHECK(power_alphabet(b, 3) == Alphabet::product({b, b, b}));

  // Read a 2-track source on positions 2 and 0 of a 3-track target.
  Alphabet source = power_alphabet(b, 2);
  LetterMap map = selection_letter_map(source, b, 3, {2, 0});
  REQUIRE(map.target == power_alphabet(b, 3));
  REQUIRE(static_cast<int>(map.to_source.size()) == map.target.size());
  for (int t = 0; t < map.target.size(); ++t) {
    std::vector<int> comps = map.target.components(t);
    CHECK(map.to_source[t] == source.letter_of({comps[2], comps[0]}));
  }
}

TEST_CASE("alphabet input validation") {
  CHECK_THROWS_AS(Alphabet::single({}), InputError);
  CHECK_THROWS_AS(Alphabet::single({"a", "a"}), InputError);
  CHECK_THROWS_AS(Alphabet::single({"bad letter"}), InputError);

  SUBCASE("letter budget is enforced") {
    Budget tiny;
    tiny.max_letters = 8;
    CHECK_THROWS_AS(power_alphabet(Alphabet::binary(), 4, tiny), CapacityError);
  }
}
