#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "autstr/buchi.hpp"
#include "autstr/difftest.hpp"
#include "autstr/rng.hpp"

using namespace autstr;

namespace {

BuchiAutomaton mk(const Alphabet& alphabet, int n, std::vector<StateId> initial,
                  std::vector<StateId> accepting, std::vector<BuchiTransition> trans) {
  BuchiAutomaton a;
  a.alphabet = alphabet;
  a.num_states = n;
  a.initial = std::move(initial);
  a.accepting = std::move(accepting);
  a.transitions = std::move(trans);
  a.normalize();
  a.check_well_formed();
  return a;
}

// ω-words over {0,1} with finitely many 1s: guess the point after which
// everything is 0.
BuchiAutomaton finitely_many_ones() {
  return mk(Alphabet::binary(), 2, {0}, {1},
            {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}});
}

// Deterministic: state = last letter read; accepting iff that letter recurs
// forever.
BuchiAutomaton infinitely_many(int letter) {
  return mk(Alphabet::binary(), 2, {0}, {letter},
            {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 1}});
}

// Pairs (u,v) with u(i) <= v(i) for almost all i: guess the point after which
// the letter (1,0) never occurs.
BuchiAutomaton almost_inclusion_pairs() {
  Alphabet p = power_alphabet(Alphabet::binary(), 2);
  std::vector<BuchiTransition> trans;
  for (int s = 0; s < p.size(); ++s) {
    trans.push_back({0, s, 0});
    trans.push_back({0, s, 1});
    std::vector<int> comps = p.components(s);
    if (!(comps[0] == 1 && comps[1] == 0)) trans.push_back({1, s, 1});
  }
  return mk(p, 2, {0}, {1}, std::move(trans));
}

LassoWord lasso(const Alphabet& alphabet, std::vector<int> stem, std::vector<int> loop) {
  LassoWord w;
  w.alphabet = alphabet;
  w.stem = std::move(stem);
  w.loop = std::move(loop);
  w.check_well_formed();
  return w;
}

// Independent membership oracle: SCC decomposition of the automaton x lasso
// product; accept iff a reachable SCC with an internal edge contains a vertex
// whose state is accepting.
bool scc_membership(const BuchiAutomaton& a, const LassoWord& w) {
  int stem = static_cast<int>(w.stem.size());
  int period = static_cast<int>(w.loop.size());
  int positions = stem + period;
  auto letter_at = [&](int i) { return i < stem ? w.stem[i] : w.loop[i - stem]; };
  auto next_pos = [&](int i) { return i + 1 < positions ? i + 1 : stem; };
  int total = a.num_states * positions;
  auto vertex = [&](int q, int i) { return q * positions + i; };

  std::vector<std::vector<int>> succ(total);
  for (const auto& t : a.transitions)
    for (int i = 0; i < positions; ++i)
      if (t.letter == letter_at(i)) succ[vertex(t.from, i)].push_back(vertex(t.to, next_pos(i)));

  std::vector<char> reachable(total, 0);
  std::vector<int> stack;
  for (StateId q : a.initial) {
    if (!reachable[vertex(q, 0)]) {
      reachable[vertex(q, 0)] = 1;
      stack.push_back(vertex(q, 0));
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : succ[v])
      if (!reachable[u]) {
        reachable[u] = 1;
        stack.push_back(u);
      }
  }

  // Iterative Tarjan.
  std::vector<int> index(total, -1), low(total, 0), comp(total, -1);
  std::vector<char> on_stack(total, 0);
  std::vector<int> tarjan_stack;
  int counter = 0, comps = 0;
  for (int root = 0; root < total; ++root) {
    if (index[root] >= 0 || !reachable[root]) continue;
    std::vector<std::pair<int, std::size_t>> work{{root, 0}};
    while (!work.empty()) {
      auto& [v, child] = work.back();
      if (child == 0) {
        index[v] = low[v] = counter++;
        tarjan_stack.push_back(v);
        on_stack[v] = 1;
      }
      bool descended = false;
      while (child < succ[v].size()) {
        int u = succ[v][child++];
        if (!reachable[u]) continue;
        if (index[u] < 0) {
          work.emplace_back(u, 0);
          descended = true;
          break;
        }
        if (on_stack[u]) low[v] = std::min(low[v], index[u]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        while (true) {
          int u = tarjan_stack.back();
          tarjan_stack.pop_back();
          on_stack[u] = 0;
          comp[u] = comps;
          if (u == v) break;
        }
        ++comps;
      }
      int done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
    }
  }

  std::vector<char> has_edge(comps, 0), has_accepting(comps, 0);
  for (int v = 0; v < total; ++v) {
    if (!reachable[v]) continue;
    if (a.is_accepting(v / positions)) has_accepting[comp[v]] = 1;
    for (int u : succ[v])
      if (reachable[u] && comp[u] == comp[v]) has_edge[comp[v]] = 1;
  }
  for (int c = 0; c < comps; ++c)
    if (has_edge[c] && has_accepting[c]) return true;
  return false;
}

}  // namespace

TEST_CASE("lasso membership on hand-built languages") {
  Alphabet b = Alphabet::binary();
  BuchiAutomaton fin = finitely_many_ones();

  CHECK(word_membership(fin, lasso(b, {1}, {0})));
  CHECK_FALSE(word_membership(fin, lasso(b, {}, {1})));
  CHECK(word_membership(infinitely_many(1), lasso(b, {}, {1})));
  CHECK_FALSE(word_membership(infinitely_many(1), lasso(b, {1}, {0})));

  SUBCASE("almost inclusion holds for u = 10^w, v = 01^w") {
    LassoWord pair = convolve_lassos({lasso(b, {1}, {0}), lasso(b, {0}, {1})});
    CHECK(word_membership(almost_inclusion_pairs(), pair));
    LassoWord reversed = convolve_lassos({lasso(b, {0}, {1}), lasso(b, {1}, {0})});
    CHECK_FALSE(word_membership(almost_inclusion_pairs(), reversed));
  }

  SUBCASE("alphabet mismatch is rejected") {
    LassoWord wide = lasso(power_alphabet(b, 2), {}, {0});
    CHECK_THROWS_AS(word_membership(fin, wide), InputError);
  }
}

TEST_CASE("membership agrees with an SCC oracle on random cases") {
  Rng rng(11);
  Alphabet b = Alphabet::binary();
  for (int i = 0; i < 100; ++i) {
    BuchiAutomaton a = random_buchi(rng, b, 5);
    LassoWord w = random_lasso(rng, b, 6, 6);
    CAPTURE(i);
    CHECK(word_membership(a, w) == scc_membership(a, w));
  }
}

TEST_CASE("lasso normalization") {
  Alphabet b = Alphabet::binary();
  LassoWord w = normalize_lasso(lasso(b, {0}, {0, 0}));
  CHECK(w.stem.empty());
  CHECK(w.loop == std::vector<int>{0});

  SUBCASE("normalization preserves membership") {
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
      BuchiAutomaton a = random_buchi(rng, b, 5);
      LassoWord v = random_lasso(rng, b, 6, 6);
      CHECK(word_membership(a, v) == word_membership(a, normalize_lasso(v)));
    }
  }
}

TEST_CASE("emptiness") {
  Alphabet b = Alphabet::binary();
  BuchiAutomaton fin = finitely_many_ones();

  SUBCASE("no accepting state means empty") {
    BuchiAutomaton a = mk(b, 1, {0}, {}, {{0, 0, 0}, {0, 1, 0}});
    CHECK_FALSE(word_emptiness(a).has_value());
  }

  SUBCASE("witnesses re-verify") {
    auto w = word_emptiness(fin);
    REQUIRE(w.has_value());
    CHECK(word_membership(fin, *w));

    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
      BuchiAutomaton a = random_buchi(rng, b, 5);
      auto witness = word_emptiness(a);
      if (witness) {
        CHECK(word_membership(a, *witness));
      } else {
        for (int j = 0; j < 20; ++j) CHECK_FALSE(word_membership(a, random_lasso(rng, b, 6, 6)));
      }
    }
  }

  SUBCASE("a language never meets its complement") {
    CHECK_FALSE(word_emptiness(word_product(fin, word_complement(fin))).has_value());
  }
}

TEST_CASE("product and union respect membership") {
  Rng rng(14);
  Alphabet b = Alphabet::binary();
  BuchiAutomaton fin = finitely_many_ones();
  BuchiAutomaton empty = mk(b, 1, {}, {}, {});

  CHECK(word_membership(word_product(fin, infinitely_many(0)), lasso(b, {1}, {0})));
  CHECK_FALSE(word_emptiness(word_product(fin, infinitely_many(1))).has_value());

  SUBCASE("product with itself changes nothing") {
    BuchiAutomaton twice = word_product(fin, fin);
    for (int i = 0; i < 50; ++i) {
      LassoWord w = random_lasso(rng, b, 6, 6);
      CHECK(word_membership(twice, w) == word_membership(fin, w));
    }
  }

  SUBCASE("union with the empty automaton changes nothing") {
    BuchiAutomaton u = word_union(fin, empty);
    for (int i = 0; i < 50; ++i) {
      LassoWord w = random_lasso(rng, b, 6, 6);
      CHECK(word_membership(u, w) == word_membership(fin, w));
    }
  }

  SUBCASE("the two halves of a dichotomy cover everything") {
    BuchiAutomaton all = word_union(fin, infinitely_many(1));
    for (int i = 0; i < 50; ++i) CHECK(word_membership(all, random_lasso(rng, b, 6, 6)));
  }

  SUBCASE("boolean structure on random automata") {
    for (int i = 0; i < 100; ++i) {
      BuchiAutomaton x = random_buchi(rng, b, 4);
      BuchiAutomaton y = random_buchi(rng, b, 4);
      LassoWord w = random_lasso(rng, b, 5, 5);
      CAPTURE(i);
      CHECK(word_membership(word_product(x, y), w) ==
            (word_membership(x, w) && word_membership(y, w)));
      CHECK(word_membership(word_union(x, y), w) ==
            (word_membership(x, w) || word_membership(y, w)));
    }
  }

  SUBCASE("mismatched alphabets are rejected") {
    CHECK_THROWS_AS(word_product(fin, almost_inclusion_pairs()), InputError);
  }
}

TEST_CASE("projection") {
  Rng rng(15);
  Alphabet b = Alphabet::binary();
  Alphabet p = power_alphabet(b, 2);

  SUBCASE("dropping the larger side of almost-inclusion leaves everything") {
    BuchiAutomaton anything = word_project(almost_inclusion_pairs(), 1);
    for (int i = 0; i < 50; ++i) CHECK(word_membership(anything, random_lasso(rng, b, 6, 6)));
  }

  SUBCASE("projecting the empty automaton") {
    BuchiAutomaton empty = mk(p, 1, {}, {}, {});
    CHECK_FALSE(word_emptiness(word_project(empty, 0)).has_value());
  }

  SUBCASE("accepted pairs project to accepted singles") {
    for (int i = 0; i < 100; ++i) {
      BuchiAutomaton a = random_buchi(rng, p, 4);
      LassoWord w = random_lasso(rng, p, 5, 5);
      if (!word_membership(a, w)) continue;
      CHECK(word_membership(word_project(a, 1), lasso_track(w, 0)));
      CHECK(word_membership(word_project(a, 0), lasso_track(w, 1)));
    }
  }

  SUBCASE("single-track projection is rejected") {
    CHECK_THROWS_AS(word_project(finitely_many_ones(), 0), InputError);
  }
}

TEST_CASE("cylindrification") {
  Rng rng(16);
  Alphabet b = Alphabet::binary();
  BuchiAutomaton fin = finitely_many_ones();
  std::vector<std::string> bits{"0", "1"};

  SUBCASE("projecting the fresh track is the identity") {
    BuchiAutomaton widened = word_cylindrify(fin, 0, bits);
    BuchiAutomaton back = word_project(widened, 0);
    for (int i = 0; i < 50; ++i) {
      LassoWord w = random_lasso(rng, b, 6, 6);
      CHECK(word_membership(back, w) == word_membership(fin, w));
    }
  }

  SUBCASE("cylindrifying the empty automaton") {
    BuchiAutomaton empty = mk(b, 1, {}, {}, {});
    CHECK_FALSE(word_emptiness(word_cylindrify(empty, 1, bits)).has_value());
  }

  SUBCASE("the fresh track is ignored") {
    BuchiAutomaton widened = word_cylindrify(fin, 1, bits);
    for (int i = 0; i < 100; ++i) {
      LassoWord w = random_lasso(rng, b, 5, 5);
      LassoWord noise = random_lasso(rng, b, 5, 5);
      CHECK(word_membership(widened, convolve_lassos({w, noise})) == word_membership(fin, w));
    }
  }
}

TEST_CASE("relabeling") {
  Rng rng(17);
  Alphabet b = Alphabet::binary();
  Alphabet p = power_alphabet(b, 2);
  BuchiAutomaton fin = finitely_many_ones();

  auto pair_map = [&](auto fn) {
    LetterMap map;
    map.target = p;
    for (int s = 0; s < p.size(); ++s) {
      std::vector<int> c = p.components(s);
      map.to_source.push_back(fn(c[0], c[1]));
    }
    return map;
  };

  SUBCASE("symmetric difference of equal sets is finite") {
    BuchiAutomaton eq = word_relabel(fin, pair_map([](int x, int y) { return x ^ y; }));
    CHECK(word_membership(eq, convolve_lassos({lasso(b, {1}, {0}), lasso(b, {1}, {0})})));
  }

  SUBCASE("b and not b' relabeling equals the direct almost-inclusion automaton") {
    BuchiAutomaton relabeled =
        word_relabel(fin, pair_map([](int x, int y) { return x & (1 - y); }));
    BuchiAutomaton direct = almost_inclusion_pairs();
    for (int i = 0; i < 100; ++i) {
      LassoWord w = random_lasso(rng, p, 6, 6);
      CAPTURE(i);
      CHECK(word_membership(relabeled, w) == word_membership(direct, w));
    }
  }

  SUBCASE("identity map changes nothing") {
    LetterMap identity;
    identity.target = b;
    identity.to_source = {0, 1};
    CHECK(word_relabel(fin, identity) == fin);
  }

  SUBCASE("maps must cover the whole target alphabet") {
    LetterMap partial;
    partial.target = b;
    partial.to_source = {0};
    CHECK_THROWS_AS(word_relabel(fin, partial), InputError);
  }
}

TEST_CASE("language-preserving reductions and helpers") {
  Rng rng(18);
  Alphabet b = Alphabet::binary();

  SUBCASE("trim, bisimulation quotient and simulation reduction preserve membership") {
    for (int i = 0; i < 60; ++i) {
      BuchiAutomaton a = random_buchi(rng, b, 6);
      BuchiAutomaton reduced = reduce_simulation(a);
      BuchiAutomaton trimmed = trim_useful(a);
      BuchiAutomaton quotiented = quotient_bisimulation(a);
      for (int j = 0; j < 10; ++j) {
        LassoWord w = random_lasso(rng, b, 5, 5);
        bool want = word_membership(a, w);
        CHECK(word_membership(reduced, w) == want);
        CHECK(word_membership(trimmed, w) == want);
        CHECK(word_membership(quotiented, w) == want);
      }
    }
  }

  SUBCASE("universal automaton accepts everything") {
    BuchiAutomaton univ = universal_buchi(b);
    for (int i = 0; i < 30; ++i) CHECK(word_membership(univ, random_lasso(rng, b, 6, 6)));
  }

  SUBCASE("diagonal pairs track the base language") {
    for (int i = 0; i < 50; ++i) {
      BuchiAutomaton a = random_buchi(rng, b, 5);
      LassoWord w = random_lasso(rng, b, 5, 5);
      CHECK(word_membership(word_diagonal(a), convolve_lassos({w, w})) == word_membership(a, w));
    }
  }

  SUBCASE("operations are deterministic") {
    BuchiAutomaton x = random_buchi(rng, b, 5);
    BuchiAutomaton y = random_buchi(rng, b, 5);
    CHECK(word_product(x, y) == word_product(x, y));
    CHECK(word_union(x, y) == word_union(x, y));
    CHECK(reduce_simulation(x) == reduce_simulation(x));
  }
}
