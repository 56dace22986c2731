#include <catch_amalgamated.hpp>

#include <varlab/varlab.hpp>

#include "oracles/brute.hpp"

using namespace varlab;
using letters::x;
using letters::y;
using letters::z;

namespace {

  Word random_word(Rng& rng, std::size_t alphabet, std::size_t max_len) {
    Word w(rng.below(max_len + 1));
    for (Letter& l : w) {
      l = x(static_cast<std::uint32_t>(rng.below(alphabet)));
    }
    return w;
  }

}  // namespace

TEST_CASE("content and simple letters", "[words]") {
  Word w3 = w_n(3);
  CHECK(content(w3) == std::set<Letter>{x(1), x(2), x(3), y, z});
  CHECK(content({}).empty());
  CHECK(content({x(0), x(0)}) == std::set<Letter>{x(0)});
  CHECK(simple_letters(w3).empty());
  CHECK(simple_letters({x(0), y, x(0)}) == std::set<Letter>{y});
  CHECK(simple_letters({}).empty());
  CHECK(non_simple_letters({x(0), y, x(0)}) == std::set<Letter>{x(0)});
}

TEST_CASE("head and tail", "[words]") {
  CHECK(head(w_n(3)) == x(1));
  CHECK(tail(w_n(3)) == x(3));
  CHECK(head({x(4)}) == tail({x(4)}));
  CHECK(head({x(0), x(1)}) == x(0));
  CHECK(tail({x(0), x(1)}) == x(1));
  CHECK_THROWS_AS(head({}), PreconditionError);
  CHECK_THROWS_AS(tail({}), PreconditionError);
}

TEST_CASE("restrictions of w_n", "[words]") {
  for (std::size_t n : {3, 5, 7, 9}) {
    std::set<Letter> xs;
    Word             line;
    for (std::uint32_t i = 1; i <= n; ++i) {
      xs.insert(x(i));
      line.push_back(x(i));
    }
    CHECK(restrict(w_n(n), xs) == power(line, 2));
    CHECK(restrict(w_n(n), {y, z}) == concat(power({y, z}, n - 1), {y}));
    CHECK(w_n(n).size() == 4 * n - 1);
  }
  CHECK(restrict(w_n(3), {}).empty());
}

TEST_CASE("w_3 and its primed form", "[words]") {
  CHECK(w_n(3) == Word{x(1), y, x(2), z, x(3), y, x(1), z, x(2), y, x(3)});
  CHECK(w_n_prime(3) == Word{x(1), z, x(2), y, x(3), z, x(1), y, x(2), z, x(3)});
  Substitution swap{{y, {z}}, {z, {y}}};
  for (std::size_t n : {3, 5, 7}) {
    CHECK(apply_substitution(swap, w_n(n)) == w_n_prime(n));
  }
  CHECK_THROWS_AS(w_n(4), PreconditionError);
  CHECK_THROWS_AS(w_n(1), PreconditionError);
  CHECK_THROWS_AS(w_n_prime(2), PreconditionError);
}

TEST_CASE("Zimin words", "[words]") {
  CHECK(zimin(0) == Word{x(0)});
  CHECK(zimin(2) == Word{x(0), x(1), x(0), x(2), x(0), x(1), x(0)});
  for (std::size_t n = 0; n <= 10; ++n) {
    CHECK(zimin(n).size() == (std::size_t(1) << (n + 1)) - 1);
  }
  CHECK(is_factor({x(0), x(2), x(0)}, zimin(2)));
  CHECK_FALSE(is_factor({x(0), x(0)}, zimin(5)));
  CHECK(is_factor({}, zimin(3)));
  CHECK(is_factor({}, {}));
}

TEST_CASE("every factor of z_6 has a letter occurring once", "[words]") {
  for (Word const& f : oracle::distinct_factors(zimin(6))) {
    CHECK(max_letter_occurrences(f).second == 1);
  }
  CHECK(max_letter_occurrences({x(0), x(1), x(0)}) == std::pair{x(1), std::size_t{1}});
  CHECK(max_letter_occurrences({x(0), x(2), x(0), x(1)}) == std::pair{x(2), std::size_t{1}});
  CHECK_THROWS_AS(max_letter_occurrences({}), PreconditionError);
}

TEST_CASE("maximal letter occurs once in every factor of z_n, n <= 10", "[words][property]") {
  for (std::size_t n = 0; n <= 10; ++n) {
    Word const w  = zimin(n);
    bool       ok = true;
    for (std::size_t i = 0; i < w.size() && ok; ++i) {
      Letter      top   = w[i];
      std::size_t count = 0;
      for (std::size_t j = i; j < w.size(); ++j) {
        if (w[j] > top) {
          top   = w[j];
          count = 1;
        } else if (w[j] == top) {
          ++count;
        }
        ok &= count == 1;
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("restriction commutes with alphabet-preserving substitutions", "[words][property]") {
  Rng rng(23);
  std::set<Letter> A{x(0), x(1)};
  for (int trial = 0; trial < 300; ++trial) {
    Substitution theta;
    for (std::uint32_t l = 0; l < 4; ++l) {
      Word img = random_word(rng, 2, 3);
      if (l >= 2) {
        for (Letter& c : img) {
          c = x(c.id + 2);
        }
      }
      theta.set(x(l), img);
    }
    Word w = random_word(rng, 4, 8);
    CHECK(restrict(apply_substitution(theta, w), A) == apply_substitution(theta, restrict(w, A)));
  }
}

TEST_CASE("substitutions", "[words]") {
  Alphabet     names;
  Letter       a = names.intern("a"), b = names.intern("b"), s = names.intern("s");
  Substitution theta{{a, {x(0)}}, {b, {x(1), x(0)}}, {s, {x(2)}}};
  CHECK(apply_substitution(theta, {a, b, s, a, b}) == zimin(2));
  CHECK(apply_substitution(Substitution{}, w_n(5)) == w_n(5));
  CHECK(apply_substitution(Substitution{{x(0), {}}}, {x(0), y, x(0)}) == Word{y});
}

TEST_CASE("substitution is a homomorphism", "[words][property]") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    Substitution theta;
    for (std::uint32_t l = 0; l < 4; ++l) {
      theta.set(x(l), random_word(rng, 3, 3));
    }
    Word u = random_word(rng, 4, 6), v = random_word(rng, 4, 6);
    CHECK(apply_substitution(theta, concat(u, v))
          == concat(apply_substitution(theta, u), apply_substitution(theta, v)));
  }
}

TEST_CASE("square-freeness", "[words]") {
  for (std::size_t n : {3, 5, 7}) {
    CHECK(is_squarefree(w_n(n)));
    CHECK(is_squarefree(w_n_prime(n)));
  }
  CHECK_FALSE(is_squarefree({x(0), x(0)}));
  CHECK_FALSE(is_squarefree({x(0), x(1), x(0), x(1)}));
  CHECK(is_squarefree({}));
}

TEST_CASE("square-freeness against the factor oracle", "[words][property]") {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    Word w        = random_word(rng, 3, 12);
    bool has_square = false;
    for (Word const& f : oracle::distinct_factors(w)) {
      has_square |= is_factor(concat(f, f), w);
    }
    CHECK(is_squarefree(w) == !has_square);
  }
}

TEST_CASE("factor positions agree with a direct scan", "[words][property]") {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = random_word(rng, 2, 10), u = random_word(rng, 2, 3);
    std::vector<std::size_t> expect;
    for (std::size_t i = 0; i + u.size() <= w.size(); ++i) {
      if (Word(w.begin() + i, w.begin() + i + u.size()) == u) {
        expect.push_back(i);
      }
    }
    CHECK(factor_positions(u, w) == expect);
    CHECK(is_factor(u, w) == !expect.empty());
  }
}

TEST_CASE("alphabet naming", "[words]") {
  Alphabet names;
  CHECK(names.intern("x3") == x(3));
  CHECK(names.intern("y") == y);
  CHECK(names.intern("z") == z);
  Letter a = names.intern("a");
  CHECK(names.intern("a") == a);
  CHECK(names.name(a) == "a");
  CHECK(names.name(x(12)) == "x12");
  CHECK_THROWS_AS(names.intern(""), InputError);
  Word w = parse_word("x1 y a x1", names);
  CHECK(to_string(w, names) == "x1 y a x1");
  CHECK(to_string(w_n(3)) == "x1 y x2 z x3 y x1 z x2 y x3");
}
