#include <doctest.h>

#include "fibmult/error.hpp"
#include "fibmult/finset.hpp"
#include "oracles.hpp"

using namespace fibmult;

TEST_SUITE("finset") {
  TEST_CASE("all_maps counts n^m") {
    for (std::size_t m = 0; m <= 3; ++m)
      for (std::size_t n = 0; n <= 3; ++n) CHECK(all_maps(standard_set(m), standard_set(n)).size() == oracle::power(n, m));
  }

  TEST_CASE("chosen pullbacks have the brute-force size and are pullbacks") {
    const FinSet two = standard_set(2), three = standard_set(3);
    for (const auto& f : all_maps(three, two)) {
      for (const auto& g : all_maps(two, two)) {
        auto sq = chosen_pullback(f, g);
        CHECK(sq.apex.size() == oracle::pullback_size(f.assignment, g.assignment));
        CHECK(compose(g, sq.top) == compose(f, sq.left));
        CHECK(is_pullback(sq.top, sq.left, f, g));
      }
    }
  }

  TEST_CASE("is_pullback rejects a commuting square that is not one") {
    const FinSet one = standard_set(1), two = standard_set(2);
    const FinMap bang = make_map(two, one, {0, 0});
    // The diagonal [2] → [2]×[2] squares commute but miss the off-diagonal pairs.
    const FinMap id = identity_map(two);
    CHECK_FALSE(is_pullback(id, id, bang, bang));
  }

  TEST_CASE("diagonal splits the kernel pair") {
    const FinSet three = standard_set(3), two = standard_set(2);
    const FinMap f = make_map(three, two, {0, 1, 0});
    auto d = diagonal_data(f);
    CHECK(d.kernel_pair.apex.size() == 5);
    CHECK(compose(d.kernel_pair.top, d.diagonal) == identity_map(three));
    CHECK(compose(d.kernel_pair.left, d.diagonal) == identity_map(three));
  }

  TEST_CASE("finite sums and injections") {
    std::vector<FinSet> parts{standard_set(2), standard_set(0), standard_set(3)};
    auto [sum, inj] = finite_sum(parts);
    CHECK(sum.size() == 5);
    REQUIRE(inj.size() == 3);
    CHECK(is_injective(inj[2]));
    CHECK(inj[2](0) == 2);
  }

  TEST_CASE("map predicates") {
    const FinSet two = standard_set(2), three = standard_set(3);
    CHECK(is_injective(make_map(two, three, {2, 0})));
    CHECK_FALSE(is_surjective(make_map(two, three, {2, 0})));
    CHECK(is_surjective(make_map(three, two, {1, 0, 1})));
    CHECK(is_bijective(make_map(three, three, {1, 2, 0})));
  }

  TEST_CASE("reserved labels and mismatched codomains") {
    CHECK_THROWS_AS(make_set("S", {"a|b"}), Error);
    try {
      make_set("S", {"a:b"});
      FAIL("expected ReservedLabel");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ReservedLabel);
    }
    const FinSet two = standard_set(2), three = standard_set(3);
    try {
      compose(identity_map(two), identity_map(three));
      FAIL("expected CodomainMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CodomainMismatch);
    }
  }
}
