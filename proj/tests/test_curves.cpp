#include <gtest/gtest.h>

#include <map>
#include <set>

#include "ltcm/arith.hpp"
#include "ltcm/curves.hpp"

using namespace ltcm;

namespace {

// j-invariants of the CM orders involved, keyed by (disc_K, f).
Rational expected_j(std::int64_t disc_K, unsigned f) {
  static const std::map<std::pair<std::int64_t, unsigned>, std::int64_t> table = {
      {{-4, 1}, 1728},
      {{-4, 2}, 287496},
      {{-3, 1}, 0},
      {{-3, 2}, 54000},
      {{-7, 1}, -3375},
      {{-11, 1}, -32768},
      {{-19, 1}, -884736},
      {{-43, 1}, -884736000},
      {{-67, 1}, -147197952000},
      {{-163, 1}, -262537412640768000},
  };
  return table.at({disc_K, f});
}

}  // namespace

TEST(Registry, TwentyCurvesInEightClasses) {
  const auto& reg = registry();
  ASSERT_EQ(reg.size(), 20u);
  std::map<unsigned, int> per_D;
  std::set<std::string> ids;
  for (const auto& c : reg) {
    ++per_D[c.D];
    ids.insert(c.id);
  }
  EXPECT_EQ(ids.size(), 20u);
  EXPECT_EQ(per_D, (std::map<unsigned, int>{{1, 4}, {3, 4}, {7, 2}, {11, 2}, {19, 2}, {43, 2}, {67, 2}, {163, 2}}));
}

TEST(Registry, Lookups) {
  const auto& e1 = lookup("E1");
  EXPECT_EQ(e1.a, (std::array<std::int64_t, 5>{0, 0, 0, 4, 0}));
  EXPECT_EQ(e1.D, 1u);
  EXPECT_EQ(e1.m_E, 4u);
  const auto& e2s = lookup("E2s");
  EXPECT_EQ(e2s.a, (std::array<std::int64_t, 5>{0, 0, 0, -15, 22}));
  EXPECT_EQ(e2s.D, 3u);
  EXPECT_EQ(e2s.m_E, 12u);
  EXPECT_THROW(lookup("E9"), UnknownCurve);
}

TEST(Registry, FieldDataInvariants) {
  for (const auto& c : registry()) {
    const std::int64_t D = c.D;
    const std::int64_t want = (D % 4 == 1 || D % 4 == 2) ? -4 * D : -D;
    EXPECT_EQ(c.disc_K, want) << c.id;
    if (c.D >= 7) {
      EXPECT_EQ(c.m_E, 4 * c.D) << c.id;
    } else {
      EXPECT_TRUE(c.m_E == 4 || c.m_E == 12) << c.id;
    }
    const i128 disc = invariants(c).disc;
    EXPECT_NE(disc, 0) << c.id;
    for (std::uint64_t p : c.bad_primes) EXPECT_EQ(disc % static_cast<i128>(p), 0) << c.id << " " << p;
  }
}

TEST(Registry, JInvariantMatchesTheOrder) {
  for (const auto& c : registry()) EXPECT_EQ(invariants(c).j(), expected_j(c.disc_K, c.order_conductor)) << c.id;
}

TEST(Registry, CuratedPartnersAreFlagged) {
  EXPECT_NE(lookup("E4p").note.find("data-curated"), std::string::npos);
  EXPECT_FALSE(lookup("E7p").note.empty());
}

TEST(ShortForm, Examples) {
  const auto e1 = to_short(lookup("E1"));
  EXPECT_EQ(e1.A, Rational(4));
  EXPECT_EQ(e1.B, Rational(0));
  EXPECT_EQ(e1.u, 1u);
  EXPECT_EQ(four_x_cubed_form(lookup("E4")), std::make_pair(Rational(-88, 3), Rational(847, 27)));
  EXPECT_EQ(four_x_cubed_form(lookup("E5")), std::make_pair(Rational(-152), Rational(361)));
}

TEST(ShortForm, IsomorphicInvariantsAndIntegralScaling) {
  for (const auto& c : registry()) {
    const auto s = to_short(c);
    const Rational A = s.A, B = s.B;
    const Rational disc = Rational(-16) * (Rational(4) * A * A * A + Rational(27) * B * B);
    EXPECT_FALSE(disc.is_zero()) << c.id;
    // j = 1728 * 4A^3 / (4A^3 + 27B^2) is an isomorphism invariant.
    const Rational num = Rational(4) * A * A * A;
    EXPECT_EQ(Rational(1728) * num / (num + Rational(27) * B * B), invariants(c).j()) << c.id;
    const std::int64_t u2 = static_cast<std::int64_t>(s.u * s.u);
    EXPECT_EQ(Rational(s.A_int), A * Rational(u2 * u2)) << c.id;
    EXPECT_EQ(Rational(s.B_int), B * Rational(u2 * u2 * u2)) << c.id;
  }
}

TEST(WanXiForm, TableCurvesMatchAtGEqualsOne) {
  for (const char* id : {"E3", "E4", "E5", "E6", "E7", "E8"}) {
    EXPECT_TRUE(verify_wanxi_form(lookup(id))) << id;
    EXPECT_EQ(four_x_cubed_form(lookup(id)), *wanxi_table_row(lookup(id).D)) << id;
  }
  EXPECT_EQ(wanxi_table_row(163)->first, Rational(-8697680));
  EXPECT_EQ(wanxi_table_row(163)->second, Rational(185801LL * 163 * 163));
  EXPECT_THROW(verify_wanxi_form(lookup("E1")), std::invalid_argument);
}

TEST(WanXiForm, PartnersAreTwistsByMinusD) {
  for (const char* id : {"E3p", "E4p", "E5p", "E6p", "E7p", "E8p"}) {
    const auto& c = lookup(id);
    EXPECT_EQ(c.wanxi_g, -static_cast<std::int64_t>(c.D)) << id;
    EXPECT_TRUE(verify_wanxi_form(c)) << id;
  }
}

TEST(Reduce, BadAndGoodPrimes) {
  const auto e1_5 = reduce(lookup("E1"), 5);
  ASSERT_TRUE(e1_5);
  EXPECT_EQ(e1_5->A, 4u);
  EXPECT_EQ(e1_5->B, 0u);
  EXPECT_FALSE(reduce(lookup("E1"), 2));
  EXPECT_FALSE(reduce(lookup("E2s"), 3));
  EXPECT_FALSE(reduce(lookup("E4"), 11));
}

TEST(Reduce, GoodPrimesHaveNonzeroDiscriminant) {
  const auto t = sieve(3000);
  for (const auto& c : registry()) {
    for (std::uint32_t p : t.primes()) {
      const auto E = reduce(c, p);
      if (!E) continue;
      const std::uint64_t A3 = mulmod(mulmod(E->A, E->A, p), E->A, p);
      const std::uint64_t d = (4 * A3 + 27 * mulmod(E->B, E->B, p)) % p;
      EXPECT_NE(d, 0u) << c.id << " " << p;
    }
  }
}
