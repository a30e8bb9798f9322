#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobord/json_io.hpp"
#include "cobord/series.hpp"

using namespace cobord;

namespace {

VarTablePtr tbl(std::initializer_list<Variable> vars)
{
    return VarTable::make(std::vector<Variable>(vars));
}

GradedSeries var(const VarTablePtr& t, const char* name, int trunc)
{
    return GradedSeries::variable(t, trunc, name);
}

struct Rng {
    unsigned s;
    unsigned next() { return s ^= s << 13, s ^= s >> 17, s ^= s << 5, s; }
    long small() { return static_cast<long>(next() % 7) - 3; }
};

GradedSeries random_univariate(Rng& rng, const VarTablePtr& t, int trunc, bool zero_const,
                               bool monic_linear = false)
{
    GradedSeries s(t, trunc);
    for (int k = zero_const ? 1 : 0; k <= trunc; ++k) {
        long c = rng.small();
        if (monic_linear && k == 1)
            c = 1;
        if (c)
            s.add_term({k}, Rat(c));
    }
    return s;
}

} // namespace

TEST_CASE("mul basics")
{
    auto t = tbl({{"x", 1}});
    auto x = var(t, "x", 6);
    auto one = GradedSeries::constant(t, 6, Rat(1));
    CHECK((one + x) * (one - x) == one - x * x);

    auto a = one + Rat(3) * x + x * x;
    CHECK(a * one == a);

    auto u = tbl({{"t", 1}});
    auto tt = var(u, "t", 6);
    auto s = tt + tt * tt;
    auto expect = GradedSeries::zero(u, 6)
                      .add_term({2}, Rat(1))
                      .add_term({3}, Rat(2))
                      .add_term({4}, Rat(1));
    CHECK(s * s == expect);
}

TEST_CASE("mul rejects weight mismatch for a shared name")
{
    auto a = GradedSeries::variable(tbl({{"x", 1}}), 4, "x");
    auto b = GradedSeries::variable(tbl({{"x", 2}}), 4, "x");
    CHECK_THROWS_AS(mul(a, b), SeriesError);
}

TEST_CASE("mul convolution oracle on random series")
{
    auto t = tbl({{"x", 1}, {"y", 1}});
    Rng rng{99};
    GradedSeries a(t, 5), b(t, 5);
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; i + j <= 5; ++j) {
            if (long c = rng.small())
                a.add_term({i, j}, Rat(c));
            if (long c = rng.small())
                b.add_term({i, j}, Rat(c));
        }
    GradedSeries p = mul(a, b);
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; i + j <= 5; ++j) {
            Rat conv(0);
            for (int ai = 0; ai <= i; ++ai)
                for (int aj = 0; aj <= j; ++aj)
                    conv += a.coeff({ai, aj}) * b.coeff({i - ai, j - aj});
            CHECK(p.coeff({i, j}) == conv);
        }
}

TEST_CASE("mul is associative and commutative, exactly")
{
    auto t = tbl({{"x", 1}, {"y", 2}});
    Rng rng{7};
    GradedSeries a(t, 6), b(t, 6), c(t, 6);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; i + 2 * j <= 6; ++j) {
            if (long v = rng.small())
                a.add_term({i, j}, Rat(v));
            if (long v = rng.small())
                b.add_term({i, j}, make_rat(v, 3));
            if (long v = rng.small())
                c.add_term({i, j}, Rat(v));
        }
    CHECK(mul(a, b) == mul(b, a));
    CHECK(mul(a, mul(b, c)) == mul(mul(a, b), c));
}

TEST_CASE("substitute examples")
{
    auto t = tbl({{"t", 1}});
    auto tt = var(t, "t", 6);
    auto u = tbl({{"s", 1}});
    auto s = var(u, "s", 6);
    CHECK(substitute(tt, s) == s); // identity outer

    auto t3 = var(t, "t", 3);
    auto inner = t3 + t3 * t3;
    auto out = substitute(t3 * t3, inner);
    auto expect = GradedSeries::zero(t, 3).add_term({2}, Rat(1)).add_term({3}, Rat(2));
    CHECK(out.with_table(t) == expect);

    CHECK_THROWS_AS(substitute(tt, GradedSeries::constant(u, 6, Rat(1)) + s), SeriesError);
}

TEST_CASE("substitute is associative (both evaluation orders)")
{
    auto t = tbl({{"t", 1}});
    Rng rng{123};
    for (int rep = 0; rep < 6; ++rep) {
        GradedSeries f = random_univariate(rng, t, 3, false);
        GradedSeries g = random_univariate(rng, t, 3, true);
        GradedSeries h = random_univariate(rng, t, 3, true);
        if (g.is_zero() || h.is_zero())
            continue;
        auto lhs = substitute(f, "t", substitute(g, "t", h).with_table(t));
        auto rhs = substitute(substitute(f, "t", g).with_table(t), "t", h);
        CHECK(lhs.with_table(t) == rhs.with_table(t));
    }
}

TEST_CASE("revert")
{
    auto t = tbl({{"t", 1}});
    auto tt = var(t, "t", 4);
    CHECK(revert(tt) == tt);

    auto s = tt + tt * tt;
    auto r = revert(s);
    auto expect = GradedSeries::zero(t, 4)
                      .add_term({1}, Rat(1))
                      .add_term({2}, Rat(-1))
                      .add_term({3}, Rat(2))
                      .add_term({4}, Rat(-5));
    CHECK(r == expect);
    // brute-force composition back to t
    CHECK(substitute(r, "t", s).with_table(t) == tt);
    CHECK(substitute(s, "t", r).with_table(t) == tt);

    Rng rng{5};
    for (int rep = 0; rep < 5; ++rep) {
        auto f = random_univariate(rng, t, 6, true, true).truncate_to(6);
        auto tt6 = var(t, "t", 6);
        auto g = f + tt6 - tt6; // ensure table
        CHECK(revert(revert(g)) == g);
    }

    CHECK_THROWS_AS(revert(Rat(2) * tt), SeriesError);
}

TEST_CASE("nth_root")
{
    auto t = tbl({{"t", 1}});
    auto tt = var(t, "t", 3);
    auto one = GradedSeries::constant(t, 3, Rat(1));
    CHECK(nth_root(one + Rat(2) * tt + tt * tt, 2) == one + tt);
    CHECK(nth_root(one + tt, 1) == one + tt);

    auto r = nth_root(one + tt, 2);
    auto expect = GradedSeries::zero(t, 3)
                      .add_term({0}, Rat(1))
                      .add_term({1}, make_rat(1, 2))
                      .add_term({2}, make_rat(-1, 8))
                      .add_term({3}, make_rat(1, 16));
    CHECK(r == expect);
    CHECK(mul(r, r) == one + tt); // square back

    CHECK_THROWS_AS(nth_root(tt, 2), SeriesError);

    Rng rng{31};
    for (int n : {2, 3}) {
        auto one6 = GradedSeries::constant(t, 6, Rat(1));
        auto s = one6 + random_univariate(rng, t, 6, true);
        auto root = nth_root(s, n);
        CHECK(pow(root, n) == s);
    }
}

TEST_CASE("coeff")
{
    auto t = tbl({{"x", 1}});
    auto x = var(t, "x", 4);
    auto one = GradedSeries::constant(t, 4, Rat(1));
    CHECK((one - x * x).coeff({2}) == Rat(-1));
    CHECK((x + x * x).coeff({3}) == Rat(0));
}

TEST_CASE("truncation monotonicity")
{
    auto t = tbl({{"x", 1}, {"y", 1}});
    Rng rng{44};
    GradedSeries a(t, 8), b(t, 8);
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; i + j <= 8; ++j) {
            if (long v = rng.small())
                a.add_term({i, j}, Rat(v));
            if (long v = rng.small())
                b.add_term({i, j}, Rat(v));
        }
    CHECK(mul(a, b).truncate_to(5) == mul(a.truncate_to(5), b.truncate_to(5)));
    CHECK(mul(a, b).truncate_to(5) ==
          mul(a.truncate_to(6), b.truncate_to(7)).truncate_to(5));
}

TEST_CASE("exact division helpers")
{
    auto t = tbl({{"x", 1}, {"y", 1}});
    auto x = var(t, "x", 8);
    auto y = var(t, "y", 8);
    // (x^2 - y^2)/(x - y) = x + y
    CHECK(divide_by_linear(x * x - y * y, "x", y) == (x + y).truncate_to(7));
    CHECK_THROWS_AS(divide_by_linear(x * x, "x", y), SeriesError);

    auto q = exact_div(mul(x + y, x - y), x - y);
    CHECK(q == (x + y).truncate_to(7));
    CHECK(!try_exact_div(x, y).has_value());
}

TEST_CASE("series JSON round trip keeps graded-lex order")
{
    auto t = tbl({{"x", 1}, {"y", 2}});
    GradedSeries s(t, 5);
    s.add_term({1, 2}, make_rat(-7, 3));
    s.add_term({1, 0}, Rat(4));
    s.add_term({0, 1}, Rat(1));
    json j = series_to_json(s);
    // weights of the stored terms must be nondecreasing
    long last = -1;
    for (const auto& term : j["terms"]) {
        Exponents e = term["exp"].get<Exponents>();
        long w = weight_of(*t, e);
        CHECK(w >= last);
        last = w;
    }
    CHECK(series_from_json(j) == s);
}
