#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobord/formal_group.hpp"
#include "cobord/lattice.hpp"
#include "cobord/milnor.hpp"

#include <sstream>

using namespace cobord;

namespace {

const int W = 6;

} // namespace

TEST_CASE("universal coefficients by hand expansion")
{
    // phi^{-1}(y) = y - t1 y^2 + ..., so
    // phi(y1 + y2 - t1(y1^2 + y2^2) + ...) = y1 + y2 + 2 t1 y1 y2 + ...
    auto t = universal_fgl(W);
    auto s1 = star_gen(1, W, W);
    auto s2 = star_gen(2, W, W);
    CHECK(t.entry(1, 1) == Rat(2) * s1);
    CHECK(t.entry(1, 2) == Rat(3) * s2 - Rat(2) * mul(s1, s1));
    CHECK(t.entry(2, 1) == t.entry(1, 2));
    for (const auto& [ij, e] : t.entries) {
        CHECK(t.entry(ij.second, ij.first) == e); // symmetric
        CHECK(e.is_integral());
    }
}

TEST_CASE("logarithm pair")
{
    auto lp = log_pair(W);
    std::size_t ti = *lp.exp.table()->index_of("t");
    auto stars = star_table(W);
    CHECK(lp.exp.coeff_of_power(ti, 2).with_table(stars).truncate_to(W) == star_gen(1, W, W));
    CHECK(lp.log.coeff_of_power(ti, 2).with_table(stars).truncate_to(W) ==
          Rat(-1) * star_gen(1, W, W));
    auto s1 = star_gen(1, W, W);
    auto s2 = star_gen(2, W, W);
    CHECK(lp.log.coeff_of_power(ti, 3).with_table(stars).truncate_to(W) ==
          Rat(2) * mul(s1, s1) - s2);
    // mutually inverse
    auto tt = GradedSeries::variable(lp.exp.table(), lp.exp.truncation(), "t");
    CHECK(substitute(lp.exp, "t", lp.log).with_table(lp.exp.table()) == tt);
    CHECK(substitute(lp.log, "t", lp.exp).with_table(lp.exp.table()) == tt);
}

TEST_CASE("the two routes to the law agree")
{
    auto a = universal_fgl(W);
    auto b = fgl_from_log(W);
    CHECK(a.entries.size() == b.entries.size());
    for (const auto& [ij, e] : a.entries)
        CHECK(b.entry(ij.first, ij.second) == e);
}

TEST_CASE("formal group axioms")
{
    auto law = universal_fgl(5);
    int trunc = 11;
    auto table = VarTable::merge(VarTable::make({{"x", 1}, {"y", 1}, {"z", 1}}),
                                 law.coeff_table);
    auto x = GradedSeries::variable(table, trunc, "x");
    auto y = GradedSeries::variable(table, trunc, "y");
    auto z = GradedSeries::variable(table, trunc, "z");
    CHECK(fgl_sum(law, x, GradedSeries::zero(table, trunc)) == x);
    auto fxy = fgl_sum(law, x, y);
    CHECK(fxy == fgl_sum(law, y, x));
    auto lhs = fgl_sum(law, fxy, z);
    auto rhs = fgl_sum(law, x, fgl_sum(law, y, z));
    GradedSeries diff = lhs - rhs;
    for (const auto& [e, c] : diff.terms()) {
        int vdeg = e[*diff.table()->index_of("x")] + e[*diff.table()->index_of("y")] +
                   e[*diff.table()->index_of("z")];
        CHECK(vdeg > 5); // exact through total variable degree 5 here
    }
}

TEST_CASE("inverse series")
{
    auto law = universal_fgl(W);
    auto iota = inverse_series(law, "x", W);
    auto table = iota.table();
    auto x = GradedSeries::variable(table, W, "x");
    auto s1 = star_gen(1, W, W).with_table(table);
    // iota = -x + 2 s*_1 x^2 + O(x^3)
    CHECK(iota.coeff_of_power(*table->index_of("x"), 1) ==
          GradedSeries::constant(table, W, Rat(-1)));
    CHECK(iota.coeff_of_power(*table->index_of("x"), 2) == Rat(2) * s1);
    CHECK(fgl_sum(law, x, iota).is_zero());
    CHECK(substitute(iota, "x", iota).with_table(table) == x);
}

TEST_CASE("difference kernel")
{
    auto law = universal_fgl(W);
    auto dk = difference_kernel(law, W);
    auto table = dk.table();
    auto x = GradedSeries::variable(table, W, "x");
    auto y = GradedSeries::variable(table, W, "y");
    CHECK(dk.weight_part(1) == x - y);

    // multiplicative law: f(x, ybar) = (x - y)/(1 - a y)
    auto mult = multiplicative_fgl(W);
    auto dkm = difference_kernel(mult, W);
    auto mt = dkm.table();
    auto xm = GradedSeries::variable(mt, W, "x");
    auto ym = GradedSeries::variable(mt, W, "y");
    auto am = GradedSeries::variable(mt, W, "a");
    auto one = GradedSeries::constant(mt, W, Rat(1));
    CHECK(dkm == mul(xm - ym, invert_unit(one - mul(am, ym))));

    // diagonal vanishing
    auto iota = inverse_series(law, "x", W);
    CHECK(fgl_sum(law, GradedSeries::variable(iota.table(), W, "x"), iota).is_zero());
}

TEST_CASE("lambda lattice membership")
{
    auto law = universal_fgl(W);
    LambdaLattice lat(law, W);
    CHECK(lat.membership(law.entry(1, 1)).member);

    auto no = lat.membership(star_gen(1, W, W));
    CHECK(!no.member);
    CHECK(no.multiplier == 2);

    for (int k = 1; k <= 4; ++k) {
        Rat fact(1);
        for (int j = 2; j <= k + 1; ++j)
            fact *= j;
        CHECK(lat.membership(fact * star_gen(k, W, W)).member);
        CHECK(!lat.membership(star_gen(k, W, W)).member);
    }

    // full-rank sublattice per weight
    std::vector<long> p{1, 1, 2, 3, 5, 7, 11};
    for (int n = 1; n <= 6; ++n)
        CHECK(lat.rank(n) == p[n]);

    // YES certificates recombine to the element
    auto yes = lat.membership(Rat(2) * star_gen(1, W, W));
    CHECK(yes.member);
    CHECK(yes.certificate.size() == 1);
    CHECK(yes.certificate[0].first == "a11");

    auto d = Rat(3) * mul(law.entry(1, 1), law.entry(1, 1)) - Rat(2) * law.entry(1, 2);
    auto mem = lat.membership(d);
    REQUIRE(mem.member);
    GradedSeries recombined(star_table(W), W);
    for (const auto& [name, coef] : mem.certificate) {
        GradedSeries prod = star_one(W, W);
        std::istringstream factors(name);
        std::string f;
        while (std::getline(factors, f, '*')) {
            REQUIRE(f.size() == 3);
            prod = mul(prod, law.entry(f[1] - '0', f[2] - '0'));
        }
        recombined = recombined + Rat(coef) * prod;
    }
    CHECK(recombined == d);
}

TEST_CASE("cp classes")
{
    CHECK(cp_class(1, W) == Rat(-2) * star_gen(1, W, W));
    LambdaLattice lat(universal_fgl(W), W);
    for (int m = 1; m <= 5; ++m) {
        auto cp = cp_class(m, W);
        auto r = r_star(MultiIndex::single(m), cp);
        CHECK(r == GradedSeries::constant(cp.table(), cp.truncation(), Rat(-(m + 1))));
        CHECK(lat.membership(cp).member);
    }
    auto u = Rat(3) * mul(cp_class(1, W), cp_class(1, W)) - Rat(4) * cp_class(2, W);
    CHECK(r_star(MultiIndex::single(1), u).is_zero());
}

TEST_CASE("logarithm annihilation")
{
    auto lp = log_pair(4);
    auto carrier = make_milnor_carrier({"x"}, 4, 9);
    GradedSeries g = rename_variable(lp.log, "t", "x").with_table(carrier.table);
    for (const auto& w : basis_up_to(4)) {
        if (w.empty())
            continue;
        GradedSeries acted = act(w, g, carrier);
        CHECK(acted.truncate_to(static_cast<int>(9 - w.weight())).is_zero());
    }
}

TEST_CASE("symmetric reduction")
{
    auto law = universal_fgl(W);
    auto table = VarTable::merge(VarTable::make({{"x", 1}}), law.coeff_table);
    auto x = GradedSeries::variable(table, W, "x");
    auto iota = inverse_series(law, "x", W).with_table(table);

    auto taut = symmetric_reduction(mul(x, iota), law, "x");
    REQUIRE(taut.ok);
    REQUIRE(taut.coeffs.size() == 1);
    CHECK(taut.coeffs[0].first == 1);
    CHECK(taut.coeffs[0].second == GradedSeries::constant(table, W, Rat(1)));

    LambdaLattice lat(law, W);
    auto sym = symmetric_reduction(x + iota, law, "x");
    REQUIRE(sym.ok);
    bool nontrivial = false;
    for (const auto& [k, c] : sym.coeffs) {
        if (!c.is_zero()) {
            nontrivial = true;
            CHECK(lat.membership(c.with_table(star_table(W))).member);
        }
    }
    CHECK(nontrivial);

    auto fail = symmetric_reduction(x, law, "x");
    CHECK(!fail.ok);
    CHECK(fail.failed_power == 1);
}
