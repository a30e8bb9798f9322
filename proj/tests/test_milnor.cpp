#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobord/divdiff.hpp"
#include "cobord/formal_group.hpp"
#include "cobord/milnor.hpp"

using namespace cobord;

namespace {

MultiIndex mi(std::initializer_list<int> parts)
{
    return MultiIndex(std::vector<int>(parts));
}

} // namespace

TEST_CASE("module action")
{
    auto carrier = make_milnor_carrier({"x"}, 6, 8);
    auto x = carrier.var("x");
    for (int n = 1; n <= 4; ++n)
        CHECK(act(mi({n}), x, carrier) == pow(x, n + 1));

    // act(s_(1), s*_1 x) = x + s*_1 x^2: the coproduct splits over the
    // coefficient (r_star) and the geometric factor
    auto s1 = carrier.embed(star_gen(1, 6, 8));
    auto lhs = act(mi({1}), mul(s1, x), carrier);
    CHECK(lhs == x + mul(s1, mul(x, x)));

    CHECK(act(mi({2}), carrier.one(), carrier).is_zero());
    CHECK(act(mi({1, 1}), carrier.one(), carrier).is_zero());
}

TEST_CASE("act respects the product of S")
{
    auto carrier = make_milnor_carrier({"x"}, 4, 9);
    auto e = mul(carrier.embed(star_gen(1, 4, 9)), pow(carrier.var("x"), 2));
    for (const auto& a : basis_up_to(4))
        for (const auto& b : basis_up_to(4)) {
            if (a.weight() + b.weight() > 4)
                continue;
            SElement prod = multiply(SElement::basis(a), SElement::basis(b));
            CHECK(act(prod, e, carrier) == act(a, act(b, e, carrier), carrier));
        }
}

TEST_CASE("multiplicative operator series")
{
    const int K = 6, T = 8;
    auto carrier = make_milnor_carrier({"x1", "x2"}, K, T);
    std::vector<DualElement> zero_phis(4, GradedSeries::zero(star_table(K), T));
    auto ident = operator_from_series(zero_phis, K, T);
    auto e = mul(carrier.var("x1"), carrier.embed(star_gen(2, K, T)));
    CHECK(act(ident, e, carrier) == e);

    // phi_1 = s*_1, rest 0: multiplicative on monomial pairs
    std::vector<DualElement> phis = zero_phis;
    phis[0] = star_gen(1, K, T);
    auto op = operator_from_series(phis, K, T);
    auto x1 = carrier.var("x1");
    auto x2 = carrier.var("x2");
    for (const auto& u : {x1, pow(x1, 2), mul(x1, x2), mul(carrier.embed(star_gen(1, K, T)), x2)})
        for (const auto& v : {x1, x2, pow(x2, 2)})
            CHECK(act(op, mul(u, v), carrier) ==
                  mul(act(op, u, carrier), act(op, v, carrier)));

    // defining property on a geometric variable
    GradedSeries expect = x1;
    for (std::size_t i = 0; i < phis.size(); ++i)
        expect = expect + mul(carrier.embed(phis[i]), pow(x1, static_cast<int>(i) + 2));
    CHECK(act(op, x1, carrier) == expect);

    CHECK_THROWS_AS(operator_from_series({star_gen(2, K, T)}, K, T), HopfError);
}

TEST_CASE("multiplicative projector criterion")
{
    const int K = 6, T = 6;
    std::vector<DualElement> zero_phis(3, GradedSeries::zero(star_table(K), T));
    CHECK(is_multiplicative_projector(zero_phis, K, T));

    // phi_1 = -alpha with r_star(s_(1), alpha) = 1 gives pi(alpha) = 0;
    // here alpha = s*_1
    std::vector<DualElement> proj = zero_phis;
    proj[0] = Rat(-1) * star_gen(1, K, T);
    CHECK(is_multiplicative_projector(proj, K, T));

    // phi_1 = s*_1 is not: phi(s*_1) = s*_1 + s*_1 != 0
    std::vector<DualElement> bad = zero_phis;
    bad[0] = star_gen(1, K, T);
    CHECK(!is_multiplicative_projector(bad, K, T));

    // a series passing the criterion acts idempotently on the module
    auto carrier = make_milnor_carrier({"x"}, K, T);
    auto op = operator_from_series(proj, K, T);
    Carrier tc{"module", carrier.table, T, {}};
    for (std::size_t i = 0; i < carrier.table->size(); ++i)
        tc.test_vars.push_back(i);
    for (const auto& e : monomial_test_set(tc, 6))
        CHECK(act(op, act(op, e, carrier), carrier) == act(op, e, carrier));
}

TEST_CASE("operator series are multiplicative on all monomial pairs")
{
    const int K = 5, T = 10;
    auto carrier = make_milnor_carrier({"x"}, K, T);
    std::vector<DualElement> phis(3, GradedSeries::zero(star_table(K), T));
    phis[0] = star_gen(1, K, T);
    phis[1] = Rat(-2) * star_gen(2, K, T) + mul(star_gen(1, K, T), star_gen(1, K, T));
    auto op = operator_from_series(phis, K, T);
    Carrier tc{"module", carrier.table, T, {}};
    for (std::size_t i = 0; i < carrier.table->size(); ++i)
        tc.test_vars.push_back(i);
    auto mons = monomial_test_set(tc, 5);
    for (const auto& u : mons)
        for (const auto& v : mons)
            CHECK(act(op, mul(u, v), carrier) ==
                  mul(act(op, u, carrier), act(op, v, carrier)));
}

TEST_CASE("one-dimensional representation")
{
    auto table = VarTable::make({{"u", 1}});
    const int T = 10;
    auto u = GradedSeries::variable(table, T, "u");
    CHECK(one_dim_rep(SElement::basis(mi({1})), u) == pow(u, 2));
    CHECK(one_dim_rep(SElement::basis(mi({2})), u).is_zero());
    // from s_(1)^2 = 2 s_(2) + 2 s_(1,1): s_(1,1)(u) = u^3
    CHECK(one_dim_rep(SElement::basis(mi({1, 1})), u) == pow(u, 3));

    // module rule s_w(pq) = sum s_{w'}(p) s_{w''}(q) for weight <= 4
    for (const auto& w : basis_up_to(4))
        for (int p = 1; p <= 2; ++p)
            for (int q = 1; q <= 2; ++q) {
                GradedSeries up = pow(u, p), uq = pow(u, q);
                GradedSeries lhs = one_dim_rep(SElement::basis(w), mul(up, uq));
                GradedSeries rhs(table, T);
                for (const auto& [pair, c] : coproduct(w))
                    rhs = rhs + c * mul(one_dim_rep(SElement::basis(pair.first), up),
                                        one_dim_rep(SElement::basis(pair.second), uq));
                CHECK(lhs == rhs);
            }

    // operator route vs Milnor-rule route
    for (const auto& w : basis_up_to(4))
        for (int k = 1; k <= 4; ++k)
            CHECK(one_dim_rep(SElement::basis(w), pow(u, k)) ==
                  one_dim_rep_milnor_route(w, k, T));
}

TEST_CASE("stable product evaluation")
{
    const int K = 6, T = 6;
    auto carrier = make_milnor_carrier({"x"}, K, T);
    PhiSeries ordinary;
    ordinary.k_max = K;
    ordinary.truncation = 0;
    ordinary.terms.emplace(std::make_pair(MultiIndex{}, MultiIndex{}), star_one(K, T));

    auto u = mul(carrier.var("x"), carrier.embed(star_gen(1, K, T)));
    auto v = pow(carrier.var("x"), 2) + carrier.embed(star_gen(2, K, T));
    CHECK(stable_product_eval(ordinary, u, v, carrier) == mul(u, v));

    // Phi = pi (x) pi for a projector series evaluates to pi(u) pi(v)
    std::vector<DualElement> proj(3, GradedSeries::zero(star_table(K), T));
    proj[0] = Rat(-1) * star_gen(1, K, T);
    auto op = operator_from_series(proj, K, T);
    PhiSeries phi;
    phi.k_max = K;
    phi.truncation = T;
    for (const auto& [wi, li] : op.terms)
        for (const auto& [wj, lj] : op.terms) {
            auto prod = mul(li, lj);
            if (!prod.is_zero())
                phi.terms.emplace(std::make_pair(wi, wj), prod);
        }
    CHECK(stable_product_eval(phi, u, v, carrier) ==
          mul(act(op, u, carrier), act(op, v, carrier)));

    // bilinearity
    auto w2 = carrier.var("x") + carrier.embed(star_gen(1, K, T));
    CHECK(stable_product_eval(phi, u + w2, v, carrier) ==
          stable_product_eval(phi, u, v, carrier) + stable_product_eval(phi, w2, v, carrier));
}

TEST_CASE("phi recovery")
{
    const int W = 4, K = 8;
    ProductOracle ordinary = [](const DualElement& a, const DualElement& b) {
        return mul(a, b);
    };
    PhiSeries rec = recover_phi(ordinary, W, K);
    REQUIRE(rec.terms.size() == 1);
    CHECK(rec.terms.begin()->first.first.empty());
    CHECK(rec.terms.begin()->first.second.empty());
    CHECK(rec.terms.begin()->second == star_one(K, 2 * W));

    // round trip through a projector-twisted product
    std::vector<DualElement> proj(3, GradedSeries::zero(star_table(K), 2 * W));
    proj[0] = Rat(-1) * star_gen(1, K, 2 * W);
    auto op = operator_from_series(proj, K, 2 * W);
    PhiSeries phi;
    phi.k_max = K;
    phi.truncation = W;
    for (const auto& [wi, li] : op.terms)
        for (const auto& [wj, lj] : op.terms) {
            if (wi.weight() > W || wj.weight() > W)
                continue;
            auto prod = mul(li, lj);
            if (!prod.is_zero())
                phi.terms.emplace(std::make_pair(wi, wj), prod);
        }
    ProductOracle oracle = [&phi](const DualElement& a, const DualElement& b) {
        return stable_product_eval_dual(phi, a, b);
    };
    PhiSeries back = recover_phi(oracle, W, K);
    CHECK(back.terms.size() == phi.terms.size());
    for (const auto& [ij, lambda] : phi.terms) {
        auto it = back.terms.find(ij);
        REQUIRE(it != back.terms.end());
        CHECK(it->second == lambda);
    }

    // the zero oracle admits no Phi series: 1 o 1 = 0 is rejected at weight 0
    ProductOracle zero = [K](const DualElement&, const DualElement&) {
        return GradedSeries::zero(star_table(K), 2);
    };
    CHECK_THROWS_AS(recover_phi(zero, 1, K), RecoverError);
    try {
        recover_phi(zero, 1, K);
    } catch (const RecoverError& e) {
        CHECK(e.failing_weight == 0);
    }
}
