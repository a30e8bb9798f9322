#include "cobord/products.hpp"

namespace cobord {

namespace {

std::string show(const GradedSeries& s)
{
    if (s.is_zero())
        return "0";
    std::string d;
    for (const auto& [e, c] : s.terms()) {
        if (!d.empty())
            d += " + ";
        bool any = false;
        std::string mono;
        for (std::size_t q = 0; q < e.size(); ++q) {
            if (!e[q])
                continue;
            any = true;
            mono += s.table()->at(q).name;
            if (e[q] > 1)
                mono += "^" + std::to_string(e[q]);
        }
        if (c != 1 || !any)
            d += c.get_str() + (any ? "*" : "");
        d += mono;
    }
    return d;
}

} // namespace

AssocReport associativity_check(const ProductStructure& mu, int max_total_weight)
{
    AssocReport rep;
    rep.weight = max_total_weight;
    auto mons = monomial_test_set(mu.carrier, max_total_weight);
    for (const auto& x : mons) {
        long wx = x.max_term_weight();
        for (const auto& y : mons) {
            long wy = y.max_term_weight();
            if (wx + wy > max_total_weight)
                continue;
            for (const auto& z : mons) {
                if (wx + wy + z.max_term_weight() > max_total_weight)
                    continue;
                GradedSeries lhs = mu.eval(mu.eval(x, y), z);
                GradedSeries rhs = mu.eval(x, mu.eval(y, z));
                if (!(lhs == rhs)) {
                    rep.associative = false;
                    rep.has_witness = true;
                    rep.witness = "(" + show(x) + ", " + show(y) + ", " + show(z) + ")";
                    return rep;
                }
            }
        }
    }
    return rep;
}

CommReport commutativity_check(const ProductStructure& mu, int max_total_weight)
{
    CommReport rep;
    auto mons = monomial_test_set(mu.carrier, max_total_weight);
    for (const auto& x : mons) {
        for (const auto& y : mons) {
            if (x.max_term_weight() + y.max_term_weight() > max_total_weight)
                continue;
            if (!(mu.eval(x, y) == mu.eval(y, x))) {
                rep.commutative = false;
                rep.witness = "(" + show(x) + ", " + show(y) + ")";
                return rep;
            }
        }
    }
    return rep;
}

ProductStructure mu1(const DivDiffOp& op1, const DivDiffOp& op2)
{
    if (!op1.carrier.table->same_as(*op2.carrier.table))
        throw SeriesError("mu1: operators must share a carrier");
    ProductStructure mu;
    mu.name = "mu1(" + op1.name + "," + op2.name + ")";
    mu.carrier = op1.carrier;
    auto p1 = op1.pi, p2 = op2.pi;
    mu.eval = [p1, p2](const GradedSeries& x, const GradedSeries& y) {
        return mul(p1(x), p2(y));
    };
    return mu;
}

bool expanded_form_matches(const DivDiffOp& op1, const DivDiffOp& op2, int max_weight)
{
    auto mons = monomial_test_set(op1.carrier, max_weight);
    for (const auto& x : mons)
        for (const auto& y : mons) {
            GradedSeries lhs = mul(op1.pi(x), op2.pi(y));
            GradedSeries rhs = mul(x, y) - mul(op1.alpha, mul(op1.partial(x), y)) -
                               mul(op2.alpha, mul(op2.partial(y), x)) +
                               mul(mul(op1.alpha, op2.alpha),
                                   mul(op1.partial(x), op2.partial(y)));
            if (!(lhs == rhs))
                return false;
        }
    return true;
}

ProjectorProductReport projector_product_certificate(const DivDiffOp& op1, const DivDiffOp& op2, int max_weight)
{
    ProjectorProductReport rep;
    rep.division1 = is_division(op1);
    rep.division2 = is_division(op2);
    rep.commute = true;
    auto mons = monomial_test_set(op1.carrier, max_weight);
    for (const auto& m : mons)
        if (!(op1.pi(op2.pi(m)) == op2.pi(op1.pi(m)))) {
            rep.commute = false;
            break;
        }
    ProductStructure mu = mu1(op1, op2);
    AssocReport assoc = associativity_check(mu, max_weight);
    rep.associative = assoc.associative;
    rep.assoc_witness = assoc.witness;
    rep.commutative = commutativity_check(mu, max_weight).commutative;
    rep.pis_equal = true;
    for (const auto& m : mons)
        if (!(op1.pi(m) == op2.pi(m))) {
            rep.pis_equal = false;
            break;
        }
    rep.biconditional_ok = rep.associative == (rep.division1 && rep.division2 && rep.commute);
    rep.commutativity_iff = rep.commutative == rep.pis_equal;
    return rep;
}

ProductStructure mu2(const DivDiffOp& op, const GradedSeries& beta)
{
    ProductStructure mu;
    mu.name = "mu2(" + op.name + ")";
    mu.carrier = op.carrier;
    auto d = op.partial;
    GradedSeries b = beta.with_table(op.carrier.table).truncate_to(op.carrier.truncation);
    mu.eval = [d, b](const GradedSeries& x, const GradedSeries& y) {
        return mul(x, y) + mul(b, mul(d(x), d(y)));
    };
    return mu;
}

DeformationReport deformation_certificate(const DivDiffOp& op, const GradedSeries& beta,
                                    int max_weight)
{
    DeformationReport rep;
    rep.division = is_division(op);
    GradedSeries b = beta.with_table(op.carrier.table).truncate_to(op.carrier.truncation);
    rep.pi_beta_zero = op.pi(b).is_zero();
    rep.cross_condition = true;
    auto mons = monomial_test_set(op.carrier, max_weight);
    for (const auto& x : mons) {
        GradedSeries dx = op.partial(x), d2x = op.partial(op.partial(x));
        for (const auto& y : mons) {
            GradedSeries dy = op.partial(y), d2y = op.partial(op.partial(y));
            if (!(mul(d2x, dy) == mul(dx, d2y))) {
                rep.cross_condition = false;
                break;
            }
        }
        if (!rep.cross_condition)
            break;
    }
    if (rep.division && rep.pi_beta_zero)
        rep.branch = 1;
    else if (!rep.division && rep.cross_condition)
        rep.branch = 2;
    AssocReport assoc = associativity_check(mu2(op, beta), max_weight);
    rep.associative = assoc.associative;
    rep.witness = assoc.witness;
    return rep;
}

ProductStructure mu3(const LinOp& Pi, const Carrier& carrier)
{
    ProductStructure mu;
    mu.name = "mu3";
    mu.carrier = carrier;
    mu.eval = [Pi](const GradedSeries& x, const GradedSeries& y) {
        return Pi(mul(Pi(x), Pi(y)));
    };
    return mu;
}

ProjectorPairReport projector_pair_hypotheses(const LinOp& Pi, const LinOp& delta,
                                   const GradedSeries& alpha, const GradedSeries& beta,
                                   const Carrier& c, int max_weight)
{
    ProjectorPairReport rep;
    auto mons = monomial_test_set(c, max_weight);
    rep.proj = true;
    rep.delta_pi = true;
    for (const auto& m : mons) {
        GradedSeries pm = Pi(m);
        if (!(Pi(pm) == pm)) {
            rep.proj = false;
            rep.detail = "Pi^2 != Pi on " + show(m);
            break;
        }
        if (!(delta(pm) == delta(m))) {
            rep.delta_pi = false;
            rep.detail = "delta Pi != delta on " + show(m);
            break;
        }
    }
    GradedSeries a = alpha.with_table(c.table).truncate_to(c.truncation);
    GradedSeries b = beta.with_table(c.table).truncate_to(c.truncation);
    rep.cond2 = true;
    rep.cond3 = true;
    for (const auto& x : mons) {
        GradedSeries px = Pi(x), dx = delta(x);
        for (const auto& y : mons) {
            GradedSeries py = Pi(y), dy = delta(y);
            GradedSeries pp = mul(px, py);
            GradedSeries dd = mul(dx, dy);
            if (rep.cond2 && !(delta(pp) == mul(dx, py) + mul(px, dy) - mul(a, dd))) {
                rep.cond2 = false;
                rep.detail = "condition (2) fails on (" + show(x) + ", " + show(y) + ")";
            }
            if (rep.cond3 && !(Pi(pp) == pp + mul(b, dd))) {
                rep.cond3 = false;
                rep.detail = "condition (3) fails on (" + show(x) + ", " + show(y) + ")";
            }
            if (!rep.cond2 && !rep.cond3)
                break;
        }
        if (!rep.cond2 && !rep.cond3)
            break;
    }
    return rep;
}

namespace {

SolveResult solve_ratio(const Carrier& c, int max_weight,
                        const std::function<GradedSeries(const GradedSeries&,
                                                         const GradedSeries&)>& numerator,
                        const std::function<GradedSeries(const GradedSeries&,
                                                         const GradedSeries&)>& denominator)
{
    SolveResult out;
    auto mons = monomial_test_set(c, max_weight);
    std::optional<GradedSeries> candidate;
    for (const auto& x : mons) {
        for (const auto& y : mons) {
            GradedSeries den = denominator(x, y);
            if (den.is_zero())
                continue;
            auto q = try_exact_div(numerator(x, y), den);
            if (!q) {
                out.detail = "numerator not divisible on (" + show(x) + ", " + show(y) + ")";
                return out;
            }
            candidate = *q;
            break;
        }
        if (candidate)
            break;
    }
    if (!candidate) {
        // denominator vanishes identically: any value works iff numerators do
        for (const auto& x : mons)
            for (const auto& y : mons)
                if (!numerator(x, y).is_zero()) {
                    out.detail = "denominator vanishes but numerator does not on (" + show(x) +
                                 ", " + show(y) + ")";
                    return out;
                }
        out.ok = true;
        out.value = GradedSeries::zero(c.table, c.truncation);
        out.detail = "unconstrained (denominator vanishes on the test set); 0 by convention";
        return out;
    }
    for (const auto& x : mons)
        for (const auto& y : mons) {
            if (!(numerator(x, y) == mul(*candidate, denominator(x, y)))) {
                out.detail = "no consistent value: mismatch on (" + show(x) + ", " + show(y) + ")";
                return out;
            }
        }
    out.ok = true;
    out.value = *candidate;
    return out;
}

} // namespace

SolveResult solve_beta(const LinOp& Pi, const LinOp& delta, const Carrier& c, int max_weight)
{
    return solve_ratio(
        c, max_weight,
        [&](const GradedSeries& x, const GradedSeries& y) {
            GradedSeries pp = mul(Pi(x), Pi(y));
            return Pi(pp) - pp;
        },
        [&](const GradedSeries& x, const GradedSeries& y) { return mul(delta(x), delta(y)); });
}

SolveResult solve_alpha(const LinOp& Pi, const LinOp& delta, const Carrier& c, int max_weight)
{
    return solve_ratio(
        c, max_weight,
        [&](const GradedSeries& x, const GradedSeries& y) {
            GradedSeries pp = mul(Pi(x), Pi(y));
            return mul(delta(x), Pi(y)) + mul(Pi(x), delta(y)) - delta(pp);
        },
        [&](const GradedSeries& x, const GradedSeries& y) { return mul(delta(x), delta(y)); });
}

ConnerFloydModel conner_floyd_model(int line_factors, int max_weight)
{
    ConnerFloydModel model;
    const int W = max_weight;
    std::vector<std::string> names;
    for (int i = 1; i <= line_factors; ++i)
        names.push_back("x" + std::to_string(i));
    model.milnor = make_milnor_carrier(names, W, W);
    model.carrier.name = "conner_floyd";
    model.carrier.table = model.milnor.table;
    model.carrier.truncation = W;
    model.carrier.test_vars = model.milnor.geom;

    FglTable law = universal_fgl(W);
    GradedSeries iota = inverse_series(law, "v", W);

    auto carrier = model.milnor;
    // ebar and the Pi-multiplier per geometric exponent pattern
    auto cache = std::make_shared<std::map<std::vector<int>, std::pair<GradedSeries, GradedSeries>>>();
    auto data = [law, iota, carrier, cache](const std::vector<int>& pattern) {
        auto it = cache->find(pattern);
        if (it != cache->end())
            return it->second;
        GradedSeries c = carrier.zero();
        for (std::size_t g = 0; g < pattern.size(); ++g)
            for (int rep = 0; rep < pattern[g]; ++rep)
                c = fgl_sum(law, c, carrier.var(carrier.table->at(carrier.geom[g]).name));
        GradedSeries ebar = c.is_zero() ? carrier.zero() : substitute(iota, "v", c);
        GradedSeries mult = carrier.one();
        GradedSeries epow = mul(ebar, ebar);
        for (int i = 2; i <= carrier.truncation; ++i) {
            mult = mult + mul(carrier.embed(law.entry(i, 1)), epow);
            epow = mul(epow, ebar);
        }
        auto value = std::make_pair(ebar, mult);
        cache->emplace(pattern, value);
        return value;
    };

    model.delta = [carrier, data](const GradedSeries& u) {
        GradedSeries out = carrier.zero();
        for (const auto& [e, coef] : u.terms()) {
            std::vector<int> pattern;
            for (std::size_t g : carrier.geom)
                pattern.push_back(e[g]);
            GradedSeries term = GradedSeries::monomial(carrier.table, carrier.truncation, e, coef);
            out = out + mul(term, data(pattern).first);
        }
        return out;
    };
    model.Pi = [carrier, data](const GradedSeries& u) {
        GradedSeries out = carrier.zero();
        for (const auto& [e, coef] : u.terms()) {
            std::vector<int> pattern;
            for (std::size_t g : carrier.geom)
                pattern.push_back(e[g]);
            GradedSeries term = GradedSeries::monomial(carrier.table, carrier.truncation, e, coef);
            out = out + mul(term, data(pattern).second);
        }
        return out;
    };
    return model;
}

} // namespace cobord
