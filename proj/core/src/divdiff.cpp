#include "cobord/divdiff.hpp"

#include <algorithm>
#include <mutex>

namespace cobord {

namespace {

void enumerate_monomials(const Carrier& c, int max_weight, std::size_t from, Exponents& cur,
                         long weight, std::vector<Exponents>& out)
{
    if (from == c.test_vars.size()) {
        out.push_back(cur);
        return;
    }
    std::size_t v = c.test_vars[from];
    int vw = c.table->at(v).weight;
    for (int e = 0; weight + static_cast<long>(e) * vw <= max_weight; ++e) {
        cur[v] = e;
        enumerate_monomials(c, max_weight, from + 1, cur, weight + static_cast<long>(e) * vw, out);
    }
    cur[v] = 0;
}

GradedSeries swap_vars(const GradedSeries& s, std::size_t i, std::size_t j)
{
    GradedSeries out(s.table(), s.truncation());
    for (const auto& [e, c] : s.terms()) {
        Exponents r = e;
        std::swap(r[i], r[j]);
        out.add_term(r, c);
    }
    return out;
}

std::string describe(const GradedSeries& s, std::size_t max_terms = 4)
{
    std::string d = "[";
    std::size_t n = 0;
    for (const auto& [e, c] : s.terms()) {
        if (n++ == max_terms) {
            d += "...";
            break;
        }
        d += c.get_str() + "*(";
        for (std::size_t q = 0; q < e.size(); ++q)
            if (e[q])
                d += s.table()->at(q).name + "^" + std::to_string(e[q]) + " ";
        d += ") ";
    }
    return d + "]";
}

} // namespace

std::vector<GradedSeries> monomial_test_set(const Carrier& c, int max_weight)
{
    std::vector<Exponents> exps;
    Exponents cur(c.table->size(), 0);
    enumerate_monomials(c, max_weight, 0, cur, 0, exps);
    std::sort(exps.begin(), exps.end(), GradedLexLess{c.table});
    std::vector<GradedSeries> out;
    out.reserve(exps.size());
    for (const auto& e : exps)
        out.push_back(GradedSeries::monomial(c.table, c.truncation, e));
    return out;
}

bool nontrivial_on_test_set(const DivDiffOp& op, int max_weight)
{
    for (const auto& m : monomial_test_set(op.carrier, max_weight))
        if (!op.partial(m).is_zero())
            return true;
    return false;
}

CheckReport check_divdiff(const DivDiffOp& op, int max_weight)
{
    CheckReport rep{"product_identity", max_weight, true, ""};
    GradedSeries one = GradedSeries::constant(op.carrier.table, op.carrier.truncation, Rat(1));
    if (!op.partial(one).is_zero())
        return {"product_identity", max_weight, false, "partial(1) != 0"};
    auto mons = monomial_test_set(op.carrier, max_weight);
    std::vector<GradedSeries> dm;
    dm.reserve(mons.size());
    for (const auto& m : mons)
        dm.push_back(op.partial(m));
    for (std::size_t i = 0; i < mons.size(); ++i) {
        for (std::size_t j = 0; j < mons.size(); ++j) {
            GradedSeries lhs = op.partial(mul(mons[i], mons[j]));
            GradedSeries rhs = mul(dm[i], mons[j]) + mul(mons[i], dm[j]) -
                               mul(op.alpha, mul(dm[i], dm[j]));
            if (!(lhs == rhs)) {
                rep.pass = false;
                rep.detail = "failed on pair " + describe(mons[i]) + ", " + describe(mons[j]);
                return rep;
            }
        }
    }
    return rep;
}

CheckReport pi_multiplicativity(const DivDiffOp& op, int max_weight)
{
    CheckReport rep{"pi_multiplicative", max_weight, true, ""};
    auto mons = monomial_test_set(op.carrier, max_weight);
    std::vector<GradedSeries> pm;
    pm.reserve(mons.size());
    for (const auto& m : mons)
        pm.push_back(op.pi(m));
    for (std::size_t i = 0; i < mons.size() && rep.pass; ++i)
        for (std::size_t j = 0; j < mons.size(); ++j) {
            if (!(op.pi(mul(mons[i], mons[j])) == mul(pm[i], pm[j]))) {
                rep.pass = false;
                rep.detail = "failed on pair " + describe(mons[i]) + ", " + describe(mons[j]);
                break;
            }
        }
    // the two predicates are equivalent and must agree
    CheckReport identity = check_divdiff(op, max_weight);
    if (identity.pass != rep.pass)
        throw std::logic_error("pi_multiplicativity: equivalence with the product identity "
                               "violated for " +
                               op.name);
    return rep;
}

bool is_division(const DivDiffOp& op, int cross_check_weight)
{
    GradedSeries one = GradedSeries::constant(op.carrier.table, op.carrier.truncation, Rat(1));
    bool direct = op.partial(op.alpha) == one;
    bool composed = true;
    for (const auto& m : monomial_test_set(op.carrier, cross_check_weight)) {
        if (!(op.partial(mul(op.alpha, m)) == m)) {
            composed = false;
            break;
        }
    }
    if (direct != composed)
        throw std::logic_error("is_division: criteria disagree for " + op.name);
    return direct;
}

GammaReport gamma_predicates(const DivDiffOp& op, const GradedSeries& gamma, int max_weight)
{
    GammaReport rep;
    rep.applicable = true;
    auto mons = monomial_test_set(op.carrier, max_weight);
    for (const auto& m : mons) {
        GradedSeries d = op.partial(m);
        if (!(op.partial(d) == mul(gamma.with_table(op.carrier.table), d))) {
            rep.applicable = false;
            rep.detail = "partial^2 != gamma*partial on " + describe(m);
            return rep;
        }
    }
    GradedSeries one = GradedSeries::constant(op.carrier.table, op.carrier.truncation, Rat(1));
    GradedSeries g = gamma.with_table(op.carrier.table).truncate_to(op.carrier.truncation);
    GradedSeries lhs5 = mul(one - mul(op.alpha, g), op.partial(op.alpha));
    GradedSeries rhs5 = Rat(2) * one - mul(op.alpha, g);
    rep.alpha_scaling = lhs5 == rhs5;

    rep.pi_involution = true;
    for (const auto& m : mons)
        if (!(op.pi(op.pi(m)) == m)) {
            rep.pi_involution = false;
            rep.detail = "pi^2 != 1 on " + describe(m);
            break;
        }
    // pi(alpha) = -alpha/(1 - alpha gamma), cleared of the denominator
    rep.pi_alpha = mul(op.pi(op.alpha), one - mul(op.alpha, g)) == -op.alpha;
    return rep;
}

std::optional<GradedSeries> solve_gamma(const DivDiffOp& op, int max_weight)
{
    for (const auto& m : monomial_test_set(op.carrier, max_weight)) {
        GradedSeries d = op.partial(m);
        if (d.is_zero())
            continue;
        auto g = try_exact_div(op.partial(d), d);
        if (!g)
            return std::nullopt;
        GammaReport rep = gamma_predicates(op, *g, max_weight);
        if (!rep.applicable)
            return std::nullopt;
        return g;
    }
    return std::nullopt;
}

KernelReport kernel_division_equivalence(const OpFactory& factory, int max_weight,
                                         int internal_truncation)
{
    KernelReport rep;
    rep.weight = max_weight;
    if (internal_truncation < 0)
        internal_truncation = 2 * max_weight + 2;
    DivDiffOp big = factory(internal_truncation);
    rep.detail = "kernel computed at internal truncation " + std::to_string(internal_truncation);

    auto mons = monomial_test_set(big.carrier, max_weight);
    // assemble pi as a rational matrix over all exponent keys reached
    std::map<Exponents, std::size_t> row_index;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> sparse_cols;
    for (const auto& m : mons) {
        GradedSeries im = big.pi(m);
        std::vector<std::pair<std::size_t, Rat>> entries;
        for (const auto& [e, c] : im.terms()) {
            auto [it, fresh] = row_index.emplace(e, row_index.size());
            entries.emplace_back(it->second, c);
        }
        sparse_cols.push_back(std::move(entries));
    }
    std::size_t rows = row_index.size();
    std::vector<std::vector<Rat>> cols(sparse_cols.size(), std::vector<Rat>(rows, Rat(0)));
    for (std::size_t j = 0; j < sparse_cols.size(); ++j)
        for (auto& [r, c] : sparse_cols[j])
            cols[j][r] = c;

    // null space dimension via Gaussian elimination on the matrix whose
    // columns are pi(monomial)
    std::size_t rank = 0;
    std::vector<std::vector<Rat>> mat(rows, std::vector<Rat>(cols.size(), Rat(0)));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i)
            mat[i][j] = cols[j][i];
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols.size() && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && mat[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(mat[piv], mat[r]);
        Rat p = mat[r][c];
        for (auto& v : mat[r])
            v /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || mat[i][c] == 0)
                continue;
            Rat f = mat[i][c];
            for (std::size_t cc = 0; cc < cols.size(); ++cc)
                mat[i][cc] -= f * mat[r][cc];
        }
        ++rank;
        ++r;
    }
    rep.kernel_nontrivial = rank < cols.size();

    rep.division = is_division(big, std::min(max_weight, 4));
    rep.pi_projector = true;
    for (const auto& m : mons)
        if (!(big.pi(big.pi(m)) == big.pi(m))) {
            rep.pi_projector = false;
            break;
        }
    rep.equivalent =
        (rep.kernel_nontrivial == rep.division) && (rep.division == rep.pi_projector);
    return rep;
}

ComposeResult compose_divdiff(const DivDiffOp& op1, const DivDiffOp& op2, int max_weight)
{
    if (!op1.carrier.table->same_as(*op2.carrier.table) || !(op1.alpha == op2.alpha))
        throw SeriesError("compose_divdiff: operators must share carrier and alpha");
    ComposeResult out;
    GradedSeries alpha = op1.alpha;
    RingOp d1 = op1.partial, d2 = op2.partial;
    RingOp p1 = op1.pi, p2 = op2.pi;
    out.op.name = "compose(" + op1.name + "," + op2.name + ")";
    out.op.carrier = op1.carrier;
    out.op.alpha = alpha;
    out.op.pi = [p1, p2](const GradedSeries& u) { return p1(p2(u)); };
    out.op.partial = [d1, d2, alpha](const GradedSeries& u) {
        return d1(u) + d2(u) - d1(mul(alpha, d2(u)));
    };
    out.law_holds = true;
    for (const auto& m : monomial_test_set(op1.carrier, max_weight)) {
        GradedSeries lhs = m - mul(alpha, out.op.partial(m));
        if (!(lhs == out.op.pi(m))) {
            out.law_holds = false;
            out.witness = describe(m);
            break;
        }
    }
    return out;
}

bool ore_check(const RingOp& delta, const RingOp& phi, const Carrier& c, int max_weight)
{
    auto mons = monomial_test_set(c, max_weight);
    for (const auto& a : mons)
        for (const auto& b : mons) {
            GradedSeries lhs = delta(mul(a, b));
            GradedSeries rhs = mul(phi(a), delta(b)) + mul(delta(a), b);
            if (!(lhs == rhs))
                return false;
        }
    return true;
}

// -- catalogue ---------------------------------------------------------------

DivDiffOp translation_op(const GradedSeries& alpha, const GradedSeries& psi, int truncation)
{
    if (alpha.table()->size() != 1)
        throw SeriesError("translation_op: univariate carrier expected");
    std::string x = alpha.table()->at(0).name;
    if (alpha.constant_term() != 0)
        throw SeriesError("translation_op: alpha(0) must vanish");
    DivDiffOp op;
    op.name = "translation";
    op.carrier = {"K[[" + x + "]]", alpha.table(), truncation, {0}};
    op.alpha = alpha.truncate_to(truncation);
    GradedSeries a = op.alpha;
    GradedSeries p = psi.with_table(alpha.table()).truncate_to(truncation);
    GradedSeries xx = GradedSeries::variable(alpha.table(), truncation, x);
    GradedSeries image = xx - mul(a, p);

    // alpha = c x^v h with h(0) = 1
    int v = alpha.degree_in(0);
    for (const auto& [e, coef] : alpha.terms())
        v = std::min(v, e[0]);
    GradedSeries shifted = divide_by_power(op.alpha, x, v);
    Rat c0 = shifted.constant_term();
    GradedSeries hinv = invert_unit((Rat(1) / c0) * shifted);

    op.pi = [image, x](const GradedSeries& u) { return substitute(u, x, image); };
    op.partial = [op_pi = op.pi, x, v, c0, hinv](const GradedSeries& u) {
        GradedSeries num = u - op_pi(u);
        return (Rat(1) / c0) * mul(divide_by_power(num, x, v), hinv);
    };
    op.params = {{"psi", describe(psi)}};
    return op;
}

DivDiffOp evaluation_op(int truncation)
{
    auto table = VarTable::make({{"a", 1}});
    GradedSeries a = GradedSeries::variable(table, truncation, "a");
    GradedSeries one = GradedSeries::constant(table, truncation, Rat(1));
    DivDiffOp op = translation_op(a, one, truncation);
    op.name = "evaluation";
    op.params.clear();
    return op;
}

DivDiffOp newton_op(int truncation)
{
    auto table = VarTable::make({{"x", 1}, {"y", 1}});
    DivDiffOp op;
    op.name = "newton";
    op.carrier = {"K[[x,y]]", table, truncation, {0, 1}};
    op.alpha = GradedSeries::variable(table, truncation, "x") -
               GradedSeries::variable(table, truncation, "y");
    GradedSeries y = GradedSeries::variable(table, truncation, "y");
    op.pi = [](const GradedSeries& u) { return swap_vars(u, 0, 1); };
    op.partial = [y](const GradedSeries& u) {
        return divide_by_linear(u - swap_vars(u, 0, 1), "x", y);
    };
    return op;
}

DivDiffOp fgl_diff_op(const FglTable& law, int truncation)
{
    GradedSeries alpha = difference_kernel(law, truncation); // f(x, ybar) over x, y, coeffs
    auto table = alpha.table();
    std::size_t xi = *table->index_of("x");
    std::size_t yi = *table->index_of("y");
    GradedSeries y = GradedSeries::variable(table, truncation, "y");
    GradedSeries h = divide_by_linear(alpha, "x", y); // constant term 1
    GradedSeries hinv = invert_unit(h);

    DivDiffOp op;
    op.name = "fgl";
    op.carrier = {"K[[x,y]]", table, truncation, {xi, yi}};
    op.alpha = alpha;
    op.pi = [xi, yi](const GradedSeries& u) { return swap_vars(u, xi, yi); };
    op.partial = [xi, yi, y, hinv](const GradedSeries& u) {
        GradedSeries num = u - swap_vars(u, xi, yi);
        return mul(divide_by_linear(num, "x", y), hinv);
    };
    return op;
}

DivDiffOp reflection_op(const std::vector<Rat>& xi, bool involution, int truncation)
{
    int n = static_cast<int>(xi.size());
    if (n < 1)
        throw SeriesError("reflection_op: empty vector");
    std::vector<Variable> vars;
    for (int i = 1; i <= n; ++i)
        vars.push_back({"x" + std::to_string(i), 1});
    auto table = VarTable::make(vars);

    Rat norm(0);
    for (const auto& c : xi)
        norm += c * c;
    if (norm == 0)
        throw SeriesError("reflection_op: <xi, xi> must be nonzero");
    Rat scale = (involution ? Rat(2) : Rat(1)) / norm;

    GradedSeries ell(table, truncation);
    for (int i = 0; i < n; ++i) {
        Exponents e(n, 0);
        e[i] = 1;
        ell.add_term(e, xi[i]);
    }

    std::vector<std::pair<std::string, GradedSeries>> images;
    for (int i = 0; i < n; ++i) {
        GradedSeries im = GradedSeries::variable(table, truncation, vars[i].name) -
                          (scale * xi[i]) * ell;
        images.emplace_back(vars[i].name, im);
    }

    int pivot = 0;
    while (xi[pivot] == 0)
        ++pivot;
    GradedSeries z(table, truncation);
    for (int i = 0; i < n; ++i) {
        if (i == pivot)
            continue;
        Exponents e(n, 0);
        e[i] = 1;
        z.add_term(e, -xi[i] / xi[pivot]);
    }
    std::string pivot_name = vars[pivot].name;
    Rat pivot_coef = xi[pivot];

    DivDiffOp op;
    op.name = involution ? "reflection_ii" : "reflection_i";
    op.carrier = {"K[[x1..xn]]", table, truncation, {}};
    for (int i = 0; i < n; ++i)
        op.carrier.test_vars.push_back(i);
    op.alpha = ell;
    op.pi = [images, table, truncation](const GradedSeries& u) {
        return substitute_map(u, images, table, truncation);
    };
    op.partial = [op_pi = op.pi, pivot_name, pivot_coef, z](const GradedSeries& u) {
        GradedSeries num = u - op_pi(u);
        return (Rat(1) / pivot_coef) * divide_by_linear(num, pivot_name, z);
    };
    return op;
}

namespace {

DivDiffOp milnor_series_op(const std::string& name, int k_max, int truncation,
                           const DualElement& alpha, OperatorSeries pi_series,
                           OperatorSeries partial_series, long denom_base, int partial_drop)
{
    auto data = std::make_shared<MilnorOpData>();
    data->carrier = make_milnor_carrier({"x"}, k_max, truncation);
    data->pi_series = std::move(pi_series);
    data->partial_series = std::move(partial_series);

    // linear extension over cached per-monomial values
    auto cached_apply = [data](const OperatorSeries& series,
                               std::map<Exponents, GradedSeries>& cache, const GradedSeries& u) {
        GradedSeries out = GradedSeries::zero(data->carrier.table,
                                              std::min(data->carrier.truncation, u.truncation()));
        for (const auto& [e, c] : u.terms()) {
            {
                std::shared_lock lock(data->mutex);
                auto it = cache.find(e);
                if (it != cache.end()) {
                    out = out + c * it->second;
                    continue;
                }
            }
            GradedSeries value = act(series, GradedSeries::monomial(data->carrier.table,
                                                                    data->carrier.truncation, e),
                                     data->carrier);
            {
                std::unique_lock lock(data->mutex);
                cache.emplace(e, value);
            }
            out = out + c * value;
        }
        return out;
    };

    DivDiffOp op;
    op.name = name;
    op.carrier = {"Lambda'[[x]]", data->carrier.table, truncation, {}};
    for (std::size_t i = 0; i < data->carrier.table->size(); ++i)
        op.carrier.test_vars.push_back(i);
    op.alpha = data->carrier.embed(alpha);
    op.pi = [data, cached_apply](const GradedSeries& u) {
        return cached_apply(data->pi_series, data->pi_cache, u);
    };
    // partial moves weight from the coefficient into the variable slot and
    // can lower the total weight by up to `partial_drop`, so the result of
    // an input complete through T is only complete through T - drop
    op.partial = [data, cached_apply, partial_drop](const GradedSeries& u) {
        GradedSeries r = cached_apply(data->partial_series, data->partial_cache, u);
        return r.truncate_to(std::max(0, std::min(r.truncation(), u.truncation()) - partial_drop));
    };
    op.denom_base = denom_base;
    op.milnor = data;
    return op;
}

} // namespace

DivDiffOp localized_division_op(int n, long m, const DualElement& alpha,
                     const std::vector<DualElement>& a_params, int k_max, int truncation)
{
    if (m == 0)
        throw SeriesError("localized_division_op: m must be nonzero");
    GradedSeries check = r_star(MultiIndex::single(n), alpha);
    if (!(check == GradedSeries::constant(alpha.table(), alpha.truncation(), Rat(m))))
        throw SeriesError("localized_division_op: r_star(s_(n), alpha) != m");

    auto stars = star_table(k_max);
    // phi_{n} = -alpha/m, phi_{n+i} = -alpha * a_i
    std::vector<DualElement> phi(static_cast<std::size_t>(truncation),
                                 GradedSeries::zero(stars, truncation));
    GradedSeries al = alpha.with_table(stars).truncate_to(truncation);
    if (n <= truncation)
        phi[n - 1] = make_rat(-1, m) * al;
    for (std::size_t i = 0; i < a_params.size(); ++i) {
        int idx = n + static_cast<int>(i) + 1;
        if (idx > truncation)
            break;
        phi[idx - 1] = Rat(-1) * mul(al, a_params[i].with_table(stars).truncate_to(truncation));
    }
    OperatorSeries pi_series = operator_from_series(phi, k_max, truncation);

    // partial = sum psi_w s_w with psi_w = -phi_w / alpha in closed form
    OperatorSeries partial_series;
    partial_series.k_max = k_max;
    partial_series.truncation = truncation;
    for (const auto& w : basis_up_to(truncation)) {
        if (w.empty())
            continue;
        GradedSeries c = GradedSeries::constant(stars, truncation, Rat(1));
        bool zero = false;
        int l = w.length();
        for (int k : w.parts()) {
            if (k == n) {
                c = make_rat(1, m) * c;
            } else if (k > n && static_cast<std::size_t>(k - n) <= a_params.size()) {
                c = mul(c, a_params[k - n - 1].with_table(stars).truncate_to(truncation));
            } else {
                zero = true;
                break;
            }
        }
        if (zero || c.is_zero())
            continue;
        if (l % 2 == 0)
            c = Rat(-1) * c;
        for (int q = 0; q < l - 1; ++q)
            c = mul(c, al);
        if (!c.is_zero())
            partial_series.terms.emplace(w, c);
    }

    DivDiffOp op = milnor_series_op("localized_division", k_max, truncation, alpha, std::move(pi_series),
                                    std::move(partial_series), m, n);
    op.params = {{"n", std::to_string(n)}, {"m", std::to_string(m)}};
    return op;
}

DivDiffOp root_involution_op(int n, const DualElement& alpha, int k_max, int truncation)
{
    GradedSeries check = r_star(MultiIndex::single(n), alpha);
    if (!(check == GradedSeries::constant(alpha.table(), alpha.truncation(), Rat(2 * n))))
        throw SeriesError("root_involution_op: r_star(s_(n), alpha) != 2n");

    auto stars = star_table(k_max);
    GradedSeries al = alpha.with_table(stars).truncate_to(truncation);

    // binomial coefficients C(-1/n, j)
    std::vector<Rat> binom{Rat(1)};
    Rat inv_n = make_rat(-1, n);
    for (int j = 1; j * n <= truncation; ++j)
        binom.push_back(binom.back() * (inv_n - Rat(j - 1)) / Rat(j));

    // pi(x) = x (1 + alpha x^n)^{-1/n}: phi_{nj} = C(-1/n, j) alpha^j
    std::vector<DualElement> phi(static_cast<std::size_t>(truncation),
                                 GradedSeries::zero(stars, truncation));
    GradedSeries apow = GradedSeries::constant(stars, truncation, Rat(1));
    for (int j = 1; j * n <= truncation; ++j) {
        apow = mul(apow, al);
        phi[j * n - 1] = binom[j] * apow;
    }
    OperatorSeries pi_series = operator_from_series(phi, k_max, truncation);

    OperatorSeries partial_series;
    partial_series.k_max = k_max;
    partial_series.truncation = truncation;
    for (const auto& w : basis_up_to(truncation)) {
        if (w.empty())
            continue;
        Rat c(1);
        bool zero = false;
        int total_j = 0;
        for (int k : w.parts()) {
            if (k % n != 0) {
                zero = true;
                break;
            }
            int j = k / n;
            if (j >= static_cast<int>(binom.size())) {
                zero = true;
                break;
            }
            c *= binom[j];
            total_j += j;
        }
        if (zero || c == 0)
            continue;
        GradedSeries coef = (-c) * star_one(k_max, truncation);
        for (int q = 0; q < total_j - 1; ++q)
            coef = mul(coef, al);
        if (!coef.is_zero())
            partial_series.terms.emplace(w, coef);
    }

    DivDiffOp op = milnor_series_op("root_involution", k_max, truncation, alpha, std::move(pi_series),
                                    std::move(partial_series), n, n);
    op.params = {{"n", std::to_string(n)}};
    return op;
}

} // namespace cobord
