#include "cobord/formal_group.hpp"

namespace cobord {

GradedSeries FglTable::entry(int i, int j) const
{
    if (i > j)
        std::swap(i, j);
    auto it = entries.find({i, j});
    if (it != entries.end())
        return it->second;
    return GradedSeries::zero(coeff_table, truncation);
}

namespace {

// Extract alpha_ij for 1 <= i <= j, i+j <= W+1 from a series f over
// {v1, v2} + coefficient variables, asserting weight homogeneity
// (each coefficient of v1^i v2^j must be homogeneous of weight i+j-1).
std::map<std::pair<int, int>, GradedSeries> extract_entries(const GradedSeries& f,
                                                            const std::string& v1,
                                                            const std::string& v2,
                                                            const VarTablePtr& coeff_table, int W)
{
    std::map<std::pair<int, int>, GradedSeries> out;
    auto i1 = f.table()->index_of(v1);
    auto i2 = f.table()->index_of(v2);
    if (!i1 || !i2)
        throw SeriesError("extract_entries: missing variables");
    auto slice = [&](int i, int j) {
        GradedSeries c(coeff_table, W);
        for (const auto& [e, k] : f.terms()) {
            if (e[*i1] != i || e[*i2] != j)
                continue;
            Exponents r(f.table()->size(), 0);
            for (std::size_t q = 0; q < e.size(); ++q)
                if (q != *i1 && q != *i2)
                    r[q] = e[q];
            if (weight_of(*f.table(), r) != i + j - 1)
                throw SeriesError("formal group coefficient not weight-homogeneous");
            GradedSeries mono = GradedSeries::monomial(f.table(), W, r, k);
            c = c + mono.with_table(coeff_table);
        }
        return c;
    };
    for (int i = 1; i <= W; ++i) {
        for (int j = i; i + j <= W + 1; ++j) {
            GradedSeries c = slice(i, j);
            // only the i <= j half is stored; the transposed slice of the
            // computed series must agree
            if (i != j && !(slice(j, i) == c))
                throw SeriesError("formal group series is not symmetric");
            out.emplace(std::make_pair(i, j), c);
        }
    }
    return out;
}

} // namespace

FglTable universal_fgl(int max_weight)
{
    if (max_weight < 1)
        throw SeriesError("universal_fgl: max_weight must be >= 1");
    const int W = max_weight;
    const int T = 2 * W + 1; // combined weight of alpha_ij y1^i y2^j, i+j = W+1

    // phi_t(y) = y + sum t_k y^{k+1} over y, t_1..t_W
    std::vector<Variable> vars{{"y", 1}};
    for (int k = 1; k <= W; ++k)
        vars.push_back({"t" + std::to_string(k), k});
    auto t_table = VarTable::make(vars);
    GradedSeries phi = GradedSeries::variable(t_table, T, "y");
    for (int k = 1; k <= W; ++k) {
        Exponents e(t_table->size(), 0);
        e[0] = k + 1;
        e[k] = 1;
        phi = phi + GradedSeries::monomial(t_table, T, e);
    }
    GradedSeries psi = revert(phi, "y");

    // work over y1, y2, t_1..t_W
    std::vector<Variable> vars2{{"y1", 1}, {"y2", 1}};
    for (int k = 1; k <= W; ++k)
        vars2.push_back({"t" + std::to_string(k), k});
    auto table2 = VarTable::make(vars2);
    GradedSeries psi1 = substitute(rename_variable(psi, "y", "y1"), "y1",
                                   GradedSeries::variable(table2, T, "y1"));
    GradedSeries psi2 = substitute(rename_variable(psi, "y", "y2"), "y2",
                                   GradedSeries::variable(table2, T, "y2"));
    GradedSeries f = substitute(phi, "y", psi1 + psi2);

    // transport t-monomials to star monomials via the dual-basis identity
    auto stars = star_table(W);
    FglTable out{stars, W, {}};
    auto raw = extract_entries(f, "y1", "y2", t_table, W); // coefficients in t-variables
    for (auto& [ij, c] : raw) {
        GradedSeries alpha(stars, W);
        for (const auto& [e, k] : c.terms()) {
            // e is an exponent vector over t_table: skip the y-slot (index 0)
            Exponents r(stars->size(), 0);
            for (std::size_t q = 1; q < e.size(); ++q)
                r[q - 1] = e[q];
            alpha.add_term(r, k);
        }
        out.entries.emplace(ij, alpha);
    }
    return out;
}

LogPair log_pair(int max_weight)
{
    if (max_weight < 1)
        throw SeriesError("log_pair: max_weight must be >= 1");
    const int W = max_weight;
    const int T = 2 * W + 1;
    std::vector<Variable> vars{{"t", 1}};
    for (int k = 1; k <= W; ++k)
        vars.push_back({"s" + std::to_string(k), k});
    auto table = VarTable::make(vars);
    GradedSeries exp = GradedSeries::variable(table, T, "t");
    for (int k = 1; k <= W; ++k) {
        Exponents e(table->size(), 0);
        e[0] = k + 1;
        e[k] = 1;
        exp = exp + GradedSeries::monomial(table, T, e);
    }
    GradedSeries log = revert(exp, "t");
    return {exp, log};
}

FglTable fgl_from_log(int max_weight)
{
    const int W = max_weight;
    const int T = 2 * W + 1;
    auto lp = log_pair(W);

    std::vector<Variable> vars{{"y1", 1}, {"y2", 1}};
    for (int k = 1; k <= W; ++k)
        vars.push_back({"s" + std::to_string(k), k});
    auto table2 = VarTable::make(vars);
    GradedSeries log1 = substitute(rename_variable(lp.log, "t", "y1"), "y1",
                                   GradedSeries::variable(table2, T, "y1"));
    GradedSeries log2 = substitute(rename_variable(lp.log, "t", "y2"), "y2",
                                   GradedSeries::variable(table2, T, "y2"));
    GradedSeries f = substitute(lp.exp, "t", log1 + log2);

    auto stars = star_table(W);
    FglTable out{stars, W, {}};
    auto raw = extract_entries(f, "y1", "y2", stars, W);
    for (auto& [ij, c] : raw)
        out.entries.emplace(ij, c);
    return out;
}

FglTable multiplicative_fgl(int max_weight)
{
    auto coeffs = VarTable::make({{"a", 1}});
    FglTable out{coeffs, max_weight, {}};
    out.entries.emplace(std::make_pair(1, 1),
                        Rat(-1) * GradedSeries::variable(coeffs, max_weight, "a"));
    return out;
}

FglTable additive_fgl(int max_weight)
{
    return FglTable{VarTable::make({}), max_weight, {}};
}

GradedSeries fgl_series(const FglTable& t, const std::string& x1, const std::string& x2,
                        const VarTablePtr& target, int truncation)
{
    auto i1 = target->index_of(x1);
    auto i2 = target->index_of(x2);
    if (!i1 || !i2)
        throw SeriesError("fgl_series: target lacks the series variables");
    GradedSeries f = GradedSeries::variable(target, truncation, x1) +
                     GradedSeries::variable(target, truncation, x2);
    for (const auto& [ij, alpha] : t.entries) {
        auto [i, j] = ij;
        auto add_term = [&](int p, int q) {
            Exponents e(target->size(), 0);
            e[*i1] = p;
            e[*i2] = q;
            f = f + mul(alpha.with_table(target).truncate_to(truncation),
                        GradedSeries::monomial(target, truncation, e));
        };
        add_term(i, j);
        if (i != j)
            add_term(j, i);
    }
    return f;
}

GradedSeries fgl_sum(const FglTable& t, const GradedSeries& u, const GradedSeries& v)
{
    if (u.constant_term() != 0 || v.constant_term() != 0)
        throw SeriesError("fgl_sum: arguments must have zero constant term");
    int trunc = std::min(u.truncation(), v.truncation());
    auto target = VarTable::merge(VarTable::merge(u.table(), v.table()), t.coeff_table);
    // placeholder variables for the law
    auto ph = VarTable::merge(VarTable::make({{"zz1", 1}, {"zz2", 1}}), t.coeff_table);
    GradedSeries f = fgl_series(t, "zz1", "zz2", ph, trunc);
    return substitute_map(f, {{"zz1", u.with_table(target)}, {"zz2", v.with_table(target)}},
                          target, trunc);
}

GradedSeries inverse_series(const FglTable& t, const std::string& var, int truncation)
{
    auto table = VarTable::merge(VarTable::make({{var, 1}}), t.coeff_table);
    std::size_t xi = *table->index_of(var);
    GradedSeries x = GradedSeries::variable(table, truncation, var);
    GradedSeries iota = -x;
    for (int d = 2; d <= truncation; ++d) {
        GradedSeries err = fgl_sum(t, x, iota);
        GradedSeries cd = err.coeff_of_power(xi, d);
        if (cd.is_zero())
            continue;
        Exponents e(table->size(), 0);
        e[xi] = d;
        iota = iota - mul(cd, GradedSeries::monomial(table, truncation, e));
    }
    return iota;
}

GradedSeries difference_kernel(const FglTable& t, int truncation)
{
    GradedSeries iota = inverse_series(t, "y", truncation);
    auto target = VarTable::merge(VarTable::make({{"x", 1}, {"y", 1}}), t.coeff_table);
    GradedSeries x = GradedSeries::variable(target, truncation, "x");
    return fgl_sum(t, x, iota.with_table(target));
}

DualElement cp_class(int m, int k_max)
{
    if (m < 1 || m > k_max)
        throw SeriesError("cp_class: need 1 <= m <= k_max");
    auto lp = log_pair(k_max);
    std::size_t ti = *lp.log.table()->index_of("t");
    GradedSeries c = lp.log.coeff_of_power(ti, m + 1);
    return Rat(m + 1) * c.with_table(star_table(k_max)).truncate_to(k_max);
}

SymmetricReduction symmetric_reduction(const GradedSeries& p, const FglTable& t,
                                       const std::string& var)
{
    SymmetricReduction out;
    auto table = VarTable::merge(p.table(), t.coeff_table);
    int trunc = p.truncation();
    std::size_t xi = *table->index_of(var);
    GradedSeries x = GradedSeries::variable(table, trunc, var);
    GradedSeries u = mul(x, inverse_series(t, var, trunc).with_table(table));

    GradedSeries rem = p.with_table(table);
    std::vector<GradedSeries> u_pow{GradedSeries::constant(table, trunc, Rat(1))};
    while (!rem.is_zero()) {
        int d = -1;
        for (const auto& [e, c] : rem.terms())
            if (d < 0 || e[xi] < d)
                d = e[xi];
        if (d % 2 != 0) {
            out.failed_power = d;
            return out;
        }
        int k = d / 2;
        while (static_cast<int>(u_pow.size()) <= k)
            u_pow.push_back(mul(u_pow.back(), u));
        Rat sign = (k % 2 == 0) ? Rat(1) : Rat(-1);
        GradedSeries ck = sign * rem.coeff_of_power(xi, d);
        out.coeffs.emplace_back(k, ck);
        rem = rem - mul(ck, u_pow[k]);
        // the subtraction strictly raises the valuation in var
    }
    out.ok = true;
    return out;
}

} // namespace cobord
