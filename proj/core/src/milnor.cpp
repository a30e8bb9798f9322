#include "cobord/milnor.hpp"

#include <mutex>
#include <shared_mutex>

namespace cobord {

MilnorCarrier make_milnor_carrier(const std::vector<std::string>& geom_names, int k_max,
                                  int truncation)
{
    std::vector<Variable> vars;
    for (const auto& n : geom_names)
        vars.push_back({n, 1});
    for (int k = 1; k <= k_max; ++k)
        vars.push_back({"s" + std::to_string(k), k});
    MilnorCarrier c;
    c.table = VarTable::make(std::move(vars));
    for (std::size_t i = 0; i < geom_names.size(); ++i)
        c.geom.push_back(i);
    c.k_max = k_max;
    c.truncation = truncation;
    return c;
}

namespace {

// split a term's exponents into (geometric exponents, star monomial)
void split_term(const MilnorCarrier& carrier, const Exponents& e, std::vector<int>& geom_exp,
                Exponents& star_exp)
{
    geom_exp.assign(carrier.geom.size(), 0);
    star_exp.assign(e.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
        star_exp[i] = e[i];
    for (std::size_t g = 0; g < carrier.geom.size(); ++g) {
        geom_exp[g] = e[carrier.geom[g]];
        star_exp[carrier.geom[g]] = 0;
    }
}

} // namespace

GradedSeries act(const MultiIndex& w, const GradedSeries& e, const MilnorCarrier& carrier)
{
    int out_trunc = std::min(carrier.truncation, e.truncation());
    GradedSeries out = GradedSeries::zero(carrier.table, out_trunc);
    int g = static_cast<int>(carrier.geom.size());
    std::vector<int> geom_exp;
    Exponents star_exp;
    for (const auto& [exp, c] : e.terms()) {
        split_term(carrier, exp, geom_exp, star_exp);
        MultiIndex coeff_mono = star_exponents_to_index(*carrier.table, star_exp);
        long term_weight = weight_of(*carrier.table, exp);
        for_each_decomposition(w, g + 1, [&](const std::vector<MultiIndex>& parts) {
            // parts[0] hits the coefficient, parts[1..g] the geometric slots
            const MultiIndex& w0 = parts[0];
            if (w0.weight() > coeff_mono.weight())
                return;
            // result term weight = term_weight - |w0| + |w minus w0|
            if (term_weight + w.weight() - 2 * w0.weight() > out_trunc)
                return;
            Rat coef = c;
            for (int i = 0; i < g; ++i) {
                if (parts[i + 1].empty())
                    continue;
                Rat n = injective_assignments(parts[i + 1], geom_exp[i]);
                if (n == 0)
                    return;
                coef *= n;
            }
            DualElement acted = r_star(w0, GradedSeries::monomial(carrier.table,
                                                                   carrier.truncation, star_exp));
            if (acted.is_zero())
                return;
            Exponents shift(carrier.table->size(), 0);
            for (int i = 0; i < g; ++i)
                shift[carrier.geom[i]] =
                    geom_exp[i] + static_cast<int>(parts[i + 1].weight());
            GradedSeries mono = GradedSeries::monomial(carrier.table, carrier.truncation, shift);
            out = out + coef * mul(acted, mono);
        });
    }
    return out;
}

GradedSeries act(const SElement& a, const GradedSeries& e, const MilnorCarrier& carrier)
{
    GradedSeries out = GradedSeries::zero(carrier.table,
                                          std::min(carrier.truncation, e.truncation()));
    for (const auto& [w, c] : a.terms())
        out = out + c * act(w, e, carrier);
    return out;
}

GradedSeries act(const OperatorSeries& op, const GradedSeries& e, const MilnorCarrier& carrier)
{
    GradedSeries out = GradedSeries::zero(carrier.table,
                                          std::min(carrier.truncation, e.truncation()));
    for (const auto& [w, lambda] : op.terms) {
        GradedSeries part = act(w, e, carrier);
        if (part.is_zero())
            continue;
        out = out + mul(carrier.embed(lambda), part);
    }
    return out;
}

DualElement act_dual(const OperatorSeries& op, const DualElement& d)
{
    DualElement out = GradedSeries::zero(d.table(), d.truncation());
    for (const auto& [w, lambda] : op.terms) {
        DualElement part = r_star(w, d);
        if (part.is_zero())
            continue;
        out = out + mul(lambda.with_table(d.table()).truncate_to(d.truncation()), part);
    }
    return out;
}

OperatorSeries operator_from_series(const std::vector<DualElement>& phi, int k_max,
                                    int truncation)
{
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (phi[i].is_zero())
            continue;
        if (phi[i].min_term_weight() != phi[i].max_term_weight() ||
            *phi[i].min_term_weight() != static_cast<long>(i + 1))
            throw HopfError("operator_from_series: phi_" + std::to_string(i + 1) +
                            " not homogeneous of weight " + std::to_string(i + 1));
    }
    OperatorSeries op;
    op.k_max = k_max;
    op.truncation = truncation;
    auto stars = star_table(k_max);
    for (const auto& w : basis_up_to(truncation)) {
        GradedSeries c = GradedSeries::constant(stars, truncation, Rat(1));
        bool zero = false;
        for (int k : w.parts()) {
            if (k > static_cast<int>(phi.size()) || phi[k - 1].is_zero()) {
                zero = true;
                break;
            }
            c = mul(c, phi[k - 1].with_table(stars).truncate_to(truncation));
        }
        if (zero || c.is_zero())
            continue;
        op.terms.emplace(w, c);
    }
    return op;
}

bool is_multiplicative_projector(const std::vector<DualElement>& phi, int k_max, int truncation)
{
    OperatorSeries op = operator_from_series(phi, k_max, truncation);
    for (const auto& p : phi) {
        if (p.is_zero())
            continue;
        if (!act_dual(op, p.with_table(star_table(k_max)).truncate_to(truncation)).is_zero())
            return false;
    }
    return true;
}

// -- one-dimensional representation ---------------------------------------

namespace {

std::shared_mutex pbw_mutex;
// weight -> per basis w, expansion of s_w over ordered products
// s_(mu_1)...s_(mu_l) (mu descending partitions of the weight)
std::map<int, std::map<MultiIndex, std::map<MultiIndex, Rat>>> pbw_cache;

const std::map<MultiIndex, std::map<MultiIndex, Rat>>& pbw_expansion(int n)
{
    {
        std::shared_lock lock(pbw_mutex);
        auto it = pbw_cache.find(n);
        if (it != pbw_cache.end())
            return it->second;
    }
    auto basis = partitions_of(n);
    std::size_t dim = basis.size();
    // rows: products P_mu expanded over the basis
    std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(dim, Rat(0)));
    for (std::size_t r = 0; r < dim; ++r) {
        SElement prod = SElement::one();
        for (int k : basis[r].parts())
            prod = multiply(prod, SElement::basis(MultiIndex::single(k)));
        for (const auto& [w, c] : prod.terms()) {
            auto it = std::find(basis.begin(), basis.end(), w);
            m[r][it - basis.begin()] = c;
        }
    }
    // invert: solve x * M = I, i.e. for each basis element find the
    // combination of products reproducing it (Gauss-Jordan on M^T)
    std::vector<std::vector<Rat>> aug(dim, std::vector<Rat>(2 * dim, Rat(0)));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j)
            aug[i][j] = m[j][i]; // transpose
        aug[i][dim + i] = 1;
    }
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        while (piv < dim && aug[piv][col] == 0)
            ++piv;
        if (piv == dim)
            throw HopfError("pbw_expansion: products do not span");
        std::swap(aug[piv], aug[col]);
        Rat p = aug[col][col];
        for (auto& v : aug[col])
            v /= p;
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == col || aug[r][col] == 0)
                continue;
            Rat f = aug[r][col];
            for (std::size_t c = 0; c < 2 * dim; ++c)
                aug[r][c] -= f * aug[col][c];
        }
    }
    std::map<MultiIndex, std::map<MultiIndex, Rat>> out;
    for (std::size_t i = 0; i < dim; ++i) {
        // the expansion of s_{w_i} over the products is the i-th column of
        // the inverse: M^T x = e_i
        std::map<MultiIndex, Rat> coeffs;
        for (std::size_t j = 0; j < dim; ++j)
            if (aug[j][dim + i] != 0)
                coeffs.emplace(basis[j], aug[j][dim + i]);
        out.emplace(basis[i], std::move(coeffs));
    }
    std::unique_lock lock(pbw_mutex);
    return pbw_cache.emplace(n, std::move(out)).first->second;
}

GradedSeries u_squared_ddu(const GradedSeries& p)
{
    std::size_t ui = *p.table()->index_of("u");
    GradedSeries out(p.table(), p.truncation());
    for (const auto& [e, c] : p.terms()) {
        if (e[ui] == 0)
            continue;
        Exponents r = e;
        r[ui] += 1;
        out.add_term(r, c * Rat(e[ui]));
    }
    return out;
}

} // namespace

Rat one_dim_rep_leading_coeff(const MultiIndex& w)
{
    if (w.empty())
        return Rat(1);
    int n = static_cast<int>(w.weight());
    const auto& exp = pbw_expansion(n).at(w);
    MultiIndex all_ones(std::vector<int>(n, 1));
    auto it = exp.find(all_ones);
    return it == exp.end() ? Rat(0) : it->second;
}

GradedSeries one_dim_rep(const SElement& a, const GradedSeries& p)
{
    GradedSeries out(p.table(), p.truncation());
    for (const auto& [w, c] : a.terms()) {
        // only the all-ones product survives: rho(s_(n)) = 0 for n >= 2
        Rat lead = one_dim_rep_leading_coeff(w);
        if (lead == 0)
            continue;
        GradedSeries img = p;
        for (long i = 0; i < w.weight(); ++i)
            img = u_squared_ddu(img);
        out = out + (c * lead) * img;
    }
    return out;
}

GradedSeries one_dim_rep_milnor_route(const MultiIndex& w, int u_power, int truncation)
{
    auto table = VarTable::make({{"u", 1}});
    if (u_power == 0)
        return w.empty() ? GradedSeries::constant(table, truncation, Rat(1))
                         : GradedSeries::zero(table, truncation);
    if (u_power == 1)
        return one_dim_rep(SElement::basis(w), GradedSeries::variable(table, truncation, "u"));
    GradedSeries out(table, truncation);
    for (const auto& sub : submultisets(w)) {
        GradedSeries left = one_dim_rep_milnor_route(sub, 1, truncation);
        if (left.is_zero())
            continue;
        GradedSeries right = one_dim_rep_milnor_route(w.minus(sub), u_power - 1, truncation);
        out = out + mul(left, right);
    }
    return out;
}

// -- stable products -------------------------------------------------------

GradedSeries stable_product_eval(const PhiSeries& phi, const GradedSeries& u,
                                 const GradedSeries& v, const MilnorCarrier& carrier)
{
    GradedSeries out = carrier.zero();
    for (const auto& [ij, lambda] : phi.terms) {
        GradedSeries su = act(ij.first, u, carrier);
        if (su.is_zero())
            continue;
        GradedSeries sv = act(ij.second, v, carrier);
        if (sv.is_zero())
            continue;
        out = out + mul(carrier.embed(lambda), mul(su, sv));
    }
    return out;
}

DualElement stable_product_eval_dual(const PhiSeries& phi, const DualElement& u,
                                     const DualElement& v)
{
    auto table = u.table();
    int trunc = std::min(u.truncation(), v.truncation());
    DualElement out = GradedSeries::zero(table, trunc);
    for (const auto& [ij, lambda] : phi.terms) {
        DualElement su = r_star(ij.first, u);
        if (su.is_zero())
            continue;
        DualElement sv = r_star(ij.second, v.with_table(table));
        if (sv.is_zero())
            continue;
        out = out + mul(lambda.with_table(table).truncate_to(trunc), mul(su, sv));
    }
    return out;
}

PhiSeries recover_phi(const ProductOracle& oracle, int max_weight, int k_max)
{
    const int W = max_weight;
    const int T = 2 * W; // products of two weight-W elements
    PhiSeries phi;
    phi.k_max = k_max;
    phi.truncation = W;

    auto probe = [&](const MultiIndex& w) { return star_monomial(w, k_max, T); };

    // induction on (n + m, n), recovering lambda_{ab} at (|a|, |b|) = (n, m)
    for (int total = 0; total <= 2 * W; ++total) {
        for (int n = std::max(0, total - W); n <= std::min(W, total); ++n) {
            int m = total - n;
            for (const auto& wa : partitions_of(n)) {
                for (const auto& wb : partitions_of(m)) {
                    DualElement val = oracle(probe(wa), probe(wb));
                    if (!val.is_zero() &&
                        (val.min_term_weight() != val.max_term_weight() ||
                         *val.min_term_weight() != total))
                        throw RecoverError("oracle value not homogeneous of the expected weight",
                                           total);
                    DualElement rest = stable_product_eval_dual(phi, probe(wa), probe(wb));
                    DualElement lambda = val - rest;
                    if (total == 0 && lambda.is_zero())
                        throw RecoverError("degenerate product: 1 o 1 = 0 admits no unital "
                                           "Phi-series",
                                           0);
                    if (!lambda.is_zero())
                        phi.terms.emplace(std::make_pair(wa, wb), lambda.truncate_to(T));
                }
            }
        }
    }
    // validation sweep: the recovered series must reproduce the oracle
    for (int total = 0; total <= 2 * W; ++total)
        for (int n = std::max(0, total - W); n <= std::min(W, total); ++n)
            for (const auto& wa : partitions_of(n))
                for (const auto& wb : partitions_of(total - n)) {
                    DualElement lhs = stable_product_eval_dual(phi, probe(wa), probe(wb));
                    if (!(lhs == oracle(probe(wa), probe(wb))))
                        throw RecoverError("oracle is not of Phi-series form", total);
                }
    return phi;
}

} // namespace cobord
