#include "cobord/hopf.hpp"

#include <functional>
#include <mutex>
#include <shared_mutex>

namespace cobord {

SElement SElement::basis(const MultiIndex& w)
{
    SElement e;
    e.terms_.emplace(w, Rat(1));
    return e;
}

Rat SElement::coeff(const MultiIndex& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Rat(0) : it->second;
}

SElement& SElement::add(const MultiIndex& w, const Rat& c)
{
    if (c == 0)
        return *this;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
    return *this;
}

SElement SElement::operator-() const
{
    SElement out;
    for (const auto& [w, c] : terms_)
        out.terms_.emplace(w, -c);
    return out;
}

SElement operator+(const SElement& a, const SElement& b)
{
    SElement out = a;
    for (const auto& [w, c] : b.terms_)
        out.add(w, c);
    return out;
}

SElement operator-(const SElement& a, const SElement& b)
{
    SElement out = a;
    for (const auto& [w, c] : b.terms_)
        out.add(w, -c);
    return out;
}

SElement operator*(const Rat& c, const SElement& a)
{
    SElement out;
    if (c == 0)
        return out;
    for (const auto& [w, k] : a.terms_)
        out.add(w, c * k);
    return out;
}

TensorSquare coproduct(const MultiIndex& w)
{
    TensorSquare out;
    for (const auto& sub : submultisets(w))
        out[{sub, w.minus(sub)}] = Rat(1);
    return out;
}

TensorSquare coproduct(const SElement& a)
{
    TensorSquare out;
    for (const auto& [w, c] : a.terms()) {
        for (const auto& sub : submultisets(w)) {
            auto key = std::make_pair(sub, w.minus(sub));
            auto [it, inserted] = out.emplace(key, c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0)
                    out.erase(it);
            }
        }
    }
    return out;
}

Rat counit(const SElement& a)
{
    return a.coeff(MultiIndex{});
}

VarTablePtr geometric_table(int n)
{
    std::vector<Variable> vars;
    vars.reserve(n);
    for (int i = 1; i <= n; ++i)
        vars.push_back({"x" + std::to_string(i), 1});
    return VarTable::make(std::move(vars));
}

Rat injective_assignments(const MultiIndex& w, int slots)
{
    int l = w.length();
    if (l > slots)
        return Rat(0);
    // slots! / ((slots - l)! * prod multiplicities!)
    Int num = 1;
    for (int i = 0; i < l; ++i)
        num *= slots - i;
    Int den = 1;
    for (auto [k, m] : w.multiplicities())
        for (int j = 2; j <= m; ++j)
            den *= j;
    Rat out{num, den};
    out.canonicalize();
    return out;
}

// Enumerate ordered decompositions of w into `slots` labeled submultisets,
// invoking f once per decomposition.
void for_each_decomposition(const MultiIndex& w, int slots,
                            const std::function<void(const std::vector<MultiIndex>&)>& f)
{
    auto mult = w.multiplicities();
    std::vector<std::vector<int>> assigned(slots);
    std::function<void(std::size_t)> rec_value = [&](std::size_t vi) {
        if (vi == mult.size()) {
            std::vector<MultiIndex> parts;
            parts.reserve(slots);
            for (auto& a : assigned)
                parts.emplace_back(a);
            f(parts);
            return;
        }
        auto [value, m] = mult[vi];
        // distribute m copies of `value` over `slots` labeled boxes
        std::function<void(int, int)> rec_box = [&](int box, int remaining) {
            if (box == slots - 1) {
                for (int j = 0; j < remaining; ++j)
                    assigned[box].push_back(value);
                rec_value(vi + 1);
                for (int j = 0; j < remaining; ++j)
                    assigned[box].pop_back();
                return;
            }
            for (int take = 0; take <= remaining; ++take) {
                for (int j = 0; j < take; ++j)
                    assigned[box].push_back(value);
                rec_box(box + 1, remaining - take);
                for (int j = 0; j < take; ++j)
                    assigned[box].pop_back();
            }
        };
        rec_box(0, m);
    };
    rec_value(0);
}

GradedSeries act_geometric(const MultiIndex& w, const VarTablePtr& table, const Exponents& mono,
                           int truncation)
{
    if (mono.size() != table->size())
        throw HopfError("act_geometric: exponent vector length mismatch");
    int g = static_cast<int>(table->size());
    GradedSeries out(table, truncation);
    for_each_decomposition(w, g, [&](const std::vector<MultiIndex>& parts) {
        Rat coef(1);
        Exponents e = mono;
        for (int i = 0; i < g; ++i) {
            if (parts[i].empty())
                continue;
            Rat n = injective_assignments(parts[i], mono[i]);
            if (n == 0)
                return;
            coef *= n;
            e[i] += static_cast<int>(parts[i].weight());
        }
        out.add_term(e, coef);
    });
    return out;
}

GradedSeries act_geometric(const SElement& a, const VarTablePtr& table, const Exponents& mono,
                           int truncation)
{
    GradedSeries out(table, truncation);
    for (const auto& [w, c] : a.terms())
        out = out + c * act_geometric(w, table, mono, truncation);
    return out;
}

GradedSeries act_geometric(const SElement& a, const GradedSeries& poly)
{
    GradedSeries out(poly.table(), poly.truncation());
    for (const auto& [e, c] : poly.terms())
        out = out + c * act_geometric(a, poly.table(), e, poly.truncation());
    return out;
}

namespace {

std::shared_mutex product_cache_mutex;
std::map<std::pair<MultiIndex, MultiIndex>, SElement> product_cache;

SElement multiply_basis_uncached(const MultiIndex& a, const MultiIndex& b)
{
    int n_vars = a.length() + b.length();
    if (n_vars == 0)
        return SElement::one();
    auto table = geometric_table(n_vars);
    int trunc = n_vars + static_cast<int>(a.weight() + b.weight());
    Exponents ones(n_vars, 1);

    GradedSeries inner = act_geometric(b, table, ones, trunc);
    GradedSeries composed = act_geometric(SElement::basis(a), inner);

    // decompose over distinguished monomials x_1^{k_1+1}...x_l^{k_l+1} x_{l+1}...x_N
    SElement result;
    GradedSeries residual = composed;
    for (const auto& w : partitions_of(static_cast<int>(a.weight() + b.weight()))) {
        if (w.length() > n_vars)
            continue;
        Exponents dist = ones;
        for (int i = 0; i < w.length(); ++i)
            dist[i] += w.parts()[i];
        Rat c = composed.coeff(dist);
        if (c == 0)
            continue;
        result.add(w, c);
        residual = residual - c * act_geometric(w, table, ones, trunc);
    }
    if (!residual.is_zero())
        throw HopfError("multiply: nonzero decomposition residual for " + a.str() + "*" + b.str());
    return result;
}

} // namespace

SElement multiply_basis(const MultiIndex& a, const MultiIndex& b)
{
    if (a.empty())
        return SElement::basis(b);
    if (b.empty())
        return SElement::basis(a);
    auto key = std::make_pair(a, b);
    {
        std::shared_lock lock(product_cache_mutex);
        auto it = product_cache.find(key);
        if (it != product_cache.end())
            return it->second;
    }
    SElement r = multiply_basis_uncached(a, b);
    std::unique_lock lock(product_cache_mutex);
    product_cache.emplace(std::move(key), r);
    return r;
}

SElement multiply(const SElement& a, const SElement& b)
{
    SElement out;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms())
            out = out + (ca * cb) * multiply_basis(wa, wb);
    return out;
}

VarTablePtr star_table(int k_max)
{
    std::vector<Variable> vars;
    vars.reserve(k_max);
    for (int k = 1; k <= k_max; ++k)
        vars.push_back({"s" + std::to_string(k), k});
    return VarTable::make(std::move(vars));
}

GradedSeries star_one(int k_max, int truncation)
{
    return GradedSeries::constant(star_table(k_max), truncation, Rat(1));
}

GradedSeries star_gen(int k, int k_max, int truncation)
{
    if (k < 1 || k > k_max)
        throw HopfError("star_gen: index out of range");
    return GradedSeries::variable(star_table(k_max), truncation, "s" + std::to_string(k));
}

GradedSeries star_monomial(const MultiIndex& w, int k_max, int truncation)
{
    auto table = star_table(k_max);
    Exponents e(table->size(), 0);
    for (auto [k, m] : w.multiplicities()) {
        if (k > k_max)
            throw HopfError("star_monomial: part exceeds k_max");
        e[k - 1] = m;
    }
    return GradedSeries::monomial(table, truncation, e);
}

MultiIndex star_exponents_to_index(const VarTable& table, const Exponents& exp)
{
    std::vector<int> parts;
    for (std::size_t i = 0; i < exp.size(); ++i) {
        if (exp[i] == 0)
            continue;
        int k = table.at(i).weight;
        if (table.at(i).name != "s" + std::to_string(k))
            throw HopfError("star_exponents_to_index: '" + table.at(i).name +
                            "' is not a star generator");
        for (int j = 0; j < exp[i]; ++j)
            parts.push_back(k);
    }
    return MultiIndex(std::move(parts));
}

Rat pairing(const MultiIndex& mono, const MultiIndex& w)
{
    // iterated coproduct: peel one singleton factor at a time
    if (mono.empty())
        return w.empty() ? Rat(1) : Rat(0);
    int k = mono.parts().front();
    if (!w.contains(MultiIndex::single(k)))
        return Rat(0);
    return pairing(mono.minus(MultiIndex::single(k)), w.minus(MultiIndex::single(k)));
}

Rat pairing(const DualElement& p, const SElement& a)
{
    Rat out(0);
    for (const auto& [e, c] : p.terms()) {
        MultiIndex mono = star_exponents_to_index(*p.table(), e);
        for (const auto& [w, d] : a.terms())
            out += c * d * pairing(mono, w);
    }
    return out;
}

bool dual_basis_check(int max_weight)
{
    auto basis = basis_up_to(max_weight);
    for (const auto& mono : basis)
        for (const auto& w : basis) {
            Rat expected = (mono == w) ? Rat(1) : Rat(0);
            if (pairing(mono, w) != expected)
                return false;
        }
    return true;
}

namespace {

std::shared_mutex gamma_mutex;
// k_max -> ((k, n) -> gamma_{n,k} as a star polynomial), where gamma_{n,k}
// is the t^{n+1} coefficient of gamma(t)^{k+1}
std::map<int, std::map<std::pair<int, int>, std::map<MultiIndex, Rat>>> gamma_cache;

const std::map<std::pair<int, int>, std::map<MultiIndex, Rat>>& gamma_coeffs(int k_max)
{
    {
        std::shared_lock lock(gamma_mutex);
        auto it = gamma_cache.find(k_max);
        if (it != gamma_cache.end())
            return it->second;
    }
    std::vector<Variable> vars{{"t", 1}};
    for (int k = 1; k <= k_max; ++k)
        vars.push_back({"s" + std::to_string(k), k});
    auto table = VarTable::make(vars);
    int trunc = 2 * k_max + 1;
    GradedSeries gamma = GradedSeries::variable(table, trunc, "t");
    for (int k = 1; k <= k_max; ++k) {
        Exponents e(table->size(), 0);
        e[0] = k + 1;
        e[k] = 1;
        gamma = gamma + GradedSeries::monomial(table, trunc, e);
    }
    std::map<std::pair<int, int>, std::map<MultiIndex, Rat>> out;
    GradedSeries power = gamma;
    for (int k = 1; k <= k_max; ++k) {
        power = mul(power, gamma); // gamma^{k+1}
        for (int n = k; n <= k_max; ++n) {
            std::map<MultiIndex, Rat> coeff;
            for (const auto& [e, c] : power.terms()) {
                if (e[0] != n + 1)
                    continue;
                Exponents stars(e.begin() + 1, e.end());
                std::vector<int> parts;
                for (std::size_t q = 0; q < stars.size(); ++q)
                    for (int r = 0; r < stars[q]; ++r)
                        parts.push_back(static_cast<int>(q) + 1);
                coeff.emplace(MultiIndex(std::move(parts)), c);
            }
            out.emplace(std::make_pair(k, n), std::move(coeff));
        }
    }
    std::unique_lock lock(gamma_mutex);
    return gamma_cache.emplace(k_max, std::move(out)).first->second;
}

std::shared_mutex rstar_cache_mutex;
// (a, monomial multiset) -> coefficients over star monomials w'
std::map<std::pair<MultiIndex, MultiIndex>, std::map<MultiIndex, Rat>> rstar_cache;

// distribute the parts of `a` over the generator factors of `mono`:
// each factor absorbs at most one part (longer indices kill generators),
// a factor of value n hit by part k contributes gamma_{n,k}
std::map<MultiIndex, Rat> r_star_mono_uncached(const MultiIndex& a, const MultiIndex& mono)
{
    std::map<MultiIndex, Rat> out;
    long target = mono.weight() - a.weight();
    if (target < 0)
        return out;
    int k_needed = 0;
    for (auto [n, mu] : mono.multiplicities())
        k_needed = std::max(k_needed, n);
    k_needed = std::max(k_needed, 1);
    const auto& gamma = gamma_coeffs(k_needed);

    auto factor_groups = mono.multiplicities(); // (value n, multiplicity mu)
    // assignment state: accumulate polynomial product over groups
    std::map<MultiIndex, Rat> acc;
    acc.emplace(MultiIndex{}, Rat(1));

    std::function<void(std::size_t, const MultiIndex&, const std::map<MultiIndex, Rat>&, Rat)>
        rec = [&](std::size_t gi, const MultiIndex& remaining,
                  const std::map<MultiIndex, Rat>& poly, Rat count) {
            if (gi == factor_groups.size()) {
                if (!remaining.empty())
                    return;
                for (const auto& [w, c] : poly) {
                    auto [it, fresh] = out.emplace(w, count * c);
                    if (!fresh) {
                        it->second += count * c;
                        if (it->second == 0)
                            out.erase(it);
                    }
                }
                return;
            }
            auto [n, mu] = factor_groups[gi];
            for (const auto& sub : submultisets(remaining)) {
                if (sub.length() > mu)
                    continue;
                bool fits = true;
                for (int k : sub.parts())
                    if (k > n) {
                        fits = false;
                        break;
                    }
                if (!fits)
                    continue;
                Rat ways = injective_assignments(sub, mu);
                if (ways == 0)
                    continue;
                // product of gamma_{n,k} over chosen parts, times the
                // surviving factors (s*_n)^{mu - length}
                std::map<MultiIndex, Rat> next = poly;
                bool dead = false;
                for (int k : sub.parts()) {
                    const auto& g = gamma.at({k, n});
                    std::map<MultiIndex, Rat> prod;
                    for (const auto& [w1, c1] : next)
                        for (const auto& [w2, c2] : g) {
                            Rat c = c1 * c2;
                            auto [it, fresh] = prod.emplace(w1.plus(w2), c);
                            if (!fresh) {
                                it->second += c;
                                if (it->second == 0)
                                    prod.erase(it);
                            }
                        }
                    next = std::move(prod);
                    if (next.empty()) {
                        dead = true;
                        break;
                    }
                }
                if (dead)
                    continue;
                int survivors = mu - sub.length();
                if (survivors > 0) {
                    MultiIndex extra(std::vector<int>(survivors, n));
                    std::map<MultiIndex, Rat> shifted;
                    for (const auto& [w1, c1] : next)
                        shifted.emplace(w1.plus(extra), c1);
                    next = std::move(shifted);
                }
                rec(gi + 1, remaining.minus(sub), next, count * ways);
            }
        };
    rec(0, a, acc, Rat(1));
    return out;
}

const std::map<MultiIndex, Rat>& r_star_mono(const MultiIndex& a, const MultiIndex& mono)
{
    auto key = std::make_pair(a, mono);
    {
        std::shared_lock lock(rstar_cache_mutex);
        auto it = rstar_cache.find(key);
        if (it != rstar_cache.end())
            return it->second;
    }
    auto out = r_star_mono_uncached(a, mono);
    std::unique_lock lock(rstar_cache_mutex);
    return rstar_cache.emplace(std::move(key), std::move(out)).first->second;
}

} // namespace

namespace {

Exponents star_monomial_exponents(const VarTablePtr& table, const MultiIndex& wp)
{
    Exponents r(table->size(), 0);
    for (auto [v, m] : wp.multiplicities()) {
        auto idx = table->index_of("s" + std::to_string(v));
        if (!idx)
            throw HopfError("r_star: table lacks star generator s" + std::to_string(v));
        r[*idx] = m;
    }
    return r;
}

} // namespace

DualElement r_star(const MultiIndex& a, const DualElement& u)
{
    GradedSeries out(u.table(), u.truncation());
    if (a.empty())
        return u;
    for (const auto& [e, c] : u.terms()) {
        MultiIndex mono = star_exponents_to_index(*u.table(), e);
        for (const auto& [wp, k] : r_star_mono(a, mono))
            out.add_term(star_monomial_exponents(u.table(), wp), c * k);
    }
    return out;
}

DualElement r_star_definitional(const MultiIndex& a, const DualElement& u)
{
    GradedSeries out(u.table(), u.truncation());
    if (a.empty())
        return u;
    for (const auto& [e, c] : u.terms()) {
        MultiIndex mono = star_exponents_to_index(*u.table(), e);
        long target = mono.weight() - a.weight();
        if (target < 0)
            continue;
        for (const auto& wp : partitions_of(static_cast<int>(target))) {
            Rat k = multiply_basis(wp, a).coeff(mono); // <u, s_{w'} a>
            if (k == 0)
                continue;
            out.add_term(star_monomial_exponents(u.table(), wp), c * k);
        }
    }
    return out;
}

DualElement r_star(const SElement& a, const DualElement& u)
{
    GradedSeries out(u.table(), u.truncation());
    for (const auto& [w, c] : a.terms())
        out = out + c * r_star(w, u);
    return out;
}

} // namespace cobord
