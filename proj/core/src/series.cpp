#include "cobord/series.hpp"

#include <algorithm>
#include <set>

namespace cobord {

VarTable::VarTable(std::vector<Variable> vars) : vars_(std::move(vars))
{
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.weight < 1)
            throw SeriesError("variable '" + v.name + "' must have weight >= 1");
        if (!seen.insert(v.name).second)
            throw SeriesError("duplicate variable '" + v.name + "'");
    }
}

std::optional<std::size_t> VarTable::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name)
            return i;
    return std::nullopt;
}

bool VarTable::same_as(const VarTable& other) const
{
    if (vars_.size() != other.vars_.size())
        return false;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name != other.vars_[i].name || vars_[i].weight != other.vars_[i].weight)
            return false;
    return true;
}

VarTablePtr VarTable::make(std::vector<Variable> vars)
{
    return std::make_shared<const VarTable>(std::move(vars));
}

VarTablePtr VarTable::merge(const VarTablePtr& a, const VarTablePtr& b)
{
    if (a->same_as(*b))
        return a;
    std::vector<Variable> merged = a->vars();
    for (const auto& v : b->vars()) {
        auto idx = a->index_of(v.name);
        if (idx) {
            if (a->at(*idx).weight != v.weight)
                throw SeriesError("variable-weight mismatch for '" + v.name + "'");
        } else {
            merged.push_back(v);
        }
    }
    return make(std::move(merged));
}

long weight_of(const VarTable& table, const Exponents& exp)
{
    long w = 0;
    for (std::size_t i = 0; i < exp.size(); ++i)
        w += static_cast<long>(exp[i]) * table.at(i).weight;
    return w;
}

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const
{
    long wa = weight_of(*table, a);
    long wb = weight_of(*table, b);
    if (wa != wb)
        return wa < wb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

GradedSeries::GradedSeries(VarTablePtr table, int truncation)
    : table_(std::move(table)), trunc_(truncation), terms_(GradedLexLess{table_})
{
    if (trunc_ < 0)
        throw SeriesError("negative truncation");
}

GradedSeries GradedSeries::zero(VarTablePtr table, int truncation)
{
    return GradedSeries(std::move(table), truncation);
}

GradedSeries GradedSeries::constant(VarTablePtr table, int truncation, const Rat& c)
{
    GradedSeries s(std::move(table), truncation);
    s.add_term(Exponents(s.table_->size(), 0), c);
    return s;
}

GradedSeries GradedSeries::monomial(VarTablePtr table, int truncation, const Exponents& exp,
                                    const Rat& c)
{
    GradedSeries s(std::move(table), truncation);
    if (exp.size() != s.table_->size())
        throw SeriesError("exponent vector length mismatch");
    s.add_term(exp, c);
    return s;
}

GradedSeries GradedSeries::variable(VarTablePtr table, int truncation, const std::string& name)
{
    auto idx = table->index_of(name);
    if (!idx)
        throw SeriesError("unknown variable '" + name + "'");
    Exponents e(table->size(), 0);
    e[*idx] = 1;
    return monomial(std::move(table), truncation, e);
}

Rat GradedSeries::coeff(const Exponents& exp) const
{
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rat(0) : it->second;
}

Rat GradedSeries::constant_term() const
{
    return coeff(Exponents(table_->size(), 0));
}

long GradedSeries::max_term_weight() const
{
    long w = 0;
    for (const auto& [e, c] : terms_)
        w = std::max(w, weight_of(*table_, e));
    return w;
}

std::optional<long> GradedSeries::min_term_weight() const
{
    if (terms_.empty())
        return std::nullopt;
    // terms are graded-lex ordered, so the first term has minimal weight
    return weight_of(*table_, terms_.begin()->first);
}

int GradedSeries::degree_in(std::size_t var) const
{
    int d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e[var]);
    return d;
}

bool GradedSeries::involves(std::size_t var) const
{
    for (const auto& [e, c] : terms_)
        if (e[var] != 0)
            return true;
    return false;
}

GradedSeries GradedSeries::coeff_of_power(std::size_t var, int k) const
{
    GradedSeries out(table_, trunc_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != k)
            continue;
        Exponents r = e;
        r[var] = 0;
        out.add_term(r, c);
    }
    return out;
}

GradedSeries GradedSeries::weight_part(long w) const
{
    GradedSeries out(table_, trunc_);
    for (const auto& [e, c] : terms_)
        if (weight_of(*table_, e) == w)
            out.add_term(e, c);
    return out;
}

GradedSeries GradedSeries::truncate_to(int new_trunc) const
{
    GradedSeries out(table_, new_trunc);
    for (const auto& [e, c] : terms_)
        out.add_term(e, c);
    return out;
}

GradedSeries GradedSeries::with_table(const VarTablePtr& target) const
{
    if (table_->same_as(*target))
        return GradedSeries(*this).truncate_to(trunc_);
    std::vector<std::optional<std::size_t>> remap(table_->size());
    for (std::size_t i = 0; i < table_->size(); ++i) {
        auto idx = target->index_of(table_->at(i).name);
        if (idx && target->at(*idx).weight != table_->at(i).weight)
            throw SeriesError("variable-weight mismatch for '" + table_->at(i).name + "'");
        remap[i] = idx;
    }
    GradedSeries out(target, trunc_);
    for (const auto& [e, c] : terms_) {
        Exponents r(target->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (!remap[i])
                throw SeriesError("target table lacks variable '" + table_->at(i).name + "'");
            r[*remap[i]] = e[i];
        }
        out.add_term(r, c);
    }
    return out;
}

GradedSeries GradedSeries::operator-() const
{
    GradedSeries out(table_, trunc_);
    for (const auto& [e, c] : terms_)
        out.terms_.emplace(e, -c);
    return out;
}

GradedSeries& GradedSeries::add_term(const Exponents& exp, const Rat& c)
{
    if (c == 0)
        return *this;
    if (weight_of(*table_, exp) > trunc_)
        return *this;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
    return *this;
}

bool GradedSeries::is_integral() const
{
    for (const auto& [e, c] : terms_)
        if (!is_integer(c))
            return false;
    return true;
}

bool GradedSeries::denominators_power_of(long m) const
{
    for (const auto& [e, c] : terms_)
        if (!denominator_power_of(c, m))
            return false;
    return true;
}

namespace {

std::pair<GradedSeries, GradedSeries> aligned(const GradedSeries& a, const GradedSeries& b)
{
    int trunc = std::min(a.truncation(), b.truncation());
    if (a.table()->same_as(*b.table()))
        return {a.truncate_to(trunc), b.truncate_to(trunc)};
    auto table = VarTable::merge(a.table(), b.table());
    return {a.with_table(table).truncate_to(trunc), b.with_table(table).truncate_to(trunc)};
}

} // namespace

GradedSeries operator+(const GradedSeries& a, const GradedSeries& b)
{
    auto [x, y] = aligned(a, b);
    GradedSeries out = x;
    for (const auto& [e, c] : y.terms())
        out.add_term(e, c);
    return out;
}

GradedSeries operator-(const GradedSeries& a, const GradedSeries& b)
{
    auto [x, y] = aligned(a, b);
    GradedSeries out = x;
    for (const auto& [e, c] : y.terms())
        out.add_term(e, -c);
    return out;
}

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b)
{
    return mul(a, b);
}

GradedSeries operator*(const Rat& c, const GradedSeries& a)
{
    GradedSeries out(a.table(), a.truncation());
    if (c == 0)
        return out;
    for (const auto& [e, k] : a.terms())
        out.add_term(e, c * k);
    return out;
}

bool operator==(const GradedSeries& a, const GradedSeries& b)
{
    auto [x, y] = aligned(a, b);
    return x.terms() == y.terms();
}

GradedSeries mul(const GradedSeries& a, const GradedSeries& b)
{
    auto [x, y] = aligned(a, b);
    const auto& table = *x.table();
    long trunc = x.truncation();
    GradedSeries out(x.table(), x.truncation());
    Exponents sum(table.size(), 0);
    for (const auto& [ea, ca] : x.terms()) {
        long wa = weight_of(table, ea);
        for (const auto& [eb, cb] : y.terms()) {
            if (wa + weight_of(table, eb) > trunc)
                continue;
            for (std::size_t i = 0; i < sum.size(); ++i)
                sum[i] = ea[i] + eb[i];
            out.add_term(sum, ca * cb);
        }
    }
    return out;
}

GradedSeries pow(const GradedSeries& a, int n)
{
    if (n < 0)
        throw SeriesError("pow: negative exponent");
    GradedSeries acc = GradedSeries::constant(a.table(), a.truncation(), Rat(1));
    for (int i = 0; i < n; ++i)
        acc = mul(acc, a);
    return acc;
}

GradedSeries substitute(const GradedSeries& outer, const std::string& var,
                        const GradedSeries& inner)
{
    auto idx = outer.table()->index_of(var);
    if (!idx)
        throw SeriesError("substitute: unknown variable '" + var + "'");
    if (inner.constant_term() != 0)
        throw SeriesError("substitute: inner series has nonzero constant term");
    int var_weight = outer.table()->at(*idx).weight;
    auto min_w = inner.min_term_weight();
    if (min_w && *min_w < var_weight)
        throw SeriesError("substitute: inner leading weight below substituted variable weight");

    // target = (outer vars minus `var`) union inner vars
    std::vector<Variable> kept;
    for (std::size_t i = 0; i < outer.table()->size(); ++i)
        if (i != *idx && outer.involves(i))
            kept.push_back(outer.table()->at(i));
    auto target = VarTable::merge(VarTable::make(std::move(kept)), inner.table());
    int trunc = std::min(outer.truncation(), inner.truncation());

    int max_k = outer.degree_in(*idx);
    // Horner in descending powers of var
    GradedSeries acc = GradedSeries::zero(target, trunc);
    GradedSeries inner_t = inner.with_table(target).truncate_to(trunc);
    for (int k = max_k; k >= 0; --k) {
        GradedSeries coef = outer.coeff_of_power(*idx, k).with_table(target).truncate_to(trunc);
        acc = mul(acc, inner_t) + coef;
    }
    return acc;
}

namespace {

std::size_t unique_involved_var(const GradedSeries& s, const char* what)
{
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < s.table()->size(); ++i) {
        if (!s.involves(i))
            continue;
        if (found)
            throw SeriesError(std::string(what) + ": series must involve exactly one variable");
        found = i;
    }
    if (!found)
        throw SeriesError(std::string(what) + ": series involves no variable");
    return *found;
}

} // namespace

GradedSeries substitute(const GradedSeries& outer, const GradedSeries& inner)
{
    if (outer.is_zero())
        return GradedSeries::zero(outer.table(), std::min(outer.truncation(), inner.truncation()));
    bool has_var = false;
    for (std::size_t i = 0; i < outer.table()->size(); ++i)
        has_var = has_var || outer.involves(i);
    if (!has_var) // constant outer
        return outer.truncate_to(std::min(outer.truncation(), inner.truncation()));
    std::size_t idx = unique_involved_var(outer, "substitute");
    return substitute(outer, outer.table()->at(idx).name, inner);
}

GradedSeries substitute_map(const GradedSeries& outer,
                            const std::vector<std::pair<std::string, GradedSeries>>& images,
                            VarTablePtr target, int truncation)
{
    GradedSeries out = GradedSeries::zero(target, truncation);
    // cache powers of each image
    std::vector<std::size_t> src_idx;
    std::vector<std::vector<GradedSeries>> powers;
    for (const auto& [name, img] : images) {
        auto idx = outer.table()->index_of(name);
        if (!idx)
            throw SeriesError("substitute_map: unknown variable '" + name + "'");
        if (img.constant_term() != 0)
            throw SeriesError("substitute_map: image has nonzero constant term");
        src_idx.push_back(*idx);
        powers.push_back({GradedSeries::constant(target, truncation, Rat(1)),
                          img.with_table(target).truncate_to(truncation)});
    }
    for (const auto& [e, c] : outer.terms()) {
        GradedSeries term = GradedSeries::constant(target, truncation, c);
        Exponents rest = e;
        for (std::size_t j = 0; j < src_idx.size(); ++j) {
            int k = e[src_idx[j]];
            rest[src_idx[j]] = 0;
            auto& pw = powers[j];
            while (static_cast<int>(pw.size()) <= k)
                pw.push_back(mul(pw.back(), pw[1]));
            if (k > 0)
                term = mul(term, pw[k]);
        }
        // remaining variables pass through
        Exponents passthrough(target->size(), 0);
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (rest[i] == 0)
                continue;
            auto t = target->index_of(outer.table()->at(i).name);
            if (!t)
                throw SeriesError("substitute_map: target lacks variable '" +
                                  outer.table()->at(i).name + "'");
            passthrough[*t] = rest[i];
        }
        term = mul(term, GradedSeries::monomial(target, truncation, passthrough));
        out = out + term;
    }
    return out;
}

GradedSeries rename_variable(const GradedSeries& s, const std::string& from, const std::string& to)
{
    if (from == to)
        return s;
    auto idx = s.table()->index_of(from);
    if (!idx)
        throw SeriesError("rename_variable: unknown variable '" + from + "'");
    std::vector<Variable> vars = s.table()->vars();
    vars[*idx].name = to;
    auto target = VarTable::make(std::move(vars));
    GradedSeries out(target, s.truncation());
    for (const auto& [e, c] : s.terms())
        out.add_term(e, c);
    return out;
}

GradedSeries revert(const GradedSeries& s, const std::string& var)
{
    auto idx = s.table()->index_of(var);
    if (!idx)
        throw SeriesError("revert: unknown variable '" + var + "'");
    if (s.constant_term() != 0)
        throw SeriesError("revert: series has a constant term");
    Exponents lin(s.table()->size(), 0);
    lin[*idx] = 1;
    GradedSeries lin_coeff = s.coeff_of_power(*idx, 1);
    if (!(lin_coeff == GradedSeries::constant(s.table(), s.truncation(), Rat(1))))
        throw SeriesError("revert: linear coefficient must be exactly 1");

    int var_weight = s.table()->at(*idx).weight;
    int max_pow = var_weight > 0 ? s.truncation() / var_weight : 0;
    GradedSeries t = GradedSeries::monomial(s.table(), s.truncation(), lin);
    GradedSeries r = t;
    for (int m = 2; m <= max_pow; ++m) {
        GradedSeries err = (substitute(s, var, r) - t).with_table(s.table());
        GradedSeries cm = err.coeff_of_power(*idx, m);
        if (cm.is_zero())
            continue;
        Exponents pm(s.table()->size(), 0);
        pm[*idx] = m;
        r = r - mul(cm.with_table(s.table()), GradedSeries::monomial(s.table(), s.truncation(), pm));
    }
    return r;
}

GradedSeries revert(const GradedSeries& s)
{
    std::size_t idx = unique_involved_var(s, "revert");
    return revert(s, s.table()->at(idx).name);
}

GradedSeries nth_root(const GradedSeries& s, int n)
{
    if (n <= 0)
        throw SeriesError("nth_root: n must be positive");
    if (s.constant_term() != 1)
        throw SeriesError("nth_root: constant term must be 1");
    GradedSeries u = s - GradedSeries::constant(s.table(), s.truncation(), Rat(1));
    // (1+u)^(1/n) = sum_k binom(1/n, k) u^k; u has positive valuation so
    // the sum stops once u^k exceeds the truncation.
    GradedSeries out = GradedSeries::constant(s.table(), s.truncation(), Rat(1));
    GradedSeries upow = u;
    Rat binom(1);
    Rat inv_n = make_rat(1, n);
    for (int k = 1; !upow.is_zero(); ++k) {
        binom *= (inv_n - Rat(k - 1)) / Rat(k);
        out = out + binom * upow;
        upow = mul(upow, u);
    }
    return out;
}

GradedSeries invert_unit(const GradedSeries& s)
{
    Rat c0 = s.constant_term();
    if (c0 == 0)
        throw SeriesError("invert_unit: constant term is zero");
    Rat inv_c0 = Rat(1) / c0;
    GradedSeries u = GradedSeries::constant(s.table(), s.truncation(), Rat(1)) - inv_c0 * s;
    // 1/s = (1/c0) * sum u^k
    GradedSeries out = GradedSeries::constant(s.table(), s.truncation(), Rat(1));
    GradedSeries upow = u;
    while (!upow.is_zero()) {
        out = out + upow;
        upow = mul(upow, u);
    }
    return inv_c0 * out;
}

GradedSeries divide_by_linear(const GradedSeries& num, const std::string& var,
                              const GradedSeries& z)
{
    auto idx = num.table()->index_of(var);
    if (!idx)
        throw SeriesError("divide_by_linear: unknown variable '" + var + "'");
    auto table = VarTable::merge(num.table(), z.table());
    int trunc = num.truncation();
    GradedSeries zz = z.with_table(table).truncate_to(trunc);
    if (zz.involves(*table->index_of(var)))
        throw SeriesError("divide_by_linear: z involves the divided variable");
    GradedSeries n = num.with_table(table);
    std::size_t v = *table->index_of(var);

    int max_k = n.degree_in(v);
    // synthetic division: num = (var - z) * q + r
    GradedSeries q = GradedSeries::zero(table, trunc);
    GradedSeries carry = GradedSeries::zero(table, trunc); // B_k during descent
    Exponents pv(table->size(), 0);
    for (int k = max_k; k >= 1; --k) {
        GradedSeries bk = n.coeff_of_power(v, k) + mul(zz, carry);
        pv[v] = k - 1;
        q = q + mul(bk, GradedSeries::monomial(table, trunc, pv));
        carry = bk;
    }
    GradedSeries rem = n.coeff_of_power(v, 0) + mul(zz, carry);
    if (!rem.is_zero())
        throw SeriesError("divide_by_linear: nonzero remainder");
    // a quotient of a series complete through W is only complete through
    // W - weight(var)
    return q.truncate_to(trunc - table->at(v).weight);
}

GradedSeries divide_by_power(const GradedSeries& num, const std::string& var, int k)
{
    if (k == 0)
        return num;
    auto idx = num.table()->index_of(var);
    if (!idx)
        throw SeriesError("divide_by_power: unknown variable '" + var + "'");
    GradedSeries out(num.table(), num.truncation() - k * num.table()->at(*idx).weight);
    for (const auto& [e, c] : num.terms()) {
        if (e[*idx] < k)
            throw SeriesError("divide_by_power: term not divisible");
        Exponents r = e;
        r[*idx] -= k;
        out.add_term(r, c);
    }
    return out;
}

std::optional<GradedSeries> try_exact_div(const GradedSeries& num, const GradedSeries& den)
{
    if (den.is_zero())
        throw SeriesError("exact_div: division by zero");
    auto [n, d] = std::pair(num, den);
    if (!num.table()->same_as(*den.table())) {
        auto table = VarTable::merge(num.table(), den.table());
        n = num.with_table(table);
        d = den.with_table(table);
    }
    int trunc = std::min(n.truncation(), d.truncation());
    n = n.truncate_to(trunc);
    d = d.truncate_to(trunc);
    const auto& low_d = *d.terms().begin();
    long wd = weight_of(*d.table(), low_d.first);
    int out_trunc = static_cast<int>(trunc - wd);
    if (n.is_zero())
        return GradedSeries::zero(n.table(), out_trunc);

    GradedSeries q(n.table(), out_trunc);
    GradedSeries rem = n;
    while (!rem.is_zero()) {
        const auto& low_r = *rem.terms().begin();
        Exponents diff(low_r.first.size());
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff[i] = low_r.first[i] - low_d.first[i];
            if (diff[i] < 0)
                return std::nullopt;
        }
        Rat c = low_r.second / low_d.second;
        q.add_term(diff, c);
        rem = rem - mul(GradedSeries::monomial(n.table(), trunc, diff, c), d);
    }
    return q;
}

GradedSeries exact_div(const GradedSeries& num, const GradedSeries& den)
{
    auto q = try_exact_div(num, den);
    if (!q)
        throw SeriesError("exact_div: not divisible");
    return *q;
}

} // namespace cobord
