#include "cobord/json_io.hpp"

#include <set>
#include <sstream>

namespace cobord {

json series_to_json(const GradedSeries& s)
{
    json vars = json::array();
    for (const auto& v : s.table()->vars())
        vars.push_back({{"name", v.name}, {"weight", v.weight}});
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) { // map iteration = graded-lex order
        json t;
        t["exp"] = e;
        t["num"] = c.get_num().get_str();
        t["den"] = c.get_den().get_str();
        terms.push_back(std::move(t));
    }
    return json{{"variables", vars}, {"truncation", s.truncation()}, {"terms", terms}};
}

GradedSeries series_from_json(const json& j)
{
    std::vector<Variable> vars;
    for (const auto& v : j.at("variables"))
        vars.push_back({v.at("name").get<std::string>(), v.at("weight").get<int>()});
    GradedSeries s(VarTable::make(std::move(vars)), j.at("truncation").get<int>());
    for (const auto& t : j.at("terms")) {
        Exponents e = t.at("exp").get<Exponents>();
        s.add_term(e, rat_from_string(t.at("num").get<std::string>(),
                                      t.value("den", std::string("1"))));
    }
    return s;
}

json multi_index_to_json(const MultiIndex& w)
{
    return json(w.parts()); // stored descending
}

MultiIndex multi_index_from_json(const json& j)
{
    return MultiIndex(j.get<std::vector<int>>());
}

json structure_constants_row(const MultiIndex& a, const MultiIndex& b, const SElement& product)
{
    json prod = json::array();
    for (const auto& [w, c] : product.terms()) {
        if (!is_integer(c))
            throw HopfError("structure constants must be integral");
        prod.push_back({{"w", multi_index_to_json(w)}, {"coef", c.get_num().get_str()}});
    }
    return json{{"a", multi_index_to_json(a)}, {"b", multi_index_to_json(b)}, {"product", prod}};
}

json star_poly_to_json(const DualElement& d)
{
    json out = json::array();
    for (const auto& [e, c] : d.terms()) {
        json entry;
        entry["mono"] = e;
        if (is_integer(c)) {
            entry["coef"] = c.get_num().get_str();
        } else {
            entry["num"] = c.get_num().get_str();
            entry["den"] = c.get_den().get_str();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

DualElement star_poly_from_json(const json& j, int k_max, int truncation)
{
    GradedSeries d(star_table(k_max), truncation);
    for (const auto& entry : j) {
        Exponents e = entry.at("mono").get<Exponents>();
        e.resize(k_max, 0);
        Rat c = entry.contains("coef")
                    ? rat_from_string(entry.at("coef").get<std::string>(), "1")
                    : rat_from_string(entry.at("num").get<std::string>(),
                                      entry.at("den").get<std::string>());
        d.add_term(e, c);
    }
    return d;
}

json fgl_table_to_json(const FglTable& t, const LambdaLattice* lattice)
{
    json entries = json::array();
    for (const auto& [ij, alpha] : t.entries) {
        json e;
        e["i"] = ij.first;
        e["j"] = ij.second;
        e["poly"] = star_poly_to_json(alpha);
        if (lattice) {
            auto mem = lattice->membership(alpha);
            json lam;
            lam["member"] = mem.member;
            if (mem.member) {
                json coords = json::array();
                for (const auto& [name, c] : mem.certificate)
                    coords.push_back({{"gen", name}, {"coef", c.get_str()}});
                lam["coords"] = coords;
            } else {
                lam["multiplier"] = mem.multiplier.get_str();
            }
            e["lambda"] = lam;
        }
        entries.push_back(std::move(e));
    }
    return json{{"truncation", t.truncation}, {"entries", entries}};
}

json phi_series_to_json(const PhiSeries& phi)
{
    json terms = json::array();
    for (const auto& [ij, lambda] : phi.terms)
        terms.push_back({{"wi", multi_index_to_json(ij.first)},
                         {"wj", multi_index_to_json(ij.second)},
                         {"poly", star_poly_to_json(lambda)}});
    return json{{"terms", terms}, {"truncation", phi.truncation}};
}

PhiSeries phi_series_from_json(const json& j)
{
    PhiSeries phi;
    phi.truncation = j.at("truncation").get<int>();
    phi.k_max = 2 * phi.truncation;
    for (const auto& t : j.at("terms")) {
        auto wi = multi_index_from_json(t.at("wi"));
        auto wj = multi_index_from_json(t.at("wj"));
        phi.terms.emplace(std::make_pair(wi, wj),
                          star_poly_from_json(t.at("poly"), phi.k_max, 2 * phi.truncation));
    }
    return phi;
}

json operator_report(const DivDiffOp& op, int check_weight)
{
    json checks = json::array();
    auto push = [&](const std::string& name, int weight, bool pass) {
        checks.push_back({{"name", name}, {"weight", weight}, {"pass", pass}});
    };
    auto r12 = check_divdiff(op, check_weight);
    push(r12.name, r12.weight, r12.pass);
    auto rpi = pi_multiplicativity(op, check_weight);
    push(rpi.name, rpi.weight, rpi.pass);
    push("nontrivial", check_weight, nontrivial_on_test_set(op, check_weight));
    push("division", check_weight, is_division(op, std::min(check_weight, 4)));
    auto gamma = solve_gamma(op, std::min(check_weight, 4));
    push("has_gamma", std::min(check_weight, 4), gamma.has_value());
    if (gamma) {
        auto g = gamma_predicates(op, *gamma, std::min(check_weight, 4));
        push("alpha_scaling_identity", std::min(check_weight, 4), g.alpha_scaling);
        push("pi_involution", std::min(check_weight, 4), g.pi_involution);
        push("pi_alpha_identity", std::min(check_weight, 4), g.pi_alpha);
    }

    // distinct denominators observed on the fingerprint values
    std::set<std::string> denoms;
    for (const auto& m : monomial_test_set(op.carrier, std::min(check_weight, 4)))
        for (const auto& im : {op.partial(m), op.pi(m)})
            for (const auto& [e, c] : im.terms())
                if (!is_integer(c))
                    denoms.insert(c.get_den().get_str());
    json dens = json::array();
    for (const auto& d : denoms)
        dens.push_back(d);

    json params = json::object();
    for (const auto& [k, v] : op.params)
        params[k] = v;
    return json{{"constructor", op.name},
                {"params", params},
                {"checks", checks},
                {"localization_denominators", dens}};
}

namespace {

std::string join_exponents(const Exponents& e)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i)
            s += ".";
        s += std::to_string(e[i]);
    }
    return s;
}

} // namespace

std::string fgl_table_to_csv(const FglTable& t)
{
    std::ostringstream out;
    out << "i,j,mono,num,den\n";
    for (const auto& [ij, alpha] : t.entries)
        for (const auto& [e, c] : alpha.terms())
            out << ij.first << "," << ij.second << "," << join_exponents(e) << ","
                << c.get_num().get_str() << "," << c.get_den().get_str() << "\n";
    return out.str();
}

std::string log_pair_to_csv(const LogPair& lp, int max_weight)
{
    std::ostringstream out;
    out << "series,power,mono,num,den\n";
    auto row = [&](const char* which, const GradedSeries& s) {
        std::size_t ti = *s.table()->index_of("t");
        for (int k = 1; k <= max_weight + 1; ++k) {
            GradedSeries c = s.coeff_of_power(ti, k);
            for (const auto& [e, q] : c.terms()) {
                Exponents stars(e.begin() + 1, e.end()); // drop the t slot
                out << which << "," << k << "," << join_exponents(stars) << ","
                    << q.get_num().get_str() << "," << q.get_den().get_str() << "\n";
            }
        }
    };
    row("exp", lp.exp);
    row("log", lp.log);
    return out.str();
}

std::string structure_constants_csv(const std::vector<json>& rows)
{
    std::ostringstream out;
    out << "a,b,w,coef\n";
    auto idx = [](const json& l) {
        std::string s;
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (i)
                s += ".";
            s += std::to_string(l[i].get<int>());
        }
        return s.empty() ? std::string("0") : s;
    };
    for (const auto& row : rows)
        for (const auto& p : row.at("product"))
            out << idx(row.at("a")) << "," << idx(row.at("b")) << "," << idx(p.at("w")) << ","
                << p.at("coef").get<std::string>() << "\n";
    return out.str();
}

} // namespace cobord
