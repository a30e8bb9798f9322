// Command-line front end: coefficient tables, verification suites, and
// product-structure checks.

#include "cobord/divdiff.hpp"
#include "cobord/json_io.hpp"
#include "cobord/lattice.hpp"
#include "cobord/products.hpp"
#include "cobord/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace cobord;

namespace {

constexpr unsigned kDefaultSeed = 12345;
constexpr int kWeightGuardrail = 12;

struct CommonOpts {
    int max_weight = 6;
    std::string format = "json";
    std::string out_path;
    unsigned seed = kDefaultSeed;
    bool unsafe = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_format = true)
{
    cmd->add_option("--max-weight", opts.max_weight, "truncation weight");
    if (with_format)
        cmd->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opts.out_path, "write the table to this path");
    cmd->add_option("--seed", opts.seed, "seed for randomized property checks");
    cmd->add_flag("--unsafe", opts.unsafe, "allow max-weight beyond the guardrail");
}

int guard(const CommonOpts& opts, int min_weight = 1)
{
    if (opts.max_weight < min_weight) {
        std::cerr << "error: --max-weight must be >= " << min_weight << "\n";
        return 2;
    }
    if (opts.max_weight > kWeightGuardrail && !opts.unsafe) {
        std::cerr << "error: --max-weight > " << kWeightGuardrail
                  << " grows combinatorially; pass --unsafe to proceed\n";
        return 2;
    }
    return 0;
}

int emit(const CommonOpts& opts, const std::string& text)
{
    if (opts.out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(opts.out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open '" << opts.out_path << "'\n";
        return 2;
    }
    f << text;
    return 0;
}

int cmd_fgl(const CommonOpts& opts)
{
    if (int rc = guard(opts))
        return rc;
    FglTable table = universal_fgl(opts.max_weight);
    LambdaLattice lattice(table, opts.max_weight);
    if (opts.format == "csv")
        return emit(opts, fgl_table_to_csv(table));
    return emit(opts, fgl_table_to_json(table, &lattice).dump(2) + "\n");
}

int cmd_log(const CommonOpts& opts)
{
    if (int rc = guard(opts))
        return rc;
    LogPair lp = log_pair(opts.max_weight);
    GradedSeries t = GradedSeries::variable(lp.exp.table(), lp.exp.truncation(), "t");
    bool round_trip = substitute(lp.exp, "t", lp.log).with_table(lp.exp.table()) == t &&
                      substitute(lp.log, "t", lp.exp).with_table(lp.exp.table()) == t;
    if (opts.format == "csv")
        return emit(opts, log_pair_to_csv(lp, opts.max_weight));
    json rows;
    rows["max_weight"] = opts.max_weight;
    rows["round_trip"] = round_trip;
    auto coeffs = [&](const GradedSeries& s) {
        json list = json::array();
        std::size_t ti = *s.table()->index_of("t");
        for (int k = 2; k <= opts.max_weight + 1; ++k) {
            GradedSeries c = s.coeff_of_power(ti, k);
            if (c.is_zero())
                continue;
            list.push_back({{"power", k},
                            {"poly", star_poly_to_json(
                                         c.with_table(star_table(opts.max_weight)))}});
        }
        return list;
    };
    rows["exp"] = coeffs(lp.exp);
    rows["log"] = coeffs(lp.log);
    return emit(opts, rows.dump(2) + "\n");
}

int cmd_structure_constants(const CommonOpts& opts)
{
    if (int rc = guard(opts, 0))
        return rc;
    std::vector<json> rows;
    auto basis = basis_up_to(opts.max_weight);
    for (const auto& a : basis)
        for (const auto& b : basis) {
            if (a.weight() + b.weight() > opts.max_weight)
                continue;
            rows.push_back(structure_constants_row(a, b, multiply_basis(a, b)));
        }
    if (opts.format == "csv")
        return emit(opts, structure_constants_csv(rows));
    json out = json::array();
    for (auto& r : rows)
        out.push_back(std::move(r));
    return emit(opts, out.dump(2) + "\n");
}

int cmd_verify(const CommonOpts& opts, const std::string& suite, bool inject_fault)
{
    if (int rc = guard(opts))
        return rc;
    std::vector<CheckResult> results;
    try {
        results = run_suite(suite, opts.max_weight, opts.seed, inject_fault);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    json checks = json::array();
    for (const auto& r : results)
        checks.push_back({{"suite", r.suite},
                          {"name", r.name},
                          {"weight", r.weight},
                          {"pass", r.pass},
                          {"detail", r.detail}});
    json report{{"suite", suite},
                {"max_weight", opts.max_weight},
                {"seed", opts.seed},
                {"checks", checks},
                {"all_passed", all_passed(results)}};
    int rc = emit(opts, report.dump(2) + "\n");
    if (rc)
        return rc;
    return all_passed(results) ? 0 : 1;
}

// -- product-check -----------------------------------------------------------

DivDiffOp op_from_spec(const json& spec)
{
    std::string ctor = spec.at("constructor").get<std::string>();
    int trunc = spec.value("truncation", 14);
    if (ctor == "newton")
        return newton_op(trunc);
    if (ctor == "evaluation")
        return evaluation_op(trunc);
    if (ctor == "translation") {
        auto table = VarTable::make({{"a", 1}});
        GradedSeries a = GradedSeries::variable(table, trunc, "a");
        return translation_op(a, GradedSeries::constant(table, trunc, Rat(1)) + a, trunc);
    }
    if (ctor == "multiplicative_fgl")
        return fgl_diff_op(multiplicative_fgl(trunc), trunc);
    if (ctor == "universal_fgl")
        return fgl_diff_op(universal_fgl(spec.value("weight", 6)), trunc);
    if (ctor == "reflection_i" || ctor == "reflection_ii") {
        std::vector<Rat> xi;
        for (const auto& v : spec.at("xi"))
            xi.push_back(rat_from_string(v.get<std::string>(), "1"));
        return reflection_op(xi, ctor == "reflection_ii", trunc);
    }
    if (ctor == "localized_division") {
        int n = spec.at("n").get<int>();
        long m = spec.at("m").get<long>();
        FglTable law = universal_fgl(std::max(2, n));
        DualElement alpha =
            n == 1 && m == 1
                ? star_gen(1, trunc, trunc)
                : (n == 1 ? law.entry(1, 1) : law.entry(1, 2)).with_table(star_table(trunc))
                      .truncate_to(trunc);
        return localized_division_op(n, m, alpha, {}, trunc, trunc);
    }
    if (ctor == "root_involution") {
        int n = spec.at("n").get<int>();
        DualElement alpha = n == 1 ? universal_fgl(2).entry(1, 1).with_table(star_table(trunc))
                                         .truncate_to(trunc)
                                   : Rat(2 * n) * star_gen(n, trunc, trunc);
        return root_involution_op(n, alpha, trunc, trunc);
    }
    throw std::invalid_argument("unknown operator constructor '" + ctor + "'");
}

GradedSeries ring_element_from_spec(const json& spec, const Carrier& carrier)
{
    if (spec.contains("var"))
        return GradedSeries::variable(carrier.table, carrier.truncation,
                                      spec.at("var").get<std::string>());
    if (spec.contains("const"))
        return GradedSeries::constant(carrier.table, carrier.truncation,
                                      rat_from_string(spec.at("const").get<std::string>(), "1"));
    if (spec.contains("series"))
        return series_from_json(spec.at("series")).with_table(carrier.table);
    throw std::invalid_argument("ring element spec needs var/const/series");
}

int cmd_product_check(const std::string& path, const CommonOpts& opts)
{
    json spec;
    try {
        std::ifstream f(path);
        if (!f)
            throw std::runtime_error("cannot open '" + path + "'");
        f >> spec;
    } catch (const std::exception& e) {
        std::cerr << "error: malformed spec: " << e.what() << "\n";
        return 2;
    }
    try {
        std::string construction = spec.at("construction").get<std::string>();
        int W = spec.value("check_weight", 4);
        json report;
        if (construction == "mu1") {
            DivDiffOp op1 = op_from_spec(spec.at("op1"));
            DivDiffOp op2 = op_from_spec(spec.at("op2"));
            auto cert = projector_product_certificate(op1, op2, W);
            report["certificate"] = {{"division1", cert.division1},
                                     {"division2", cert.division2},
                                     {"projectors_commute", cert.commute},
                                     {"commutative", cert.commutative},
                                     {"pis_equal", cert.pis_equal},
                                     {"biconditional_ok", cert.biconditional_ok}};
            report["associative"] = cert.associative;
            if (!cert.associative)
                report["witness"] = cert.assoc_witness;
        } else if (construction == "mu2") {
            DivDiffOp op = op_from_spec(spec.at("op"));
            GradedSeries beta = ring_element_from_spec(spec.at("beta"), op.carrier);
            auto cert = deformation_certificate(op, beta, W);
            report["certificate"] = {{"branch", cert.branch},
                                     {"division", cert.division},
                                     {"pi_beta_zero", cert.pi_beta_zero},
                                     {"cross_condition", cert.cross_condition}};
            report["associative"] = cert.associative;
            if (!cert.associative)
                report["witness"] = cert.witness;
        } else if (construction == "mu3") {
            std::string model = spec.at("model").get<std::string>();
            if (model == "conner_floyd") {
                int k = spec.value("line_factors", 1);
                auto cf = conner_floyd_model(k, W);
                auto sb = solve_beta(cf.Pi, cf.delta, cf.carrier, W);
                auto sa = solve_alpha(cf.Pi, cf.delta, cf.carrier, W);
                json cert{{"solve_beta", sb.ok}, {"solve_alpha", sa.ok}};
                if (sb.ok && sa.ok) {
                    auto hyp = projector_pair_hypotheses(cf.Pi, cf.delta, sa.value, sb.value,
                                                   cf.carrier, W);
                    cert["projector"] = hyp.proj;
                    cert["delta_pi"] = hyp.delta_pi;
                    cert["condition2"] = hyp.cond2;
                    cert["condition3"] = hyp.cond3;
                    if (!hyp.all())
                        cert["detail"] = hyp.detail;
                }
                report["certificate"] = cert;
                auto assoc = associativity_check(mu3(cf.Pi, cf.carrier), W);
                report["associative"] = assoc.associative;
                if (!assoc.associative)
                    report["witness"] = assoc.witness;
            } else if (model == "degenerate") {
                int t = W + 2;
                auto l12 = localized_division_op(1, 2,
                                      universal_fgl(2).entry(1, 1).with_table(star_table(t))
                                          .truncate_to(t),
                                      {}, t, t);
                LinOp zero_op = [](const GradedSeries& u) {
                    return GradedSeries::zero(u.table(), u.truncation());
                };
                auto sb = solve_beta(l12.pi, zero_op, l12.carrier, W);
                auto hyp = projector_pair_hypotheses(l12.pi, zero_op, l12.alpha, sb.value, l12.carrier,
                                               W);
                report["certificate"] = {{"solve_beta", sb.ok},
                                         {"projector", hyp.proj},
                                         {"delta_pi", hyp.delta_pi},
                                         {"condition2", hyp.cond2},
                                         {"condition3", hyp.cond3}};
                auto assoc = associativity_check(mu3(l12.pi, l12.carrier), W);
                report["associative"] = assoc.associative;
            } else {
                throw std::invalid_argument("unknown mu3 model '" + model + "'");
            }
        } else if (construction == "operator") {
            DivDiffOp op = op_from_spec(spec.at("op"));
            report = operator_report(op, W);
            return emit(opts, report.dump(2) + "\n");
        } else if (construction == "phi") {
            PhiSeries phi = phi_series_from_json(spec.at("phi"));
            ProductOracle oracle = [&phi](const DualElement& u, const DualElement& v) {
                return stable_product_eval_dual(phi, u, v);
            };
            bool ok = true;
            std::string detail;
            try {
                PhiSeries rec = recover_phi(oracle, phi.truncation, phi.k_max);
                for (const auto& [ij, lambda] : phi.terms) {
                    auto it = rec.terms.find(ij);
                    if (it == rec.terms.end() || !(it->second == lambda)) {
                        ok = false;
                        detail = "recovered series differs";
                        break;
                    }
                }
            } catch (const RecoverError& e) {
                ok = false;
                detail = e.what();
            }
            report["certificate"] = {{"round_trip", ok}};
            if (!detail.empty())
                report["detail"] = detail;
            report["associative"] = nullptr;
        } else {
            throw std::invalid_argument("unknown construction '" + construction + "'");
        }
        return emit(opts, report.dump(2) + "\n");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact computer algebra for the Landweber-Novikov algebra, its formal group, "
                 "and divided-difference product structures"};
    app.require_subcommand(1);

    CommonOpts fgl_opts, log_opts, sc_opts, verify_opts, pc_opts;
    std::string suite = "all";
    bool inject_fault = false;
    std::string spec_path;

    auto* fgl_cmd = app.add_subcommand("fgl", "export the universal formal group law table");
    add_common(fgl_cmd, fgl_opts);

    auto* log_cmd = app.add_subcommand("log", "export the logarithm/exponential coefficients");
    add_common(log_cmd, log_opts);

    auto* sc_cmd = app.add_subcommand("structure-constants",
                                      "export products of basis elements of S");
    add_common(sc_cmd, sc_opts);

    auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite");
    add_common(verify_cmd, verify_opts, false);
    verify_cmd->add_option("--suite", suite, "hopf|fgl|divdiff|products|all");
    verify_cmd->add_flag("--inject-fault", inject_fault,
                         "corrupt one comparison (tests the failure exit path)");

    auto* pc_cmd = app.add_subcommand("product-check",
                                      "evaluate a declarative product-structure spec");
    pc_cmd->add_option("spec", spec_path, "JSON spec file")->required();
    add_common(pc_cmd, pc_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (fgl_cmd->parsed())
            return cmd_fgl(fgl_opts);
        if (log_cmd->parsed())
            return cmd_log(log_opts);
        if (sc_cmd->parsed())
            return cmd_structure_constants(sc_opts);
        if (verify_cmd->parsed())
            return cmd_verify(verify_opts, suite, inject_fault);
        if (pc_cmd->parsed())
            return cmd_product_check(spec_path, pc_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
