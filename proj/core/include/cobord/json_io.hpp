#ifndef COBORD_JSON_IO_HPP
#define COBORD_JSON_IO_HPP

#include "cobord/divdiff.hpp"
#include "cobord/formal_group.hpp"
#include "cobord/hopf.hpp"
#include "cobord/lattice.hpp"
#include "cobord/milnor.hpp"

#include <json.hpp>

namespace cobord {

using json = nlohmann::ordered_json;

// series <-> {"variables": [...], "truncation": W, "terms": [{"exp","num","den"}...]}
json series_to_json(const GradedSeries& s);
GradedSeries series_from_json(const json& j);

// multi-index as a descending-sorted integer list
json multi_index_to_json(const MultiIndex& w);
MultiIndex multi_index_from_json(const json& j);

// {"a": [...], "b": [...], "product": [{"w": [...], "coef": "..."}]}
json structure_constants_row(const MultiIndex& a, const MultiIndex& b, const SElement& product);

// a polynomial in the star generators: [{"mono": [k-exponents], "coef": "int"}]
// (or {"num","den"} entries when a coefficient is not integral)
json star_poly_to_json(const DualElement& d);
DualElement star_poly_from_json(const json& j, int k_max, int truncation);

// {"truncation": W, "entries": [{"i","j","poly": [...], "lambda": {...}}]}
json fgl_table_to_json(const FglTable& t, const LambdaLattice* lattice = nullptr);

// {"terms": [{"wi","wj","poly"}...], "truncation": W}
json phi_series_to_json(const PhiSeries& phi);
PhiSeries phi_series_from_json(const json& j);

// {"constructor", "params", "checks": [{"name","weight","pass"}],
//  "localization_denominators": [...]}: the operator's behavioral
// fingerprint report
json operator_report(const DivDiffOp& op, int check_weight);

// flat CSV renderings with the same numeric content as the JSON tables
std::string fgl_table_to_csv(const FglTable& t);
std::string log_pair_to_csv(const LogPair& lp, int max_weight);
std::string structure_constants_csv(const std::vector<json>& rows);

} // namespace cobord

#endif
