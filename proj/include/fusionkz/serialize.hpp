#pragma once

#include "fusionkz/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace fusionkz {

using Json = nlohmann::json;

Json to_json(const Rational &q);
Json to_json(const Real &x);
Json to_json(const RMatrix &m);
Json to_json(const XMatrix &m);
Json weight_json(const Weight &w);

Rational rational_from_json(const Json &j);
RMatrix rational_matrix_from_json(const Json &j);

Json to_json(const RootDatum &d);
/// Loads an algebra-data file and rechecks every structural invariant.
RootDatumPtr root_datum_from_json(const Json &j);

Json to_json(const GModule &m);
GModule module_from_json(const Json &j, const RootDatumPtr &datum);

Json to_json(const SubspaceBasis &s);
Json to_json(const FusionProduct &fp);
Json to_json(const FusionTable &t);
/// Rows lambda, columns mu; each cell lists nu:mult separated by commas.
std::string fusion_table_csv(const FusionTable &t);

Json to_json(const AssociatorMatrix &a);
Json to_json(const QuotientReport &r);
Json to_json(const QuotientAssociator &q);
Json to_json(const PentagonReport &r);
Json to_json(const Check &c);
Json to_json(const SuiteReport &r);

/// Pretty-printed with sorted keys and a trailing newline.
std::string dump(const Json &j);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path &path, const std::string &content);

} // namespace fusionkz
