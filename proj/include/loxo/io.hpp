#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "loxo/functions.hpp"
#include "loxo/hypgeom.hpp"
#include "loxo/optimize.hpp"
#include "loxo/relations.hpp"
#include "loxo/words.hpp"

namespace loxo {

using Json = nlohmann::ordered_json;

Json to_json(const PsiTable& table);
Json to_json(const GammaNought& gammas);
Json to_json(const Relation& rel);
Json to_json(const FunctionSpec& spec);
Json to_json(const SolveResult& result);
Json to_json(const MinmaxResult& result);
Json to_json(const AuditReport& report);
Json to_json(const SchottkyCertificate& cert);

PsiTable psi_from_json(const Json& j);
Relation relation_from_json(const Json& j, const PsiTable& table);
FunctionSpec spec_from_json(const Json& j);

// Minimal RFC 4180 quoting.
std::string csv_field(const std::string& s);
std::string join_indices(const std::vector<int>& v, const char* sep = " ");

void write_csv(std::ostream& os, const PsiTable& table);
void write_csv(std::ostream& os, const std::vector<Relation>& rels);
void write_csv(std::ostream& os, const std::vector<FunctionSpec>& specs);
void write_evaluation_csv(std::ostream& os, const std::vector<FunctionSpec>& specs, const SimplexPoint& x);
void write_csv(std::ostream& os, const SolveResult& result);
void write_csv(std::ostream& os, const std::vector<AuditReport>& reports);

// Reals separated by whitespace or commas.
std::vector<double> parse_reals(const std::string& text);
SimplexPoint read_point(const std::string& path);
Moebius moebius_from_reals(const std::vector<double>& v);

}  // namespace loxo
