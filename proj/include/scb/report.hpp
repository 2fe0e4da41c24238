#pragma once

// Serialization of verdicts and results. JSON reports share one schema:
// {schema_version, method, gamma | enclosure, status, mechanism, evidence,
// precision_used, horizon_used, timings}. Rationals are exact "p/q" strings;
// interval endpoints are decimal strings rounded outward.

#include "scb/reference.hpp"

#include <json.hpp>

namespace scb {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Method& m);
Json to_json(const Interval& x, int digits = 20);
Json to_json(const ComplexBox& z, int digits = 20);
Json to_json(const TailCertificate& t);
Json to_json(const ClosedForm& cf, int digits = 20);
Json to_json(const ScbVerdict& v);
Json to_json(const ExistenceResult& e);
Json to_json(const GammaSupResult& r);

Json check_report(const Method& m, const ScbVerdict& v);
Json gamma_sup_report(const Method& m, const GammaSupResult& r, const std::optional<ReferenceCheck>& ref);
Json tau_report(const Method& m, const std::vector<Rational>& tau, const ExistenceResult& e);

/// Flattens a report to "field,value" rows with dotted paths.
std::string to_csv(const Json& report);
/// Indented "field: value" lines.
std::string to_text(const Json& report);

}  // namespace scb
