#pragma once

#include <json.hpp>

#include "deltaset/delta_measure.hpp"
#include "deltaset/hilbert_vdc.hpp"
#include "deltaset/ramsey.hpp"

namespace deltaset {

using json = nlohmann::json;

// Sets serialize as sorted integer arrays.
json set_to_json(const ElementSet& s);
ElementSet set_from_json(const json& j, int universe);

json rational_to_json(const Rational& r);

/// Accepts either a descriptor ({"kind": "cyclic"|"catalog"|"table"|
/// "truncated_nat"|"product", ...}) or a raw Cayley-table object
/// ({"name", "size", "identity", "table"}).
Semigroup semigroup_from_json(const json& j);
json semigroup_to_json(const Semigroup& s);

/// {"kind": "uniform"|"frechet"|"density"|"ip_star"|"principal"|"conull", ...}
/// default_budget backs ip_star searches when the descriptor carries none.
FilterOracle oracle_from_json(const json& j, const Semigroup& s,
                              uint64_t default_budget = kDefaultFpBudget);

/// {"kind": "counting"} or {"kind": "upper_density", "windows": [[lo,hi],...]}
SubadditiveMeasure measure_from_json(const json& j, const Semigroup& s);

std::vector<ElementSet> windows_from_json(const json& j, int carrier);

/// {"size", "edges": [[a,b],...]} or {"size", "matrix": [[0/1,...],...]}
Relation relation_from_json(const json& j);
json relation_to_json(const Relation& r);

VectorFamily family_from_json(const json& j, int carrier);
json family_to_json(const VectorFamily& f);

FiniteAction action_from_json(const json& j);

json transcript_to_json(const RamseyTranscript& t);
json transcript_report_to_json(const TranscriptReport& r);
json tree_to_json(const DerivationTree& t);
json profile_to_json(const RecurrenceProfile& p);
json respects_report_to_json(const RespectsReport& r);
json audit_report_to_json(const MeasureAuditReport& r);
json qrec_to_json(const QuantitativeRecurrence& q);
json union_bound_to_json(const UnionBoundReport& r);
json fp_certificate_to_json(const FpShiftCertificate& c);
json chain_report_to_json(const BesselChainReport& r);
json triple_report_to_json(const TripleIdentityReport& r);
json extraction_to_json(const IpExtraction& e);

/// FNV-1a over the canonical dump; stable for identical configs.
std::string json_fnv1a_hex(const json& j);

}  // namespace deltaset
