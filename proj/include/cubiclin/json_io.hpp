#pragma once

// JSON wire formats. Rationals travel as canonical "p" / "p/q" strings so
// round-trips are lossless; matrices are {"rows": [[...], ...]}, vectors
// {"coords": [...]}. Loaders re-verify embedded certificates.

#include <json.hpp>

#include "cubiclin/class_probe.hpp"
#include "cubiclin/family.hpp"
#include "cubiclin/properness.hpp"

namespace cubiclin {

using Json = nlohmann::json;

Json to_json(const Rat& q);
Json to_json(const Vec& v);
Json to_json(const FloatVec& v);
Json to_json(const Mat& m);
Json to_json(const SubspaceBasis& b);
Json to_json(const PropernessCertificate& c);
Json to_json(const DruzkowskiVerdict& v);
Json to_json(const ProbeStats& s);
Json to_json(const ClassZVerdict& v);
Json to_json(const ClassZCertificate& c);
Json to_json(const FamilyParams& p);
Json to_json(const FamilySample& s);
Json to_json(const WitnessTable& t);
Json to_json(const LiftedWitness& w);
Json to_json(const NonProperLine& l);
Json to_json(const LineSample& s);
Json to_json(const SfStructureReport& r);
Json to_json(const SfCertification& c);
Json to_json(const DecayTable& t);
Json to_json(const RefutationReport& r);

Rat parse_rat_json(const Json& j);
Vec parse_vec(const Json& j);
Mat parse_mat(const Json& j);
SubspaceBasis parse_subspace_basis(const Json& j);
PropernessCertificate parse_properness_certificate(const Json& j);
ClassZCertificate parse_class_z_certificate(const Json& j);
DruzkowskiVerdict parse_druzkowski_verdict(const Json& j);
WitnessTable parse_witness_table(const Json& j);
LiftedWitness parse_lifted_witness(const Json& j, const Mat& a);

Mat load_matrix_file(const std::string& path);

}  // namespace cubiclin
