#pragma once

#include "hjdecay/certificate.hpp"

#include <json.hpp>

#include <filesystem>

namespace hjd {

using Json = nlohmann::json;

// -- hamiltonians -----------------------------------------------------------
// {"variant": "...", "dim": n, "params": {...}}
Json hamiltonian_to_json(const Hamiltonian& H);
Hamiltonian hamiltonian_from_json(const Json& j);

// -- trigonometric polynomials ----------------------------------------------
// {"dim": n, "base_generators": ["1","sqrt2",...],
//  "terms": [{"freq": [[num,den],...], "re": r, "im": i}]}
// freq is flat over axis-major (generator inner) order: index = axis*r + gen.
Json trigpoly_to_json(const TrigPolynomial& u);
TrigPolynomial trigpoly_from_json(const Json& j);

// -- sampled convex functions -------------------------------------------------
// JSON header + CSV payload (index columns then value, row-major; masked-out
// rows carry "inf").
void write_sampled(const SampledConvex& s, const std::filesystem::path& header_path);
SampledConvex read_sampled(const std::filesystem::path& header_path);

// -- reports ------------------------------------------------------------------
Json nd_report_to_json(const NDReport& r);
Json certificate_to_json(const DecayCertificate& c);
Json certificate_result_to_json(const CertificateResult& r);

// -- solution fields ----------------------------------------------------------
void write_field_csv(const SolutionField& f, const std::filesystem::path& csv_path);
Json field_sidecar_json(const SolutionField& f, const Json& tolerances);

// -- small file helpers ---------------------------------------------------------
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

} // namespace hjd
