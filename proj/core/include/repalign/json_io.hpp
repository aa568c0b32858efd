#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "repalign/bridge.hpp"
#include "repalign/mds_code.hpp"
#include "repalign/repair.hpp"
#include "repalign/wiretap.hpp"

namespace repalign {

/// Insertion-ordered so that dumps are byte-stable.
using Json = nlohmann::ordered_json;

// Every *_from_json throws `FormatError` on malformed input.

Json to_json(const Domain& domain);
Domain domain_from_json(const Json& j);

/// {"domain", "rows", "cols", "entries": [[...], ...]}; prime entries are
/// integers, rationals are "num/den" strings, floats are numbers.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const MdsCode& code);
MdsCode code_from_json(const Json& j);

Json to_json(const Provenance& p);
Provenance provenance_from_json(const Json& j);

Json to_json(const RepairStrategy& s);
RepairStrategy strategy_from_json(const Json& j);

Json to_json(const RepairReport& r);

Json to_json(const ChannelInstance& chan);
ChannelInstance channel_from_json(const Json& j);

Json to_json(const BeamformingSet& v);
BeamformingSet beamforming_from_json(const Json& j);

Json to_json(const SdofReport& r);
Json to_json(const MappingRecord& r);
Json to_json(const Bounds& b);
Json to_json(const EquivalenceReport& r);

Json to_json(const Rational& q);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

} // namespace repalign
