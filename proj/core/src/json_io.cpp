#include "repalign/json_io.hpp"

#include <fstream>
#include <sstream>

#include "repalign/errors.hpp"

namespace repalign {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw FormatError(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
    return *it;
}

std::size_t size_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

const Json& array_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_array()) throw FormatError(std::string("field '") + key + "' must be an array");
    return v;
}

Json size_list(const std::vector<std::size_t>& v) {
    Json out = Json::array();
    for (auto x : v) out.push_back(x);
    return out;
}

} // namespace

Json to_json(const Rational& q) { return rational_to_string(q); }

Json to_json(const Domain& domain) {
    Json j;
    switch (domain.kind()) {
    case DomainKind::prime_field:
        j["kind"] = "prime_field";
        j["p"] = domain.modulus();
        break;
    case DomainKind::rational:
        j["kind"] = "rational";
        break;
    case DomainKind::floating:
        j["kind"] = "float";
        j["tau"] = domain.tolerance();
        break;
    }
    return j;
}

Domain domain_from_json(const Json& j) {
    const Json& kind = field(j, "kind");
    if (!kind.is_string()) throw FormatError("domain kind must be a string");
    const auto k = kind.get<std::string>();
    if (k == "prime_field") {
        const Json& p = field(j, "p");
        if (!p.is_number_unsigned()) throw FormatError("prime modulus must be a positive integer");
        return Domain::prime_field(p.get<std::uint64_t>());
    }
    if (k == "rational") return Domain::rational();
    if (k == "float") {
        if (!j.contains("tau")) return Domain::floating();
        const Json& tau = j["tau"];
        if (!tau.is_number()) throw FormatError("float tolerance must be a number");
        return Domain::floating(tau.get<double>());
    }
    throw FormatError("unknown domain kind '" + k + "'");
}

Json to_json(const Matrix& m) {
    Json j;
    j["domain"] = to_json(m.domain());
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, Rational>) {
                        row.push_back(rational_to_string(x));
                    } else {
                        row.push_back(x);
                    }
                },
                m.at(r, c));
        }
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

Matrix matrix_from_json(const Json& j) {
    const Domain domain = domain_from_json(field(j, "domain"));
    const std::size_t rows = size_field(j, "rows");
    const std::size_t cols = size_field(j, "cols");
    const Json& entries = array_field(j, "entries");
    if (entries.size() != rows) throw FormatError("matrix entries do not match 'rows'");
    std::vector<Scalar> values;
    values.reserve(rows * cols);
    for (const auto& row : entries) {
        if (!row.is_array() || row.size() != cols) throw FormatError("matrix row does not match 'cols'");
        for (const auto& e : row) {
            switch (domain.kind()) {
            case DomainKind::prime_field:
                if (!e.is_number_unsigned() || e.get<std::uint64_t>() >= domain.modulus()) {
                    throw FormatError("prime-field entries must be integers in [0, p)");
                }
                values.emplace_back(e.get<std::uint64_t>());
                break;
            case DomainKind::rational:
                if (e.is_string()) {
                    values.emplace_back(rational_from_string(e.get<std::string>()));
                } else if (e.is_number_integer()) {
                    values.emplace_back(Rational(e.get<long>()));
                } else {
                    throw FormatError("rational entries must be \"num/den\" strings or integers");
                }
                break;
            case DomainKind::floating:
                if (!e.is_number()) throw FormatError("float entries must be numbers");
                values.emplace_back(e.get<double>());
                break;
            }
        }
    }
    return Matrix::from_scalars(domain, rows, cols, values);
}

Json to_json(const MdsCode& code) {
    Json j;
    j["n"] = code.n();
    j["k"] = code.k();
    j["beta"] = code.beta();
    j["index_base"] = 1;
    j["domain"] = to_json(code.domain());
    Json blocks = Json::array();
    for (const auto& row : code.blocks()) {
        Json out = Json::array();
        for (const auto& b : row) out.push_back(to_json(b));
        blocks.push_back(std::move(out));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

MdsCode code_from_json(const Json& j) {
    if (j.contains("index_base") && j["index_base"] != 1) throw FormatError("only index_base 1 is supported");
    const Domain domain = domain_from_json(field(j, "domain"));
    std::vector<std::vector<Matrix>> blocks;
    for (const auto& row : array_field(j, "blocks")) {
        if (!row.is_array()) throw FormatError("'blocks' must be an array of arrays");
        auto& out = blocks.emplace_back();
        for (const auto& b : row) out.push_back(matrix_from_json(b));
    }
    return MdsCode(size_field(j, "n"), size_field(j, "k"), size_field(j, "beta"), domain, std::move(blocks));
}

Json to_json(const Provenance& p) {
    Json j;
    j["construction"] = p.construction;
    j["seed"] = p.seed;
    if (p.delta) j["delta"] = *p.delta;
    return j;
}

Provenance provenance_from_json(const Json& j) {
    Provenance p;
    const Json& c = field(j, "construction");
    if (!c.is_string()) throw FormatError("provenance construction must be a string");
    p.construction = c.get<std::string>();
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw FormatError("provenance seed must be an unsigned integer");
        p.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("delta")) p.delta = size_field(j, "delta");
    return p;
}

Json to_json(const RepairStrategy& s) {
    Json j;
    j["failed_node"] = s.failed_node();
    Json mats = Json::array();
    for (const auto& m : s.matrices()) mats.push_back(to_json(m));
    j["matrices"] = std::move(mats);
    if (s.provenance()) j["provenance"] = to_json(*s.provenance());
    return j;
}

RepairStrategy strategy_from_json(const Json& j) {
    std::vector<Matrix> mats;
    for (const auto& m : array_field(j, "matrices")) mats.push_back(matrix_from_json(m));
    std::optional<Provenance> prov;
    if (j.contains("provenance")) prov = provenance_from_json(j["provenance"]);
    return RepairStrategy(size_field(j, "failed_node"), std::move(mats), std::move(prov));
}

Json to_json(const RepairReport& r) {
    Json j;
    j["failed_node"] = r.failed_node;
    j["feasible"] = r.feasible;
    j["interference_nodes"] = size_list(r.interference_nodes);
    j["interference_ranks"] = size_list(r.interference_ranks);
    j["interference_sum"] = r.interference_sum();
    j["parity_download"] = r.parity_download;
    j["total_download"] = r.total_download();
    if (r.feasible) {
        j["overhead"] = rational_to_string(r.overhead);
    } else {
        j["overhead"] = nullptr;
    }
    return j;
}

Json to_json(const ChannelInstance& chan) {
    Json j;
    j["L"] = chan.L();
    j["N"] = chan.N();
    j["K"] = chan.K();
    j["structure"] = to_string(chan.structure());
    j["domain"] = to_json(chan.domain());
    Json legit = Json::array();
    for (const auto& m : chan.legit_blocks()) legit.push_back(to_json(m));
    j["legit"] = std::move(legit);
    Json eaves = Json::array();
    for (const auto& row : chan.eaves_blocks()) {
        Json out = Json::array();
        for (const auto& m : row) out.push_back(to_json(m));
        eaves.push_back(std::move(out));
    }
    j["eaves"] = std::move(eaves);
    return j;
}

ChannelInstance channel_from_json(const Json& j) {
    const Json& structure = field(j, "structure");
    if (!structure.is_string()) throw FormatError("'structure' must be a string");
    const Domain domain = domain_from_json(field(j, "domain"));
    std::vector<Matrix> legit;
    for (const auto& m : array_field(j, "legit")) legit.push_back(matrix_from_json(m));
    std::vector<std::vector<Matrix>> eaves;
    for (const auto& row : array_field(j, "eaves")) {
        if (!row.is_array()) throw FormatError("'eaves' must be an array of arrays");
        auto& out = eaves.emplace_back();
        for (const auto& m : row) out.push_back(matrix_from_json(m));
    }
    return ChannelInstance(size_field(j, "L"), size_field(j, "N"), size_field(j, "K"), domain, std::move(legit),
                           std::move(eaves), parse_structure(structure.get<std::string>()));
}

Json to_json(const BeamformingSet& v) {
    Json j;
    Json mats = Json::array();
    for (const auto& m : v.mats()) mats.push_back(to_json(m));
    j["mats"] = std::move(mats);
    if (v.provenance()) j["provenance"] = to_json(*v.provenance());
    return j;
}

BeamformingSet beamforming_from_json(const Json& j) {
    std::vector<Matrix> mats;
    for (const auto& m : array_field(j, "mats")) mats.push_back(matrix_from_json(m));
    std::optional<Provenance> prov;
    if (j.contains("provenance")) prov = provenance_from_json(j["provenance"]);
    return BeamformingSet(std::move(mats), std::move(prov));
}

Json to_json(const SdofReport& r) {
    Json j;
    j["side"] = r.side;
    j["legit_rank"] = r.legit_rank;
    j["eaves_ranks"] = size_list(r.eaves_ranks);
    j["max_eaves_rank"] = r.max_eaves_rank;
    j["eta"] = rational_to_string(r.eta);
    j["outer_bound"] = rational_to_string(r.outer_bound);
    j["meets_outer_bound"] = r.meets_outer_bound;
    return j;
}

Json to_json(const MappingRecord& r) {
    Json j;
    j["direction"] = to_string(r.direction);
    j["n"] = r.n;
    j["k"] = r.k;
    j["beta"] = r.beta;
    j["L"] = r.L;
    j["N"] = r.N;
    j["K"] = r.K;
    j["node"] = r.node;
    j["eavesdropper_pieces"] = size_list(r.eavesdropper_pieces);
    if (r.is_mds) j["is_mds"] = *r.is_mds;
    return j;
}

Json to_json(const Bounds& b) {
    Json j;
    j["low"] = rational_to_string(b.low);
    j["high"] = rational_to_string(b.high);
    return j;
}

Json to_json(const EquivalenceReport& r) {
    Json j;
    j["mapping"] = to_json(r.mapping);
    j["optimal_sum"] = r.optimal_sum;
    j["optimal_max"] = r.optimal_max;
    j["optimal_delta"] = rational_to_string(r.optimal_delta);
    j["optimal_eta"] = rational_to_string(r.optimal_eta);
    j["repair_optimal_count"] = r.repair_optimal_count;
    j["beam_optimal_count"] = r.beam_optimal_count;
    j["repair_candidates"] = r.repair_candidates;
    j["beam_candidates"] = r.beam_candidates;
    j["sum_equals_scaled_max"] = r.sum_equals_scaled_max;
    j["optimal_sets_coincide"] = r.optimal_sets_coincide;
    j["hypothesis_holds"] = r.hypothesis_holds;
    j["optimal_values_match"] = r.optimal_values_match;
    return j;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path.string() + "'");
    out << dump(j);
    if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace repalign
