#pragma once

// Scenario runners behind the command line: ensemble files, the
// elimination-protocol report, the (a)/(b)/(c) classifier and UPB reports.
//
// Ensemble file:
//   { "id": "...",
//     "states": [ { "label"?, "dim_a", "dim_b", "amplitudes" | "matrix" }, ... ],
//     "upb_source"?: { "upb": <UPB>, "copies": n, "sigma_index": i } }
//
// `upb_source` records that member `sigma_index` was built as the normalized
// projector onto span(upb)^(x)n; the classifier re-checks that claim.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locclab/elimination.hpp"
#include "locclab/serialize.hpp"
#include "locclab/upb.hpp"
#include "locclab/witness.hpp"

namespace locc {

enum class OutputFormat { Json, Csv };

struct RunConfig {
    std::uint64_t seed = 1;
    int trials = 1000;
    SeesawConfig seesaw{};
    int max_copies = kDefaultCopyCap;
    bool allow_large = false;
    OutputFormat format = OutputFormat::Json;
    bool timestamp = true;
};

void validate(const RunConfig& cfg);

struct UpbSource {
    UpbCandidate upb;
    int copies = 1;
    int sigma_index = 0;
};

struct EnsembleFile {
    std::string id;
    std::vector<std::string> labels;
    std::vector<DensityOperator> members;
    std::vector<std::optional<PureState>> pure_forms;  // set when the member is rank one
    std::optional<UpbSource> upb_source;

    bool all_pure() const;
    EnsemblePure as_pure() const;  // throws ValidationError when some member is mixed
};

EnsembleFile ensemble_from_json(const json& j);
json to_json(const EnsembleFile& e);
EnsembleFile ensemble_from_sigma_rho(const SigmaRhoEnsemble& ens, const std::string& id);

// ---------------------------------------------------------------------------

struct DistinguishReport {
    std::string ensemble_id;
    int ensemble_size = 0;
    std::optional<int> true_index;
    std::uint64_t seed = 0;
    TrialStats stats;
    std::optional<ProtocolResult> example;  // transcript of trial 0
};

DistinguishReport run_distinguish(const EnsembleFile& e, std::optional<int> true_index, const RunConfig& cfg);

// ---------------------------------------------------------------------------

enum class EnsembleClass { A, B, CCandidate, Undetermined };

std::string to_string(EnsembleClass c);

struct WitnessEvidence {
    int copies = 1;
    WitnessReport report;
};

struct ClassificationResult {
    std::string ensemble_id;
    std::vector<int> n_copies_tested;
    EnsembleClass class_label = EnsembleClass::Undetermined;
    bool upb_certified = false;  // contains the normalized projector onto a verified UPB subspace
    std::optional<TrialStats> protocol;
    std::vector<WitnessEvidence> witnesses;
    std::uint64_t seed = 0;
};

ClassificationResult classify(const EnsembleFile& e, const RunConfig& cfg);

// ---------------------------------------------------------------------------

json report_json(const DistinguishReport& r, const RunConfig& cfg);
json report_json(const ClassificationResult& r, const RunConfig& cfg);
json report_json(const UpbVerdict& v, const UpbCandidate& c, const RunConfig& cfg);

// CSV columns: ensemble_id,n,target,verdict,best_overlap,seed
std::string report_csv(const ClassificationResult& r);
std::string report_csv(const UpbVerdict& v, const UpbCandidate& c);
// CSV columns: ensemble_id,copies_used,frequency,seed
std::string report_csv(const DistinguishReport& r);

std::string utc_timestamp();

}  // namespace locc
