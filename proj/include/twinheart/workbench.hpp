#pragma once

// Substrate loading, the per-twin property suite and run persistence.
//
// A run directory holds:
//   run.json                      config, substrates, per-row tallies
//   summary.txt                   human-readable verdict tables
//   pairs/<substrate>.json        cotorsion-pair catalog (cache)
//   twins/<substrate>/<key>.json  one record per twin, one row per property
//   counterexamples/<file>.json   replayable payload for each failing row
//   traces/<substrate>/<key>.txt  construction traces for K_C and Z_C
//   timing.json                   wall-clock per substrate and row
// Everything except timing.json is a deterministic function of the
// config and the substrates.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "twinheart/verify.hpp"

namespace twinheart {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "nakayama:m,n,p" or the path of a structure file.
struct Substrate {
    std::string spec;
    std::string name;  // file-system safe
    std::unique_ptr<TriangulatedStructure> t;
};

Substrate load_substrate(const std::string& spec);
// The Nakayama grid {1,2,3} x {2,3,4} over F_2 and F_3, then the given fixtures.
std::vector<std::string> default_substrates(const std::vector<std::string>& fixtures);

// FNV-1a of the canonical encoding; keys the pair-catalog cache.
std::string substrate_digest(const TriangulatedStructure& t);

enum class CachePolicy { use, refresh, off };

struct RunConfig {
    VerifyOptions verify;
    EnumerationOptions enumeration;
    int brute_force_max = 8;
    int jobs = 1;
    std::string out_dir;  // empty: nothing is written
    CachePolicy cache = CachePolicy::use;
    // all | single | nonzero-heart | <twin key>
    std::string twin_filter = "all";
    int trace_limit = 16;  // twins per substrate with construction traces
};

// Config file fields mirror RunConfig; unknown keys are an InputError.
// config_json records only what can change results, so jobs, out_dir and
// the cache policy are left out.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);
nlohmann::json config_json(const RunConfig& cfg);

// "must" rows must hold; "finding" rows are reported with no expectation.
struct Row {
    std::string name;
    Verdict verdict = Verdict::holds;
    bool must = true;
    std::string note;
    nlohmann::json counterexample;  // null unless fails / indeterminate
    SearchStats stats;
    double seconds = 0;
};

struct TwinResult {
    std::string key;
    bool single = false;
    PairFlags first_flags, second_flags;
    Verdict star_condition = Verdict::indeterminate;
    std::vector<std::string> heart_objects;  // nonzero indecomposables of H̄
    std::vector<Row> rows;
    nlohmann::json sets;  // S, T, U, V, W, C-, C+, H as bit keys
    std::string trace;
    double seconds = 0;

    const Row* row(const std::string& name) const;
};

struct SubstrateResult {
    std::string spec, name;
    int indecomposables = 0;
    std::vector<Row> rows;  // substrate-level checks
    std::size_t pairs = 0, twins_total = 0;
    std::vector<TwinResult> twins;  // after the filter
    std::vector<std::string> findings;
    double seconds = 0;
};

// Rebuilds the twin named by its key ("<S bits>/<U bits>").
TwinCotorsionPair twin_from_key(const TriangulatedStructure& t, const std::string& key);

TwinResult evaluate_twin(const TriangulatedStructure& t, const TwinCotorsionPair& twin, const RunConfig& cfg);
SubstrateResult run_substrate(const Substrate& s, const RunConfig& cfg);

// Worst verdict over the must rows: 0 holds, 1 fails, 2 indeterminate.
int exit_code(const std::vector<SubstrateResult>& results);

// Writes every artifact of the run under cfg.out_dir.
void write_run(const std::vector<SubstrateResult>& results, const RunConfig& cfg);
std::string render_summary(const std::vector<SubstrateResult>& results);

nlohmann::json twin_json(const TwinResult& r);
nlohmann::json row_json(const Row& r);
Row row_from_json(const nlohmann::json& j);

struct ReportCheck {
    std::string summary;  // regenerated summary text
    std::vector<std::string> problems;  // inconsistencies found in the run dir
    int exit = 0;
};
// Re-reads a run directory, re-renders the summary and replays every stored
// counterexample against a freshly built substrate and twin.
ReportCheck check_report(const std::string& run_dir);

// Replays one counterexample file; returns the verdict it reproduces.
Verdict replay_counterexample(const nlohmann::json& payload);

}  // namespace twinheart
