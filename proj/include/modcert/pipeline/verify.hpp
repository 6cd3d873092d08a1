#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "modcert/bounds/bounds.hpp"
#include "modcert/congruence/algebraic_integer.hpp"
#include "modcert/congruence/trace_system.hpp"
#include "modcert/json_util.hpp"
#include "modcert/pipeline/remote.hpp"
#include "modcert/qexpansion/newform.hpp"

namespace modcert::pipeline {

using arith::BigInt;

struct TraceSourceSpec {
    enum class Kind { TraceFile, FiberProduct };
    Kind kind = Kind::TraceFile;
    std::filesystem::path path;
};

struct NewformSourceSpec {
    enum class Kind { Eta, Table, Remote };
    Kind kind = Kind::Eta;
    std::filesystem::path path;  // eta / table fixtures
    std::string label;           // remote
};

struct VerificationConfig {
    TraceSourceSpec trace_source;
    NewformSourceSpec newform_source;
    std::optional<BigInt> residual_prime;  // nullopt = auto
    bounds::BoundPolicy bound_policy = bounds::BoundPolicy::default_policy();
    std::optional<std::uint64_t> q_cap;
    bool character_scan = true;
    std::uint32_t max_character_order = 8;
    std::filesystem::path fixture_dir;
    RemoteOptions remote;
    unsigned threads = 1;
};

/// Config JSON:
///   {"trace_source": {"kind": "trace_file" | "fiber_product", "path": ...},
///    "newform_source": {"kind": "eta" | "table" | "remote", "path" | "label": ...},
///    "residual_prime": "auto" | integer, "bound_policy": "power:1:2" | {...},
///    "q_cap": integer (optional), "character_scan": bool}
/// Relative paths resolve against `fixture_dir`.
VerificationConfig config_from_json(const json& j, const std::filesystem::path& fixture_dir);
json config_to_json(const VerificationConfig& cfg);

enum class PrimeVerdict { Equal, NotCongruent, CongruenceOnly };
std::string verdict_name(PrimeVerdict v);

struct PrimeRecord {
    std::uint64_t q = 0;
    std::int64_t trace_x = 0;
    congruence::AlgebraicInteger trace_f;
    bool congruent = false;
    PrimeVerdict verdict = PrimeVerdict::CongruenceOnly;
    BigInt threshold;
};

struct FinalVerdict {
    enum class Kind { VerifiedUpTo, CongruenceFails, PreconditionUnmet };
    Kind kind = Kind::PreconditionUnmet;
    BigInt bound;           // VerifiedUpTo
    std::uint64_t q = 0;    // CongruenceFails
    std::string reason;     // PreconditionUnmet
};

struct ScanSummary {
    bool enabled = false;
    bool ran = false;
    bool pattern_found = false;
    std::size_t characters_scanned = 0;
    std::string character;  // label of the hit
    std::uint32_t embedding_power = 0;
    std::string note;
};

struct SturmReport {
    std::uint64_t sturm = 0;
    std::optional<std::uint64_t> verified_up_to;
    bool covered = false;
    std::optional<std::string> annotation;
};

/// Whether the contiguous run of Equal verdicts reaches the Sturm bound of
/// weight k at level C; if so the certificate records that the coefficient
/// field of f is Q (an inference, not re-proved here).
SturmReport sturm_rationality_report(std::optional<std::uint64_t> verified_up_to, std::uint64_t level, int weight);
SturmReport sturm_rationality_report(const congruence::TraceSystem& T, const qexpansion::NewformDescriptor& f,
                                     const BigInt& b_prime, const std::vector<PrimeRecord>& records);

struct ModularityCertificate {
    std::string inputs_digest;
    std::optional<bounds::BoundCertificate> bounds;
    std::string mode = "desk-scale";  // full | desk-scale
    bool congruence_only = false;
    std::optional<BigInt> residual_prime;
    bool residual_prime_auto = false;
    std::optional<std::uint64_t> q_cap;
    std::optional<BigInt> effective_bound;
    std::vector<PrimeRecord> records;
    ScanSummary scan;
    std::optional<SturmReport> sturm_report;
    FinalVerdict verdict;
    std::vector<std::string> notes;
    std::string newform_label;
    std::string newform_source;
};

json certificate_to_json(const ModularityCertificate& c);
/// Stable serialization (sorted keys, 2-space indent, trailing newline).
std::string certificate_to_string(const ModularityCertificate& c);

struct VerifyOptions {
    std::optional<BigInt> residual_prime;
    bounds::BoundPolicy bound_policy = bounds::BoundPolicy::default_policy();
    std::optional<std::uint64_t> q_cap;
    bool character_scan = true;
    std::uint32_t max_character_order = 8;
    BigInt bad_floor = 0;
    unsigned threads = 1;
};

/// Compares a trace system with a candidate newform. Module errors become
/// PreconditionUnmet verdicts; nothing here throws for bad inputs.
ModularityCertificate verify_traces(const congruence::TraceSystem& T, const qexpansion::NewformDescriptor& f,
                                    const VerifyOptions& opts);

/// Loads both sides from the configured sources, then verify_traces.
ModularityCertificate run_verification(const VerificationConfig& cfg);

}  // namespace modcert::pipeline
