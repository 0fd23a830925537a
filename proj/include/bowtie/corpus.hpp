#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bowtie/serialize.hpp"

namespace bowtie {

/// What `bowtie verify` generates and checks. Every field has a default;
/// a JSON corpus file overrides only the fields it names.
struct CorpusSpec {
    std::vector<std::size_t> zn;
    /// Products A×B for every unordered pair (with repetition) of these.
    std::vector<std::size_t> product_factors;
    /// Z_n / I for every nonzero proper ideal I.
    std::vector<std::size_t> quotients_of;
    /// Z_n ⋉ Z_n for 2 <= n <= trivext_max.
    std::size_t trivext_max = 6;
    bool amalgams = true;
    /// Enumerate every hom R → S; otherwise only the natural one.
    bool all_homs = true;
    std::size_t carrier_cap = 256;
    bool builtin_posets = true;
    std::vector<std::string> poset_files;
    /// Extra ring documents (explicit tables or shorthands), checked like
    /// generated rings; a malformed one is reported and isolated.
    std::vector<Json> extra_rings;
    std::uint64_t fuzz_seed = 7;
    std::size_t fuzz_count = 10000;
    std::size_t fuzz_max_size = 6;
};

CorpusSpec default_corpus();
/// Throws InputError on unknown fields or wrong types.
CorpusSpec corpus_from_json(const Json& j);
Json to_json(const CorpusSpec& c);

/// Spectrum data with one prime of S under two maximal ideals of the
/// amalgam: not pm, and its single count is 1 + 1.
AmalgamSpectrumData fixture_not_pm_shared_prime();
/// Duplication model over a two-point antichain with J maximal: pm.
AmalgamSpectrumData fixture_pm_antichain_duplication();

struct RunOptions {
    std::size_t cap = kDefaultEnumerationCap;
    std::uint64_t seed = 0;
    std::size_t family_size = 0;
    /// Progress and timing lines; nullptr for silence.
    std::ostream* log = nullptr;
};

enum class Status { Pass, Fail, InputError, CapExceeded };
std::string status_name(Status s);

struct InstanceResult {
    std::string id;
    std::string kind;
    std::string name;
    Status status = Status::Pass;
    std::vector<LemmaReport> reports;
    std::string error;
};

struct VerificationRun {
    std::vector<InstanceResult> instances;
    std::size_t skipped_over_cap = 0;
    /// Deterministic: no timings.
    Json report;
    int exit_code = 0;
};

/// Exit codes: 0 pass, 1 theorem violation, 2 input error, 3 resource cap.
int exit_code_for(const std::vector<InstanceResult>& instances);

/// Concrete amalgamations of the corpus (id, amalgam), generated in a fixed
/// order. Carriers above `cap` are skipped and counted.
struct GeneratedAmalgam {
    std::string id;
    AmalgamationRing amalgam;
};
struct GeneratedRing {
    std::string id;
    RingPtr ring;
};
struct GeneratedCorpus {
    std::vector<GeneratedRing> rings;
    std::vector<GeneratedAmalgam> amalgams;
    std::vector<InstanceResult> errors;
    std::size_t skipped_over_cap = 0;
};
GeneratedCorpus generate_corpus(const CorpusSpec& spec, std::size_t cap);

/// Every report for one concrete amalgamation.
std::vector<LemmaReport> verify_amalgam(const AmalgamationRing& a, const VerifyOptions& opts);

/// Abstract checks for one spectrum data instance.
LemmaReport verify_spectrum_data(const AmalgamSpectrumData& d, const std::string& name);

/// Fuzzed abstract pm criterion over `count` instances.
LemmaReport verify_fuzz(std::uint64_t seed, std::size_t count, std::size_t max_size);

VerificationRun run_verification(const CorpusSpec& spec, const RunOptions& opts);

}  // namespace bowtie
