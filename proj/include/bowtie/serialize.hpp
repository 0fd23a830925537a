#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bowtie/amalgam.hpp"
#include "bowtie/spec_poset.hpp"
#include "bowtie/spectra_props.hpp"

namespace bowtie {

using Json = nlohmann::ordered_json;

using Object = std::variant<RingPtr, ModulePtr, RingHom, IdealSet, AmalgamationRing, SpectralPoset,
                            AmalgamSpectrumData>;

/// Kind tag used in the envelope: "ring", "module", "hom", ...
std::string kind_of(const Object& o);

/**
 * A parsed input file. The file holds one envelope object or an array of
 * them; later objects refer to earlier ones by "name". The last object is
 * the subject of a command.
 */
struct Document {
    std::map<std::string, Object> named;
    std::vector<Object> objects;

    const Object& subject() const;
};

/// Throws InputError with a JSON-pointer-like location on bad input.
Document parse_document(const Json& j);
Document load_document(const std::string& path);
Json load_json(const std::string& path);

/// Canonical explicit forms; parse_document accepts all of them back.
Json to_json(const FiniteRing& r);
Json to_json(const FiniteModule& m);
Json to_json(const RingHom& f);
Json to_json(const IdealSet& i);
Json to_json(const AmalgamationRing& a);
Json to_json(const SpectralPoset& p);
Json to_json(const AmalgamSpectrumData& d);
Json to_json(const Object& o);

Json to_json(const LemmaReport& r);
Json to_json(const DagCount& d);
Json to_json(const DecideResult& d);

}  // namespace bowtie
