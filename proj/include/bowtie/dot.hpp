#pragma once

#include <string>
#include <vector>

#include "bowtie/amalgam.hpp"
#include "bowtie/spec_poset.hpp"

namespace bowtie {

/// Hasse diagram in DOT. With `tags`, type 1 nodes are boxes and type 2
/// nodes ellipses; maximal elements are filled.
std::string hasse_dot(const SpectralPoset& p, const std::string& graph_name,
                      const std::vector<PrimeType>& tags = {});

std::string hasse_dot(const AmalgamPoset& a, const std::string& graph_name);

}  // namespace bowtie
