#include "bowtie/dot.hpp"

#include <sstream>

namespace bowtie {
namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string hasse_dot(const SpectralPoset& p, const std::string& graph_name, const std::vector<PrimeType>& tags) {
    std::ostringstream os;
    os << "digraph " << quoted(graph_name) << " {\n";
    os << "  rankdir=BT;\n";
    os << "  node [fontname=\"Helvetica\"];\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        os << "  n" << i << " [label=" << quoted(p.labels[i]);
        if (!tags.empty()) os << ", shape=" << (tags[i] == PrimeType::Type1 ? "box" : "ellipse");
        if (p.is_maximal(i)) os << ", style=\"filled,bold\", fillcolor=\"lightgoldenrod\"";
        os << "];\n";
    }
    for (auto [a, b] : covers(p)) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

std::string hasse_dot(const AmalgamPoset& a, const std::string& graph_name) {
    return hasse_dot(a.poset, graph_name, a.tags);
}

}  // namespace bowtie
