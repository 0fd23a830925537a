#include "bowtie/serialize.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "bowtie/error.hpp"
#include "bowtie/hom.hpp"

namespace bowtie {
namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw InputError("at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) bad(path, "missing field \"" + key + "\"");
    return j.at(key);
}

std::size_t as_size(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) bad(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

std::vector<Elem> flat_table(const Json& j, std::size_t rows, std::size_t cols, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array");
    std::vector<Elem> out;
    out.reserve(rows * cols);
    if (j.size() == rows && (rows == 0 || j.front().is_array())) {
        for (std::size_t r = 0; r < rows; ++r) {
            const auto& row = j[r];
            if (!row.is_array() || row.size() != cols)
                bad(at(path, r), "expected a row of " + std::to_string(cols) + " entries");
            for (std::size_t c = 0; c < cols; ++c) out.push_back(static_cast<Elem>(as_size(row[c], at(at(path, r), c))));
        }
    } else {
        if (j.size() != rows * cols) bad(path, "expected " + std::to_string(rows) + "x" + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < j.size(); ++k) out.push_back(static_cast<Elem>(as_size(j[k], at(path, k))));
    }
    return out;
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (!j[k].is_string()) bad(at(path, k), "expected a string");
        out.push_back(j[k].get<std::string>());
    }
    return out;
}

Json square(const std::vector<Elem>& flat, std::size_t rows, std::size_t cols) {
    Json out = Json::array();
    for (std::size_t r = 0; r < rows; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < cols; ++c) row.push_back(flat[r * cols + c]);
        out.push_back(std::move(row));
    }
    return out;
}

Json labels_of(const FiniteRing& r) {
    Json out = Json::array();
    for (Elem x = 0; x < r.size(); ++x) out.push_back(r.label(x));
    return out;
}

class Parser {
public:
    explicit Parser(Document& doc) : doc_(doc) {}

    Object object(const Json& j, const std::string& path) {
        if (!j.is_object()) bad(path, "expected an object");
        std::string kind;
        if (j.contains("kind")) {
            if (!j["kind"].is_string()) bad(at(path, "kind"), "expected a string");
            kind = j["kind"].get<std::string>();
        } else {
            kind = infer_kind(j, path);
        }
        if (kind == "ring") return ring_object(j, path);
        if (kind == "module") return module_object(j, path);
        if (kind == "hom") return hom_object(j, path);
        if (kind == "ideal") return ideal_in(ring(field(j, "ring", path), at(path, "ring")), j, path);
        if (kind == "amalgam") return amalgam_object(j, path);
        if (kind == "poset") return poset(j, path);
        if (kind == "specdata") return specdata(j, path);
        bad(at(path, "kind"), "unknown kind \"" + kind + "\"");
    }

private:
    static std::string infer_kind(const Json& j, const std::string& path) {
        for (const char* k : {"zn", "product", "quotient", "trivext", "add"})
            if (j.contains(k)) return "ring";
        if (j.contains("regular") || j.contains("action")) return "module";
        if (j.contains("map") || j.contains("natural") || j.contains("identity")) return "hom";
        if (j.contains("generators") || j.contains("members")) return "ideal";
        if (j.contains("R") || j.contains("duplicate")) return "amalgam";
        if (j.contains("PR")) return "specdata";
        if (j.contains("elements")) return "poset";
        bad(path, "cannot tell what kind of object this is; add \"kind\"");
    }

    template <typename T>
    const T* lookup(const std::string& name) {
        auto it = doc_.named.find(name);
        if (it == doc_.named.end()) return nullptr;
        return std::get_if<T>(&it->second);
    }

    RingPtr ring(const Json& j, const std::string& path) {
        if (j.is_string()) {
            const auto name = j.get<std::string>();
            if (auto r = lookup<RingPtr>(name)) return *r;
            if (auto a = lookup<AmalgamationRing>(name)) return a->carrier();
            static const std::regex zn(R"(Z(\d+))");
            std::smatch m;
            if (std::regex_match(name, m, zn)) return make_zn(std::stoul(m[1]));
            bad(path, "no ring named \"" + name + "\"");
        }
        if (j.is_number_integer()) return make_zn(as_size(j, path));
        auto o = object(j, path);
        if (auto r = std::get_if<RingPtr>(&o)) return *r;
        if (auto a = std::get_if<AmalgamationRing>(&o)) return a->carrier();
        bad(path, "expected a ring");
    }

    RingPtr ring_object(const Json& j, const std::string& path) {
        if (j.contains("zn")) return make_zn(as_size(j["zn"], at(path, "zn")));
        if (j.contains("product")) {
            const auto& p = j["product"];
            if (!p.is_array() || p.size() != 2) bad(at(path, "product"), "expected two factors");
            return make_product(ring(p[0], at(at(path, "product"), 0)), ring(p[1], at(at(path, "product"), 1)));
        }
        if (j.contains("quotient")) {
            auto base = ring(j["quotient"], at(path, "quotient"));
            return make_quotient(base, ideal_in(base, field(j, "ideal", path), at(path, "ideal"))).ring;
        }
        if (j.contains("trivext")) {
            auto base = ring(j["trivext"], at(path, "trivext"));
            auto m = j.contains("module") ? module(j["module"], at(path, "module")) : make_regular_module(base);
            return make_trivial_extension(base, m);
        }
        RingTables t;
        t.size = as_size(field(j, "size", path), at(path, "size"));
        t.name = j.value("name", std::string("R"));
        t.zero = static_cast<Elem>(j.contains("zero") ? as_size(j["zero"], at(path, "zero")) : 0);
        t.one = static_cast<Elem>(j.contains("one") ? as_size(j["one"], at(path, "one")) : 1);
        t.add = flat_table(field(j, "add", path), t.size, t.size, at(path, "add"));
        t.mul = flat_table(field(j, "mul", path), t.size, t.size, at(path, "mul"));
        if (j.contains("labels")) t.labels = string_list(j["labels"], at(path, "labels"));
        try {
            return FiniteRing::create(std::move(t));
        } catch (const InputError& e) {
            bad(path, e.what());
        }
    }

    ModulePtr module(const Json& j, const std::string& path) {
        if (j.is_string()) {
            if (auto m = lookup<ModulePtr>(j.get<std::string>())) return *m;
            return make_regular_module(ring(j, path));
        }
        auto o = object(j.is_object() && !j.contains("kind") && !j.contains("regular") && !j.contains("action")
                            ? Json{{"regular", j}}
                            : j,
                        path);
        if (auto m = std::get_if<ModulePtr>(&o)) return *m;
        bad(path, "expected a module");
    }

    ModulePtr module_object(const Json& j, const std::string& path) {
        if (j.contains("regular")) return make_regular_module(ring(j["regular"], at(path, "regular")));
        auto r = ring(field(j, "ring", path), at(path, "ring"));
        ModuleTables t;
        t.size = as_size(field(j, "size", path), at(path, "size"));
        t.name = j.value("name", std::string("M"));
        t.zero = static_cast<Elem>(j.contains("zero") ? as_size(j["zero"], at(path, "zero")) : 0);
        t.add = flat_table(field(j, "add", path), t.size, t.size, at(path, "add"));
        t.action = flat_table(field(j, "action", path), r->size(), t.size, at(path, "action"));
        if (j.contains("labels")) t.labels = string_list(j["labels"], at(path, "labels"));
        try {
            return FiniteModule::create(r, std::move(t));
        } catch (const InputError& e) {
            bad(path, e.what());
        }
    }

    Elem element(const FiniteRing& r, const Json& j, const std::string& path) {
        if (j.is_number_integer()) {
            const auto v = as_size(j, path);
            if (v >= r.size()) bad(path, "element index out of range for " + r.name());
            return static_cast<Elem>(v);
        }
        if (j.is_string()) {
            const auto s = j.get<std::string>();
            for (Elem x = 0; x < r.size(); ++x)
                if (r.label(x) == s) return x;
            bad(path, "no element labelled \"" + s + "\" in " + r.name());
        }
        bad(path, "expected an element index or label");
    }

    std::vector<Elem> elements(const FiniteRing& r, const Json& j, const std::string& path) {
        if (!j.is_array()) bad(path, "expected an array of elements");
        std::vector<Elem> out;
        for (std::size_t k = 0; k < j.size(); ++k) out.push_back(element(r, j[k], at(path, k)));
        return out;
    }

    // Name reference, array of generators, or {"generators"} / {"members"}.
    IdealSet ideal_in(const RingPtr& r, const Json& j, const std::string& path) {
        if (j.is_string()) {
            auto i = lookup<IdealSet>(j.get<std::string>());
            if (!i) bad(path, "no ideal named \"" + j.get<std::string>() + "\"");
            if (i->ring() != r && i->ring()->tables().add != r->tables().add)
                bad(path, "ideal \"" + j.get<std::string>() + "\" belongs to another ring");
            return IdealSet::trusted(r, i->members());
        }
        if (j.is_array()) return ideal_generate(r, elements(*r, j, path));
        if (j.contains("generators")) return ideal_generate(r, elements(*r, j["generators"], at(path, "generators")));
        if (j.contains("members")) {
            ElementSet s(r->size());
            for (auto e : elements(*r, j["members"], at(path, "members"))) s.set(e);
            try {
                return IdealSet::from_members(r, std::move(s));
            } catch (const InputError& e) {
                bad(at(path, "members"), e.what());
            }
        }
        bad(path, "expected an ideal: a name, a generator list, or {\"generators\"|\"members\"}");
    }

    RingHom hom_spec(const RingPtr& dom, const RingPtr& cod, const Json& j, const std::string& path) {
        try {
            if (j.is_string()) {
                const auto s = j.get<std::string>();
                if (s == "identity") {
                    if (dom->tables().add != cod->tables().add || dom->tables().mul != cod->tables().mul)
                        bad(path, "identity needs equal domain and codomain");
                    std::vector<Elem> map(dom->size());
                    for (Elem x = 0; x < dom->size(); ++x) map[x] = x;
                    return make_hom(dom, cod, std::move(map));
                }
                if (s == "natural") return natural_hom(dom, cod);
                if (auto f = lookup<RingHom>(s)) return make_hom(dom, cod, f->map());
                bad(path, "no hom named \"" + s + "\"");
            }
            if (j.is_array()) return make_hom(dom, cod, elements(*cod, j, path));
            if (j.is_object() && j.contains("map")) return make_hom(dom, cod, elements(*cod, j["map"], at(path, "map")));
            if (j.is_object() && j.value("natural", false)) return natural_hom(dom, cod);
            if (j.is_object() && j.value("identity", false)) return hom_spec(dom, cod, "identity", path);
        } catch (const PreconditionError& e) {
            bad(path, e.what());
        } catch (const InputError& e) {
            const std::string what = e.what();
            if (what.rfind(path, 0) == 0) throw;
            bad(path, what);
        }
        bad(path, "expected a hom: \"identity\", \"natural\", a name, or an image list");
    }

    RingHom hom_object(const Json& j, const std::string& path) {
        auto dom = ring(field(j, "domain", path), at(path, "domain"));
        auto cod = j.contains("codomain") ? ring(j["codomain"], at(path, "codomain")) : dom;
        if (j.value("identity", false)) return hom_spec(dom, cod, "identity", path);
        if (j.value("natural", false)) return hom_spec(dom, cod, "natural", path);
        return hom_spec(dom, cod, field(j, "map", path), at(path, "map"));
    }

    AmalgamationRing amalgam_object(const Json& j, const std::string& path) {
        try {
            if (j.contains("duplicate")) {
                auto r = ring(j["duplicate"], at(path, "duplicate"));
                return duplicate(r, ideal_in(r, field(j, "ideal", path), at(path, "ideal")));
            }
            if (j.contains("trivext")) {
                auto r = ring(j["trivext"], at(path, "trivext"));
                auto m = j.contains("module") ? module(j["module"], at(path, "module")) : make_regular_module(r);
                return trivial_extension_as_amalgam(r, m).amalgam;
            }
            auto r = ring(field(j, "R", path), at(path, "R"));
            auto s = j.contains("S") ? ring(j["S"], at(path, "S")) : r;
            auto f = j.contains("f") ? hom_spec(r, s, j["f"], at(path, "f")) : hom_spec(r, s, "identity", path);
            auto ideal = ideal_in(s, field(j, "J", path), at(path, "J"));
            return amalgamate(r, s, f, ideal);
        } catch (const PreconditionError& e) {
            bad(path, e.what());
        }
    }

    SpectralPoset poset(const Json& j, const std::string& path) {
        if (j.is_string()) {
            auto p = lookup<SpectralPoset>(j.get<std::string>());
            if (!p) bad(path, "no poset named \"" + j.get<std::string>() + "\"");
            return *p;
        }
        auto labels = string_list(field(j, "elements", path), at(path, "elements"));
        const auto n = labels.size();
        SpectralPoset p;
        if (j.contains("leq")) {
            const auto& m = j["leq"];
            if (!m.is_array() || m.size() != n) bad(at(path, "leq"), "expected an n×n matrix");
            p.labels = std::move(labels);
            p.leq.assign(n, std::vector<bool>(n, false));
            for (std::size_t r = 0; r < n; ++r) {
                if (!m[r].is_array() || m[r].size() != n) bad(at(at(path, "leq"), r), "expected a row of length n");
                for (std::size_t c = 0; c < n; ++c) {
                    const auto& v = m[r][c];
                    if (v.is_boolean()) p.leq[r][c] = v.get<bool>();
                    else if (v.is_number_integer()) p.leq[r][c] = v.get<int>() != 0;
                    else bad(at(at(at(path, "leq"), r), c), "expected a boolean");
                }
            }
        } else {
            std::vector<std::pair<std::size_t, std::size_t>> less;
            const auto& l = j.contains("less") ? j["less"] : Json::array();
            for (std::size_t k = 0; k < l.size(); ++k) {
                auto pair = string_list(l[k], at(at(path, "less"), k));
                if (pair.size() != 2) bad(at(at(path, "less"), k), "expected [lower, upper]");
                std::size_t a = std::find(labels.begin(), labels.end(), pair[0]) - labels.begin();
                std::size_t b = std::find(labels.begin(), labels.end(), pair[1]) - labels.begin();
                if (a == n || b == n) bad(at(at(path, "less"), k), "unknown element");
                less.emplace_back(a, b);
            }
            p = SpectralPoset::from_relation(std::move(labels), less);
        }
        if (auto v = validate_poset(p)) bad(path, "not a partial order (" + v->invariant + "): " + v->witness);
        return p;
    }

    AmalgamSpectrumData specdata(const Json& j, const std::string& path) {
        AmalgamSpectrumData d;
        d.pr = poset(field(j, "PR", path), at(path, "PR"));
        d.ps = poset(field(j, "PS", path), at(path, "PS"));
        auto find = [&](const SpectralPoset& p, const Json& v, const std::string& where) {
            if (!v.is_string()) bad(where, "expected an element label");
            auto k = p.index_of(v.get<std::string>());
            if (k == p.size()) bad(where, "unknown element \"" + v.get<std::string>() + "\"");
            return k;
        };
        d.vj.assign(d.ps.size(), false);
        const auto& vj = field(j, "VJ", path);
        if (!vj.is_array()) bad(at(path, "VJ"), "expected an array of labels");
        for (std::size_t k = 0; k < vj.size(); ++k) d.vj[find(d.ps, vj[k], at(at(path, "VJ"), k))] = true;
        d.c.assign(d.ps.size(), std::vector<bool>(d.pr.size(), false));
        const auto& c = j.contains("C") ? j["C"] : Json::array();
        if (!c.is_array()) bad(at(path, "C"), "expected an array of [q, p] pairs");
        for (std::size_t k = 0; k < c.size(); ++k) {
            const auto where = at(at(path, "C"), k);
            if (!c[k].is_array() || c[k].size() != 2) bad(where, "expected [q, p]");
            d.c[find(d.ps, c[k][0], at(where, 0))][find(d.pr, c[k][1], at(where, 1))] = true;
        }
        if (j.contains("kappa") && !j["kappa"].is_null()) {
            const auto& kj = j["kappa"];
            if (!kj.is_object()) bad(at(path, "kappa"), "expected an object mapping PS labels to PR labels");
            std::vector<std::size_t> k(d.ps.size(), d.pr.size());
            for (auto it = kj.begin(); it != kj.end(); ++it) {
                const auto where = at(at(path, "kappa"), it.key());
                k[find(d.ps, Json(it.key()), where)] = find(d.pr, it.value(), where);
            }
            for (std::size_t q = 0; q < k.size(); ++q)
                if (k[q] == d.pr.size()) bad(at(path, "kappa"), "no image for " + d.ps.labels[q]);
            d.kappa = std::move(k);
        }
        auto rep = validate_data(d);
        if (!rep.ok()) bad(path, "invalid spectrum data (" + rep.violations.front().invariant + "): " +
                                     rep.violations.front().witness);
        return d;
    }

    Document& doc_;
};

}  // namespace

std::string kind_of(const Object& o) {
    static const char* names[] = {"ring", "module", "hom", "ideal", "amalgam", "poset", "specdata"};
    return names[o.index()];
}

const Object& Document::subject() const {
    if (objects.empty()) throw InputError("document contains no objects");
    return objects.back();
}

Document parse_document(const Json& j) {
    Document doc;
    Parser p(doc);
    auto one = [&](const Json& item, const std::string& path) {
        try {
            auto o = p.object(item, path);
            if (item.is_object() && item.contains("name") && item["name"].is_string())
                doc.named.insert_or_assign(item["name"].get<std::string>(), o);
            doc.objects.push_back(std::move(o));
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            bad(path, e.what());
        }
    };
    if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k) one(j[k], at("", k));
    } else {
        one(j, "");
    }
    return doc;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

Document load_document(const std::string& path) {
    try {
        return parse_document(load_json(path));
    } catch (const CapExceeded&) {
        throw;
    } catch (const InputError& e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0) throw;
        throw InputError(path + ": " + what);
    }
}

Json to_json(const FiniteRing& r) {
    const auto& t = r.tables();
    Json j;
    j["kind"] = "ring";
    j["name"] = r.name();
    j["size"] = r.size();
    j["zero"] = r.zero();
    j["one"] = r.one();
    j["labels"] = labels_of(r);
    j["add"] = square(t.add, t.size, t.size);
    j["mul"] = square(t.mul, t.size, t.size);
    return j;
}

Json to_json(const FiniteModule& m) {
    const auto& t = m.tables();
    Json labels = Json::array();
    for (Elem x = 0; x < m.size(); ++x) labels.push_back(m.label(x));
    Json j;
    j["kind"] = "module";
    j["name"] = m.name();
    j["ring"] = to_json(*m.ring());
    j["size"] = m.size();
    j["zero"] = m.zero();
    j["labels"] = std::move(labels);
    j["add"] = square(t.add, t.size, t.size);
    j["action"] = square(t.action, m.ring()->size(), t.size);
    return j;
}

Json to_json(const RingHom& f) {
    Json j;
    j["kind"] = "hom";
    j["domain"] = to_json(*f.domain());
    j["codomain"] = to_json(*f.codomain());
    j["map"] = f.map();
    return j;
}

Json to_json(const IdealSet& i) {
    Json j;
    j["kind"] = "ideal";
    j["ring"] = to_json(*i.ring());
    j["label"] = ideal_label(i);
    j["members"] = i.members().members();
    return j;
}

Json to_json(const AmalgamationRing& a) {
    Json j;
    j["kind"] = "amalgam";
    j["name"] = a.carrier()->name();
    if (a.is_duplication()) {
        j["duplicate"] = to_json(*a.base());
        j["ideal"] = Json{{"members", a.ideal().members().members()}};
    } else {
        j["R"] = to_json(*a.base());
        j["S"] = to_json(*a.target());
        j["f"] = a.hom().map();
        j["J"] = Json{{"members", a.ideal().members().members()}};
    }
    Json pairs = Json::array();
    for (auto [r, s] : a.pair_labels()) pairs.push_back(Json::array({r, s}));
    j["pairs"] = std::move(pairs);
    j["carrier"] = to_json(*a.carrier());
    return j;
}

Json to_json(const SpectralPoset& p) {
    Json leq = Json::array();
    for (const auto& row : p.leq) {
        Json r = Json::array();
        for (bool b : row) r.push_back(b);
        leq.push_back(std::move(r));
    }
    Json j;
    j["kind"] = "poset";
    j["elements"] = p.labels;
    j["leq"] = std::move(leq);
    return j;
}

Json to_json(const AmalgamSpectrumData& d) {
    Json j;
    j["kind"] = "specdata";
    auto strip = [](Json p) {
        p.erase("kind");
        return p;
    };
    j["PR"] = strip(to_json(d.pr));
    j["PS"] = strip(to_json(d.ps));
    Json vj = Json::array();
    Json c = Json::array();
    for (std::size_t q = 0; q < d.ps.size(); ++q) {
        if (d.vj[q]) vj.push_back(d.ps.labels[q]);
        for (std::size_t p = 0; p < d.pr.size(); ++p)
            if (d.c[q][p]) c.push_back(Json::array({d.ps.labels[q], d.pr.labels[p]}));
    }
    j["VJ"] = std::move(vj);
    j["C"] = std::move(c);
    if (d.kappa) {
        Json k = Json::object();
        for (std::size_t q = 0; q < d.ps.size(); ++q) k[d.ps.labels[q]] = d.pr.labels[(*d.kappa)[q]];
        j["kappa"] = std::move(k);
    }
    return j;
}

Json to_json(const Object& o) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RingPtr> || std::is_same_v<T, ModulePtr>) return to_json(*v);
            else return to_json(v);
        },
        o);
}

Json to_json(const LemmaReport& r) {
    Json j;
    j["id"] = r.id;
    j["instance"] = r.instance;
    j["verdict"] = r.pass() ? "pass" : "fail";
    j["applicable"] = r.applicable;
    j["finite_scale_trivial"] = r.finite_scale_trivial;
    j["parts"] = r.parts;
    j["families"] = r.families;
    j["checks"] = r.checks;
    Json hyp = Json::object();
    for (const auto& [k, v] : r.hypotheses) hyp[k] = v;
    j["hypotheses"] = std::move(hyp);
    Json facts = Json::object();
    for (const auto& [k, v] : r.facts) facts[k] = v;
    j["facts"] = std::move(facts);
    Json ws = Json::array();
    for (const auto& w : r.witnesses) ws.push_back(Json{{"part", w.part}, {"text", w.text}});
    j["witnesses"] = std::move(ws);
    j["counterexample"] = r.counterexample ? Json{{"part", r.counterexample->part}, {"text", r.counterexample->text}}
                                           : Json(nullptr);
    return j;
}

Json to_json(const DagCount& d) {
    return Json{{"q", d.q}, {"term_max_S", d.term_max_s}, {"term_max_R", d.term_max_r}, {"total", d.total}};
}

Json to_json(const DecideResult& d) {
    Json ws = Json::array();
    for (const auto& w : d.witnesses) ws.push_back(w.text);
    return Json{{"holds", d.holds},
                {"probes", d.probes},
                {"families", d.families},
                {"witnesses", std::move(ws)},
                {"counterexample", d.counterexample ? Json(d.counterexample->text) : Json(nullptr)}};
}

}  // namespace bowtie
