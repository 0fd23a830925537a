#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bowtie/corpus.hpp"
#include "bowtie/dot.hpp"
#include "bowtie/error.hpp"
#include "bowtie/serialize.hpp"

namespace py = pybind11;
using namespace bowtie;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) {
    return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

// Python-side handles. Both own shared state, so copies are cheap.
struct Ring {
    RingPtr ptr;
};

struct Amalgam {
    AmalgamationRing a;
};

template <class T>
T parse_as(const py::object& doc, const char* what) {
    Document d = parse_document(from_py(doc));
    if (const auto* v = std::get_if<T>(&d.subject())) return *v;
    throw InputError(std::string("expected a ") + what + ", got a " + kind_of(d.subject()));
}

IdealSet ideal_of(const RingPtr& r, const std::vector<Elem>& gens) { return ideal_generate(r, gens); }

py::list spectrum_rows(const SpectrumList& s) {
    py::list out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        py::dict row;
        row["label"] = ideal_label(s.primes[i]);
        row["members"] = s.primes[i].members().members();
        row["maximal"] = bool(s.maximal[i]);
        out.append(row);
    }
    return out;
}

VerifyOptions verify_opts(std::uint64_t seed, std::size_t family_size, std::size_t cap) {
    VerifyOptions o;
    o.seed = seed;
    o.family_size = family_size;
    o.cap = cap;
    return o;
}

}  // namespace

PYBIND11_MODULE(_bowtie, m) {
    m.doc() = "Finite commutative rings, amalgamated algebras and their prime spectra.";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto input = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", input.ptr());
    py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
    py::register_exception<TheoremViolation>(m, "TheoremViolation", base.ptr());

    m.attr("DEFAULT_CAP") = kDefaultEnumerationCap;

    py::class_<Ring>(m, "Ring")
        .def_property_readonly("size", [](const Ring& r) { return r.ptr->size(); })
        .def_property_readonly("name", [](const Ring& r) { return r.ptr->name(); })
        .def("label", [](const Ring& r, Elem e) { return r.ptr->label(e); })
        .def("add", [](const Ring& r, Elem a, Elem b) { return r.ptr->add(a, b); })
        .def("mul", [](const Ring& r, Elem a, Elem b) { return r.ptr->mul(a, b); })
        .def("spec", [](const Ring& r, std::size_t cap) { return spectrum_rows(spec(r.ptr, cap)); },
             py::arg("cap") = kDefaultEnumerationCap)
        .def("ideals",
             [](const Ring& r, std::size_t cap) {
                 std::vector<std::vector<Elem>> out;
                 for (const auto& i : enumerate_ideals(r.ptr, cap)) out.push_back(i.members().members());
                 return out;
             },
             py::arg("cap") = kDefaultEnumerationCap)
        .def("ideal", [](const Ring& r, const std::vector<Elem>& gens) { return ideal_of(r.ptr, gens).members().members(); })
        .def("nilradical", [](const Ring& r) { return nilradical(r.ptr).members().members(); })
        .def("jacobson", [](const Ring& r) { return jacobson(r.ptr).members().members(); })
        .def("is_pm", [](const Ring& r, std::size_t cap) { return is_pm(r.ptr, cap).pm; },
             py::arg("cap") = kDefaultEnumerationCap)
        .def("compactly_packed", [](const Ring& r) { return to_py(to_json(compactly_packed_decide(r.ptr))); })
        .def("properly_zipped", [](const Ring& r) { return to_py(to_json(properly_zipped_decide(r.ptr))); })
        .def("isomorphic", [](const Ring& a, const Ring& b) { return find_isomorphism(a.ptr, b.ptr).has_value(); })
        .def("to_json", [](const Ring& r) { return to_py(to_json(*r.ptr)); })
        .def("__repr__", [](const Ring& r) { return "<Ring " + r.ptr->name() + " of size " + std::to_string(r.ptr->size()) + ">"; });

    m.def("zn", [](std::size_t n) { return Ring{make_zn(n)}; }, py::arg("n"));
    m.def("product", [](const Ring& a, const Ring& b) { return Ring{make_product(a.ptr, b.ptr)}; });
    m.def("quotient", [](const Ring& a, const std::vector<Elem>& gens) {
        return Ring{make_quotient(a.ptr, ideal_of(a.ptr, gens)).ring};
    });
    m.def("trivext", [](const Ring& a) { return Ring{make_trivial_extension(a.ptr, make_regular_module(a.ptr))}; });
    m.def("ring_from_json", [](const py::object& doc) { return Ring{parse_as<RingPtr>(doc, "ring")}; });

    py::class_<Amalgam>(m, "Amalgam")
        .def_property_readonly("size", [](const Amalgam& x) { return x.a.carrier()->size(); })
        .def_property_readonly("name", [](const Amalgam& x) { return x.a.carrier()->name(); })
        .def_property_readonly("carrier", [](const Amalgam& x) { return Ring{x.a.carrier()}; })
        .def_property_readonly("is_duplication", [](const Amalgam& x) { return x.a.is_duplication(); })
        .def("pairs", [](const Amalgam& x) { return x.a.pair_labels(); })
        .def("classify",
             [](const Amalgam& x, std::size_t cap) {
                 py::list out;
                 for (const auto& p : classify_spectrum(x.a, cap).primes) {
                     py::dict row;
                     row["label"] = p.label();
                     row["type"] = p.tag == PrimeType::Type1 ? 1 : 2;
                     row["maximal"] = p.maximal;
                     row["members"] = p.ideal.members().members();
                     out.append(row);
                 }
                 return out;
             },
             py::arg("cap") = kDefaultEnumerationCap)
        .def("dag_counts",
             [](const Amalgam& x, std::size_t cap) {
                 Json out = Json::array();
                 for (const auto& d : dag_counts(AmalgamContext::build(x.a, cap))) out.push_back(to_json(d));
                 return to_py(out);
             },
             py::arg("cap") = kDefaultEnumerationCap)
        .def("is_pm", [](const Amalgam& x, std::size_t cap) { return is_pm(x.a.carrier(), cap).pm; },
             py::arg("cap") = kDefaultEnumerationCap)
        .def("verify",
             [](const Amalgam& x, std::uint64_t seed, std::size_t family_size, std::size_t cap) {
                 Json out = Json::array();
                 for (const auto& r : verify_amalgam(x.a, verify_opts(seed, family_size, cap))) out.push_back(to_json(r));
                 return to_py(out);
             },
             py::arg("seed") = 0, py::arg("family_size") = 0, py::arg("cap") = kDefaultEnumerationCap)
        .def("hasse_dot",
             [](const Amalgam& x, std::size_t cap) {
                 auto ctx = AmalgamContext::build(x.a, cap);
                 return hasse_dot(build_amalgam_poset(extract_spectrum_data(ctx)), "amalgam");
             },
             py::arg("cap") = kDefaultEnumerationCap)
        .def("spectrum_data",
             [](const Amalgam& x, std::size_t cap) {
                 return to_py(to_json(extract_spectrum_data(AmalgamContext::build(x.a, cap))));
             },
             py::arg("cap") = kDefaultEnumerationCap)
        .def("to_json", [](const Amalgam& x) { return to_py(to_json(x.a)); })
        .def("__repr__", [](const Amalgam& x) {
            return "<Amalgam " + x.a.carrier()->name() + " of size " + std::to_string(x.a.carrier()->size()) + ">";
        });

    m.def("duplicate", [](const Ring& r, const std::vector<Elem>& gens) {
        return Amalgam{duplicate(r.ptr, ideal_of(r.ptr, gens))};
    });
    m.def(
        "amalgamate",
        [](const Ring& r, const Ring& s, std::optional<std::vector<Elem>> f, const std::vector<Elem>& j) {
            RingHom hom = f ? make_hom(r.ptr, s.ptr, *f) : natural_hom(r.ptr, s.ptr);
            return Amalgam{amalgamate(r.ptr, s.ptr, hom, ideal_of(s.ptr, j))};
        },
        py::arg("r"), py::arg("s"), py::arg("f") = py::none(), py::arg("j"));
    m.def("amalgam_from_json", [](const py::object& doc) { return Amalgam{parse_as<AmalgamationRing>(doc, "amalgam")}; });

    m.def("check_spectrum_data", [](const py::object& doc) {
        const auto d = parse_as<AmalgamSpectrumData>(doc, "specdata");
        return to_py(to_json(verify_spectrum_data(d, "specdata")));
    });
    m.def("spectrum_data_is_pm", [](const py::object& doc) {
        return poset_is_pm(build_amalgam_poset(parse_as<AmalgamSpectrumData>(doc, "specdata")).poset).pm;
    });
    m.def("fuzz_spectrum_data",
          [](std::uint64_t seed, std::size_t count, std::size_t max_size) {
              SpectrumFuzzer fz(seed, max_size);
              py::list out;
              for (std::size_t i = 0; i < count; ++i) out.append(to_py(to_json(fz.next())));
              return out;
          },
          py::arg("seed"), py::arg("count"), py::arg("max_size") = 6);
    m.def("verify_fuzz",
          [](std::uint64_t seed, std::size_t count, std::size_t max_size) {
              return to_py(to_json(verify_fuzz(seed, count, max_size)));
          },
          py::arg("seed"), py::arg("count"), py::arg("max_size") = 6);

    m.def(
        "verify_corpus",
        [](const py::object& corpus, std::size_t cap, std::uint64_t seed, std::size_t family_size) {
            CorpusSpec spec = corpus.is_none() ? default_corpus() : corpus_from_json(from_py(corpus));
            RunOptions o;
            o.cap = cap;
            o.seed = seed;
            o.family_size = family_size;
            VerificationRun run;
            {
                py::gil_scoped_release nogil;
                run = run_verification(spec, o);
            }
            return to_py(run.report);
        },
        py::arg("corpus") = py::none(), py::arg("cap") = kDefaultEnumerationCap, py::arg("seed") = 0,
        py::arg("family_size") = 0);
}
