#include <arcpath/error.hpp>
#include <arcpath/instance_io.hpp>
#include <arcpath/verifier.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

namespace py = pybind11;
using namespace arcpath;

namespace {

using ArcSpec = std::variant<std::pair<std::int64_t, std::int64_t>, std::string>;

ArcFamily make_family(std::int64_t ticks, const std::vector<ArcSpec> & specs)
{
    std::vector<Arc> arcs;
    for (const auto & s : specs) {
        if (auto * name = std::get_if<std::string>(&s)) {
            if (*name != "full")
                throw PreconditionViolated("arc spec must be (left, right) or \"full\"");
            arcs.push_back(Arc::full());
        }
        else {
            auto [l, r] = std::get<0>(s);
            arcs.push_back(Arc::proper(l, r));
        }
    }
    return ArcFamily(Circle(ticks), std::move(arcs));
}

py::list arc_specs(const ArcFamily & f)
{
    py::list out;
    for (const auto & a : f.arcs()) {
        if (a.is_full())
            out.append("full");
        else
            out.append(py::make_tuple(a.left().value().numerator(), a.right().value().numerator()));
    }
    return out;
}

py::object opt_bool(const std::optional<bool> & b) { return b ? py::object(py::bool_(*b)) : py::object(py::none()); }

py::dict report_dict(const VerificationReport & r)
{
    py::dict d;
    d["ok"] = r.ok();
    d["branch"] = to_string(r.branch);
    d["connected"] = r.connected;
    d["covering"] = r.covering;
    d["cover_size"] = r.n;
    d["longest_length"] = r.longest_length;
    d["longest_count"] = r.longest_count;
    d["common_vertices"] = r.common_vertices;
    d["witness"] = r.witness ? py::cast(*r.witness) : py::none();
    d["extremal"] = r.extremal ? py::cast(r.extremal->arcs()) : py::none();
    py::dict flags;
    flags["gallai"] = opt_bool(r.gallai_ok);
    flags["oracle"] = opt_bool(r.oracle_ok);
    flags["lemma1"] = opt_bool(r.lemma1_ok);
    flags["membership"] = opt_bool(r.membership_ok);
    flags["lemma3"] = opt_bool(r.lemma3_ok);
    flags["kb1"] = opt_bool(r.kb1_ok);
    d["flags"] = flags;
    py::list failures;
    for (const auto & f : r.failures)
        failures.append(py::make_tuple(f.flag, f.detail, f.chain));
    d["failures"] = failures;
    d["text"] = format_report(r, ReportFormat::text);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Circular-arc graph toolkit";

    static py::exception<Error> base(m, "ArcpathError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const Error & e) {
            base(e.what());
        }
    });

    py::class_<ArcFamily>(m, "ArcFamily")
        .def(py::init(&make_family), py::arg("ticks"), py::arg("arcs"))
        .def_property_readonly("ticks", [](const ArcFamily & f) { return f.circle().ticks(); })
        .def_property_readonly("arcs", &arc_specs)
        .def("__len__", &ArcFamily::size)
        .def("__eq__", [](const ArcFamily & a, const ArcFamily & b) { return a == b; })
        .def("edges",
             [](const ArcFamily & f) {
                 auto g = build_graph(f);
                 std::vector<std::pair<std::size_t, std::size_t>> out;
                 for (std::size_t u = 0; u < g.size(); ++u)
                     for (auto w : g.neighbours(u))
                         if (u < w)
                             out.emplace_back(u, w);
                 return out;
             })
        .def("to_text", [](const ArcFamily & f) { return format_instance(f, {}); })
        .def("__repr__", [](const ArcFamily & f) {
            return "ArcFamily(ticks=" + std::to_string(f.circle().ticks()) + ", arcs="
                   + py::repr(arc_specs(f)).cast<std::string>() + ")";
        });

    m.def(
        "parse_instance",
        [](const std::string & text) {
            auto inst = parse_instance(text);
            return py::make_tuple(inst.family, inst.chains);
        },
        py::arg("text"), "Parse instance text into (family, chains).");

    m.def(
        "generate",
        [](std::size_t arcs, std::int64_t ticks, std::uint64_t seed, bool require_cover, bool require_connected) {
            GenerateParams p;
            p.arcs = arcs;
            p.ticks = ticks ? ticks : 4 * static_cast<std::int64_t>(arcs);
            p.seed = seed;
            p.require_cover = require_cover;
            p.require_connected = require_connected;
            return generate(p);
        },
        py::arg("arcs"), py::arg("ticks") = 0, py::arg("seed") = 0, py::arg("require_cover") = false,
        py::arg("require_connected") = false);

    m.def("covers_circle", &covers_circle, py::arg("family"));
    m.def(
        "minimal_cover", [](const ArcFamily & f) { return minimal_cover(f).arcs(); }, py::arg("family"));
    m.def(
        "longest_path_length", [](const ArcFamily & f) { return longest_path_length(build_graph(f)); },
        py::arg("family"));
    m.def(
        "enumerate_longest",
        [](const ArcFamily & f, std::uint64_t cap) {
            EnumerateOptions o;
            o.cap = cap;
            auto r = enumerate_longest(build_graph(f), o);
            py::dict d;
            d["length"] = r.length;
            d["paths"] = r.paths;
            d["count"] = r.count;
            d["common_vertices"] = r.common_vertices;
            d["truncated"] = r.truncated;
            return d;
        },
        py::arg("family"), py::arg("cap") = default_path_cap);

    m.def(
        "verify",
        [](const ArcFamily & f, bool paranoid) {
            VerifyOptions o;
            o.paranoid = paranoid;
            return report_dict(verify_instance(f, o));
        },
        py::arg("family"), py::arg("paranoid") = false);

    m.def(
        "canonicalize",
        [](const ArcFamily & f, std::vector<ArcIndex> chain, bool paranoid) {
            auto c = validate_chain(std::move(chain), f);
            auto cover = minimal_cover(f);
            CanonicalizeOptions o;
            o.paranoid = paranoid;
            auto run = canonicalize(c, f, cover, cover_trace(c, cover), o);
            py::dict d;
            d["ok"] = run.ok();
            d["keil"] = run.keil_chain.arcs();
            d["result"] = run.result.arcs();
            py::list steps;
            for (const auto & s : run.steps)
                steps.append(py::make_tuple(to_string(s.rule), s.p, s.q));
            d["steps"] = steps;
            d["violations"] = run.proof_violations;
            return d;
        },
        py::arg("family"), py::arg("chain"), py::arg("paranoid") = false);

    m.def(
        "hunt",
        [](std::size_t trials, std::size_t min_arcs, std::size_t max_arcs, std::uint64_t seed, bool paranoid,
           bool require_cover) {
            HuntParams p;
            p.trials = trials;
            p.min_arcs = min_arcs;
            p.max_arcs = max_arcs;
            p.seed = seed;
            p.paranoid = paranoid;
            p.require_cover = require_cover;
            HuntSummary s;
            {
                py::gil_scoped_release release;
                s = hunt(p);
            }
            return py::make_tuple(s.ok(), format_summary(s, ReportFormat::machine));
        },
        py::arg("trials"), py::arg("min_arcs") = 3, py::arg("max_arcs") = 6, py::arg("seed") = 1,
        py::arg("paranoid") = false, py::arg("require_cover") = true);
}
