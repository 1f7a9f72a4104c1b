#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "coverlab/catalog.hpp"
#include "coverlab/certifier.hpp"
#include "coverlab/distortion.hpp"
#include "coverlab/errors.hpp"
#include "coverlab/exact_cover.hpp"
#include "coverlab/json_io.hpp"

namespace py = pybind11;
using namespace coverlab;

namespace pybind11::detail {

// mpz_class <-> python int, via decimal strings (exact at any size).
template <>
struct type_caster<Int> {
    PYBIND11_TYPE_CASTER(Int, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        value = Int(static_cast<std::string>(py::str(src)), 10);
        return true;
    }

    static handle cast(const Int& z, return_value_policy, handle) {
        return PyLong_FromString(z.get_str().c_str(), nullptr, 10);
    }
};

// mpq_class <-> fractions.Fraction (ints load fine too: they expose
// .numerator / .denominator).
template <>
struct type_caster<Rat> {
    PYBIND11_TYPE_CASTER(Rat, const_name("fractions.Fraction"));

    bool load(handle src, bool convert) {
        if (!py::hasattr(src, "numerator") ||
            !py::hasattr(src, "denominator"))
            return false;
        make_caster<Int> num, den;
        if (!num.load(src.attr("numerator"), convert) ||
            !den.load(src.attr("denominator"), convert))
            return false;
        value = make_rat(cast_op<Int>(num), cast_op<Int>(den));
        return true;
    }

    static handle cast(const Rat& r, return_value_policy policy,
                       handle parent) {
        auto fraction =
            py::module_::import("fractions").attr("Fraction");
        return fraction(make_caster<Int>::cast(r.get_num(), policy, parent),
                        make_caster<Int>::cast(r.get_den(), policy, parent))
            .release();
    }
};

}  // namespace pybind11::detail

namespace {

std::vector<std::int64_t> point_to_list(const Point& p) { return p.coords; }

Point list_to_point(const std::vector<std::int64_t>& coords) {
    return Point{coords};
}

}  // namespace

PYBIND11_MODULE(_coverlab, m) {
    m.doc() = "Exact covering-system verification and certificates";

    auto base = py::register_exception<Error>(m, "CoverlabError");
    py::register_exception<InvalidInputError>(m, "InvalidInput", base);
    py::register_exception<TooLargeError>(m, "TooLarge", base);

    py::class_<Hyperplane>(m, "Hyperplane")
        .def(py::init([](const std::map<int, std::int64_t>& fixings) {
                 return Hyperplane(fixings);
             }),
             py::arg("fixings"))
        .def_property_readonly("fixings",
                               [](const Hyperplane& h) { return h.fixings(); })
        .def_property_readonly("max_fixed",
                               [](const Hyperplane& h) { return h.max_fixed(); })
        .def("project",
             [](const Hyperplane& h, const std::set<int>& U) {
                 return h.project(U);
             })
        .def("contains",
             [](const Hyperplane& h, const Instance& inst,
                const std::vector<std::int64_t>& p) {
                 return h.contains(inst.space, list_to_point(p));
             })
        .def("__eq__", [](const Hyperplane& a, const Hyperplane& b) {
            return a == b;
        });

    py::class_<Instance>(m, "Instance")
        .def(py::init([](const std::vector<std::int64_t>& sizes,
                         const std::vector<Hyperplane>& hyperplanes) {
                 Instance inst{ProductSpace(sizes), hyperplanes};
                 inst.validate();
                 return inst;
             }),
             py::arg("sizes"), py::arg("hyperplanes"))
        .def_property_readonly(
            "sizes", [](const Instance& i) { return i.space.sizes(); })
        .def_property_readonly(
            "hyperplanes", [](const Instance& i) { return i.hyperplanes; })
        .def("find_parallel_pair",
             [](const Instance& i) { return find_parallel_pair(i); });

    m.def("instance_from_json", &parse_instance, py::arg("text"));
    m.def("instance_to_json", [](const Instance& inst) {
        return instance_to_json(inst).dump();
    });

    py::class_<ArithmeticProgression>(m, "ArithmeticProgression")
        .def(py::init(&make_progression), py::arg("a"), py::arg("d"))
        .def_readonly("a", &ArithmeticProgression::a)
        .def_readonly("d", &ArithmeticProgression::d);

    py::class_<APSystem>(m, "APSystem")
        .def(py::init([](const std::vector<ArithmeticProgression>& ps) {
                 return APSystem{ps};
             }),
             py::arg("progressions"))
        .def_property_readonly("progressions", [](const APSystem& s) {
            return s.progressions;
        });

    m.def("apsystem_from_json", &parse_apsystem, py::arg("text"));
    m.def("apsystem_to_json", [](const APSystem& sys) {
        return apsystem_to_json(sys).dump();
    });

    py::class_<CoverVerdict>(m, "CoverVerdict")
        .def_readonly("covered", &CoverVerdict::covered)
        .def_property_readonly("witness",
                               [](const CoverVerdict& v)
                                   -> std::optional<std::vector<std::int64_t>> {
                                   if (!v.witness) return std::nullopt;
                                   return point_to_list(*v.witness);
                               })
        .def_readonly("uncovered_count", &CoverVerdict::uncovered_count)
        .def_readonly("total_count", &CoverVerdict::total_count);

    py::class_<APCoverVerdict>(m, "APCoverVerdict")
        .def_readonly("covered", &APCoverVerdict::covered)
        .def_readonly("witness", &APCoverVerdict::witness)
        .def_readonly("uncovered_count", &APCoverVerdict::uncovered_count)
        .def_readonly("total_count", &APCoverVerdict::total_count);

    m.def("is_covering", &is_covering, py::arg("instance"),
          py::arg("cap") = kDefaultCap);
    m.def("uncovered_measure", &uncovered_measure, py::arg("instance"),
          py::arg("cap") = kDefaultCap);
    m.def("ap_is_covering", &ap_is_covering, py::arg("system"),
          py::arg("cap") = kDefaultCap);
    m.def("system_to_instance", &system_to_instance, py::arg("system"));
    m.def("ap_to_hyperplane", &ap_to_hyperplane, py::arg("progression"),
          py::arg("primes"));
    m.def("primes_upto_index", &primes_upto_index, py::arg("n"));
    m.def("min_modulus_bound", &min_modulus_bound, py::arg("C"),
          py::arg("primes"));
    m.def(
        "verify_prime_growth",
        [](int N, const Rat& eps, int K) {
            auto chk = verify_prime_growth(N, eps, K);
            return std::make_pair(chk.ok, chk.first_failure);
        },
        py::arg("N"), py::arg("eps"), py::arg("K"));

    py::class_<DistortionRound>(m, "DistortionRound")
        .def_readonly("k", &DistortionRound::k)
        .def_readonly("covered_mass", &DistortionRound::covered_mass)
        .def_readonly("exceeded_cap_count",
                      &DistortionRound::exceeded_cap_count);

    py::class_<DistortionTrace>(m, "DistortionTrace")
        .def_readonly("delta", &DistortionTrace::delta)
        .def_readonly("rounds", &DistortionTrace::per_round)
        .def_readonly("residual_lower_bound",
                      &DistortionTrace::residual_lower_bound);

    m.def("distort", &run, py::arg("instance"), py::arg("delta"),
          py::arg("cap") = kDefaultCap);

    py::class_<MomentBound>(m, "MomentBound")
        .def_readonly("k", &MomentBound::k)
        .def_property_readonly(
            "mode", [](const MomentBound& b) { return to_string(b.mode); })
        .def_readonly("value", &MomentBound::value);

    py::class_<Certificate>(m, "Certificate")
        .def_readonly("delta", &Certificate::delta)
        .def_property_readonly(
            "mode", [](const Certificate& c) { return to_string(c.mode); })
        .def_readonly("rounds", &Certificate::per_round)
        .def_readonly("criterion_sum", &Certificate::criterion_sum)
        .def_readonly("residual", &Certificate::residual)
        .def_property_readonly("verdict",
                               [](const Certificate& c) {
                                   return to_string(c.verdict);
                               })
        .def_readonly("nonparallel_checked",
                      &Certificate::nonparallel_checked);

    m.def(
        "certify",
        [](const Instance& inst, const Rat& delta, const std::string& mode,
           std::int64_t cap) {
            auto m_ = bound_mode_from_string(mode);
            if (!m_)
                throw InvalidParameterError(
                    "mode must be exact, pairwise or product");
            return certify(inst, delta, *m_, cap);
        },
        py::arg("instance"), py::arg("delta"), py::arg("mode") = "exact",
        py::arg("cap") = kDefaultCap);

    m.def(
        "nu",
        [](const std::set<int>& J, const Rat& delta,
           const std::vector<std::int64_t>& sizes) {
            return nu(J, delta, ProductSpace(sizes));
        },
        py::arg("J"), py::arg("delta"), py::arg("sizes"));

    m.def("scalar_condition", &scalar_condition, py::arg("eps"));
    m.def("scalar_condition_value", &scalar_condition_value, py::arg("eps"));

    py::class_<MinCResult>(m, "MinCResult")
        .def_readonly("C", &MinCResult::C)
        .def_readonly("power_of_ten", &MinCResult::power_of_ten)
        .def_readonly("growth_checked_upto", &MinCResult::growth_checked_upto)
        .def_readonly("delta", &MinCResult::delta)
        .def_property_readonly("probes", [](const MinCResult& r) {
            std::vector<std::pair<Int, bool>> out;
            for (const auto& p : r.probes) out.emplace_back(p.C, p.pass);
            return out;
        });

    m.def(
        "min_c",
        [](const Rat& eps, int N,
           const std::optional<std::vector<std::int64_t>>& sizes,
           int growth_limit) {
            SequenceSpec spec;
            spec.eps = eps;
            spec.N = N;
            if (sizes) {
                spec.kind = SequenceSpec::Kind::explicit_sizes;
                spec.sizes = *sizes;
            }
            return min_C(spec, std::nullopt, growth_limit);
        },
        py::arg("eps"), py::arg("N"), py::arg("sizes") = std::nullopt,
        py::arg("growth_limit") = 1'000'000);

    py::class_<CatalogEntry>(m, "CatalogEntry")
        .def_readonly("name", &CatalogEntry::name)
        .def_readonly("kind", &CatalogEntry::kind)
        .def_property_readonly(
            "expected",
            [](const CatalogEntry& e) { return to_string(e.expected); })
        .def_readonly("provenance", &CatalogEntry::provenance)
        .def_readonly("payload", &CatalogEntry::payload);

    py::class_<Catalog>(m, "Catalog")
        .def_static("open", &Catalog::open, py::arg("dir"),
                    py::arg("cap") = kDefaultCap)
        .def("names", &Catalog::names)
        .def("get", &Catalog::get, py::arg("name"),
             py::return_value_policy::copy);

    m.def("search_squarefree_cover", &search_squarefree_cover,
          py::arg("prime_budget"), py::arg("cap") = kDefaultCap);
}
