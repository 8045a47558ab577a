#include "galoiskit/cluster.hpp"
#include "galoiskit/constraint.hpp"
#include "galoiskit/galois.hpp"
#include "galoiskit/operation.hpp"
#include "galoiskit/textio.hpp"
#include "galoiskit/verify.hpp"

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

namespace py = pybind11;
using namespace gk;

namespace {
    py::object extnat_to_py(const ExtNat& e) {
        if (e.is_infinite())
            return py::float_(std::numeric_limits<double>::infinity());
        return py::int_(e.value());
    }

    ExtNat extnat_from_py(const py::object& o) {
        if (py::isinstance<py::float_>(o)) {
            const double d = o.cast<double>();
            if (std::isinf(d) && d > 0)
                return ExtNat::infinity();
            throw PreconditionError("counts are non-negative integers or math.inf");
        }
        if (py::isinstance<py::str>(o))
            return ExtNat::parse(o.cast<std::string>());
        const long long v = o.cast<long long>();
        if (v < 0)
            throw PreconditionError("counts are non-negative integers or math.inf");
        return ExtNat(static_cast<std::uint64_t>(v));
    }

    GaloisConfig make_config(int arity_cap, int constraint_arity_cap, int column_cap, std::uint64_t breadth,
                             std::uint64_t budget) {
        GaloisConfig cfg;
        cfg.arity_cap = arity_cap;
        cfg.constraint_arity_cap = constraint_arity_cap;
        cfg.column_cap = column_cap;
        cfg.breadth_cap = breadth;
        cfg.budget = Budget(budget);
        cfg.validate();
        return cfg;
    }

    py::dict witness_dict(const ClusterWitness& w) {
        py::dict d;
        d["source"] = format_multiset(w.source);
        d["first"] = w.first.columns();
        d["rest"] = format_multiset(w.rest);
        d["output"] = w.output;
        return d;
    }
}

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite operations, generalized constraints, clusters and their Galois connections";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<NoSeparatorError>(m, "NoSeparatorError", error.ptr());

    py::class_<Operation>(m, "Operation")
        .def(py::init<int, int, std::vector<Elem>>(), py::arg("k"), py::arg("arity"), py::arg("table"))
        .def(py::init<int, int, int, std::vector<Elem>>(), py::arg("domain_size"), py::arg("codomain_size"),
             py::arg("arity"), py::arg("table"))
        .def_property_readonly("domain_size", &Operation::domain_size)
        .def_property_readonly("codomain_size", &Operation::codomain_size)
        .def_property_readonly("arity", &Operation::arity)
        .def_property_readonly("table", &Operation::table)
        .def("__call__", [](const Operation& f, const Tuple& x) { return eval(f, x); })
        .def("__call__", [](const Operation& f, py::args xs) { return eval(f, xs.cast<Tuple>()); })
        .def(py::self == py::self)
        .def(py::self < py::self)
        .def("__hash__", [](const Operation& f) { return py::hash(py::make_tuple(f.domain_size(), f.arity(), py::tuple(py::cast(f.table())))); })
        .def("__repr__", [](const Operation& f) { return format_operation("f", f); });

    m.def("zeta", &zeta);
    m.def("tau", &tau);
    m.def("delta", &delta);
    m.def("nabla", &nabla);
    m.def("star", &star);
    m.def("projection", &projection, py::arg("n"), py::arg("i"), py::arg("k"));

    py::class_<OperationClass>(m, "OperationClass")
        .def(py::init<int>(), py::arg("k"))
        .def(py::init([](int k, const std::vector<Operation>& ops) {
                 OperationClass c(k);
                 for (const auto& f : ops)
                     c.insert(f);
                 return c;
             }),
             py::arg("k"), py::arg("members"))
        .def("insert", &OperationClass::insert)
        .def("__contains__", &OperationClass::contains)
        .def("__len__", &OperationClass::size)
        .def("members", py::overload_cast<>(&OperationClass::members, py::const_))
        .def("members_of_arity", py::overload_cast<int>(&OperationClass::members, py::const_))
        .def_property_readonly("max_arity", &OperationClass::max_arity)
        .def("issubset", &OperationClass::is_subset_of)
        .def("__eq__", [](const OperationClass& a, const OperationClass& b) { return a == b; });

    m.def("all_operations", [](int k, int arity) { return all_operations(k, k, arity); }, py::arg("k"),
          py::arg("arity"));
    m.def("close_perm_dummy", &close_perm_dummy, py::arg("cls"), py::arg("cap"));
    m.def("close_composition", [](const OperationClass& c, int cap) { return close_composition(c, cap); },
          py::arg("cls"), py::arg("cap"));
    m.def("projections_class", &projections_class, py::arg("k"), py::arg("cap"));
    m.def("linear_class_fixture", &linear_class_fixture, py::arg("k"), py::arg("p"), py::arg("cap"));

    py::class_<RepetitionFunction>(m, "RepetitionFunction")
        .def(py::init([](int arity, int k, const py::object& dflt) {
                 return RepetitionFunction(arity, k, extnat_from_py(dflt));
             }),
             py::arg("arity"), py::arg("k"), py::arg("default") = 0)
        .def("__getitem__", [](const RepetitionFunction& r, const Tuple& t) { return extnat_to_py(r(t)); })
        .def("__setitem__",
             [](RepetitionFunction& r, const Tuple& t, const py::object& v) { r.set(t, extnat_from_py(v)); })
        .def_property_readonly("arity", &RepetitionFunction::arity)
        .def("__eq__", [](const RepetitionFunction& a, const RepetitionFunction& b) { return a == b; })
        .def("__repr__", [](const RepetitionFunction& r) { return "rf " + format_repetition_function(r); });

    py::class_<Relation>(m, "Relation")
        .def(py::init<int, int, const std::vector<Tuple>&>(), py::arg("arity"), py::arg("k"), py::arg("tuples"))
        .def_property_readonly("tuples", [](const Relation& r) {
            return std::vector<Tuple>(r.tuples().begin(), r.tuples().end());
        })
        .def("__contains__", &Relation::contains)
        .def("__len__", &Relation::size)
        .def(py::self == py::self);

    py::class_<GeneralizedConstraint>(m, "Constraint")
        .def(py::init<RepetitionFunction, Relation>(), py::arg("antecedent"), py::arg("consequent"))
        .def_property_readonly("antecedent", &GeneralizedConstraint::antecedent)
        .def_property_readonly("consequent", &GeneralizedConstraint::consequent)
        .def(py::self == py::self)
        .def("__repr__", [](const GeneralizedConstraint& c) { return format_constraint("c", c); });

    m.def("equality_constraint", &equality_constraint, py::arg("m"), py::arg("k_in"), py::arg("k_out"));
    m.def("empty_constraint", &empty_constraint, py::arg("m"), py::arg("k_in"), py::arg("k_out"));
    m.def("trivial_constraint", &trivial_constraint, py::arg("m"), py::arg("k_in"), py::arg("k_out"));

    m.def(
        "satisfies_constraint",
        [](const Operation& f, const GeneralizedConstraint& c, std::uint64_t budget) {
            const auto v = satisfies_constraint(f, c, Budget(budget));
            py::dict d;
            d["satisfied"] = v.satisfied;
            d["witness"] = v.witness ? py::cast(v.witness->columns()) : py::none();
            d["image"] = v.image ? py::cast(*v.image) : py::none();
            return d;
        },
        py::arg("f"), py::arg("constraint"), py::arg("budget") = Budget::default_limit);

    py::class_<Cluster>(m, "Cluster")
        .def_property_readonly("arity", &Cluster::arity)
        .def_property_readonly("domain_size", &Cluster::domain_size)
        .def("__contains__", [](const Cluster& c, const std::vector<Tuple>& elements) {
            return member(FiniteMultiset(c.arity(), elements), c);
        })
        .def("__repr__", [](const Cluster& c) { return format_cluster("c", c); });

    m.def("order_cluster", [](int k) { return order_cluster(PartialOrder::chain(k)); }, py::arg("k"));
    m.def("relation_cluster", &relation_cluster, py::arg("relation"));
    m.def("trivial_cluster", &trivial_cluster, py::arg("m"), py::arg("p"), py::arg("k"));
    m.def("equality_cluster", &equality_cluster, py::arg("k"));
    m.def("empty_cluster", &empty_cluster, py::arg("m"), py::arg("k"));

    m.def(
        "satisfies_cluster",
        [](const Operation& f, const Cluster& c, std::uint64_t breadth, std::uint64_t budget) {
            const auto v = satisfies_cluster(f, c, breadth, Budget(budget));
            if (v.status == ClusterStatus::BreadthBelowArity)
                throw PreconditionError("breadth is below the arity of the operation");
            py::dict d;
            d["satisfied"] = v.satisfied();
            d["witness"] = v.witness ? py::object(witness_dict(*v.witness)) : py::none();
            return d;
        },
        py::arg("f"), py::arg("cluster"), py::arg("breadth") = 4, py::arg("budget") = Budget::default_limit);

    m.def(
        "gc_inv",
        [](const OperationClass& c, int columns, int rows, std::uint64_t budget) {
            return gc_inv(c, make_config(2, rows, columns, 4, budget));
        },
        py::arg("cls"), py::arg("column_cap") = 2, py::arg("row_cap") = 4, py::arg("budget") = Budget::default_limit);
    m.def(
        "f_pol",
        [](const std::vector<GeneralizedConstraint>& t, int k, int cap, std::uint64_t budget) {
            return f_pol(t, k, k, make_config(cap, 4, 2, 4, budget));
        },
        py::arg("constraints"), py::arg("k"), py::arg("cap") = 2, py::arg("budget") = Budget::default_limit);
    m.def(
        "cl_inv",
        [](const OperationClass& c, int cap, std::uint64_t budget) {
            return cl_inv(c, make_config(cap, 4, 2, 4, budget));
        },
        py::arg("cls"), py::arg("cap") = 2, py::arg("budget") = Budget::default_limit);
    m.def(
        "c_pol",
        [](const std::vector<Cluster>& t, int k, int cap, std::uint64_t breadth, std::uint64_t budget) {
            return c_pol(t, k, make_config(cap, 4, 2, breadth, budget));
        },
        py::arg("clusters"), py::arg("k"), py::arg("cap") = 2, py::arg("breadth") = 4,
        py::arg("budget") = Budget::default_limit);
    m.def(
        "separating_constraint",
        [](const OperationClass& c, const Operation& g) {
            const auto s = separating_constraint(c, g);
            return py::make_tuple(s.constraint, s.witness.columns(), s.image);
        },
        py::arg("cls"), py::arg("f"));
    m.def(
        "separating_cluster",
        [](const OperationClass& c, const Operation& g, int cap, std::uint64_t breadth) {
            const auto s = separating_cluster(c, g, make_config(cap, 4, 2, breadth, Budget::default_limit));
            return py::make_tuple(s.cluster, witness_dict(s.witness), s.breadth);
        },
        py::arg("cls"), py::arg("f"), py::arg("cap") = 2, py::arg("breadth") = 4);

    m.def(
        "load",
        [](const std::string& path) {
            Workspace ws;
            load_file(ws, path);
            py::dict d;
            d["operations"] = ws.operations;
            d["classes"] = ws.classes;
            d["constraints"] = ws.constraints;
            d["clusters"] = ws.clusters;
            return d;
        },
        py::arg("path"));

    m.def(
        "run_suite",
        [](const std::string& suite, std::uint64_t seed) {
            std::vector<py::dict> out;
            for (const auto& r : run_suite(suite, seed)) {
                py::dict d;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["detail"] = r.detail;
                out.push_back(d);
            }
            return out;
        },
        py::arg("suite"), py::arg("seed") = default_seed);
}
