#include "galoiskit/cli.hpp"

#include "galoiskit/galois.hpp"
#include "galoiskit/textio.hpp"
#include "galoiskit/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace gk {

namespace {

    using Json = nlohmann::ordered_json;

    class UsageError : public Error {
      public:
        using Error::Error;
    };

    struct Options {
        std::vector<std::string> inputs;
        std::uint64_t budget = Budget::default_limit;
        std::string format = "text";

        std::string fn;
        std::string constraint;
        std::string cluster;
        std::string matrix;
        std::string rest;
        std::uint64_t breadth = 4;

        std::string class_name;
        std::string ops = "zeta,tau,nabla";
        int cap = 2;
        std::string out_name;

        std::string kind;
        int rows = 4;

        std::string constraints;
        std::string clusters;
        int k = 0;

        std::string suite;
        std::uint64_t seed = default_seed;
        bool timings = false;
    };

    // Writes records either as text-format statements or as one JSON object per line.
    class Emitter {
      public:
        Emitter(std::ostream& out, bool json, bool file_output) : out_(out), json_(json), file_(file_output) {}

        void record(const std::string& type, const Json& fields, const std::string& text = "") {
            if (json_) {
                Json j;
                j["type"] = type;
                for (const auto& [key, value] : fields.items())
                    j[key] = value;
                if (!text.empty())
                    j["text"] = text;
                out_ << j.dump() << '\n';
                return;
            }
            if (file_ && !header_done_) {
                out_ << format_header << '\n';
                header_done_ = true;
            }
            if (!text.empty()) {
                out_ << text << '\n';
                return;
            }
            out_ << "# " << type << ':';
            for (const auto& [key, value] : fields.items())
                out_ << ' ' << key << '=' << plain(value);
            out_ << '\n';
        }

      private:
        // Strings bare, integer arrays as tuples, anything else as JSON.
        static std::string plain(const Json& v) {
            if (v.is_string())
                return v.get<std::string>();
            if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_number_integer(); }))
                return tuple_to_string(v.get<Tuple>());
            return v.dump();
        }

        std::ostream& out_;
        bool json_;
        bool file_;
        bool header_done_ = false;
    };

    std::vector<std::string> split_list(const std::string& text) {
        std::vector<std::string> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.push_back(item);
        return out;
    }

    Json tuple_json(const Tuple& t) { return Json(t); }

    Json columns_json(const TupleMatrix& m) {
        Json cols = Json::array();
        for (const auto& c : m.columns())
            cols.push_back(tuple_json(c));
        return cols;
    }

    Json multiset_json(const FiniteMultiset& s) {
        Json out = Json::array();
        for (const auto& [t, n] : s.entries())
            out.push_back(Json{{"tuple", tuple_json(t)}, {"count", n}});
        return out;
    }

    // "mat rows=..." -> "mat <name> rows=...", so witnesses can be loaded back.
    std::string named(const std::string& statement, const std::string& name) {
        auto space = statement.find(' ');
        return statement.substr(0, space) + " " + name + statement.substr(space);
    }

    const TupleMatrix& find_matrix(const Workspace& ws, const std::string& name) {
        auto it = ws.matrices.find(name);
        if (it == ws.matrices.end())
            throw PreconditionError("no matrix named '" + name + "'");
        return it->second;
    }

    const FiniteMultiset& find_multiset(const Workspace& ws, const std::string& name) {
        auto it = ws.multisets.find(name);
        if (it == ws.multisets.end())
            throw PreconditionError("no multiset named '" + name + "'");
        return it->second;
    }

    Workspace load(const Options& o) {
        Workspace ws;
        for (const auto& path : o.inputs)
            load_file(ws, path);
        return ws;
    }

    void emit_cluster_witness(Emitter& em, const ClusterWitness& w) {
        em.record("witness", Json{{"first", columns_json(w.first)}}, named(format_matrix(w.first), "witness"));
        em.record("rest", Json{{"rest", multiset_json(w.rest)}}, named(format_multiset(w.rest), "rest"));
        em.record("output", Json{{"output", tuple_json(w.output)}});
    }

    int cmd_satisfies(const Options& o, Emitter& em) {
        if (o.constraint.empty() == o.cluster.empty())
            throw UsageError("give exactly one of --constraint and --cluster");
        const Workspace ws = load(o);
        const Operation& f = ws.operation(o.fn);
        const Budget budget(o.budget);

        if (!o.constraint.empty()) {
            const auto& c = ws.constraint(o.constraint);
            Json who{{"fn", o.fn}, {"constraint", o.constraint}};
            if (!o.matrix.empty()) {
                const auto& m = find_matrix(ws, o.matrix);
                if (m.rows() != c.arity() || m.cols() != f.arity())
                    throw PreconditionError("matrix shape does not match the constraint arity and operation arity");
                if (f.domain_size() != c.domain_size())
                    throw PreconditionError("operation and constraint live on different sets");
                const bool below = precedes(m, c.antecedent());
                const Tuple image = apply_op_rows(f, m);
                const bool violated = below && !c.consequent().contains(image);
                who["below_antecedent"] = below;
                who["image"] = tuple_json(image);
                em.record(violated ? "violated" : "conforms", who);
                return violated ? exit_violated : exit_ok;
            }
            const auto v = satisfies_constraint(f, c, budget);
            if (v.satisfied) {
                em.record("satisfied", who);
                return exit_ok;
            }
            em.record("violated", who);
            em.record("witness", Json{{"columns", columns_json(*v.witness)}}, named(format_matrix(*v.witness), "witness"));
            em.record("image", Json{{"image", tuple_json(*v.image)}});
            return exit_violated;
        }

        const auto& c = ws.cluster(o.cluster);
        Json who{{"fn", o.fn}, {"cluster", o.cluster}, {"breadth", o.breadth}};
        if (!o.matrix.empty()) {
            const auto& m = find_matrix(ws, o.matrix);
            FiniteMultiset rest = o.rest.empty() ? FiniteMultiset(c.arity()) : find_multiset(ws, o.rest);
            if (m.rows() != c.arity() || m.cols() != f.arity() || rest.arity() != c.arity())
                throw PreconditionError("matrix or multiset shape does not match the cluster and operation");
            const FiniteMultiset source = ms_join(columns_multiset(m), rest);
            const Tuple out = apply_op_rows(f, m);
            FiniteMultiset image = rest;
            image.add(out);
            const bool violated = member(source, c) && !member(image, c);
            who["source_member"] = member(source, c);
            who["output"] = tuple_json(out);
            em.record(violated ? "violated" : "conforms", who);
            return violated ? exit_violated : exit_ok;
        }
        const auto v = satisfies_cluster(f, c, o.breadth, budget);
        if (v.status == ClusterStatus::BreadthBelowArity)
            throw PreconditionError("breadth " + std::to_string(o.breadth) + " is below the arity " +
                                    std::to_string(f.arity()) + " of the operation; no split exists");
        if (v.satisfied()) {
            em.record("satisfied", who);
            return exit_ok;
        }
        em.record("violated", who);
        emit_cluster_witness(em, *v.witness);
        return exit_violated;
    }

    int cmd_close(const Options& o, Emitter& em) {
        const Workspace ws = load(o);
        const auto& cls = ws.operation_class(o.class_name);
        const Budget budget(o.budget);
        const auto ops = split_list(o.ops);
        OperationClass result(cls.domain_size(), cls.codomain_size());
        if (ops == std::vector<std::string>{"perm-dummy"}) {
            result = close_perm_dummy(cls, o.cap);
        } else if (ops == std::vector<std::string>{"composition"}) {
            result = close_composition(cls, o.cap, budget);
        } else {
            ClosureOps sel;
            for (const auto& op : ops) {
                if (op == "zeta")
                    sel.zeta = true;
                else if (op == "tau")
                    sel.tau = true;
                else if (op == "delta")
                    sel.delta = true;
                else if (op == "nabla")
                    sel.nabla = true;
                else if (op == "star")
                    sel.star = true;
                else
                    throw UsageError("unknown closure operation '" + op +
                                     "' (use zeta, tau, delta, nabla, star, or perm-dummy / composition alone)");
            }
            result = close_under(cls, sel, o.cap, budget);
        }
        const std::string name = o.out_name.empty() ? o.class_name + "_closed" : o.out_name;
        em.record("note", Json{{"bounded", "intermediate results of arity > " + std::to_string(o.cap) + " are not formed"}});
        em.record("class", Json{{"name", name}, {"size", result.size()}}, format_class(name, result));
        return exit_ok;
    }

    int cmd_inv(const Options& o, Emitter& em) {
        const Workspace ws = load(o);
        const auto& cls = ws.operation_class(o.class_name);
        GaloisConfig cfg;
        cfg.budget = Budget(o.budget);
        const std::string base = o.out_name.empty() ? o.class_name + "_inv" : o.out_name;
        if (o.kind == "constraint") {
            cfg.column_cap = o.cap;
            cfg.constraint_arity_cap = o.rows;
            const auto list = gc_inv(cls, cfg);
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string name = base + "_" + std::to_string(i);
                em.record("constraint", Json{{"name", name}}, format_constraint(name, list[i]));
            }
        } else if (o.kind == "cluster") {
            cfg.arity_cap = o.cap;
            cfg.breadth_cap = o.breadth;
            const auto list = cl_inv(cls, cfg);
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string name = base + "_" + std::to_string(i + 1);
                em.record("cluster", Json{{"name", name}}, format_cluster(name, list[i]));
            }
        } else {
            throw UsageError("--kind must be constraint or cluster");
        }
        return exit_ok;
    }

    int cmd_pol(const Options& o, Emitter& em) {
        if (o.constraints.empty() == o.clusters.empty() && !(o.constraints.empty() && o.k > 0))
            throw UsageError("give exactly one of --constraints and --clusters (or an empty set with --k)");
        const Workspace ws = load(o);
        GaloisConfig cfg;
        cfg.budget = Budget(o.budget);
        cfg.arity_cap = o.cap;
        cfg.breadth_cap = o.breadth;
        OperationClass result(1);
        if (!o.clusters.empty() || (o.constraints.empty() && o.k > 0)) {
            std::vector<Cluster> t;
            for (const auto& name : split_list(o.clusters))
                t.push_back(ws.cluster(name));
            const int k = o.k > 0 ? o.k : t.front().domain_size();
            result = c_pol(t, k, cfg);
        } else {
            std::vector<GeneralizedConstraint> t;
            for (const auto& name : split_list(o.constraints))
                t.push_back(ws.constraint(name));
            const int k_in = o.k > 0 ? o.k : t.front().domain_size();
            result = f_pol(t, k_in, t.front().codomain_size(), cfg);
        }
        const std::string name = o.out_name.empty() ? "pol" : o.out_name;
        em.record("class", Json{{"name", name}, {"size", result.size()}}, format_class(name, result));
        return exit_ok;
    }

    int cmd_separate(const Options& o, Emitter& em) {
        const Workspace ws = load(o);
        const auto& cls = ws.operation_class(o.class_name);
        const auto& g = ws.operation(o.fn);
        const std::string name = o.out_name.empty() ? o.class_name + "_sep" : o.out_name;
        try {
            if (o.kind == "constraint") {
                const auto sep = separating_constraint(cls, g);
                em.record("constraint", Json{{"name", name}}, format_constraint(name, sep.constraint));
                em.record("witness", Json{{"columns", columns_json(sep.witness)}}, named(format_matrix(sep.witness), "witness"));
                em.record("image", Json{{"image", tuple_json(sep.image)}});
            } else if (o.kind == "cluster") {
                GaloisConfig cfg;
                cfg.budget = Budget(o.budget);
                cfg.arity_cap = o.cap;
                cfg.breadth_cap = o.breadth;
                const auto sep = separating_cluster(cls, g, cfg);
                em.record("cluster", Json{{"name", name}}, format_cluster(name, sep.cluster));
                emit_cluster_witness(em, sep.witness);
                em.record("breadth", Json{{"breadth", sep.breadth}});
            } else {
                throw UsageError("--kind must be constraint or cluster");
            }
        } catch (const NoSeparatorError& e) {
            em.record("no-separator", Json{{"fn", o.fn}, {"class", o.class_name}, {"reason", e.what()}});
            return exit_violated;
        }
        em.record("verified", Json{{"class_members_satisfy", true}, {"fn_violates", true}});
        return exit_ok;
    }

    int cmd_verify(const Options& o, Emitter& em) {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), o.suite) == names.end())
            throw UsageError("unknown suite '" + o.suite + "'");
        bool all_passed = true;
        run_suite(o.suite, o.seed, [&](const CheckResult& r) {
            all_passed = all_passed && r.passed;
            Json fields{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
            std::ostringstream line;
            line << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail;
            if (o.timings) {
                std::ostringstream secs;
                secs << std::fixed << std::setprecision(3) << r.seconds;
                fields["seconds"] = r.seconds;
                line << " (" << secs.str() << " s)";
            }
            em.record("check", fields, line.str());
        });
        return all_passed ? exit_ok : exit_violated;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Finite clone-theory toolkit: constraints, clusters and their Galois connections", "galois-kit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("-i,--input", o.inputs, "Input file in the galois-kit text format (repeatable)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_option("--budget", o.budget, "Work budget in enumeration steps")->capture_default_str();
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json-lines"}))
        ->capture_default_str();

    auto* sat = app.add_subcommand("satisfies", "Check an operation against a constraint or cluster");
    sat->add_option("--fn", o.fn, "Operation name")->required();
    sat->add_option("--constraint", o.constraint, "Constraint name");
    sat->add_option("--cluster", o.cluster, "Cluster name");
    sat->add_option("--breadth", o.breadth, "Breadth cap for clusters")->capture_default_str();
    sat->add_option("--matrix", o.matrix, "Check only this matrix (a printed witness)");
    sat->add_option("--rest", o.rest, "Remaining columns for a cluster witness");

    auto* close = app.add_subcommand("close", "Bounded closure of a class");
    close->add_option("--class", o.class_name, "Class name")->required();
    close->add_option("--ops", o.ops, "zeta,tau,delta,nabla,star | perm-dummy | composition")->capture_default_str();
    close->add_option("--cap", o.cap, "Arity cap")->capture_default_str();
    close->add_option("--name", o.out_name, "Name of the output class");

    auto* inv = app.add_subcommand("inv", "Invariant constraints or clusters of a class");
    inv->add_option("--class", o.class_name, "Class name")->required();
    inv->add_option("--kind", o.kind, "constraint or cluster")->required();
    inv->add_option("--cap", o.cap, "Column cap (constraints) or arity cap (clusters)")->capture_default_str();
    inv->add_option("--breadth", o.breadth, "Breadth cap")->capture_default_str();
    inv->add_option("--rows", o.rows, "Largest constraint arity")->capture_default_str();
    inv->add_option("--name", o.out_name, "Name prefix of the output objects");

    auto* pol = app.add_subcommand("pol", "Operations satisfying a set of constraints or clusters");
    pol->add_option("--constraints", o.constraints, "Comma-separated constraint names");
    pol->add_option("--clusters", o.clusters, "Comma-separated cluster names");
    pol->add_option("--cap", o.cap, "Arity cap")->capture_default_str();
    pol->add_option("--breadth", o.breadth, "Breadth cap for clusters")->capture_default_str();
    pol->add_option("--k", o.k, "Domain size (needed for an empty set)");
    pol->add_option("--name", o.out_name, "Name of the output class");

    auto* sep = app.add_subcommand("separate", "Separate an operation from a class");
    sep->add_option("--class", o.class_name, "Class name")->required();
    sep->add_option("--fn", o.fn, "Operation name")->required();
    sep->add_option("--kind", o.kind, "constraint or cluster")->required();
    sep->add_option("--cap", o.cap, "Arity cap for the cluster construction")->capture_default_str();
    sep->add_option("--breadth", o.breadth, "Breadth cap")->capture_default_str();
    sep->add_option("--name", o.out_name, "Name of the separator");

    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("suite", o.suite, "malcev, chi-m, minors, lemma-all, claim1, cluster-lemmas, roundtrip, separation, all")
        ->required();
    ver->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    ver->add_flag("--timings", o.timings, "Report per-check times (output is then not byte-stable)");

    std::vector<const char*> argv{"galois-kit"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    const bool json = o.format == "json-lines";
    try {
        if (sat->parsed()) {
            Emitter em(out, json, true);
            return cmd_satisfies(o, em);
        }
        if (close->parsed()) {
            Emitter em(out, json, true);
            return cmd_close(o, em);
        }
        if (inv->parsed()) {
            Emitter em(out, json, true);
            return cmd_inv(o, em);
        }
        if (pol->parsed()) {
            Emitter em(out, json, true);
            return cmd_pol(o, em);
        }
        if (sep->parsed()) {
            Emitter em(out, json, true);
            return cmd_separate(o, em);
        }
        Emitter em(out, json, false);
        return cmd_verify(o, em);
    } catch (const BudgetExceeded& e) {
        err << "galois-kit: " << e.what() << '\n';
        return exit_budget;
    } catch (const std::exception& e) {
        err << "galois-kit: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace gk
