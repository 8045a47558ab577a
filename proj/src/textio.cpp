#include "galoiskit/textio.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace gk {

namespace {

    struct Token {
        enum class Kind { Word, Punct, End };
        Kind kind = Kind::End;
        std::string text;
        int line = 0;
    };

    bool word_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
    }

    std::vector<Token> tokenize(std::string_view text, const std::string& source) {
        std::vector<Token> out;
        int line = 1;
        std::size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (c == '\n') {
                ++line;
                ++i;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (c == '#') {
                while (i < text.size() && text[i] != '\n')
                    ++i;
            } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
                out.push_back({Token::Kind::Punct, "->", line});
                i += 2;
            } else if (word_char(c)) {
                std::size_t j = i;
                while (j < text.size() && word_char(text[j]) && !(text[j] == '-' && j + 1 < text.size() && text[j + 1] == '>'))
                    ++j;
                out.push_back({Token::Kind::Word, std::string(text.substr(i, j - i)), line});
                i = j;
            } else if (std::string_view("{}()[],;:=*").find(c) != std::string_view::npos) {
                out.push_back({Token::Kind::Punct, std::string(1, c), line});
                ++i;
            } else {
                throw ParseError(source + ":" + std::to_string(line) + ": unexpected character '" + std::string(1, c) +
                                 "'");
            }
        }
        out.push_back({Token::Kind::End, "", line});
        return out;
    }

    const std::set<std::string> statement_keywords = {"op",  "class", "rf",  "constraint", "cluster",
                                                      "ms",  "mat",   "scheme", "galois-kit"};

    class Parser {
      public:
        Parser(std::string_view text, std::string source) : toks_(tokenize(text, source)), source_(std::move(source)) {}

        const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
        bool at_end() const { return peek().kind == Token::Kind::End; }
        Token next() {
            Token t = peek();
            if (pos_ < toks_.size() - 1)
                ++pos_;
            return t;
        }

        [[noreturn]] void fail(const std::string& msg) const {
            throw ParseError(source_ + ":" + std::to_string(peek().line) + ": " + msg +
                             (at_end() ? " (at end of input)" : " (near '" + peek().text + "')"));
        }

        bool is(const std::string& text, std::size_t ahead = 0) const {
            const auto& t = peek(ahead);
            return t.kind != Token::Kind::End && t.text == text;
        }
        bool accept(const std::string& text) {
            if (!is(text))
                return false;
            next();
            return true;
        }
        void expect(const std::string& text) {
            if (!accept(text))
                fail("expected '" + text + "'");
        }

        std::string word() {
            if (peek().kind != Token::Kind::Word)
                fail("expected a name or number");
            return next().text;
        }
        std::string name() {
            std::string w = word();
            if (!std::isalpha(static_cast<unsigned char>(w[0])) && w[0] != '_') {
                --pos_;
                fail("names must start with a letter");
            }
            return w;
        }
        long long integer() {
            std::string w = word();
            try {
                std::size_t used = 0;
                long long v = std::stoll(w, &used);
                if (used != w.size())
                    throw std::invalid_argument(w);
                return v;
            } catch (const std::exception&) {
                --pos_;
                fail("expected an integer");
            }
        }
        int small_int(long long lo, const std::string& what) {
            long long v = integer();
            if (v < lo || v > 1'000'000) {
                --pos_;
                fail(what + " out of range");
            }
            return static_cast<int>(v);
        }
        ExtNat extnat() {
            std::string w = word();
            try {
                return ExtNat::parse(w);
            } catch (const std::exception&) {
                --pos_;
                fail("expected a count or 'inf'");
            }
        }
        bool is_key(const std::string& key) const { return is(key) && is("=", 1); }
        void key(const std::string& k) {
            if (!is_key(k))
                fail("expected '" + k + "='");
            next();
            next();
        }

        Tuple paren_tuple(int arity, int k) {
            expect("(");
            Tuple t;
            // Entries may be separated by commas or just whitespace.
            while (!accept(")")) {
                if (!t.empty())
                    accept(",");
                t.push_back(element(k));
            }
            if (arity >= 0 && static_cast<int>(t.size()) != arity)
                fail("tuple should have " + std::to_string(arity) + " entries");
            return t;
        }
        Tuple spaced_tuple(int arity, int k) {
            Tuple t;
            for (int i = 0; i < arity; ++i)
                t.push_back(element(k));
            return t;
        }
        Elem element(int k) {
            long long v = integer();
            if (v < 0 || (k > 0 && v >= k)) {
                --pos_;
                fail("element " + std::to_string(v) + " outside the domain");
            }
            return static_cast<Elem>(v);
        }

        template <typename F>
        auto guarded(F&& f) -> decltype(f()) {
            try {
                return f();
            } catch (const PreconditionError& e) {
                fail(e.what());
            }
        }

        std::size_t line() const { return static_cast<std::size_t>(peek().line); }

      private:
        std::vector<Token> toks_;
        std::size_t pos_ = 0;
        std::string source_;
    };

    template <typename T>
    void store(Parser& p, std::map<std::string, T>& into, const std::string& name, T value, const char* kind) {
        if (into.contains(name))
            p.fail(std::string("duplicate ") + kind + " '" + name + "'");
        into.emplace(name, std::move(value));
    }

    Operation parse_op_body(Parser& p) {
        p.key("k");
        int kin = p.small_int(1, "domain size");
        int kout = kin;
        if (p.accept(","))
            kout = p.small_int(1, "codomain size");
        p.key("arity");
        int n = p.small_int(1, "arity");
        p.expect(":");
        std::uint64_t size = checked_pow(static_cast<std::uint64_t>(kin), static_cast<unsigned>(n));
        if (size > 50'000'000)
            p.fail("operation table too large");
        std::vector<Elem> table;
        for (std::uint64_t i = 0; i < size; ++i)
            table.push_back(p.element(kout));
        return p.guarded([&] { return Operation(kin, kout, n, std::move(table)); });
    }

    RepetitionFunction parse_rf_body(Parser& p) {
        p.key("arity");
        int m = p.small_int(1, "arity");
        p.key("k");
        int k = p.small_int(1, "domain size");
        p.key("default");
        ExtNat def = p.extnat();
        RepetitionFunction rf = p.guarded([&] { return RepetitionFunction(m, k, def); });
        p.expect("{");
        while (!p.accept("}")) {
            Tuple t = p.spaced_tuple(m, k);
            p.expect("->");
            ExtNat v = p.extnat();
            p.guarded([&] {
                rf.set(t, v);
                return 0;
            });
            if (!p.is("}"))
                p.expect(";");
        }
        return rf;
    }

    RepetitionFunction rf_ref_or_inline(Parser& p, const Workspace& ws) {
        if (p.accept("[")) {
            p.accept("rf");
            auto rf = parse_rf_body(p);
            p.expect("]");
            return rf;
        }
        std::string ref = p.name();
        auto it = ws.repetition_functions.find(ref);
        if (it == ws.repetition_functions.end())
            p.fail("unknown repetition function '" + ref + "'");
        return it->second;
    }

    std::vector<Tuple> tuple_set(Parser& p, int arity, int k) {
        std::vector<Tuple> out;
        p.expect("{");
        while (!p.accept("}")) {
            out.push_back(p.paren_tuple(arity, k));
            if (!p.is("}"))
                p.expect(",");
        }
        return out;
    }

    FiniteMultiset parse_ms_body(Parser& p) {
        p.key("arity");
        int m = p.small_int(1, "arity");
        FiniteMultiset s(m);
        p.expect("{");
        while (!p.accept("}")) {
            Tuple t = p.spaced_tuple(m, 0);
            std::uint64_t count = 1;
            if (p.accept("*"))
                count = static_cast<std::uint64_t>(p.small_int(0, "multiplicity"));
            s.add(t, count);
            if (!p.is("}"))
                p.expect(";");
        }
        return s;
    }

    TupleMatrix parse_mat_body(Parser& p) {
        p.key("rows");
        int rows = p.small_int(1, "row count");
        p.key("cols");
        int cols = p.small_int(0, "column count");
        p.expect(":");
        TupleMatrix m(rows);
        for (int j = 0; j < cols; ++j) {
            if (!p.accept("col"))
                p.fail("expected col(...)");
            m.push_column(p.paren_tuple(rows, 0));
        }
        return m;
    }

    MinorScheme parse_scheme_body(Parser& p) {
        p.key("target");
        int target = p.small_int(1, "target");
        std::vector<std::string> vars;
        if (p.is_key("vars")) {
            p.key("vars");
            p.expect("[");
            while (!p.accept("]")) {
                vars.push_back(p.name());
                if (!p.is("]"))
                    p.expect(",");
            }
        }
        std::vector<SchemeMap> maps;
        while (p.is("map")) {
            p.next();
            p.key("j");
            int j = p.small_int(0, "map index");
            if (j != static_cast<int>(maps.size()))
                p.fail("map indices must be 0, 1, 2, ... in order");
            p.key("arity");
            int n = p.small_int(1, "source arity");
            p.expect(":");
            SchemeMap h;
            for (int i = 0; i < n; ++i) {
                std::string e = p.word();
                if (std::isdigit(static_cast<unsigned char>(e[0]))) {
                    h.push_back(SchemeEntry::coord(std::stoi(e)));
                } else {
                    auto it = std::find(vars.begin(), vars.end(), e);
                    if (it == vars.end())
                        p.fail("unknown indeterminate '" + e + "'");
                    h.push_back(SchemeEntry::var(static_cast<int>(it - vars.begin())));
                }
            }
            maps.push_back(std::move(h));
        }
        return p.guarded([&] { return MinorScheme(target, vars, maps); });
    }

    std::string optional_name(Parser& p, const std::string& kind, std::size_t index, const std::string& first_key) {
        if (p.is_key(first_key))
            return kind + std::to_string(index);
        return p.name();
    }

    void parse_class(Parser& p, Workspace& ws) {
        std::string name = p.name();
        if (p.accept("=")) {
            std::string kind = p.word();
            if (kind == "projections") {
                p.key("k");
                int k = p.small_int(1, "domain size");
                p.key("cap");
                int cap = p.small_int(1, "arity cap");
                store(p, ws.classes, name, projections_class(k, cap), "class");
            } else if (kind == "linear") {
                p.key("k");
                int k = p.small_int(2, "field size");
                p.key("p");
                int mod = p.small_int(2, "modulus");
                p.key("cap");
                int cap = p.small_int(1, "arity cap");
                store(p, ws.classes, name, p.guarded([&] { return linear_class_fixture(k, mod, cap); }), "class");
            } else {
                p.fail("unknown class constructor '" + kind + "'");
            }
            return;
        }
        p.expect(":");
        const std::size_t line = p.line();
        std::vector<std::string> members;
        while (p.peek().kind == Token::Kind::Word && p.line() == line)
            members.push_back(p.name());
        if (members.empty())
            p.fail("a class needs at least one member (or use a constructor)");
        std::optional<OperationClass> cls;
        for (const auto& m : members) {
            auto it = ws.operations.find(m);
            if (it == ws.operations.end())
                p.fail("unknown operation '" + m + "'");
            if (!cls)
                cls.emplace(it->second.domain_size(), it->second.codomain_size());
            p.guarded([&] { return cls->insert(it->second); });
        }
        store(p, ws.classes, name, std::move(*cls), "class");
    }

    void parse_constraint(Parser& p, Workspace& ws) {
        std::string name = p.name();
        if (p.accept("=")) {
            std::string kind = p.word();
            p.key("m");
            int m = p.small_int(1, "arity");
            p.key("k");
            int k = p.small_int(1, "domain size");
            int kout = k;
            if (p.is_key("k_out")) {
                p.key("k_out");
                kout = p.small_int(1, "codomain size");
            }
            if (kind == "equality")
                store(p, ws.constraints, name, equality_constraint(m, k, kout), "constraint");
            else if (kind == "empty")
                store(p, ws.constraints, name, empty_constraint(m, k, kout), "constraint");
            else if (kind == "trivial")
                store(p, ws.constraints, name, trivial_constraint(m, k, kout), "constraint");
            else
                p.fail("unknown constraint constructor '" + kind + "'");
            return;
        }
        p.expect(":");
        p.key("rf");
        RepetitionFunction rf = rf_ref_or_inline(p, ws);
        p.key("consequent");
        // The alphabet may follow the tuples; read them first, validate after.
        std::vector<Tuple> tuples = tuple_set(p, rf.arity(), 0);
        int kout = rf.domain_size();
        if (p.is_key("k_out")) {
            p.key("k_out");
            kout = p.small_int(1, "codomain size");
        }
        auto c = p.guarded([&] { return GeneralizedConstraint(rf, Relation(rf.arity(), kout, tuples)); });
        store(p, ws.constraints, name, std::move(c), "constraint");
    }

    void parse_cluster(Parser& p, Workspace& ws) {
        std::string name = p.name();
        if (p.accept("=")) {
            std::string kind = p.word();
            Cluster c(1, 1);
            if (kind == "order") {
                p.key("k");
                int k = p.small_int(1, "domain size");
                if (p.is_key("leq")) {
                    p.key("leq");
                    std::vector<std::pair<Elem, Elem>> pairs;
                    for (const auto& t : tuple_set(p, 2, k))
                        pairs.emplace_back(t[0], t[1]);
                    for (Elem x = 0; x < k; ++x)
                        pairs.emplace_back(x, x);
                    c = p.guarded([&] { return order_cluster(PartialOrder(k, pairs)); });
                } else {
                    c = order_cluster(PartialOrder::chain(k));
                }
            } else if (kind == "relation") {
                p.key("m");
                int m = p.small_int(1, "arity");
                p.key("k");
                int k = p.small_int(1, "domain size");
                p.key("tuples");
                auto tuples = tuple_set(p, m, k);
                c = relation_cluster(Relation(m, k, tuples));
            } else if (kind == "trivial") {
                p.key("m");
                int m = p.small_int(1, "arity");
                p.key("k");
                int k = p.small_int(1, "domain size");
                p.key("p");
                c = trivial_cluster(m, static_cast<std::uint64_t>(p.small_int(0, "breadth")), k);
            } else if (kind == "equality") {
                p.key("k");
                c = equality_cluster(p.small_int(1, "domain size"));
            } else if (kind == "empty") {
                p.key("m");
                int m = p.small_int(1, "arity");
                p.key("k");
                c = empty_cluster(m, p.small_int(1, "domain size"));
            } else {
                p.fail("unknown cluster constructor '" + kind + "'");
            }
            store(p, ws.clusters, name, std::move(c), "cluster");
            return;
        }
        p.key("arity");
        int m = p.small_int(1, "arity");
        p.key("k");
        int k = p.small_int(1, "domain size");
        Cluster c(m, k);
        p.expect("{");
        while (!p.accept("}")) {
            if (!p.accept("gen"))
                p.fail("expected 'gen'");
            p.key("cap");
            ExtNat cap = p.extnat();
            p.key("rf");
            RepetitionFunction box = rf_ref_or_inline(p, ws);
            p.guarded([&] {
                c.add({box, cap});
                return 0;
            });
            if (!p.is("}"))
                p.expect(";");
        }
        store(p, ws.clusters, name, std::move(c), "cluster");
    }

    void parse_statements(Parser& p, Workspace& ws, std::vector<std::string>& op_names) {
        if (p.accept("galois-kit")) {
            if (p.word() != "v1")
                p.fail("unsupported format version");
        }
        while (!p.at_end()) {
            std::string kw = p.word();
            if (kw == "op") {
                std::string name = p.name();
                store(p, ws.operations, name, parse_op_body(p), "operation");
                op_names.push_back(name);
            } else if (kw == "class") {
                parse_class(p, ws);
            } else if (kw == "rf") {
                std::string name = optional_name(p, "rf", ws.repetition_functions.size() + 1, "arity");
                store(p, ws.repetition_functions, name, parse_rf_body(p), "repetition function");
            } else if (kw == "constraint") {
                parse_constraint(p, ws);
            } else if (kw == "cluster") {
                parse_cluster(p, ws);
            } else if (kw == "ms") {
                std::string name = optional_name(p, "ms", ws.multisets.size() + 1, "arity");
                store(p, ws.multisets, name, parse_ms_body(p), "multiset");
            } else if (kw == "mat") {
                std::string name = optional_name(p, "mat", ws.matrices.size() + 1, "rows");
                store(p, ws.matrices, name, parse_mat_body(p), "matrix");
            } else if (kw == "scheme") {
                std::string name = optional_name(p, "scheme", ws.schemes.size() + 1, "target");
                store(p, ws.schemes, name, parse_scheme_body(p), "scheme");
            } else {
                p.fail("unknown statement '" + kw + "'");
            }
        }
    }

    template <typename T>
    const T& lookup(const std::map<std::string, T>& m, const std::string& name, const char* kind) {
        auto it = m.find(name);
        if (it == m.end())
            throw PreconditionError(std::string("no ") + kind + " named '" + name + "'");
        return it->second;
    }

    template <typename T, typename F>
    T parse_single(std::string_view text, const char* keyword, F body) {
        Parser p(text, "<text>");
        if (!p.accept(keyword))
            p.fail(std::string("expected '") + keyword + "'");
        T value = body(p);
        if (!p.at_end())
            p.fail("trailing input");
        return value;
    }

    std::string join_elems(const Tuple& t) {
        std::string out;
        for (std::size_t i = 0; i < t.size(); ++i)
            out += (i ? " " : "") + std::to_string(t[i]);
        return out;
    }
}

const Operation& Workspace::operation(const std::string& name) const {
    return lookup(operations, name, "operation");
}
const OperationClass& Workspace::operation_class(const std::string& name) const {
    return lookup(classes, name, "class");
}
const GeneralizedConstraint& Workspace::constraint(const std::string& name) const {
    return lookup(constraints, name, "constraint");
}
const Cluster& Workspace::cluster(const std::string& name) const {
    return lookup(clusters, name, "cluster");
}
const MinorScheme& Workspace::scheme(const std::string& name) const {
    return lookup(schemes, name, "scheme");
}

void parse_into(Workspace& ws, std::string_view text, const std::string& source, const std::string& implicit_class) {
    Parser p(text, source);
    std::vector<std::string> op_names;
    parse_statements(p, ws, op_names);
    if (implicit_class.empty() || op_names.empty() || ws.classes.contains(implicit_class))
        return;
    const auto& first = ws.operations.at(op_names.front());
    OperationClass cls(first.domain_size(), first.codomain_size());
    for (const auto& n : op_names) {
        const auto& op = ws.operations.at(n);
        if (op.domain_size() != cls.domain_size() || op.codomain_size() != cls.codomain_size())
            return;  // mixed sets: no implicit class
        cls.insert(op);
    }
    ws.classes.emplace(implicit_class, std::move(cls));
}

Workspace parse_workspace(std::string_view text, const std::string& source) {
    Workspace ws;
    parse_into(ws, text, source);
    return ws;
}

void load_file(Workspace& ws, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    parse_into(ws, buf.str(), path, std::filesystem::path(path).stem().string());
}

Operation parse_operation(std::string_view text) {
    return parse_single<Operation>(text, "op", [](Parser& p) {
        p.name();
        return parse_op_body(p);
    });
}

RepetitionFunction parse_repetition_function(std::string_view text) {
    return parse_single<RepetitionFunction>(text, "rf", [](Parser& p) {
        if (!p.is_key("arity"))
            p.name();
        return parse_rf_body(p);
    });
}

FiniteMultiset parse_multiset(std::string_view text) {
    return parse_single<FiniteMultiset>(text, "ms", [](Parser& p) {
        if (!p.is_key("arity"))
            p.name();
        return parse_ms_body(p);
    });
}

TupleMatrix parse_matrix(std::string_view text) {
    return parse_single<TupleMatrix>(text, "mat", [](Parser& p) {
        if (!p.is_key("rows"))
            p.name();
        return parse_mat_body(p);
    });
}

MinorScheme parse_scheme(std::string_view text) {
    return parse_single<MinorScheme>(text, "scheme", [](Parser& p) {
        if (!p.is_key("target"))
            p.name();
        return parse_scheme_body(p);
    });
}

std::string format_operation(const std::string& name, const Operation& op) {
    std::ostringstream os;
    os << "op " << name << " k=" << op.domain_size();
    if (op.codomain_size() != op.domain_size())
        os << ',' << op.codomain_size();
    os << " arity=" << op.arity() << " :";
    for (Elem v : op.table())
        os << ' ' << v;
    return os.str();
}

std::string format_class(const std::string& name, const OperationClass& cls) {
    std::ostringstream os;
    os << "# class " << name << ": " << cls.size() << " member" << (cls.size() == 1 ? "" : "s") << '\n';
    std::map<int, int> index;
    for (const auto& op : cls.members())
        os << format_operation(name + "_" + std::to_string(op.arity()) + "_" + std::to_string(index[op.arity()]++), op)
           << '\n';
    return os.str();
}

std::string format_repetition_function(const RepetitionFunction& rf) {
    std::ostringstream os;
    os << "arity=" << rf.arity() << " k=" << rf.domain_size() << " default=" << rf.default_value() << " {";
    for (const auto& [t, v] : rf.exceptions())
        os << ' ' << join_elems(t) << " -> " << v << " ;";
    os << " }";
    return os.str();
}

std::string format_relation(const Relation& r) {
    std::string out = "{";
    bool first = true;
    for (const auto& t : r.tuples()) {
        out += (first ? " " : ", ") + tuple_to_string(t);
        first = false;
    }
    return out + " }";
}

std::string format_constraint(const std::string& name, const GeneralizedConstraint& c) {
    return "constraint " + name + " : rf=[" + format_repetition_function(c.antecedent()) +
           "] consequent=" + format_relation(c.consequent()) + " k_out=" + std::to_string(c.codomain_size());
}

std::string format_cluster(const std::string& name, const Cluster& c) {
    std::ostringstream os;
    os << "cluster " << name << " arity=" << c.arity() << " k=" << c.domain_size() << " {";
    for (const auto& g : c.generators())
        os << "\n  gen cap=" << g.cap << " rf=[" << format_repetition_function(g.box) << "] ;";
    os << (c.generators().empty() ? " }" : "\n}");
    return os.str();
}

std::string format_multiset(const FiniteMultiset& s) {
    std::ostringstream os;
    os << "ms arity=" << s.arity() << " {";
    for (const auto& [t, n] : s.entries())
        os << ' ' << join_elems(t) << " * " << n << " ;";
    os << " }";
    return os.str();
}

std::string format_matrix(const TupleMatrix& m) {
    std::ostringstream os;
    os << "mat rows=" << m.rows() << " cols=" << m.cols() << " :";
    for (const auto& c : m.columns())
        os << " col" << tuple_to_string(c);
    return os.str();
}

std::string format_scheme(const MinorScheme& h) {
    std::ostringstream os;
    os << "scheme target=" << h.target() << " vars=[";
    for (std::size_t i = 0; i < h.vars().size(); ++i)
        os << (i ? "," : "") << h.vars()[i];
    os << ']';
    for (std::size_t j = 0; j < h.maps().size(); ++j) {
        os << " map j=" << j << " arity=" << h.maps()[j].size() << " :";
        for (const auto& e : h.maps()[j])
            os << ' ' << (e.is_var() ? h.vars()[static_cast<std::size_t>(e.index)] : std::to_string(e.index));
    }
    return os.str();
}

}  // namespace gk
