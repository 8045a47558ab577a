#include "galoiskit/minors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gk {

MinorScheme::MinorScheme(int target, std::vector<std::string> vars, std::vector<SchemeMap> maps)
    : target_(target), vars_(std::move(vars)), maps_(std::move(maps)) {
    if (target < 1)
        throw PreconditionError("scheme target must be >= 1");
    if (maps_.empty())
        throw PreconditionError("a minor formation scheme needs at least one map");
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.empty())
            throw PreconditionError("indeterminate names must be non-empty");
        if (!seen.insert(v).second)
            throw PreconditionError("duplicate indeterminate '" + v + "'");
    }
    for (const auto& h : maps_) {
        if (h.empty())
            throw PreconditionError("scheme maps need a non-empty source");
        for (const auto& e : h) {
            int bound = e.is_var() ? static_cast<int>(vars_.size()) : target_;
            if (e.index < 0 || e.index >= bound)
                throw PreconditionError(e.is_var() ? "scheme map refers to an unknown indeterminate"
                                                   : "scheme map value outside the target");
        }
    }
}

MinorScheme MinorScheme::identity(int m) {
    SchemeMap h;
    for (int i = 0; i < m; ++i)
        h.push_back(SchemeEntry::coord(i));
    return MinorScheme(m, {}, {h});
}

Tuple apply_scheme_map(const Tuple& a, const SkolemMap& sigma, const SchemeMap& h) {
    Tuple out;
    out.reserve(h.size());
    for (const auto& e : h)
        out.push_back(e.is_var() ? sigma[static_cast<std::size_t>(e.index)] : a[static_cast<std::size_t>(e.index)]);
    return out;
}

CompositeScheme compose_schemes(const MinorScheme& outer, const std::vector<MinorScheme>& inner) {
    if (static_cast<int>(inner.size()) != outer.family_size())
        throw PreconditionError("compose_schemes: need one inner scheme per outer map");

    std::vector<std::string> names = outer.vars();
    std::set<std::string> used(names.begin(), names.end());
    std::vector<std::vector<std::string>> renamed(inner.size());
    std::vector<std::vector<int>> var_index(inner.size());

    for (std::size_t j = 0; j < inner.size(); ++j) {
        if (inner[j].target() != outer.source_arity(static_cast<int>(j)))
            throw PreconditionError("compose_schemes: inner scheme " + std::to_string(j) +
                                    " does not target the source arity of outer map " + std::to_string(j));
        for (const auto& v : inner[j].vars()) {
            std::string name = v;
            if (used.contains(name)) {
                name = v + "_" + std::to_string(j);
                for (int n = 2; used.contains(name); ++n)
                    name = v + "_" + std::to_string(j) + "_" + std::to_string(n);
            }
            used.insert(name);
            renamed[j].push_back(name);
            var_index[j].push_back(static_cast<int>(names.size()));
            names.push_back(name);
        }
    }

    std::vector<SchemeMap> maps;
    std::vector<std::pair<int, int>> origin;
    for (std::size_t j = 0; j < inner.size(); ++j) {
        const auto& hj = outer.maps()[j];
        for (std::size_t i = 0; i < inner[j].maps().size(); ++i) {
            SchemeMap k;
            for (const auto& e : inner[j].maps()[i]) {
                if (e.is_var())
                    k.push_back(SchemeEntry::var(var_index[j][static_cast<std::size_t>(e.index)]));
                else
                    k.push_back(hj[static_cast<std::size_t>(e.index)]);
            }
            maps.push_back(std::move(k));
            origin.emplace_back(static_cast<int>(j), static_cast<int>(i));
        }
    }
    return {MinorScheme(outer.target(), std::move(names), std::move(maps)), std::move(renamed), std::move(origin)};
}

namespace {
    void check_family_arities(const MinorScheme& h, const std::vector<int>& arities) {
        if (static_cast<int>(arities.size()) != h.family_size())
            throw PreconditionError("family size differs from the number of scheme maps");
        for (std::size_t j = 0; j < arities.size(); ++j)
            if (arities[j] != h.source_arity(static_cast<int>(j)))
                throw PreconditionError("family member " + std::to_string(j) + " has arity " +
                                        std::to_string(arities[j]) + " but the scheme map has source arity " +
                                        std::to_string(h.source_arity(static_cast<int>(j))));
    }

    std::vector<Tuple> skolem_maps(const MinorScheme& h, int k) {
        return all_tuples(static_cast<int>(h.vars().size()), k);
    }

    // floor(x / d) with inf / d = inf.
    ExtNat divide(ExtNat x, std::uint64_t d) {
        return x.is_infinite() ? x : ExtNat(x.value() / d);
    }
}

Relation tight_relation_minor(const MinorScheme& h, const std::vector<Relation>& family, const Budget& budget) {
    std::vector<int> arities;
    for (const auto& r : family)
        arities.push_back(r.arity());
    check_family_arities(h, arities);
    const int k = family.front().domain_size();
    for (const auto& r : family)
        if (r.domain_size() != k)
            throw PreconditionError("tight_relation_minor: relations over different sets");

    const auto sigmas = skolem_maps(h, k);
    Relation out(h.target(), k);
    Tuple a(static_cast<std::size_t>(h.target()), 0);
    do {
        budget.charge(sigmas.size(), "tight relation minor");
        bool found = std::any_of(sigmas.begin(), sigmas.end(), [&](const Tuple& sigma) {
            for (std::size_t j = 0; j < family.size(); ++j)
                if (!family[j].contains(apply_scheme_map(a, sigma, h.maps()[j])))
                    return false;
            return true;
        });
        if (found)
            out.insert(a);
    } while (next_tuple(a, k));
    return out;
}

bool exists_skolem_columns(const MinorScheme& h, int k, const std::vector<Tuple>& columns,
                           const std::function<bool(int, const FiniteMultiset&)>& accept, const Budget& budget) {
    auto cols = columns;
    std::sort(cols.begin(), cols.end());
    const auto sigmas = skolem_maps(h, k);
    const auto J = static_cast<std::size_t>(h.family_size());

    std::vector<FiniteMultiset> images;
    for (std::size_t j = 0; j < J; ++j)
        images.emplace_back(h.source_arity(static_cast<int>(j)));
    for (std::size_t j = 0; j < J; ++j)
        if (!accept(static_cast<int>(j), images[j]))
            return false;

    std::vector<std::size_t> chosen(cols.size(), 0);
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == cols.size())
            return true;
        // Equal columns are interchangeable: take their Skolem maps in order.
        std::size_t start = (i > 0 && cols[i] == cols[i - 1]) ? chosen[i - 1] : 0;
        for (std::size_t s = start; s < sigmas.size(); ++s) {
            budget.charge(1, "searching Skolem maps");
            std::vector<Tuple> mapped;
            mapped.reserve(J);
            bool ok = true;
            for (std::size_t j = 0; j < J; ++j) {
                mapped.push_back(apply_scheme_map(cols[i], sigmas[s], h.maps()[j]));
                images[j].add(mapped.back());
            }
            for (std::size_t j = 0; j < J && ok; ++j)
                ok = accept(static_cast<int>(j), images[j]);
            chosen[i] = s;
            if (ok && self(self, i + 1))
                return true;
            for (std::size_t j = 0; j < J; ++j)
                images[j].remove(mapped[j]);
        }
        return false;
    };
    return rec(rec, 0);
}

int default_column_cap(const MinorScheme& h) {
    int n = 0;
    for (int j = 0; j < h.family_size(); ++j)
        n = std::max(n, h.source_arity(j));
    return n + 2;
}

namespace {
    void check_rf_family(const RepetitionFunction& phi, const std::vector<RepetitionFunction>& family,
                         const MinorScheme& h) {
        if (phi.arity() != h.target())
            throw PreconditionError("repetition function arity differs from the scheme target");
        std::vector<int> arities;
        for (const auto& f : family) {
            arities.push_back(f.arity());
            if (f.domain_size() != phi.domain_size())
                throw PreconditionError("repetition functions over different sets");
        }
        check_family_arities(h, arities);
    }

    bool below(const FiniteMultiset& s, const RepetitionFunction& phi) {
        return std::all_of(s.entries().begin(), s.entries().end(),
                           [&](const auto& e) { return ExtNat(e.second) <= phi(e.first); });
    }

    bool feasible(const std::vector<Tuple>& columns, const std::vector<RepetitionFunction>& family,
                  const MinorScheme& h, int k, const Budget& budget) {
        return exists_skolem_columns(
            h, k, columns,
            [&](int j, const FiniteMultiset& s) { return below(s, family[static_cast<std::size_t>(j)]); }, budget);
    }
}

std::string remark_sum_refutation(const RepetitionFunction& phi, const std::vector<RepetitionFunction>& family,
                                  const MinorScheme& h, bool restrictive) {
    check_rf_family(phi, family, h);
    const int k = phi.domain_size();
    const int m = h.target();
    const auto sigmas = skolem_maps(h, k);
    const auto tuples = all_tuples(m, k);

    for (int j = 0; j < h.family_size(); ++j) {
        const auto& hj = h.maps()[static_cast<std::size_t>(j)];
        std::vector<int> coords;
        for (const auto& e : hj)
            if (!e.is_var())
                coords.push_back(e.index);
        std::sort(coords.begin(), coords.end());
        coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

        auto key = [&](const Tuple& a) {
            Tuple out;
            for (int c : coords)
                out.push_back(a[static_cast<std::size_t>(c)]);
            return out;
        };
        std::map<Tuple, ExtNat> class_sum;
        for (const auto& b : tuples)
            class_sum[key(b)] = class_sum[key(b)] + phi(b);

        for (const auto& a : tuples) {
            std::set<Tuple> reach;
            for (const auto& sigma : sigmas)
                reach.insert(apply_scheme_map(a, sigma, hj));
            ExtNat rhs = 0;
            for (const auto& c : reach)
                rhs = rhs + family[static_cast<std::size_t>(j)](c);
            ExtNat lhs = class_sum[key(a)];
            bool bad = restrictive ? lhs > rhs : lhs < rhs;
            if (bad)
                return "sum condition fails at a=" + tuple_to_string(a) + ", j=" + std::to_string(j) + ": " +
                       lhs.to_string() + (restrictive ? " > " : " < ") + rhs.to_string();
        }
    }
    return {};
}

MinorVerdict is_restrictive_rf_minor(const RepetitionFunction& phi, const std::vector<RepetitionFunction>& family,
                                     const MinorScheme& h, int col_cap, const Budget& budget) {
    check_rf_family(phi, family, h);
    if (col_cap < 1)
        throw PreconditionError("column cap must be >= 1");
    MinorVerdict v;
    v.col_cap = col_cap;

    if (auto why = remark_sum_refutation(phi, family, h, true); !why.empty()) {
        v.holds = false;
        v.note = why;
        return v;
    }
    // Without indeterminates every column has a fixed image, so the fiber
    // sums just checked decide the condition for matrices of any width.
    if (h.vars().empty()) {
        v.note = "decided by fiber sums (no indeterminates)";
        return v;
    }

    // Feasibility is downward closed, so the widest matrices below phi decide.
    const ExtNat total = phi.total();
    const std::uint64_t width =
        total.is_infinite() ? static_cast<std::uint64_t>(col_cap)
                            : std::min<std::uint64_t>(total.value(), static_cast<std::uint64_t>(col_cap));
    v.bounded = total > ExtNat(width);

    const auto support = phi.support();
    std::vector<ExtNat> bounds;
    for (const auto& t : support)
        bounds.push_back(phi(t));
    for_each_bounded_multiset(phi.arity(), support, bounds, width, [&](const FiniteMultiset& s) {
        if (feasible(s.elements(), family, h, phi.domain_size(), budget))
            return true;
        v.holds = false;
        v.bounded = false;
        v.counterexample = s;
        v.note = "no Skolem maps for a matrix below the antecedent";
        return false;
    });
    return v;
}

MinorVerdict is_extensive_rf_minor(const RepetitionFunction& phi, const std::vector<RepetitionFunction>& family,
                                   const MinorScheme& h, int col_cap, const Budget& budget) {
    check_rf_family(phi, family, h);
    if (col_cap < 1)
        throw PreconditionError("column cap must be >= 1");
    MinorVerdict v;
    v.col_cap = col_cap;

    // Any feasible matrix not below phi contains a^(phi(a)+1) for some a, and
    // feasibility is downward closed, so those multisets decide.
    Tuple a(static_cast<std::size_t>(phi.arity()), 0);
    do {
        ExtNat bound = phi(a);
        if (bound.is_infinite())
            continue;
        std::uint64_t need = bound.value() + 1;
        if (need > static_cast<std::uint64_t>(col_cap)) {
            v.bounded = true;
            continue;
        }
        std::vector<Tuple> cols(need, a);
        if (feasible(cols, family, h, phi.domain_size(), budget)) {
            v.holds = false;
            v.bounded = false;
            FiniteMultiset s(phi.arity());
            s.add(a, need);
            v.counterexample = s;
            v.note = "Skolem maps exist for a matrix not below the antecedent";
            return v;
        }
    } while (next_tuple(a, phi.domain_size()));

    if (v.bounded && h.family_size() == 1) {
        if (auto why = remark_sum_refutation(phi, family, h, false); !why.empty()) {
            v.holds = false;
            v.bounded = false;
            v.note = why;
        }
    }
    return v;
}

MinorVerdict is_conjunctive_minor_constraint(const GeneralizedConstraint& c,
                                             const std::vector<GeneralizedConstraint>& family,
                                             const MinorScheme& h, int col_cap, const Budget& budget) {
    std::vector<RepetitionFunction> antecedents;
    std::vector<Relation> consequents;
    for (const auto& member : family) {
        if (member.domain_size() != c.domain_size() || member.codomain_size() != c.codomain_size())
            throw PreconditionError("constraints in the family run between different sets");
        antecedents.push_back(member.antecedent());
        consequents.push_back(member.consequent());
    }
    MinorVerdict v = is_restrictive_rf_minor(c.antecedent(), antecedents, h, col_cap, budget);
    if (!v.holds)
        return v;
    Relation tight = tight_relation_minor(h, consequents, budget);
    for (const auto& t : tight.tuples()) {
        if (!c.consequent().contains(t)) {
            v.holds = false;
            v.bounded = false;
            v.counterexample.reset();
            v.note = "consequent misses " + tuple_to_string(t) + " from the tight relation minor";
            return v;
        }
    }
    return v;
}

GeneralizedConstraint pullback_minor(const MinorScheme& h, const std::vector<GeneralizedConstraint>& family) {
    if (!h.vars().empty())
        throw PreconditionError("pullback_minor needs a scheme without indeterminates");
    std::vector<int> arities;
    for (const auto& c : family)
        arities.push_back(c.arity());
    check_family_arities(h, arities);
    const int k_in = family.front().domain_size();
    const int k_out = family.front().codomain_size();
    for (const auto& c : family)
        if (c.domain_size() != k_in || c.codomain_size() != k_out)
            throw PreconditionError("constraints in the family run between different sets");

    const int m = h.target();
    std::vector<std::uint64_t> fiber;
    for (const auto& hj : h.maps()) {
        std::set<int> image;
        for (const auto& e : hj)
            image.insert(e.index);
        fiber.push_back(checked_pow(static_cast<std::uint64_t>(k_in), static_cast<unsigned>(m) -
                                                                          static_cast<unsigned>(image.size())));
    }

    RepetitionFunction phi(m, k_in, ExtNat::infinity());
    Tuple a(static_cast<std::size_t>(m), 0);
    const SkolemMap none;
    do {
        ExtNat value = ExtNat::infinity();
        for (std::size_t j = 0; j < family.size(); ++j)
            value = std::min(value,
                             divide(family[j].antecedent()(apply_scheme_map(a, none, h.maps()[j])), fiber[j]));
        phi.set(a, value);
    } while (next_tuple(a, k_in));

    std::vector<Relation> consequents;
    for (const auto& c : family)
        consequents.push_back(c.consequent());
    return GeneralizedConstraint(phi.normalized(), tight_relation_minor(h, consequents));
}

const char* fixture_name(FixtureKind kind) {
    switch (kind) {
    case FixtureKind::TrivialFromEquality:
        return "trivial-from-equality";
    case FixtureKind::EqualityChain:
        return "equality-chain";
    case FixtureKind::EmptySpread:
        return "empty-spread";
    case FixtureKind::DummyAdd:
        return "dummy-add";
    case FixtureKind::Identify:
        return "identify";
    }
    return "?";
}

std::vector<FixtureKind> all_fixture_kinds() {
    return {FixtureKind::TrivialFromEquality, FixtureKind::EqualityChain, FixtureKind::EmptySpread,
            FixtureKind::DummyAdd, FixtureKind::Identify};
}

MinorScheme scheme_fixture(FixtureKind kind, int m) {
    if (m < 1)
        throw PreconditionError("fixture arity must be >= 1");
    using E = SchemeEntry;
    switch (kind) {
    case FixtureKind::TrivialFromEquality:
        return MinorScheme(m, {}, {{E::coord(0), E::coord(0)}});
    case FixtureKind::EqualityChain: {
        if (m < 2)
            throw PreconditionError("the equality chain needs m >= 2");
        std::vector<SchemeMap> maps;
        for (int i = 0; i + 1 < m; ++i)
            maps.push_back({E::coord(i), E::coord(i + 1)});
        return MinorScheme(m, {}, maps);
    }
    case FixtureKind::EmptySpread:
    case FixtureKind::DummyAdd:
        return MinorScheme(m, {}, {{E::coord(0)}});
    case FixtureKind::Identify:
        return MinorScheme(1, {}, {SchemeMap(static_cast<std::size_t>(m), E::coord(0))});
    }
    throw PreconditionError("unknown fixture");
}

std::vector<GeneralizedConstraint> fixture_family(FixtureKind kind, int m, int k_in, int k_out) {
    switch (kind) {
    case FixtureKind::TrivialFromEquality:
        return {equality_constraint(2, k_in, k_out)};
    case FixtureKind::EqualityChain:
        return std::vector<GeneralizedConstraint>(static_cast<std::size_t>(std::max(m - 1, 0)),
                                                  equality_constraint(2, k_in, k_out));
    case FixtureKind::EmptySpread:
        return {empty_constraint(1, k_in, k_out)};
    case FixtureKind::DummyAdd:
        return {trivial_constraint(1, k_in, k_out)};
    case FixtureKind::Identify:
        return {equality_constraint(m, k_in, k_out)};
    }
    throw PreconditionError("unknown fixture");
}

GeneralizedConstraint fixture_expected(FixtureKind kind, int m, int k_in, int k_out) {
    switch (kind) {
    case FixtureKind::TrivialFromEquality:
    case FixtureKind::DummyAdd:
        return trivial_constraint(m, k_in, k_out);
    case FixtureKind::EqualityChain:
        return equality_constraint(m, k_in, k_out);
    case FixtureKind::EmptySpread:
        return empty_constraint(m, k_in, k_out);
    case FixtureKind::Identify:
        return trivial_constraint(1, k_in, k_out);
    }
    throw PreconditionError("unknown fixture");
}

}  // namespace gk
