#include "galoiskit/operation.hpp"

#include <deque>
#include <numeric>

namespace gk {

namespace {
    std::size_t table_size(int k, int arity) {
        auto n = checked_pow(static_cast<std::uint64_t>(k), static_cast<unsigned>(arity));
        if (n > (std::uint64_t{1} << 32))
            throw PreconditionError("operation table of size " + std::to_string(k) + "^" +
                                    std::to_string(arity) + " is too large");
        return static_cast<std::size_t>(n);
    }

    // Builds an operation of the given arity whose value on x is f(remap(x)).
    template <typename Remap>
    Operation rebuild(const Operation& f, int arity, Remap remap) {
        const int k = f.domain_size();
        std::vector<Elem> table;
        table.reserve(table_size(k, arity));
        Tuple x(static_cast<std::size_t>(arity), 0);
        Tuple y(static_cast<std::size_t>(f.arity()));
        do {
            remap(x, y);
            table.push_back(f(y));
        } while (next_tuple(x, k));
        return Operation(k, f.codomain_size(), arity, std::move(table));
    }
}

FiniteDomain::FiniteDomain(int size) : size_(size) {
    if (size < 1)
        throw PreconditionError("a finite domain needs at least one element");
}

Operation::Operation(int domain_size, int codomain_size, int arity, std::vector<Elem> table)
    : domain_size_(domain_size), codomain_size_(codomain_size), arity_(arity), table_(std::move(table)) {
    if (domain_size < 1 || codomain_size < 1)
        throw PreconditionError("domain and codomain sizes must be positive");
    if (arity < 1)
        throw PreconditionError("operations have arity >= 1 (nullary operations are not supported)");
    if (table_.size() != table_size(domain_size, arity))
        throw PreconditionError("table length " + std::to_string(table_.size()) + " does not equal " +
                                std::to_string(domain_size) + "^" + std::to_string(arity));
    for (Elem v : table_)
        if (v < 0 || v >= codomain_size)
            throw PreconditionError("table entry " + std::to_string(v) + " outside codomain of size " +
                                    std::to_string(codomain_size));
}

Operation::Operation(int k, int arity, std::vector<Elem> table) : Operation(k, k, arity, std::move(table)) {}

Operation Operation::from_function(int domain_size, int codomain_size, int arity,
                                   const std::function<Elem(std::span<const Elem>)>& fn) {
    if (arity < 1)
        throw PreconditionError("operations have arity >= 1 (nullary operations are not supported)");
    std::vector<Elem> table;
    table.reserve(table_size(domain_size, arity));
    Tuple x(static_cast<std::size_t>(arity), 0);
    do
        table.push_back(fn(x));
    while (next_tuple(x, domain_size));
    return Operation(domain_size, codomain_size, arity, std::move(table));
}

Elem eval(const Operation& op, std::span<const Elem> input) {
    if (static_cast<int>(input.size()) != op.arity())
        throw PreconditionError("eval: expected " + std::to_string(op.arity()) + " arguments, got " +
                                std::to_string(input.size()));
    for (Elem x : input)
        if (x < 0 || x >= op.domain_size())
            throw PreconditionError("eval: element " + std::to_string(x) + " outside domain of size " +
                                    std::to_string(op.domain_size()));
    return op(input);
}

Operation zeta(const Operation& f) {
    const int n = f.arity();
    if (n == 1)
        return f;
    return rebuild(f, n, [n](const Tuple& x, Tuple& y) {
        for (int i = 0; i < n - 1; ++i)
            y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i + 1)];
        y[static_cast<std::size_t>(n - 1)] = x[0];
    });
}

Operation tau(const Operation& f) {
    const int n = f.arity();
    if (n == 1)
        return f;
    return rebuild(f, n, [](const Tuple& x, Tuple& y) {
        y = x;
        std::swap(y[0], y[1]);
    });
}

Operation delta(const Operation& f) {
    const int n = f.arity();
    if (n == 1)
        return f;
    return rebuild(f, n - 1, [](const Tuple& x, Tuple& y) {
        y[0] = x[0];
        std::copy(x.begin(), x.end(), y.begin() + 1);
    });
}

Operation nabla(const Operation& f) {
    return rebuild(f, f.arity() + 1, [](const Tuple& x, Tuple& y) { std::copy(x.begin() + 1, x.end(), y.begin()); });
}

Operation star(const Operation& f, const Operation& g) {
    if (g.codomain_size() != f.domain_size() || g.domain_size() != f.domain_size())
        throw PreconditionError("star: g must map into the domain of f and share its domain");
    const int m = g.arity();
    const int n = f.arity();
    Tuple inner(static_cast<std::size_t>(m));
    return rebuild(f, m + n - 1, [&](const Tuple& x, Tuple& y) {
        std::copy(x.begin(), x.begin() + m, inner.begin());
        y[0] = g(inner);
        std::copy(x.begin() + m, x.end(), y.begin() + 1);
    });
}

Operation projection(int n, int i, int k) {
    if (n < 1 || i < 1 || i > n)
        throw PreconditionError("projection(" + std::to_string(n) + ", " + std::to_string(i) +
                                "): index out of range");
    return Operation::from_function(k, k, n, [i](std::span<const Elem> x) { return x[static_cast<std::size_t>(i - 1)]; });
}

Operation minor_by_injection(const Operation& f, std::span<const int> sigma, int target_arity) {
    if (static_cast<int>(sigma.size()) != f.arity())
        throw PreconditionError("minor_by_injection: sigma must have one entry per argument of f");
    std::vector<bool> used(static_cast<std::size_t>(std::max(target_arity, 0)), false);
    for (int s : sigma) {
        if (s < 0 || s >= target_arity)
            throw PreconditionError("minor_by_injection: sigma value out of range");
        if (used[static_cast<std::size_t>(s)])
            throw PreconditionError("minor_by_injection: sigma is not injective");
        used[static_cast<std::size_t>(s)] = true;
    }
    std::vector<int> map(sigma.begin(), sigma.end());
    return rebuild(f, target_arity, [&map](const Tuple& x, Tuple& y) {
        for (std::size_t i = 0; i < map.size(); ++i)
            y[i] = x[static_cast<std::size_t>(map[i])];
    });
}

OperationClass::OperationClass(int domain_size, int codomain_size)
    : domain_size_(domain_size), codomain_size_(codomain_size) {
    if (domain_size < 1 || codomain_size < 1)
        throw PreconditionError("domain and codomain sizes must be positive");
}

bool OperationClass::insert(const Operation& op) {
    if (op.domain_size() != domain_size_ || op.codomain_size() != codomain_size_)
        throw PreconditionError("class member has mismatching domain or codomain size");
    return parts_[op.arity()].insert(op).second;
}

bool OperationClass::contains(const Operation& op) const {
    auto it = parts_.find(op.arity());
    return it != parts_.end() && it->second.contains(op);
}

std::size_t OperationClass::size() const {
    std::size_t n = 0;
    for (const auto& [arity, ops] : parts_)
        n += ops.size();
    return n;
}

int OperationClass::max_arity() const {
    return parts_.empty() ? 0 : parts_.rbegin()->first;
}

std::vector<Operation> OperationClass::members() const {
    std::vector<Operation> out;
    for (const auto& [arity, ops] : parts_)
        out.insert(out.end(), ops.begin(), ops.end());
    return out;
}

std::vector<Operation> OperationClass::members(int arity) const {
    const auto& p = part(arity);
    return {p.begin(), p.end()};
}

const std::set<Operation>& OperationClass::part(int arity) const {
    static const std::set<Operation> none;
    auto it = parts_.find(arity);
    return it == parts_.end() ? none : it->second;
}

OperationClass OperationClass::truncated(int cap) const {
    OperationClass out(domain_size_, codomain_size_);
    for (const auto& [arity, ops] : parts_)
        if (arity <= cap)
            out.parts_[arity] = ops;
    return out;
}

bool OperationClass::is_subset_of(const OperationClass& other) const {
    for (const auto& [arity, ops] : parts_)
        for (const auto& op : ops)
            if (!other.contains(op))
                return false;
    return true;
}

bool operator==(const OperationClass& a, const OperationClass& b) {
    return a.domain_size_ == b.domain_size_ && a.codomain_size_ == b.codomain_size_ && a.parts_ == b.parts_;
}

std::vector<Operation> all_operations(int domain_size, int codomain_size, int arity, const Budget& budget) {
    const auto rows = table_size(domain_size, arity);
    const auto count = checked_pow(static_cast<std::uint64_t>(codomain_size), static_cast<unsigned>(rows));
    budget.require(count, "enumerating all operations of one arity");
    std::vector<Operation> out;
    out.reserve(static_cast<std::size_t>(count));
    Tuple table(rows, 0);
    do
        out.emplace_back(domain_size, codomain_size, arity, table);
    while (next_tuple(table, codomain_size));
    budget.charge(count, "enumerating all operations of one arity");
    return out;
}

OperationClass close_under(const OperationClass& cls, ClosureOps ops, int arity_cap, const Budget& budget) {
    if (arity_cap < 1)
        throw PreconditionError("closure arity cap must be >= 1");
    if (cls.max_arity() > arity_cap)
        throw PreconditionError("closure arity cap " + std::to_string(arity_cap) + " is below the class's arity " +
                                std::to_string(cls.max_arity()));
    if (ops.star && cls.domain_size() != cls.codomain_size())
        throw PreconditionError("composition closure needs domain = codomain");

    OperationClass result = cls;
    std::deque<Operation> queue;
    for (const auto& op : cls.members())
        queue.push_back(op);
    std::map<int, std::vector<Operation>> processed;

    auto offer = [&](Operation op) {
        if (op.arity() <= arity_cap && result.insert(op))
            queue.push_back(std::move(op));
    };

    while (!queue.empty()) {
        Operation f = std::move(queue.front());
        queue.pop_front();
        budget.charge(f.table().size(), "closure computation");
        if (ops.zeta)
            offer(zeta(f));
        if (ops.tau)
            offer(tau(f));
        if (ops.delta)
            offer(delta(f));
        if (ops.nabla && f.arity() < arity_cap)
            offer(nabla(f));
        if (ops.star) {
            processed[f.arity()].push_back(f);
            // f pairs with everything popped so far, itself included.
            std::vector<Operation> partners;
            for (const auto& [arity, group] : processed) {
                if (arity + f.arity() - 1 > arity_cap)
                    break;
                partners.insert(partners.end(), group.begin(), group.end());
            }
            for (const auto& g : partners) {
                budget.charge(1, "closure computation");
                offer(star(f, g));
                offer(star(g, f));
            }
        }
    }
    return result;
}

namespace {
    // Calls visit(sigma) for every injection {0..n-1} -> {0..target-1}, in
    // lexicographic order of sigma.
    template <typename Visit>
    void for_each_injection(int n, int target, Visit visit) {
        std::vector<int> sigma(static_cast<std::size_t>(n));
        std::vector<bool> used(static_cast<std::size_t>(target), false);
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == n) {
                visit(std::span<const int>(sigma));
                return;
            }
            for (int v = 0; v < target; ++v) {
                if (used[static_cast<std::size_t>(v)])
                    continue;
                used[static_cast<std::size_t>(v)] = true;
                sigma[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1);
                used[static_cast<std::size_t>(v)] = false;
            }
        };
        rec(rec, 0);
    }
}

OperationClass close_perm_dummy(const OperationClass& cls, int arity_cap) {
    if (cls.max_arity() > arity_cap)
        throw PreconditionError("closure arity cap " + std::to_string(arity_cap) + " is below the class's arity " +
                                std::to_string(cls.max_arity()));
    OperationClass result(cls.domain_size(), cls.codomain_size());
    for (const auto& f : cls.members())
        for (int target = f.arity(); target <= arity_cap; ++target)
            for_each_injection(f.arity(), target,
                               [&](std::span<const int> sigma) { result.insert(minor_by_injection(f, sigma, target)); });
    return result;
}

OperationClass projections_class(int k, int arity_cap) {
    OperationClass out(k);
    for (int n = 1; n <= arity_cap; ++n)
        for (int i = 1; i <= n; ++i)
            out.insert(projection(n, i, k));
    return out;
}

OperationClass close_composition(const OperationClass& cls, int arity_cap, const Budget& budget) {
    if (cls.domain_size() != cls.codomain_size())
        throw PreconditionError("composition closure needs domain = codomain");
    if (arity_cap < 1)
        throw PreconditionError("closure arity cap must be >= 1");
    OperationClass seed = cls;
    for (const auto& p : projections_class(cls.domain_size(), arity_cap).members())
        seed.insert(p);
    return close_under(seed, ClosureOps{.zeta = true, .tau = true, .nabla = true, .star = true}, arity_cap, budget);
}

OperationClass linear_class_fixture(int k, int p, int arity_cap) {
    auto is_prime = [](int x) {
        if (x < 2)
            return false;
        for (int d = 2; d * d <= x; ++d)
            if (x % d == 0)
                return false;
        return true;
    };
    if (!is_prime(k))
        throw PreconditionError("linear_class_fixture: field size must be prime");
    if (p < 2)
        throw PreconditionError("linear_class_fixture: modulus must be >= 2");
    if (p == 2 && k == 2)
        throw PreconditionError("linear_class_fixture: p = 2 over the two-element field is excluded");
    if (arity_cap < 1)
        throw PreconditionError("linear_class_fixture: arity cap must be >= 1");

    OperationClass out(k);
    for (int n = 1; n <= arity_cap; ++n) {
        Tuple coeffs(static_cast<std::size_t>(n), 0);
        do {
            auto nonzero = std::count_if(coeffs.begin(), coeffs.end(), [](Elem c) { return c != 0; });
            if (nonzero % p != 1)
                continue;
            out.insert(Operation::from_function(k, k, n, [&](std::span<const Elem> x) {
                return static_cast<Elem>(std::inner_product(x.begin(), x.end(), coeffs.begin(), 0) % k);
            }));
        } while (next_tuple(coeffs, k));
    }
    return out;
}

}  // namespace gk
