#include "lvoa/commutant.hpp"

#include <algorithm>
#include <stdexcept>

#include "lvoa/linalg.hpp"

namespace lvoa {

namespace {

StateVector from_sparse(SparseVec<BasisState> v) {
    StateVector out;
    out.raw() = std::move(v);
    return out;
}

std::vector<StateVector> echelon_basis(const std::vector<StateVector>& vectors) {
    Echelon<BasisState> ech;
    for (const auto& v : vectors) ech.insert(v.terms());
    std::vector<StateVector> out;
    for (auto& r : ech.reduced_rows()) out.push_back(from_sparse(std::move(r)));
    return out;
}

using ChargeKey = std::vector<Rational>;

// Linear functionals on lattice points (dot products in lattice coordinates)
// constant along every operator's internal point differences. Each operator's
// modes then shift the key by a fixed amount, so kernels split by key.
class Grading {
public:
    // `members` are vectors that must also be homogeneous (a subspace basis).
    Grading(const std::vector<StateVector>& ops, int rank, const std::vector<StateVector>& members = {}) {
        Echelon<int> span;
        RationalMatrix diffs;
        auto absorb = [&](const StateVector& v) {
            if (v.is_zero()) return;
            const LatticeVector p0 = v.terms().begin()->first.lattice_point();
            for (const auto& [s, c] : v.terms()) {
                const LatticeVector p = s.lattice_point();
                SparseVec<int> d;
                for (int a = 0; a < rank; ++a)
                    if (p[a] != p0[a]) d.emplace(a, Rational(p[a] - p0[a]));
                if (d.empty() || !span.insert(d)) continue;
                AmbientVector dense(static_cast<std::size_t>(rank), Rational(0));
                for (const auto& [a, x] : d) dense[static_cast<std::size_t>(a)] = x;
                diffs.push_back(std::move(dense));
            }
        };
        for (const auto& op : ops) absorb(op);
        for (const auto& v : members) absorb(v);
        diffs_ = diffs;
        functionals_ = dense_nullspace(diffs, static_cast<std::size_t>(rank));
    }

    [[nodiscard]] ChargeKey key(const BasisState& s) const {
        ChargeKey k;
        k.reserve(functionals_.size());
        for (const auto& f : functionals_) {
            Rational x(0);
            for (int a = 0; a < s.rank; ++a)
                if (s.point[a] != 0 && !f[a].is_zero()) x.add_mul(f[a], Rational(s.point[a]));
            k.push_back(x);
        }
        return k;
    }

    [[nodiscard]] ChargeKey key(const StateVector& v) const {
        ChargeKey k = key(v.terms().begin()->first);
        for (const auto& [s, c] : v.terms())
            if (key(s) != k) throw std::invalid_argument("Grading: vector is not homogeneous");
        return k;
    }

    // True if (h, .) is constant on every block, i.e. (h, d) = 0 for all differences.
    [[nodiscard]] bool constant_on_blocks(const AmbientVector& h, const GramLattice& L) const {
        for (const auto& d : diffs_)
            if (!L.inner(h, d).is_zero()) return false;
        return true;
    }

private:
    RationalMatrix diffs_;
    std::vector<AmbientVector> functionals_;
};

// h if v = h(-1)1, otherwise empty.
std::optional<AmbientVector> as_heisenberg_current(const StateVector& v, int rank) {
    if (v.is_zero()) return std::nullopt;
    AmbientVector h(static_cast<std::size_t>(rank), Rational(0));
    for (const auto& [s, c] : v.terms()) {
        for (int a = 0; a < rank; ++a)
            if (s.point[a] != 0) return std::nullopt;
        if (s.fock.size != 1 || s.fock.mode(0) != 1) return std::nullopt;
        h[s.fock.dir(0)] = c;
    }
    return h;
}

struct RowKey {
    int condition;
    std::int64_t mode;
    BasisState state;
    auto operator<=>(const RowKey&) const = default;
    bool operator==(const RowKey&) const = default;
};

struct PreparedCondition {
    StateVector op;
    std::int64_t min_mode;
    Rational weight;
    std::optional<AmbientVector> zero_mode_scalar;  // h with op_0 = h(0) constant on blocks
};

std::vector<PreparedCondition> prepare(const LatticeVoa& voa, const std::vector<ModeCondition>& conditions,
                                       const Grading& grading) {
    std::vector<PreparedCondition> out;
    for (const auto& c : conditions) {
        if (c.op.is_zero()) continue;
        PreparedCondition p{c.op, c.min_mode, voa.weight(c.op), std::nullopt};
        if (c.min_mode <= 0) {
            auto h = as_heisenberg_current(c.op, voa.rank());
            if (h && grading.constant_on_blocks(*h, voa.lattice())) p.zero_mode_scalar = h;
        }
        out.push_back(std::move(p));
    }
    return out;
}

// A block is skipped when some h(0) condition acts on it by a nonzero scalar.
bool block_is_killed(const LatticeVoa& voa, const std::vector<PreparedCondition>& conds, const BasisState& sample) {
    for (const auto& c : conds)
        if (c.zero_mode_scalar && !h_weight(sample, *c.zero_mode_scalar, voa.lattice(), voa.shift()).is_zero())
            return true;
    return false;
}

SparseVec<RowKey> image_of(const LatticeVoa& voa, const std::vector<PreparedCondition>& conds, const StateVector& v,
                           const Rational& w) {
    SparseVec<RowKey> img;
    for (std::size_t ci = 0; ci < conds.size(); ++ci) {
        const auto& c = conds[ci];
        const std::int64_t top = (w + c.weight - Rational(1)).floor().to_int();
        for (std::int64_t m = c.min_mode; m <= top; ++m) {
            StateVector out;
            for (const auto& [su, cu] : c.op.terms())
                for (const auto& [sv, cv] : v.terms()) mode_accumulate(su, cu, m, sv, cv, voa, out);
            for (const auto& [s, x] : out.terms())
                if (!x.is_zero()) img.emplace(RowKey{static_cast<int>(ci), m, s}, x);
        }
    }
    return img;
}

std::vector<StateVector> block_kernel(const LatticeVoa& voa, const std::vector<PreparedCondition>& conds,
                                      const std::vector<StateVector>& inputs, const Rational& w) {
    KernelBuilder<RowKey> kb;
    std::vector<StateVector> out;
    for (std::size_t j = 0; j < inputs.size(); ++j) {
        auto combo = kb.add_column(static_cast<int>(j), image_of(voa, conds, inputs[j], w));
        if (!combo) continue;
        StateVector v;
        for (const auto& [idx, c] : *combo) v.axpy(c, inputs[static_cast<std::size_t>(idx)]);
        out.push_back(std::move(v));
    }
    return out;
}

struct Block {
    Rational weight;
    std::vector<StateVector> inputs;
};

Subspace solve_blocks(const LatticeVoa& voa, const std::vector<PreparedCondition>& conds, std::vector<Block> blocks,
                      const Rational& cutoff, const std::vector<Rational>& weights) {
    // Largest blocks first for load balance; results are merged in a fixed order.
    std::vector<std::size_t> order(blocks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return blocks[a].inputs.size() > blocks[b].inputs.size(); });
    std::vector<std::vector<StateVector>> results(blocks.size());
    const long nb = static_cast<long>(blocks.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (long t = 0; t < nb; ++t) {
        const std::size_t b = order[static_cast<std::size_t>(t)];
        try {
            results[b] = block_kernel(voa, conds, blocks[b].inputs, blocks[b].weight);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    std::map<Rational, std::vector<StateVector>> spans;
    for (const auto& w : weights) spans[w];
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (auto& v : results[b]) spans[blocks[b].weight].push_back(std::move(v));
    return Subspace(cutoff, spans);
}

std::vector<StateVector> ops_of(const std::vector<ModeCondition>& conditions) {
    std::vector<StateVector> ops;
    for (const auto& c : conditions) ops.push_back(c.op);
    return ops;
}

}  // namespace

Subspace::Subspace(Rational cutoff, const std::map<Rational, std::vector<StateVector>>& spans)
    : cutoff_(std::move(cutoff)) {
    for (const auto& [w, vs] : spans) blocks_[w] = echelon_basis(vs);
}

const std::vector<StateVector>& Subspace::basis(const Rational& w) const {
    static const std::vector<StateVector> empty;
    auto it = blocks_.find(w);
    return it == blocks_.end() ? empty : it->second;
}

std::size_t Subspace::total_dim() const {
    std::size_t n = 0;
    for (const auto& [w, b] : blocks_) n += b.size();
    return n;
}

bool Subspace::contains(const StateVector& v, const LatticeVoa& voa) const {
    std::map<Rational, StateVector> parts;
    for (const auto& [s, c] : v.terms()) parts[voa.weight(s)].add(s, c);
    for (const auto& [w, part] : parts) {
        Echelon<BasisState> ech;
        for (const auto& b : basis(w)) ech.insert(b.terms());
        if (!ech.contains(part.terms())) return false;
    }
    return true;
}

std::vector<std::pair<Rational, std::size_t>> Subspace::graded_dims() const {
    std::vector<std::pair<Rational, std::size_t>> out;
    for (const auto& [w, b] : blocks_) out.emplace_back(w, b.size());
    return out;
}

std::vector<std::size_t> Subspace::integer_dims() const {
    std::vector<std::size_t> out;
    const std::int64_t top = cutoff_.floor().to_int();
    for (std::int64_t w = 0; w <= top; ++w) out.push_back(dim(Rational(w)));
    return out;
}

std::vector<std::pair<Rational, std::size_t>> graded_dims(const Subspace& s) { return s.graded_dims(); }

StateVector heisenberg_state(const AmbientVector& h, int rank) {
    return fock_product({{h, 1}}, LatticeVector(static_cast<std::size_t>(rank), 0));
}

Subspace kernel_of_modes(const LatticeVoa& voa, const std::vector<ModeCondition>& conditions, const Rational& cutoff,
                         const std::vector<ChargeConstraint>& constraints, const KernelOptions& opts) {
    const Grading grading(ops_of(conditions), voa.rank());
    const auto conds = prepare(voa, conditions, grading);
    const GradedBasis basis = enumerate_basis(voa.lattice(), voa.shift(), cutoff, opts.max_states);
    std::vector<Rational> weights;
    std::map<std::pair<Rational, ChargeKey>, Block> grouped;
    for (const auto& blk : basis.blocks()) {
        weights.push_back(blk.weight);
        for (const auto& s : blk.states) {
            bool keep = true;
            for (const auto& c : constraints)
                keep = keep && h_weight(s, c.direction, voa.lattice(), voa.shift()) == c.value;
            if (!keep) continue;
            auto& g = grouped[{blk.weight, grading.key(s)}];
            g.weight = blk.weight;
            g.inputs.emplace_back(s);
        }
    }
    std::vector<Block> blocks;
    for (auto& [key, b] : grouped)
        if (!block_is_killed(voa, conds, b.inputs.front().terms().begin()->first)) blocks.push_back(std::move(b));
    return solve_blocks(voa, conds, std::move(blocks), cutoff, weights);
}

Subspace kernel_within(const LatticeVoa& voa, const Subspace& space, const std::vector<ModeCondition>& conditions) {
    std::vector<StateVector> members;
    for (const auto& [w, vs] : space.blocks()) members.insert(members.end(), vs.begin(), vs.end());
    const Grading grading(ops_of(conditions), voa.rank(), members);
    const auto conds = prepare(voa, conditions, grading);
    std::vector<Rational> weights;
    std::map<std::pair<Rational, ChargeKey>, Block> grouped;
    for (const auto& [w, vs] : space.blocks()) {
        weights.push_back(w);
        for (const auto& v : vs) {
            auto& g = grouped[{w, grading.key(v)}];
            g.weight = w;
            g.inputs.push_back(v);
        }
    }
    std::vector<Block> blocks;
    for (auto& [key, b] : grouped)
        if (!block_is_killed(voa, conds, b.inputs.front().terms().begin()->first)) blocks.push_back(std::move(b));
    return solve_blocks(voa, conds, std::move(blocks), space.cutoff(), weights);
}

Subspace commutant_of_generators(const LatticeVoa& voa, const std::vector<StateVector>& generators,
                                 const Rational& cutoff, const KernelOptions& opts) {
    std::vector<ModeCondition> conds;
    for (const auto& g : generators) conds.push_back({g, 0});
    return kernel_of_modes(voa, conds, cutoff, {}, opts);
}

Subspace heisenberg_commutant(const LatticeVoa& voa, const std::vector<AmbientVector>& directions,
                              const Rational& cutoff, const KernelOptions& opts) {
    std::vector<ModeCondition> conds;
    for (const auto& h : directions) conds.push_back({heisenberg_state(h, voa.rank()), 0});
    return kernel_of_modes(voa, conds, cutoff, {}, opts);
}

Subspace highest_weight_vectors(const LatticeVoa& voa, const std::vector<StateVector>& raising,
                                const std::vector<StateVector>& lowering, const std::vector<AmbientVector>& cartan,
                                const std::vector<Rational>& values, const Rational& cutoff,
                                const KernelOptions& opts) {
    if (cartan.size() != values.size())
        throw std::invalid_argument("highest_weight_vectors: one value per Cartan direction required");
    std::vector<ModeCondition> conds;
    for (const auto& e : raising) conds.push_back({e, 0});
    for (const auto& f : lowering) conds.push_back({f, 1});
    for (const auto& h : cartan) conds.push_back({heisenberg_state(h, voa.rank()), 1});
    std::vector<ChargeConstraint> constraints;
    for (std::size_t i = 0; i < cartan.size(); ++i) constraints.push_back({cartan[i], values[i]});
    return kernel_of_modes(voa, conds, cutoff, constraints, opts);
}

std::vector<StateVector> lie_closure(const LatticeVoa& voa, const std::vector<StateVector>& currents) {
    Echelon<BasisState> ech;
    std::vector<StateVector> members;
    std::vector<StateVector> fresh;
    for (const auto& c : currents) {
        if (c.is_zero()) continue;
        if (voa.weight(c) != Rational(1)) throw std::invalid_argument("lie_closure: currents must have weight 1");
        if (auto row = ech.insert(c.terms())) fresh.push_back(from_sparse(std::move(*row)));
    }
    while (!fresh.empty()) {
        std::vector<StateVector> next;
        for (const auto& a : fresh) members.push_back(a);
        for (const auto& a : members)
            for (const auto& b : fresh) {
                for (const auto& prod : {mode(a, 0, b, voa), mode(b, 0, a, voa)}) {
                    if (prod.is_zero()) continue;
                    if (auto row = ech.insert(prod.terms())) next.push_back(from_sparse(std::move(*row)));
                }
            }
        fresh = std::move(next);
    }
    std::vector<StateVector> out;
    for (auto& r : ech.reduced_rows()) out.push_back(from_sparse(std::move(r)));
    return out;
}

namespace {

bool closes_as_current_algebra(const LatticeVoa& voa, const std::vector<StateVector>& basis) {
    const BasisState vac = BasisState::vacuum(voa.rank());
    for (const auto& a : basis)
        for (const auto& b : basis) {
            StateVector p = mode(a, 1, b, voa);
            if (p.size() > 1 || (p.size() == 1 && p.terms().begin()->first != vac)) return false;
        }
    return true;
}

Subspace pbw_closure(const LatticeVoa& voa, const std::vector<StateVector>& lie, const Rational& cutoff,
                     ClosureReport* report, const KernelOptions& opts) {
    const Grading grading(lie, voa.rank());
    const std::int64_t top = cutoff.floor().to_int();
    std::vector<std::vector<StateVector>> layers(static_cast<std::size_t>(top + 1));
    layers[0].push_back(voa.vacuum());
    std::size_t produced = 0;
    for (std::int64_t w = 1; w <= top; ++w) {
        struct Task {
            std::size_t x;
            std::int64_t k;
            const StateVector* s;
        };
        std::vector<Task> tasks;
        for (std::int64_t k = 1; k <= w; ++k)
            for (const auto& s : layers[static_cast<std::size_t>(w - k)])
                for (std::size_t x = 0; x < lie.size(); ++x) tasks.push_back({x, k, &s});
        std::vector<StateVector> products(tasks.size());
        const long nt = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 16)
        for (long t = 0; t < nt; ++t) {
            const auto& tk = tasks[static_cast<std::size_t>(t)];
            products[static_cast<std::size_t>(t)] = mode(lie[tk.x], -tk.k, *tk.s, voa);
        }
        produced += products.size();
        std::map<ChargeKey, std::vector<std::size_t>> by_key;
        for (std::size_t t = 0; t < products.size(); ++t)
            if (!products[t].is_zero()) by_key[grading.key(products[t])].push_back(t);
        std::vector<std::vector<StateVector>> per_key;
        std::vector<const std::vector<std::size_t>*> groups;
        for (const auto& [key, idx] : by_key) groups.push_back(&idx);
        per_key.resize(groups.size());
        const long ng = static_cast<long>(groups.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (long g = 0; g < ng; ++g) {
            Echelon<BasisState> ech;
            for (std::size_t t : *groups[static_cast<std::size_t>(g)])
                if (auto row = ech.insert(products[t].terms()))
                    per_key[static_cast<std::size_t>(g)].push_back(from_sparse(std::move(*row)));
        }
        auto& layer = layers[static_cast<std::size_t>(w)];
        for (auto& vs : per_key)
            for (auto& v : vs) layer.push_back(std::move(v));
        std::size_t count = 0;
        for (const auto& l : layers) count += l.size();
        if (count > opts.max_states) throw GuardError("generated_subalgebra: span exceeds the state guard");
    }
    if (report) {
        report->current_algebra = true;
        report->rounds = static_cast<std::size_t>(top);
        report->products = produced;
        report->weight_one_basis = lie;
    }
    std::map<Rational, std::vector<StateVector>> spans;
    for (std::int64_t w = 0; w <= top; ++w) spans[Rational(w)] = std::move(layers[static_cast<std::size_t>(w)]);
    return Subspace(cutoff, spans);
}

Subspace worklist_closure(const LatticeVoa& voa, const std::vector<StateVector>& generators, const Rational& cutoff,
                          ClosureReport* report, const KernelOptions& opts) {
    std::map<Rational, Echelon<BasisState>> echelons;
    std::vector<StateVector> fresh;
    auto add = [&](const StateVector& v, std::vector<StateVector>& sink) {
        if (v.is_zero()) return;
        const Rational w = voa.weight(v);
        if (w > cutoff) return;
        if (auto row = echelons[w].insert(v.terms())) sink.push_back(from_sparse(std::move(*row)));
    };
    add(voa.vacuum(), fresh);
    for (const auto& g : generators) add(g, fresh);
    std::vector<Rational> gen_weights;
    for (const auto& g : generators) gen_weights.push_back(voa.weight(g));
    std::size_t rounds = 0, produced = 0;
    while (!fresh.empty()) {
        ++rounds;
        struct Task {
            std::size_t g;
            std::int64_t m;
            const StateVector* s;
        };
        std::vector<Task> tasks;
        for (const auto& s : fresh) {
            const Rational ws = voa.weight(s);
            for (std::size_t g = 0; g < generators.size(); ++g) {
                const Rational top = ws + gen_weights[g] - Rational(1);
                const std::int64_t hi = top.floor().to_int();
                const std::int64_t lo = -(cutoff - top).floor().to_int();
                for (std::int64_t m = lo; m <= hi; ++m) tasks.push_back({g, m, &s});
            }
        }
        std::vector<StateVector> products(tasks.size());
        const long nt = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 16)
        for (long t = 0; t < nt; ++t) {
            const auto& tk = tasks[static_cast<std::size_t>(t)];
            products[static_cast<std::size_t>(t)] = mode(generators[tk.g], tk.m, *tk.s, voa);
        }
        produced += products.size();
        std::vector<StateVector> next;
        for (const auto& p : products) add(p, next);
        fresh = std::move(next);
        std::size_t count = 0;
        for (const auto& [w, e] : echelons) count += e.rank();
        if (count > opts.max_states) throw GuardError("generated_subalgebra: span exceeds the state guard");
    }
    if (report) {
        report->current_algebra = false;
        report->rounds = rounds;
        report->products = produced;
    }
    std::map<Rational, std::vector<StateVector>> spans;
    const std::int64_t top = cutoff.floor().to_int();
    for (std::int64_t w = 0; w <= top; ++w) spans[Rational(w)];
    for (const auto& [w, e] : echelons)
        for (auto& r : e.reduced_rows()) spans[w].push_back(from_sparse(std::move(r)));
    return Subspace(cutoff, spans);
}

}  // namespace

Subspace generated_subalgebra(const LatticeVoa& voa, const std::vector<StateVector>& generators,
                              const Rational& cutoff, ClosureReport* report, const KernelOptions& opts) {
    bool currents = !generators.empty();
    for (const auto& g : generators) currents = currents && !g.is_zero() && voa.weight(g) == Rational(1);
    if (currents) {
        auto lie = lie_closure(voa, generators);
        if (closes_as_current_algebra(voa, lie)) return pbw_closure(voa, lie, cutoff, report, opts);
    }
    return worklist_closure(voa, generators, cutoff, report, opts);
}

std::vector<std::string> verify_annihilated(const LatticeVoa& voa, const Subspace& space,
                                            const std::vector<ModeCondition>& conditions) {
    std::vector<std::string> failures;
    for (const auto& [w, vs] : space.blocks())
        for (const auto& v : vs)
            for (std::size_t ci = 0; ci < conditions.size(); ++ci) {
                const auto& c = conditions[ci];
                const std::int64_t top = (w + voa.weight(c.op) - Rational(1)).floor().to_int();
                for (std::int64_t m = c.min_mode; m <= top; ++m)
                    if (!mode(c.op, m, v, voa).is_zero() && failures.size() < 10)
                        failures.push_back("condition " + std::to_string(ci) + " mode " + std::to_string(m) +
                                           " fails on " + to_text(v, voa.lattice()));
            }
    return failures;
}

}  // namespace lvoa
