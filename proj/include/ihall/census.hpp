#pragma once

#include "ihall/qnum.hpp"
#include "ihall/rep.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ihall {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Enumeration budget. Orbit enumeration walks every point of the
/// representation space once, so the point bound is the real cost bound; the
/// group-order bound only matters when there is anything to orbit over (a
/// one-point space with a huge GL is still trivial).
struct Budget {
    Integer max_points = Integer(1) << 26;
    Integer max_group = Integer(1) << 22;
};

/// One isomorphism class in a census window: the canonical key is the least
/// point encoding in the GL-orbit, and |Aut| comes from orbit-stabilizer.
struct IsoClass {
    DimVector dim;
    int index = 0;
    uint64_t canonical_key = 0;
    Integer aut_order;
};

struct ClassRef {
    DimVector dim;
    int index = 0;

    friend bool operator==(const ClassRef& a, const ClassRef& b) {
        return a.index == b.index && a.dim == b.dim;
    }
    friend bool operator<(const ClassRef& a, const ClassRef& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.index < b.index;
    }
};

inline Integer gl_order(long d, long q) {
    Integer o = 1;
    Integer qd = int_pow(Integer(q), static_cast<unsigned long>(d));
    for (long i = 0; i < d; ++i) o *= qd - int_pow(Integer(q), static_cast<unsigned long>(i));
    return o;
}

/// Complete list of isomorphism classes of nilpotent representations with a
/// fixed dimension vector, classified by exhaustive orbit enumeration under
/// the product of the vertex general linear groups.
class Census {
public:
    Census(AlgebraContextPtr ctx, int q, DimVector dim, const Budget& budget)
        : ctx_(std::move(ctx)), q_(q), dim_(std::move(dim)) {
        build(budget);
    }

    const AlgebraContextPtr& context() const { return ctx_; }
    int q() const { return q_; }
    const DimVector& dim() const { return dim_; }
    const std::vector<IsoClass>& classes() const { return classes_; }
    const Integer& group_order() const { return group_order_; }
    uint64_t valid_points() const { return n_valid_; }

    QuiverRep representative(int index) const {
        return QuiverRep::decode(ctx_, q_, dim_, classes_.at(static_cast<size_t>(index)).canonical_key);
    }

    /// Class index of a representation with this window's dimension vector.
    int classify(const QuiverRep& r) const {
        auto it = point_class_.find(r.encode());
        if (it == point_class_.end())
            throw std::logic_error("representation not in census window (invalid or wrong context)");
        return it->second;
    }

private:
    void build(const Budget& budget) {
        const auto& arrows = ctx_->quiver.arrows;
        long entries = 0;
        for (const auto& a : arrows) entries += dim_[a.tgt] * dim_[a.src];
        Integer total = int_pow(Integer(q_), static_cast<unsigned long>(entries));
        if (total > budget.max_points)
            throw BudgetExceeded("representation space too large: q^" + std::to_string(entries) +
                                 " points at " + dim_to_string(dim_));
        group_order_ = 1;
        for (long d : dim_) group_order_ *= gl_order(d, q_);
        if (group_order_ > budget.max_group && total > 1)
            throw BudgetExceeded("symmetry group too large at " + dim_to_string(dim_));

        const uint64_t npoints = total.get_ui();
        std::vector<uint64_t> valid;
        for (uint64_t code = 0; code < npoints; ++code) {
            QuiverRep r = QuiverRep::decode(ctx_, q_, dim_, code);
            if (r.satisfies_relations() && r.is_nilpotent()) valid.push_back(code);
        }
        n_valid_ = valid.size();
        point_class_.reserve(valid.size() * 2);
        for (uint64_t c : valid) point_class_[c] = -1;

        auto gens = group_generators();
        Integer orbit_sum = 0;
        for (uint64_t seed : valid) {
            if (point_class_[seed] != -1) continue;
            const int idx = static_cast<int>(classes_.size());
            // ascending sweep: the first unvisited valid point is its orbit's minimum
            uint64_t orbit_size = 0;
            std::vector<uint64_t> stack{seed};
            point_class_[seed] = idx;
            while (!stack.empty()) {
                uint64_t code = stack.back();
                stack.pop_back();
                ++orbit_size;
                QuiverRep r = QuiverRep::decode(ctx_, q_, dim_, code);
                for (const auto& g : gens) {
                    uint64_t image = apply_generator(r, g);
                    auto it = point_class_.find(image);
                    if (it == point_class_.end())
                        throw std::logic_error("group action left the valid point set");
                    if (it->second == -1) {
                        it->second = idx;
                        stack.push_back(image);
                    }
                }
            }
            IsoClass cls;
            cls.dim = dim_;
            cls.index = idx;
            cls.canonical_key = seed;
            cls.aut_order = group_order_ / Integer(static_cast<unsigned long>(orbit_size));
            if (cls.aut_order * Integer(static_cast<unsigned long>(orbit_size)) != group_order_)
                throw std::logic_error("orbit size does not divide the group order");
            classes_.push_back(std::move(cls));
            orbit_sum += static_cast<unsigned long>(orbit_size);
        }
        if (orbit_sum != Integer(static_cast<unsigned long>(n_valid_)))
            throw std::logic_error("orbit sizes do not add up to the point count");
    }

    struct Gen {
        int vertex;
        FqMat g, ginv;
    };

    std::vector<Gen> group_generators() const {
        std::vector<Gen> gens;
        for (size_t v = 0; v < dim_.size(); ++v) {
            const int d = static_cast<int>(dim_[v]);
            if (d < 1) continue;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    if (i == j) continue;
                    FqMat g = FqMat::identity(q_, d);
                    g.set(i, j, 1);
                    FqMat gi = FqMat::identity(q_, d);
                    gi.set(i, j, q_ - 1);
                    gens.push_back({static_cast<int>(v), std::move(g), std::move(gi)});
                }
            if (q_ > 2) {
                int root = 2;
                for (; root < q_; ++root) {
                    int x = root % q_, order = 1;
                    while (x != 1) {
                        x = x * root % q_;
                        ++order;
                    }
                    if (order == q_ - 1) break;
                }
                FqMat g = FqMat::identity(q_, d);
                g.set(0, 0, root);
                FqMat gi = FqMat::identity(q_, d);
                gi.set(0, 0, g.inv_scalar(root));
                gens.push_back({static_cast<int>(v), std::move(g), std::move(gi)});
            }
        }
        return gens;
    }

    uint64_t apply_generator(const QuiverRep& r, const Gen& gen) const {
        QuiverRep s = r;
        for (size_t a = 0; a < s.mats.size(); ++a) {
            const Arrow& arr = ctx_->quiver.arrows[a];
            if (arr.tgt == gen.vertex) s.mats[a] = gen.g * s.mats[a];
            if (arr.src == gen.vertex) s.mats[a] = s.mats[a] * gen.ginv;
        }
        return s.encode();
    }

    AlgebraContextPtr ctx_;
    int q_;
    DimVector dim_;
    std::vector<IsoClass> classes_;
    std::unordered_map<uint64_t, int> point_class_;
    Integer group_order_;
    uint64_t n_valid_ = 0;
};

/// Count of submodules with a prescribed sub/quotient pair.
struct SubQuotCount {
    ClassRef sub;
    ClassRef quot;
    Integer count;
};

/// Census cache plus the counting operations built on it. Windows are memoized
/// by (context, q, dimension vector); everything downstream is pure.
class CensusManager {
public:
    explicit CensusManager(Budget budget = Budget{}) : budget_(budget) {}

    const Budget& budget() const { return budget_; }
    void set_budget(const Budget& b) { budget_ = b; }

    const Census& get(const AlgebraContextPtr& ctx, int q, const DimVector& dim) {
        std::string key = window_key(ctx, q, dim);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
        auto census = std::make_shared<Census>(ctx, q, dim, budget_);
        return *cache_.emplace(std::move(key), std::move(census)).first->second;
    }

    ClassRef classify(const QuiverRep& r) {
        const Census& c = get(r.ctx, r.q, r.dim);
        return ClassRef{r.dim, c.classify(r)};
    }

    QuiverRep representative(const AlgebraContextPtr& ctx, int q, const ClassRef& ref) {
        return get(ctx, q, ref.dim).representative(ref.index);
    }

    Integer aut_order(const AlgebraContextPtr& ctx, int q, const ClassRef& ref) {
        return get(ctx, q, ref.dim).classes().at(static_cast<size_t>(ref.index)).aut_order;
    }

    /// All arrow-closed subspace tuples of the representative of z, classified
    /// by (sub, quotient) isomorphism class. Memoized.
    const std::vector<SubQuotCount>& subobject_census(const AlgebraContextPtr& ctx, int q,
                                                      const ClassRef& z) {
        std::string key = window_key(ctx, q, z.dim) + "#sub#" + std::to_string(z.index);
        auto it = sub_cache_.find(key);
        if (it != sub_cache_.end()) return it->second;

        QuiverRep rep = representative(ctx, q, z);
        std::map<std::pair<ClassRef, ClassRef>, Integer> counts;
        const size_t nv = ctx->n_vertices();
        std::vector<const std::vector<Subspace>*> spaces(nv);
        std::vector<size_t> pick(nv, 0);
        for (size_t v = 0; v < nv; ++v) spaces[v] = &all_subspaces(q, static_cast<int>(z.dim[v]));
        while (true) {
            std::vector<Subspace> tuple;
            for (size_t v = 0; v < nv; ++v) tuple.push_back((*spaces[v])[pick[v]]);
            auto sub = sub_rep(rep, tuple);
            if (sub) {
                ClassRef sref = classify(*sub);
                QuiverRep quot = quotient_rep(rep, tuple);
                ClassRef qref = classify(quot);
                counts[{sref, qref}] += 1;
            }
            size_t v = 0;
            while (v < nv && ++pick[v] == spaces[v]->size()) pick[v++] = 0;
            if (v == nv) break;
        }
        std::vector<SubQuotCount> out;
        for (auto& [k, n] : counts) out.push_back({k.first, k.second, n});
        return sub_cache_.emplace(std::move(key), std::move(out)).first->second;
    }

    /// Hall number F^Z_{X Y} = #{ L <= Z : L = Y, Z/L = X }.
    Integer hall_number(const AlgebraContextPtr& ctx, int q, const ClassRef& z, const ClassRef& x,
                        const ClassRef& y) {
        if (dim_add(x.dim, y.dim) != z.dim) return 0;
        Integer total = 0;
        for (const auto& entry : subobject_census(ctx, q, z))
            if (entry.sub == y && entry.quot == x) total += entry.count;
        return total;
    }

    /// |Ext^1(X,Y)_Z| via Riedtmann-Peng, together with |Hom(X,Y)|.
    std::pair<Rational, Integer> ext1_count_middle(const AlgebraContextPtr& ctx, int q,
                                                   const ClassRef& x, const ClassRef& y,
                                                   const ClassRef& z) {
        Integer f = hall_number(ctx, q, z, x, y);
        QuiverRep xr = representative(ctx, q, x), yr = representative(ctx, q, y);
        Integer hom = int_pow(Integer(q), static_cast<unsigned long>(hom_space(xr, yr).dim));
        Rational ext = make_rational(f * hom * aut_order(ctx, q, x) * aut_order(ctx, q, y),
                                     aut_order(ctx, q, z));
        return {ext, hom};
    }

    /// Classify every homomorphism A -> B by (kernel, cokernel) class.
    std::map<std::pair<ClassRef, ClassRef>, Integer>
    hom_census_by_kernel_cokernel(const QuiverRep& a, const QuiverRep& b) {
        HomSpace hs = hom_space(a, b);
        Integer total = int_pow(Integer(b.q), static_cast<unsigned long>(hs.dim));
        if (total > budget_.max_points)
            throw BudgetExceeded("hom space too large to enumerate");
        const size_t nv = a.ctx->n_vertices();
        std::map<std::pair<ClassRef, ClassRef>, Integer> counts;
        const uint64_t n = total.get_ui();
        for (uint64_t code = 0; code < n; ++code) {
            std::vector<FqMat> f(nv);
            for (size_t v = 0; v < nv; ++v)
                f[v] = FqMat(b.q, static_cast<int>(b.dim[v]), static_cast<int>(a.dim[v]));
            uint64_t c = code;
            for (int k = 0; k < hs.dim; ++k) {
                int coeff = static_cast<int>(c % b.q);
                c /= b.q;
                if (!coeff) continue;
                for (size_t v = 0; v < nv; ++v)
                    for (int i = 0; i < f[v].rows(); ++i)
                        for (int j = 0; j < f[v].cols(); ++j)
                            f[v].set(i, j, f[v].at(i, j) + coeff * hs.basis[k][v].at(i, j));
            }
            // kernel subrep of A
            std::vector<Subspace> ker(nv), img(nv);
            for (size_t v = 0; v < nv; ++v) {
                ker[v] = span_of(a.q, static_cast<int>(a.dim[v]), f[v].kernel_basis());
                std::vector<std::vector<int>> cols;
                for (int j = 0; j < f[v].cols(); ++j) {
                    std::vector<int> col(static_cast<size_t>(f[v].rows()));
                    for (int i = 0; i < f[v].rows(); ++i) col[i] = f[v].at(i, j);
                    cols.push_back(std::move(col));
                }
                img[v] = span_of(b.q, static_cast<int>(b.dim[v]), cols);
            }
            auto kern = sub_rep(a, ker);
            if (!kern) throw std::logic_error("kernel of a module map must be a submodule");
            ClassRef kref = classify(*kern);
            QuiverRep coker = quotient_rep(b, img);
            ClassRef cref = classify(coker);
            counts[{kref, cref}] += 1;
        }
        return counts;
    }

    std::string window_key(const AlgebraContextPtr& ctx, int q, const DimVector& dim) const {
        std::ostringstream s;
        s << ctx->signature << "|q" << q << "|d" << dim_to_string(dim);
        return s.str();
    }

private:
    Budget budget_;
    std::map<std::string, std::shared_ptr<Census>> cache_;
    std::map<std::string, std::vector<SubQuotCount>> sub_cache_;
};

/// |Aut(M)| for an arbitrary valid representation, through its census class.
inline Integer aut_order(CensusManager& cm, const QuiverRep& r) {
    ClassRef ref = cm.classify(r);
    return cm.aut_order(r.ctx, r.q, ref);
}

} // namespace ihall
