#pragma once

#include "ihall/rep.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace ihall {

// Explicit projective modules over the iquiver algebra when the base quiver
// is acyclic (the algebra is then finite dimensional). The indecomposable
// projective at vertex i has basis {w} u {w' eps_i} with w running over base
// paths from i and w' over base paths from tau(i); a base arrow concatenates,
// eps maps the path component to its tau-image inside the eps component and
// kills the eps component.

inline bool base_is_acyclic(const AlgebraContext& ctx) {
    const size_t n = ctx.n_vertices();
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (int a = 0; a < ctx.n_q_arrows; ++a) {
        out[ctx.quiver.arrows[a].src].push_back(ctx.quiver.arrows[a].tgt);
        ++indeg[ctx.quiver.arrows[a].tgt];
    }
    std::vector<int> stack;
    for (size_t v = 0; v < n; ++v)
        if (!indeg[v]) stack.push_back(static_cast<int>(v));
    size_t seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : out[v])
            if (--indeg[w] == 0) stack.push_back(w);
    }
    return seen == n;
}

/// All base-quiver paths starting at `from` (including the empty path),
/// as arrow lists in application order. Requires an acyclic base.
inline std::vector<std::vector<int>> base_paths_from(const AlgebraContext& ctx, int from) {
    std::vector<std::vector<int>> out;
    std::vector<std::pair<std::vector<int>, int>> stack{{{}, from}};
    while (!stack.empty()) {
        auto [path, at] = stack.back();
        stack.pop_back();
        out.push_back(path);
        for (int a = 0; a < ctx.n_q_arrows; ++a)
            if (ctx.quiver.arrows[a].src == at) {
                auto next = path;
                next.push_back(a);
                stack.emplace_back(std::move(next), ctx.quiver.arrows[a].tgt);
            }
    }
    return out;
}

inline int path_end(const AlgebraContext& ctx, int from, const std::vector<int>& path) {
    int at = from;
    for (int a : path) at = ctx.quiver.arrows[a].tgt;
    return at;
}

inline QuiverRep projective_rep(AlgebraContextPtr ctx, int q, int i) {
    if (!ctx->is_bar) throw std::invalid_argument("projectives are built over the iquiver algebra");
    if (!base_is_acyclic(*ctx))
        throw std::invalid_argument("explicit projectives need an acyclic base quiver");
    const int ti = ctx->tau[i];
    auto paths_a = base_paths_from(*ctx, i);
    auto paths_b = base_paths_from(*ctx, ti);

    // Per-vertex slots: path-component elements first, then eps-component.
    const size_t nv = ctx->n_vertices();
    DimVector dim(nv, 0);
    std::map<std::vector<int>, int> slot_a, slot_b;
    std::vector<int> end_a(paths_a.size()), end_b(paths_b.size());
    for (size_t p = 0; p < paths_a.size(); ++p) end_a[p] = path_end(*ctx, i, paths_a[p]);
    for (size_t p = 0; p < paths_b.size(); ++p) end_b[p] = path_end(*ctx, ti, paths_b[p]);
    for (size_t p = 0; p < paths_a.size(); ++p) slot_a[paths_a[p]] = static_cast<int>(dim[end_a[p]]++);
    for (size_t p = 0; p < paths_b.size(); ++p) slot_b[paths_b[p]] = static_cast<int>(dim[end_b[p]]++);

    QuiverRep r = QuiverRep::zero_rep(ctx, q, dim);
    for (size_t p = 0; p < paths_a.size(); ++p)
        for (int a = 0; a < ctx->n_q_arrows; ++a)
            if (ctx->quiver.arrows[a].src == end_a[p]) {
                auto longer = paths_a[p];
                longer.push_back(a);
                r.mats[a].set(slot_a.at(longer), slot_a.at(paths_a[p]), 1);
            }
    for (size_t p = 0; p < paths_b.size(); ++p)
        for (int a = 0; a < ctx->n_q_arrows; ++a)
            if (ctx->quiver.arrows[a].src == end_b[p]) {
                auto longer = paths_b[p];
                longer.push_back(a);
                r.mats[a].set(slot_b.at(longer), slot_b.at(paths_b[p]), 1);
            }
    for (size_t p = 0; p < paths_a.size(); ++p) {
        const int t = end_a[p];
        std::vector<int> img;
        for (int a : paths_a[p]) img.push_back(ctx->tau_arrow[a]);
        r.mats[ctx->eps_arrow[t]].set(slot_b.at(img), slot_a.at(paths_a[p]), 1);
    }
    if (!r.satisfies_relations() || !r.is_nilpotent())
        throw std::logic_error("constructed projective violates the relations");
    return r;
}

/// Projective cover P(K) -> K: P(K) is the sum of one projective per top
/// basis vector, mapped by pushing the generator along paths.
struct ProjectiveCover {
    QuiverRep cover;
    std::vector<FqMat> phi; // per vertex, dim K_v x dim P_v
};

inline ProjectiveCover projective_cover(const QuiverRep& k) {
    const auto& ctx = k.ctx;
    const int q = k.q;
    const size_t nv = ctx->n_vertices();
    auto rad = radical_subspaces(k);

    // generator vectors: standard vectors at the non-pivot columns of rad
    struct Generator {
        int vertex;
        std::vector<int> vec;
    };
    std::vector<Generator> gens;
    for (size_t v = 0; v < nv; ++v) {
        FqMat probe = rad[v].basis;
        auto piv = probe.rref();
        std::vector<bool> is_piv(static_cast<size_t>(k.dim[v]), false);
        for (int p : piv) is_piv[p] = true;
        for (long j = 0; j < k.dim[v]; ++j)
            if (!is_piv[j]) {
                std::vector<int> e(static_cast<size_t>(k.dim[v]), 0);
                e[j] = 1;
                gens.push_back({static_cast<int>(v), std::move(e)});
            }
    }

    QuiverRep cover = QuiverRep::zero_rep(ctx, q, DimVector(nv, 0));
    bool first = true;
    std::vector<QuiverRep> projs;
    for (const auto& g : gens) {
        QuiverRep p = projective_rep(ctx, q, g.vertex);
        projs.push_back(p);
        cover = first ? p : direct_sum(cover, p);
        first = false;
    }
    if (gens.empty()) cover = QuiverRep::zero_rep(ctx, q, DimVector(nv, 0));

    // phi on each summand: basis element (component, path) of P_{t} goes to
    // K(path) g resp. K(path) K(eps_t) g.
    std::vector<FqMat> phi(nv);
    for (size_t v = 0; v < nv; ++v) phi[v] = FqMat(q, static_cast<int>(k.dim[v]), static_cast<int>(cover.dim[v]));
    std::vector<long> col_off(nv, 0);
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        const auto& g = gens[gi];
        const int ti = ctx->tau[g.vertex];
        auto paths_a = base_paths_from(*ctx, g.vertex);
        auto paths_b = base_paths_from(*ctx, ti);
        DimVector local(nv, 0);
        auto apply_path = [&](const std::vector<int>& path, std::vector<int> vec) {
            for (int a : path) {
                FqMat w = k.mats[a].mul_vec(vec);
                vec.assign(static_cast<size_t>(w.rows()), 0);
                for (int i = 0; i < w.rows(); ++i) vec[i] = w.at(i, 0);
            }
            return vec;
        };
        for (const auto& path : paths_a) {
            const int t = path_end(*ctx, g.vertex, path);
            auto img = apply_path(path, g.vec);
            const long col = col_off[t] + local[t];
            for (size_t i = 0; i < img.size(); ++i)
                phi[t].set(static_cast<int>(i), static_cast<int>(col), img[i]);
            ++local[t];
        }
        {
            // eps component: first apply eps at the generator's vertex
            FqMat w = k.mats[ctx->eps_arrow[g.vertex]].mul_vec(g.vec);
            std::vector<int> seed(static_cast<size_t>(w.rows()));
            for (int i = 0; i < w.rows(); ++i) seed[i] = w.at(i, 0);
            for (const auto& path : paths_b) {
                const int t = path_end(*ctx, ti, path);
                auto img = apply_path(path, seed);
                const long col = col_off[t] + local[t];
                for (size_t i = 0; i < img.size(); ++i)
                    phi[t].set(static_cast<int>(i), static_cast<int>(col), img[i]);
                ++local[t];
            }
        }
        for (size_t v = 0; v < nv; ++v) col_off[v] += projs[gi].dim[v];
    }

    // phi must be a surjective module map
    for (size_t a = 0; a < cover.mats.size(); ++a) {
        const Arrow& arr = ctx->quiver.arrows[a];
        if (!(phi[arr.tgt] * cover.mats[a] == k.mats[a] * phi[arr.src]))
            throw std::logic_error("projective cover map is not a module map");
    }
    for (size_t v = 0; v < nv; ++v)
        if (phi[v].rank() != static_cast<int>(k.dim[v]))
            throw std::logic_error("projective cover map is not surjective");
    return {std::move(cover), std::move(phi)};
}

/// First syzygy: the kernel of the projective cover.
inline QuiverRep syzygy(const QuiverRep& k, const ProjectiveCover& pc) {
    const size_t nv = k.ctx->n_vertices();
    std::vector<Subspace> ker(nv);
    for (size_t v = 0; v < nv; ++v)
        ker[v] = span_of(k.q, static_cast<int>(pc.cover.dim[v]), pc.phi[v].kernel_basis());
    auto sub = sub_rep(pc.cover, ker);
    if (!sub) throw std::logic_error("syzygy subspaces are not arrow-closed");
    return *sub;
}

/// Projective dimension <= 1 via covers: the syzygy is projective iff it has
/// the same dimension vector as its own projective cover.
inline bool projdim_le1_by_cover(const QuiverRep& k) {
    auto pc = projective_cover(k);
    QuiverRep omega = syzygy(k, pc);
    if (omega.total_dim() == 0) return true;
    DimVector t = top_dims(omega);
    DimVector expected(k.dim.size(), 0);
    for (size_t v = 0; v < t.size(); ++v) {
        if (!t[v]) continue;
        QuiverRep p = projective_rep(k.ctx, k.q, static_cast<int>(v));
        for (size_t w = 0; w < expected.size(); ++w) expected[w] += t[v] * p.dim[w];
    }
    return expected == omega.dim;
}

/// dim Ext^1(X, M) from the cover exact sequence:
/// Hom(X,M) -> Hom(P,M) -> Hom(Omega X, M) -> Ext^1(X,M) -> 0.
inline long ext1_dim(const QuiverRep& x, const QuiverRep& m) {
    auto pc = projective_cover(x);
    QuiverRep omega = syzygy(x, pc);
    return hom_space(omega, m).dim - hom_space(pc.cover, m).dim + hom_space(x, m).dim;
}

} // namespace ihall
