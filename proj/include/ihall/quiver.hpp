#pragma once

#include "ihall/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ihall {

using DimVector = std::vector<long>;

inline DimVector dim_add(const DimVector& x, const DimVector& y) {
    DimVector r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}
inline DimVector dim_sub(const DimVector& x, const DimVector& y) {
    DimVector r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}
inline bool dim_leq(const DimVector& x, const DimVector& y) {
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] > y[i]) return false;
    return true;
}
inline long dim_total(const DimVector& x) { return std::accumulate(x.begin(), x.end(), 0L); }
inline DimVector unit_dim(size_t n, size_t i) {
    DimVector r(n, 0);
    r[i] = 1;
    return r;
}
inline std::string dim_to_string(const DimVector& d) {
    std::string s = "(";
    for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
};

/// Finite quiver with named vertices and arrows. Arrow endpoints index into
/// the vertex list; multiple parallel arrows are allowed.
struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    size_t n_vertices() const { return vertices.size(); }

    int vertex_index(const std::string& name) const {
        for (size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == name) return static_cast<int>(i);
        return -1;
    }

    bool has_loop() const {
        for (const auto& a : arrows)
            if (a.src == a.tgt) return true;
        return false;
    }

    long arrows_between(int i, int j) const { // either direction
        long n = 0;
        for (const auto& a : arrows)
            if ((a.src == i && a.tgt == j) || (a.src == j && a.tgt == i)) ++n;
        return n;
    }

    void validate() const {
        std::map<std::string, int> seen;
        for (const auto& v : vertices)
            if (++seen[v] > 1) throw std::invalid_argument("duplicate vertex name: " + v);
        std::map<std::string, int> aseen;
        for (const auto& a : arrows) {
            if (++aseen[a.name] > 1) throw std::invalid_argument("duplicate arrow name: " + a.name);
            if (a.src < 0 || a.src >= static_cast<int>(vertices.size()) || a.tgt < 0 ||
                a.tgt >= static_cast<int>(vertices.size()))
                throw std::invalid_argument("arrow endpoint out of range: " + a.name);
        }
    }
};

/// Quiver automorphism with tau^2 = Id, acting on vertices and arrows.
struct Involution {
    std::vector<int> vertex_map;
    std::vector<int> arrow_map;

    bool is_identity() const {
        for (size_t i = 0; i < vertex_map.size(); ++i)
            if (vertex_map[i] != static_cast<int>(i)) return false;
        return true;
    }
};

using CartanMatrix = std::vector<std::vector<long>>;

/// A quiver together with a validated involution and canonical tau-orbit
/// representatives (the lexicographically least vertex name of each orbit).
class IQuiver {
public:
    static IQuiver validate(Quiver q, const std::map<std::string, std::string>& tau_names) {
        q.validate();
        if (q.has_loop()) throw std::invalid_argument("loops are not allowed in the base quiver");
        const int n = static_cast<int>(q.n_vertices());
        std::vector<int> vmap(n, -1);
        if (tau_names.empty()) {
            for (int i = 0; i < n; ++i) vmap[i] = i;
        } else {
            for (const auto& [from, to] : tau_names) {
                int i = q.vertex_index(from), j = q.vertex_index(to);
                if (i < 0 || j < 0)
                    throw std::invalid_argument("tau mentions unknown vertex: " + from + "->" + to);
                vmap[i] = j;
            }
            for (int i = 0; i < n; ++i)
                if (vmap[i] < 0) vmap[i] = i; // unmentioned vertices are fixed
        }
        for (int i = 0; i < n; ++i)
            if (vmap[vmap[i]] != i)
                throw std::invalid_argument("tau is not an involution on vertices");

        // Arrow map: pair the k-th arrow i->j with the k-th arrow tau(i)->tau(j).
        // tau^2 = Id on arrows is then automatic.
        const int m = static_cast<int>(q.arrows.size());
        std::vector<int> amap(m, -1);
        for (int ia = 0; ia < m; ++ia) {
            const Arrow& a = q.arrows[ia];
            int s = vmap[a.src], t = vmap[a.tgt];
            int pos = 0;
            for (int ja = 0; ja < ia; ++ja)
                if (q.arrows[ja].src == a.src && q.arrows[ja].tgt == a.tgt) ++pos;
            int found = -1;
            for (int ja = 0; ja < m; ++ja) {
                if (q.arrows[ja].src == s && q.arrows[ja].tgt == t) {
                    if (pos == 0) {
                        found = ja;
                        break;
                    }
                    --pos;
                }
            }
            if (found < 0)
                throw std::invalid_argument("tau is not a quiver automorphism: image of arrow " +
                                            a.name + " is missing");
            amap[ia] = found;
        }

        IQuiver iq;
        iq.q_ = std::move(q);
        iq.tau_.vertex_map = std::move(vmap);
        iq.tau_.arrow_map = std::move(amap);
        // orbit representatives: lexicographically least vertex name per orbit
        std::vector<bool> taken(n, false);
        for (int i = 0; i < n; ++i) {
            if (taken[i]) continue;
            int j = iq.tau_.vertex_map[i];
            taken[i] = taken[j] = true;
            int rep = (iq.q_.vertices[i] <= iq.q_.vertices[j]) ? i : j;
            iq.reps_.push_back(rep);
        }
        return iq;
    }

    const Quiver& quiver() const { return q_; }
    const Involution& tau() const { return tau_; }
    int tau_of(int i) const { return tau_.vertex_map[i]; }
    int tau_of_arrow(int a) const { return tau_.arrow_map[a]; }
    bool split() const { return tau_.is_identity(); }
    size_t n_vertices() const { return q_.n_vertices(); }
    const std::vector<int>& orbit_reps() const { return reps_; }
    bool is_rep(int i) const {
        return std::find(reps_.begin(), reps_.end(), i) != reps_.end();
    }

    CartanMatrix cartan_matrix() const {
        const int n = static_cast<int>(q_.n_vertices());
        CartanMatrix c(n, std::vector<long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) c[i][j] = (i == j ? 2 : -q_.arrows_between(i, j));
        return c;
    }

private:
    Quiver q_;
    Involution tau_;
    std::vector<int> reps_;
};

/// Euler form of the path algebra on dimension vectors:
/// <x, y> = sum_i x_i y_i - sum_{arrows i->j} x_i y_j.
inline long euler_form_q(const DimVector& x, const DimVector& y, const Quiver& q) {
    long s = 0;
    for (size_t i = 0; i < q.n_vertices(); ++i) s += x[i] * y[i];
    for (const auto& a : q.arrows) s -= x[a.src] * y[a.tgt];
    return s;
}

enum class PairingSide { left, right };

/// Euler pairing of a generalized simple E_i against a module with restricted
/// dimension vector m: <E_i, M> = <S_i, m>_Q on the left and
/// <M, E_i> = <m, S_{tau i}>_Q on the right.
inline long euler_pairing_e(int i, const DimVector& m, PairingSide side, const IQuiver& iq) {
    DimVector s = unit_dim(iq.n_vertices(), static_cast<size_t>(i));
    DimVector st = unit_dim(iq.n_vertices(), static_cast<size_t>(iq.tau_of(i)));
    return side == PairingSide::left ? euler_form_q(s, m, iq.quiver())
                                     : euler_form_q(m, st, iq.quiver());
}

// ---- quiver config file format ------------------------------------------

inline nlohmann::ordered_json iquiver_to_json(const IQuiver& iq) {
    nlohmann::ordered_json j;
    j["vertices"] = iq.quiver().vertices;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& a : iq.quiver().arrows)
        arr.push_back({a.name, iq.quiver().vertices[a.src], iq.quiver().vertices[a.tgt]});
    j["arrows"] = arr;
    if (!iq.tau().is_identity()) {
        nlohmann::ordered_json t;
        for (size_t i = 0; i < iq.n_vertices(); ++i)
            t[iq.quiver().vertices[i]] = iq.quiver().vertices[iq.tau_of(static_cast<int>(i))];
        j["tau"] = t;
    }
    return j;
}

inline IQuiver iquiver_from_json(const nlohmann::json& j) {
    Quiver q;
    for (const auto& v : j.at("vertices")) q.vertices.push_back(v.get<std::string>());
    if (j.contains("arrows"))
        for (const auto& a : j.at("arrows")) {
            if (!a.is_array() || a.size() != 3)
                throw std::invalid_argument("arrow entries must be [name, source, target]");
            Arrow arr;
            arr.name = a[0].get<std::string>();
            arr.src = q.vertex_index(a[1].get<std::string>());
            arr.tgt = q.vertex_index(a[2].get<std::string>());
            if (arr.src < 0 || arr.tgt < 0)
                throw std::invalid_argument("arrow " + arr.name + " uses unknown vertex");
            q.arrows.push_back(arr);
        }
    std::map<std::string, std::string> tau;
    if (j.contains("tau"))
        for (const auto& [k, v] : j.at("tau").items()) tau[k] = v.get<std::string>();
    return IQuiver::validate(std::move(q), tau);
}

inline std::string iquiver_to_config_text(const IQuiver& iq) { return iquiver_to_json(iq).dump(2) + "\n"; }

inline IQuiver iquiver_from_config_text(const std::string& text) {
    return iquiver_from_json(nlohmann::json::parse(text));
}

// ---- standard constructions ----------------------------------------------

/// Rank-2 quiver with `a` arrows 1 -> 2 and `b` arrows 2 -> 1, trivial tau.
inline IQuiver rank2_iquiver(long a, long b) {
    Quiver q;
    q.vertices = {"1", "2"};
    for (long i = 0; i < a; ++i) q.arrows.push_back({"alpha" + std::to_string(i + 1), 0, 1});
    for (long j = 0; j < b; ++j) q.arrows.push_back({"beta" + std::to_string(j + 1), 1, 0});
    return IQuiver::validate(std::move(q), {});
}

/// One vertex, no arrows, trivial tau.
inline IQuiver point_iquiver() {
    Quiver q;
    q.vertices = {"1"};
    return IQuiver::validate(std::move(q), {});
}

/// n isolated vertices with tau swapping them in consecutive pairs.
inline IQuiver isolated_pairs_iquiver(int pairs) {
    Quiver q;
    std::map<std::string, std::string> tau;
    for (int p = 0; p < pairs; ++p) {
        std::string x = std::to_string(2 * p + 1), y = std::to_string(2 * p + 2);
        q.vertices.push_back(x);
        q.vertices.push_back(y);
        tau[x] = y;
        tau[y] = x;
    }
    return IQuiver::validate(std::move(q), tau);
}

/// Linear quiver 1 -> 2 with trivial tau.
inline IQuiver a2_iquiver() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows.push_back({"alpha", 0, 1});
    return IQuiver::validate(std::move(q), {});
}

/// 2-cycle 1 <-> 2 with tau swapping the vertices (so c_{i, tau i} = -2).
inline IQuiver two_cycle_swap_iquiver() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows.push_back({"alpha", 0, 1});
    q.arrows.push_back({"beta", 1, 0});
    return IQuiver::validate(std::move(q), {{"1", "2"}, {"2", "1"}});
}

} // namespace ihall
