#pragma once

// Decomposition of a conserved slice into irreducible components, with
// recurrence and period classification.  Two first-class modes: raw
// configurations, and shift-quotient (states are rotation classes, matching
// the usual presentation of the small worked examples).
//
// Edges come from the 2^k firing masks.  At interior alpha every mask has
// positive probability; the degenerate noise levels keep only the empty or
// the full mask, which changes the reachability structure, so the regime is
// an explicit parameter and callers re-decompose when they move alpha onto
// the boundary.

#include "sca5/ring.hpp"
#include "sca5/skeleton.hpp"
#include "sca5/slice.hpp"
#include "sca5/transitions.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sca5 {

enum class Mode { raw, shift_quotient };
enum class AlphaRegime { interior, zero, one };

inline const char* to_string(Mode m) { return m == Mode::raw ? "raw" : "quotient"; }

struct Component {
    Mode mode = Mode::raw;
    int L = 0, n1 = 0, n110 = 0;
    std::vector<Ring> members;     // ascending; quotient mode: lex-min class representatives
    std::vector<int> orbit_sizes;  // per member: rotation-class size (all 1 in raw mode)
    bool recurrent = false;
    int period = 0;  // gcd of cycle lengths; meaningful only when recurrent
    std::optional<std::string> skeleton_orbit;  // canonical skeleton word, absent iff n1 == L

    std::size_t size() const { return members.size(); }

    int index_of(const Ring& x) const {
        const auto it = std::lower_bound(members.begin(), members.end(), x);
        if (it == members.end() || !(*it == x)) return -1;
        return int(it - members.begin());
    }
};

namespace detail {

inline bool edge_allowed(int ell, int k, AlphaRegime regime) {
    switch (regime) {
        case AlphaRegime::zero: return ell == 0;
        case AlphaRegime::one: return ell == k;
        default: return true;
    }
}

struct SliceGraph {
    std::vector<Ring> nodes;                 // ascending
    std::vector<std::vector<int>> adjacency; // deduplicated target indices

    int index_of(const Ring& x) const {
        const auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
        if (it == nodes.end() || !(*it == x)) return -1;
        return int(it - nodes.begin());
    }
};

inline SliceGraph build_slice_graph(const Slice& slice, Mode mode, AlphaRegime regime) {
    SliceGraph g;
    if (mode == Mode::raw) {
        g.nodes = slice.members;
    } else {
        for (const Ring& x : slice.members)
            if (x.is_canonical_rotation()) g.nodes.push_back(x);
    }
    g.adjacency.resize(g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const TransitionRecord rec = successors(g.nodes[i]);
        std::vector<int>& out = g.adjacency[i];
        for (const auto& e : rec.edges) {
            if (!edge_allowed(e.ell, rec.k, regime)) continue;
            const Ring t = (mode == Mode::raw) ? e.target : e.target.canonical_rotation();
            const int j = g.index_of(t);
            if (j < 0)
                throw std::logic_error("decompose: successor left the slice (conservation bug)");
            out.push_back(j);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return g;
}

// Iterative Tarjan; returns the SCC id of every node.
inline std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& adj,
                                                      int& scc_count) {
    const int n = int(adj.size());
    std::vector<int> index(std::size_t(n), -1), low(std::size_t(n), 0), comp(std::size_t(n), -1);
    std::vector<int> stack;
    std::vector<char> on_stack(std::size_t(n), 0);
    int next_index = 0;
    scc_count = 0;

    struct Frame {
        int v;
        std::size_t edge;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; ++root) {
        if (index[std::size_t(root)] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [v, edge] = call.back();
            if (edge == 0) {
                index[std::size_t(v)] = low[std::size_t(v)] = next_index++;
                stack.push_back(v);
                on_stack[std::size_t(v)] = 1;
            }
            bool descended = false;
            while (edge < adj[std::size_t(v)].size()) {
                const int w = adj[std::size_t(v)][edge];
                ++edge;
                if (index[std::size_t(w)] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[std::size_t(w)])
                    low[std::size_t(v)] = std::min(low[std::size_t(v)], index[std::size_t(w)]);
            }
            if (descended) continue;
            if (low[std::size_t(v)] == index[std::size_t(v)]) {
                for (;;) {
                    const int w = stack.back();
                    stack.pop_back();
                    on_stack[std::size_t(w)] = 0;
                    comp[std::size_t(w)] = scc_count;
                    if (w == v) break;
                }
                ++scc_count;
            }
            const int child = v;
            call.pop_back();
            if (!call.empty())
                low[std::size_t(call.back().v)] =
                    std::min(low[std::size_t(call.back().v)], low[std::size_t(child)]);
        }
    }
    return comp;
}

// Period of a strongly connected subgraph: gcd over internal edges (u, v) of
// depth(u) + 1 - depth(v) for BFS depths from any root.
inline int scc_period(const std::vector<int>& nodes, const std::vector<std::vector<int>>& adj,
                      const std::vector<int>& comp) {
    if (nodes.empty()) return 0;
    const int cid = comp[std::size_t(nodes.front())];
    std::vector<long long> depth;
    std::vector<int> order;
    depth.assign(comp.size(), -1);
    depth[std::size_t(nodes.front())] = 0;
    order.push_back(nodes.front());
    for (std::size_t q = 0; q < order.size(); ++q) {
        const int u = order[q];
        for (int w : adj[std::size_t(u)]) {
            if (comp[std::size_t(w)] != cid) continue;
            if (depth[std::size_t(w)] == -1) {
                depth[std::size_t(w)] = depth[std::size_t(u)] + 1;
                order.push_back(w);
            }
        }
    }
    long long g = 0;
    for (int u : nodes)
        for (int w : adj[std::size_t(u)]) {
            if (comp[std::size_t(w)] != cid) continue;
            g = std::gcd(g, depth[std::size_t(u)] + 1 - depth[std::size_t(w)]);
        }
    return int(g < 0 ? -g : g);
}

}  // namespace detail

inline std::vector<Component> decompose(const Slice& slice, Mode mode,
                                        AlphaRegime regime = AlphaRegime::interior) {
    std::vector<Component> out;
    if (slice.empty()) return out;

    const detail::SliceGraph g = detail::build_slice_graph(slice, mode, regime);
    int scc_count = 0;
    const std::vector<int> comp = detail::strongly_connected_components(g.adjacency, scc_count);

    std::vector<std::vector<int>> nodes_of;
    nodes_of.resize(std::size_t(scc_count));
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        nodes_of[std::size_t(comp[i])].push_back(int(i));

    for (int c = 0; c < scc_count; ++c) {
        const std::vector<int>& nodes = nodes_of[std::size_t(c)];
        Component k;
        k.mode = mode;
        k.L = slice.L;
        k.n1 = slice.n1;
        k.n110 = slice.n110;
        bool closed = true;
        for (int u : nodes) {
            k.members.push_back(g.nodes[std::size_t(u)]);
            for (int w : g.adjacency[std::size_t(u)])
                if (comp[std::size_t(w)] != c) closed = false;
        }
        std::sort(k.members.begin(), k.members.end());
        k.orbit_sizes.reserve(k.members.size());
        for (const Ring& m : k.members)
            k.orbit_sizes.push_back(mode == Mode::raw ? 1 : m.orbit_size());
        k.recurrent = closed;
        k.period = closed ? detail::scc_period(nodes, g.adjacency, comp) : 0;
        if (slice.n1 < slice.L)
            k.skeleton_orbit = canonical_orbit_word(skeleton(k.members.front()));
        out.push_back(std::move(k));
    }
    std::sort(out.begin(), out.end(),
              [](const Component& a, const Component& b) { return a.members.front() < b.members.front(); });
    return out;
}

// Recomputes the gcd of return times through the component's members.
inline int classify_period(const Component& component,
                           AlphaRegime regime = AlphaRegime::interior) {
    if (!component.recurrent)
        throw std::invalid_argument("classify_period: component is transient");
    std::vector<std::vector<int>> adj(component.size());
    for (std::size_t i = 0; i < component.size(); ++i) {
        const TransitionRecord rec = successors(component.members[i]);
        for (const auto& e : rec.edges) {
            if (!detail::edge_allowed(e.ell, rec.k, regime)) continue;
            const Ring t = (component.mode == Mode::raw) ? e.target : e.target.canonical_rotation();
            const int j = component.index_of(t);
            if (j < 0) throw std::logic_error("classify_period: edge leaves a recurrent component");
            adj[i].push_back(j);
        }
    }
    std::vector<int> nodes(component.size());
    std::iota(nodes.begin(), nodes.end(), 0);
    std::vector<int> comp(component.size(), 0);
    return detail::scc_period(nodes, adj, comp);
}

}  // namespace sca5
