#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotlat/matrix.hpp"
#include "knotlat/normal_form.hpp"

namespace knotlat {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ribbon graph: edge e owns half-edges 2e (tail end) and 2e+1 (head end);
// the reference orientation runs tail -> head. The rotation lists the
// half-edge ends counterclockwise around each vertex; together with the
// pairing h <-> h^1 this determines a cellular embedding in a closed
// oriented surface.
class EmbeddedGraph {
public:
    EmbeddedGraph() = default;

    static EmbeddedGraph from_rotations(std::vector<std::vector<int>> rotations) {
        EmbeddedGraph g;
        g.rotation_ = std::move(rotations);
        std::size_t half_count = 0;
        for (const auto& r : g.rotation_) half_count += r.size();
        if (half_count % 2 != 0) throw GraphError("odd number of half-edges");
        g.vertex_of_.assign(half_count, -1);
        g.pos_.assign(half_count, 0);
        for (std::size_t v = 0; v < g.rotation_.size(); ++v)
            for (std::size_t k = 0; k < g.rotation_[v].size(); ++k) {
                int h = g.rotation_[v][k];
                if (h < 0 || std::size_t(h) >= half_count)
                    throw GraphError("half-edge id out of range: " + std::to_string(h));
                if (g.vertex_of_[h] != -1)
                    throw GraphError("half-edge appears twice: " + std::to_string(h));
                g.vertex_of_[h] = int(v);
                g.pos_[h] = int(k);
            }
        for (std::size_t h = 0; h < half_count; ++h)
            if (g.vertex_of_[h] == -1) throw GraphError("half-edge missing: " + std::to_string(h));
        g.trace_faces();
        return g;
    }

    std::size_t num_vertices() const { return rotation_.size(); }
    std::size_t num_edges() const { return vertex_of_.size() / 2; }
    std::size_t num_faces() const { return faces_.size(); }

    int vertex_of(int h) const { return vertex_of_[h]; }
    int tail(int e) const { return vertex_of_[2 * e]; }
    int head(int e) const { return vertex_of_[2 * e + 1]; }
    static int mate(int h) { return h ^ 1; }
    static int edge_of(int h) { return h / 2; }

    const std::vector<std::vector<int>>& rotations() const { return rotation_; }
    const std::vector<std::vector<int>>& faces() const { return faces_; }
    int face_of(int h) const { return face_of_[h]; }

    int rotation_next(int h) const {
        const auto& r = rotation_[vertex_of_[h]];
        return r[(pos_[h] + 1) % r.size()];
    }
    int rotation_prev(int h) const {
        const auto& r = rotation_[vertex_of_[h]];
        return r[(pos_[h] + r.size() - 1) % r.size()];
    }
    // next half-edge along the face lying to the left of h
    int face_next(int h) const { return rotation_next(mate(h)); }

    bool connected() const {
        if (num_vertices() == 0) return true;
        std::vector<bool> seen(num_vertices(), false);
        std::queue<int> q;
        q.push(0);
        seen[0] = true;
        std::size_t count = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int h : rotation_[v]) {
                int w = vertex_of_[mate(h)];
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    q.push(w);
                }
            }
        }
        return count == num_vertices();
    }

    // Euler genus: V - E + F = 2 - 2g for connected graphs
    std::size_t genus() const {
        long chi = long(num_vertices()) - long(num_edges()) + long(num_faces());
        long g2 = 2 - chi;
        if (g2 < 0 || g2 % 2 != 0) throw GraphError("inconsistent Euler characteristic");
        return std::size_t(g2 / 2);
    }

    // surface dual: one vertex per face, edge indices preserved, rotation of a
    // dual vertex given by the facial orbit
    EmbeddedGraph dual() const { return from_rotations(faces_); }

    // mirror image: reverse every rotation (reverses the surface orientation)
    EmbeddedGraph reversed() const {
        auto rot = rotation_;
        for (auto& r : rot) std::reverse(r.begin(), r.end());
        return from_rotations(rot);
    }

    // --- cycle and cut structure ------------------------------------------

    struct SpanningTree {
        std::vector<bool> in_tree;       // edge -> in tree
        std::vector<int> parent_half;    // vertex -> half-edge at parent leading to this vertex's
                                         // direction: half sits at the vertex, mate at parent
        std::vector<int> order;          // BFS order of vertices
    };

    SpanningTree spanning_tree() const {
        if (!connected()) throw GraphError("spanning tree of a disconnected graph");
        SpanningTree t;
        t.in_tree.assign(num_edges(), false);
        t.parent_half.assign(num_vertices(), -1);
        std::vector<bool> seen(num_vertices(), false);
        std::queue<int> q;
        q.push(0);
        seen[0] = true;
        t.order.push_back(0);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int h : rotation_[v]) {
                int w = vertex_of_[mate(h)];
                if (seen[w]) continue;
                seen[w] = true;
                t.in_tree[edge_of(h)] = true;
                t.parent_half[w] = mate(h);  // half-edge at w pointing back toward v
                t.order.push_back(w);
                q.push(w);
            }
        }
        return t;
    }

    // closed walk (sequence of half-edges, each traversed tail-of-h -> mate)
    using Walk = std::vector<int>;

    // signed edge vector of a walk
    std::vector<Int> walk_vector(const Walk& w) const {
        std::vector<Int> v(num_edges(), 0);
        for (int h : w) {
            if (h % 2 == 0)
                v[edge_of(h)] += 1;
            else
                v[edge_of(h)] -= 1;
        }
        return v;
    }

    // path from vertex a to vertex b inside the spanning tree, as half-edges
    Walk tree_path(const SpanningTree& t, int a, int b) const {
        auto chain = [&](int v) {
            std::vector<int> up;  // half-edges from v toward the root, each at the lower vertex
            while (t.parent_half[v] != -1) {
                int h = t.parent_half[v];  // at v, pointing toward parent
                up.push_back(h);
                v = vertex_of_[mate(h)];
            }
            return up;
        };
        std::vector<int> ua = chain(a), ub = chain(b);
        // strip the common tail (shared path near the root)
        while (!ua.empty() && !ub.empty() && ua.back() == ub.back()) {
            ua.pop_back();
            ub.pop_back();
        }
        Walk w = ua;  // a -> lca
        for (auto it = ub.rbegin(); it != ub.rend(); ++it) w.push_back(mate(*it));  // lca -> b
        return w;
    }

    struct CycleBasis {
        IMat vectors;               // rows = fundamental cycles, cols = edges
        std::vector<Walk> walks;    // closed walks realizing each cycle
        std::vector<int> cotree;    // the defining non-tree edge of each cycle
    };

    // fundamental cycles of the BFS spanning tree, one per non-tree edge,
    // in edge-id order
    CycleBasis cycle_basis() const {
        SpanningTree t = spanning_tree();
        return cycle_basis(t);
    }

    CycleBasis cycle_basis(const SpanningTree& t) const {
        CycleBasis b;
        std::vector<Walk> walks;
        std::vector<int> cotree;
        for (std::size_t e = 0; e < num_edges(); ++e) {
            if (t.in_tree[e]) continue;
            Walk w;
            w.push_back(2 * int(e));  // traverse e tail -> head
            Walk back = tree_path(t, head(int(e)), tail(int(e)));
            w.insert(w.end(), back.begin(), back.end());
            walks.push_back(w);
            cotree.push_back(int(e));
        }
        b.vectors = IMat(walks.size(), num_edges());
        for (std::size_t i = 0; i < walks.size(); ++i) {
            auto v = walk_vector(walks[i]);
            for (std::size_t e = 0; e < num_edges(); ++e) b.vectors(i, e) = v[e];
        }
        b.walks = std::move(walks);
        b.cotree = std::move(cotree);
        return b;
    }

    // vertex cuts d*(v) = sum(out) - sum(in), one row per vertex
    IMat vertex_cuts() const {
        IMat c(num_vertices(), num_edges());
        for (std::size_t e = 0; e < num_edges(); ++e) {
            c(tail(int(e)), e) += 1;
            c(head(int(e)), e) -= 1;
        }
        return c;
    }

    // facial walk edge-vectors, one row per face
    IMat face_vectors() const {
        IMat f(num_faces(), num_edges());
        for (std::size_t i = 0; i < faces_.size(); ++i) {
            auto v = walk_vector(faces_[i]);
            for (std::size_t e = 0; e < num_edges(); ++e) f(i, e) = v[e];
        }
        return f;
    }

    // --- homology of the ambient surface -----------------------------------

    struct TreeCotree {
        SpanningTree tree;              // spanning tree of the graph
        std::vector<bool> in_dual_tree; // edge -> in the spanning tree of the dual
        std::vector<int> free_edges;    // the 2g leftover edges
        std::vector<Walk> generator_walks;  // fundamental cycles of the free edges
    };

    TreeCotree tree_cotree() const {
        TreeCotree tc;
        tc.tree = spanning_tree();
        // BFS spanning tree of the dual using only edges not in the primal tree
        tc.in_dual_tree.assign(num_edges(), false);
        std::vector<bool> seen(num_faces(), false);
        std::queue<int> q;
        if (num_faces() > 0) {
            q.push(0);
            seen[0] = true;
        }
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (int h : faces_[f]) {
                int e = edge_of(h);
                if (tc.tree.in_tree[e]) continue;
                int g = face_of_[mate(h)];
                if (seen[g]) continue;
                seen[g] = true;
                tc.in_dual_tree[e] = true;
                q.push(g);
            }
        }
        for (std::size_t e = 0; e < num_edges(); ++e)
            if (!tc.tree.in_tree[e] && !tc.in_dual_tree[e]) tc.free_edges.push_back(int(e));
        CycleBasis cb = cycle_basis(tc.tree);
        for (int e : tc.free_edges) {
            for (std::size_t i = 0; i < cb.cotree.size(); ++i)
                if (cb.cotree[i] == e) tc.generator_walks.push_back(cb.walks[i]);
        }
        return tc;
    }

    // coordinates of cycle vectors in the tree-cotree basis of H_1(Sigma):
    // returns the matrix of the inclusion-induced map (rows = generators,
    // cols = input cycles). Input rows must be flows (kernel of the boundary).
    IMat inclusion_matrix(const IMat& cycles, const TreeCotree& tc) const {
        std::size_t g2 = tc.free_edges.size();
        IMat result(g2, cycles.rows());
        // solve [face_vectors^T | generator_vectors^T] * y = cycle^T over Z
        IMat f = face_vectors();
        IMat cols(num_edges(), f.rows() + g2);
        for (std::size_t j = 0; j < f.rows(); ++j)
            for (std::size_t e = 0; e < num_edges(); ++e) cols(e, j) = f(j, e);
        for (std::size_t j = 0; j < g2; ++j) {
            auto v = walk_vector(tc.generator_walks[j]);
            for (std::size_t e = 0; e < num_edges(); ++e) cols(e, f.rows() + j) = v[e];
        }
        for (std::size_t c = 0; c < cycles.rows(); ++c) {
            std::vector<Int> rhs(num_edges());
            for (std::size_t e = 0; e < num_edges(); ++e) rhs[e] = cycles(c, e);
            auto sol = solve_integer(cols, rhs);
            if (!sol) throw GraphError("cycle is not integral in the face/generator span");
            for (std::size_t j = 0; j < g2; ++j) result(j, c) = (*sol)[f.rows() + j];
        }
        return result;
    }

    // --- algebraic intersection numbers ------------------------------------

    // Algebraic intersection number of two closed walks on the surface, with
    // the sign convention induced by the counterclockwise rotations. Walks are
    // perturbed to disjoint parallel lanes along shared edges (the first walk
    // keeps to the left) and crossings are counted inside each vertex disc.
    long intersection_number(const Walk& wa, const Walk& wb) const {
        validate_walk(wa);
        validate_walk(wb);
        struct Endpoint {
            int walk, step;
            bool arrival;
            long pos = 0;  // global circular position, filled per vertex
        };
        // lanes per edge: (walk, step) sorted; walk 0 to the left
        std::map<int, std::vector<std::pair<int, int>>> lanes;  // edge -> [(walk, step)]
        const Walk* walks[2] = {&wa, &wb};
        for (int w = 0; w < 2; ++w)
            for (std::size_t i = 0; i < walks[w]->size(); ++i)
                lanes[edge_of((*walks[w])[i])].push_back({w, int(i)});
        for (auto& [e, v] : lanes) std::sort(v.begin(), v.end());
        auto lane_of = [&](int w, int step, int e) {
            const auto& v = lanes[e];
            for (std::size_t k = 0; k < v.size(); ++k)
                if (v[k] == std::make_pair(w, step)) return int(k);
            throw std::logic_error("lane lookup failed");
        };

        // positions around each vertex: iterate rotation; within a port, order
        // by lane (descending at the tail end, ascending at the head end);
        // endpoint positions keyed by (walk, step, arrival)
        std::map<std::tuple<int, int, bool>, long> position;
        std::map<std::tuple<int, int, bool>, int> end_vertex;
        for (std::size_t v = 0; v < num_vertices(); ++v) {
            long counter = 0;
            for (int h : rotation_[v]) {
                int e = edge_of(h);
                auto it = lanes.find(e);
                if (it == lanes.end()) continue;
                // endpoints at this port: departures (traversal starts at h) and
                // arrivals (traversal ends at h, i.e. uses mate(h))
                struct PortPoint {
                    int lane;
                    int walk, step;
                    bool arrival;
                };
                std::vector<PortPoint> pts;
                for (const auto& [w, step] : it->second) {
                    int th = (*walks[w])[step];
                    if (th == h) pts.push_back({lane_of(w, step, e), w, step, false});
                    if (mate(th) == h) pts.push_back({lane_of(w, step, e), w, step, true});
                }
                bool tail_end = (h % 2 == 0);
                std::sort(pts.begin(), pts.end(), [&](const PortPoint& a, const PortPoint& b) {
                    return tail_end ? a.lane > b.lane : a.lane < b.lane;
                });
                for (const auto& p : pts) {
                    position[{p.walk, p.step, p.arrival}] = counter++;
                    end_vertex[{p.walk, p.step, p.arrival}] = int(v);
                }
            }
        }

        // vertex-local circle sizes
        std::vector<long> circle_size(num_vertices(), 0);
        for (const auto& [key, pos] : position) {
            int v = end_vertex.at(key);
            circle_size[v] = std::max(circle_size[v], pos + 1);
        }

        struct Chord {
            int vertex;
            long from, to;  // circular positions: arrival -> departure
        };
        auto chords_of = [&](int w) {
            std::vector<Chord> cs;
            const Walk& wk = *walks[w];
            std::size_t m = wk.size();
            for (std::size_t i = 0; i < m; ++i) {
                std::size_t nxt = (i + 1) % m;
                auto ak = std::make_tuple(w, int(i), true);
                auto dk = std::make_tuple(w, int(nxt), false);
                int va = end_vertex.at(ak);
                int vd = end_vertex.at(dk);
                if (va != vd) throw GraphError("walk is not closed at a vertex");
                cs.push_back({va, position.at(ak), position.at(dk)});
            }
            return cs;
        };
        auto ca = chords_of(0);
        auto cb = chords_of(1);

        auto in_ccw_arc = [&](long x, long from, long to, long n) {
            // strictly between from and to going counterclockwise
            long span = (to - from + n) % n;
            long off = (x - from + n) % n;
            return off > 0 && off < span;
        };

        long total = 0;
        for (const auto& A : ca)
            for (const auto& B : cb) {
                if (A.vertex != B.vertex) continue;
                long n = circle_size[A.vertex];
                bool b1 = in_ccw_arc(B.from, A.from, A.to, n);
                bool b2 = in_ccw_arc(B.to, A.from, A.to, n);
                if (b1 == b2) continue;  // no crossing
                total += b1 ? 1 : -1;
            }
        return total;
    }

    // --- canonical form and isomorphism ------------------------------------

    // canonical encoding of the rooted map (root = starting half-edge):
    // breadth-first numbering of half-edges by (rotation-next, mate) moves
    std::vector<int> rooted_code(int root) const {
        std::size_t hn = vertex_of_.size();
        std::vector<int> label(hn, -1);
        std::vector<int> order;
        label[root] = 0;
        order.push_back(root);
        for (std::size_t k = 0; k < order.size(); ++k) {
            int h = order[k];
            for (int nh : {rotation_next(h), mate(h)}) {
                if (label[nh] == -1) {
                    label[nh] = int(order.size());
                    order.push_back(nh);
                }
            }
        }
        std::vector<int> code;
        for (int h : order) {
            code.push_back(label[rotation_next(h)]);
            code.push_back(label[mate(h)]);
        }
        return code;
    }

    std::vector<int> canonical_code() const {
        std::vector<int> best;
        for (std::size_t h = 0; h < vertex_of_.size(); ++h) {
            auto code = rooted_code(int(h));
            if (best.empty() || code < best) best = code;
        }
        return best;
    }

    // orientation-preserving isomorphism of embedded graphs
    bool isomorphic_to(const EmbeddedGraph& o) const {
        if (num_edges() != o.num_edges() || num_vertices() != o.num_vertices()) return false;
        if (num_edges() == 0) return true;
        return canonical_code() == o.canonical_code();
    }

private:
    std::vector<std::vector<int>> rotation_;
    std::vector<int> vertex_of_;
    std::vector<int> pos_;
    std::vector<std::vector<int>> faces_;
    std::vector<int> face_of_;

    void trace_faces() {
        std::size_t hn = vertex_of_.size();
        faces_.clear();
        face_of_.assign(hn, -1);
        for (std::size_t start = 0; start < hn; ++start) {
            if (face_of_[start] != -1) continue;
            std::vector<int> orbit;
            int h = int(start);
            do {
                face_of_[h] = int(faces_.size());
                orbit.push_back(h);
                h = face_next(h);
            } while (h != int(start));
            faces_.push_back(std::move(orbit));
        }
    }

    void validate_walk(const Walk& w) const {
        if (w.empty()) throw GraphError("empty walk");
        for (std::size_t i = 0; i < w.size(); ++i) {
            int h = w[i];
            int nh = w[(i + 1) % w.size()];
            if (vertex_of_[mate(h)] != vertex_of_[nh]) throw GraphError("walk is not connected");
        }
    }
};

// --- 2-isomorphism (cycle-matroid isomorphism) test oracle ------------------

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = int(i);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// all circuits (minimal dependent edge sets) of the graphic matroid, as bitmasks
inline std::vector<unsigned> graph_circuits(const EmbeddedGraph& g) {
    std::size_t m = g.num_edges();
    auto independent = [&](unsigned mask) {
        UnionFind uf(g.num_vertices());
        for (std::size_t e = 0; e < m; ++e) {
            if (!(mask & (1u << e))) continue;
            if (!uf.unite(g.tail(int(e)), g.head(int(e)))) return false;
        }
        return true;
    };
    std::vector<unsigned> circuits;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        if (independent(mask)) continue;
        bool minimal = true;
        for (std::size_t e = 0; e < m && minimal; ++e) {
            if (!(mask & (1u << e))) continue;
            if (!independent(mask & ~(1u << e))) minimal = false;
        }
        if (minimal) circuits.push_back(mask);
    }
    return circuits;
}

}  // namespace detail

// True iff some bijection of the edge sets maps circuits onto circuits
// (2-isomorphism in the sense of Whitney). Brute force with invariant
// pruning; intended as a desk-scale oracle only.
inline bool two_isomorphic(const EmbeddedGraph& g1, const EmbeddedGraph& g2,
                           std::size_t max_edges = 10) {
    if (g1.num_edges() != g2.num_edges()) return false;
    if (g1.num_edges() > max_edges)
        throw TooLargeError("two_isomorphic supports at most " + std::to_string(max_edges) +
                            " edges");
    std::size_t m = g1.num_edges();
    auto c1 = detail::graph_circuits(g1);
    auto c2 = detail::graph_circuits(g2);
    if (c1.size() != c2.size()) return false;

    // per-edge multiset of circuit sizes through the edge, as a pruning key
    auto profile = [&](const std::vector<unsigned>& cs) {
        std::vector<std::vector<int>> prof(m);
        for (unsigned c : cs) {
            int size = __builtin_popcount(c);
            for (std::size_t e = 0; e < m; ++e)
                if (c & (1u << e)) prof[e].push_back(size);
        }
        for (auto& p : prof) std::sort(p.begin(), p.end());
        return prof;
    };
    auto p1 = profile(c1), p2 = profile(c2);

    std::vector<int> image(m, -1);
    std::vector<bool> used(m, false);
    std::vector<unsigned> set2(c2.begin(), c2.end());
    std::sort(set2.begin(), set2.end());
    auto is_circuit2 = [&](unsigned mask) {
        return std::binary_search(set2.begin(), set2.end(), mask);
    };

    auto rec = [&](auto&& self, std::size_t e) -> bool {
        if (e == m) {
            for (unsigned c : c1) {
                unsigned mapped = 0;
                for (std::size_t i = 0; i < m; ++i)
                    if (c & (1u << i)) mapped |= 1u << image[i];
                if (!is_circuit2(mapped)) return false;
            }
            return true;
        }
        for (std::size_t t = 0; t < m; ++t) {
            if (used[t] || p1[e] != p2[t]) continue;
            image[e] = int(t);
            used[t] = true;
            if (self(self, e + 1)) return true;
            used[t] = false;
            image[e] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace knotlat
