#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "knotlat/embedded_graph.hpp"

namespace knotlat {

struct DiagramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotCheckerboardColourableError : std::runtime_error {
    NotCheckerboardColourableError()
        : std::runtime_error("diagram is not checkerboard colourable (face graph not bipartite)") {}
};
struct NotADiscError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundaryNotFourError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One crossing of a diagram code: four arc labels in counterclockwise order,
// slot 0 carrying the incoming under-strand.
struct CrossingCode {
    int id = 0;
    std::array<int, 4> slots{};
};

enum class FaceColour { Black, White };

struct Colouring {
    std::vector<FaceColour> of_face;
    bool black(int face) const { return of_face[face] == FaceColour::Black; }
};

enum class ColourType { A, B };
enum class OrientationType { I, II };

struct CrossingClass {
    ColourType colour_type;
    OrientationType orientation_type;
    int eta;   // +1 for type A, -1 for type B
    int sign;  // writhe contribution
};

// A link diagram on a closed oriented surface, encoded as a rotation system
// over its crossings. The surface is derived from face tracing, never input.
class SurfaceDiagram {
public:
    static SurfaceDiagram from_codes(std::vector<CrossingCode> codes) {
        SurfaceDiagram d;
        d.codes_ = std::move(codes);
        d.build();
        return d;
    }

    const std::vector<CrossingCode>& codes() const { return codes_; }
    std::size_t crossing_count() const { return codes_.size(); }
    std::size_t arc_count() const { return arc_ids_.size(); }
    const std::vector<int>& arc_ids() const { return arc_ids_; }
    int arc_index(int arc_id) const { return arc_index_.at(arc_id); }

    // the 4-valent graph of the diagram: vertices = crossings, edges = arcs
    // (indexed like arc_ids(), directed along the strand orientation)
    const EmbeddedGraph& graph() const { return graph_; }

    std::size_t genus() const { return graph_.genus(); }
    std::size_t face_count() const { return graph_.num_faces(); }

    // face of the quadrant between slots s and s+1 at crossing c
    int quadrant_face(int c, int s) const { return graph_.face_of(half_at(c, s)); }

    int over_in_slot(int c) const { return over_in_slot_[c]; }
    int over_out_slot(int c) const { return over_in_slot_[c] ^ 2; }

    int sign_of(int c) const { return over_out_slot(c) == 1 ? +1 : -1; }

    long writhe() const {
        long w = 0;
        for (std::size_t c = 0; c < codes_.size(); ++c) w += sign_of(int(c));
        return w;
    }

    // oriented link components as cyclic arc-id sequences
    const std::vector<std::vector<int>>& components() const { return components_; }

    bool alternating() const { return alternating_; }

    // ------------------------------------------------------------------
    Colouring checkerboard_colour() const {
        Colouring col;
        std::size_t nf = graph_.num_faces();
        std::vector<int> mark(nf, -1);
        std::vector<int> stack{0};
        mark[0] = 0;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int h : graph_.faces()[f]) {
                int g = graph_.face_of(EmbeddedGraph::mate(h));
                if (mark[g] == -1) {
                    mark[g] = 1 - mark[f];
                    stack.push_back(g);
                } else if (mark[g] == mark[f]) {
                    throw NotCheckerboardColourableError();
                }
            }
        }
        for (int m : mark)
            if (m == -1) throw DiagramError("disconnected face graph");

        col.of_face.resize(nf);
        auto assign = [&](int black_class) {
            for (std::size_t f = 0; f < nf; ++f)
                col.of_face[f] = (mark[f] == black_class) ? FaceColour::Black : FaceColour::White;
        };
        if (alternating_) {
            // normalize so every crossing has type A
            assign(0);
            if (colour_type_of(0, col) != ColourType::A) assign(1);
            for (std::size_t c = 0; c < codes_.size(); ++c)
                if (colour_type_of(int(c), col) != ColourType::A)
                    throw DiagramError("alternating diagram with mixed crossing types");
        } else {
            // black = the face on the left of the lowest-numbered arc
            int e = 0;  // arcs are indexed in increasing id order
            int left_face = graph_.face_of(2 * e);
            assign(mark[left_face]);
        }
        return col;
    }

    ColourType colour_type_of(int c, const Colouring& col) const {
        return col.black(quadrant_face(c, over_out_slot(c))) ? ColourType::A : ColourType::B;
    }

    OrientationType orientation_type_of(int c, const Colouring& col) const {
        int q = (over_out_slot(c) == 1) ? 1 : 2;
        return col.black(quadrant_face(c, q)) ? OrientationType::II : OrientationType::I;
    }

    std::vector<CrossingClass> classify_crossings(const Colouring& col) const {
        std::vector<CrossingClass> out;
        for (std::size_t c = 0; c < codes_.size(); ++c) {
            CrossingClass cc;
            cc.colour_type = colour_type_of(int(c), col);
            cc.orientation_type = orientation_type_of(int(c), col);
            cc.eta = cc.colour_type == ColourType::A ? +1 : -1;
            cc.sign = sign_of(int(c));
            out.push_back(cc);
        }
        return out;
    }

    // a crossing is nugatory iff two opposite quadrants lie in the same face
    bool is_reduced() const {
        for (std::size_t c = 0; c < codes_.size(); ++c) {
            if (quadrant_face(int(c), 0) == quadrant_face(int(c), 2)) return false;
            if (quadrant_face(int(c), 1) == quadrant_face(int(c), 3)) return false;
        }
        return true;
    }

    // switch every crossing (the mirror image through the thickening)
    SurfaceDiagram mirror() const {
        std::vector<CrossingCode> codes;
        for (std::size_t c = 0; c < codes_.size(); ++c) {
            if (codes_[c].slots[0] == codes_[c].slots[2])
                throw DiagramError("mirror is ambiguous at a self-passage crossing");
            CrossingCode m;
            m.id = codes_[c].id;
            int k = over_in_slot_[c];
            for (int s = 0; s < 4; ++s) m.slots[s] = codes_[c].slots[(s + k) % 4];
            codes.push_back(m);
        }
        return from_codes(codes);
    }

    // reverse the orientation of every component
    SurfaceDiagram reverse_all() const {
        std::vector<CrossingCode> codes;
        for (std::size_t c = 0; c < codes_.size(); ++c) {
            CrossingCode m;
            m.id = codes_[c].id;
            for (int s = 0; s < 4; ++s) m.slots[s] = codes_[c].slots[(s + 2) % 4];
            codes.push_back(m);
        }
        // rotating by two keeps the over-incoming position index
        return from_codes(renumber_codes(codes, over_in_slot_));
    }

    // canonical relabelling-invariant code of the oriented diagram
    std::vector<int> canonical_code() const;

    std::string to_text() const {
        std::ostringstream os;
        for (const auto& c : codes_)
            os << "crossing " << c.id << " " << c.slots[0] << " " << c.slots[1] << " "
               << c.slots[2] << " " << c.slots[3] << "\n";
        return os.str();
    }

    // renumber arcs consecutively along each component (used after surgery
    // on the code); keeps crossing ids and the under/over structure.
    // over_in[c] tells which of slots 1,3 carries the incoming over strand.
    static std::vector<CrossingCode> renumber_codes(const std::vector<CrossingCode>& codes,
                                                    const std::vector<int>& over_in);

private:
    std::vector<CrossingCode> codes_;
    std::map<int, std::vector<std::pair<int, int>>> occ_;  // arc id -> [(crossing, slot)]
    std::vector<int> over_in_slot_;
    std::vector<std::vector<int>> components_;
    std::vector<int> arc_ids_;
    std::map<int, int> arc_index_;
    std::map<std::pair<int, int>, int> half_of_;  // (crossing, slot) -> half-edge
    EmbeddedGraph graph_;
    bool alternating_ = false;

    int half_at(int c, int s) const { return half_of_.at({c, s}); }

    friend SurfaceDiagram parse_diagram(const std::string&);

    // in/out orientation of each slot occurrence
    bool slot_incoming(int c, int s) const {
        if (s == 0) return true;
        if (s == 2) return false;
        return s == over_in_slot_[c];
    }

    void build() {
        if (codes_.empty()) throw DiagramError("diagram has no crossings");
        std::set<int> ids;
        occ_.clear();
        for (std::size_t c = 0; c < codes_.size(); ++c) {
            if (!ids.insert(codes_[c].id).second)
                throw DiagramError("duplicate crossing id " + std::to_string(codes_[c].id));
            for (int s = 0; s < 4; ++s) {
                int a = codes_[c].slots[s];
                if (a <= 0) throw DiagramError("arc ids must be positive integers");
                occ_[a].push_back({int(c), s});
            }
        }
        for (const auto& [arc, occs] : occ_)
            if (occs.size() != 2)
                throw DiagramError("arc " + std::to_string(arc) + " occurs " +
                                   std::to_string(occs.size()) + " times (expected 2)");

        // orientation of the over strand from the arc numbering
        over_in_slot_.assign(codes_.size(), 1);
        for (std::size_t c = 0; c < codes_.size(); ++c) {
            int b = codes_[c].slots[1], d = codes_[c].slots[3];
            if (b == d) {
                over_in_slot_[c] = 1;  // convention for a self-passage over strand
            } else if (d == b + 1) {
                over_in_slot_[c] = 1;
            } else if (b == d + 1) {
                over_in_slot_[c] = 3;
            } else {
                over_in_slot_[c] = (b > d) ? 1 : 3;  // wraparound: larger label exits
            }
        }

        // every arc needs exactly one incoming and one outgoing occurrence
        for (const auto& [arc, occs] : occ_) {
            int in = 0;
            for (const auto& [c, s] : occs) in += slot_incoming(c, s) ? 1 : 0;
            if (in != 1)
                throw DiagramError("arc " + std::to_string(arc) +
                                   " violates orientation consistency (check numbering)");
        }

        trace_components();
        build_graph();
        alternating_ = compute_alternating();
    }

    void trace_components() {
        components_.clear();
        // successor: follow the strand through the crossing it enters
        auto successor = [&](int arc) {
            for (const auto& [c, s] : occ_[arc]) {
                if (!slot_incoming(c, s)) continue;
                int out = (s == 0 || s == 2) ? 2 : over_in_slot_[c] ^ 2;
                return codes_[c].slots[out];
            }
            throw DiagramError("arc without incoming occurrence");
        };
        std::set<int> remaining;
        for (const auto& [arc, occs] : occ_) remaining.insert(arc);
        while (!remaining.empty()) {
            int start = *remaining.begin();
            std::vector<int> comp;
            int a = start;
            do {
                if (!remaining.count(a))
                    throw DiagramError("strand tracing revisited arc " + std::to_string(a));
                remaining.erase(a);
                comp.push_back(a);
                a = successor(a);
            } while (a != start);
            // consecutive numbering check: min arc, then +1 steps cyclically
            std::size_t mi = 0;
            for (std::size_t i = 0; i < comp.size(); ++i)
                if (comp[i] < comp[mi]) mi = i;
            for (std::size_t k = 0; k + 1 < comp.size(); ++k) {
                int cur = comp[(mi + k) % comp.size()];
                int nxt = comp[(mi + k + 1) % comp.size()];
                if (nxt != cur + 1)
                    throw DiagramError("arc numbering is not consecutive along a component near arc " +
                                       std::to_string(cur));
            }
            components_.push_back(comp);
        }
    }

    void build_graph() {
        arc_ids_.clear();
        arc_index_.clear();
        for (const auto& [arc, occs] : occ_) arc_ids_.push_back(arc);
        std::sort(arc_ids_.begin(), arc_ids_.end());
        for (std::size_t e = 0; e < arc_ids_.size(); ++e) arc_index_[arc_ids_[e]] = int(e);

        half_of_.clear();
        for (std::size_t e = 0; e < arc_ids_.size(); ++e) {
            const auto& occs = occ_[arc_ids_[e]];
            // tail = outgoing occurrence, head = incoming
            std::pair<int, int> out_occ, in_occ;
            bool has_out = false, has_in = false;
            for (const auto& occ : occs) {
                if (slot_incoming(occ.first, occ.second)) {
                    in_occ = occ;
                    has_in = true;
                } else {
                    out_occ = occ;
                    has_out = true;
                }
            }
            if (!has_in || !has_out) throw DiagramError("internal orientation bookkeeping failure");
            half_of_[out_occ] = 2 * int(e);
            half_of_[in_occ] = 2 * int(e) + 1;
        }
        std::vector<std::vector<int>> rot(codes_.size());
        for (std::size_t c = 0; c < codes_.size(); ++c)
            for (int s = 0; s < 4; ++s) rot[c].push_back(half_of_.at({int(c), s}));
        graph_ = EmbeddedGraph::from_rotations(rot);
        if (!graph_.connected()) throw DiagramError("diagram is split (4-valent graph disconnected)");
    }

    bool compute_alternating() const {
        // alternating iff along every component the strand passes alternately
        // over and under
        for (const auto& comp : components_) {
            int prev = -1;
            for (std::size_t k = 0; k <= comp.size(); ++k) {
                int arc = comp[k % comp.size()];
                // the passage this arc enters
                int kind = -1;  // 0 = under, 1 = over
                for (const auto& [c, s] : occ_.at(arc)) {
                    if (!slot_incoming(c, s)) continue;
                    kind = (s == 0) ? 0 : 1;
                }
                if (prev != -1 && kind == prev) return false;
                prev = kind;
            }
        }
        return true;
    }
};

// ---------------------------------------------------------------------------
// parsing

inline SurfaceDiagram parse_diagram(const std::string& text) {
    std::vector<CrossingCode> codes;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::string word;
        if (!(ls >> word)) continue;
        if (word != "crossing")
            throw DiagramError("line " + std::to_string(lineno) + ": expected 'crossing', got '" +
                               word + "'");
        CrossingCode c;
        if (!(ls >> c.id >> c.slots[0] >> c.slots[1] >> c.slots[2] >> c.slots[3]))
            throw DiagramError("line " + std::to_string(lineno) +
                               ": expected 'crossing <id> <a0> <a1> <a2> <a3>'");
        std::string extra;
        if (ls >> extra)
            throw DiagramError("line " + std::to_string(lineno) + ": trailing tokens");
        codes.push_back(c);
    }
    if (codes.empty()) throw DiagramError("no crossings in diagram file");
    return SurfaceDiagram::from_codes(std::move(codes));
}

// ---------------------------------------------------------------------------
// renumbering and canonical codes

inline std::vector<CrossingCode> SurfaceDiagram::renumber_codes(
    const std::vector<CrossingCode>& codes) {
    // Orientation data is structural here: slot0/slot2 = under strand with
    // slot0 incoming; slots 1,3 = over strand with slot1 incoming.
    std::map<int, std::vector<std::pair<int, int>>> occ;
    for (std::size_t c = 0; c < codes.size(); ++c)
        for (int s = 0; s < 4; ++s) occ[codes[c].slots[s]].push_back({int(c), s});
    for (const auto& [arc, occs] : occ)
        if (occs.size() != 2) throw DiagramError("renumber: arc multiplicity mismatch");

    auto incoming = [&](int, int s) { return s == 0 || s == 1; };
    auto successor = [&](int arc) {
        for (const auto& [c, s] : occ[arc]) {
            if (!incoming(c, s)) continue;
            return codes[c].slots[s == 0 ? 2 : 3];
        }
        throw DiagramError("renumber: open strand");
    };

    // trace components from the smallest arc id
    std::map<int, int> newid;
    std::set<int> remaining;
    for (const auto& [arc, occs] : occ) remaining.insert(arc);
    int next = 1;
    while (!remaining.empty()) {
        int start = *remaining.begin();
        int a = start;
        do {
            newid[a] = next++;
            remaining.erase(a);
            a = successor(a);
        } while (a != start);
    }
    std::vector<CrossingCode> out = codes;
    for (auto& c : out) {
        std::array<int, 4> ns{};
        for (int s = 0; s < 4; ++s) ns[s] = newid.at(c.slots[s]);
        c.slots = ns;
    }
    return out;
}

inline std::vector<int> SurfaceDiagram::canonical_code() const {
    // relabel arcs starting from every possible (component, start arc) choice
    // and take the lexicographically least crossing table
    std::vector<int> best;
    std::size_t ncomp = components_.size();
    // enumerate component orders only when few components
    std::vector<std::size_t> comp_order(ncomp);
    for (std::size_t i = 0; i < ncomp; ++i) comp_order[i] = i;
    std::vector<std::vector<std::size_t>> orders;
    std::sort(comp_order.begin(), comp_order.end());
    do {
        orders.push_back(comp_order);
    } while (std::next_permutation(comp_order.begin(), comp_order.end()) && orders.size() < 720);

    for (const auto& order : orders) {
        // choose a starting arc per component
        std::vector<std::size_t> starts(ncomp, 0);
        auto emit = [&]() {
            std::map<int, int> newid;
            int next = 1;
            for (std::size_t oi = 0; oi < ncomp; ++oi) {
                const auto& comp = components_[order[oi]];
                for (std::size_t k = 0; k < comp.size(); ++k)
                    newid[comp[(starts[oi] + k) % comp.size()]] = next++;
            }
            std::vector<std::vector<int>> rows;
            for (std::size_t c = 0; c < codes_.size(); ++c) {
                int k = 0;  // rotate so the under-in slot leads; slots CCW kept
                std::vector<int> row;
                for (int s = 0; s < 4; ++s) row.push_back(newid.at(codes_[c].slots[(s + k) % 4]));
                rows.push_back(row);
            }
            std::sort(rows.begin(), rows.end());
            std::vector<int> flat;
            for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
            return flat;
        };
        // iterate the product of start positions
        bool carry = false;
        while (!carry) {
            auto code = emit();
            if (best.empty() || code < best) best = code;
            std::size_t i = 0;
            for (; i < ncomp; ++i) {
                if (++starts[i] < components_[order[i]].size()) break;
                starts[i] = 0;
            }
            carry = (i == ncomp);
        }
    }
    return best;
}

}  // namespace knotlat
