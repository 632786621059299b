#include "khmix/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace khmix {

namespace {

// Minimal union-find over arbitrary int keys.
struct UnionFind {
    std::map<int, int> parent;

    int find(int x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        int r = x;
        while (parent[r] != r) r = parent[r];
        while (parent[x] != r) {
            int nx = parent[x];
            parent[x] = r;
            x = nx;
        }
        return r;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);  // keep the least key as representative
        parent[b] = a;
    }
};

}  // namespace

int Geometry::face_of_dart(const Dart& d) const {
    auto it = face_of.find(d);
    require(it != face_of.end(), "dart refers to no face");
    return it->second;
}

bool Geometry::same_component(Id arc_a, Id arc_b) const {
    return comp_of_arc.at(arc_a) == comp_of_arc.at(arc_b);
}

std::vector<Id> PlanarDiagram::crossing_order() const {
    std::vector<Id> out;
    out.reserve(crossings_.size());
    for (const auto& [id, c] : crossings_) out.push_back(id);
    return out;
}

void PlanarDiagram::insert_arc(const ArcRec& a) {
    arcs_[a.id] = a;
    next_arc_ = std::max(next_arc_, a.id + 1);
    bump();
}

void PlanarDiagram::insert_crossing(const CrossingRec& c) {
    crossings_[c.id] = c;
    next_crossing_ = std::max(next_crossing_, c.id + 1);
    bump();
}

void PlanarDiagram::erase_arc(Id a) {
    arcs_.erase(a);
    bump();
}

void PlanarDiagram::erase_crossing(Id c) {
    crossings_.erase(c);
    bump();
}

void PlanarDiagram::set_end(Id arc, int which, End e) {
    require(arcs_.count(arc), "set_end: no such arc");
    (which == 0 ? arcs_[arc].e0 : arcs_[arc].e1) = e;
    bump();
}

void PlanarDiagram::set_slot(Id crossing, int slotno, Id arc) {
    require(crossings_.count(crossing), "set_slot: no such crossing");
    crossings_[crossing].slot[slotno] = arc;
    bump();
}

void PlanarDiagram::set_orientation(Id comp, int flag) {
    require(flag == 1 || flag == -1, "orientation flag must be +1 or -1");
    orient_[comp] = flag;
    bump();
}

void PlanarDiagram::set_embed(Id piece, const Embed& e) {
    embeds_[piece] = e;
    bump();
}

void PlanarDiagram::set_crossing_o(Id crossing, int o) {
    require(crossings_.count(crossing), "set_crossing_o: no such crossing");
    crossings_[crossing].o = o;
    bump();
}

namespace {

// End of arc a sitting at (c, s); throws if a is not there.
int end_index_at(const ArcRec& a, Id c, int s) {
    if (a.e0.attached() && a.e0.crossing == c && a.e0.slot == s) return 0;
    if (a.e1.attached() && a.e1.crossing == c && a.e1.slot == s) return 1;
    fail("arc " + std::to_string(a.id) + " not attached at expected slot");
}

// Dart of arc a pointing away from (c, s).
Dart dart_away(const std::map<Id, ArcRec>& arcs, Id arc, Id c, int s) {
    const ArcRec& a = arcs.at(arc);
    return {arc, end_index_at(a, c, s) == 0 ? 0 : 1};
}

// Dart of arc a pointing into (c, s).
Dart dart_into(const std::map<Id, ArcRec>& arcs, Id arc, Id c, int s) {
    return dart_away(arcs, arc, c, s).reversed();
}

}  // namespace

const Geometry& PlanarDiagram::geometry() const {
    if (geom_revision_ == revision_) return geom_;
    Geometry g;

    // Link components and graph pieces.
    UnionFind comp_uf, piece_uf;
    for (const auto& [id, a] : arcs_) {
        comp_uf.find(id);
        piece_uf.find(id);
    }
    for (const auto& [cid, c] : crossings_) {
        comp_uf.unite(c.slot[0], c.slot[2]);
        comp_uf.unite(c.slot[1], c.slot[3]);
        for (int s = 0; s < 3; ++s) piece_uf.unite(c.slot[s], c.slot[s + 1]);
    }
    for (const auto& [id, a] : arcs_) {
        g.comp_of_arc[id] = comp_uf.find(id);
        g.piece_of_arc[id] = piece_uf.find(id);
    }
    for (const auto& [id, rep] : g.comp_of_arc)
        if (id == rep) g.comps.push_back(id);
    for (const auto& [id, rep] : g.piece_of_arc)
        if (id == rep) g.pieces.push_back(id);

    // Reference directions.  At each crossing the under reference enters at
    // slot 0 and leaves at slot 2; the over reference enters at slot 3 when
    // o = +1, at slot 1 when o = -1.
    std::map<Id, int> end_is_in[2];  // per arc: whether e0/e1 is an entry point
    auto mark = [&](Id arc, Id c, int s, bool in) {
        const ArcRec& a = arcs_.at(arc);
        int which = end_index_at(a, c, s);
        auto& m = end_is_in[which];
        auto it = m.find(arc);
        if (it == m.end())
            m[arc] = in ? 1 : 0;
        else
            require(it->second == (in ? 1 : 0), "conflicting strand references at arc " + std::to_string(arc));
    };
    for (const auto& [cid, c] : crossings_) {
        mark(c.slot[0], cid, 0, true);
        mark(c.slot[2], cid, 2, false);
        int over_in = c.o == +1 ? 3 : 1;
        int over_out = c.o == +1 ? 1 : 3;
        mark(c.slot[over_in], cid, over_in, true);
        mark(c.slot[over_out], cid, over_out, false);
    }
    for (const auto& [id, a] : arcs_) {
        if (a.is_loop()) {
            g.ref_dir[id] = 0;
            continue;
        }
        auto i0 = end_is_in[0].find(id), i1 = end_is_in[1].find(id);
        require(i0 != end_is_in[0].end() && i1 != end_is_in[1].end(),
                "arc " + std::to_string(id) + " has a dangling end");
        require(i0->second != i1->second, "inconsistent orientation references at arc " + std::to_string(id));
        // Reference runs from the out-end toward the in-end.
        g.ref_dir[id] = i0->second == 0 ? 0 : 1;
    }

    // Local faces: dart orbits of the left-face successor map, per piece.
    std::map<Dart, int> visited;
    std::map<Id, std::vector<std::vector<Dart>>>& lf = g.local_faces;
    for (const auto& [id, a] : arcs_) {
        for (int dir = 0; dir < 2; ++dir) {
            Dart d{id, dir};
            if (visited.count(d)) continue;
            std::vector<Dart> orbit;
            Dart cur = d;
            do {
                visited[cur] = 1;
                orbit.push_back(cur);
                const ArcRec& ca = arcs_.at(cur.arc);
                if (ca.is_loop()) break;  // singleton orbit
                End head = cur.dir == 0 ? ca.e1 : ca.e0;
                int t = (head.slot + 3) % 4;
                cur = dart_away(arcs_, crossings_.at(head.crossing).slot[t], head.crossing, t);
            } while (cur != d);
            lf[g.piece_of_arc.at(id)].push_back(std::move(orbit));
        }
    }

    // Global faces: merge (piece, local) nodes through the nesting forest.
    // Nodes are numbered densely; an extra sentinel stands for the unbounded
    // region.
    std::vector<std::pair<Id, int>> nodes;
    std::map<std::pair<Id, int>, int> node_index;
    for (Id p : g.pieces) {
        auto it = lf.find(p);
        int nf = it == lf.end() ? 0 : static_cast<int>(it->second.size());
        for (int i = 0; i < nf; ++i) {
            node_index[{p, i}] = static_cast<int>(nodes.size());
            nodes.push_back({p, i});
        }
    }
    int outer_node = static_cast<int>(nodes.size());
    UnionFind face_uf;
    face_uf.find(outer_node);
    for (int i = 0; i < outer_node; ++i) face_uf.find(i);
    for (Id p : g.pieces) {
        Embed e;  // default: root, outward local face 0
        auto it = embeds_.find(p);
        if (it != embeds_.end()) e = it->second;
        auto self = node_index.find({p, e.out_local});
        require(self != node_index.end(), "embed: piece " + std::to_string(p) + " has no local face " +
                                              std::to_string(e.out_local));
        if (e.parent_piece == kNone) {
            face_uf.unite(self->second, outer_node);
        } else {
            auto par = node_index.find({e.parent_piece, e.parent_local});
            require(par != node_index.end(), "embed: bad parent reference for piece " + std::to_string(p));
            face_uf.unite(self->second, par->second);
        }
    }

    // Deterministic face numbering: classes ordered by least contained node,
    // with the sentinel node ordered last.
    std::map<int, int> class_to_face;
    for (int i = 0; i <= outer_node; ++i) {
        int r = face_uf.find(i);
        if (!class_to_face.count(r)) {
            int idx = static_cast<int>(g.faces.size());
            class_to_face[r] = idx;
            g.faces.push_back({});
        }
        int fi = class_to_face[r];
        if (i == outer_node) {
            g.outer_face = fi;
        } else {
            g.faces[fi].members.push_back(nodes[i]);
            for (const Dart& d : lf.at(nodes[i].first)[nodes[i].second]) {
                g.faces[fi].darts.push_back(d);
                g.face_of[d] = fi;
            }
        }
    }
    for (Face& f : g.faces) std::sort(f.darts.begin(), f.darts.end());

    // Crossing signs with the stored orientation applied.
    for (const auto& [cid, c] : crossings_) {
        int eu = 1, eo = 1;
        auto itu = orient_.find(g.comp_of_arc.at(c.slot[0]));
        if (itu != orient_.end()) eu = itu->second;
        auto ito = orient_.find(g.comp_of_arc.at(c.slot[1]));
        if (ito != orient_.end()) eo = ito->second;
        g.sign[cid] = c.o * eu * eo;
    }

    geom_ = std::move(g);
    geom_revision_ = revision_;
    return geom_;
}

void PlanarDiagram::validate() const {
    // Slot and end cross-references.
    std::map<Id, int> uses;
    for (const auto& [cid, c] : crossings_) {
        for (int s = 0; s < 4; ++s) {
            require(arcs_.count(c.slot[s]), "crossing " + std::to_string(cid) + " references missing arc");
            const ArcRec& a = arcs_.at(c.slot[s]);
            end_index_at(a, cid, s);
            ++uses[c.slot[s]];
        }
        require(c.o == 1 || c.o == -1, "crossing sign must be +1 or -1");
    }
    for (const auto& [id, a] : arcs_) {
        require(a.id == id, "arc id mismatch");
        if (a.is_loop()) {
            require(!a.e1.attached(), "half-attached loop arc " + std::to_string(id));
            require(uses.count(id) == 0, "loop arc " + std::to_string(id) + " appears at a crossing");
        } else {
            require(a.e1.attached(), "half-attached arc " + std::to_string(id));
            require(uses[id] == 2, "arc " + std::to_string(id) + " must meet crossings exactly twice");
            require(crossings_.count(a.e0.crossing) && crossings_.count(a.e1.crossing),
                    "arc end references missing crossing");
            require(crossings_.at(a.e0.crossing).slot[a.e0.slot] == id &&
                        crossings_.at(a.e1.crossing).slot[a.e1.slot] == id,
                    "arc end does not match crossing slot");
            require(!(a.e0 == a.e1), "both ends of arc " + std::to_string(id) + " at one slot");
        }
    }

    const Geometry& g = geometry();  // throws on reference inconsistencies

    // Planarity per piece: V - E + F = 2, free loops having exactly two
    // local faces by construction.
    for (Id p : g.pieces) {
        int V = 0, E = 0;
        for (const auto& [id, a] : arcs_)
            if (g.piece_of_arc.at(id) == p) ++E;
        for (const auto& [cid, c] : crossings_)
            if (g.piece_of_arc.at(c.slot[0]) == p) ++V;
        int F = static_cast<int>(g.local_faces.at(p).size());
        if (V == 0) {
            require(E == 1 && F == 2, "malformed free loop piece");
        } else {
            require(V - E + F == 2, "rotation data of piece " + std::to_string(p) + " is not planar");
        }
    }

    // Nesting forest sanity.
    for (const auto& [p, e] : embeds_) {
        require(std::binary_search(g.pieces.begin(), g.pieces.end(), p),
                "embed entry for unknown piece " + std::to_string(p));
        if (e.parent_piece != kNone) {
            require(e.parent_piece != p, "piece nested in itself");
            require(std::binary_search(g.pieces.begin(), g.pieces.end(), e.parent_piece),
                    "embed parent is not a piece");
        }
    }
    for (Id p : g.pieces) {
        std::set<Id> seen;
        Id cur = p;
        while (cur != kNone) {
            require(seen.insert(cur).second, "nesting forest has a cycle");
            auto it = embeds_.find(cur);
            cur = it == embeds_.end() ? kNone : it->second.parent_piece;
        }
    }

    // Orientation flags attach to actual link components.
    for (const auto& [comp, flag] : orient_) {
        require(flag == 1 || flag == -1, "orientation flag must be +1 or -1");
        require(std::binary_search(g.comps.begin(), g.comps.end(), comp),
                "orientation for unknown component " + std::to_string(comp));
    }

    checkerboard();  // throws if the face structure cannot be 2-colored
}

int PlanarDiagram::writhe() const {
    int w = 0;
    for (const auto& [cid, s] : geometry().sign) w += s;
    return w;
}

int PlanarDiagram::positive_crossings() const {
    int n = 0;
    for (const auto& [cid, s] : geometry().sign)
        if (s > 0) ++n;
    return n;
}

int PlanarDiagram::negative_crossings() const { return n_crossings() - positive_crossings(); }

mpq_class PlanarDiagram::linking_number(const std::set<Id>& comps) const {
    const Geometry& g = geometry();
    mpq_class total = 0;
    for (const auto& [cid, c] : crossings_) {
        bool under_in = comps.count(g.comp_of_arc.at(c.slot[0])) > 0;
        bool over_in = comps.count(g.comp_of_arc.at(c.slot[1])) > 0;
        if (under_in != over_in) total += g.sign.at(cid);
    }
    return total / 2;
}

PlanarDiagram PlanarDiagram::mirror() const {
    PlanarDiagram m = *this;
    m.bump();
    for (auto& [cid, c] : m.crossings_) {
        const CrossingRec old = c;
        // Swapping over and under re-anchors the slots: the new under
        // reference entry is the old over reference entry.
        if (old.o == +1) {
            c.slot = {old.slot[3], old.slot[0], old.slot[1], old.slot[2]};
        } else {
            c.slot = {old.slot[1], old.slot[2], old.slot[3], old.slot[0]};
        }
        c.o = -old.o;
    }
    int shift_pos = +1, shift_neg = +3;  // slot index remap per old sign
    for (auto& [aid, a] : m.arcs_) {
        for (End* e : {&a.e0, &a.e1}) {
            if (!e->attached()) continue;
            int delta = crossings_.at(e->crossing).o == +1 ? shift_pos : shift_neg;
            e->slot = (e->slot + delta) % 4;
        }
    }
    return m;
}

std::map<int, int> PlanarDiagram::checkerboard() const {
    const Geometry& g = geometry();
    std::map<int, int> color;
    color[g.outer_face] = 0;
    // Propagate across arcs until stable; the face adjacency graph of a
    // diagram is connected within each piece, and nesting ties pieces
    // together through shared faces.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [id, a] : arcs_) {
            int fl = g.face_of_dart({id, 0});
            int fr = g.face_of_dart({id, 1});
            auto il = color.find(fl), ir = color.find(fr);
            if (il != color.end() && ir != color.end()) {
                require(il->second != ir->second, "checkerboard coloring conflict");
            } else if (il != color.end()) {
                color[fr] = 1 - il->second;
                changed = true;
            } else if (ir != color.end()) {
                color[fl] = 1 - ir->second;
                changed = true;
            }
        }
    }
    require(color.size() == g.faces.size(), "checkerboard: disconnected face structure");
    return color;
}

Resolution PlanarDiagram::resolve(const std::vector<uint8_t>& bits) const {
    require(bits.size() == crossings_.size(), "resolution bit count mismatch");
    Resolution r;
    r.bits = bits;
    UnionFind uf;
    for (const auto& [id, a] : arcs_) uf.find(id);
    int i = 0;
    for (const auto& [cid, c] : crossings_) {
        if (bits[i] == 0) {
            uf.unite(c.slot[0], c.slot[1]);
            uf.unite(c.slot[2], c.slot[3]);
        } else {
            uf.unite(c.slot[0], c.slot[3]);
            uf.unite(c.slot[1], c.slot[2]);
        }
        ++i;
    }
    for (const auto& [id, a] : arcs_) {
        int rep = uf.find(id);
        r.circle_of_arc[id] = rep;
        if (rep == id) r.circle_rep.push_back(id);
    }
    // Renumber circle_of_arc to dense indices in circle_rep order.
    std::map<Id, int> dense;
    for (size_t k = 0; k < r.circle_rep.size(); ++k) dense[r.circle_rep[k]] = static_cast<int>(k);
    for (auto& [id, rep] : r.circle_of_arc) rep = dense[rep];
    return r;
}

std::map<Dart, int> PlanarDiagram::resolved_left_color(const Resolution& r) const {
    const Geometry& g = geometry();
    UnionFind uf;
    for (size_t f = 0; f < g.faces.size(); ++f) uf.find(static_cast<int>(f));
    // Corner region between slots t and t+1 is the face left of the dart
    // arriving at slot t+1.
    auto region = [&](const CrossingRec& c, int t) {
        int s = (t + 1) % 4;
        return g.face_of_dart(dart_into(arcs_, c.slot[s], c.id, s));
    };
    int i = 0;
    for (const auto& [cid, c] : crossings_) {
        if (r.bits[i] == 0)
            uf.unite(region(c, 3), region(c, 1));  // channel between the two 0-strands
        else
            uf.unite(region(c, 0), region(c, 2));
        ++i;
    }
    // 2-color the merged regions, unbounded region white.
    std::map<int, int> color;
    color[uf.find(g.outer_face)] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [id, a] : arcs_) {
            int fl = uf.find(g.face_of_dart({id, 0}));
            int fr = uf.find(g.face_of_dart({id, 1}));
            auto il = color.find(fl), ir = color.find(fr);
            if (il != color.end() && ir != color.end()) {
                require(il->second != ir->second, "resolved coloring conflict");
            } else if (il != color.end()) {
                color[fr] = 1 - il->second;
                changed = true;
            } else if (ir != color.end()) {
                color[fl] = 1 - ir->second;
                changed = true;
            }
        }
    }
    std::map<Dart, int> out;
    for (const auto& [d, f] : g.face_of) {
        auto it = color.find(uf.find(f));
        require(it != color.end(), "resolved coloring did not reach every region");
        out[d] = it->second;
    }
    return out;
}

int PlanarDiagram::crossing_sign(Id crossing, const std::map<Id, int>& obits) const {
    const Geometry& g = geometry();
    const CrossingRec& c = crossings_.at(crossing);
    auto flag = [&](Id arc) {
        auto it = obits.find(g.comp_of_arc.at(arc));
        return it == obits.end() ? 1 : it->second;
    };
    return c.o * flag(c.slot[0]) * flag(c.slot[1]);
}

Dart PlanarDiagram::oriented_dart(Id arc, const std::map<Id, int>& obits) const {
    const Geometry& g = geometry();
    auto it = obits.find(g.comp_of_arc.at(arc));
    int flag = it == obits.end() ? 1 : it->second;
    int dir = g.ref_dir.at(arc);
    return {arc, flag == 1 ? dir : 1 - dir};
}

std::vector<uint8_t> PlanarDiagram::oriented_vertex(const std::map<Id, int>& obits) const {
    std::vector<uint8_t> bits;
    bits.reserve(crossings_.size());
    for (const auto& [cid, c] : crossings_) bits.push_back(crossing_sign(cid, obits) > 0 ? 0 : 1);
    return bits;
}

// ---------------------------------------------------------------------------
// Parsing and emission

namespace {

struct Scanner {
    const std::string& s;
    size_t i{0};

    explicit Scanner(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        require(eat(c), std::string("expected '") + c + "' in diagram text");
    }
    bool eat_word(const std::string& w) {
        skip_ws();
        if (s.compare(i, w.size(), w) == 0) {
            i += w.size();
            return true;
        }
        return false;
    }
    int number() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        require(i > start && std::isdigit(static_cast<unsigned char>(s[i - 1])), "expected a number");
        return std::stoi(s.substr(start, i - start));
    }
    int sign() {
        skip_ws();
        require(i < s.size() && (s[i] == '+' || s[i] == '-'), "expected '+' or '-'");
        return s[i++] == '+' ? +1 : -1;
    }
    bool at_end() {
        skip_ws();
        return i >= s.size();
    }
};

}  // namespace

PlanarDiagram parse_pd(const std::string& text) {
    Scanner sc(text);
    require(sc.eat_word("diagram"), "diagram text must start with 'diagram'");
    require(sc.eat_word("PD"), "missing PD clause");
    sc.expect('[');

    PlanarDiagram d;
    std::map<Id, std::vector<End>> occurrences;  // arc -> attachment points in scan order
    Id next_crossing = 0;
    if (!sc.eat(']')) {
        do {
            require(sc.eat_word("X"), "expected crossing entry X(...)");
            sc.expect('(');
            CrossingRec c;
            c.id = next_crossing++;
            for (int s = 0; s < 4; ++s) {
                c.slot[s] = sc.number();
                require(c.slot[s] >= 0, "arc ids must be nonnegative");
                occurrences[c.slot[s]].push_back({c.id, s});
                if (s < 3) sc.expect(',');
            }
            sc.expect(';');
            c.o = sc.sign();
            sc.expect(')');
            d.crossings_[c.id] = c;
        } while (sc.eat(','));
        sc.expect(']');
    }
    d.next_crossing_ = next_crossing;

    for (const auto& [aid, occ] : occurrences) {
        require(occ.size() == 2, "arc " + std::to_string(aid) + " must appear exactly twice in PD");
        ArcRec a;
        a.id = aid;
        a.e0 = occ[0];
        a.e1 = occ[1];
        d.arcs_[aid] = a;
    }

    if (sc.eat_word("loops")) {
        sc.expect('[');
        if (!sc.eat(']')) {
            do {
                Id aid = sc.number();
                require(!d.arcs_.count(aid), "loop id collides with a PD arc");
                ArcRec a;
                a.id = aid;
                d.arcs_[aid] = a;
            } while (sc.eat(','));
            sc.expect(']');
        }
    }
    for (const auto& [aid, a] : d.arcs_) d.next_arc_ = std::max(d.next_arc_, aid + 1);

    // Defaults first, explicit flags afterwards.
    const Geometry& g = d.geometry();
    for (Id comp : g.comps) d.orient_[comp] = +1;
    if (sc.eat_word("orient")) {
        sc.expect('[');
        if (!sc.eat(']')) {
            do {
                Id comp = sc.number();
                sc.expect(':');
                int flag = sc.sign();
                require(d.orient_.count(comp), "orientation for unknown component " + std::to_string(comp));
                d.orient_[comp] = flag;
            } while (sc.eat(','));
            sc.expect(']');
        }
    }

    if (sc.eat_word("embed")) {
        sc.expect('[');
        if (!sc.eat(']')) {
            do {
                Id piece = sc.number();
                sc.expect(':');
                Embed e;
                e.out_local = sc.number();
                sc.expect('@');
                if (sc.eat_word("outer")) {
                    e.parent_piece = kNone;
                } else {
                    e.parent_piece = sc.number();
                    sc.expect('.');
                    e.parent_local = sc.number();
                }
                d.embeds_[piece] = e;
            } while (sc.eat(','));
            sc.expect(']');
        }
    }
    require(sc.at_end(), "trailing input after diagram text");

    d.bump();
    d.validate();
    return d;
}

std::string PlanarDiagram::emit() const {
    const Geometry& g = geometry();
    std::ostringstream out;
    out << "diagram PD[";
    bool first = true;
    for (const auto& [cid, c] : crossings_) {
        if (!first) out << ",";
        first = false;
        out << "X(" << c.slot[0] << "," << c.slot[1] << "," << c.slot[2] << "," << c.slot[3] << ";"
            << (c.o > 0 ? '+' : '-') << ")";
    }
    out << "]";
    std::vector<Id> loops;
    for (const auto& [id, a] : arcs_)
        if (a.is_loop()) loops.push_back(id);
    if (!loops.empty()) {
        out << " loops[";
        for (size_t k = 0; k < loops.size(); ++k) out << (k ? "," : "") << loops[k];
        out << "]";
    }
    out << " orient[";
    first = true;
    for (Id comp : g.comps) {
        auto it = orient_.find(comp);
        int flag = it == orient_.end() ? 1 : it->second;
        out << (first ? "" : ",") << comp << ":" << (flag > 0 ? '+' : '-');
        first = false;
    }
    out << "]";
    if (!g.pieces.empty()) {
        out << " embed[";
        first = true;
        for (Id p : g.pieces) {
            Embed e;
            auto it = embeds_.find(p);
            if (it != embeds_.end()) e = it->second;
            out << (first ? "" : ",") << p << ":" << e.out_local << "@";
            if (e.parent_piece == kNone)
                out << "outer";
            else
                out << e.parent_piece << "." << e.parent_local;
            first = false;
        }
        out << "]";
    }
    return out.str();
}

int trace_circles(const PlanarDiagram& d, const std::vector<uint8_t>& bits) {
    std::map<Id, size_t> index;
    size_t i = 0;
    for (const auto& [cid, c] : d.crossings()) index[cid] = i++;
    auto partner = [&](int slot, uint8_t bit) {
        static const int p0[4] = {1, 0, 3, 2};
        static const int p1[4] = {3, 2, 1, 0};
        return bit == 0 ? p0[slot] : p1[slot];
    };
    std::set<Dart> visited;
    int circles = 0;
    for (const auto& [aid, a] : d.arcs()) {
        Dart start{aid, 0};
        if (visited.count(start)) continue;
        ++circles;
        Dart cur = start;
        do {
            visited.insert(cur);
            visited.insert(cur.reversed());
            const ArcRec& ar = d.arcs().at(cur.arc);
            if (ar.is_loop()) break;
            End head = cur.dir == 0 ? ar.e1 : ar.e0;
            const CrossingRec& c = d.crossings().at(head.crossing);
            int t = partner(head.slot, bits[index[head.crossing]]);
            const ArcRec& b = d.arcs().at(c.slot[t]);
            int which = (b.e0.attached() && b.e0.crossing == head.crossing && b.e0.slot == t) ? 0 : 1;
            cur = {b.id, which == 0 ? 0 : 1};
        } while (cur != start);
    }
    return circles;
}

}  // namespace khmix
