#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "khmix/common.hpp"

namespace khmix {

// A dart is one of the two traversal directions of an arc: dir 0 runs from
// end e0 to end e1 (for a free loop, an abstract but stable choice).
struct Dart {
    Id arc{kNone};
    int dir{0};

    bool operator==(const Dart& o) const { return arc == o.arc && dir == o.dir; }
    bool operator!=(const Dart& o) const { return !(*this == o); }
    bool operator<(const Dart& o) const { return arc != o.arc ? arc < o.arc : dir < o.dir; }
    Dart reversed() const { return {arc, 1 - dir}; }
};

// Attachment point of an arc end: a (crossing, slot) pair, or detached for a
// free loop.
struct End {
    Id crossing{kNone};
    int slot{0};

    bool attached() const { return crossing != kNone; }
    bool operator==(const End& o) const { return crossing == o.crossing && slot == o.slot; }
};

// One crossing.  slot[0..3] hold arc ids in counterclockwise order around the
// crossing; slots 0 and 2 carry the under-strand, slots 1 and 3 the
// over-strand.  The reference direction of the under-strand enters at slot 0;
// o is the crossing sign when both strands run along their reference
// directions (o = +1 places the over reference entry at slot 3).
struct CrossingRec {
    Id id{kNone};
    std::array<Id, 4> slot{kNone, kNone, kNone, kNone};
    int o{+1};
};

struct ArcRec {
    Id id{kNone};
    End e0, e1;

    bool is_loop() const { return !e0.attached(); }
};

// Two different component notions coexist.  A link component is a strand
// circle (the under-strand continues through slots 0-2, the over-strand
// through 1-3); orientations attach to these.  A piece is a connected
// component of the underlying 4-valent graph (all four arcs at a crossing
// share a piece); faces and the nesting forest attach to these.  Both are
// named by the least arc id they contain.

// Placement of one piece in the nesting forest: its local face out_local is
// identified with face parent_local of piece parent_piece, or with the
// unbounded region when parent_piece == kNone.
struct Embed {
    int out_local{0};
    Id parent_piece{kNone};
    int parent_local{0};
};

// A region of the complement, as the set of darts whose left side borders it.
struct Face {
    std::vector<Dart> darts;
    std::vector<std::pair<Id, int>> members;  // (piece, local face index)
};

// Everything derived from the stored combinatorics: components, reference
// directions, local and global faces, crossing signs.
struct Geometry {
    std::map<Id, Id> comp_of_arc;   // arc -> link component id
    std::vector<Id> comps;          // sorted link component ids
    std::map<Id, Id> piece_of_arc;  // arc -> piece id
    std::vector<Id> pieces;         // sorted piece ids
    std::map<Id, int> ref_dir;      // arc -> dir of its reference direction
    std::map<Id, std::vector<std::vector<Dart>>> local_faces;  // by piece
    std::vector<Face> faces;
    int outer_face{0};
    std::map<Dart, int> face_of;  // dart -> global face index (face on its left)
    std::map<Id, int> sign;       // crossing -> sign with stored orientation applied

    int face_of_dart(const Dart& d) const;
    bool same_component(Id arc_a, Id arc_b) const;
};

// A complete resolution of the diagram.
struct Resolution {
    std::vector<uint8_t> bits;     // one bit per crossing, in crossing id order
    std::vector<Id> circle_rep;    // least arc id per circle, ascending
    std::map<Id, int> circle_of_arc;

    int n_circles() const { return static_cast<int>(circle_rep.size()); }
};

// Planar diagram of an oriented link, stored as a rotation system plus a
// nesting forest for disconnected components.  Arc and crossing ids are
// stable: moves retire and mint ids but never renumber survivors.
class PlanarDiagram {
  public:
    PlanarDiagram() = default;
    static PlanarDiagram empty() { return PlanarDiagram(); }

    const std::map<Id, CrossingRec>& crossings() const { return crossings_; }
    const std::map<Id, ArcRec>& arcs() const { return arcs_; }
    const std::map<Id, int>& orientations() const { return orient_; }
    const std::map<Id, Embed>& embeds() const { return embeds_; }

    bool is_empty() const { return arcs_.empty(); }
    int n_crossings() const { return static_cast<int>(crossings_.size()); }
    // Crossing ids in ascending order; this is the cube axis order.
    std::vector<Id> crossing_order() const;

    const Geometry& geometry() const;
    void validate() const;
    std::string emit() const;

    int writhe() const;
    int positive_crossings() const;
    int negative_crossings() const;
    // Linking number of the sublink spanned by comps with its complement.
    mpq_class linking_number(const std::set<Id>& comps) const;

    PlanarDiagram mirror() const;

    // Diagram-level checkerboard coloring: face index -> 0 (white) / 1
    // (black), unbounded region white.
    std::map<int, int> checkerboard() const;

    Resolution resolve(const std::vector<uint8_t>& bits) const;
    // Color, per dart, of the resolved region on the dart's left, after the
    // resolution's smoothings merge the diagram faces; unbounded region white.
    std::map<Dart, int> resolved_left_color(const Resolution& r) const;

    // Orientation assignment: component -> +1/-1 relative to the reference
    // directions.  The stored orientation is orientations().
    int crossing_sign(Id crossing, const std::map<Id, int>& obits) const;
    // Dart of the given arc along orientation obits.
    Dart oriented_dart(Id arc, const std::map<Id, int>& obits) const;
    // Resolution bits induced by obits: 0 at positive crossings, 1 at
    // negative ones.
    std::vector<uint8_t> oriented_vertex(const std::map<Id, int>& obits) const;

    // --- mutation interface used by the movie layer ---
    Id mint_arc_id() { return next_arc_++; }
    Id mint_crossing_id() { return next_crossing_++; }
    void insert_arc(const ArcRec& a);
    void insert_crossing(const CrossingRec& c);
    void erase_arc(Id a);
    void erase_crossing(Id c);
    void set_end(Id arc, int which, End e);
    void set_slot(Id crossing, int slotno, Id arc);
    void set_orientation(Id comp, int flag);
    void clear_orientations() { orient_.clear(); bump(); }
    void set_embed(Id piece, const Embed& e);
    void clear_embeds() { embeds_.clear(); bump(); }
    void set_crossing_o(Id crossing, int o);
    void bump() { ++revision_; }

    friend PlanarDiagram parse_pd(const std::string& text);

  private:
    std::map<Id, CrossingRec> crossings_;
    std::map<Id, ArcRec> arcs_;
    std::map<Id, int> orient_;   // link component id -> +1/-1
    std::map<Id, Embed> embeds_; // piece id -> placement
    Id next_arc_{0};
    Id next_crossing_{0};

    mutable long revision_{0};
    mutable long geom_revision_{-1};
    mutable Geometry geom_;
};

PlanarDiagram parse_pd(const std::string& text);

// Independent circle-counting oracle: walks circles arc by arc through the
// smoothings instead of using union-find.  Test support.
int trace_circles(const PlanarDiagram& d, const std::vector<uint8_t>& bits);

}  // namespace khmix
