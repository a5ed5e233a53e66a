//! Embedding-preserving triangulation with anchored vertices.
//!
//! Given a 2-connected, loop-free plane graph whose faces all have degree at
//! least 3, this module adds chords inside faces until every face is a
//! triangle. A vertex is *anchored* when some face corner at it consists of
//! two original edges, equivalently when two original edges are consecutive
//! in its rotation. Anchors are what later lets an edge cover of the
//! triangulation be thinned back to original edges while still touching
//! every vertex.
//!
//! The construction walks a face-aligned ear decomposition. For each face it
//! plans a set of non-crossing chords in ring-position space, derives which
//! vertices become anchored by tracing the triangles of that face, and in a
//! final pass performs all rotation insertions at once to build the output.
//!
//! Chords are planned so that on the boundary of the region built so far no
//! two consecutive vertices are both unanchored, except possibly the two
//! endpoints of the reference edge. Every vertex that moves to the interior
//! of the built region is anchored on the way, by cutting it off between
//! its two boundary neighbors when needed.
//!
//! [`triangulate_anchored`] anchors every vertex except possibly one
//! endpoint of the chosen reference edge. [`triangulate_all_anchored`]
//! anchors every vertex; the only inputs where this is impossible are odd
//! cycles of length at least five, reported as [`Error::OddCycle`].

use std::collections::HashSet;

use crate::decompose::{ear_decomposition, is_biconnected, Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::planegraph::{edge_of, twin, DartId, EdgeId, FaceId, PlaneGraph, VertexId};

/// Result of an anchoring triangulation.
#[derive(Debug, Clone)]
pub struct AugmentedTriangulation {
    /// The triangulated plane graph. Edges `0..original_edges` are the input
    /// edges with unchanged ids, endpoints and relative rotation order; the
    /// rest are added chords.
    pub graph: PlaneGraph,
    /// Number of input edges.
    pub original_edges: usize,
    /// The single vertex without an anchor, if any. Always an endpoint of
    /// `reference_edge`.
    pub unanchored: Option<VertexId>,
    pub reference_edge: EdgeId,
    /// Face of the input graph that was closed last.
    pub outer_face: FaceId,
}

/// Computes for every vertex whether two edges with id below
/// `original_edges` are consecutive in its rotation.
pub fn anchored_vertices(graph: &PlaneGraph, original_edges: usize) -> Vec<bool> {
    let mut anchored = vec![false; graph.n()];
    for v in 0..graph.n() {
        for d in graph.darts_at(v) {
            if edge_of(d) < original_edges && edge_of(graph.rot_next(d)) < original_edges {
                anchored[v] = true;
                break;
            }
        }
    }
    anchored
}

/// Planned subdivision of one face: its dart walk and the chords to insert,
/// stored as pairs of walk positions with the smaller position first.
struct FacePlan {
    ring: Vec<u32>,
    chords: Vec<(u32, u32)>,
}

/// Reusable buffers for planning and tracing faces.
struct Scratch {
    dedup: HashSet<(u32, u32)>,
    nxt: Vec<u32>,
    prv: Vec<u32>,
    ends: Vec<(u32, u32, u32)>,
    order: Vec<u32>,
    group_start: Vec<u32>,
    rot_next: Vec<u32>,
    tails: Vec<u32>,
    face_seen: Vec<bool>,
}

impl Scratch {
    fn new() -> Scratch {
        Scratch {
            dedup: HashSet::new(),
            nxt: Vec::new(),
            prv: Vec::new(),
            ends: Vec::new(),
            order: Vec::new(),
            group_start: Vec::new(),
            rot_next: Vec::new(),
            tails: Vec::new(),
            face_seen: Vec::new(),
        }
    }
}

/// Chord collector for one face. The surviving ring, a doubly linked cycle
/// over walk positions, tracks the part of the face not yet cut off.
struct RingPlanner<'a> {
    r: u32,
    alive: u32,
    chords: Vec<(u32, u32)>,
    scratch: &'a mut Scratch,
}

impl<'a> RingPlanner<'a> {
    fn new(r: usize, scratch: &'a mut Scratch) -> RingPlanner<'a> {
        scratch.dedup.clear();
        scratch.nxt.clear();
        scratch.prv.clear();
        let r32 = r as u32;
        for i in 0..r32 {
            scratch.nxt.push((i + 1) % r32);
            scratch.prv.push((i + r32 - 1) % r32);
        }
        RingPlanner {
            r: r32,
            alive: r32,
            chords: Vec::new(),
            scratch,
        }
    }

    /// Adds a chord between two surviving positions exactly two apart on the
    /// surviving ring, cutting off the position between them. A repeated
    /// chord is ignored.
    fn cut(&mut self, p: u32, q: u32) -> Result<()> {
        let key = (p.min(q), p.max(q));
        if !self.scratch.dedup.insert(key) {
            return Ok(());
        }
        let (a, b) = if self.scratch.nxt[p as usize] != u32::MAX
            && self.scratch.nxt[self.scratch.nxt[p as usize] as usize] == q
        {
            (p, q)
        } else if self.scratch.nxt[q as usize] != u32::MAX
            && self.scratch.nxt[self.scratch.nxt[q as usize] as usize] == p
        {
            (q, p)
        } else {
            return Err(Error::InvariantViolation(format!(
                "chord ({p}, {q}) does not cut a single ring position"
            )));
        };
        let mid = self.scratch.nxt[a as usize];
        self.scratch.nxt[a as usize] = b;
        self.scratch.prv[b as usize] = a;
        self.scratch.nxt[mid as usize] = u32::MAX;
        self.scratch.prv[mid as usize] = u32::MAX;
        self.alive -= 1;
        self.chords.push(key);
        Ok(())
    }

    /// Triangulates the remaining region with a fan from the surviving
    /// position whose ring vertex has the smallest id.
    fn fan(&mut self, ring: &[u32], g: &PlaneGraph) {
        if self.alive < 4 {
            return;
        }
        let start = (0..self.r)
            .find(|&p| self.scratch.nxt[p as usize] != u32::MAX)
            .unwrap();
        let mut survivors = Vec::with_capacity(self.alive as usize);
        let mut p = start;
        loop {
            survivors.push(p);
            p = self.scratch.nxt[p as usize];
            if p == start {
                break;
            }
        }
        let k = survivors.len();
        let pivot_idx = (0..k)
            .min_by_key(|&i| g.tail(ring[survivors[i] as usize] as usize))
            .unwrap();
        let pivot = survivors[pivot_idx];
        for off in 2..k - 1 {
            let q = survivors[(pivot_idx + off) % k];
            let key = (pivot.min(q), pivot.max(q));
            if self.scratch.dedup.insert(key) {
                self.chords.push(key);
            }
        }
    }
}

/// Traces the subdivision of a face by its planned chords, checks that every
/// inner region is a triangle, and marks ring vertices that gained a corner
/// of two ring edges. Ring edges are graph edges, chords are not, so such a
/// corner anchors the vertex.
fn scan_plan(plan: &FacePlan, g: &PlaneGraph, anchored: &mut [bool], s: &mut Scratch) -> Result<()> {
    let r = plan.ring.len();
    let c = plan.chords.len();
    if c == 0 {
        if r != 3 {
            return Err(Error::InvariantViolation(format!(
                "face of degree {r} left untriangulated"
            )));
        }
        for &d in &plan.ring {
            anchored[g.tail(d as usize)] = true;
        }
        return Ok(());
    }
    // Model the face as a convex polygon with positions 0..r. Edge i < r
    // joins positions i and i+1 (mod r); edge r+j is chord j. Dart 2e leaves
    // the first endpoint of edge e.
    let nd = 2 * (r + c);
    s.tails.clear();
    s.tails.resize(nd, 0);
    for i in 0..r {
        s.tails[2 * i] = i as u32;
        s.tails[2 * i + 1] = ((i + 1) % r) as u32;
    }
    s.ends.clear();
    for (j, &(p, q)) in plan.chords.iter().enumerate() {
        let d = (2 * (r + j)) as u32;
        s.tails[2 * (r + j)] = p;
        s.tails[2 * (r + j) + 1] = q;
        s.ends.push((p, (q + r as u32 - p) % r as u32, d));
        s.ends.push((q, (p + r as u32 - q) % r as u32, d + 1));
    }
    s.ends
        .sort_unstable_by(|a, b| (a.0, std::cmp::Reverse(a.1)).cmp(&(b.0, std::cmp::Reverse(b.1))));
    // Clockwise rotation at position p: the dart back to p-1, then chord
    // darts by decreasing forward distance of their far endpoint, then the
    // dart on to p+1.
    s.order.clear();
    s.group_start.clear();
    let mut ei = 0usize;
    for p in 0..r {
        s.group_start.push(s.order.len() as u32);
        s.order.push((2 * ((p + r - 1) % r) + 1) as u32);
        while ei < s.ends.len() && s.ends[ei].0 as usize == p {
            s.order.push(s.ends[ei].2);
            ei += 1;
        }
        s.order.push((2 * p) as u32);
    }
    s.group_start.push(s.order.len() as u32);
    s.rot_next.clear();
    s.rot_next.resize(nd, 0);
    for p in 0..r {
        let st = s.group_start[p] as usize;
        let en = s.group_start[p + 1] as usize;
        for i in st..en {
            let nx = if i + 1 == en { st } else { i + 1 };
            s.rot_next[s.order[i] as usize] = s.order[nx];
        }
    }
    // Trace all faces; the walk through dart 1 (backwards along ring edge 0)
    // is the polygon exterior and is skipped.
    s.face_seen.clear();
    s.face_seen.resize(nd, false);
    let mut faces = 0usize;
    for start in 0..nd {
        if s.face_seen[start] {
            continue;
        }
        faces += 1;
        let mut walk = [0u32; 3];
        let mut len = 0usize;
        let mut outer = false;
        let mut d = start;
        loop {
            s.face_seen[d] = true;
            if d == 1 {
                outer = true;
            }
            if len < 3 {
                walk[len] = d as u32;
            }
            len += 1;
            d = s.rot_next[d ^ 1] as usize;
            if d == start {
                break;
            }
        }
        if outer {
            if len != r {
                return Err(Error::InvariantViolation(
                    "face subdivision has a broken outer walk".into(),
                ));
            }
            continue;
        }
        if len != 3 {
            return Err(Error::InvariantViolation(format!(
                "face subdivision left a region of degree {len}"
            )));
        }
        for i in 0..3 {
            let din = walk[i] as usize;
            let dout = walk[(i + 1) % 3] as usize;
            if edge_of(din) < r && edge_of(dout) < r {
                let pos = s.tails[dout] as usize;
                anchored[g.tail(plan.ring[pos] as usize)] = true;
            }
        }
    }
    if faces != c + 2 {
        return Err(Error::InvariantViolation(
            "face subdivision is not planar".into(),
        ));
    }
    Ok(())
}

/// Orientation frame over a face ring of `r` positions whose fresh path has
/// interior length `k`: either the identity, or the reflection mapping
/// position `u` to `k + 1 - u` modulo `r`, which swaps the two endpoints of
/// the fresh path and reverses both the fresh and the built part.
#[derive(Clone, Copy)]
struct Frame {
    r: u32,
    k: u32,
    reversed: bool,
}

impl Frame {
    fn real(&self, u: u32) -> u32 {
        if self.reversed {
            (self.k + 1 + self.r - u) % self.r
        } else {
            u
        }
    }
}

/// Special planning instructions used by [`triangulate_all_anchored`].
enum Special {
    None,
    /// In face `fprime`, anchor the vertex `t` sitting next to the degree-2
    /// vertex `x`.
    DegreeTwo {
        fprime: FaceId,
        t: VertexId,
        x: VertexId,
    },
    /// Replace the planned chords of the first two ears entirely.
    Alternating {
        first: Vec<(u32, u32)>,
        second: Vec<(u32, u32)>,
    },
}

/// State after all ears have been planned; the outer face is still open.
pub struct Augmentation<'a> {
    g: &'a PlaneGraph,
    ed: EarDecomposition,
    anchored: Vec<bool>,
    plans: Vec<FacePlan>,
    scratch: Scratch,
}

/// Validates what every triangulation entry point requires: at least three
/// vertices, no loops, no faces of degree below 3, and 2-connectivity.
fn validate_input(g: &PlaneGraph) -> Result<()> {
    if g.n() < 3 {
        return Err(Error::TooSmall(g.n()));
    }
    for e in 0..g.m() {
        if g.is_loop(e) {
            return Err(Error::HasLoop(e));
        }
    }
    for f in 0..g.num_faces() {
        if g.face_degree(f) < 3 {
            return Err(Error::BigonPresent(f));
        }
    }
    if !is_biconnected(g) {
        return Err(Error::NotBiconnected(
            "triangulation requires a 2-connected input".into(),
        ));
    }
    Ok(())
}

/// Plans chords for all inner faces along the ear decomposition rooted at
/// `eref` with the given outer face.
pub fn augment_ears(g: &PlaneGraph, eref: EdgeId, outer: FaceId) -> Result<Augmentation<'_>> {
    validate_input(g)?;
    let ed = ear_decomposition(g, eref, outer)?;
    run_ears(g, ed, Special::None)
}

fn run_ears(g: &PlaneGraph, ed: EarDecomposition, special: Special) -> Result<Augmentation<'_>> {
    let mut anchored = vec![false; g.n()];
    let mut plans: Vec<FacePlan> = Vec::with_capacity(ed.ears.len() + 1);
    let mut scratch = Scratch::new();
    for (i, ear) in ed.ears.iter().enumerate() {
        let ring: Vec<u32> = ear
            .ear_darts
            .iter()
            .chain(ear.base_darts.iter())
            .map(|&d| d as u32)
            .collect();
        let k = ear.ear_darts.len() - 1;
        let chords = {
            let mut planner = RingPlanner::new(ring.len(), &mut scratch);
            match &special {
                Special::Alternating { first, second } if i < 2 => {
                    for &(p, q) in if i == 0 { first } else { second } {
                        planner.cut(p, q)?;
                    }
                    planner.fan(&ring, g);
                }
                Special::DegreeTwo { fprime, t, x } if ear.face == *fprime => {
                    plan_degree_two_ear(g, ear, &ring, k, *t, *x, &anchored, &mut planner)?;
                }
                _ => {
                    plan_standard_ear(g, &ring, k, &anchored, &mut planner, false)?;
                }
            }
            planner.chords
        };
        let plan = FacePlan { ring, chords };
        scan_plan(&plan, g, &mut anchored, &mut scratch)?;
        plans.push(plan);
    }
    Ok(Augmentation {
        g,
        ed,
        anchored,
        plans,
        scratch,
    })
}

/// Standard planning for one ear. Ring positions: fresh path interior at
/// `1..=k`, its far endpoint at `k + 1`, previously built vertices at
/// `k + 2..`. Every unanchored built interior vertex is cut off between its
/// ring neighbors, whose edges are both graph edges; then alternate fresh
/// vertices are cut off so that no two consecutive boundary vertices stay
/// unanchored; the rest is fanned.
fn plan_standard_ear(
    g: &PlaneGraph,
    ring: &[u32],
    k: usize,
    anchored: &[bool],
    planner: &mut RingPlanner,
    reversed: bool,
) -> Result<()> {
    let r = ring.len();
    if r == 3 {
        return Ok(());
    }
    let frame = Frame {
        r: r as u32,
        k: k as u32,
        reversed,
    };
    let anch = |u: u32| anchored[g.tail(ring[frame.real(u) as usize] as usize)];
    let l = r - k - 2;
    for j in 1..=l {
        let zj = (k + 1 + j) as u32;
        if !anch(zj) {
            planner.cut(frame.real(zj - 1), frame.real((zj + 1) % r as u32))?;
        }
    }
    if k % 2 == 1 {
        let mut a = 0u32;
        while (a as usize) < k {
            planner.cut(frame.real(a), frame.real(a + 2))?;
            a += 2;
        }
    } else {
        // With an even fresh interior the far endpoint would end up next to
        // an unanchored fresh vertex; cut it off against its built neighbor
        // first if it needs an anchor.
        if !anch(k as u32 + 1) {
            planner.cut(frame.real(k as u32), frame.real(((k + 2) % r) as u32))?;
        }
        let mut a = 0u32;
        while a as usize + 2 <= k {
            planner.cut(frame.real(a), frame.real(a + 2))?;
            a += 2;
        }
    }
    planner.fan(ring, g);
    Ok(())
}

/// Planning for the ear that closes the second face of the degree-2 vertex
/// `x`, where `x`'s neighbor `t` must come out anchored. The frame puts `t`
/// at the far end of the fresh path; with an odd fresh interior the
/// alternation is shifted and `t` is cut off against `x`.
#[allow(clippy::too_many_arguments)]
fn plan_degree_two_ear(
    g: &PlaneGraph,
    ear: &Ear,
    ring: &[u32],
    k: usize,
    t: VertexId,
    x: VertexId,
    anchored: &[bool],
    planner: &mut RingPlanner,
) -> Result<()> {
    let r = ring.len();
    let z0 = g.tail(ear.base_darts[0]);
    let zl1 = g.head(*ear.base_darts.last().unwrap());
    let reversed = if z0 == t {
        false
    } else if zl1 == t {
        true
    } else {
        // t lies strictly inside the built part of the ring, where the
        // standard cut between its two built neighbors anchors it.
        return plan_standard_ear(g, ring, k, anchored, planner, false);
    };
    if r == 3 {
        return Ok(());
    }
    let frame = Frame {
        r: r as u32,
        k: k as u32,
        reversed,
    };
    let vertex = |u: u32| g.tail(ring[frame.real(u) as usize] as usize);
    let anch = |u: u32| anchored[vertex(u)];
    debug_assert_eq!(vertex(k as u32 + 1), t);
    debug_assert_eq!(vertex(((k + 2) % r) as u32), x);
    if k % 2 == 0 || anch(k as u32 + 1) {
        return plan_standard_ear(g, ring, k, anchored, planner, reversed);
    }
    let l = r - k - 2;
    for j in 1..=l {
        let zj = (k + 1 + j) as u32;
        if !anch(zj) {
            planner.cut(frame.real(zj - 1), frame.real((zj + 1) % r as u32))?;
        }
    }
    // Cut t off between the last fresh vertex and x; both corner edges at t
    // are graph edges, so this anchors t.
    planner.cut(frame.real(k as u32), frame.real(((k + 2) % r) as u32))?;
    if !anch(0) {
        planner.cut(frame.real(r as u32 - 1), frame.real(1))?;
    }
    let mut a = 1u32;
    while a as usize + 2 <= k {
        planner.cut(frame.real(a), frame.real(a + 2))?;
        a += 2;
    }
    planner.fan(ring, g);
    Ok(())
}

/// The state of the augmentation after one ear, materialized as a pair of
/// plane graphs over a shared vertex and dart numbering.
///
/// Snapshot `i` covers the reference edge and the first `i + 1` ears.
/// `built` is the corresponding subgraph of the host; `augmented` is that
/// subgraph plus all chords planned for the faces closed so far. Darts
/// `0..2 * built.m()` mean the same edge in both graphs, so the walk of the
/// open region can be compared between them dart for dart.
#[derive(Debug, Clone)]
pub struct EarSnapshot {
    /// The subgraph built so far, unbuilt vertices dropped.
    pub built: PlaneGraph,
    /// `built` plus the chords planned so far. Edges `0..built.m()` agree
    /// with `built` in id, endpoints and orientation; the rest are chords.
    pub augmented: PlaneGraph,
    /// The reference edge in snapshot numbering.
    pub reference_edge: EdgeId,
    /// Face of `built` bounding the region no ear has closed yet.
    pub outer_built: FaceId,
    /// Face of `augmented` on the same side of the same boundary dart.
    pub outer_augmented: FaceId,
    /// Snapshot vertex id to host vertex id.
    pub vertex_to_host: Vec<VertexId>,
    /// Snapshot edge id to host edge id, for the edges of `built`.
    pub edge_to_host: Vec<EdgeId>,
}

impl<'a> Augmentation<'a> {
    /// Conservative per-vertex anchor flags accumulated so far. A set flag
    /// is final; an unset flag may still become anchored later.
    pub fn anchored_flags(&self) -> &[bool] {
        &self.anchored
    }

    /// Materializes the state after every ear, in order. Each snapshot pairs
    /// the subgraph built by the ears so far with its chord-augmented
    /// companion, plus the face that is still open in each.
    ///
    /// Quadratic in the host size, intended for checking, not for the
    /// construction itself.
    pub fn ear_snapshots(&self) -> Result<Vec<EarSnapshot>> {
        let g = self.g;
        debug_assert_eq!(self.plans.len(), self.ed.ears.len());
        let mut in_built = vec![false; g.m()];
        in_built[self.ed.reference_edge] = true;
        let mut new_dart = vec![usize::MAX; 2 * g.m()];
        let mut snapshots = Vec::with_capacity(self.ed.ears.len());
        for (i, ear) in self.ed.ears.iter().enumerate() {
            for &d in &ear.ear_darts {
                in_built[edge_of(d)] = true;
            }
            let kept: Vec<EdgeId> = (0..g.m()).filter(|&e| in_built[e]).collect();
            for (k, &e) in kept.iter().enumerate() {
                new_dart[2 * e] = 2 * k;
                new_dart[2 * e + 1] = 2 * k + 1;
            }
            let sub = g.subgraph_of_edges(&kept, true);
            let plans: Vec<FacePlan> = self.plans[..=i]
                .iter()
                .map(|p| FacePlan {
                    ring: p.ring.iter().map(|&d| new_dart[d as usize] as u32).collect(),
                    chords: p.chords.clone(),
                })
                .collect();
            let augmented = splice(&sub.graph, &plans)?;
            // The ear's darts walk the face it closes, so their twins border
            // the region that is still open.
            let probe = new_dart[twin(ear.ear_darts[0])];
            let reference_edge = kept
                .binary_search(&self.ed.reference_edge)
                .expect("reference edge is built first");
            snapshots.push(EarSnapshot {
                outer_built: sub.graph.face_of(probe),
                outer_augmented: augmented.face_of(probe),
                built: sub.graph,
                augmented,
                reference_edge,
                vertex_to_host: sub.vertex_to_old,
                edge_to_host: kept,
            });
        }
        Ok(snapshots)
    }

    /// The ear decomposition driving this augmentation.
    pub fn ears(&self) -> &EarDecomposition {
        &self.ed
    }

    /// Closes the outer face and builds the triangulation. At most one
    /// vertex stays unanchored, always the head of the reference-edge dart
    /// on the outer face.
    pub fn close_outer(self) -> Result<AugmentedTriangulation> {
        self.close_outer_impl(false)
    }

    pub(crate) fn close_outer_impl(mut self, fix_second: bool) -> Result<AugmentedTriangulation> {
        let g = self.g;
        let eref = self.ed.reference_edge;
        let outer = self.ed.outer_face;
        let dref = if g.face_of(2 * eref) == outer {
            2 * eref
        } else {
            2 * eref + 1
        };
        debug_assert_eq!(g.face_of(dref), outer);
        let mut ring = Vec::with_capacity(g.face_degree(outer));
        let mut d = dref;
        loop {
            ring.push(d as u32);
            d = g.face_next(d);
            if d == dref {
                break;
            }
        }
        let r = ring.len();
        // Ring positions: 0 and 1 are the reference endpoints, joined by the
        // reference edge itself; 2..r are the interior of the outer walk.
        let a = g.tail(dref);
        let b = g.head(dref);
        let chords = {
            let mut planner = RingPlanner::new(r, &mut self.scratch);
            if r > 3 {
                for pos in 2..r as u32 {
                    let v = g.tail(ring[pos as usize] as usize);
                    if !self.anchored[v] {
                        let after = if pos as usize + 1 == r { 0 } else { pos + 1 };
                        planner.cut(pos - 1, after)?;
                    }
                }
                if !self.anchored[a] && planner.alive > 3 {
                    // Cut the tail endpoint off between its walk neighbor and
                    // the head endpoint; its corner keeps the reference edge
                    // and one walk edge.
                    planner.cut(r as u32 - 1, 1)?;
                }
                if fix_second && !self.anchored[b] {
                    if !self.anchored[a] {
                        return Err(Error::InvariantViolation(
                            "both reference endpoints unanchored at closing".into(),
                        ));
                    }
                    if planner.alive > 3 {
                        planner.cut(0, 2)?;
                    }
                }
                planner.fan(&ring, g);
            }
            planner.chords
        };
        let plan = FacePlan { ring, chords };
        scan_plan(&plan, g, &mut self.anchored, &mut self.scratch)?;
        self.plans.push(plan);
        let graph = assemble(g, &self.plans)?;
        let original_edges = g.m();
        let truly = anchored_vertices(&graph, original_edges);
        let mut unanchored = None;
        for (v, &ok) in truly.iter().enumerate() {
            if !ok {
                if fix_second || v != b || unanchored.is_some() {
                    return Err(Error::InvariantViolation(format!(
                        "vertex {v} has no corner of two original edges"
                    )));
                }
                unanchored = Some(v);
            }
        }
        Ok(AugmentedTriangulation {
            graph,
            original_edges,
            unanchored,
            reference_edge: eref,
            outer_face: outer,
        })
    }
}

/// Builds the triangulation from the per-face plans and validates that the
/// result is a full loop-free triangulation.
fn assemble(g: &PlaneGraph, plans: &[FacePlan]) -> Result<PlaneGraph> {
    let n = g.n();
    let gplus = splice(g, plans)?;
    for f in 0..gplus.num_faces() {
        if gplus.face_degree(f) != 3 {
            return Err(Error::InvariantViolation(format!(
                "augmented face {f} has degree {}",
                gplus.face_degree(f)
            )));
        }
    }
    if gplus.m() != 3 * n - 6 {
        return Err(Error::InvariantViolation(format!(
            "triangulation has {} edges, expected {}",
            gplus.m(),
            3 * n - 6
        )));
    }
    Ok(gplus)
}

/// Splices planned chords into `g`: assigns chord edge ids after the edges
/// of `g` and inserts each chord dart into its tail's rotation at the
/// planned corner. Faces not covered by any plan keep their walks.
fn splice(g: &PlaneGraph, plans: &[FacePlan]) -> Result<PlaneGraph> {
    let n = g.n();
    let mut edges: Vec<(VertexId, VertexId)> = (0..g.m()).map(|e| g.endpoints(e)).collect();
    // (anchor dart of g, chord dart of the output): the chord dart goes
    // immediately before the anchor in the anchor tail's rotation.
    let mut entries: Vec<(u32, u32)> = Vec::new();
    let mut ends: Vec<(u32, u32, u32)> = Vec::new();
    for plan in plans {
        if plan.chords.is_empty() {
            continue;
        }
        let r = plan.ring.len() as u32;
        ends.clear();
        for &(p, q) in &plan.chords {
            let e = edges.len();
            edges.push((
                g.tail(plan.ring[p as usize] as usize),
                g.tail(plan.ring[q as usize] as usize),
            ));
            let d = (2 * e) as u32;
            ends.push((p, (q + r - p) % r, d));
            ends.push((q, (p + r - q) % r, d + 1));
        }
        // At a shared corner, chords to farther walk positions come first;
        // together with "insert before the outgoing walk dart" this nests
        // the chords of the face without crossings.
        ends.sort_unstable_by(|x, y| {
            (x.0, std::cmp::Reverse(x.1)).cmp(&(y.0, std::cmp::Reverse(y.1)))
        });
        for &(pos, _, d) in ends.iter() {
            entries.push((plan.ring[pos as usize], d));
        }
    }
    entries.sort_by_key(|&(anchor, _)| anchor);
    let mut rotations: Vec<Vec<DartId>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut rot = Vec::with_capacity(g.degree(v));
        for d in g.darts_at(v) {
            let d32 = d as u32;
            let lo = entries.partition_point(|&(anchor, _)| anchor < d32);
            let mut i = lo;
            while i < entries.len() && entries[i].0 == d32 {
                rot.push(entries[i].1 as usize);
                i += 1;
            }
            rot.push(d);
        }
        rotations.push(rot);
    }
    PlaneGraph::new(n, &edges, &rotations)
}

/// Triangulates and anchors every vertex except possibly one endpoint of
/// `eref`.
pub fn triangulate_anchored(
    g: &PlaneGraph,
    eref: EdgeId,
    outer: FaceId,
) -> Result<AugmentedTriangulation> {
    augment_ears(g, eref, outer)?.close_outer()
}

/// Triangulates and anchors every vertex. Fails with [`Error::OddCycle`]
/// exactly on odd cycles of length at least five, which have no anchoring
/// triangulation.
pub fn triangulate_all_anchored(g: &PlaneGraph) -> Result<AugmentedTriangulation> {
    validate_input(g)?;
    // A triangle face anchors all three of its vertices for free; an even
    // face lets the first ear anchor the far reference endpoint. Either way
    // the closing can then fix the near endpoint.
    if let Some(f) = (0..g.num_faces()).find(|&f| {
        let d = g.face_degree(f);
        d == 3 || d % 2 == 0
    }) {
        let eref = g.face_walk(f).map(edge_of).min().unwrap();
        let outer = if g.face_of(2 * eref) == f {
            g.face_of(2 * eref + 1)
        } else {
            g.face_of(2 * eref)
        };
        let ed = ear_decomposition(g, eref, outer)?;
        return run_ears(g, ed, Special::None)?.close_outer_impl(true);
    }
    // All faces are odd of degree at least five.
    if (0..g.n()).all(|v| g.degree(v) == 2) {
        return Err(Error::OddCycle(g.n()));
    }
    if let Some((eref, outer, fprime, t, x)) = degree_two_strategy(g)? {
        let ed = ear_decomposition(g, eref, outer)?;
        return run_ears(g, ed, Special::DegreeTwo { fprime, t, x })?.close_outer_impl(true);
    }
    // Minimum degree 3: the second ear attaches along a single edge, and the
    // two first faces merge into an even cycle; an alternating chord cycle
    // over it anchors every other vertex, including one reference endpoint.
    let eref = 0;
    let outer = g.face_of(0).min(g.face_of(1));
    let ed = ear_decomposition(g, eref, outer)?;
    let (first, second) = alternating_plans(g, &ed)?;
    run_ears(g, ed, Special::Alternating { first, second })?.close_outer_impl(true)
}

/// Strategy when all faces are odd of degree at least 5 and some vertex has
/// degree 2: pick a degree-2 vertex `x` with a neighbor `t` of degree 3 or
/// more, and the reference edge at `t` forming a face corner with the edge
/// to `x`. The first ear anchors `x`; the ear closing `x`'s second face
/// anchors `t`; the closing fixes the other reference endpoint.
type DegreeTwoPick = (EdgeId, FaceId, FaceId, VertexId, VertexId);

fn degree_two_strategy(g: &PlaneGraph) -> Result<Option<DegreeTwoPick>> {
    let x = match (0..g.n()).find(|&v| g.degree(v) == 2 && g.neighbors(v).any(|u| g.degree(u) >= 3))
    {
        Some(v) => v,
        None => return Ok(None),
    };
    let t = g.neighbors(x).filter(|&u| g.degree(u) >= 3).min().unwrap();
    let dx = g
        .darts_at(t)
        .find(|&d| g.head(d) == x)
        .expect("t is a neighbor of x");
    let bdart = g.rot_next(dx);
    let eref = edge_of(bdart);
    let f2 = g.face_of(bdart);
    let outer = g.face_of(bdart ^ 1);
    let mut xdarts = g.darts_at(x);
    let (d1, d2) = (xdarts.next().unwrap(), xdarts.next().unwrap());
    let (fa, fb) = (g.face_of(d1), g.face_of(d2));
    let fprime = if fa == f2 {
        fb
    } else if fb == f2 {
        fa
    } else {
        return Err(Error::InvariantViolation(
            "degree-2 vertex is not on the face of its corner".into(),
        ));
    };
    if fprime == outer || fprime == f2 || outer == f2 {
        return Err(Error::InvariantViolation(
            "degree-2 strategy faces are not distinct".into(),
        ));
    }
    Ok(Some((eref, outer, fprime, t, x)))
}

/// Chord plans for the first two ears when every face is odd of degree at
/// least 5 and the minimum degree is 3. The two faces share exactly one
/// edge; their union bounds an even cycle, and a full alternating cycle of
/// chords starting at the parity of the shared edge cuts off every other
/// vertex without crossing the shared edge. Each chord is attributed to the
/// face its cut-off vertex lies on.
fn alternating_plans(
    g: &PlaneGraph,
    ed: &EarDecomposition,
) -> Result<(Vec<(u32, u32)>, Vec<(u32, u32)>)> {
    let e1 = &ed.ears[0];
    let e2 = &ed.ears[1];
    if e2.base_darts.len() != 1 {
        return Err(Error::InvariantViolation(
            "second ear attaches along more than one edge".into(),
        ));
    }
    let ring1: Vec<DartId> = e1
        .ear_darts
        .iter()
        .chain(e1.base_darts.iter())
        .cloned()
        .collect();
    let r1 = ring1.len();
    let k1 = r1 - 2;
    let shared = edge_of(e2.base_darts[0]);
    let q = (0..r1 - 1)
        .find(|&p| edge_of(ring1[p]) == shared)
        .ok_or_else(|| {
            Error::InvariantViolation("second ear does not attach to the first face".into())
        })?;
    let k2 = e2.ear_darts.len() - 1;
    let rhat = k1 + 2 + k2;
    if rhat % 2 != 0 {
        return Err(Error::InvariantViolation(
            "merged first faces have odd length".into(),
        ));
    }
    let vq = g.tail(ring1[q]);
    let forward = g.tail(e2.ear_darts[0]) == vq;
    // Enumerate the merged cycle; each index maps to a face side and a local
    // ring position there. The shared-edge endpoints (indices q and
    // q + k2 + 1) are stored with their first-face position and mapped to
    // the second face on demand.
    let mut side = vec![0u8; rhat];
    let mut local = vec![0u32; rhat];
    for (idx, slot) in local.iter_mut().enumerate().take(q + 1) {
        *slot = idx as u32;
    }
    for c in 1..=k2 {
        side[q + c] = 1;
        local[q + c] = if forward { c as u32 } else { (k2 + 1 - c) as u32 };
    }
    for idx in q + k2 + 1..rhat {
        local[idx] = (idx - k2) as u32;
    }
    let jdx = q + k2 + 1;
    let second_pos = |idx: usize| -> u32 {
        let near = idx == q;
        if forward == near {
            0
        } else {
            (k2 + 1) as u32
        }
    };
    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut a = q % 2;
    while a < rhat {
        let mid = (a + 1) % rhat;
        let c = (a + 2) % rhat;
        let sd = side[mid];
        let pos_of = |idx: usize| -> Result<u32> {
            if sd == 1 && (idx == q || idx == jdx) {
                Ok(second_pos(idx))
            } else if side[idx] == sd {
                Ok(local[idx])
            } else {
                Err(Error::InvariantViolation(
                    "alternating chord crosses the shared edge".into(),
                ))
            }
        };
        let pa = pos_of(a)?;
        let pc = pos_of(c)?;
        let key = (pa.min(pc), pa.max(pc));
        if sd == 0 {
            first.push(key);
        } else {
            second.push(key);
        }
        a += 2;
    }
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::instances::{k4, triangle};
    use crate::oracle::{self, generate, instances};

    fn assert_valid(g: &PlaneGraph, at: &AugmentedTriangulation, expect_all_anchored: bool) {
        assert_eq!(at.graph.n(), g.n());
        assert_eq!(at.original_edges, g.m());
        assert_eq!(at.graph.m(), 3 * g.n() - 6);
        for f in 0..at.graph.num_faces() {
            assert_eq!(at.graph.face_degree(f), 3);
        }
        for e in 0..g.m() {
            assert_eq!(at.graph.endpoints(e), g.endpoints(e));
        }
        let anchored = anchored_vertices(&at.graph, at.original_edges);
        let missing: Vec<usize> = (0..g.n()).filter(|&v| !anchored[v]).collect();
        if expect_all_anchored {
            assert!(missing.is_empty(), "unanchored vertices: {missing:?}");
            assert_eq!(at.unanchored, None);
        } else {
            assert!(missing.len() <= 1);
            assert_eq!(at.unanchored, missing.first().copied());
            if let Some(v) = at.unanchored {
                let (s, t) = at.graph.endpoints(at.reference_edge);
                assert!(v == s || v == t);
            }
        }
        assert_rotation_preserved(g, at);
    }

    fn assert_rotation_preserved(g: &PlaneGraph, at: &AugmentedTriangulation) {
        for v in 0..g.n() {
            let orig: Vec<DartId> = g.darts_at(v).collect();
            let kept: Vec<DartId> = at
                .graph
                .darts_at(v)
                .filter(|&d| edge_of(d) < at.original_edges)
                .collect();
            assert_eq!(orig.len(), kept.len());
            let start = kept.iter().position(|&d| d == orig[0]).unwrap();
            for (i, &d) in orig.iter().enumerate() {
                assert_eq!(kept[(start + i) % kept.len()], d, "rotation at {v}");
            }
        }
    }

    #[test]
    fn triangle_needs_no_chords() {
        let g = triangle();
        let at = triangulate_all_anchored(&g).unwrap();
        assert_valid(&g, &at, true);
        assert_eq!(at.graph.m(), 3);
    }

    #[test]
    fn k4_is_already_triangulated() {
        let g = k4();
        let at = triangulate_all_anchored(&g).unwrap();
        assert_valid(&g, &at, true);
        assert_eq!(at.graph.m(), 6);
    }

    #[test]
    fn even_cycles_get_fully_anchored() {
        for n in [4usize, 6, 8, 10] {
            let g = instances::cycle(n);
            let at = triangulate_all_anchored(&g).unwrap();
            assert_valid(&g, &at, true);
        }
    }

    #[test]
    fn odd_cycles_are_rejected() {
        for n in [5usize, 7, 9] {
            let g = instances::cycle(n);
            match triangulate_all_anchored(&g) {
                Err(Error::OddCycle(len)) => assert_eq!(len, n),
                other => panic!("expected OddCycle, got {other:?}"),
            }
        }
    }

    #[test]
    fn odd_cycle_spares_one_reference_endpoint() {
        for n in [5usize, 7] {
            let g = instances::cycle(n);
            for eref in 0..g.m() {
                for dart in [2 * eref, 2 * eref + 1] {
                    let outer = g.face_of(dart);
                    let at = triangulate_anchored(&g, eref, outer).unwrap();
                    assert_valid(&g, &at, false);
                    let dref = if g.face_of(2 * eref) == outer {
                        2 * eref
                    } else {
                        2 * eref + 1
                    };
                    assert_eq!(at.unanchored, Some(g.head(dref)));
                }
            }
        }
    }

    #[test]
    fn pentagon_flags_alternate_after_ears() {
        let g = instances::cycle(5);
        let outer = g.face_of(1);
        let aug = augment_ears(&g, 0, outer).unwrap();
        let ear = &aug.ears().ears[0];
        let path = ear.path_vertices(&g);
        assert_eq!(path.len(), 5);
        let flags = aug.anchored_flags();
        assert_eq!(flags.iter().filter(|&&b| b).count(), 2);
        assert!(flags[path[1]] && flags[path[3]]);
    }

    #[test]
    fn theta_graph_all_anchored() {
        let g = instances::theta();
        let at = triangulate_all_anchored(&g).unwrap();
        assert_valid(&g, &at, true);
    }

    #[test]
    fn cube_all_anchored() {
        let g = instances::cube();
        let at = triangulate_all_anchored(&g).unwrap();
        assert_valid(&g, &at, true);
    }

    #[test]
    fn cube_every_reference_spares_at_most_one() {
        let g = instances::cube();
        for eref in 0..g.m() {
            for dart in [2 * eref, 2 * eref + 1] {
                let at = triangulate_anchored(&g, eref, g.face_of(dart)).unwrap();
                assert_valid(&g, &at, false);
            }
        }
    }

    #[test]
    fn four_pentagons_use_degree_two_strategy() {
        let g = instances::four_pentagons();
        let at = triangulate_all_anchored(&g).unwrap();
        assert_valid(&g, &at, true);
    }

    #[test]
    fn dodecahedron_uses_alternating_strategy() {
        let g = instances::dodecahedron();
        let at = triangulate_all_anchored(&g).unwrap();
        assert_valid(&g, &at, true);
    }

    #[test]
    fn relabelled_dodecahedra_all_anchored() {
        for (mul, add) in [(7usize, 3usize), (11, 5), (3, 17), (9, 1)] {
            let perm: Vec<usize> = (0..20).map(|v| (mul * v + add) % 20).collect();
            let g = instances::relabel(&instances::dodecahedron(), &perm);
            let at = triangulate_all_anchored(&g).unwrap();
            assert_valid(&g, &at, true);
        }
    }

    #[test]
    fn square_with_parallel_chords_already_triangulated() {
        // A 4-cycle with two parallel chords, one inside each face: a
        // loop-free triangulation with a multi-edge.
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 2)];
        let walks = [vec![0, 2, 9], vec![8, 4, 6], vec![7, 5, 11], vec![10, 3, 1]];
        let g = PlaneGraph::from_faces(4, &edges, &walks).unwrap();
        let at = triangulate_all_anchored(&g).unwrap();
        assert_valid(&g, &at, true);
        assert_eq!(at.graph.m(), 6);
    }

    // One row per snapshot: the built graph is Eulerian-consistent with one
    // closed face per ear, the closed faces are exactly the translated ear
    // walks, and the per-state checker finds nothing to complain about.
    fn assert_snapshots_valid(g: &PlaneGraph, eref: EdgeId, outer: FaceId) {
        let aug = augment_ears(g, eref, outer).unwrap();
        let snaps = aug.ear_snapshots().unwrap();
        let ears = &aug.ears().ears;
        assert_eq!(snaps.len(), ears.len());
        let mut prev_m = 1usize;
        for (i, s) in snaps.iter().enumerate() {
            assert!(s.built.m() > prev_m || i == 0);
            prev_m = s.built.m();
            assert_eq!(s.augmented.n(), s.built.n());
            assert!(s.augmented.m() >= s.built.m());
            assert_eq!(s.edge_to_host[s.reference_edge], eref);
            assert!(s.edge_to_host.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(s.built.num_faces(), i + 2);
            let mut host_to_new = vec![usize::MAX; 2 * g.m()];
            for (k, &e) in s.edge_to_host.iter().enumerate() {
                host_to_new[2 * e] = 2 * k;
                host_to_new[2 * e + 1] = 2 * k + 1;
            }
            for ear in &ears[..=i] {
                let walk: Vec<DartId> = ear
                    .ear_darts
                    .iter()
                    .chain(ear.base_darts.iter())
                    .map(|&d| host_to_new[d])
                    .collect();
                let f = s.built.face_of(walk[0]);
                assert_ne!(f, s.outer_built);
                let mut traced: Vec<DartId> = s.built.face_walk(f).collect();
                let start = traced.iter().position(|&d| d == walk[0]).unwrap();
                traced.rotate_left(start);
                assert_eq!(traced, walk);
            }
            if let Some(why) = oracle::ear_snapshot_violation(s) {
                panic!("snapshot {i}: {why}");
            }
        }
        let last = snaps.last().unwrap();
        assert_eq!(last.built.m(), g.m());
        assert_eq!(last.built.n(), g.n());
        assert!(last.vertex_to_host.iter().enumerate().all(|(i, &v)| i == v));
        assert!(last.edge_to_host.iter().enumerate().all(|(i, &e)| i == e));
        assert_eq!(last.outer_built, outer);
        // The eager per-ear flags and a from-scratch scan of the final state
        // must agree exactly.
        let rescanned =
            oracle::interior_anchored_vertices(&last.augmented, g.m(), last.outer_augmented);
        assert_eq!(rescanned, aug.anchored_flags());
    }

    #[test]
    fn ear_snapshots_track_the_open_region() {
        let zoo: Vec<(PlaneGraph, EdgeId)> = vec![
            (instances::cycle(4), 0),
            (instances::cycle(5), 0),
            (instances::cycle(8), 2),
            (instances::theta(), 2),
            (instances::prism(3), 1),
            (instances::cube(), 0),
            (instances::four_pentagons(), 3),
            (instances::dodecahedron(), 7),
            (generate::stacked_triangulation(20, 7), 5),
        ];
        for (g, eref) in &zoo {
            for dart in [2 * eref, 2 * eref + 1] {
                assert_snapshots_valid(g, *eref, g.face_of(dart));
            }
        }
    }

    #[test]
    fn ear_snapshots_on_random_biconnected_instances() {
        let mut covered = 0;
        for seed in 0..40u64 {
            let g = generate::sparse_plane(24, seed, true);
            if !is_biconnected(&g) {
                continue;
            }
            covered += 1;
            assert_snapshots_valid(&g, 0, g.face_of(0));
        }
        assert!(covered >= 5, "only {covered} biconnected instances");
    }

    #[test]
    fn bigon_and_cut_vertex_rejected() {
        let doubled = PlaneGraph::from_faces(
            3,
            &[(0, 1), (1, 2), (2, 0), (0, 1)],
            &[vec![0, 2, 4], vec![6, 1], vec![7, 5, 3]],
        )
        .unwrap();
        assert!(matches!(
            triangulate_all_anchored(&doubled),
            Err(Error::BigonPresent(_))
        ));
        // Two triangles sharing a vertex.
        let eight = PlaneGraph::from_face_vertex_walks(
            5,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)],
            &[vec![0usize, 1, 2], vec![2, 3, 4], vec![0, 2, 4, 3, 2, 1]],
        )
        .unwrap();
        assert!(matches!(
            triangulate_all_anchored(&eight),
            Err(Error::NotBiconnected(_))
        ));
    }
}
