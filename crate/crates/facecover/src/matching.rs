//! Perfect matchings in connected bridgeless cubic plane multigraphs.
//!
//! Two engines sit behind one contract. [`MatchingEngine::Blossom`] runs a
//! general maximum-matching search and serves as the baseline. With
//! [`MatchingEngine::Cubic`] the graph is read as the dual of a
//! triangulation, low-degree triangulation vertices are peeled one at a
//! time while recording how to lift a matching back over each surgery, and
//! the requested edge is then worked into the lifted matching by one
//! seeded augmenting search. Peeling is near linear; if it ever runs out
//! of peelable vertices, the residual part is finished with the blossom
//! search and the result is flagged.
//!
//! Petersen's theorem guarantees a perfect matching exists here, and by
//! the stronger form due to Schonberger every single edge lies in one, so
//! both the forcing and the avoiding entry points are total on valid
//! inputs.

use crate::error::{Error, Result};
use crate::planegraph::{edge_of, DartId, EdgeId, PlaneGraph};
use std::collections::VecDeque;

const UNSET: usize = usize::MAX;
const NO_DART: u32 = u32::MAX;
const NO_MATE: u32 = u32::MAX;

/// Selects how perfect matchings are computed. Both engines honor the
/// same contract and validate their output the same way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchingEngine {
    /// General maximum-matching search with blossom shrinking.
    Blossom,
    /// Near-linear peeling of the dual triangulation, with an automatic
    /// blossom fallback on residues it cannot peel.
    #[default]
    Cubic,
}

impl std::str::FromStr for MatchingEngine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "blossom" => Ok(MatchingEngine::Blossom),
            "cubic" => Ok(MatchingEngine::Cubic),
            other => Err(format!("unknown engine '{other}', expected blossom or cubic")),
        }
    }
}

impl std::fmt::Display for MatchingEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatchingEngine::Blossom => "blossom",
            MatchingEngine::Cubic => "cubic",
        })
    }
}

/// A perfect matching: every vertex of the host graph is incident to
/// exactly one of `edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Matched edge ids in increasing order.
    pub edges: Vec<EdgeId>,
    /// True when the peeling engine finished a residual core with the
    /// blossom search instead of peeling all the way down.
    pub used_fallback: bool,
}

/// Enumerates every perfect matching of `g`, sorted lexicographically by
/// edge-id list. Exponential time, intended for cross-checking the engines
/// on graphs of at most a couple dozen vertices. Works on arbitrary
/// multigraphs: loops are never matchable and parallel edges yield
/// distinct matchings.
pub fn matching_oracle(g: &PlaneGraph) -> Vec<Vec<EdgeId>> {
    assert!(g.n() <= 24, "exhaustive enumeration is for small graphs");
    let incident: Vec<Vec<EdgeId>> = (0..g.n())
        .map(|v| {
            let mut es: Vec<EdgeId> = g
                .darts_at(v)
                .map(edge_of)
                .filter(|&e| !g.is_loop(e))
                .collect();
            es.sort_unstable();
            es
        })
        .collect();
    let mut covered = vec![false; g.n()];
    let mut picked: Vec<EdgeId> = Vec::new();
    let mut out: Vec<Vec<EdgeId>> = Vec::new();
    extend_matchings(g, &incident, &mut covered, &mut picked, &mut out);
    out.sort();
    out
}

fn extend_matchings(
    g: &PlaneGraph,
    incident: &[Vec<EdgeId>],
    covered: &mut [bool],
    picked: &mut Vec<EdgeId>,
    out: &mut Vec<Vec<EdgeId>>,
) {
    let Some(v) = covered.iter().position(|&c| !c) else {
        let mut done = picked.clone();
        done.sort_unstable();
        out.push(done);
        return;
    };
    covered[v] = true;
    for &e in &incident[v] {
        let (a, b) = g.endpoints(e);
        let w = if a == v { b } else { a };
        if covered[w] {
            continue;
        }
        covered[w] = true;
        picked.push(e);
        extend_matchings(g, incident, covered, picked, out);
        picked.pop();
        covered[w] = false;
    }
    covered[v] = false;
}

/// Checks that `edges` touches every vertex of `g` exactly once.
pub fn validate_perfect_matching(g: &PlaneGraph, edges: &[EdgeId]) -> Result<()> {
    let mut count = vec![0u8; g.n()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        if u == v {
            return Err(Error::InvariantViolation(format!("loop {e} in matching")));
        }
        count[u] = count[u].saturating_add(1);
        count[v] = count[v].saturating_add(1);
    }
    if let Some(v) = (0..g.n()).find(|&v| count[v] != 1) {
        return Err(Error::InvariantViolation(format!(
            "vertex {v} touched by {} matching edges",
            count[v]
        )));
    }
    Ok(())
}

/// Checks that every face of `t` carries exactly one marked edge.
pub(crate) fn validate_face_matching(t: &PlaneGraph, in_m: &[bool]) -> Result<()> {
    let mut count = vec![0u8; t.num_faces()];
    // unconditional add keeps the scan sequential and branch free
    for e in 0..t.m() {
        let inc = in_m[e] as u8;
        let fa = t.face_of(2 * e);
        let fb = t.face_of(2 * e + 1);
        count[fa] = count[fa].saturating_add(inc);
        count[fb] = count[fb].saturating_add(inc);
    }
    if let Some(f) = (0..t.num_faces()).find(|&f| count[f] != 1) {
        return Err(Error::InvariantViolation(format!(
            "face {f} carries {} matched edges",
            count[f]
        )));
    }
    Ok(())
}

fn validate_cubic_input(g: &PlaneGraph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::TooSmall(0));
    }
    for v in 0..g.n() {
        let d = g.degree(v);
        if d != 3 {
            return Err(Error::NotCubic { vertex: v, degree: d });
        }
    }
    if !g.is_connected() {
        return Err(Error::Disconnected {
            components: g.components().1,
        });
    }
    if let Some(e) = (0..g.m()).find(|&e| g.is_bridge(e)) {
        return Err(Error::NotBridgeless(e));
    }
    Ok(())
}

/// A perfect matching of a connected bridgeless cubic plane multigraph
/// that contains `forced_edge`.
///
/// The blossom engine removes the forced endpoints and matches the rest.
/// The cubic engine peels the dual triangulation, lifts the recorded
/// surgeries in reverse, and then swaps the forced edge in with one
/// seeded augmenting search. Output is always validated; a failed
/// post-check surfaces as [`Error::InvariantViolation`].
pub fn perfect_matching_cubic(
    gstar: &PlaneGraph,
    forced_edge: EdgeId,
    engine: MatchingEngine,
) -> Result<Matching> {
    assert!(forced_edge < gstar.m(), "edge id out of range");
    validate_cubic_input(gstar)?;
    let (edges, used_fallback) = match engine {
        MatchingEngine::Blossom => {
            let (a, b) = gstar.endpoints(forced_edge);
            let mut active = vec![true; gstar.n()];
            active[a] = false;
            active[b] = false;
            let mate_e = blossom_matching(gstar, active);
            let mut edges = vec![forced_edge];
            for v in 0..gstar.n() {
                if v == a || v == b {
                    continue;
                }
                if mate_e[v] == NO_MATE {
                    return Err(Error::InvariantViolation(format!(
                        "vertex {v} unmatched once the forced endpoints are removed"
                    )));
                }
                edges.push(mate_e[v] as usize);
            }
            edges.sort_unstable();
            edges.dedup();
            (edges, false)
        }
        MatchingEngine::Cubic => {
            // faces of the dual triangulation are the cubic vertices, and
            // bridgelessness keeps that triangulation loop free; its view
            // is read straight off the face structure of gstar
            let s = Surgeon::from_cubic_dual_view(gstar);
            let (mut in_m, fell_back) = peel_dual_matching(s, gstar.m())?;
            if !in_m[forced_edge] {
                force_matching(gstar, &mut in_m, forced_edge)?;
            }
            let edges: Vec<EdgeId> = (0..gstar.m()).filter(|&e| in_m[e]).collect();
            (edges, fell_back)
        }
    };
    validate_perfect_matching(gstar, &edges)?;
    if edges.binary_search(&forced_edge).is_err() {
        return Err(Error::InvariantViolation(
            "forced edge missing from the matching".into(),
        ));
    }
    Ok(Matching {
        edges,
        used_fallback,
    })
}

/// A perfect matching that avoids `avoided_edge`, obtained by forcing the
/// lowest-id sibling edge at the avoided edge's lower endpoint. Sharing an
/// endpoint with the forced edge keeps the avoided one out.
pub fn avoiding_matching(
    gstar: &PlaneGraph,
    avoided_edge: EdgeId,
    engine: MatchingEngine,
) -> Result<Matching> {
    assert!(avoided_edge < gstar.m(), "edge id out of range");
    validate_cubic_input(gstar)?;
    let (a, b) = gstar.endpoints(avoided_edge);
    let sibling = gstar
        .darts_at(a.min(b))
        .map(edge_of)
        .filter(|&e| e != avoided_edge)
        .min()
        .ok_or_else(|| Error::InvariantViolation("no sibling edge at the avoided endpoint".into()))?;
    let m = perfect_matching_cubic(gstar, sibling, engine)?;
    if m.edges.binary_search(&avoided_edge).is_ok() {
        return Err(Error::InvariantViolation(
            "avoided edge entered the matching".into(),
        ));
    }
    Ok(m)
}

/// A perfect matching of the dual of the triangulation `t`, computed
/// without leaving the primal index space: returned ids are primal edge
/// ids and every face of `t` carries exactly one of them. The avoided
/// edge stays out; it is excluded by forcing the lowest-id other edge of
/// its lower-numbered face.
pub(crate) fn dual_perfect_matching_avoiding(
    t: &PlaneGraph,
    avoided_edge: EdgeId,
    engine: MatchingEngine,
) -> Result<Matching> {
    assert!(avoided_edge < t.m(), "edge id out of range");
    if t.n() == 0 {
        return Err(Error::TooSmall(0));
    }
    if let Some(e) = (0..t.m()).find(|&e| t.is_loop(e)) {
        return Err(Error::HasLoop(e));
    }
    for f in 0..t.num_faces() {
        let d = t.face_degree(f);
        if d != 3 {
            return Err(Error::NotTriangulated { face: f, degree: d });
        }
    }
    if !t.is_connected() {
        return Err(Error::Disconnected {
            components: t.components().1,
        });
    }
    let fa = t.face_of(2 * avoided_edge);
    let fb = t.face_of(2 * avoided_edge + 1);
    let sibling = t
        .face_walk(fa.min(fb))
        .map(edge_of)
        .filter(|&e| e != avoided_edge)
        .min()
        .ok_or_else(|| Error::InvariantViolation("no sibling edge on the avoided face".into()))?;
    let (in_m, used_fallback) = match engine {
        MatchingEngine::Cubic => {
            let s = Surgeon::from_triangulation(t);
            let (mut in_m, fell_back) = peel_dual_matching(s, t.m())?;
            if !in_m[sibling] {
                force_matching(&FaceHost(t), &mut in_m, sibling)?;
            }
            (in_m, fell_back)
        }
        MatchingEngine::Blossom => {
            let h = FaceHost(t);
            let (ha, hb) = h.host_ends(sibling);
            let mut active = vec![true; h.host_n()];
            active[ha] = false;
            active[hb] = false;
            let mate_e = blossom_matching(&h, active);
            let mut in_m = vec![false; t.m()];
            in_m[sibling] = true;
            for v in 0..h.host_n() {
                if v == ha || v == hb {
                    continue;
                }
                if mate_e[v] == NO_MATE {
                    return Err(Error::InvariantViolation(format!(
                        "dual vertex {v} unmatched once the forced faces are removed"
                    )));
                }
                in_m[mate_e[v] as usize] = true;
            }
            (in_m, false)
        }
    };
    validate_face_matching(t, &in_m)?;
    if in_m[avoided_edge] {
        return Err(Error::InvariantViolation(
            "avoided edge entered the dual matching".into(),
        ));
    }
    let edges: Vec<EdgeId> = (0..t.m()).filter(|&e| in_m[e]).collect();
    Ok(Matching {
        edges,
        used_fallback,
    })
}

/// Adjacency access for the matching searches. A host is anything
/// graph-shaped with edge ids: the searches only need the endpoints of
/// an edge and the incidence list of a vertex.
trait MatchHost {
    fn host_n(&self) -> usize;
    fn host_ends(&self, e: EdgeId) -> (usize, usize);
    fn host_neighbors(&self, v: usize) -> impl Iterator<Item = (usize, EdgeId)> + '_;
}

impl MatchHost for PlaneGraph {
    fn host_n(&self) -> usize {
        self.n()
    }

    fn host_ends(&self, e: EdgeId) -> (usize, usize) {
        self.endpoints(e)
    }

    fn host_neighbors(&self, v: usize) -> impl Iterator<Item = (usize, EdgeId)> + '_ {
        self.darts_at(v).map(|d| (self.head(d), edge_of(d)))
    }
}

/// The faces of a plane graph as a host: one vertex per face, one edge
/// per primal edge, joining the faces on its two sides. Matching over
/// this host is matching over the dual without materializing it.
struct FaceHost<'a>(&'a PlaneGraph);

impl MatchHost for FaceHost<'_> {
    fn host_n(&self) -> usize {
        self.0.num_faces()
    }

    fn host_ends(&self, e: EdgeId) -> (usize, usize) {
        (self.0.face_of(2 * e), self.0.face_of(2 * e + 1))
    }

    fn host_neighbors(&self, f: usize) -> impl Iterator<Item = (usize, EdgeId)> + '_ {
        self.0
            .face_walk(f)
            .map(|d| (self.0.face_of(d ^ 1), edge_of(d)))
    }
}

/// Maximum matching by breadth-first alternating-tree search with blossom
/// shrinking, restricted to `active` vertices. Returns the matched edge at
/// each vertex, `UNSET` where exposed. Quadratic-ish per augmentation;
/// fine as a baseline and for small residues.
fn blossom_matching<H: MatchHost>(host: &H, active: Vec<bool>) -> Vec<u32> {
    let mut state = Blossom::new(host, active);
    for v in 0..host.host_n() {
        if state.active[v] && state.mate_v[v] == NO_MATE {
            state.find_path(v);
        }
    }
    state.mate_e
}

/// Runs one augmenting search from `root` on top of an existing partial
/// matching. Returns the updated matched-edge table, or `None` when no
/// augmenting path leaves `root`.
fn blossom_single_augment<H: MatchHost>(
    host: &H,
    active: Vec<bool>,
    mate_v: Vec<u32>,
    mate_e: Vec<u32>,
    root: usize,
) -> Option<Vec<u32>> {
    let mut state = Blossom::new(host, active);
    state.mate_v = mate_v;
    state.mate_e = mate_e;
    if state.find_path(root) {
        Some(state.mate_e)
    } else {
        None
    }
}

/// Alternating-tree search state, all of it in u32 tables: one search on
/// a large host is reset-dominated, so narrow state halves its cost.
/// Shrunken blossoms are tracked with a union-find whose roots carry the
/// base vertex of their class, so one search costs near-linear time no
/// matter how many odd cycles it contracts. That matters here: duals of
/// triangulations are packed with triangles, and a single search can
/// shrink thousands of them.
struct Blossom<'a, H: MatchHost> {
    host: &'a H,
    active: Vec<bool>,
    mate_v: Vec<u32>,
    mate_e: Vec<u32>,
    p_v: Vec<u32>,
    p_e: Vec<u32>,
    parent: Vec<u32>,
    rank: Vec<u8>,
    class_base: Vec<u32>,
    lca_stamp: Vec<u32>,
    stamp: u32,
    used: Vec<bool>,
    q: VecDeque<u32>,
    absorbed: Vec<u32>,
}

impl<'a, H: MatchHost> Blossom<'a, H> {
    fn new(host: &'a H, active: Vec<bool>) -> Self {
        let n = host.host_n();
        assert!(n < u32::MAX as usize);
        Blossom {
            host,
            active,
            mate_v: vec![NO_MATE; n],
            mate_e: vec![NO_MATE; n],
            p_v: vec![NO_MATE; n],
            p_e: vec![NO_MATE; n],
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            class_base: (0..n as u32).collect(),
            lca_stamp: vec![0; n],
            stamp: 0,
            used: vec![false; n],
            q: VecDeque::new(),
            absorbed: Vec::new(),
        }
    }

    fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            let p = self.parent[v as usize];
            self.parent[v as usize] = self.parent[p as usize];
            v = self.parent[v as usize];
        }
        v
    }

    fn base_of(&mut self, v: u32) -> u32 {
        let r = self.find(v);
        self.class_base[r as usize]
    }

    fn find_path(&mut self, root: usize) -> bool {
        self.used.iter_mut().for_each(|x| *x = false);
        self.p_v.iter_mut().for_each(|x| *x = NO_MATE);
        self.p_e.iter_mut().for_each(|x| *x = NO_MATE);
        for v in 0..self.host.host_n() {
            self.parent[v] = v as u32;
            self.rank[v] = 0;
            self.class_base[v] = v as u32;
        }
        self.q.clear();
        self.used[root] = true;
        self.q.push_back(root as u32);
        while let Some(v) = self.q.pop_front() {
            let v = v as usize;
            let host = self.host;
            for (to, e) in host.host_neighbors(v) {
                if to == v || !self.active[to] {
                    continue;
                }
                // skip inside one blossom and skip the matched edge
                // itself; a parallel copy of it is a usable non-matching
                // edge
                if self.find(v as u32) == self.find(to as u32) || self.mate_e[v] == e as u32 {
                    continue;
                }
                let mto = self.mate_v[to];
                if to == root || (mto != NO_MATE && self.p_v[mto as usize] != NO_MATE) {
                    self.contract(v as u32, to as u32, e as u32);
                } else if self.p_v[to] == NO_MATE {
                    self.p_v[to] = v as u32;
                    self.p_e[to] = e as u32;
                    if mto == NO_MATE {
                        self.augment(to as u32);
                        return true;
                    }
                    self.used[mto as usize] = true;
                    self.q.push_back(mto);
                }
            }
        }
        false
    }

    fn lca(&mut self, a: u32, b: u32) -> u32 {
        if self.stamp == u32::MAX {
            self.lca_stamp.iter_mut().for_each(|x| *x = 0);
            self.stamp = 0;
        }
        self.stamp += 1;
        let mut a = self.base_of(a);
        loop {
            self.lca_stamp[a as usize] = self.stamp;
            if self.mate_v[a as usize] == NO_MATE {
                break;
            }
            let up = self.p_v[self.mate_v[a as usize] as usize];
            a = self.base_of(up);
        }
        let mut b = self.base_of(b);
        while self.lca_stamp[b as usize] != self.stamp {
            let up = self.p_v[self.mate_v[b as usize] as usize];
            b = self.base_of(up);
        }
        b
    }

    /// Shrinks the odd cycle closed by the edge `(v, to)` into the class
    /// of its lowest common ancestor. Only vertices on the two tree paths
    /// change status: members of previously shrunken classes were queued
    /// when their class formed.
    fn contract(&mut self, v: u32, to: u32, e: u32) {
        let cur = self.lca(v, to);
        let mut absorbed = std::mem::take(&mut self.absorbed);
        absorbed.clear();
        self.collect_path(v, cur, to, e, &mut absorbed);
        self.collect_path(to, cur, v, e, &mut absorbed);
        let mut root = self.find(cur);
        for i in 0..absorbed.len() {
            let r = self.find(absorbed[i]);
            if r == root {
                continue;
            }
            if self.rank[r as usize] > self.rank[root as usize] {
                self.parent[root as usize] = r;
                root = r;
            } else {
                if self.rank[r as usize] == self.rank[root as usize] {
                    self.rank[root as usize] += 1;
                }
                self.parent[r as usize] = root;
            }
        }
        self.class_base[root as usize] = cur;
        self.absorbed = absorbed;
    }

    fn collect_path(
        &mut self,
        mut v: u32,
        b: u32,
        mut child: u32,
        mut e: u32,
        absorbed: &mut Vec<u32>,
    ) {
        while self.base_of(v) != b {
            let mv = self.mate_v[v as usize];
            let fv = self.find(v);
            absorbed.push(fv);
            let fm = self.find(mv);
            absorbed.push(fm);
            self.p_v[v as usize] = child;
            self.p_e[v as usize] = e;
            if !self.used[v as usize] {
                self.used[v as usize] = true;
                self.q.push_back(v);
            }
            if !self.used[mv as usize] {
                self.used[mv as usize] = true;
                self.q.push_back(mv);
            }
            child = mv;
            e = self.p_e[mv as usize];
            v = self.p_v[mv as usize];
        }
    }

    fn augment(&mut self, mut v: u32) {
        while v != NO_MATE {
            let pv = self.p_v[v as usize];
            let pe = self.p_e[v as usize];
            let next = self.mate_v[pv as usize];
            self.mate_v[v as usize] = pv;
            self.mate_e[v as usize] = pe;
            self.mate_v[pv as usize] = v;
            self.mate_e[pv as usize] = pe;
            v = next;
        }
    }
}

/// One recorded surgery of the peeling pass, stored so a matching of the
/// smaller triangulation can be lifted back over it. Edge ids are kept
/// as u32 because the event log is the largest allocation of the peel.
enum PeelEvent {
    /// A degree-3 vertex and its three spokes were removed, merging the
    /// three incident triangles into one. Each pair is the far link edge
    /// of one old triangle together with the spoke opposite to it; the
    /// matched link's partner re-covers the two triangles the link's own
    /// triangle did not.
    Star { links: [(u32, u32); 3] },
    /// A degree-2 vertex between parallel link edges was removed along
    /// with its two spokes and the higher link copy. If the kept copy is
    /// matched the dropped copy re-covers its old far face; otherwise one
    /// spoke re-covers both vanished triangles.
    Split { kept: u32, dropped: u32, spoke_low: u32 },
}

/// Everything the surgery reads about one dart: ring neighbors in the
/// rotation at its tail, and the tail itself. Interleaved so that a dart
/// and its twin sit on at most two cache lines between them.
#[derive(Clone, Copy)]
struct DartRec {
    next: u32,
    prev: u32,
    tail: u32,
}

#[derive(Clone, Copy)]
struct VertRec {
    some_dart: u32,
    /// `DEAD` marks a removed vertex; live degrees stay far below it.
    degree: u32,
}

const DEAD: u32 = u32::MAX;

/// Linked-list view of a triangulation's rotation system supporting O(1)
/// edge deletion. Dart and edge ids keep their original values; tails
/// stay valid because endpoints never change.
struct Surgeon {
    darts: Vec<DartRec>,
    verts: Vec<VertRec>,
    edge_alive: Vec<bool>,
    live_vertices: usize,
}

impl Surgeon {
    fn from_triangulation(t: &PlaneGraph) -> Self {
        Surgeon {
            darts: (0..2 * t.m())
                .map(|d| DartRec {
                    next: t.rot_next(d) as u32,
                    prev: t.rot_prev(d) as u32,
                    tail: t.tail(d) as u32,
                })
                .collect(),
            verts: (0..t.n())
                .map(|v| VertRec {
                    some_dart: t.first_dart_at(v).map_or(NO_DART, |d| d as u32),
                    degree: t.degree(v) as u32,
                })
                .collect(),
            edge_alive: vec![true; t.m()],
            live_vertices: t.n(),
        }
    }

    /// The dual triangulation of a connected bridgeless cubic plane
    /// graph, viewed without being materialized: vertices are the faces
    /// of `g`, the rotation successor is the face successor of `g`, and
    /// dart and edge ids carry over unchanged.
    fn from_cubic_dual_view(g: &PlaneGraph) -> Self {
        // the inverse of the face successor is the twin of the rotation
        // predecessor, so both ring pointers come from sequential reads
        let darts = (0..g.num_darts())
            .map(|d| DartRec {
                next: g.face_next(d) as u32,
                prev: (g.rot_prev(d) ^ 1) as u32,
                tail: g.face_of(d) as u32,
            })
            .collect();
        Surgeon {
            darts,
            verts: (0..g.num_faces())
                .map(|f| VertRec {
                    some_dart: g.face_start(f) as u32,
                    degree: g.face_degree(f) as u32,
                })
                .collect(),
            edge_alive: vec![true; g.m()],
            live_vertices: g.num_faces(),
        }
    }

    fn num_vertices(&self) -> usize {
        self.verts.len()
    }

    fn tail(&self, d: u32) -> usize {
        self.darts[d as usize].tail as usize
    }

    fn head(&self, d: u32) -> usize {
        self.darts[(d ^ 1) as usize].tail as usize
    }

    fn fnext(&self, d: u32) -> u32 {
        self.darts[(d ^ 1) as usize].next
    }

    fn unlink_dart(&mut self, d: u32) {
        let rec = self.darts[d as usize];
        let v = rec.tail as usize;
        if rec.next == d {
            self.verts[v].some_dart = NO_DART;
        } else {
            self.darts[rec.prev as usize].next = rec.next;
            self.darts[rec.next as usize].prev = rec.prev;
            if self.verts[v].some_dart == d {
                self.verts[v].some_dart = rec.next;
            }
        }
        self.verts[v].degree -= 1;
    }

    fn delete_edge(&mut self, e: EdgeId) {
        debug_assert!(self.edge_alive[e]);
        self.edge_alive[e] = false;
        self.unlink_dart(2 * e as u32);
        self.unlink_dart(2 * e as u32 + 1);
    }

    /// Removes a spoke edge whose tail-side vertex is about to die.
    /// Only the far ring is spliced; the dying ring is left stale, which
    /// is fine because dead vertices are never walked again.
    fn drop_spoke(&mut self, d: u32) {
        let e = (d >> 1) as usize;
        debug_assert!(self.edge_alive[e]);
        self.edge_alive[e] = false;
        self.unlink_dart(d ^ 1);
    }

    /// Marks `v` dead. Its ring pointers and degree are left stale.
    fn kill_vertex(&mut self, v: usize) {
        self.verts[v].degree = DEAD;
        self.live_vertices -= 1;
    }
}

/// A matching of the dual of a loop-free triangulation, expressed as a
/// primal edge marking with exactly one marked edge per face. The
/// triangulation enters as a `Surgeon` view with `m` edges. Peels
/// degree-2 and degree-3 vertices down to a single triangle, then lifts
/// the one-edge base matching back through the recorded events. Returns
/// the marking and whether the blossom fallback had to finish a residual
/// core that offered nothing left to peel.
fn peel_dual_matching(mut s: Surgeon, m: usize) -> Result<(Vec<bool>, bool)> {
    // one event per peeled vertex at most; about three queue pushes per
    // peel, so size both up front instead of growing through doublings
    let mut events: Vec<PeelEvent> = Vec::with_capacity(s.num_vertices());
    let mut queue: Vec<u32> = Vec::with_capacity(3 * s.num_vertices() + 4);
    queue.extend((0..s.num_vertices() as u32).filter(|&v| s.verts[v as usize].degree <= 3));
    let mut in_m = vec![false; m];
    let mut fell_back = false;
    while s.live_vertices > 3 {
        let Some(v) = queue.pop() else {
            fell_back = true;
            finish_residual_with_blossom(&s, m, &mut in_m)?;
            break;
        };
        let v = v as usize;
        // a dead vertex fails this test too: its degree reads as DEAD
        if s.verts[v].degree > 3 {
            continue;
        }
        match s.verts[v].degree {
            2 => peel_two(&mut s, v, &mut events, &mut queue)?,
            3 => peel_three(&mut s, v, &mut events, &mut queue),
            d => {
                return Err(Error::InvariantViolation(format!(
                    "residual degree {d} at vertex {v} during peeling"
                )))
            }
        }
    }
    if !fell_back {
        let live: Vec<EdgeId> = (0..m).filter(|&e| s.edge_alive[e]).collect();
        if live.len() != 3 {
            return Err(Error::InvariantViolation(format!(
                "peeled base should be a triangle, found {} edges",
                live.len()
            )));
        }
        in_m[live[0]] = true;
    }
    for ev in events.iter().rev() {
        match *ev {
            PeelEvent::Star { links } => {
                let mut lifted = None;
                for (link, spoke) in links {
                    if in_m[link as usize] {
                        if lifted.is_some() {
                            return Err(Error::InvariantViolation(
                                "two matched links on one peeled star".into(),
                            ));
                        }
                        lifted = Some(spoke);
                    }
                }
                let Some(spoke) = lifted else {
                    return Err(Error::InvariantViolation(
                        "no matched link on a peeled star".into(),
                    ));
                };
                in_m[spoke as usize] = true;
            }
            PeelEvent::Split {
                kept,
                dropped,
                spoke_low,
            } => {
                if in_m[kept as usize] {
                    in_m[dropped as usize] = true;
                } else {
                    in_m[spoke_low as usize] = true;
                }
            }
        }
    }
    Ok((in_m, fell_back))
}

/// Removes a degree-3 vertex whose neighbors are pairwise distinct and
/// still have degree at least 3. Skipping otherwise is safe: the vertex
/// returns to the queue whenever a neighboring deletion changes its
/// degree, and a permanently stuck core is handled by the fallback.
fn peel_three(s: &mut Surgeon, v: usize, events: &mut Vec<PeelEvent>, queue: &mut Vec<u32>) {
    let d1 = s.verts[v].some_dart;
    let d2 = s.darts[d1 as usize].next;
    let d3 = s.darts[d2 as usize].next;
    debug_assert_eq!(s.darts[d3 as usize].next, d1);
    let u1 = s.head(d1);
    let u2 = s.head(d2);
    let u3 = s.head(d3);
    if u1 == u2 || u2 == u3 || u1 == u3 {
        return;
    }
    if s.verts[u1].degree < 3 || s.verts[u2].degree < 3 || s.verts[u3].degree < 3 {
        return;
    }
    // triangle at d_i is (v, head(d_i), head(d_{i-1})); its far link edge
    // sits opposite the spoke of the rotationally next dart
    let links = [
        (s.fnext(d1) >> 1, d2 >> 1),
        (s.fnext(d2) >> 1, d3 >> 1),
        (s.fnext(d3) >> 1, d1 >> 1),
    ];
    events.push(PeelEvent::Star { links });
    for d in [d1, d2, d3] {
        s.drop_spoke(d);
    }
    s.kill_vertex(v);
    for u in [u1, u2, u3] {
        if s.verts[u].degree <= 3 {
            queue.push(u as u32);
        }
    }
}

/// Removes a degree-2 vertex. Both its faces are triangles on the same
/// two neighbors, so a parallel pair of link edges must flank it; the
/// higher copy goes too, and the neighbors each lose exactly two edges.
fn peel_two(
    s: &mut Surgeon,
    x: usize,
    events: &mut Vec<PeelEvent>,
    queue: &mut Vec<u32>,
) -> Result<()> {
    let d1 = s.verts[x].some_dart;
    let d2 = s.darts[d1 as usize].next;
    debug_assert_eq!(s.darts[d2 as usize].next, d1);
    let u = s.head(d1);
    let v = s.head(d2);
    if u == v {
        return Err(Error::InvariantViolation(format!(
            "degree-2 vertex {x} with a doubled neighbor during peeling"
        )));
    }
    let ec1 = s.fnext(d1) >> 1;
    let ec2 = s.fnext(d2) >> 1;
    if ec1 == ec2 {
        return Err(Error::InvariantViolation(format!(
            "degree-2 vertex {x} lacks a parallel link pair during peeling"
        )));
    }
    events.push(PeelEvent::Split {
        kept: ec1.min(ec2),
        dropped: ec1.max(ec2),
        spoke_low: (d1 >> 1).min(d2 >> 1),
    });
    s.drop_spoke(d1);
    s.drop_spoke(d2);
    s.delete_edge(ec1.max(ec2) as usize);
    s.kill_vertex(x);
    for w in [u, v] {
        if s.verts[w].degree <= 3 {
            queue.push(w as u32);
        }
    }
    Ok(())
}

/// Rebuilds the live part of a stuck peel as a standalone plane graph,
/// matches its dual with the blossom search, and copies the result back
/// into the primal marking.
fn finish_residual_with_blossom(s: &Surgeon, m: usize, in_m: &mut [bool]) -> Result<()> {
    let nv = s.num_vertices();
    let mut vmap = vec![UNSET; nv];
    let mut vlist: Vec<usize> = Vec::new();
    for v in 0..nv {
        if s.verts[v].degree != DEAD {
            vmap[v] = vlist.len();
            vlist.push(v);
        }
    }
    let mut emap = vec![UNSET; m];
    let mut elist: Vec<EdgeId> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for e in 0..m {
        if s.edge_alive[e] {
            emap[e] = elist.len();
            elist.push(e);
            let (a, b) = (s.tail(2 * e as u32), s.head(2 * e as u32));
            edges.push((vmap[a], vmap[b]));
        }
    }
    let rotations: Vec<Vec<DartId>> = vlist
        .iter()
        .map(|&v| {
            let start = s.verts[v].some_dart;
            debug_assert_ne!(start, NO_DART);
            let mut out = Vec::with_capacity(s.verts[v].degree as usize);
            let mut d = start;
            loop {
                out.push(2 * emap[edge_of(d as usize)] + (d as usize & 1));
                d = s.darts[d as usize].next;
                if d == start {
                    break;
                }
            }
            out
        })
        .collect();
    let residual = PlaneGraph::new(vlist.len(), &edges, &rotations)
        .map_err(|e| Error::InvariantViolation(format!("stuck residue is not planar: {e}")))?;
    let dual = FaceHost(&residual);
    let mate_e = blossom_matching(&dual, vec![true; dual.host_n()]);
    let mut marked = vec![false; residual.m()];
    for v in 0..dual.host_n() {
        if mate_e[v] == NO_MATE {
            return Err(Error::InvariantViolation(
                "stuck residue's dual has no perfect matching".into(),
            ));
        }
        marked[mate_e[v] as usize] = true;
    }
    for re in 0..residual.m() {
        if marked[re] {
            in_m[elist[re]] = true;
        }
    }
    Ok(())
}

/// Rewrites a perfect matching of the search host so that `force` joins
/// it. Unmarks the current edges at the two endpoints of `force`, marks
/// `force`, and re-pairs the two vertices this exposes by a single
/// augmenting search with the forced endpoints removed. Every edge of
/// the hosts used here lies in some perfect matching, so the search
/// cannot fail on valid input.
fn force_matching<H: MatchHost>(host: &H, in_m: &mut [bool], force: EdgeId) -> Result<()> {
    if in_m[force] {
        return Ok(());
    }
    let n = host.host_n();
    let mut mate_v = vec![NO_MATE; n];
    let mut mate_e = vec![NO_MATE; n];
    for e in 0..in_m.len() {
        if in_m[e] {
            let (x, y) = host.host_ends(e);
            if x == y || mate_e[x] != NO_MATE || mate_e[y] != NO_MATE {
                return Err(Error::InvariantViolation(format!(
                    "marked edge {e} breaks the matching before forcing"
                )));
            }
            mate_v[x] = y as u32;
            mate_v[y] = x as u32;
            mate_e[x] = e as u32;
            mate_e[y] = e as u32;
        }
    }
    if let Some(v) = (0..n).find(|&v| mate_e[v] == NO_MATE) {
        return Err(Error::InvariantViolation(format!(
            "vertex {v} uncovered before forcing"
        )));
    }
    let (fa, fb) = host.host_ends(force);
    if fa == fb {
        return Err(Error::InvariantViolation(format!(
            "cannot force loop edge {force}"
        )));
    }
    let p = mate_e[fa] as usize;
    let q = mate_e[fb] as usize;
    if p == q {
        // the displaced edge joined both forced endpoints: a plain swap
        in_m[p] = false;
        in_m[force] = true;
        return Ok(());
    }
    let exposed_a = mate_v[fa] as usize;
    let exposed_b = mate_v[fb] as usize;
    if exposed_a == exposed_b {
        return Err(Error::InvariantViolation(
            "two matched edges share a vertex before forcing".into(),
        ));
    }
    in_m[p] = false;
    in_m[q] = false;
    in_m[force] = true;
    let mut active = vec![true; n];
    active[fa] = false;
    active[fb] = false;
    for v in [fa, fb, exposed_a, exposed_b] {
        mate_v[v] = NO_MATE;
        mate_e[v] = NO_MATE;
    }
    let mate_e = blossom_single_augment(host, active, mate_v, mate_e, exposed_a).ok_or_else(|| {
        Error::InvariantViolation("no augmenting path restores the forced matching".into())
    })?;
    for x in in_m.iter_mut() {
        *x = false;
    }
    in_m[force] = true;
    for v in 0..n {
        if v != fa && v != fb {
            if mate_e[v] == NO_MATE {
                return Err(Error::InvariantViolation(format!(
                    "vertex {v} unmatched after forcing"
                )));
            }
            in_m[mate_e[v] as usize] = true;
        }
    }
    Ok(())
}
