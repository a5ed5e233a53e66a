//! Plane multigraphs with a fixed combinatorial embedding.
//!
//! A graph drawn in the plane (or on the sphere) is represented purely
//! combinatorially by a *rotation system*: for every vertex, the cyclic
//! clockwise order of edge ends around it. This determines the faces of the
//! drawing without any coordinates.
//!
//! # Darts
//!
//! Edge `e` contributes two *darts* (directed half-edges): dart `2e` leaves
//! the first endpoint of `e` and dart `2e + 1` leaves the second. For a dart
//! `d`, `twin(d) = d ^ 1` is the opposite dart of the same edge and
//! `edge_of(d) = d >> 1` recovers the edge. Loops are allowed; both darts of
//! a loop then share the same tail.
//!
//! # Faces
//!
//! With rotations given clockwise, the faces are the orbits of the successor
//! map `d -> rot_next(twin(d))`: follow the edge to its other end, then turn
//! to the next dart clockwise. Each face walk keeps its interior on the left.
//! Every dart lies on exactly one face walk, and a face walk of length `k`
//! is a closed walk through `k` (not necessarily distinct) edges.
//!
//! Each connected component is embedded on its own sphere, so the number of
//! faces satisfies Euler's formula `n - m + f = 2c` where `c` is the number
//! of connected components.

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type DartId = usize;
pub type FaceId = usize;

/// Opposite dart of the same edge.
#[inline]
pub fn twin(d: DartId) -> DartId {
    d ^ 1
}

/// Edge a dart belongs to.
#[inline]
pub fn edge_of(d: DartId) -> EdgeId {
    d >> 1
}

/// The two darts of an edge, in endpoint order.
#[inline]
pub fn darts_of(e: EdgeId) -> (DartId, DartId) {
    (2 * e, 2 * e + 1)
}

const NONE: u32 = u32::MAX;

/// One face of the embedding.
#[derive(Debug, Clone)]
struct Face {
    /// Smallest dart on the walk; walks are traced starting here.
    start_dart: u32,
    /// Number of darts on the walk (edges counted with multiplicity).
    degree: u32,
    /// Number of distinct vertices on the walk.
    distinct_vertices: u32,
}

/// An immutable plane multigraph.
///
/// Construct one with [`PlaneGraph::new`] (from rotations) or
/// [`PlaneGraph::from_faces`] / [`PlaneGraph::from_face_vertex_walks`] (from
/// a list of face walks). All derived structure (face incidence, degrees) is
/// computed once at construction.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    n: usize,
    /// Dart -> tail vertex.
    tails: Vec<u32>,
    /// Dart -> next dart clockwise around the shared tail.
    rot_next: Vec<u32>,
    /// Dart -> previous dart clockwise around the shared tail.
    rot_prev: Vec<u32>,
    /// Vertex -> one of its darts (`NONE` for isolated vertices).
    first_dart: Vec<u32>,
    /// Vertex -> degree (loops count twice).
    deg: Vec<u32>,
    /// Dart -> face of its walk.
    face_of: Vec<u32>,
    faces: Vec<Face>,
}

impl PlaneGraph {
    /// Builds a plane graph from its rotation system.
    ///
    /// `rotations[v]` lists, in clockwise order, the darts whose tail is `v`.
    /// Every dart `0..2 * edges.len()` must appear exactly once, at the
    /// vertex matching its tail (`2e` at `edges[e].0`, `2e + 1` at
    /// `edges[e].1`).
    pub fn new(
        n: usize,
        edges: &[(VertexId, VertexId)],
        rotations: &[Vec<DartId>],
    ) -> Result<PlaneGraph> {
        let m = edges.len();
        let nd = 2 * m;
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::MalformedRotation(format!(
                    "edge {e} endpoint out of range"
                )));
            }
        }
        if rotations.len() != n {
            return Err(Error::MalformedRotation(format!(
                "expected {n} rotation lists, got {}",
                rotations.len()
            )));
        }
        let mut tails = vec![0u32; nd];
        for (e, &(u, v)) in edges.iter().enumerate() {
            tails[2 * e] = u as u32;
            tails[2 * e + 1] = v as u32;
        }
        let mut rot_next = vec![NONE; nd];
        let mut rot_prev = vec![NONE; nd];
        let mut first_dart = vec![NONE; n];
        let mut deg = vec![0u32; n];
        let mut seen = vec![false; nd];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= nd {
                    return Err(Error::MalformedRotation(format!(
                        "dart {d} out of range at vertex {v}"
                    )));
                }
                if seen[d] {
                    return Err(Error::MalformedRotation(format!("dart {d} listed twice")));
                }
                seen[d] = true;
                if tails[d] as usize != v {
                    return Err(Error::MalformedRotation(format!(
                        "dart {d} listed at vertex {v} but its tail is {}",
                        tails[d]
                    )));
                }
                let next = rot[(i + 1) % rot.len()];
                rot_next[d] = next as u32;
            }
            if !rot.is_empty() {
                first_dart[v] = rot[0] as u32;
                deg[v] = rot.len() as u32;
            }
        }
        if let Some(d) = seen.iter().position(|&s| !s) {
            return Err(Error::MalformedRotation(format!("dart {d} missing")));
        }
        for d in 0..nd {
            rot_prev[rot_next[d] as usize] = d as u32;
        }
        let (face_of, faces) = trace_faces(n, &tails, &rot_next);
        Ok(PlaneGraph {
            n,
            tails,
            rot_next,
            rot_prev,
            first_dart,
            deg,
            face_of,
            faces,
        })
    }

    /// Builds a plane graph from its face walks, given as dart sequences.
    ///
    /// Each walk lists consecutive darts `w[i]` with
    /// `head(w[i]) = tail(w[i + 1])` cyclically, and every dart must appear
    /// in exactly one walk. The rotation system is recovered from the walks;
    /// the walks of the result are exactly the given ones.
    pub fn from_faces(
        n: usize,
        edges: &[(VertexId, VertexId)],
        walks: &[Vec<DartId>],
    ) -> Result<PlaneGraph> {
        let m = edges.len();
        let nd = 2 * m;
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::MalformedRotation(format!(
                    "edge {e} endpoint out of range"
                )));
            }
        }
        let mut tails = vec![0u32; nd];
        for (e, &(u, v)) in edges.iter().enumerate() {
            tails[2 * e] = u as u32;
            tails[2 * e + 1] = v as u32;
        }
        // Face successor is d -> rot_next(twin(d)), so consecutive walk darts
        // pin down rot_next at the shared vertex: rot_next(twin(w[i])) = w[i+1].
        let mut rot_next = vec![NONE; nd];
        for walk in walks {
            if walk.is_empty() {
                return Err(Error::MalformedRotation("empty face walk".into()));
            }
            for i in 0..walk.len() {
                let d = walk[i];
                let next = walk[(i + 1) % walk.len()];
                if d >= nd || next >= nd {
                    return Err(Error::MalformedRotation(format!(
                        "dart {d} out of range in face walk"
                    )));
                }
                if tails[twin(d)] != tails[next] {
                    return Err(Error::MalformedRotation(format!(
                        "face walk not contiguous: dart {d} ends at {} but dart {next} starts at {}",
                        tails[twin(d)],
                        tails[next]
                    )));
                }
                if rot_next[twin(d)] != NONE {
                    return Err(Error::MalformedRotation(format!(
                        "dart {} appears in two face walks",
                        twin(d)
                    )));
                }
                rot_next[twin(d)] = next as u32;
            }
        }
        if let Some(d) = rot_next.iter().position(|&x| x == NONE) {
            return Err(Error::MalformedRotation(format!(
                "dart {d} missing from face walks"
            )));
        }
        // rot_next must decompose into one cycle per vertex, otherwise the
        // walks do not describe an embedding of this vertex set.
        let mut deg = vec![0u32; n];
        let mut first_dart = vec![NONE; n];
        for d in 0..nd {
            let v = tails[d] as usize;
            deg[v] += 1;
            if first_dart[v] == NONE {
                first_dart[v] = d as u32;
            }
        }
        let mut visited = vec![false; nd];
        for v in 0..n {
            if first_dart[v] == NONE {
                continue;
            }
            let start = first_dart[v] as usize;
            let mut d = start;
            let mut len = 0u32;
            loop {
                if tails[d] as usize != v {
                    return Err(Error::MalformedRotation(format!(
                        "face walks force dart {d} into the rotation of vertex {v}, but its tail is {}",
                        tails[d]
                    )));
                }
                if visited[d] {
                    return Err(Error::MalformedRotation(format!(
                        "rotation at vertex {v} is not a single cycle"
                    )));
                }
                visited[d] = true;
                len += 1;
                d = rot_next[d] as usize;
                if d == start {
                    break;
                }
            }
            if len != deg[v] {
                return Err(Error::MalformedRotation(format!(
                    "rotation at vertex {v} is not a single cycle"
                )));
            }
        }
        let mut rot_prev = vec![NONE; nd];
        for d in 0..nd {
            rot_prev[rot_next[d] as usize] = d as u32;
        }
        let (face_of, faces) = trace_faces(n, &tails, &rot_next);
        debug_assert_eq!(faces.len(), walks.len());
        Ok(PlaneGraph {
            n,
            tails,
            rot_next,
            rot_prev,
            first_dart,
            deg,
            face_of,
            faces,
        })
    }

    /// Builds a plane graph from face walks given as vertex sequences.
    ///
    /// Convenience for graphs without parallel edges: each consecutive vertex
    /// pair `(a, b)` of a walk is resolved to the unique edge with those
    /// endpoints. Fails if some pair matches no edge or more than one.
    pub fn from_face_vertex_walks(
        n: usize,
        edges: &[(VertexId, VertexId)],
        walks: &[Vec<VertexId>],
    ) -> Result<PlaneGraph> {
        use std::collections::HashMap;
        let mut by_pair: HashMap<(usize, usize), Vec<EdgeId>> = HashMap::new();
        for (e, &(u, v)) in edges.iter().enumerate() {
            let key = (u.min(v), u.max(v));
            by_pair.entry(key).or_default().push(e);
        }
        let mut dart_walks = Vec::with_capacity(walks.len());
        for walk in walks {
            let mut darts = Vec::with_capacity(walk.len());
            for i in 0..walk.len() {
                let a = walk[i];
                let b = walk[(i + 1) % walk.len()];
                let key = (a.min(b), a.max(b));
                let found = by_pair.get(&key).map(Vec::as_slice).unwrap_or(&[]);
                let e = match found {
                    [e] => *e,
                    [] => {
                        return Err(Error::MalformedRotation(format!(
                            "no edge between {a} and {b}"
                        )))
                    }
                    _ => {
                        return Err(Error::MalformedRotation(format!(
                            "parallel edges between {a} and {b}; use dart walks"
                        )))
                    }
                };
                let d = if edges[e].0 == a { 2 * e } else { 2 * e + 1 };
                darts.push(d);
            }
            dart_walks.push(darts);
        }
        PlaneGraph::from_faces(n, edges, &dart_walks)
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.tails.len() / 2
    }

    /// Number of darts (`2 * m`).
    #[inline]
    pub fn num_darts(&self) -> usize {
        self.tails.len()
    }

    /// Number of faces.
    #[inline]
    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Tail vertex of a dart.
    #[inline]
    pub fn tail(&self, d: DartId) -> VertexId {
        self.tails[d] as usize
    }

    /// Head vertex of a dart (tail of its twin).
    #[inline]
    pub fn head(&self, d: DartId) -> VertexId {
        self.tails[twin(d)] as usize
    }

    /// Endpoints of an edge, in construction order.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.tail(2 * e), self.tail(2 * e + 1))
    }

    /// Whether both endpoints of an edge coincide.
    #[inline]
    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.tails[2 * e] == self.tails[2 * e + 1]
    }

    /// Next dart clockwise around the tail of `d`.
    #[inline]
    pub fn rot_next(&self, d: DartId) -> DartId {
        self.rot_next[d] as usize
    }

    /// Previous dart clockwise around the tail of `d`.
    #[inline]
    pub fn rot_prev(&self, d: DartId) -> DartId {
        self.rot_prev[d] as usize
    }

    /// Successor of `d` on its face walk.
    #[inline]
    pub fn face_next(&self, d: DartId) -> DartId {
        self.rot_next(twin(d))
    }

    /// Predecessor of `d` on its face walk.
    #[inline]
    pub fn face_prev(&self, d: DartId) -> DartId {
        twin(self.rot_prev(d))
    }

    /// Face whose walk contains `d`.
    #[inline]
    pub fn face_of(&self, d: DartId) -> FaceId {
        self.face_of[d] as usize
    }

    /// Degree of a vertex (loops count twice).
    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.deg[v] as usize
    }

    /// Some dart with tail `v`, or `None` if `v` is isolated.
    #[inline]
    pub fn first_dart_at(&self, v: VertexId) -> Option<DartId> {
        let d = self.first_dart[v];
        (d != NONE).then_some(d as usize)
    }

    /// Darts with tail `v`, in clockwise order.
    pub fn darts_at(&self, v: VertexId) -> DartsAt<'_> {
        DartsAt {
            g: self,
            next: self.first_dart_at(v),
            remaining: self.degree(v),
        }
    }

    /// Heads of the darts at `v`, in clockwise order (repeats for parallel
    /// edges; a loop at `v` contributes `v` twice).
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.darts_at(v).map(|d| self.head(d))
    }

    /// Number of darts on the walk of face `f`.
    #[inline]
    pub fn face_degree(&self, f: FaceId) -> usize {
        self.faces[f].degree as usize
    }

    /// Number of distinct vertices on the walk of face `f`.
    #[inline]
    pub fn face_distinct_vertices(&self, f: FaceId) -> usize {
        self.faces[f].distinct_vertices as usize
    }

    /// First dart of the walk of face `f` (the smallest dart on it).
    #[inline]
    pub fn face_start(&self, f: FaceId) -> DartId {
        self.faces[f].start_dart as usize
    }

    /// Whether face `f` touches at least three distinct vertices.
    ///
    /// This is the class of faces the cover routines guarantee to hit: loop
    /// faces and walks that revisit everything (for example the face between
    /// a loop and a pendant edge) are excluded even when their degree is 3
    /// or more.
    #[inline]
    pub fn is_three_plus_face(&self, f: FaceId) -> bool {
        self.faces[f].distinct_vertices >= 3
    }

    /// The darts of face `f`'s walk, in walk order.
    pub fn face_walk(&self, f: FaceId) -> FaceWalk<'_> {
        FaceWalk {
            g: self,
            next: self.face_start(f),
            remaining: self.face_degree(f),
        }
    }

    /// Whether some dart of `e` lies on the walk of `f`.
    pub fn face_contains_edge(&self, f: FaceId, e: EdgeId) -> bool {
        self.face_of(2 * e) == f || self.face_of(2 * e + 1) == f
    }

    /// Whether `e` is a bridge, i.e. both its darts lie on the same face.
    #[inline]
    pub fn is_bridge(&self, e: EdgeId) -> bool {
        self.face_of[2 * e] == self.face_of[2 * e + 1]
    }

    /// The dual plane graph.
    ///
    /// Faces become vertices, edges keep their ids (dart `d` of the dual has
    /// tail `face_of(d)`), and the rotation at a dual vertex is the face walk
    /// order. The faces of the dual correspond to the vertices of `self`.
    pub fn dual(&self) -> PlaneGraph {
        let nd = self.num_darts();
        let n = self.num_faces();
        let mut tails = vec![0u32; nd];
        for d in 0..nd {
            tails[d] = self.face_of[d];
        }
        // Dual rotation successor is the primal face successor, so dual faces
        // are the orbits of the primal rot_next, one per primal vertex.
        let mut rot_next = vec![0u32; nd];
        for d in 0..nd {
            rot_next[d] = self.rot_next[twin(d)];
        }
        let mut rot_prev = vec![NONE; nd];
        for d in 0..nd {
            rot_prev[rot_next[d] as usize] = d as u32;
        }
        let mut first_dart = vec![NONE; n];
        let mut deg = vec![0u32; n];
        for d in 0..nd {
            let v = tails[d] as usize;
            deg[v] += 1;
            if first_dart[v] == NONE {
                first_dart[v] = d as u32;
            }
        }
        let (face_of, faces) = trace_faces(n, &tails, &rot_next);
        PlaneGraph {
            n,
            tails,
            rot_next,
            rot_prev,
            first_dart,
            deg,
            face_of,
            faces,
        }
    }

    /// The subgraph consisting of the given edges, with the induced
    /// embedding.
    ///
    /// New edge `k` is `edges[k]`; the dart mapping is `2k + s  <->
    /// 2 * edges[k] + s`. With `drop_isolated`, vertices left without edges
    /// are removed and the remaining ones renumbered; otherwise all `n`
    /// vertices are kept.
    pub fn subgraph_of_edges(&self, edges: &[EdgeId], drop_isolated: bool) -> Subgraph {
        let mut new_of_edge = vec![NONE; self.m()];
        for (k, &e) in edges.iter().enumerate() {
            debug_assert!(new_of_edge[e] == NONE, "edge {e} listed twice");
            new_of_edge[e] = k as u32;
        }
        let mut vertex_to_old = Vec::new();
        let mut vertex_from_old = vec![None; self.n];
        let mut rotations: Vec<Vec<DartId>> = Vec::new();
        for v in 0..self.n {
            let mut rot = Vec::new();
            for d in self.darts_at(v) {
                let k = new_of_edge[edge_of(d)];
                if k != NONE {
                    rot.push(2 * k as usize + (d & 1));
                }
            }
            if rot.is_empty() && drop_isolated {
                continue;
            }
            vertex_from_old[v] = Some(vertex_to_old.len());
            vertex_to_old.push(v);
            rotations.push(rot);
        }
        let new_edges: Vec<(VertexId, VertexId)> = edges
            .iter()
            .map(|&e| {
                let (u, v) = self.endpoints(e);
                (vertex_from_old[u].unwrap(), vertex_from_old[v].unwrap())
            })
            .collect();
        let graph = PlaneGraph::new(vertex_to_old.len(), &new_edges, &rotations)
            .expect("induced embedding of a subgraph is always consistent");
        Subgraph {
            graph,
            vertex_to_old,
            vertex_from_old,
            edge_to_old: edges.to_vec(),
        }
    }

    /// Connected component labels, one per vertex, numbered from 0 in order
    /// of smallest member vertex. Returns `(labels, component_count)`.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for d in self.darts_at(v) {
                    let w = self.head(d);
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Whether the graph is connected (true for the empty graph).
    ///
    /// Face orbits are traced per component, so every component of a
    /// plane multigraph satisfies Euler's relation on its own and
    /// contributes exactly 2 to `n - m + f`. After ruling out isolated
    /// vertices this decides connectivity without any traversal.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        if self.deg.iter().any(|&d| d == 0) {
            return false;
        }
        self.n as i64 - self.m() as i64 + self.num_faces() as i64 == 2
    }
}

/// Result of [`PlaneGraph::subgraph_of_edges`].
pub struct Subgraph {
    pub graph: PlaneGraph,
    /// New vertex -> old vertex.
    pub vertex_to_old: Vec<VertexId>,
    /// Old vertex -> new vertex, if kept.
    pub vertex_from_old: Vec<Option<VertexId>>,
    /// New edge -> old edge (the `edges` argument).
    pub edge_to_old: Vec<EdgeId>,
}

/// Iterator over the darts at a vertex, clockwise.
pub struct DartsAt<'a> {
    g: &'a PlaneGraph,
    next: Option<DartId>,
    remaining: usize,
}

impl Iterator for DartsAt<'_> {
    type Item = DartId;

    fn next(&mut self) -> Option<DartId> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let d = self.next.unwrap();
        self.next = Some(self.g.rot_next(d));
        Some(d)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for DartsAt<'_> {}

/// Iterator over the darts of a face walk, in walk order.
pub struct FaceWalk<'a> {
    g: &'a PlaneGraph,
    next: DartId,
    remaining: usize,
}

impl Iterator for FaceWalk<'_> {
    type Item = DartId;

    fn next(&mut self) -> Option<DartId> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let d = self.next;
        self.next = self.g.face_next(d);
        Some(d)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for FaceWalk<'_> {}

/// Traces all face walks of a rotation system.
fn trace_faces(n: usize, tails: &[u32], rot_next: &[u32]) -> (Vec<u32>, Vec<Face>) {
    let nd = tails.len();
    let mut face_of = vec![NONE; nd];
    let mut faces = Vec::new();
    // Timestamps for counting distinct vertices per face.
    let mut stamp = vec![NONE; n];
    for start in 0..nd {
        if face_of[start] != NONE {
            continue;
        }
        let f = faces.len() as u32;
        let mut d = start;
        let mut degree = 0u32;
        let mut distinct = 0u32;
        loop {
            face_of[d] = f;
            degree += 1;
            let v = tails[d] as usize;
            if stamp[v] != f {
                stamp[v] = f;
                distinct += 1;
            }
            d = rot_next[d ^ 1] as usize;
            if d == start {
                break;
            }
        }
        faces.push(Face {
            start_dart: start as u32,
            degree,
            distinct_vertices: distinct,
        });
    }
    (face_of, faces)
}
