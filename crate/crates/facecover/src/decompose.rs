//! Connectivity decompositions of plane graphs.
//!
//! This module provides the structural preprocessing the cover construction
//! rests on: the block decomposition (2-connected components), st-orderings,
//! and face-aligned open ear decompositions in which every inner face is
//! closed by exactly one ear.

use crate::error::{Error, Result};
use crate::planegraph::{edge_of, twin, DartId, EdgeId, FaceId, PlaneGraph, VertexId};

const UNSET: u32 = u32::MAX;

/// Blocks, loops and cut vertices of a graph.
///
/// Every non-loop edge belongs to exactly one block. A bridge forms a block
/// of its own; loops belong to no block and are listed separately.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// Edge sets of the blocks, each sorted ascending.
    pub blocks: Vec<Vec<EdgeId>>,
    /// Loop edges, sorted ascending.
    pub loops: Vec<EdgeId>,
    /// Cut vertices, sorted ascending.
    pub cut_vertices: Vec<VertexId>,
}

/// Computes the block decomposition with an iterative depth-first search.
///
/// Works on any plane graph, connected or not.
pub fn blocks(g: &PlaneGraph) -> BlockDecomposition {
    let n = g.n();
    let mut loops = Vec::new();
    for e in 0..g.m() {
        if g.is_loop(e) {
            loops.push(e);
        }
    }
    let mut pre = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut skip_dart = vec![UNSET; n];
    let mut counter = 0u32;
    let mut estack: Vec<EdgeId> = Vec::new();
    let mut out_blocks: Vec<Vec<EdgeId>> = Vec::new();
    let mut is_cut = vec![false; n];

    struct Frame {
        v: u32,
        cur: u32,
        left: u32,
        /// Edge used to enter `v` (UNSET at a root).
        enter: u32,
    }

    for root in 0..n {
        if pre[root] != UNSET {
            continue;
        }
        pre[root] = counter;
        low[root] = counter;
        counter += 1;
        let mut root_children = 0usize;
        let mut stack = vec![Frame {
            v: root as u32,
            cur: g.first_dart_at(root).map_or(UNSET, |d| d as u32),
            left: g.degree(root) as u32,
            enter: UNSET,
        }];
        while let Some(f) = stack.last_mut() {
            if f.left == 0 {
                let child = f.v as usize;
                let enter = f.enter;
                stack.pop();
                if let Some(pf) = stack.last_mut() {
                    let p = pf.v as usize;
                    if low[child] < low[p] {
                        low[p] = low[child];
                    }
                    if low[child] >= pre[p] {
                        // `child`'s subtree separates at `p`: close a block.
                        let mut b = Vec::new();
                        loop {
                            let e = estack.pop().expect("entering edge is on the stack");
                            b.push(e);
                            if e as u32 == enter {
                                break;
                            }
                        }
                        b.sort_unstable();
                        out_blocks.push(b);
                        if p == root {
                            root_children += 1;
                        } else {
                            is_cut[p] = true;
                        }
                    }
                }
                continue;
            }
            let d = f.cur as usize;
            f.cur = g.rot_next(d) as u32;
            f.left -= 1;
            let v = f.v as usize;
            if skip_dart[v] != UNSET && d == skip_dart[v] as usize {
                continue;
            }
            let w = g.head(d);
            if w == v {
                continue; // loop, handled separately
            }
            let e = edge_of(d);
            if pre[w] == UNSET {
                pre[w] = counter;
                low[w] = counter;
                counter += 1;
                skip_dart[w] = twin(d) as u32;
                estack.push(e);
                stack.push(Frame {
                    v: w as u32,
                    cur: twin(d) as u32,
                    left: g.degree(w) as u32,
                    enter: e as u32,
                });
            } else if pre[w] < pre[v] {
                estack.push(e);
                if pre[w] < low[v] {
                    low[v] = pre[w];
                }
            }
            // pre[w] > pre[v]: the edge was already pushed from the other side.
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
        // Reset for the next component; skip darts are per-tree.
        debug_assert!(estack.is_empty());
    }
    let cut_vertices = (0..n).filter(|&v| is_cut[v]).collect();
    out_blocks.sort_by_key(|b| b[0]);
    BlockDecomposition {
        blocks: out_blocks,
        loops,
        cut_vertices,
    }
}

/// Whether `g` is 2-connected: connected, at least three vertices, no loops
/// and no cut vertex.
pub fn is_biconnected(g: &PlaneGraph) -> bool {
    if g.n() < 3 || !g.is_connected() {
        return false;
    }
    let b = blocks(g);
    b.loops.is_empty() && b.blocks.len() == 1
}

/// An st-ordering of the vertices.
#[derive(Debug, Clone)]
pub struct StOrder {
    pub s: VertexId,
    pub t: VertexId,
    /// Vertex -> position; `pos[s] == 0`, `pos[t] == n - 1`.
    pub pos: Vec<usize>,
    /// Position -> vertex.
    pub order: Vec<VertexId>,
}

/// Computes an st-ordering with respect to edge `eref = (s, t)`.
///
/// In the output every vertex other than `s` and `t` has both a neighbor
/// with a smaller position and one with a larger position. Orienting each
/// edge from its lower endpoint to its higher one therefore gives an acyclic
/// orientation with unique source `s` and unique sink `t`.
///
/// The graph must be connected, loop-free and without cut vertices; `n = 2`
/// is allowed. This is the depth-first variant that inserts each vertex next
/// to its parent, on the side recorded by a sign bit at its lowpoint.
pub fn st_order(g: &PlaneGraph, eref: EdgeId) -> Result<StOrder> {
    let n = g.n();
    let (s, t) = g.endpoints(eref);
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    for e in 0..g.m() {
        if g.is_loop(e) {
            return Err(Error::HasLoop(e));
        }
    }

    // Depth-first search from s entering t first, collecting preorder,
    // parents and lowpoint vertices, and rejecting cut vertices on the way.
    let mut pre = vec![UNSET; n];
    let mut parent = vec![UNSET; n];
    let mut low_v: Vec<u32> = (0..n as u32).collect();
    let mut skip_dart = vec![UNSET; n];
    let mut preorder: Vec<u32> = Vec::with_capacity(n);
    let mut counter = 0u32;
    pre[s] = counter;
    counter += 1;
    preorder.push(s as u32);
    let mut root_children = 0usize;

    struct Frame {
        v: u32,
        cur: u32,
        left: u32,
    }
    let mut stack = vec![Frame {
        v: s as u32,
        cur: 2 * eref as u32,
        left: g.degree(s) as u32,
    }];
    while let Some(f) = stack.last_mut() {
        if f.left == 0 {
            let c = f.v as usize;
            stack.pop();
            if let Some(pf) = stack.last() {
                let p = pf.v as usize;
                if p == s {
                    root_children += 1;
                } else if pre[low_v[c] as usize] >= pre[p] {
                    return Err(Error::NotBiconnected(format!("cut vertex {p}")));
                }
                if pre[low_v[c] as usize] < pre[low_v[p] as usize] {
                    low_v[p] = low_v[c];
                }
            }
            continue;
        }
        let d = f.cur as usize;
        f.cur = g.rot_next(d) as u32;
        f.left -= 1;
        let v = f.v as usize;
        if skip_dart[v] != UNSET && d == skip_dart[v] as usize {
            continue;
        }
        let w = g.head(d);
        if pre[w] == UNSET {
            pre[w] = counter;
            counter += 1;
            preorder.push(w as u32);
            parent[w] = v as u32;
            skip_dart[w] = twin(d) as u32;
            stack.push(Frame {
                v: w as u32,
                cur: twin(d) as u32,
                left: g.degree(w) as u32,
            });
        } else if pre[w] < pre[v] && pre[w] < pre[low_v[v] as usize] {
            low_v[v] = w as u32;
        }
    }
    if (counter as usize) < n {
        let (_, c) = g.components();
        return Err(Error::Disconnected { components: c });
    }
    if root_children != 1 {
        return Err(Error::NotBiconnected(format!("cut vertex {s}")));
    }
    debug_assert_eq!(preorder[1] as usize, t);

    // Insert each vertex next to its parent in a doubly linked list. The
    // sign bit at the lowpoint decides the side, so that the subtree ends up
    // strictly between the lowpoint and the parent.
    let mut next = vec![UNSET; n];
    let mut prev = vec![UNSET; n];
    let mut head = s as u32;
    next[s] = t as u32;
    prev[t] = s as u32;
    const MINUS: i8 = -1;
    const PLUS: i8 = 1;
    let mut sign = vec![0i8; n];
    sign[s] = MINUS;
    for &vu in preorder.iter() {
        let v = vu as usize;
        if v == s || v == t {
            continue;
        }
        let p = parent[v] as usize;
        let lv = low_v[v] as usize;
        if sign[lv] == PLUS {
            // insert v after p
            let nx = next[p];
            next[p] = v as u32;
            prev[v] = p as u32;
            next[v] = nx;
            if nx != UNSET {
                prev[nx as usize] = v as u32;
            }
            sign[p] = MINUS;
        } else {
            // insert v before p
            let pv = prev[p];
            prev[p] = v as u32;
            next[v] = p as u32;
            prev[v] = pv;
            if pv != UNSET {
                next[pv as usize] = v as u32;
            } else {
                head = v as u32;
            }
            sign[p] = PLUS;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut pos = vec![0usize; n];
    let mut cur = head;
    while cur != UNSET {
        pos[cur as usize] = order.len();
        order.push(cur as usize);
        cur = next[cur as usize];
    }
    if order.len() != n || order[0] != s || order[n - 1] != t {
        return Err(Error::InvariantViolation(
            "st-ordering construction produced a broken list".into(),
        ));
    }
    Ok(StOrder { s, t, pos, order })
}

/// Checks that `pos` is a valid st-ordering for `eref`: `s` first, `t` last,
/// a permutation of `0..n`, and every other vertex has a neighbor on each
/// side.
pub fn validate_st_order(g: &PlaneGraph, eref: EdgeId, pos: &[usize]) -> Result<()> {
    let n = g.n();
    let (s, t) = g.endpoints(eref);
    if pos.len() != n {
        return Err(Error::InvariantViolation("position array has wrong length".into()));
    }
    let mut seen = vec![false; n];
    for &p in pos {
        if p >= n || seen[p] {
            return Err(Error::InvariantViolation("positions are not a permutation".into()));
        }
        seen[p] = true;
    }
    if pos[s] != 0 {
        return Err(Error::InvariantViolation(format!("s = {s} is not first")));
    }
    if pos[t] != n - 1 {
        return Err(Error::InvariantViolation(format!("t = {t} is not last")));
    }
    for v in 0..n {
        if v == s || v == t {
            continue;
        }
        let mut earlier = false;
        let mut later = false;
        for w in g.neighbors(v) {
            if pos[w] < pos[v] {
                earlier = true;
            }
            if pos[w] > pos[v] {
                later = true;
            }
        }
        if !(earlier && later) {
            return Err(Error::InvariantViolation(format!(
                "vertex {v} lacks a neighbor on one side"
            )));
        }
    }
    Ok(())
}

/// One ear: the fresh part of the boundary of the face it closes.
#[derive(Debug, Clone)]
pub struct Ear {
    /// The face this ear closes.
    pub face: FaceId,
    /// Fresh darts, consecutive in the walk of `face`.
    pub ear_darts: Vec<DartId>,
    /// Previously built darts, completing the walk of `face` after
    /// `ear_darts`.
    pub base_darts: Vec<DartId>,
}

impl Ear {
    /// Vertices along the ear, endpoints included. Interior vertices are
    /// fresh when the ear is attached.
    pub fn path_vertices(&self, g: &PlaneGraph) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.ear_darts.iter().map(|&d| g.tail(d)).collect();
        vs.push(g.head(*self.ear_darts.last().expect("ears are nonempty")));
        vs
    }

    /// Vertices along the previously built part of the face, from the ear's
    /// far endpoint back to its near one.
    pub fn base_vertices(&self, g: &PlaneGraph) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.base_darts.iter().map(|&d| g.tail(d)).collect();
        vs.push(g.head(*self.base_darts.last().expect("bases are nonempty")));
        vs
    }
}

/// A face-aligned open ear decomposition.
///
/// Building starts from the reference edge alone; the first ear closes
/// `second_face` (the other face of the reference edge), and every further
/// ear closes exactly one more face. The chosen `outer_face` is never
/// closed. Ear `i` together with its `base_darts` walks its face completely.
#[derive(Debug, Clone)]
pub struct EarDecomposition {
    pub reference_edge: EdgeId,
    pub s: VertexId,
    pub t: VertexId,
    pub outer_face: FaceId,
    pub second_face: FaceId,
    pub ears: Vec<Ear>,
}

/// Computes a face-aligned ear decomposition of a 2-connected, loop-free
/// plane graph.
///
/// `outer` must be one of the two faces of `eref`. Faces are processed in a
/// topological order of the dual orientation induced by an st-ordering of
/// `eref`, which guarantees that the fresh edges of every face form a single
/// path with fresh interior vertices.
pub fn ear_decomposition(
    g: &PlaneGraph,
    eref: EdgeId,
    outer: FaceId,
) -> Result<EarDecomposition> {
    let (s, t) = g.endpoints(eref);
    let (d0, d1) = (2 * eref, 2 * eref + 1);
    if g.face_of(d0) != outer && g.face_of(d1) != outer {
        return Err(Error::EdgeNotOnFace {
            edge: eref,
            face: outer,
        });
    }
    if g.m() == 1 {
        // A single edge has one face and nothing to build.
        return Ok(EarDecomposition {
            reference_edge: eref,
            s,
            t,
            outer_face: outer,
            second_face: outer,
            ears: Vec::new(),
        });
    }
    let second_face = if g.face_of(d0) == outer {
        g.face_of(d1)
    } else {
        g.face_of(d0)
    };
    if second_face == outer {
        return Err(Error::NotBiconnected(format!("edge {eref} is a bridge")));
    }
    let st = st_order(g, eref)?;

    // Dual orientation: every edge, oriented from its lower to its higher
    // endpoint, separates the face processed earlier from the one processed
    // later. Which side comes first is a global handedness; the correct one
    // is the one that makes the outer face the sink.
    let nf = g.num_faces();
    let mut arcs: Vec<(u32, u32)> = Vec::with_capacity(g.m() - 1);
    for e in 0..g.m() {
        if e == eref {
            continue;
        }
        let (u, v) = g.endpoints(e);
        let fd = if st.pos[u] < st.pos[v] { 2 * e } else { 2 * e + 1 };
        arcs.push((g.face_of(fd) as u32, g.face_of(twin(fd)) as u32));
    }
    let out_a = arcs.iter().filter(|&&(f, _)| f as usize == outer).count();
    let out_b = arcs.iter().filter(|&&(_, f)| f as usize == outer).count();
    if out_a > 0 && out_b > 0 {
        return Err(Error::InvariantViolation(
            "outer face is neither source nor sink of the dual orientation".into(),
        ));
    }
    if out_a > 0 {
        for a in arcs.iter_mut() {
            *a = (a.1, a.0);
        }
    }

    let mut indeg = vec![0u32; nf];
    let mut adj_start = vec![0u32; nf + 1];
    for &(f, _) in &arcs {
        adj_start[f as usize + 1] += 1;
    }
    for i in 0..nf {
        adj_start[i + 1] += adj_start[i];
    }
    let mut adj = vec![0u32; arcs.len()];
    let mut fill = adj_start.clone();
    for &(f, g_) in &arcs {
        adj[fill[f as usize] as usize] = g_;
        fill[f as usize] += 1;
        indeg[g_ as usize] += 1;
    }
    let mut queue = std::collections::VecDeque::new();
    for f in 0..nf {
        if f != outer && indeg[f] == 0 {
            queue.push_back(f);
        }
    }
    if queue.len() != 1 || queue[0] != second_face {
        return Err(Error::InvariantViolation(
            "second face is not the unique source of the dual orientation".into(),
        ));
    }

    let mut built_edge = vec![false; g.m()];
    let mut built_vertex = vec![false; g.n()];
    built_edge[eref] = true;
    built_vertex[s] = true;
    built_vertex[t] = true;
    let mut ears = Vec::with_capacity(nf - 1);
    while let Some(f) = queue.pop_front() {
        let walk: Vec<DartId> = g.face_walk(f).collect();
        let deg = walk.len();
        // The fresh edges must form one contiguous arc of the walk.
        let mut start = usize::MAX;
        let mut fresh = 0usize;
        for i in 0..deg {
            let new_i = !built_edge[edge_of(walk[i])];
            let new_p = !built_edge[edge_of(walk[(i + deg - 1) % deg])];
            if new_i {
                fresh += 1;
                if !new_p {
                    if start != usize::MAX {
                        return Err(Error::InvariantViolation(format!(
                            "fresh edges of face {f} are not contiguous"
                        )));
                    }
                    start = i;
                }
            }
        }
        if fresh == 0 || fresh == deg {
            return Err(Error::InvariantViolation(format!(
                "face {f} has no base or no fresh part"
            )));
        }
        let ear_darts: Vec<DartId> = (0..fresh).map(|i| walk[(start + i) % deg]).collect();
        let base_darts: Vec<DartId> =
            (fresh..deg).map(|i| walk[(start + i) % deg]).collect();
        let a = g.tail(ear_darts[0]);
        let b = g.head(*ear_darts.last().unwrap());
        if !built_vertex[a] || !built_vertex[b] {
            return Err(Error::InvariantViolation(format!(
                "ear endpoints of face {f} are not built yet"
            )));
        }
        for i in 1..ear_darts.len() {
            let x = g.tail(ear_darts[i]);
            if built_vertex[x] {
                return Err(Error::InvariantViolation(format!(
                    "interior ear vertex {x} of face {f} is already built"
                )));
            }
            built_vertex[x] = true;
        }
        for &d in &ear_darts {
            built_edge[edge_of(d)] = true;
        }
        ears.push(Ear {
            face: f,
            ear_darts,
            base_darts,
        });
        let (lo, hi) = (adj_start[f] as usize, adj_start[f + 1] as usize);
        for &gf in &adj[lo..hi] {
            let gf = gf as usize;
            indeg[gf] -= 1;
            if indeg[gf] == 0 && gf != outer {
                queue.push_back(gf);
            }
        }
    }
    if ears.len() != nf - 1 {
        return Err(Error::InvariantViolation(format!(
            "processed {} of {} inner faces",
            ears.len(),
            nf - 1
        )));
    }
    Ok(EarDecomposition {
        reference_edge: eref,
        s,
        t,
        outer_face: outer,
        second_face,
        ears,
    })
}

/// Re-checks an ear decomposition from scratch.
///
/// Verifies that the ears partition the edges, that each ear is a path with
/// fresh interior vertices and previously built endpoints, that ear and base
/// darts together walk the closed face, and (on graphs small enough for the
/// quadratic check) that after each ear the built subgraph really has the
/// closed faces among its faces.
pub fn validate_ear_decomposition(g: &PlaneGraph, ed: &EarDecomposition) -> Result<()> {
    let fail = |msg: String| Err(Error::InvariantViolation(msg));
    let (s, t) = g.endpoints(ed.reference_edge);
    if (s, t) != (ed.s, ed.t) {
        return fail("stored endpoints disagree with the reference edge".into());
    }
    if g.m() == 1 {
        return if ed.ears.is_empty() {
            Ok(())
        } else {
            fail("single edge admits no ears".into())
        };
    }
    if ed.ears.len() != g.num_faces() - 1 {
        return fail("wrong number of ears".into());
    }
    let mut face_seen = vec![false; g.num_faces()];
    face_seen[ed.outer_face] = true;
    let mut built_edge = vec![false; g.m()];
    let mut built_vertex = vec![false; g.n()];
    built_edge[ed.reference_edge] = true;
    built_vertex[s] = true;
    built_vertex[t] = true;
    let small = g.m() <= 2000;
    let mut built_list = vec![ed.reference_edge];
    for (i, ear) in ed.ears.iter().enumerate() {
        if i == 0 && ear.face != ed.second_face {
            return fail("first ear does not close the second face".into());
        }
        if face_seen[ear.face] {
            return fail(format!("face {} closed twice", ear.face));
        }
        face_seen[ear.face] = true;
        if ear.ear_darts.is_empty() || ear.base_darts.is_empty() {
            return fail(format!("ear {i} has an empty part"));
        }
        // Ear darts followed by base darts must walk the face.
        let walk: Vec<DartId> = ear
            .ear_darts
            .iter()
            .chain(ear.base_darts.iter())
            .copied()
            .collect();
        if walk.len() != g.face_degree(ear.face) {
            return fail(format!("ear {i} does not cover its face walk"));
        }
        for j in 0..walk.len() {
            if g.face_of(walk[j]) != ear.face {
                return fail(format!("ear {i} contains a dart of another face"));
            }
            if g.face_next(walk[j]) != walk[(j + 1) % walk.len()] {
                return fail(format!("ear {i} darts are not in walk order"));
            }
        }
        let a = g.tail(ear.ear_darts[0]);
        let b = g.head(*ear.ear_darts.last().unwrap());
        if !built_vertex[a] || !built_vertex[b] {
            return fail(format!("ear {i} endpoint not built"));
        }
        for &d in &ear.base_darts {
            if !built_edge[edge_of(d)] {
                return fail(format!("ear {i} base contains an unbuilt edge"));
            }
        }
        for (j, &d) in ear.ear_darts.iter().enumerate() {
            if j > 0 {
                let x = g.tail(d);
                if built_vertex[x] {
                    return fail(format!("ear {i} interior vertex {x} not fresh"));
                }
                built_vertex[x] = true;
            }
            let e = edge_of(d);
            if built_edge[e] {
                return fail(format!("ear {i} edge {e} already built"));
            }
            built_edge[e] = true;
            built_list.push(e);
        }
        if small {
            // The built subgraph must exhibit every closed face as one of
            // its own faces, with identical walks.
            let sub = g.subgraph_of_edges(&built_list, true);
            let h = &sub.graph;
            let mapped = |old: DartId| -> DartId {
                let k = built_list.iter().position(|&e| e == edge_of(old)).unwrap();
                2 * k + (old & 1)
            };
            for (j, done) in face_seen.iter().enumerate() {
                if !done || j == ed.outer_face {
                    continue;
                }
                let wd: Vec<DartId> = g.face_walk(j).map(mapped).collect();
                let hf = h.face_of(wd[0]);
                if h.face_degree(hf) != wd.len() {
                    return fail(format!("closed face {j} is not a face of the partial graph"));
                }
                for &d in &wd {
                    if h.face_of(d) != hf {
                        return fail(format!("closed face {j} is split in the partial graph"));
                    }
                }
            }
        }
    }
    if let Some(e) = built_edge.iter().position(|&x| !x) {
        return fail(format!("edge {e} is in no ear"));
    }
    if let Some(v) = built_vertex.iter().position(|&x| !x) {
        return fail(format!("vertex {v} is on no ear"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_with_pendant() -> PlaneGraph {
        // Triangle 0-1-2 plus edge (2,3).
        PlaneGraph::new(
            4,
            &[(0, 1), (1, 2), (2, 0), (2, 3)],
            &[vec![0, 5], vec![1, 2], vec![3, 6, 4], vec![7]],
        )
        .unwrap()
    }

    fn k4() -> PlaneGraph {
        PlaneGraph::from_face_vertex_walks(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![2, 1, 3]],
        )
        .unwrap()
    }

    fn diamond() -> PlaneGraph {
        // Edge (0,1) plus two parallel paths 0-2-1 and 0-3-1.
        PlaneGraph::from_face_vertex_walks(
            4,
            &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)],
            &[vec![0, 1, 2], vec![0, 2, 1, 3], vec![0, 3, 1]],
        )
        .unwrap()
    }

    #[test]
    fn blocks_of_triangle_with_pendant() {
        let g = triangle_with_pendant();
        let b = blocks(&g);
        assert_eq!(b.blocks, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(b.cut_vertices, vec![2]);
        assert!(b.loops.is_empty());
        assert!(!is_biconnected(&g));
    }

    #[test]
    fn blocks_of_figure_eight() {
        // Two triangles sharing vertex 0.
        let g = PlaneGraph::new(
            5,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)],
            &[
                vec![0, 5, 6, 11],
                vec![1, 2],
                vec![3, 4],
                vec![7, 8],
                vec![9, 10],
            ],
        )
        .unwrap();
        let b = blocks(&g);
        assert_eq!(b.blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(b.cut_vertices, vec![0]);
    }

    #[test]
    fn blocks_separate_loops() {
        // Triangle with a loop at vertex 1.
        let g = PlaneGraph::new(
            3,
            &[(0, 1), (1, 2), (2, 0), (1, 1)],
            &[vec![0, 5], vec![1, 6, 7, 2], vec![3, 4]],
        )
        .unwrap();
        let b = blocks(&g);
        assert_eq!(b.blocks, vec![vec![0, 1, 2]]);
        assert_eq!(b.loops, vec![3]);
        assert!(b.cut_vertices.is_empty());
    }

    #[test]
    fn blocks_of_a_path() {
        let g = PlaneGraph::new(
            3,
            &[(0, 1), (1, 2)],
            &[vec![0], vec![1, 2], vec![3]],
        )
        .unwrap();
        let b = blocks(&g);
        assert_eq!(b.blocks, vec![vec![0], vec![1]]);
        assert_eq!(b.cut_vertices, vec![1]);
    }

    #[test]
    fn biconnectivity_judgement()
    {
        assert!(is_biconnected(&k4()));
        assert!(is_biconnected(&diamond()));
        assert!(!is_biconnected(&triangle_with_pendant()));
    }

    #[test]
    fn st_order_on_small_graphs() {
        for g in [k4(), diamond()] {
            for eref in 0..g.m() {
                let st = st_order(&g, eref).unwrap();
                validate_st_order(&g, eref, &st.pos).unwrap();
                assert_eq!(st.order[0], st.s);
                assert_eq!(st.order[g.n() - 1], st.t);
            }
        }
    }

    #[test]
    fn st_order_on_parallel_pair() {
        let g = PlaneGraph::new(2, &[(0, 1), (0, 1)], &[vec![0, 2], vec![1, 3]]).unwrap();
        let st = st_order(&g, 0).unwrap();
        validate_st_order(&g, 0, &st.pos).unwrap();
    }

    #[test]
    fn st_order_rejects_bad_inputs() {
        let g = triangle_with_pendant();
        assert!(matches!(st_order(&g, 0), Err(Error::NotBiconnected(_))));
        let g = PlaneGraph::new(
            3,
            &[(0, 1), (1, 2), (2, 0), (1, 1)],
            &[vec![0, 5], vec![1, 6, 7, 2], vec![3, 4]],
        )
        .unwrap();
        assert!(matches!(st_order(&g, 0), Err(Error::HasLoop(3))));
        let g = PlaneGraph::new(1, &[(0, 0)], &[vec![0, 1]]).unwrap();
        assert!(matches!(st_order(&g, 0), Err(Error::TooSmall(1))));
    }

    #[test]
    fn ears_of_k4_from_every_edge_and_side() {
        let g = k4();
        for eref in 0..g.m() {
            for side in [2 * eref, 2 * eref + 1] {
                let outer = g.face_of(side);
                let ed = ear_decomposition(&g, eref, outer).unwrap();
                assert_eq!(ed.ears.len(), g.num_faces() - 1);
                validate_ear_decomposition(&g, &ed).unwrap();
            }
        }
    }

    #[test]
    fn ears_of_diamond() {
        let g = diamond();
        for eref in 0..g.m() {
            let outer = g.face_of(2 * eref);
            let ed = ear_decomposition(&g, eref, outer).unwrap();
            validate_ear_decomposition(&g, &ed).unwrap();
        }
    }

    #[test]
    fn ears_allow_parallel_edges_and_bigons() {
        // Triangle 0-1-2 with a doubled edge (0,1): one bigon face.
        let g = PlaneGraph::from_faces(
            3,
            &[(0, 1), (1, 2), (2, 0), (0, 1)],
            &[vec![0, 2, 4], vec![6, 1], vec![7, 5, 3]],
        )
        .unwrap();
        assert_eq!(g.num_faces(), 3);
        for eref in 0..g.m() {
            let outer = g.face_of(2 * eref + 1);
            let ed = ear_decomposition(&g, eref, outer).unwrap();
            validate_ear_decomposition(&g, &ed).unwrap();
        }
    }

    #[test]
    fn ears_reject_wrong_outer_face() {
        let g = k4();
        // Face not incident to edge 0: the face of dart 2*5 or its twin that
        // avoids vertices 0 and 1 entirely. Find one.
        let bad = (0..g.num_faces())
            .find(|&f| !g.face_contains_edge(f, 0))
            .unwrap();
        assert!(matches!(
            ear_decomposition(&g, 0, bad),
            Err(Error::EdgeNotOnFace { .. })
        ));
    }

    #[test]
    fn single_edge_has_empty_decomposition() {
        let g = PlaneGraph::new(2, &[(0, 1)], &[vec![0], vec![1]]).unwrap();
        let ed = ear_decomposition(&g, 0, 0).unwrap();
        assert!(ed.ears.is_empty());
        validate_ear_decomposition(&g, &ed).unwrap();
    }

    #[test]
    fn ear_paths_and_bases_line_up() {
        let g = k4();
        let outer = g.face_of(0);
        let ed = ear_decomposition(&g, 0, outer).unwrap();
        for ear in &ed.ears {
            let p = ear.path_vertices(&g);
            let b = ear.base_vertices(&g);
            // The base walks from the ear's far endpoint back to its start.
            assert_eq!(p[0], *b.last().unwrap());
            assert_eq!(*p.last().unwrap(), b[0]);
            assert_eq!(p.len() + b.len() - 2, g.face_degree(ear.face));
        }
    }
}
