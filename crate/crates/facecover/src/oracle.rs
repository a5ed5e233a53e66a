//! Reference checks and named test instances.
//!
//! Everything here is deliberately simple and independent of the main
//! construction: straight-line definitions of the properties the library
//! promises (domination, face hitting, edge covering, bipartiteness) plus a
//! brute-force partition search for tiny graphs. Tests compare fast
//! implementations against these.

use crate::augment::EarSnapshot;
use crate::planegraph::{edge_of, EdgeId, FaceId, PlaneGraph, VertexId};

/// Hand-built plane graphs with verified embeddings.
pub mod instances {
    use crate::planegraph::{DartId, PlaneGraph};

    /// Triangle with its two faces.
    pub fn triangle() -> PlaneGraph {
        PlaneGraph::from_face_vertex_walks(
            3,
            &[(0, 1), (1, 2), (2, 0)],
            &[vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap()
    }

    /// Complete graph on 4 vertices, a triangulation of the sphere.
    pub fn k4() -> PlaneGraph {
        PlaneGraph::from_face_vertex_walks(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![2, 1, 3]],
        )
        .unwrap()
    }

    /// Cycle on `n >= 3` vertices with its two faces.
    pub fn cycle(n: usize) -> PlaneGraph {
        assert!(n >= 3);
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let inner: Vec<usize> = (0..n).collect();
        let outer: Vec<usize> = std::iter::once(0).chain((1..n).rev()).collect();
        PlaneGraph::from_face_vertex_walks(n, &edges, &[inner, outer]).unwrap()
    }

    /// Two degree-3 vertices joined by three paths of length 2; all three
    /// faces are squares.
    pub fn theta() -> PlaneGraph {
        PlaneGraph::from_face_vertex_walks(
            5,
            &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)],
            &[vec![0, 2, 1, 3], vec![0, 3, 1, 4], vec![0, 4, 1, 2]],
        )
        .unwrap()
    }

    /// `k`-gonal prism: cubic, `2k` vertices, two `k`-gon faces and `k`
    /// squares.
    pub fn prism(k: usize) -> PlaneGraph {
        assert!(k >= 3);
        let mut edges = Vec::with_capacity(3 * k);
        for i in 0..k {
            edges.push((i, (i + 1) % k));
        }
        for i in 0..k {
            edges.push((k + i, k + (i + 1) % k));
        }
        for i in 0..k {
            edges.push((i, k + i));
        }
        let mut walks = Vec::with_capacity(k + 2);
        walks.push((0..k).collect::<Vec<_>>());
        for i in 0..k {
            walks.push(vec![i, k + i, k + (i + 1) % k, (i + 1) % k]);
        }
        walks.push((k..2 * k).rev().collect());
        PlaneGraph::from_face_vertex_walks(2 * k, &edges, &walks).unwrap()
    }

    /// The cube, as the 4-gonal prism.
    pub fn cube() -> PlaneGraph {
        prism(4)
    }

    /// The octahedron, a triangulation whose dual is the cube.
    pub fn octahedron() -> PlaneGraph {
        PlaneGraph::from_face_vertex_walks(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 1),
                (5, 1),
                (5, 2),
                (5, 3),
                (5, 4),
            ],
            &[
                vec![0, 1, 2],
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 4, 1],
                vec![5, 2, 1],
                vec![5, 3, 2],
                vec![5, 4, 3],
                vec![5, 1, 4],
            ],
        )
        .unwrap()
    }

    /// Eight vertices, ten edges, four pentagon faces; has degree-2
    /// vertices but is not a cycle.
    pub fn four_pentagons() -> PlaneGraph {
        PlaneGraph::from_face_vertex_walks(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (5, 6),
                (6, 2),
                (3, 7),
                (7, 5),
            ],
            &[
                vec![0, 1, 2, 6, 5],
                vec![2, 3, 7, 5, 6],
                vec![3, 4, 0, 5, 7],
                vec![0, 4, 3, 2, 1],
            ],
        )
        .unwrap()
    }

    /// The dodecahedron: cubic, 20 vertices, 12 pentagon faces. Vertices
    /// `0..5` form the outer ring, `15..20` the inner ring.
    pub fn dodecahedron() -> PlaneGraph {
        let a = |i: usize| i % 5;
        let b = |i: usize| 5 + i % 5;
        let c = |i: usize| 10 + i % 5;
        let d = |i: usize| 15 + i % 5;
        let mut edges = Vec::with_capacity(30);
        for i in 0..5 {
            edges.push((a(i), a(i + 1)));
        }
        for i in 0..5 {
            edges.push((a(i), b(i)));
        }
        for i in 0..5 {
            edges.push((b(i), c(i)));
        }
        for i in 0..5 {
            edges.push((b(i + 1), c(i)));
        }
        for i in 0..5 {
            edges.push((c(i), d(i)));
        }
        for i in 0..5 {
            edges.push((d(i), d(i + 1)));
        }
        let mut walks = Vec::with_capacity(12);
        walks.push(vec![a(0), a(1), a(2), a(3), a(4)]);
        for i in 0..5 {
            walks.push(vec![a(i + 1), a(i), b(i), c(i), b(i + 1)]);
        }
        for i in 0..5 {
            walks.push(vec![d(i), d(i + 1), c(i + 1), b(i + 1), c(i)]);
        }
        walks.push(vec![d(4), d(3), d(2), d(1), d(0)]);
        PlaneGraph::from_face_vertex_walks(20, &edges, &walks).unwrap()
    }

    /// Two vertices joined by three parallel edges: the smallest bridgeless
    /// cubic plane multigraph. Its three faces are bigons.
    pub fn triple_edge() -> PlaneGraph {
        PlaneGraph::new(
            2,
            &[(0, 1), (0, 1), (0, 1)],
            &[vec![0, 2, 4], vec![1, 5, 3]],
        )
        .unwrap()
    }

    /// Two disjoint triple-edge components.
    pub fn two_triple_edges() -> PlaneGraph {
        PlaneGraph::new(
            4,
            &[(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)],
            &[
                vec![0, 2, 4],
                vec![1, 5, 3],
                vec![6, 8, 10],
                vec![7, 11, 9],
            ],
        )
        .unwrap()
    }

    /// Cubic plane multigraph whose middle edge (id 4) is a bridge: two
    /// lobes of a triangle with one doubled side, joined by one edge.
    pub fn bridged_cubic() -> PlaneGraph {
        PlaneGraph::from_faces(
            6,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 2),
                (0, 3),
                (3, 4),
                (3, 5),
                (4, 5),
                (4, 5),
            ],
            &[
                vec![0, 4, 3],
                vec![6, 5],
                vec![10, 14, 13],
                vec![16, 15],
                vec![2, 7, 1, 8, 12, 17, 11, 9],
            ],
        )
        .unwrap()
    }

    /// Replaces every edge by two parallel copies bounding a fresh
    /// degree-2 face. Copy `m + e` runs alongside edge `e`: in the tail's
    /// rotation it sits just before the original dart, in the head's just
    /// after, which closes a bigon between the pair. The host must be
    /// loop free. The result has one bigon per original edge and keeps
    /// one face per original face.
    pub fn doubled(g: &PlaneGraph) -> PlaneGraph {
        let m = g.m();
        let mut edges: Vec<(usize, usize)> = (0..m).map(|e| g.endpoints(e)).collect();
        for e in 0..m {
            assert!(!g.is_loop(e), "doubling needs a loop-free host");
            edges.push(g.endpoints(e));
        }
        // copy edge m + e has darts 2m + 2e and 2m + 2e + 1, so the copy
        // of dart d is 2m + d with the same tail
        let rotations: Vec<Vec<DartId>> = (0..g.n())
            .map(|v| {
                g.darts_at(v)
                    .flat_map(|d| {
                        let copy = 2 * m + d;
                        if d & 1 == 0 {
                            [copy, d]
                        } else {
                            [d, copy]
                        }
                    })
                    .collect()
            })
            .collect();
        PlaneGraph::new(g.n(), &edges, &rotations).unwrap()
    }

    /// Chain of `n / 4` doubled-K4 blocks joined by bridge edges, so `n`
    /// must be a positive multiple of 4. Every non-bridge edge lies on a
    /// bigon and the bridges are blocks of their own.
    pub fn k4_bigons(n: usize) -> PlaneGraph {
        assert!(n >= 4 && n % 4 == 0, "need a positive multiple of 4");
        let block = doubled(&k4());
        let k = n / 4;
        let mut edges = Vec::with_capacity(12 * k + k - 1);
        let mut rot: Vec<Vec<DartId>> = Vec::with_capacity(n);
        for i in 0..k {
            let eoff = edges.len();
            for e in 0..block.m() {
                let (u, v) = block.endpoints(e);
                edges.push((u + 4 * i, v + 4 * i));
            }
            for v in 0..4 {
                rot.push(block.darts_at(v).map(|d| d + 2 * eoff).collect());
            }
        }
        // a bridge may enter any rotation corner of two disjoint pieces;
        // the far piece hangs inside whatever face holds the corner
        for i in 0..k - 1 {
            let e = edges.len();
            let (a, b) = (4 * i + 3, 4 * (i + 1));
            edges.push((a, b));
            rot[a].push(2 * e);
            rot[b].push(2 * e + 1);
        }
        PlaneGraph::new(n, &edges, &rot).unwrap()
    }

    /// Chain of `k >= 1` triangles where consecutive triangles share a
    /// cut vertex: triangle `i` uses vertices `2i, 2i+1, 2i+2`. With
    /// `k = 2` this is the bowtie.
    pub fn block_chain(k: usize) -> PlaneGraph {
        assert!(k >= 1);
        let tri = triangle();
        let mut edges = Vec::with_capacity(3 * k);
        let mut rot: Vec<Vec<DartId>> = vec![Vec::new(); 2 * k + 1];
        for i in 0..k {
            let eoff = edges.len();
            for e in 0..3 {
                let (u, v) = tri.endpoints(e);
                edges.push((u + 2 * i, v + 2 * i));
            }
            for v in 0..3 {
                rot[v + 2 * i].extend(tri.darts_at(v).map(|d| d + 2 * eoff));
            }
        }
        PlaneGraph::new(2 * k + 1, &edges, &rot).unwrap()
    }

    /// Triangle with `k >= 1` loops attached side by side at vertex 0.
    /// Each loop closes a face of degree 1.
    pub fn looped_triangle(k: usize) -> PlaneGraph {
        assert!(k >= 1);
        let tri = triangle();
        let mut edges = vec![(0usize, 1), (1, 2), (2, 0)];
        let mut rot: Vec<Vec<DartId>> = (0..3).map(|v| tri.darts_at(v).collect()).collect();
        for _ in 0..k {
            let e = edges.len();
            edges.push((0, 0));
            rot[0].push(2 * e);
            rot[0].push(2 * e + 1);
        }
        PlaneGraph::new(3, &edges, &rot).unwrap()
    }

    /// Triangle whose side between vertices 0 and 1 is tripled: copies
    /// `0, 1, 2` of that side form a run bounding two nested bigons, and
    /// the outermost copies each lie on a triangular face with the two
    /// spoke edges `3` and `4`.
    pub fn tripled_side_triangle() -> PlaneGraph {
        PlaneGraph::new(
            3,
            &[(0, 1), (0, 1), (0, 1), (1, 2), (2, 0)],
            &[vec![0, 2, 4, 9], vec![6, 5, 3, 1], vec![7, 8]],
        )
        .unwrap()
    }

    /// Chain of unlike pieces sharing cut vertices and bridges: a
    /// triangle, a bridge, a doubled edge, another triangle, a loop and a
    /// pendant edge. Exercises every block shape at once.
    pub fn motley_chain() -> PlaneGraph {
        PlaneGraph::new(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 4),
                (6, 6),
                (6, 7),
            ],
            &[
                vec![0, 5],
                vec![1, 2],
                vec![3, 4, 6],
                vec![7, 10, 8],
                vec![9, 11, 12, 17],
                vec![13, 14],
                vec![15, 16, 18, 19, 20],
                vec![21],
            ],
        )
        .unwrap()
    }

    /// Renames vertex `v` to `perm[v]`, keeping edge ids, dart ids and all
    /// rotation orders. The embedding is unchanged up to labels.
    pub fn relabel(g: &PlaneGraph, perm: &[usize]) -> PlaneGraph {
        assert_eq!(perm.len(), g.n());
        let mut inv = vec![usize::MAX; g.n()];
        for (v, &w) in perm.iter().enumerate() {
            assert!(w < g.n() && inv[w] == usize::MAX, "not a permutation");
            inv[w] = v;
        }
        let edges: Vec<(usize, usize)> = (0..g.m())
            .map(|e| {
                let (u, v) = g.endpoints(e);
                (perm[u], perm[v])
            })
            .collect();
        let rotations: Vec<Vec<DartId>> = (0..g.n())
            .map(|w| g.darts_at(inv[w]).collect())
            .collect();
        PlaneGraph::new(g.n(), &edges, &rotations).unwrap()
    }
}

/// Seeded random plane graphs for property and performance tests.
pub mod generate {
    use crate::planegraph::{DartId, PlaneGraph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn insert_before(list: &mut Vec<DartId>, target: DartId, dart: DartId) {
        let pos = list.iter().position(|&d| d == target).unwrap();
        list.insert(pos, dart);
    }

    /// Repeatedly splits a random face of `base` into three by a fresh
    /// degree-3 vertex joined to the face's corners. The base must have
    /// all faces of degree three; the result then does too, stays simple
    /// if the base was simple, and is deterministic in `seed`.
    pub fn stack_onto(base: &PlaneGraph, added: usize, seed: u64) -> PlaneGraph {
        for f in 0..base.num_faces() {
            assert_eq!(base.face_degree(f), 3, "stacking needs triangular faces");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let total = base.n() + added;
        let mut edges: Vec<(usize, usize)> = (0..base.m()).map(|e| base.endpoints(e)).collect();
        let mut rot: Vec<Vec<DartId>> = (0..base.n())
            .map(|v| base.darts_at(v).collect())
            .collect();
        let mut tail_of: Vec<usize> = (0..2 * base.m()).map(|d| base.tail(d)).collect();
        let mut faces: Vec<[DartId; 3]> = (0..base.num_faces())
            .map(|f| {
                let w: Vec<DartId> = base.face_walk(f).collect();
                [w[0], w[1], w[2]]
            })
            .collect();
        for step in 0..added {
            let fi = rng.gen_range(0..faces.len());
            let [da, db, dc] = faces[fi];
            let (a, b, c) = (tail_of[da], tail_of[db], tail_of[dc]);
            let w = base.n() + step;
            let m0 = edges.len();
            edges.push((a, w));
            edges.push((b, w));
            edges.push((c, w));
            tail_of.extend([a, w, b, w, c, w]);
            // each corner keeps its old corner predecessor; the spoke slips
            // in just before the old boundary dart
            insert_before(&mut rot[a], da, 2 * m0);
            insert_before(&mut rot[b], db, 2 * m0 + 2);
            insert_before(&mut rot[c], dc, 2 * m0 + 4);
            rot.push(vec![2 * m0 + 1, 2 * m0 + 5, 2 * m0 + 3]);
            faces[fi] = [da, 2 * m0 + 2, 2 * m0 + 1];
            faces.push([db, 2 * m0 + 4, 2 * m0 + 3]);
            faces.push([dc, 2 * m0, 2 * m0 + 5]);
        }
        PlaneGraph::new(total, &edges, &rot).unwrap()
    }

    /// A random stacked triangulation on `n >= 3` vertices grown from a
    /// triangle. All faces have degree three and the graph is simple.
    pub fn stacked_triangulation(n: usize, seed: u64) -> PlaneGraph {
        assert!(n >= 3, "need at least a triangle");
        stack_onto(&super::instances::triangle(), n - 3, seed)
    }

    /// A random connected plane graph on `n >= 2` vertices, made by
    /// deleting random non-bridge edges from a stacked triangulation.
    /// Deleting a non-bridge edge merges two distinct faces of degrees
    /// `a` and `b` into one of degree `a + b - 2 >= 4`, so starting from
    /// a simple triangulation every face keeps degree at least 3 and no
    /// loop or bigon ever appears; for `n >= 3` either flag value yields
    /// a valid strict-mode instance. With `strict` the deletion budget
    /// stays below half the cycle space; without it deletion may reach a
    /// spanning tree, and `n = 2` is allowed and yields a single edge
    /// whose only face has degree 2.
    pub fn sparse_plane(n: usize, seed: u64, strict: bool) -> PlaneGraph {
        assert!(n >= 2, "need at least one edge");
        if n == 2 {
            assert!(!strict, "a single edge has a degree-2 face");
            return PlaneGraph::new(2, &[(0, 1)], &[vec![0], vec![1]]).unwrap();
        }
        let mut g = stacked_triangulation(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
        let slack = g.m() - (n - 1);
        let budget = if strict {
            rng.gen_range(0..=slack / 2)
        } else {
            rng.gen_range(0..=slack)
        };
        for _ in 0..budget {
            let live: Vec<usize> = (0..g.m()).filter(|&e| !g.is_bridge(e)).collect();
            if live.is_empty() {
                break;
            }
            let victim = live[rng.gen_range(0..live.len())];
            let keep: Vec<usize> = (0..g.m()).filter(|&e| e != victim).collect();
            g = g.subgraph_of_edges(&keep, false).graph;
        }
        g
    }
}

/// A vertex not in the set and without a neighbor in the set, if any.
pub fn undominated_vertex(g: &PlaneGraph, in_set: &[bool]) -> Option<VertexId> {
    (0..g.n()).find(|&v| !in_set[v] && !g.neighbors(v).any(|u| in_set[u]))
}

pub fn is_dominating(g: &PlaneGraph, in_set: &[bool]) -> bool {
    undominated_vertex(g, in_set).is_none()
}

/// A face with at least three distinct vertices but none in the set, if any.
pub fn unhit_face(g: &PlaneGraph, in_set: &[bool]) -> Option<FaceId> {
    (0..g.num_faces()).find(|&f| {
        g.is_three_plus_face(f) && !g.face_walk(f).any(|d| in_set[g.tail(d)])
    })
}

pub fn hits_all_three_plus_faces(g: &PlaneGraph, in_set: &[bool]) -> bool {
    unhit_face(g, in_set).is_none()
}

/// A face without any boundary vertex in the set, bigon and loop faces
/// included, if any.
pub fn unhit_face_any(g: &PlaneGraph, in_set: &[bool]) -> Option<FaceId> {
    (0..g.num_faces()).find(|&f| !g.face_walk(f).any(|d| in_set[g.tail(d)]))
}

/// A face without any boundary edge in the subset, if any. With
/// `three_plus_only` set, faces with fewer than three distinct vertices
/// are exempt.
pub fn unhit_face_by_edges(
    g: &PlaneGraph,
    edge_in: &[bool],
    three_plus_only: bool,
) -> Option<FaceId> {
    (0..g.num_faces()).find(|&f| {
        (!three_plus_only || g.is_three_plus_face(f))
            && !g.face_walk(f).any(|d| edge_in[crate::planegraph::edge_of(d)])
    })
}

/// A vertex with no incident edge in the subset, if any.
pub fn uncovered_vertex(g: &PlaneGraph, edge_in: &[bool]) -> Option<VertexId> {
    let mut covered = vec![false; g.n()];
    for e in 0..g.m() {
        if edge_in[e] {
            let (u, v) = g.endpoints(e);
            covered[u] = true;
            covered[v] = true;
        }
    }
    (0..g.n()).find(|&v| !covered[v])
}

/// Two-colors the subgraph of the given edges. Isolated vertices get color
/// 0; each component is colored from its smallest vertex. Returns `None` if
/// some cycle of subset edges has odd length.
pub fn two_color_subgraph(g: &PlaneGraph, edge_in: &[bool]) -> Option<Vec<u8>> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for e in 0..g.m() {
        if edge_in[e] {
            let (u, v) = g.endpoints(e);
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut color = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if color[u] == u8::MAX {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if color[u] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// An odd-length cycle of subset edges, as a vertex sequence, if one
/// exists. A loop in the subset counts as a one-vertex cycle. Complements
/// `two_color_subgraph` with an explicit witness.
pub fn odd_cycle_witness(g: &PlaneGraph, edge_in: &[bool]) -> Option<Vec<VertexId>> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for e in 0..g.m() {
        if edge_in[e] {
            let (u, v) = g.endpoints(e);
            if u == v {
                return Some(vec![u]);
            }
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if depth[s] != usize::MAX {
            continue;
        }
        depth[s] = 0;
        parent[s] = s;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if depth[u] == usize::MAX {
                    depth[u] = depth[v] + 1;
                    parent[u] = v;
                    queue.push_back(u);
                } else if u != v && depth[u] % 2 == depth[v] % 2 {
                    // equal parities plus the edge close an odd cycle;
                    // join the two tree paths at their lowest common part
                    let path = |mut x: usize| {
                        let mut p = vec![x];
                        while parent[x] != x {
                            x = parent[x];
                            p.push(x);
                        }
                        p
                    };
                    let pv = path(v);
                    let pu = path(u);
                    let mut i = pv.len();
                    let mut j = pu.len();
                    while i > 1 && j > 1 && pv[i - 2] == pu[j - 2] {
                        i -= 1;
                        j -= 1;
                    }
                    let mut cycle = pv[..i].to_vec();
                    cycle.extend(pu[..j - 1].iter().rev());
                    return Some(cycle);
                }
            }
        }
    }
    None
}

/// Checks that a vertex side and its complement are both dominating and
/// both hit every face with at least three distinct vertices. Returns a
/// description of the first violation.
pub fn check_partition(g: &PlaneGraph, in_v1: &[bool]) -> std::result::Result<(), String> {
    let v2: Vec<bool> = in_v1.iter().map(|&b| !b).collect();
    if let Some(v) = undominated_vertex(g, in_v1) {
        return Err(format!("vertex {v} is not dominated by the first side"));
    }
    if let Some(v) = undominated_vertex(g, &v2) {
        return Err(format!("vertex {v} is not dominated by the second side"));
    }
    if let Some(f) = unhit_face(g, in_v1) {
        return Err(format!("face {f} misses the first side"));
    }
    if let Some(f) = unhit_face(g, &v2) {
        return Err(format!("face {f} misses the second side"));
    }
    Ok(())
}

/// Exhaustive search for a valid partition; for tiny graphs only. Vertex 0
/// is fixed on the first side since the two sides are symmetric.
pub fn brute_force_partition(g: &PlaneGraph) -> Option<Vec<bool>> {
    let n = g.n();
    assert!((1..=20).contains(&n), "brute force needs 1 <= n <= 20");
    for mask in 0u32..1u32 << (n - 1) {
        let mut in_v1 = vec![false; n];
        in_v1[0] = true;
        for (v, slot) in in_v1.iter_mut().enumerate().skip(1) {
            *slot = mask >> (v - 1) & 1 == 1;
        }
        if check_partition(g, &in_v1).is_ok() {
            return Some(in_v1);
        }
    }
    None
}

/// Checks every promise made for a full output: the kept edges two-color
/// into sides matching `in_v1`, cover every vertex, and both sides
/// dominate and hit all large faces.
pub fn check_cover_and_partition(
    g: &PlaneGraph,
    kept_edges: &[EdgeId],
    in_v1: &[bool],
) -> std::result::Result<(), String> {
    let mut edge_in = vec![false; g.m()];
    for &e in kept_edges {
        if e >= g.m() {
            return Err(format!("kept edge {e} out of range"));
        }
        edge_in[e] = true;
    }
    if let Some(v) = uncovered_vertex(g, &edge_in) {
        return Err(format!("vertex {v} is not covered by a kept edge"));
    }
    if two_color_subgraph(g, &edge_in).is_none() {
        return Err("kept edges contain an odd cycle".into());
    }
    for &e in kept_edges {
        let (u, v) = g.endpoints(e);
        if in_v1[u] == in_v1[v] {
            return Err(format!("kept edge {e} joins two same-side vertices"));
        }
    }
    check_partition(g, in_v1)
}

/// One verification check, with an explanation when it fails.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    /// Offending vertex, face, edge or odd cycle for a failing check.
    pub witness: Option<String>,
}

/// Itemized verification of a full answer against its host graph.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Runs every promised property of an answer as a named check: the kept
/// edges are in range and cover every vertex, they span a bipartite
/// subgraph whose sides match the reported ones, and each side is
/// dominating and hits every face with at least three distinct vertices.
pub fn verify_partition(
    g: &PlaneGraph,
    kept_edges: &[EdgeId],
    in_v1: &[bool],
) -> VerificationReport {
    assert_eq!(in_v1.len(), g.n());
    let mut checks = Vec::new();
    let w = kept_edges.iter().find(|&&e| e >= g.m());
    checks.push(Check {
        name: "kept edges in range",
        pass: w.is_none(),
        witness: w.map(|e| format!("edge id {e} out of range")),
    });
    let mut edge_in = vec![false; g.m()];
    for &e in kept_edges {
        if e < g.m() {
            edge_in[e] = true;
        }
    }
    let w = uncovered_vertex(g, &edge_in);
    checks.push(Check {
        name: "kept edges cover every vertex",
        pass: w.is_none(),
        witness: w.map(|v| format!("vertex {v} has no kept edge")),
    });
    let w = odd_cycle_witness(g, &edge_in);
    checks.push(Check {
        name: "kept subgraph is bipartite",
        pass: w.is_none(),
        witness: w.map(|c| format!("odd cycle {c:?}")),
    });
    let w = kept_edges.iter().copied().filter(|&e| e < g.m()).find(|&e| {
        let (u, v) = g.endpoints(e);
        in_v1[u] == in_v1[v]
    });
    checks.push(Check {
        name: "kept edges join the two sides",
        pass: w.is_none(),
        witness: w.map(|e| format!("edge {e} stays inside one side")),
    });
    let v2: Vec<bool> = in_v1.iter().map(|&b| !b).collect();
    let w = undominated_vertex(g, in_v1);
    checks.push(Check {
        name: "first side dominates",
        pass: w.is_none(),
        witness: w.map(|v| format!("vertex {v} has no neighbor on the first side")),
    });
    let w = undominated_vertex(g, &v2);
    checks.push(Check {
        name: "second side dominates",
        pass: w.is_none(),
        witness: w.map(|v| format!("vertex {v} has no neighbor on the second side")),
    });
    let w = unhit_face(g, in_v1);
    checks.push(Check {
        name: "first side hits every three-plus face",
        pass: w.is_none(),
        witness: w.map(|f| format!("face {f} misses the first side")),
    });
    let w = unhit_face(g, &v2);
    checks.push(Check {
        name: "second side hits every three-plus face",
        pass: w.is_none(),
        witness: w.map(|f| format!("face {f} misses the second side")),
    });
    VerificationReport { checks }
}

/// Per-vertex flags: some rotation corner of two edges with id below
/// `original_edges` lies in a triangular face other than `outer`.
///
/// The corner between consecutive darts `d` and `rot_next(d)` at a vertex
/// belongs to the face of `rot_next(d)`.
pub fn interior_anchored_vertices(
    g: &PlaneGraph,
    original_edges: usize,
    outer: FaceId,
) -> Vec<bool> {
    let mut flags = vec![false; g.n()];
    for (v, flag) in flags.iter_mut().enumerate() {
        for d in g.darts_at(v) {
            let d2 = g.rot_next(d);
            let f = g.face_of(d2);
            if edge_of(d) < original_edges
                && edge_of(d2) < original_edges
                && f != outer
                && g.face_degree(f) == 3
            {
                *flag = true;
                break;
            }
        }
    }
    flags
}

/// Checks one materialized augmentation state from first principles: no
/// loops, the still-open region is bounded by the same dart walk in both
/// graphs, every other face of the augmented graph is a triangle, every
/// vertex off that boundary is interior anchored, and every boundary edge
/// except possibly the reference edge has an interior-anchored endpoint.
/// Returns a description of the first violation.
pub fn ear_snapshot_violation(s: &EarSnapshot) -> Option<String> {
    let b = &s.built;
    let a = &s.augmented;
    for e in 0..a.m() {
        if a.is_loop(e) {
            return Some(format!("augmented edge {e} is a loop"));
        }
    }
    // Both walks start at their smallest dart, and the built darts mean the
    // same edges in both graphs, so plain equality compares the cycles.
    let outer_b: Vec<_> = b.face_walk(s.outer_built).collect();
    let outer_a: Vec<_> = a.face_walk(s.outer_augmented).collect();
    if outer_b != outer_a {
        return Some(format!(
            "open region walk changed from {outer_b:?} to {outer_a:?}"
        ));
    }
    for f in 0..a.num_faces() {
        if f != s.outer_augmented && a.face_degree(f) != 3 {
            return Some(format!("interior face {f} has degree {}", a.face_degree(f)));
        }
    }
    let anchored = interior_anchored_vertices(a, b.m(), s.outer_augmented);
    let mut on_boundary = vec![false; a.n()];
    for &d in &outer_a {
        on_boundary[a.tail(d)] = true;
    }
    if let Some(v) = (0..a.n()).find(|&v| !on_boundary[v] && !anchored[v]) {
        return Some(format!("interior vertex {v} is not anchored"));
    }
    for &d in &outer_a {
        let e = edge_of(d);
        let (u, w) = a.endpoints(e);
        if e != s.reference_edge && !anchored[u] && !anchored[w] {
            return Some(format!(
                "boundary edge {e} has no interior-anchored endpoint"
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use instances::*;

    #[test]
    fn instances_have_expected_shapes() {
        let shapes = [
            (triangle(), 3, 3, 2),
            (k4(), 4, 6, 4),
            (cycle(7), 7, 7, 2),
            (theta(), 5, 6, 3),
            (cube(), 8, 12, 6),
            (prism(5), 10, 15, 7),
            (octahedron(), 6, 12, 8),
            (four_pentagons(), 8, 10, 4),
            (dodecahedron(), 20, 30, 12),
        ];
        for (g, n, m, f) in shapes {
            assert_eq!((g.n(), g.m(), g.num_faces()), (n, m, f));
        }
    }

    #[test]
    fn dodecahedron_is_cubic_with_pentagon_faces() {
        let g = dodecahedron();
        for v in 0..g.n() {
            assert_eq!(g.degree(v), 3);
        }
        for f in 0..g.num_faces() {
            assert_eq!(g.face_degree(f), 5);
        }
    }

    #[test]
    fn four_pentagons_faces_are_pentagons() {
        let g = four_pentagons();
        for f in 0..g.num_faces() {
            assert_eq!(g.face_degree(f), 5);
        }
        let deg2: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 2).collect();
        assert_eq!(deg2, vec![1, 4, 6, 7]);
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = dodecahedron();
        let perm: Vec<usize> = (0..20).map(|v| (7 * v + 3) % 20).collect();
        let h = relabel(&g, &perm);
        assert_eq!(h.n(), g.n());
        assert_eq!(h.m(), g.m());
        assert_eq!(h.num_faces(), g.num_faces());
        for e in 0..g.m() {
            let (u, v) = g.endpoints(e);
            assert_eq!(h.endpoints(e), (perm[u], perm[v]));
        }
        for v in 0..g.n() {
            assert_eq!(h.degree(perm[v]), g.degree(v));
        }
    }

    #[test]
    fn partition_checks_on_alternating_square() {
        let g = cycle(4);
        let good = vec![true, false, true, false];
        assert!(check_partition(&g, &good).is_ok());
        // Adjacent pairs also work on a square: both sides dominate and
        // both faces contain all four vertices.
        let pairs = vec![true, true, false, false];
        assert!(check_partition(&g, &pairs).is_ok());
        let lopsided = vec![true, false, false, false];
        assert!(check_partition(&g, &lopsided).is_err());
    }

    #[test]
    fn brute_force_finds_partitions_on_small_instances() {
        for g in [triangle(), k4(), cycle(4), cycle(5), theta(), cube()] {
            let found = brute_force_partition(&g).expect("partition must exist");
            assert!(check_partition(&g, &found).is_ok());
        }
    }

    #[test]
    fn two_coloring_detects_odd_cycles() {
        let g = cycle(5);
        let all = vec![true; g.m()];
        assert!(two_color_subgraph(&g, &all).is_none());
        let g = cycle(6);
        let all = vec![true; g.m()];
        let colors = two_color_subgraph(&g, &all).unwrap();
        for e in 0..g.m() {
            let (u, v) = g.endpoints(e);
            assert_ne!(colors[u], colors[v]);
        }
    }

    #[test]
    fn cover_check_catches_violations() {
        let g = cycle(4);
        // Opposite edges cover all vertices and two-color correctly.
        let keep = vec![0usize, 2];
        let colors = vec![true, false, true, false];
        assert!(check_cover_and_partition(&g, &keep, &colors).is_ok());
        // A single edge leaves vertices uncovered.
        assert!(check_cover_and_partition(&g, &[0], &colors).is_err());
        // Same-side endpoints are rejected.
        let bad_colors = vec![true, true, false, false];
        assert!(check_cover_and_partition(&g, &keep, &bad_colors).is_err());
    }

    #[test]
    fn lopsided_triangle_sides_fail() {
        let g = triangle();
        // All three vertices on one side: the empty side dominates nothing.
        assert!(check_partition(&g, &[true, true, true]).is_err());
        assert!(check_partition(&g, &[true, false, false]).is_ok());
    }

    #[test]
    fn cubic_multigraph_instances_have_expected_shapes() {
        let g = triple_edge();
        assert_eq!((g.n(), g.m(), g.num_faces()), (2, 3, 3));
        for v in 0..g.n() {
            assert_eq!(g.degree(v), 3);
        }
        assert!((0..g.m()).all(|e| !g.is_bridge(e)));

        let g = two_triple_edges();
        assert_eq!(g.components().1, 2);
        for v in 0..g.n() {
            assert_eq!(g.degree(v), 3);
        }

        let g = bridged_cubic();
        assert_eq!((g.n(), g.m(), g.num_faces()), (6, 9, 5));
        for v in 0..g.n() {
            assert_eq!(g.degree(v), 3);
        }
        let bridges: Vec<usize> = (0..g.m()).filter(|&e| g.is_bridge(e)).collect();
        assert_eq!(bridges, vec![4]);
    }

    #[test]
    fn stacked_triangulations_are_simple_triangulations() {
        for (n, seed) in [(3, 1), (4, 2), (9, 3), (40, 4), (40, 5)] {
            let g = generate::stacked_triangulation(n, seed);
            assert_eq!(g.n(), n);
            assert_eq!(g.m(), 3 * n - 6);
            for f in 0..g.num_faces() {
                assert_eq!(g.face_degree(f), 3);
            }
            let mut seen = std::collections::HashSet::new();
            for e in 0..g.m() {
                let (u, v) = g.endpoints(e);
                assert_ne!(u, v);
                assert!(seen.insert((u.min(v), u.max(v))), "parallel edge {e}");
            }
        }
    }

    /// Degree-2 faces with two distinct edges.
    fn bigon_faces(g: &PlaneGraph) -> Vec<usize> {
        (0..g.num_faces())
            .filter(|&f| {
                g.face_degree(f) == 2 && {
                    let d = g.face_start(f);
                    crate::planegraph::edge_of(d)
                        != crate::planegraph::edge_of(g.face_next(d))
                }
            })
            .collect()
    }

    #[test]
    fn doubling_adds_one_bigon_per_edge() {
        for g in [triangle(), k4(), cycle(5), cube()] {
            let d = doubled(&g);
            assert_eq!(d.n(), g.n());
            assert_eq!(d.m(), 2 * g.m());
            assert_eq!(d.num_faces(), g.num_faces() + g.m());
            assert_eq!(bigon_faces(&d).len(), g.m());
            for v in 0..g.n() {
                assert_eq!(d.degree(v), 2 * g.degree(v));
            }
        }
    }

    #[test]
    fn k4_bigon_chains_have_expected_shape() {
        for k in [1usize, 2, 3] {
            let g = k4_bigons(4 * k);
            assert_eq!(g.n(), 4 * k);
            assert_eq!(g.m(), 13 * k - 1);
            assert!(g.is_connected());
            // each block keeps its ten faces and every bridge merges two
            assert_eq!(g.num_faces(), 9 * k + 1);
            assert_eq!(bigon_faces(&g).len(), 6 * k);
            let bridges: Vec<usize> = (0..g.m()).filter(|&e| g.is_bridge(e)).collect();
            assert_eq!(bridges.len(), k - 1);
        }
    }

    #[test]
    fn block_chains_are_triangle_strings() {
        for k in [1usize, 2, 4] {
            let g = block_chain(k);
            assert_eq!(g.n(), 2 * k + 1);
            assert_eq!(g.m(), 3 * k);
            assert_eq!(g.num_faces(), k + 1);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn looped_triangle_has_degree_one_faces() {
        let g = looped_triangle(2);
        assert_eq!((g.n(), g.m(), g.num_faces()), (3, 5, 4));
        let tiny: Vec<usize> = (0..g.num_faces())
            .filter(|&f| g.face_degree(f) == 1)
            .collect();
        assert_eq!(tiny.len(), 2);
    }

    #[test]
    fn tripled_side_triangle_shape() {
        let g = tripled_side_triangle();
        assert_eq!((g.n(), g.m(), g.num_faces()), (3, 5, 4));
        assert_eq!(bigon_faces(&g).len(), 2);
        let triangles: Vec<usize> = (0..g.num_faces())
            .filter(|&f| g.face_degree(f) == 3)
            .collect();
        assert_eq!(triangles.len(), 2);
    }

    #[test]
    fn motley_chain_shape() {
        let g = motley_chain();
        assert_eq!((g.n(), g.m(), g.num_faces()), (8, 11, 5));
        assert!(g.is_connected());
        assert_eq!(bigon_faces(&g).len(), 1);
        assert!((0..g.m()).any(|e| g.is_loop(e)));
        assert!(g.is_bridge(3) && g.is_bridge(10));
        // three faces see at least three distinct vertices
        let big: Vec<usize> = (0..g.num_faces())
            .filter(|&f| g.is_three_plus_face(f))
            .collect();
        assert_eq!(big.len(), 3);
    }

    #[test]
    fn sparse_plane_outputs_are_valid() {
        for (n, seed) in [(3usize, 9u64), (8, 10), (25, 11), (60, 12), (60, 13)] {
            for strict in [false, true] {
                let g = generate::sparse_plane(n, seed, strict);
                assert_eq!(g.n(), n);
                assert!(g.is_connected());
                assert!((0..g.n()).all(|v| g.degree(v) >= 1));
                // deletions from a simple triangulation leave no small faces
                for f in 0..g.num_faces() {
                    assert!(g.face_degree(f) >= 3, "face {f} too small");
                }
            }
        }
        let g = generate::sparse_plane(2, 1, false);
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn sparse_plane_is_seed_deterministic() {
        let a = generate::sparse_plane(30, 77, true);
        let b = generate::sparse_plane(30, 77, true);
        assert_eq!(a.m(), b.m());
        for e in 0..a.m() {
            assert_eq!(a.endpoints(e), b.endpoints(e));
        }
    }

    #[test]
    fn odd_cycle_witness_agrees_with_two_coloring() {
        for (g, odd) in [
            (cycle(5), true),
            (cycle(6), false),
            (k4(), true),
            (theta(), false),
            (looped_triangle(1), true),
        ] {
            let all = vec![true; g.m()];
            let witness = odd_cycle_witness(&g, &all);
            assert_eq!(witness.is_some(), odd);
            assert_eq!(two_color_subgraph(&g, &all).is_none(), odd);
            if let Some(c) = witness {
                // a real odd closed walk: consecutive entries adjacent
                assert_eq!(c.len() % 2, 1);
                for i in 0..c.len() {
                    let (u, v) = (c[i], c[(i + 1) % c.len()]);
                    assert!(
                        u == v || g.neighbors(u).any(|w| w == v),
                        "cycle step {u}-{v} is not an edge"
                    );
                }
            }
        }
    }

    #[test]
    fn face_hitting_by_edges_matches_definition() {
        let g = k4();
        // edges 0 and 5 are disjoint and touch all four faces
        let mut edge_in = vec![false; g.m()];
        edge_in[0] = true;
        edge_in[5] = true;
        assert_eq!(unhit_face_by_edges(&g, &edge_in, true), None);
        let only = |e: usize| {
            let mut m = vec![false; g.m()];
            m[e] = true;
            m
        };
        // a single edge borders exactly two of the four triangles
        assert!(unhit_face_by_edges(&g, &only(0), true).is_some());
        let t = triple_edge();
        // bigons are exempt with the filter, caught without
        assert_eq!(unhit_face_by_edges(&t, &only(0), true), None);
        assert!(unhit_face_by_edges(&t, &only(0), false).is_some());
    }

    #[test]
    fn verify_partition_reports_named_failures() {
        let g = cycle(4);
        let report = verify_partition(&g, &[0, 2], &[true, false, true, false]);
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
        let report = verify_partition(&g, &[0], &[true, true, true, false]);
        assert!(!report.all_pass());
        for c in report.failures() {
            assert!(c.witness.is_some(), "failing check {} lacks a witness", c.name);
        }
        let names: Vec<&str> = report.failures().map(|c| c.name).collect();
        assert!(names.contains(&"kept edges cover every vertex"));
        assert!(names.contains(&"kept edges join the two sides"));
    }

    #[test]
    fn stacking_is_deterministic_per_seed() {
        let a = generate::stacked_triangulation(30, 11);
        let b = generate::stacked_triangulation(30, 11);
        let c = generate::stacked_triangulation(30, 12);
        let shape = |g: &PlaneGraph| {
            (0..g.m())
                .map(|e| g.endpoints(e))
                .collect::<Vec<(usize, usize)>>()
        };
        assert_eq!(shape(&a), shape(&b));
        assert_ne!(shape(&a), shape(&c));
    }

    #[test]
    fn stacking_onto_octahedron_keeps_high_degree_core() {
        let g = generate::stack_onto(&octahedron(), 5, 9);
        assert_eq!(g.n(), 11);
        assert_eq!(g.m(), 12 + 15);
        for f in 0..g.num_faces() {
            assert_eq!(g.face_degree(f), 3);
        }
    }

    #[test]
    fn interior_anchoring_counts_original_corners_only() {
        let g = k4();
        let outer = g.face_of(0);
        assert!(interior_anchored_vertices(&g, g.m(), outer)
            .iter()
            .all(|&b| b));
        assert!(interior_anchored_vertices(&g, 0, outer)
            .iter()
            .all(|&b| !b));
    }

    #[test]
    fn ear_state_checker_catches_corruption() {
        let g = cycle(5);
        let aug = crate::augment::augment_ears(&g, 0, g.face_of(1)).unwrap();
        let snaps = aug.ear_snapshots().unwrap();
        let honest = snaps.last().unwrap();
        assert_eq!(ear_snapshot_violation(honest), None);

        // Wrong open face: the walks no longer agree.
        let mut bad = honest.clone();
        bad.outer_augmented = (bad.outer_augmented + 1) % bad.augmented.num_faces();
        let why = ear_snapshot_violation(&bad).unwrap();
        assert!(why.contains("walk changed"), "{why}");

        // Wrong reference edge: the real one loses its exemption and both
        // of its endpoints are unanchored.
        let mut bad = honest.clone();
        bad.reference_edge = 2;
        let why = ear_snapshot_violation(&bad).unwrap();
        assert!(why.contains("no interior-anchored endpoint"), "{why}");

        // A state that skipped triangulating its closed face.
        let square = cycle(4);
        let lazy = crate::augment::EarSnapshot {
            built: square.clone(),
            augmented: square.clone(),
            reference_edge: 0,
            outer_built: square.face_of(1),
            outer_augmented: square.face_of(1),
            vertex_to_host: (0..4).collect(),
            edge_to_host: (0..4).collect(),
        };
        let why = ear_snapshot_violation(&lazy).unwrap();
        assert!(why.contains("degree 4"), "{why}");
    }
}
