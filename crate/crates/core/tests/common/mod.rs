//! Shared helpers for the integration suites: random graph and matroid
//! generators with fixed seeds, and the exhaustive solution-counting
//! oracle.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use matroidal::graph::ColoredGraph;
use matroidal::matroid::Matroid;

/// A connected multigraph on `nv` vertices with `extra` edges beyond a
/// random spanning tree. May contain parallel edges and loops.
pub fn random_connected_graph(
    rng: &mut StdRng,
    nv: usize,
    extra: usize,
    allow_loops: bool,
) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    for v in 1..nv {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..nv);
        let mut w = rng.gen_range(0..nv);
        if !allow_loops && nv > 1 {
            while w == u {
                w = rng.gen_range(0..nv);
            }
        }
        edges.push((u, w));
    }
    (nv, edges)
}

/// Labels `e0, e1, ...` for a graph's edges.
pub fn edge_labels(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("e{i}")).collect()
}

/// The cographic matroid of a connected graph that has at least one
/// independent cycle.
pub fn cographic_of(name: &str, nv: usize, edges: &[(usize, usize)]) -> Matroid {
    Matroid::cographic(name, nv, edges, &edge_labels(edges.len())).unwrap()
}

/// The graphic matroid of a graph.
pub fn graphic_of(name: &str, nv: usize, edges: &[(usize, usize)]) -> Matroid {
    Matroid::graphic(name, nv, edges, &edge_labels(edges.len())).unwrap()
}

/// A random planar graph on at most `max_v <= 6` vertices: grow a planar
/// triangulation by repeatedly placing a vertex inside a face, then
/// delete a few random edges (planarity survives both steps).
pub fn random_planar_graph(rng: &mut StdRng, max_v: usize) -> (usize, Vec<(usize, usize)>) {
    let nv = rng.gen_range(3..=max_v.max(3));
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 2]]; // inner and outer
    for v in 3..nv {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(f);
        edges.push((a, v));
        edges.push((b, v));
        edges.push((c, v));
        faces.push([a, b, v]);
        faces.push([b, c, v]);
        faces.push([a, c, v]);
    }
    let deletions = rng.gen_range(0..=edges.len() / 3);
    for _ in 0..deletions {
        if edges.len() <= nv {
            break;
        }
        let e = rng.gen_range(0..edges.len());
        edges.remove(e);
    }
    (nv, edges)
}

/// A bridgeless connected multigraph: a cycle through every vertex plus
/// random chords and parallels. Bridgeless graphs give loopless
/// cographic matroids.
pub fn random_bridgeless_graph(
    rng: &mut StdRng,
    nv: usize,
    extra: usize,
) -> (usize, Vec<(usize, usize)>) {
    let mut edges: Vec<(usize, usize)> = (0..nv).map(|v| (v, (v + 1) % nv)).collect();
    for _ in 0..extra {
        let u = rng.gen_range(0..nv);
        let w = rng.gen_range(0..nv);
        if u != w {
            edges.push((u.min(w), u.max(w)));
        } else {
            edges.push((u, (u + 1) % nv));
        }
    }
    (nv, edges)
}

/// A loopless cographic matroid on a modest ground set.
pub fn random_cographic(rng: &mut StdRng, tag: usize) -> (Matroid, usize, Vec<(usize, usize)>) {
    let nv = rng.gen_range(2..=4);
    let extra = rng.gen_range(0..=2);
    let (nv, edges) = random_bridgeless_graph(rng, nv, extra);
    let m = cographic_of(&format!("M*(G{tag})"), nv, &edges);
    assert!(m.is_loopless());
    (m, nv, edges)
}

/// Every matroid on at most 3 elements, by explicit realization:
/// coloops, loops, parallel elements, the triangle both ways.
pub fn small_matroids() -> Vec<Matroid> {
    let mk = |name: &str, rows: Vec<Vec<i64>>| {
        let n = rows[0].len();
        let ground = (0..n).map(|i| format!("s{i}")).collect();
        Matroid::validate(name, ground, rows).unwrap()
    };
    vec![
        mk("U11", vec![vec![1]]),
        mk("U12", vec![vec![1, 1]]),
        mk("coloop+loop", vec![vec![1, 0]]),
        mk("U13", vec![vec![1, 1, 1]]),
        mk("U12+loop", vec![vec![1, 1, 0]]),
        mk("coloop+2loops", vec![vec![1, 0, 0]]),
        mk("U22", vec![vec![1, 0], vec![0, 1]]),
        mk("U22+loop", vec![vec![1, 0, 0], vec![0, 1, 0]]),
        mk("triangle", vec![vec![1, 0, 1], vec![0, 1, 1]]),
        mk("coloop+parallel", vec![vec![1, 0, 0], vec![0, 1, 1]]),
        mk("U33", vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
    ]
}

/// All vectors of the row space of the realization mod 2.
pub fn rowspace_mod2(m: &Matroid) -> Vec<Vec<i64>> {
    let g = m.rank();
    let n = m.size();
    let mut out = Vec::new();
    for mask in 0u32..(1 << g) {
        let mut u = vec![0i64; n];
        for k in 0..g {
            if mask >> k & 1 == 1 {
                for (s, slot) in u.iter_mut().enumerate() {
                    *slot = (*slot + m.entry(k, s)) & 1;
                }
            }
        }
        out.push(u);
    }
    out
}

/// Brute-force count of solutions and indivisibility over F2 on a host,
/// straight from the definition: a coefficient per edge, closedness of
/// every row-space combination, and an all-odd profile for a witness.
pub fn brute_force_f2(m: &Matroid, host: &ColoredGraph) -> (usize, bool) {
    let ne = host.num_edges();
    assert!(ne <= 16, "oracle restricted to tiny hosts");
    let us = rowspace_mod2(m);
    let n = m.size();
    let label_of = |c: usize| -> usize { m.label_index(&host.colors()[c]).unwrap() };
    let mut count = 0usize;
    let mut indivisible = false;
    'assignment: for mask in 0u32..(1 << ne) {
        for u in &us {
            let mut bnd = vec![0i64; host.num_vertices()];
            for e in 0..ne {
                if mask >> e & 1 == 0 {
                    continue;
                }
                let edge = host.edge(e);
                let s = label_of(edge.color.unwrap());
                bnd[edge.head] += u[s];
                bnd[edge.tail] -= u[s];
            }
            if bnd.iter().any(|v| v & 1 != 0) {
                continue 'assignment;
            }
        }
        count += 1;
        let mut profile = vec![0i64; n];
        for e in 0..ne {
            if mask >> e & 1 == 1 {
                let s = label_of(host.edge(e).color.unwrap());
                profile[s] += 1;
            }
        }
        if profile.iter().all(|p| p & 1 == 1) {
            indivisible = true;
        }
    }
    (count, indivisible)
}
