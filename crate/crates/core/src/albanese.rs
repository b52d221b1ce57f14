//! Albanese graphs of a regular matroid: the Cayley-style colored graph
//! on the cosets of `l^j U + l^r Z^S`, its reduced form at (2,1), the
//! universal map from a colored graph, uniform refinements, and the
//! homotopy pushforward down to level `(l^{r-j}, 1)`.

use std::collections::HashMap;

use crate::error::AlbaneseError;
use crate::graph::{
    color_profile, h1_basis, ColoredGraph, EdgeImage, GraphMorphism, Refinement, VertexId,
};
use crate::linalg::CosetLattice;
use crate::matroid::Matroid;
use crate::ring::is_prime_u64;

/// Default cap on the number of edges a build may produce.
pub const DEFAULT_MAX_EDGES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlbParams {
    pub ell: u32,
    pub r: u32,
    pub j: u32,
}

impl AlbParams {
    pub fn new(ell: u32, r: u32, j: u32) -> Self {
        AlbParams { ell, r, j }
    }

    pub fn level_modulus(&self) -> u64 {
        (self.ell as u64).pow(self.r)
    }
}

/// The colored graph on `Z^S/(l^j U + l^r Z^S)` with one `s`-colored
/// edge `v -> v + e_s` per vertex and color, plus the lattice data that
/// names the vertices.
#[derive(Debug, Clone)]
pub struct AlbaneseGraph {
    pub graph: ColoredGraph,
    pub lattice: CosetLattice,
    pub vertex_reps: Vec<Vec<i64>>,
    pub params: AlbParams,
    pub matroid_name: String,
    index_of: HashMap<Vec<i64>, VertexId>,
}

impl AlbaneseGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.num_edges()
    }

    /// The unique outgoing edge of color `s` at `v`.
    pub fn out_edge(&self, v: VertexId, s: usize) -> usize {
        v * self.graph.colors().len() + s
    }

    pub fn vertex_id(&self, rep: &[i64]) -> Option<VertexId> {
        self.index_of.get(&self.lattice.reduce(rep)).copied()
    }

    /// Edges with equal endpoints; empty for the catalog inputs.
    pub fn loop_edges(&self) -> Vec<usize> {
        (0..self.graph.num_edges())
            .filter(|&e| self.graph.is_loop(e))
            .collect()
    }

    /// Vertex/lattice sidecar, next to the plain graph JSON.
    pub fn sidecar_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertex_reps": self.vertex_reps,
            "lattice_hnf": self.lattice.basis(),
            "params": { "ell": self.params.ell, "r": self.params.r, "j": self.params.j },
        })
    }
}

/// The sublattice `l^j U + l^r Z^S` of `Z^S`.
pub fn alb_lattice(m: &Matroid, params: AlbParams) -> Result<CosetLattice, AlbaneseError> {
    let n = m.size();
    let lj = (params.ell as i64).pow(params.j);
    let lr = (params.ell as i64).pow(params.r);
    let mut gens: Vec<Vec<i64>> = (0..m.rank())
        .map(|k| (0..n).map(|s| lj * m.entry(k, s)).collect())
        .collect();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = lr;
        gens.push(e);
    }
    CosetLattice::from_generators(&gens, n).map_err(|_| AlbaneseError::InvalidParams {
        r: params.r,
        j: params.j,
    })
}

pub fn build(m: &Matroid, params: AlbParams) -> Result<AlbaneseGraph, AlbaneseError> {
    build_with_limit(m, params, DEFAULT_MAX_EDGES)
}

/// Builds the Albanese graph, enumerating vertices by BFS from 0 with
/// canonical coset representatives. The vertex count equals the lattice
/// index `l^{r(n-g)+jg}`.
pub fn build_with_limit(
    m: &Matroid,
    params: AlbParams,
    max_edges: u64,
) -> Result<AlbaneseGraph, AlbaneseError> {
    if params.j > params.r {
        return Err(AlbaneseError::InvalidParams {
            r: params.r,
            j: params.j,
        });
    }
    if !is_prime_u64(params.ell as u64) {
        return Err(AlbaneseError::Ring(crate::error::RingError::NotPrime(
            params.ell,
        )));
    }
    let (g, n32) = (m.rank() as u32, m.size() as u32);
    let expected: u128 = (params.ell as u128)
        .checked_pow(params.r * (n32 - g) + params.j * g)
        .unwrap_or(u128::MAX);
    let expected_edges = expected.saturating_mul(n32 as u128);
    if expected_edges > max_edges as u128 {
        return Err(AlbaneseError::TooLarge {
            edges: expected_edges,
            limit: max_edges,
        });
    }
    let lattice = alb_lattice(m, params)?;
    debug_assert_eq!(lattice.index() as u128, expected);

    let n = m.size();
    let zero = lattice.reduce(&vec![0; n]);
    let mut vertex_reps = vec![zero.clone()];
    let mut index_of = HashMap::from([(zero, 0usize)]);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for s in 0..n {
            let mut rep = vertex_reps[v].clone();
            rep[s] += 1;
            let rep = lattice.reduce(&rep);
            if let std::collections::hash_map::Entry::Vacant(slot) = index_of.entry(rep) {
                let id = vertex_reps.len();
                vertex_reps.push(slot.key().clone());
                slot.insert(id);
                queue.push_back(id);
            }
        }
    }
    debug_assert_eq!(
        vertex_reps.len() as u64,
        lattice.index(),
        "graph is connected"
    );

    let mut graph = ColoredGraph::new(m.ground().to_vec(), vertex_reps.len());
    for (v, vrep) in vertex_reps.iter().enumerate() {
        for s in 0..n {
            let mut rep = vrep.clone();
            rep[s] += 1;
            let head = index_of[&lattice.reduce(&rep)];
            graph.add_edge(v, head, Some(s))?;
        }
    }
    Ok(AlbaneseGraph {
        graph,
        lattice,
        vertex_reps,
        params,
        matroid_name: m.name().to_string(),
        index_of,
    })
}

/// The (2,1) quotient identifying each opposite parallel pair of equally
/// colored edges; bijective on vertices, two-to-one on non-loop edges.
#[derive(Debug, Clone)]
pub struct ReducedAlbanese {
    pub graph: ColoredGraph,
    pub quotient: GraphMorphism,
    pub matroid_name: String,
}

pub fn reduce_2_1(alb: &AlbaneseGraph) -> Result<ReducedAlbanese, AlbaneseError> {
    let p = alb.params;
    if (p.ell, p.r, p.j) != (2, 1, 0) {
        return Err(AlbaneseError::WrongParams {
            ell: p.ell,
            r: p.r,
            j: p.j,
        });
    }
    let src = &alb.graph;
    let mut graph = ColoredGraph::new(src.colors().to_vec(), src.num_vertices());
    let mut edge_map = vec![EdgeImage::Contracted; src.num_edges()];
    for e in 0..src.num_edges() {
        let edge = *src.edge(e);
        let s = edge.color.expect("albanese edges are colored");
        if edge.tail == edge.head {
            let id = graph.add_edge(edge.tail, edge.head, Some(s))?;
            edge_map[e] = EdgeImage::To {
                edge: id,
                flip: false,
            };
            continue;
        }
        let partner = alb.out_edge(edge.head, s);
        debug_assert_eq!(src.edge(partner).head, edge.tail, "opposite parallel pair");
        if partner > e {
            let id = graph.add_edge(edge.tail, edge.head, Some(s))?;
            edge_map[e] = EdgeImage::To {
                edge: id,
                flip: false,
            };
        } else {
            let EdgeImage::To { edge: id, .. } = edge_map[partner] else {
                unreachable!("partner visited first");
            };
            edge_map[e] = EdgeImage::To {
                edge: id,
                flip: true,
            };
        }
    }
    let quotient = GraphMorphism {
        vertex_map: (0..src.num_vertices()).collect(),
        edge_map,
    };
    debug_assert!(quotient.validate(src, &graph).is_ok());
    Ok(ReducedAlbanese {
        graph,
        quotient,
        matroid_name: alb.matroid_name.clone(),
    })
}

/// The canonical map from a connected colored graph into the Albanese
/// graph, defined when every cycle's color profile lies in the lattice.
/// A vertex goes to the class of the profile of any path from the
/// basepoint.
pub fn alb_map(
    host: &ColoredGraph,
    m: &Matroid,
    params: AlbParams,
    basepoint: VertexId,
    max_edges: u64,
) -> Result<(AlbaneseGraph, GraphMorphism), AlbaneseError> {
    if !host.is_connected() {
        return Err(AlbaneseError::Disconnected);
    }
    let color_to_ground = match_colors(host, m)?;
    let target = build_with_limit(m, params, max_edges)?;
    // hypothesis check on a cycle basis; linearity extends it
    for cycle in &h1_basis(host).cycles {
        let profile = reindexed_profile(cycle, host, &color_to_ground, m.size())?;
        if !target.lattice.contains(&profile) {
            return Err(AlbaneseError::HypothesisFails { profile });
        }
    }
    // BFS from the basepoint, accumulating path profiles
    let n = m.size();
    let mut reps: Vec<Option<Vec<i64>>> = vec![None; host.num_vertices()];
    reps[basepoint] = Some(target.lattice.reduce(&vec![0; n]));
    let mut adj: Vec<Vec<(VertexId, usize, bool)>> = vec![Vec::new(); host.num_vertices()];
    for (id, e) in host.edges().iter().enumerate() {
        adj[e.tail].push((e.head, id, true));
        adj[e.head].push((e.tail, id, false));
    }
    let mut queue = std::collections::VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for &(w, id, fwd) in &adj[v] {
            if reps[w].is_some() {
                continue;
            }
            let s = color_to_ground[host.edge(id).color.expect("colored host")];
            let mut rep = reps[v].clone().expect("visited");
            rep[s] += if fwd { 1 } else { -1 };
            reps[w] = Some(target.lattice.reduce(&rep));
            queue.push_back(w);
        }
    }
    let vertex_map: Vec<usize> = reps
        .into_iter()
        .map(|r| {
            let rep = r.expect("connected host");
            target.vertex_id(&rep).expect("rep enumerated")
        })
        .collect();
    let edge_map: Vec<EdgeImage> = host
        .edges()
        .iter()
        .map(|e| {
            let s = color_to_ground[e.color.expect("colored host")];
            let img = target.out_edge(vertex_map[e.tail], s);
            debug_assert_eq!(
                target.graph.edge(img).head,
                vertex_map[e.head],
                "edge image incidence"
            );
            EdgeImage::To {
                edge: img,
                flip: false,
            }
        })
        .collect();
    let morphism = GraphMorphism {
        vertex_map,
        edge_map,
    };
    debug_assert!(morphism.validate(host, &target.graph).is_ok());
    Ok((target, morphism))
}

/// Host color index -> ground index, matched by label.
pub fn match_colors(host: &ColoredGraph, m: &Matroid) -> Result<Vec<usize>, AlbaneseError> {
    if host.colors().len() != m.size() {
        return Err(AlbaneseError::ColorMismatch);
    }
    host.colors()
        .iter()
        .map(|label| {
            m.label_index(label)
                .map_err(|_| AlbaneseError::ColorMismatch)
        })
        .collect()
}

fn reindexed_profile(
    chain: &crate::graph::Chain1<i64>,
    host: &ColoredGraph,
    color_to_ground: &[usize],
    n: usize,
) -> Result<Vec<i64>, AlbaneseError> {
    let raw = color_profile(chain, host)?;
    let mut out = vec![0i64; n];
    for (c, v) in raw.into_iter().enumerate() {
        out[color_to_ground[c]] += v;
    }
    Ok(out)
}

/// A uniform refinement of an Albanese graph, each edge divided into
/// `scale` consecutive segments, with vertex positions tracked on the
/// `1/scale` grid (stored multiplied by `scale`, hence integral).
#[derive(Debug, Clone)]
pub struct HatAlbanese {
    pub refinement: Refinement,
    pub scaled_reps: Vec<Vec<i64>>,
    pub scale: u64,
    pub base_params: AlbParams,
    pub matroid_name: String,
}

impl HatAlbanese {
    pub fn graph(&self) -> &ColoredGraph {
        &self.refinement.graph
    }
}

/// Refines every edge into `scale` segments of the same color and
/// orientation; `scale = 1` is the identity.
pub fn hat(alb: &AlbaneseGraph, scale: u64) -> HatAlbanese {
    assert!(scale >= 1);
    let counts = vec![scale as usize; alb.graph.num_edges()];
    let refinement = crate::graph::refine(&alb.graph, &counts);
    let mut scaled_reps: Vec<Vec<i64>> = Vec::with_capacity(refinement.graph.num_vertices());
    for rep in &alb.vertex_reps {
        scaled_reps.push(rep.iter().map(|&x| x * scale as i64).collect());
    }
    // internal vertices, in the order refine() created them
    for e in 0..alb.graph.num_edges() {
        let edge = alb.graph.edge(e);
        let s = edge.color.expect("albanese edges are colored");
        for step in 1..scale as i64 {
            let mut rep: Vec<i64> = alb.vertex_reps[edge.tail]
                .iter()
                .map(|&x| x * scale as i64)
                .collect();
            rep[s] += step;
            scaled_reps.push(rep);
        }
    }
    debug_assert_eq!(scaled_reps.len(), refinement.graph.num_vertices());
    HatAlbanese {
        refinement,
        scaled_reps,
        scale,
        base_params: alb.params,
        matroid_name: alb.matroid_name.clone(),
    }
}

/// Embedding of a refined Albanese graph at level `(l^b, l^a)` into the
/// plain one at level `(l^{b+j}, l^{a+j})`, by multiplication by `l^j`
/// on vertex positions.
pub fn hat_embedding(
    m: &Matroid,
    hat_src: &HatAlbanese,
    max_edges: u64,
) -> Result<(AlbaneseGraph, GraphMorphism), AlbaneseError> {
    let p = hat_src.base_params;
    let jshift = exact_log(hat_src.scale, p.ell);
    let target = build_with_limit(
        m,
        AlbParams::new(p.ell, p.r + jshift, p.j + jshift),
        max_edges,
    )?;
    let vertex_map: Vec<usize> = hat_src
        .scaled_reps
        .iter()
        .map(|rep| {
            target
                .vertex_id(rep)
                .expect("scaled position is a target vertex")
        })
        .collect();
    let edge_map: Vec<EdgeImage> = hat_src
        .graph()
        .edges()
        .iter()
        .map(|e| {
            let s = e.color.expect("colored");
            let img = target.out_edge(vertex_map[e.tail], s);
            EdgeImage::To {
                edge: img,
                flip: false,
            }
        })
        .collect();
    let morphism = GraphMorphism {
        vertex_map,
        edge_map,
    };
    morphism.validate(hat_src.graph(), &target.graph)?;
    Ok((target, morphism))
}

/// Exact logarithm of a power of `base`.
fn exact_log(v: u64, base: u32) -> u32 {
    let mut v = v;
    let mut out = 0;
    while v > 1 {
        assert_eq!(v % base as u64, 0, "scale must be a power of the prime");
        v /= base as u64;
        out += 1;
    }
    out
}

/// The homotopy pushforward from the refined graph at `(l^r, l^j)` to
/// the refined graph at `(l^{r-j}, 1)`. On scaled vertex positions it
/// applies, per coordinate, the map stretching `[0,1]` by `l^j` and
/// collapsing `[1, l^j]` onto the far endpoint, extended equivariantly;
/// edges inside a collapsed region contract.
pub fn homotopy_pushforward(
    m: &Matroid,
    src: &HatAlbanese,
    tgt: &HatAlbanese,
) -> Result<GraphMorphism, AlbaneseError> {
    let (ps, pt) = (src.base_params, tgt.base_params);
    let ell = ps.ell;
    if pt.ell != ell
        || pt.j != 0
        || ps.r < ps.j
        || pt.r != ps.r - ps.j
        || src.scale != tgt.scale
        || src.scale != (ell as u64).pow(ps.j)
    {
        return Err(AlbaneseError::InconsistentParams);
    }
    let lj = src.scale as i64;
    if lj == 1 {
        // nothing to collapse at j = 0
        return Ok(GraphMorphism::identity(src.graph()));
    }
    // scaled target positions live modulo l^j U + l^r Z^S
    let lattice = alb_lattice(m, AlbParams::new(ell, ps.r, ps.j))?;
    let mut tgt_index: HashMap<Vec<i64>, VertexId> = HashMap::new();
    for (v, rep) in tgt.scaled_reps.iter().enumerate() {
        let prev = tgt_index.insert(lattice.reduce(rep), v);
        debug_assert!(prev.is_none(), "scaled target positions are distinct");
    }
    let mut tgt_out: HashMap<(VertexId, usize), usize> = HashMap::new();
    for (id, e) in tgt.graph().edges().iter().enumerate() {
        let s = e.color.expect("colored");
        let prev = tgt_out.insert((e.tail, s), id);
        debug_assert!(prev.is_none(), "one outgoing edge per color");
    }

    let l2j = lj * lj;
    // per coordinate: a source position c = l^{2j} m + q on the scaled
    // grid goes to l^j m + min(q, l^j), the image position expressed in
    // the target's scaled coordinates
    let h_point = |y: &[i64]| -> Vec<i64> {
        y.iter()
            .map(|&c| {
                let q = c.rem_euclid(l2j);
                (c - q) / lj + q.min(lj)
            })
            .collect()
    };
    let vertex_map: Vec<usize> = src
        .scaled_reps
        .iter()
        .map(|y| {
            let img = lattice.reduce(&h_point(y));
            *tgt_index.get(&img).expect("image is a target vertex")
        })
        .collect();
    let edge_map: Vec<EdgeImage> = src
        .graph()
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| {
            let s = e.color.expect("colored");
            let q = src.scaled_reps[e.tail][s].rem_euclid(l2j);
            if q >= lj {
                debug_assert_eq!(
                    vertex_map[e.tail], vertex_map[e.head],
                    "edge {id} collapses"
                );
                EdgeImage::Contracted
            } else {
                let img = *tgt_out
                    .get(&(vertex_map[e.tail], s))
                    .expect("outgoing target edge");
                debug_assert_eq!(
                    tgt.graph().edge(img).head,
                    vertex_map[e.head],
                    "edge {id} image incidence"
                );
                EdgeImage::To {
                    edge: img,
                    flip: false,
                }
            }
        })
        .collect();
    let morphism = GraphMorphism {
        vertex_map,
        edge_map,
    };
    morphism.validate(src.graph(), tgt.graph())?;
    Ok(morphism)
}
