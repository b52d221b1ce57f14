//! Oriented S-colored multigraphs, 1-chains, boundary maps, first
//! homology via spanning forests, color profile maps, refinements, and
//! pushforward along colored-graph morphisms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::ring::Scalar;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type ColorId = usize;

/// An oriented edge. `color = None` marks a colorless edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub color: Option<ColorId>,
}

/// Finite oriented multigraph with edges colored from a ground set `S`.
/// Edges carry stable integer ids (their index); chains index by id,
/// never by endpoints, since parallel edges of equal color occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    colors: Vec<String>,
    num_vertices: usize,
    edges: Vec<Edge>,
}

impl ColoredGraph {
    pub fn new(colors: Vec<String>, num_vertices: usize) -> Self {
        ColoredGraph {
            colors,
            num_vertices,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(
        &mut self,
        tail: VertexId,
        head: VertexId,
        color: Option<ColorId>,
    ) -> Result<EdgeId, GraphError> {
        if tail >= self.num_vertices || head >= self.num_vertices {
            return Err(GraphError::InvalidGraph(format!(
                "edge ({tail}, {head}) references a missing vertex"
            )));
        }
        if let Some(c) = color {
            if c >= self.colors.len() {
                return Err(GraphError::InvalidGraph(format!("color {c} out of range")));
            }
        }
        self.edges.push(Edge { tail, head, color });
        Ok(self.edges.len() - 1)
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn color_index(&self, label: &str) -> Result<ColorId, GraphError> {
        self.colors
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| GraphError::UnknownColor(label.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.edges[e].tail == self.edges[e].head
    }

    /// Component index per vertex, numbered by first appearance.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.num_vertices];
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); self.num_vertices];
        for e in &self.edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        let mut next = 0;
        for start in 0..self.num_vertices {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn num_components(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices <= 1 || self.num_components() == 1
    }

    /// BFS spanning forest: per vertex, the edge and direction used to
    /// reach it from its component root (roots get `None`).
    fn spanning_forest(&self) -> Vec<Option<(EdgeId, bool)>> {
        // bool: true when the edge is traversed tail -> head
        let mut parent: Vec<Option<(EdgeId, bool)>> = vec![None; self.num_vertices];
        let mut seen = vec![false; self.num_vertices];
        let mut adj: Vec<Vec<(VertexId, EdgeId, bool)>> = vec![Vec::new(); self.num_vertices];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((e.head, id, true));
            adj[e.head].push((e.tail, id, false));
        }
        for start in 0..self.num_vertices {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, id, fwd) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((id, fwd));
                        queue.push_back(w);
                    }
                }
            }
        }
        parent
    }

    /// Path chain from `from` to `to` along the spanning forest (must lie
    /// in one component): a 1-chain with boundary `to - from`.
    fn forest_path(
        &self,
        parent: &[Option<(EdgeId, bool)>],
        from: VertexId,
        to: VertexId,
    ) -> Chain1<i64> {
        let mut chain = Chain1::new();
        let walk_up = |mut v: VertexId, sign: i64, chain: &mut Chain1<i64>| {
            let mut depth = 0usize;
            while let Some((e, fwd)) = parent[v] {
                chain.add_edge(e, if fwd { sign } else { -sign });
                v = if fwd { self.edges[e].tail } else { self.edges[e].head };
                depth += 1;
                assert!(depth <= self.num_vertices, "forest has a cycle");
            }
            v
        };
        let r1 = walk_up(to, 1, &mut chain);
        let r2 = walk_up(from, -1, &mut chain);
        debug_assert_eq!(r1, r2, "endpoints in different components");
        chain
    }
}

/// Formal linear combination of oriented edges, finitely supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain1<T> {
    coeffs: BTreeMap<EdgeId, T>,
}

impl<T: Scalar> Chain1<T> {
    pub fn new() -> Self {
        Chain1 {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(coeffs: BTreeMap<EdgeId, T>) -> Self {
        let mut c = Chain1 { coeffs };
        c.coeffs.retain(|_, v| !v.is_zero());
        c
    }

    pub fn edge(e: EdgeId) -> Self {
        let mut c = Self::new();
        c.add_edge(e, T::one());
        c
    }

    pub fn add_edge(&mut self, e: EdgeId, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(T::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: EdgeId) -> T {
        self.coeffs.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, &T)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, by: &T) -> Self {
        let mut out = Self::new();
        for (&e, v) in &self.coeffs {
            out.add_edge(e, v.clone() * by.clone());
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, v) in &other.coeffs {
            out.add_edge(e, v.clone());
        }
        out
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Chain1<U> {
        let mut out = Chain1::new();
        for (&e, v) in &self.coeffs {
            out.add_edge(e, f(v));
        }
        out
    }
}

impl<T: Scalar> Default for Chain1<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Boundary of a 1-chain: the 0-chain `sum coeff * (head - tail)`.
pub fn boundary<T: Scalar>(
    chain: &Chain1<T>,
    g: &ColoredGraph,
) -> Result<BTreeMap<VertexId, T>, GraphError> {
    let mut out: BTreeMap<VertexId, T> = BTreeMap::new();
    for (&e, coeff) in chain.iter() {
        let edge = *g.edges.get(e).ok_or(GraphError::UnknownEdge(e))?;
        for (v, sign) in [(edge.head, coeff.clone()), (edge.tail, -coeff.clone())] {
            let entry = out.entry(v).or_insert_with(T::zero);
            *entry += sign;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

pub fn is_closed<T: Scalar>(chain: &Chain1<T>, g: &ColoredGraph) -> Result<bool, GraphError> {
    Ok(boundary(chain, g)?.is_empty())
}

/// Color profile: the vector whose `s`-coordinate sums the coefficients
/// of the `s`-colored edges. Errors on colorless support.
pub fn color_profile<T: Scalar>(
    chain: &Chain1<T>,
    g: &ColoredGraph,
) -> Result<Vec<T>, GraphError> {
    let mut out = vec![T::zero(); g.colors.len()];
    for (&e, coeff) in chain.iter() {
        let edge = g.edges.get(e).ok_or(GraphError::UnknownEdge(e))?;
        let s = edge.color.ok_or(GraphError::ColorlessEdgeInChain(e))?;
        out[s] += coeff.clone();
    }
    Ok(out)
}

/// Weighted color profile: an `s`-colored edge contributes
/// `weight(e) * coeff(e)` to the `s`-coordinate.
pub fn weighted_color_profile<T: Scalar>(
    chain: &Chain1<T>,
    weights: &BTreeMap<EdgeId, T>,
    g: &ColoredGraph,
) -> Result<Vec<T>, GraphError> {
    let mut out = vec![T::zero(); g.colors.len()];
    for (&e, coeff) in chain.iter() {
        let edge = g.edges.get(e).ok_or(GraphError::UnknownEdge(e))?;
        let s = edge.color.ok_or(GraphError::ColorlessEdgeInChain(e))?;
        let w = weights.get(&e).ok_or(GraphError::MissingWeight(e))?;
        out[s] += w.clone() * coeff.clone();
    }
    Ok(out)
}

/// Fundamental cycles of a spanning forest. The cycle attached to a
/// non-forest edge `e` is `e` plus the forest path from `head(e)` back to
/// `tail(e)`; it carries `e` with coefficient `+1` and is closed.
#[derive(Debug, Clone)]
pub struct H1Basis {
    pub cycles: Vec<Chain1<i64>>,
    pub forest_edges: Vec<EdgeId>,
    /// Non-forest edge generating each cycle, parallel to `cycles`.
    pub generators: Vec<EdgeId>,
}

impl H1Basis {
    pub fn dim(&self) -> usize {
        self.cycles.len()
    }
}

pub fn h1_basis(g: &ColoredGraph) -> H1Basis {
    let parent = g.spanning_forest();
    let mut in_forest = vec![false; g.num_edges()];
    for p in parent.iter().flatten() {
        in_forest[p.0] = true;
    }
    let mut cycles = Vec::new();
    let mut generators = Vec::new();
    for (id, e) in g.edges.iter().enumerate() {
        if in_forest[id] {
            continue;
        }
        let mut cycle = g.forest_path(&parent, e.head, e.tail);
        cycle.add_edge(id, 1);
        debug_assert!(is_closed(&cycle, g).unwrap());
        cycles.push(cycle);
        generators.push(id);
    }
    let forest_edges = (0..g.num_edges()).filter(|&e| in_forest[e]).collect();
    H1Basis {
        cycles,
        forest_edges,
        generators,
    }
}

/// Path chain from `from` to `to` in a connected graph, along a BFS
/// spanning forest; boundary is `to - from`.
pub fn path_chain(
    g: &ColoredGraph,
    from: VertexId,
    to: VertexId,
) -> Result<Chain1<i64>, GraphError> {
    let comp = g.components();
    if comp[from] != comp[to] {
        return Err(GraphError::Disconnected);
    }
    Ok(g.forest_path(&g.spanning_forest(), from, to))
}

/// Image of one edge under a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeImage {
    /// `flip` records an orientation-reversing identification.
    To { edge: EdgeId, flip: bool },
    Contracted,
}

/// Morphism of colored graphs: incidence-compatible vertex and edge maps;
/// colors are preserved, edges may be contracted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeImage>,
}

impl GraphMorphism {
    pub fn identity(g: &ColoredGraph) -> Self {
        GraphMorphism {
            vertex_map: (0..g.num_vertices()).collect(),
            edge_map: (0..g.num_edges())
                .map(|e| EdgeImage::To { edge: e, flip: false })
                .collect(),
        }
    }

    /// Checks incidence and color compatibility against the two graphs.
    pub fn validate(&self, dom: &ColoredGraph, cod: &ColoredGraph) -> Result<(), GraphError> {
        if self.vertex_map.len() != dom.num_vertices() || self.edge_map.len() != dom.num_edges() {
            return Err(GraphError::BadMorphism("map sizes".into()));
        }
        if let Some(&v) = self.vertex_map.iter().find(|&&v| v >= cod.num_vertices()) {
            return Err(GraphError::BadMorphism(format!("vertex image {v} missing")));
        }
        for (id, e) in dom.edges.iter().enumerate() {
            let (t, h) = (self.vertex_map[e.tail], self.vertex_map[e.head]);
            match self.edge_map[id] {
                EdgeImage::Contracted => {
                    if t != h {
                        return Err(GraphError::BadMorphism(format!(
                            "edge {id} contracted but endpoints map apart"
                        )));
                    }
                }
                EdgeImage::To { edge, flip } => {
                    let img = cod
                        .edges
                        .get(edge)
                        .ok_or_else(|| GraphError::BadMorphism(format!("edge image {edge}")))?;
                    let (it, ih) = if flip {
                        (img.head, img.tail)
                    } else {
                        (img.tail, img.head)
                    };
                    if (t, h) != (it, ih) {
                        return Err(GraphError::BadMorphism(format!(
                            "edge {id} image incidence mismatch"
                        )));
                    }
                    let dom_color = e.color.map(|c| dom.colors[c].as_str());
                    let cod_color = img.color.map(|c| cod.colors[c].as_str());
                    if dom_color != cod_color {
                        return Err(GraphError::BadMorphism(format!("edge {id} color changes")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Pushforward of a chain: contracted edges drop, signs apply.
    pub fn pushforward<T: Scalar>(&self, chain: &Chain1<T>) -> Chain1<T> {
        let mut out = Chain1::new();
        for (&e, coeff) in chain.iter() {
            match self.edge_map[e] {
                EdgeImage::Contracted => {}
                EdgeImage::To { edge, flip } => {
                    let c = if flip { -coeff.clone() } else { coeff.clone() };
                    out.add_edge(edge, c);
                }
            }
        }
        out
    }

    pub fn push_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v]
    }
}

/// Result of refining edges into paths: the refined graph plus the chain
/// transfer data.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub graph: ColoredGraph,
    /// Per original edge, the ids of its path segments in order.
    pub segments: Vec<Vec<EdgeId>>,
    /// Vertices `0..orig_vertices` of the refined graph are the originals.
    pub orig_vertices: usize,
}

impl Refinement {
    /// The transfer map: each edge goes to the sum of its segments.
    /// Restricts to an isomorphism on cycle spaces.
    pub fn transfer<T: Scalar>(&self, chain: &Chain1<T>) -> Chain1<T> {
        let mut out = Chain1::new();
        for (&e, coeff) in chain.iter() {
            for &seg in &self.segments[e] {
                out.add_edge(seg, coeff.clone());
            }
        }
        out
    }
}

/// Replaces each edge `e` by a directed path of `counts[e]` edges of the
/// same color and orientation. Counts must be at least 1.
pub fn refine(g: &ColoredGraph, counts: &[usize]) -> Refinement {
    assert_eq!(counts.len(), g.num_edges());
    assert!(counts.iter().all(|&c| c >= 1), "counts must be >= 1");
    let extra: usize = counts.iter().map(|&c| c - 1).sum();
    let mut out = ColoredGraph::new(g.colors.clone(), g.num_vertices + extra);
    let mut segments = Vec::with_capacity(g.num_edges());
    let mut next_vertex = g.num_vertices;
    for (id, e) in g.edges.iter().enumerate() {
        let k = counts[id];
        let mut segs = Vec::with_capacity(k);
        let mut cur = e.tail;
        for step in 0..k {
            let nxt = if step + 1 == k {
                e.head
            } else {
                next_vertex += 1;
                next_vertex - 1
            };
            segs.push(out.add_edge(cur, nxt, e.color).expect("valid refinement"));
            cur = nxt;
        }
        segments.push(segs);
    }
    Refinement {
        graph: out,
        segments,
        orig_vertices: g.num_vertices,
    }
}

// ---------------------------------------------------------------------------
// JSON formats

#[derive(Debug, Serialize, Deserialize)]
struct EdgeJson {
    id: usize,
    tail: usize,
    head: usize,
    color: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    colors: Vec<String>,
    vertices: usize,
    edges: Vec<EdgeJson>,
}

impl ColoredGraph {
    pub fn to_json(&self) -> serde_json::Value {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(id, e)| EdgeJson {
                id,
                tail: e.tail,
                head: e.head,
                color: e.color.map(|c| self.colors[c].clone()),
            })
            .collect();
        serde_json::to_value(GraphJson {
            colors: self.colors.clone(),
            vertices: self.num_vertices,
            edges,
        })
        .expect("graph serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, GraphError> {
        let parsed: GraphJson = serde_json::from_value(v.clone())
            .map_err(|e| GraphError::InvalidGraph(e.to_string()))?;
        let mut g = ColoredGraph::new(parsed.colors, parsed.vertices);
        let mut edges = parsed.edges;
        edges.sort_by_key(|e| e.id);
        for (expect, e) in edges.iter().enumerate() {
            if e.id != expect {
                return Err(GraphError::InvalidGraph(format!(
                    "edge ids must be 0..n-1, found {}",
                    e.id
                )));
            }
            let color = e
                .color
                .as_deref()
                .map(|label| g.color_index(label))
                .transpose()?;
            g.add_edge(e.tail, e.head, color)?;
        }
        Ok(g)
    }
}

/// JSON for integer chains: `{"ring": ..., "coeffs": {"edge-id": int}}`.
pub fn chain_to_json(chain: &Chain1<i64>, ring: &str) -> serde_json::Value {
    let coeffs: BTreeMap<String, i64> = chain.iter().map(|(&e, &v)| (e.to_string(), v)).collect();
    serde_json::json!({ "ring": ring, "coeffs": coeffs })
}

pub fn chain_from_json(v: &serde_json::Value) -> Result<(Chain1<i64>, String), GraphError> {
    let ring = v
        .get("ring")
        .and_then(|r| r.as_str())
        .ok_or_else(|| GraphError::InvalidGraph("chain missing ring tag".into()))?
        .to_string();
    let coeffs = v
        .get("coeffs")
        .and_then(|c| c.as_object())
        .ok_or_else(|| GraphError::InvalidGraph("chain missing coeffs".into()))?;
    let mut chain = Chain1::new();
    for (k, val) in coeffs {
        let e: usize = k
            .parse()
            .map_err(|_| GraphError::InvalidGraph(format!("bad edge id {k:?}")))?;
        let c = val
            .as_i64()
            .ok_or_else(|| GraphError::InvalidGraph(format!("bad coefficient for edge {k}")))?;
        chain.add_edge(e, c);
    }
    Ok((chain, ring))
}
