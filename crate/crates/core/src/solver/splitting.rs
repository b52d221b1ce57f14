//! Quadratic splittings in colored graphs: witness verification, the
//! characteristic chains and their weights, the refinement into the
//! Albanese graph, and the reduction of solutions down to level
//! `(l^{r-j}, 1)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::albanese::{self, AlbParams};
use crate::error::SolverError;
use crate::graph::{self, ColoredGraph, EdgeId};
use crate::matroid::Matroid;
use crate::ring::{ell_valuation, lift_mod, ResidueRing, Valuation};
use crate::{IntChain, RatChain};

use super::{validate_solution_on, Solution};

fn rat_i64(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A claimed quadratic splitting of level `d` at the prime `ell`: an
/// S-colored graph, one closed chain per realization row spanning the
/// embedded copy of the row lattice, and a complement basis.
#[derive(Debug, Clone)]
pub struct SplittingWitness {
    pub matroid: Matroid,
    pub ell: u32,
    pub level: u64,
    pub graph: ColoredGraph,
    /// embedded images of the realization rows
    pub u_chains: Vec<RatChain>,
    /// basis of the claimed complement
    pub complement: Vec<RatChain>,
}

impl SplittingWitness {
    /// The splitting a cographic matroid carries on its own graph: each
    /// edge colored by its own ground element, the row lattice embedded
    /// as the fundamental cycles themselves, empty complement, level 1.
    /// `m` must be the cographic matroid of the given graph with edges
    /// in ground order.
    pub fn tautological(
        m: &Matroid,
        num_vertices: usize,
        graph_edges: &[(usize, usize)],
        ell: u32,
    ) -> Result<SplittingWitness, SolverError> {
        assert_eq!(graph_edges.len(), m.size(), "one edge per ground element");
        let mut g = ColoredGraph::new(m.ground().to_vec(), num_vertices);
        for (i, &(t, h)) in graph_edges.iter().enumerate() {
            g.add_edge(t, h, Some(i)).map_err(SolverError::Graph)?;
        }
        let u_chains: Vec<RatChain> = (0..m.rank())
            .map(|k| {
                let mut c = RatChain::new();
                for e in 0..m.size() {
                    c.add_edge(e, rat_i64(m.entry(k, e)));
                }
                c
            })
            .collect();
        Ok(SplittingWitness {
            matroid: m.clone(),
            ell,
            level: 1,
            graph: g,
            u_chains,
            complement: Vec::new(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let chain_json = |c: &RatChain| -> BTreeMap<String, String> {
            c.iter().map(|(&e, v)| (e.to_string(), v.to_string())).collect()
        };
        serde_json::json!({
            "matroid": self.matroid.to_json(),
            "ell": self.ell,
            "level": self.level,
            "graph": self.graph.to_json(),
            "u_chains": self.u_chains.iter().map(chain_json).collect::<Vec<_>>(),
            "complement": self.complement.iter().map(chain_json).collect::<Vec<_>>(),
        })
    }

    /// Accepts both the graph form and the general weighted form; the
    /// latter carries a `weights` object `{color: {edge: count}}` on an
    /// uncolored graph and is normalized on load.
    pub fn from_json(v: &serde_json::Value) -> Result<SplittingWitness, SolverError> {
        let matroid = Matroid::from_json(
            v.get("matroid")
                .ok_or_else(|| SolverError::InvalidWitness("missing matroid".into()))?,
        )?;
        let ell = v
            .get("ell")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| SolverError::InvalidWitness("missing ell".into()))? as u32;
        let level = v
            .get("level")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| SolverError::InvalidWitness("missing level".into()))?;
        if level == 0 {
            return Err(SolverError::InvalidWitness("level must be positive".into()));
        }
        let graph = ColoredGraph::from_json(
            v.get("graph")
                .ok_or_else(|| SolverError::InvalidWitness("missing graph".into()))?,
        )
        .map_err(SolverError::Graph)?;
        let parse_chains = |key: &str| -> Result<Vec<RatChain>, SolverError> {
            let Some(arr) = v.get(key) else {
                return Ok(Vec::new());
            };
            let arr = arr
                .as_array()
                .ok_or_else(|| SolverError::InvalidWitness(format!("{key} must be a list")))?;
            arr.iter().map(parse_rat_chain).collect()
        };
        let u_chains = parse_chains("u_chains")?;
        let complement = parse_chains("complement")?;
        if u_chains.len() != matroid.rank() {
            return Err(SolverError::InvalidWitness(format!(
                "expected {} embedded row chains, got {}",
                matroid.rank(),
                u_chains.len()
            )));
        }
        let mut w = SplittingWitness {
            matroid,
            ell,
            level,
            graph,
            u_chains,
            complement,
        };
        if let Some(weights) = v.get("weights") {
            w = normalize_weighted_form(w, weights)?;
        }
        Ok(w)
    }
}

fn parse_rat_chain(v: &serde_json::Value) -> Result<RatChain, SolverError> {
    let obj = v
        .as_object()
        .ok_or_else(|| SolverError::InvalidWitness("chain must be an object".into()))?;
    let mut c = RatChain::new();
    for (k, val) in obj {
        let e: EdgeId = k
            .parse()
            .map_err(|_| SolverError::InvalidWitness(format!("bad edge id {k:?}")))?;
        let q = match val {
            serde_json::Value::Number(x) if x.is_i64() => rat_i64(x.as_i64().unwrap()),
            serde_json::Value::String(s) => s
                .parse::<BigRational>()
                .map_err(|_| SolverError::InvalidWitness(format!("bad rational {s:?}")))?,
            _ => {
                return Err(SolverError::InvalidWitness(format!(
                    "bad coefficient for edge {k}"
                )))
            }
        };
        c.add_edge(e, q);
    }
    Ok(c)
}

/// Translates the general weighted form into the graph form: edges with
/// zero total weight are contracted (they must form a forest), and an
/// edge of total weight W is divided into W consecutive edges, with
/// `a_{se}` of them colored `s`.
fn normalize_weighted_form(
    w: SplittingWitness,
    weights_json: &serde_json::Value,
) -> Result<SplittingWitness, SolverError> {
    let obj = weights_json
        .as_object()
        .ok_or_else(|| SolverError::InvalidWitness("weights must be an object".into()))?;
    let ne = w.graph.num_edges();
    let n = w.matroid.size();
    // weights[s][e]
    let mut weights = vec![vec![0u64; ne]; n];
    for (label, per_edge) in obj {
        let s = w.matroid.label_index(label)?;
        let per_edge = per_edge
            .as_object()
            .ok_or_else(|| SolverError::InvalidWitness("weights entries are objects".into()))?;
        for (k, val) in per_edge {
            let e: EdgeId = k
                .parse()
                .map_err(|_| SolverError::InvalidWitness(format!("bad edge id {k:?}")))?;
            if e >= ne {
                return Err(SolverError::Graph(crate::error::GraphError::UnknownEdge(e)));
            }
            weights[s][e] = val
                .as_u64()
                .ok_or_else(|| SolverError::InvalidWitness("weights are non-negative".into()))?;
        }
    }
    let total: Vec<u64> = (0..ne).map(|e| (0..n).map(|s| weights[s][e]).sum()).collect();

    // contract the zero-weight edges; they must not contain a cycle,
    // since contraction must preserve the cycle space
    let mut zero_sub = ColoredGraph::new(vec![], w.graph.num_vertices());
    for (e, &t) in total.iter().enumerate() {
        if t == 0 {
            let edge = w.graph.edge(e);
            zero_sub
                .add_edge(edge.tail, edge.head, None)
                .map_err(SolverError::Graph)?;
        }
    }
    if graph::h1_basis(&zero_sub).dim() > 0 {
        return Err(SolverError::InvalidWitness(
            "zero-weight edges contain a cycle; the splitting does not normalize".into(),
        ));
    }
    // vertex classes after contracting zero-weight edges
    let mut parent: Vec<usize> = (0..w.graph.num_vertices()).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let r = find(parent, parent[v]);
            parent[v] = r;
        }
        parent[v]
    }
    for (e, &t) in total.iter().enumerate() {
        if t == 0 {
            let edge = w.graph.edge(e);
            let (a, b) = (find(&mut parent, edge.tail), find(&mut parent, edge.head));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut new_id = vec![usize::MAX; w.graph.num_vertices()];
    let mut count = 0;
    for v in 0..w.graph.num_vertices() {
        let r = find(&mut parent, v);
        if new_id[r] == usize::MAX {
            new_id[r] = count;
            count += 1;
        }
        new_id[v] = new_id[r];
    }

    let mut out = ColoredGraph::new(w.matroid.ground().to_vec(), count);
    // per original edge, its run of subdivided edge ids
    let mut segments: Vec<Vec<EdgeId>> = vec![Vec::new(); ne];
    for e in 0..ne {
        if total[e] == 0 {
            continue;
        }
        let edge = w.graph.edge(e);
        let (tail, head) = (new_id[edge.tail], new_id[edge.head]);
        let k = total[e] as usize;
        let mut colors_run: Vec<usize> = Vec::with_capacity(k);
        for (s, per_edge) in weights.iter().enumerate() {
            for _ in 0..per_edge[e] {
                colors_run.push(s);
            }
        }
        let extra = k - 1;
        let base = out.num_vertices();
        // allocate the internal vertices by rebuilding with more slots
        let mut expanded = ColoredGraph::new(out.colors().to_vec(), out.num_vertices() + extra);
        for old in out.edges() {
            expanded
                .add_edge(old.tail, old.head, old.color)
                .map_err(SolverError::Graph)?;
        }
        let mut cur = tail;
        for (step, &color) in colors_run.iter().enumerate() {
            let nxt = if step + 1 == k { head } else { base + step };
            let id = expanded
                .add_edge(cur, nxt, Some(color))
                .map_err(SolverError::Graph)?;
            segments[e].push(id);
            cur = nxt;
        }
        out = expanded;
    }
    let transfer = |c: &RatChain| -> RatChain {
        let mut t = RatChain::new();
        for (&e, v) in c.iter() {
            for &seg in &segments[e] {
                t.add_edge(seg, v.clone());
            }
        }
        t
    };
    Ok(SplittingWitness {
        matroid: w.matroid,
        ell: w.ell,
        level: w.level,
        graph: out,
        u_chains: w.u_chains.iter().map(transfer).collect(),
        complement: w.complement.iter().map(transfer).collect(),
    })
}

/// Per-check outcome of a splitting verification.
#[derive(Debug, Clone)]
pub struct SplittingReport {
    pub entries_local: bool,
    pub nonlocal: Vec<String>,
    pub chains_closed: bool,
    pub not_closed: Vec<String>,
    pub direct_sum: bool,
    pub orthogonal: bool,
    /// (color, embedded index, complement index)
    pub orthogonal_failures: Vec<(String, usize, usize)>,
    pub restriction: bool,
    /// (color, row, row)
    pub restriction_failures: Vec<(String, usize, usize)>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.entries_local
            && self.chains_closed
            && self.direct_sum
            && self.orthogonal
            && self.restriction
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed(),
            "entries_local": self.entries_local,
            "nonlocal": self.nonlocal,
            "chains_closed": self.chains_closed,
            "not_closed": self.not_closed,
            "direct_sum": self.direct_sum,
            "orthogonal": self.orthogonal,
            "orthogonal_failures": self.orthogonal_failures,
            "restriction": self.restriction,
            "restriction_failures": self.restriction_failures,
        })
    }
}

/// The diagonal form of color `s` applied to two chains: the sum of
/// products of coefficients over the `s`-colored edges.
fn q_form(g: &ColoredGraph, s: usize, a: &RatChain, b: &RatChain) -> BigRational {
    let mut acc = BigRational::zero();
    for (&e, va) in a.iter() {
        if g.edge(e).color == Some(s) {
            let vb = b.coeff(e);
            if !vb.is_zero() {
                acc += va.clone() * vb;
            }
        }
    }
    acc
}

/// Verifies a splitting witness exactly over the rationals: local
/// entries, closed chains, the direct-sum property at the prime, the
/// orthogonality of the complement for every color form, and the level
/// of the restriction to the embedded lattice.
pub fn verify_splitting(w: &SplittingWitness) -> Result<SplittingReport, SolverError> {
    let m = &w.matroid;
    let g = &w.graph;
    let color_to_ground =
        albanese::match_colors(g, m).map_err(|_| SolverError::ColorMismatch)?;
    let mut report = SplittingReport {
        entries_local: true,
        nonlocal: Vec::new(),
        chains_closed: true,
        not_closed: Vec::new(),
        direct_sum: false,
        orthogonal: true,
        orthogonal_failures: Vec::new(),
        restriction: true,
        restriction_failures: Vec::new(),
    };
    let named = |kind: &str, i: usize| format!("{kind}[{i}]");
    for (kind, chains) in [("u", &w.u_chains), ("complement", &w.complement)] {
        for (i, c) in chains.iter().enumerate() {
            for (&e, v) in c.iter() {
                if e >= g.num_edges() {
                    return Err(SolverError::Graph(crate::error::GraphError::UnknownEdge(e)));
                }
                if !ell_valuation(v, w.ell).is_nonnegative() {
                    report.entries_local = false;
                    report.nonlocal.push(format!("{}[edge {e}]", named(kind, i)));
                }
            }
            if !graph::is_closed(c, g).map_err(SolverError::Graph)? {
                report.chains_closed = false;
                report.not_closed.push(named(kind, i));
            }
        }
    }

    // direct sum: coordinates on the fundamental cycles form a square
    // matrix whose determinant is a unit at the prime
    let h1 = graph::h1_basis(g);
    let dim = h1.dim();
    if w.u_chains.len() + w.complement.len() == dim && report.chains_closed {
        let rows: Vec<Vec<BigRational>> = w
            .u_chains
            .iter()
            .chain(&w.complement)
            .map(|c| h1.generators.iter().map(|&e| c.coeff(e)).collect())
            .collect();
        let t = crate::RatMatrix::from_rows(rows);
        let det = t.det_field();
        report.direct_sum = ell_valuation(&det, w.ell) == Valuation::Finite(0);
    }

    // the complement is orthogonal to the embedding for every color form
    for s in 0..g.colors().len() {
        let label = &g.colors()[s];
        for (a, u) in w.u_chains.iter().enumerate() {
            for (b, u2) in w.complement.iter().enumerate() {
                if !q_form(g, s, u, u2).is_zero() {
                    report.orthogonal = false;
                    report.orthogonal_failures.push((label.clone(), a, b));
                }
            }
        }
    }

    // the restriction to the embedded lattice is `level` times the
    // square of the color functional
    let level = rat_i64(w.level as i64);
    for (s, (label, &ground_s)) in g.colors().iter().zip(&color_to_ground).enumerate() {
        for a in 0..w.u_chains.len() {
            for b in a..w.u_chains.len() {
                let got = q_form(g, s, &w.u_chains[a], &w.u_chains[b]);
                let expect =
                    level.clone() * rat_i64(m.entry(a, ground_s)) * rat_i64(m.entry(b, ground_s));
                if got != expect {
                    report.restriction = false;
                    report.restriction_failures.push((label.clone(), a, b));
                }
            }
        }
    }
    Ok(report)
}

/// The weight of each colored edge (the multiplier relating the edge
/// functional restricted to the embedded lattice to its color
/// functional) and the per-color characteristic chains.
pub fn characteristic_chains(
    w: &SplittingWitness,
) -> Result<(BTreeMap<EdgeId, BigRational>, Vec<RatChain>), SolverError> {
    let m = &w.matroid;
    let g = &w.graph;
    let color_to_ground =
        albanese::match_colors(g, m).map_err(|_| SolverError::ColorMismatch)?;
    let mut weights: BTreeMap<EdgeId, BigRational> = BTreeMap::new();
    let mut chains: Vec<RatChain> = vec![RatChain::new(); m.size()];
    for e in 0..g.num_edges() {
        let color = g.edge(e).color.expect("colored graph");
        let s = color_to_ground[color];
        let pivot_row = (0..m.rank())
            .find(|&k| m.entry(k, s) != 0)
            .ok_or_else(|| SolverError::DivisionUndefined(m.ground()[s].clone()))?;
        let a_e = w.u_chains[pivot_row].coeff(e) / rat_i64(m.entry(pivot_row, s));
        // the edge functional must be this multiple of y_s on every row
        for k in 0..m.rank() {
            if w.u_chains[k].coeff(e) != a_e.clone() * rat_i64(m.entry(k, s)) {
                return Err(SolverError::NotMultiple(e));
            }
        }
        if !a_e.is_zero() {
            chains[s].add_edge(e, a_e.clone());
        }
        weights.insert(e, a_e);
    }

    // the weighted profile of each characteristic chain is the level,
    // and the complement is weight-colorless
    let level = rat_i64(w.level as i64);
    for (s, chain) in chains.iter().enumerate() {
        let mut acc = BigRational::zero();
        for (&e, v) in chain.iter() {
            acc += weights[&e].clone() * v.clone();
        }
        if acc != level {
            return Err(SolverError::InvalidWitness(format!(
                "weighted profile of chain {s} is {acc}, expected the level {level}"
            )));
        }
    }
    for (i, u2) in w.complement.iter().enumerate() {
        let mut acc = vec![BigRational::zero(); m.size()];
        for (&e, v) in u2.iter() {
            let s = color_to_ground[g.edge(e).color.expect("colored")];
            acc[s] += weights[&e].clone() * v.clone();
        }
        if acc.iter().any(|a| !a.is_zero()) {
            return Err(SolverError::InvalidWitness(format!(
                "complement chain {i} has a nonzero weighted profile"
            )));
        }
    }
    Ok((weights, chains))
}

/// Everything the pipeline produces for one witness.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub solution: Solution,
    /// the exponent of the prime in the level
    pub j: u32,
    pub albanese: crate::albanese::AlbaneseGraph,
}

/// Turns a verified splitting of level `d = l^j d'` into an
/// `l^{j+1}`-indivisible solution at level `(l^r, l^j)`: lift the edge
/// weights to minimal positive integers mod `l^r`, refine each edge into
/// that many segments, map the refined graph into the Albanese graph,
/// and push the characteristic chains forward.
pub fn splitting_to_solution(
    w: &SplittingWitness,
    r: u32,
    max_edges: u64,
) -> Result<PipelineOutput, SolverError> {
    let report = verify_splitting(w)?;
    if !report.passed() {
        return Err(SolverError::InvalidWitness(format!(
            "splitting does not verify: {}",
            report.to_json()
        )));
    }
    if !w.matroid.is_loopless() {
        return Err(SolverError::Matroid(
            crate::error::MatroidError::LoopElement(w.matroid.loops().remove(0)),
        ));
    }
    let m = &w.matroid;
    let ring = ResidueRing::new(w.ell, r)?;
    let j = match ell_valuation(&rat_i64(w.level as i64), w.ell) {
        Valuation::Finite(v) => v as u32,
        Valuation::Infinite => unreachable!("level is positive"),
    };
    if r < j + 1 {
        return Err(SolverError::InvalidWitness(format!(
            "target exponent {r} must exceed the level valuation {j}"
        )));
    }
    let (weights, chains) = characteristic_chains(w)?;

    // glue components: identify the lowest vertex of every component
    let host = glue_components(&w.graph);

    // refine by the lifted weights and push the chains to integers
    let lifted: Vec<u64> = (0..host.num_edges())
        .map(|e| lift_mod(&weights[&e], ring))
        .collect::<Result<_, _>>()?;
    let refinement = graph::refine(&host, &lifted.iter().map(|&x| x as usize).collect::<Vec<_>>());
    let modulus = ring.modulus() as i64;
    let refined_chains: Vec<IntChain> = chains
        .iter()
        .map(|c| {
            let int_chain: IntChain = c.map_coeffs(|q| {
                let lifted = lift_mod(q, ring).expect("verified local weight");
                (lifted % ring.modulus()) as i64
            });
            refinement.transfer(&int_chain)
        })
        .collect();

    let params = AlbParams::new(w.ell, r, j);
    let (alb, into_alb) =
        albanese::alb_map(&refinement.graph, m, params, 0, max_edges)?;
    let pushed: Vec<IntChain> = refined_chains
        .iter()
        .map(|c| {
            into_alb
                .pushforward(c)
                .map_coeffs(|&v| v.rem_euclid(modulus))
        })
        .collect();
    let profiles: Vec<i64> = pushed
        .iter()
        .map(|c| c.iter().map(|(_, &v)| v).fold(0i64, |a, v| (a + v).rem_euclid(modulus)))
        .collect();
    let solution = Solution {
        matroid_name: m.name().to_string(),
        params,
        reduced: false,
        chains: pushed,
        profiles,
    };
    // the profile of every chain must be the level at its own color
    let d_mod = (w.level % ring.modulus()) as i64;
    for (s, &p) in solution.profiles.iter().enumerate() {
        if p != d_mod {
            return Err(SolverError::InvalidSolution(format!(
                "profile at color {s} is {p}, expected {d_mod}"
            )));
        }
    }
    validate_solution_on(m, &solution, &alb.graph)?;
    debug_assert!(solution.indivisibility_index() > j);
    Ok(PipelineOutput {
        solution,
        j,
        albanese: alb,
    })
}

/// Identifies the lowest vertex of each component with vertex 0's
/// component representative, keeping edge ids unchanged.
fn glue_components(g: &ColoredGraph) -> ColoredGraph {
    let comp = g.components();
    let ncomp = comp.iter().max().map_or(0, |m| m + 1);
    if ncomp <= 1 {
        return g.clone();
    }
    let mut lowest = vec![usize::MAX; ncomp];
    for (v, &c) in comp.iter().enumerate() {
        if lowest[c] == usize::MAX {
            lowest[c] = v;
        }
    }
    // all component representatives collapse onto the global lowest
    let glued: std::collections::HashSet<usize> = lowest.iter().copied().collect();
    let target = *lowest.iter().min().expect("nonempty");
    let mut remap = vec![usize::MAX; g.num_vertices()];
    let mut next = 0;
    for (v, slot) in remap.iter_mut().enumerate() {
        if glued.contains(&v) && v != target {
            continue;
        }
        *slot = next;
        next += 1;
    }
    let glued_id = remap[target];
    for slot in remap.iter_mut() {
        if *slot == usize::MAX {
            *slot = glued_id;
        }
    }
    let mut out = ColoredGraph::new(g.colors().to_vec(), next);
    for e in g.edges() {
        out.add_edge(remap[e.tail], remap[e.head], e.color)
            .expect("remapped edge");
    }
    out
}

/// A solution carried from level `(l^r, l^j)` down to `(l^{r-j}, 1)`:
/// refine, push along the homotopy, and collapse the uniform refinement.
#[derive(Debug, Clone)]
pub struct ReducedSolution {
    pub solution: Solution,
    /// profiles of the pushed chains before collapsing, mod `l^r`;
    /// these equal the input profiles exactly
    pub preserved_profiles: Vec<i64>,
}

pub fn reduce_solution(
    m: &Matroid,
    sol: &Solution,
    max_edges: u64,
) -> Result<ReducedSolution, SolverError> {
    if sol.reduced {
        return Err(SolverError::InvalidSolution(
            "reduction applies to solutions on the full graph".into(),
        ));
    }
    let p = sol.params;
    if p.j == 0 {
        return Ok(ReducedSolution {
            solution: sol.clone(),
            preserved_profiles: sol.profiles.clone(),
        });
    }
    let src_alb = albanese::build_with_limit(m, p, max_edges)?;
    validate_solution_on(m, sol, &src_alb.graph)?;
    let scale = (p.ell as u64).pow(p.j);
    let src_hat = albanese::hat(&src_alb, scale);
    let tgt_params = AlbParams::new(p.ell, p.r - p.j, 0);
    let tgt_alb = albanese::build_with_limit(m, tgt_params, max_edges)?;
    let tgt_hat = albanese::hat(&tgt_alb, scale);
    let h = albanese::homotopy_pushforward(m, &src_hat, &tgt_hat)?;

    let modulus = (p.ell as i64).pow(p.r);
    let out_modulus = (p.ell as i64).pow(p.r - p.j);
    let mut out_chains: Vec<IntChain> = Vec::with_capacity(m.size());
    let mut preserved: Vec<i64> = Vec::with_capacity(m.size());
    for chain in &sol.chains {
        let hat_chain = src_hat.refinement.transfer(chain);
        let pushed = h
            .pushforward(&hat_chain)
            .map_coeffs(|&v| v.rem_euclid(modulus));
        let profile = pushed
            .iter()
            .map(|(_, &v)| v)
            .fold(0i64, |a, v| (a + v).rem_euclid(modulus));
        preserved.push(profile);
        // collapse: the segments of each target edge carry one value
        let mut collapsed = IntChain::new();
        for (edge, segs) in tgt_hat.refinement.segments.iter().enumerate() {
            let first = pushed.coeff(segs[0]).rem_euclid(modulus);
            for &seg in segs {
                if pushed.coeff(seg).rem_euclid(modulus) != first {
                    return Err(SolverError::InvalidSolution(format!(
                        "pushed chain is not constant on the segments of edge {edge}"
                    )));
                }
            }
            collapsed.add_edge(edge, first.rem_euclid(out_modulus));
        }
        out_chains.push(collapsed);
    }
    // the homotopy preserves every profile on the nose
    for (s, (&a, &b)) in preserved.iter().zip(&sol.profiles).enumerate() {
        if a.rem_euclid(modulus) != b.rem_euclid(modulus) {
            return Err(SolverError::InvalidSolution(format!(
                "profile at color {s} moved under the homotopy: {a} vs {b}"
            )));
        }
    }
    let profiles: Vec<i64> = out_chains
        .iter()
        .map(|c| {
            c.iter()
                .map(|(_, &v)| v)
                .fold(0i64, |a, v| (a + v).rem_euclid(out_modulus))
        })
        .collect();
    let solution = Solution {
        matroid_name: m.name().to_string(),
        params: tgt_params,
        reduced: false,
        chains: out_chains,
        profiles,
    };
    validate_solution_on(m, &solution, &tgt_alb.graph)?;
    Ok(ReducedSolution {
        solution,
        preserved_profiles: preserved,
    })
}
