//! Property tests: chain-level naturality of pushforward, homology
//! dimensions against the boundary matrix, refinement behavior, and the
//! realization sign-flip invariances of the Albanese construction.

mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use matroidal::albanese::{self, AlbParams};
use matroidal::graph::{
    boundary, h1_basis, refine, ColoredGraph, EdgeImage, GraphMorphism, VertexId,
};
use matroidal::linalg::{FpMat, Gf2Mat};
use matroidal::matroid::{catalog, Matroid};
use matroidal::IntChain;

#[derive(Debug, Clone)]
struct RawGraph {
    nv: usize,
    edges: Vec<(usize, usize, usize)>, // tail, head, color
    ncolors: usize,
}

fn arb_graph() -> impl Strategy<Value = RawGraph> {
    (2usize..6, 1usize..4).prop_flat_map(|(nv, ncolors)| {
        let edge = (0..nv, 0..nv, 0..ncolors);
        proptest::collection::vec(edge, 1..10).prop_map(move |edges| RawGraph {
            nv,
            edges,
            ncolors,
        })
    })
}

fn build_graph(raw: &RawGraph) -> ColoredGraph {
    let colors = (0..raw.ncolors).map(|c| format!("c{c}")).collect();
    let mut g = ColoredGraph::new(colors, raw.nv);
    for &(t, h, c) in &raw.edges {
        g.add_edge(t, h, Some(c)).unwrap();
    }
    g
}

/// A random quotient-and-flip morphism: contract a subset of edges,
/// reverse the orientation of a subset of the survivors.
fn quotient_morphism(
    g: &ColoredGraph,
    contract_mask: u32,
    flip_mask: u32,
) -> (ColoredGraph, GraphMorphism) {
    let mut class: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(class: &mut Vec<usize>, v: usize) -> usize {
        if class[v] != v {
            let r = find(class, class[v]);
            class[v] = r;
        }
        class[v]
    }
    for (e, edge) in g.edges().iter().enumerate() {
        if contract_mask >> (e % 32) & 1 == 1 {
            let (a, b) = (find(&mut class, edge.tail), find(&mut class, edge.head));
            if a != b {
                class[a.max(b)] = a.min(b);
            }
        }
    }
    let mut new_id = vec![usize::MAX; g.num_vertices()];
    let mut count = 0;
    for v in 0..g.num_vertices() {
        let r = find(&mut class, v);
        if new_id[r] == usize::MAX {
            new_id[r] = count;
            count += 1;
        }
        new_id[v] = new_id[r];
    }
    let mut out = ColoredGraph::new(g.colors().to_vec(), count);
    let mut edge_map = Vec::with_capacity(g.num_edges());
    for (e, edge) in g.edges().iter().enumerate() {
        if contract_mask >> (e % 32) & 1 == 1 {
            edge_map.push(EdgeImage::Contracted);
            continue;
        }
        let (mut t, mut h) = (new_id[edge.tail], new_id[edge.head]);
        let flip = flip_mask >> (e % 32) & 1 == 1;
        if flip {
            std::mem::swap(&mut t, &mut h);
        }
        let id = out.add_edge(t, h, edge.color).unwrap();
        edge_map.push(EdgeImage::To { edge: id, flip });
    }
    let morphism = GraphMorphism {
        vertex_map: new_id,
        edge_map,
    };
    morphism.validate(g, &out).unwrap();
    (out, morphism)
}

fn push_zero_chain(
    f: &GraphMorphism,
    b: &BTreeMap<VertexId, i64>,
) -> BTreeMap<VertexId, i64> {
    let mut out: BTreeMap<VertexId, i64> = BTreeMap::new();
    for (&v, &c) in b {
        *out.entry(f.vertex_map[v]).or_default() += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pushforward_commutes_with_boundary(
        raw in arb_graph(),
        contract_mask in any::<u32>(),
        flip_mask in any::<u32>(),
        coeffs in proptest::collection::vec(-3i64..4, 10),
    ) {
        let g = build_graph(&raw);
        let (out, f) = quotient_morphism(&g, contract_mask, flip_mask);
        let mut chain = IntChain::new();
        for (e, &c) in coeffs.iter().take(g.num_edges()).enumerate() {
            chain.add_edge(e, c);
        }
        let lhs = boundary(&f.pushforward(&chain), &out).unwrap();
        let rhs = push_zero_chain(&f, &boundary(&chain, &g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn h1_dimension_matches_boundary_rank(raw in arb_graph()) {
        let g = build_graph(&raw);
        let h1 = h1_basis(&g);
        let c = g.num_components();
        prop_assert_eq!(h1.dim(), g.num_edges() + c - g.num_vertices());
        // cross-check: the boundary matrix of a graph is totally
        // unimodular, so its rank over F2 is its rational rank
        let mut bmat = FpMat::zeros(g.num_edges(), g.num_vertices(), 2).unwrap();
        for (e, edge) in g.edges().iter().enumerate() {
            bmat.add_at(e, edge.head, 1);
            bmat.add_at(e, edge.tail, -1);
        }
        let rank = Gf2Mat::from_fp(&bmat).rank();
        prop_assert_eq!(rank, g.num_vertices() - c);
        prop_assert_eq!(h1.dim(), g.num_edges() - rank);
    }

    #[test]
    fn uniform_refinement_scales_profiles(
        raw in arb_graph(),
        k in 1usize..4,
        coeffs in proptest::collection::vec(-3i64..4, 10),
    ) {
        let g = build_graph(&raw);
        let r = refine(&g, &vec![k; g.num_edges()]);
        let mut chain = IntChain::new();
        for (e, &c) in coeffs.iter().take(g.num_edges()).enumerate() {
            chain.add_edge(e, c);
        }
        let lhs = matroidal::graph::color_profile(&r.transfer(&chain), &r.graph).unwrap();
        let rhs: Vec<i64> = matroidal::graph::color_profile(&chain, &g)
            .unwrap()
            .into_iter()
            .map(|x| x * k as i64)
            .collect();
        prop_assert_eq!(lhs, rhs);
        // transfer maps closed chains to closed chains
        let closed = matroidal::graph::is_closed(&chain, &g).unwrap();
        if closed {
            prop_assert!(matroidal::graph::is_closed(&r.transfer(&chain), &r.graph).unwrap());
        }
    }
}

/// Negating a row of the realization does not move the Albanese graph
/// at all; negating a column reverses the edges of that one color. The
/// explicit coordinate map realizes the isomorphism.
#[test]
fn realization_flips_act_on_albanese_graphs() {
    let tri = {
        let labels: Vec<String> = (0..3).map(|i| format!("t{i}")).collect();
        Matroid::graphic("tri", 3, &[(0, 1), (1, 2), (2, 0)], &labels).unwrap()
    };
    for (m, params) in [
        (catalog("K33").unwrap(), AlbParams::new(2, 1, 0)),
        (tri.clone(), AlbParams::new(3, 1, 0)),
        (tri, AlbParams::new(2, 2, 1)),
    ] {
        let base = albanese::build(&m, params).unwrap();
        // row flips leave the lattice, hence the graph, unchanged
        for k in 0..m.rank() {
            let mut rows: Vec<Vec<i64>> =
                (0..m.rank()).map(|r| m.matrix().row(r).to_vec()).collect();
            for v in rows[k].iter_mut() {
                *v = -*v;
            }
            let flipped = Matroid::validate("rowflip", m.ground().to_vec(), rows).unwrap();
            let alb2 = albanese::build(&flipped, params).unwrap();
            assert_eq!(alb2.graph, base.graph, "row {k} flip changed the graph");
        }
        // column flips: negate the s-coordinate of every vertex
        for s in 0..m.size() {
            let mut rows: Vec<Vec<i64>> =
                (0..m.rank()).map(|r| m.matrix().row(r).to_vec()).collect();
            for row in rows.iter_mut() {
                row[s] = -row[s];
            }
            let flipped = Matroid::validate("colflip", m.ground().to_vec(), rows).unwrap();
            let alb2 = albanese::build(&flipped, params).unwrap();
            assert_eq!(alb2.vertex_count(), base.vertex_count());
            let vmap: Vec<usize> = base
                .vertex_reps
                .iter()
                .map(|rep| {
                    let mut neg = rep.clone();
                    neg[s] = -neg[s];
                    alb2.vertex_id(&neg).expect("negated rep is a vertex")
                })
                .collect();
            let mut edge_map = Vec::with_capacity(base.edge_count());
            for e in base.graph.edges() {
                let t = e.color.unwrap();
                if t == s {
                    // the image edge runs backwards along color s
                    let img = alb2.out_edge(vmap[e.head], t);
                    edge_map.push(EdgeImage::To { edge: img, flip: true });
                } else {
                    let img = alb2.out_edge(vmap[e.tail], t);
                    edge_map.push(EdgeImage::To { edge: img, flip: false });
                }
            }
            let f = GraphMorphism {
                vertex_map: vmap,
                edge_map,
            };
            f.validate(&base.graph, &alb2.graph)
                .unwrap_or_else(|err| panic!("column {s} flip map invalid: {err}"));
            // bijective on vertices and edges
            let mut seen = std::collections::HashSet::new();
            assert!(f.vertex_map.iter().all(|v| seen.insert(*v)));
        }
    }
}

/// The canonical map out of a refined Albanese graph: at scale 1 it is
/// the identity (and so covers every edge of every color); at scale l^j
/// a path to a refined vertex accumulates one basis vector per segment,
/// so the vertex goes to the class of its scaled position.
#[test]
fn alb_map_from_refinement_scales_positions() {
    let labels: Vec<String> = (0..3).map(|i| format!("c{i}")).collect();
    let m = Matroid::cographic("M*(tri)", 3, &[(0, 1), (1, 2), (2, 0)], &labels).unwrap();
    for (params, scale) in [
        (AlbParams::new(2, 1, 0), 1u64),
        (AlbParams::new(2, 1, 0), 2),
        (AlbParams::new(2, 2, 1), 2),
    ] {
        let alb = albanese::build(&m, params).unwrap();
        let hat = albanese::hat(&alb, scale);
        let (target, f) =
            albanese::alb_map(hat.graph(), &m, params, 0, albanese::DEFAULT_MAX_EDGES).unwrap();
        for (vhat, rep) in hat.scaled_reps.iter().enumerate() {
            assert_eq!(
                f.vertex_map[vhat],
                target.vertex_id(rep).unwrap(),
                "vertex {vhat} at scale {scale}"
            );
        }
        if scale == 1 {
            // identity on vertices and edges, so every color fiber is hit
            let mut hit_edges = vec![false; target.edge_count()];
            for img in &f.edge_map {
                if let EdgeImage::To { edge, .. } = img {
                    hit_edges[*edge] = true;
                }
            }
            assert!(hit_edges.iter().all(|&h| h));
        }
    }
}

/// Realization sign flips leave every solver answer unchanged.
#[test]
fn sign_flips_preserve_solution_dimensions() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(41);
    let k33 = catalog("K33").unwrap();
    for trial in 0..6 {
        let ell = if trial % 2 == 0 { 2 } else { 3 };
        let mut rows: Vec<Vec<i64>> = (0..k33.rank())
            .map(|r| k33.matrix().row(r).to_vec())
            .collect();
        for row in rows.iter_mut() {
            if rng.gen_bool(0.5) {
                for v in row.iter_mut() {
                    *v = -*v;
                }
            }
        }
        for s in 0..k33.size() {
            if rng.gen_bool(0.5) {
                for row in rows.iter_mut() {
                    row[s] = -row[s];
                }
            }
        }
        let flipped = Matroid::validate("K33-flip", k33.ground().to_vec(), rows).unwrap();
        let dim = |m: &Matroid| -> (usize, bool) {
            let alb = albanese::build(m, AlbParams::new(ell, 1, 0)).unwrap();
            let host = if ell == 2 {
                albanese::reduce_2_1(&alb).unwrap().graph
            } else {
                alb.graph
            };
            let sys = matroidal::solver::assemble(m, &host, ell).unwrap();
            let rep = matroidal::solver::exists_indivisible(&sys).unwrap();
            (rep.solution_dim, rep.exists)
        };
        assert_eq!(dim(&k33), dim(&flipped), "trial {trial} at {ell}");
    }
}
