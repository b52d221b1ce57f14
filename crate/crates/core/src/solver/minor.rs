//! Transport of solutions along single minor operations. A deletion
//! projects the Albanese graph coordinatewise; a contraction restricts
//! to the translates of the embedded minor graph and translates each
//! coset back to the embedding.

use crate::albanese::{self};
use crate::error::SolverError;
use crate::matroid::{Matroid, MinorOp};
use crate::IntChain;

use super::{validate_solution_on, Solution};

/// Pushes a solution to the stated single-step minor. Returns the minor
/// together with the transported solution; color profiles of surviving
/// colors are unchanged, so indivisibility carries over.
pub fn minor_pushforward(
    m: &Matroid,
    sol: &Solution,
    op: &MinorOp,
    max_edges: u64,
) -> Result<(Matroid, Solution), SolverError> {
    if sol.reduced {
        return Err(SolverError::InvalidSolution(
            "minor transport applies to solutions on the full graph".into(),
        ));
    }
    let params = sol.params;
    let alb = albanese::build_with_limit(m, params, max_edges)?;
    validate_solution_on(m, sol, &alb.graph)?;
    let (label, contraction) = match op {
        MinorOp::Delete(l) => (l, false),
        MinorOp::Contract(l) => (l, true),
    };
    let s = m.label_index(label)?;
    let minor = if contraction {
        m.contract(label)?
    } else {
        m.delete(label)?
    };
    let target = albanese::build_with_limit(&minor, params, max_edges)?;
    let modulus = (params.ell as i64).pow(params.r);

    // ground index map: positions shift down past the removed element
    let old_of_new: Vec<usize> = (0..m.size()).filter(|&t| t != s).collect();

    let mut out_chains: Vec<IntChain> = vec![IntChain::new(); minor.size()];
    if !contraction {
        // vertex map: drop the s-coordinate and reduce in the minor lattice
        let vmap: Vec<usize> = alb
            .vertex_reps
            .iter()
            .map(|rep| {
                let proj: Vec<i64> = old_of_new.iter().map(|&t| rep[t]).collect();
                target.vertex_id(&proj).expect("projection is a vertex")
            })
            .collect();
        for (new_t, &t) in old_of_new.iter().enumerate() {
            for (&e, &coeff) in sol.chains[t].iter() {
                let edge = alb.graph.edge(e);
                let img = target.out_edge(vmap[edge.tail], new_t);
                debug_assert_eq!(target.graph.edge(img).head, vmap[edge.head]);
                out_chains[new_t].add_edge(img, coeff);
            }
            out_chains[new_t] = out_chains[new_t].map_coeffs(|&v| v.rem_euclid(modulus));
        }
    } else {
        // embed each minor vertex by inserting 0 at the removed slot
        let embed = |rep: &[i64]| -> Vec<i64> {
            let mut full = Vec::with_capacity(m.size());
            for t in 0..m.size() {
                if t == s {
                    full.push(0);
                } else {
                    let pos = old_of_new.binary_search(&t).expect("surviving");
                    full.push(rep[pos]);
                }
            }
            full
        };
        let embedded: Vec<usize> = target
            .vertex_reps
            .iter()
            .map(|rep| alb.vertex_id(&embed(rep)).expect("embedded vertex"))
            .collect();
        // assign each vertex to the translate of the embedding through
        // it: representatives are chosen in id order, so the choice is
        // deterministic; edges of surviving colors stay inside a coset
        let mut pi = vec![usize::MAX; alb.vertex_count()];
        for v in 0..alb.vertex_count() {
            if pi[v] != usize::MAX {
                continue;
            }
            for (w, &base) in embedded.iter().enumerate() {
                let mut shifted = alb.vertex_reps[base].clone();
                for (a, b) in shifted.iter_mut().zip(&alb.vertex_reps[v]) {
                    *a += b;
                }
                // translate of the embedding by v: base + v maps to w
                let u = alb.vertex_id(&shifted).expect("vertex");
                if pi[u] == usize::MAX {
                    pi[u] = w;
                } else {
                    debug_assert_eq!(pi[u], w, "cosets partition the vertices");
                }
            }
        }
        for (new_t, &t) in old_of_new.iter().enumerate() {
            for (&e, &coeff) in sol.chains[t].iter() {
                let edge = alb.graph.edge(e);
                if edge.color != Some(t) {
                    return Err(SolverError::NotSupportedOnSubgraph);
                }
                let img = target.out_edge(pi[edge.tail], new_t);
                debug_assert_eq!(
                    target.graph.edge(img).head,
                    pi[edge.head],
                    "edges of surviving colors stay in one coset"
                );
                out_chains[new_t].add_edge(img, coeff);
            }
            out_chains[new_t] = out_chains[new_t].map_coeffs(|&v| v.rem_euclid(modulus));
        }
    }
    let profiles: Vec<i64> = out_chains
        .iter()
        .map(|c| {
            c.iter()
                .map(|(_, &v)| v)
                .fold(0i64, |a, v| (a + v).rem_euclid(modulus))
        })
        .collect();
    // projections and coset translations contract no surviving-color
    // edge, so each profile value is carried over exactly
    for (new_t, &t) in old_of_new.iter().enumerate() {
        debug_assert_eq!(
            profiles[new_t],
            sol.profiles[t].rem_euclid(modulus),
            "profile preserved"
        );
    }
    let out = Solution {
        matroid_name: minor.name().to_string(),
        params,
        reduced: false,
        chains: out_chains,
        profiles,
    };
    validate_solution_on(&minor, &out, &target.graph)?;
    Ok((minor, out))
}
