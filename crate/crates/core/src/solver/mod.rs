//! Solution systems on colored graphs: assembly of the closedness
//! conditions over `F_ell`, kernel computation, indivisibility decisions,
//! membership and radical distance, splitting verification, and the
//! splitting -> solution -> reduction -> minor pipelines.

mod minor;
mod splitting;

pub use minor::minor_pushforward;
pub use splitting::{
    characteristic_chains, reduce_solution, splitting_to_solution, verify_splitting,
    PipelineOutput, ReducedSolution, SplittingReport, SplittingWitness,
};

use std::collections::BTreeMap;

use crate::albanese::{self, AlbParams};
use crate::error::SolverError;
use crate::graph::{boundary, ColoredGraph, EdgeId};
use crate::linalg::{FpEchelon, FpMat, Gf2Echelon, Gf2Mat, KernelBasis};
use crate::matroid::Matroid;
use crate::ring::{ff_inv, primes_below, PrimeField};

/// Guard on the profile-image dimension before exhaustive enumeration.
pub const IMAGE_DIM_LIMIT: usize = 24;
const IMAGE_ENUM_LIMIT: u64 = 1 << 24;

/// The closedness conditions of a matroid on a colored host graph,
/// over `F_ell`: one unknown per edge (its coefficient in the chain of
/// its color), one condition per realization row and vertex, plus the
/// per-color profile columns.
#[derive(Debug, Clone)]
pub struct SolutionSystem {
    pub matroid: Matroid,
    pub host: ColoredGraph,
    pub ell: u32,
    /// edges x (rank * vertices) condition matrix
    pub cond: FpMat,
    /// edges x ground-size indicator of colors
    pub profile: FpMat,
    /// host color index -> ground index
    pub color_to_ground: Vec<usize>,
}

/// Builds the condition matrix: the entry at `(edge e, (row k, vertex
/// v))` is `A[k, color(e)]` times the boundary coefficient of `e` at
/// `v`. A family of per-color chains is a solution exactly when its
/// edge-coefficient vector lies in the left kernel.
pub fn assemble(
    m: &Matroid,
    host: &ColoredGraph,
    ell: u32,
) -> Result<SolutionSystem, SolverError> {
    let color_to_ground =
        albanese::match_colors(host, m).map_err(|_| SolverError::ColorMismatch)?;
    if host.edges().iter().any(|e| e.color.is_none()) {
        return Err(SolverError::ColorMismatch);
    }
    let (g, n) = (m.rank(), m.size());
    let nv = host.num_vertices();
    let ne = host.num_edges();
    let mut cond = FpMat::zeros(ne, g * nv, ell).map_err(SolverError::from_linalg)?;
    let mut profile = FpMat::zeros(ne, n, ell).map_err(SolverError::from_linalg)?;
    for (e, edge) in host.edges().iter().enumerate() {
        let s = color_to_ground[edge.color.expect("colored")];
        profile.set(e, s, 1);
        if edge.tail == edge.head {
            continue; // loop edges impose no condition
        }
        for k in 0..g {
            let a = m.entry(k, s);
            cond.add_at(e, k * nv + edge.head, a);
            cond.add_at(e, k * nv + edge.tail, -a);
        }
    }
    Ok(SolutionSystem {
        matroid: m.clone(),
        host: host.clone(),
        ell,
        cond,
        profile,
        color_to_ground,
    })
}

impl SolverError {
    fn from_linalg(e: crate::error::LinalgError) -> SolverError {
        SolverError::InvalidWitness(e.to_string())
    }
}

/// Echelon of the transposed condition matrix, packed over F2.
enum CondEchelon {
    F2(Gf2Echelon),
    Fp(FpEchelon),
}

impl CondEchelon {
    fn of_transpose(sys: &SolutionSystem) -> CondEchelon {
        let t = sys.cond.transpose();
        if sys.ell == 2 {
            CondEchelon::F2(Gf2Mat::from_fp(&t).rref())
        } else {
            CondEchelon::Fp(t.rref())
        }
    }

    fn rank(&self) -> usize {
        match self {
            CondEchelon::F2(e) => e.rank(),
            CondEchelon::Fp(e) => e.rank(),
        }
    }

    fn free_columns(&self) -> Vec<usize> {
        match self {
            CondEchelon::F2(e) => e.free_columns(),
            CondEchelon::Fp(e) => e.free_columns(),
        }
    }

    fn kernel_vector(&self, free: usize) -> Vec<u8> {
        match self {
            CondEchelon::F2(e) => e.kernel_vector(free),
            CondEchelon::Fp(e) => e.kernel_vector(free),
        }
    }

    fn kernel_vector_times(&self, free: usize, rhs: &FpMat) -> Vec<u32> {
        match self {
            CondEchelon::F2(e) => e.kernel_vector_times(free, rhs),
            CondEchelon::Fp(e) => e.kernel_vector_times(free, rhs),
        }
    }
}

/// The space of solutions with the augmented-rank data.
#[derive(Debug, Clone)]
pub struct SolutionSpace {
    /// Left kernel of the condition matrix: one row per basis solution.
    pub basis: KernelBasis,
    pub cond_rank: usize,
    /// Rank of the condition matrix with the profile columns appended.
    pub aug_rank: usize,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Kernel dimension of the augmented system: solutions whose color
    /// profile vanishes identically.
    pub fn aug_kernel_dim(&self) -> usize {
        self.basis.ambient - self.aug_rank
    }
}

/// Left kernel of the condition matrix together with both ranks.
pub fn solution_space(sys: &SolutionSystem) -> SolutionSpace {
    let ech = CondEchelon::of_transpose(sys);
    let free = ech.free_columns();
    let vectors: Vec<Vec<u8>> = free.iter().map(|&f| ech.kernel_vector(f)).collect();
    let image_dim = profile_image(sys, &ech).basis.len();
    SolutionSpace {
        basis: KernelBasis {
            vectors,
            ambient: sys.cond.nrows(),
            ell: sys.ell,
        },
        cond_rank: ech.rank(),
        aug_rank: ech.rank() + image_dim,
    }
}

/// Echelonized image of the solution space under the profile map, with
/// a kernel-combination preimage per image basis vector.
struct ProfileImage {
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    preimages: Vec<BTreeMap<usize, u32>>,
}

fn profile_image(sys: &SolutionSystem, ech: &CondEchelon) -> ProfileImage {
    let ell = sys.ell;
    let field = PrimeField::new(ell).expect("prime");
    let mut img = ProfileImage {
        basis: Vec::new(),
        pivots: Vec::new(),
        preimages: Vec::new(),
    };
    for f in ech.free_columns() {
        let mut v = ech.kernel_vector_times(f, &sys.profile);
        let mut combo: BTreeMap<usize, u32> = BTreeMap::from([(f, 1)]);
        for (i, pivot) in img.pivots.iter().enumerate() {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            for (a, b) in v.iter_mut().zip(&img.basis[i]) {
                *a = (*a + (ell - c) as u64 as u32 * b) % ell;
            }
            for (&f2, &c2) in &img.preimages[i] {
                let entry = combo.entry(f2).or_insert(0);
                *entry = (*entry + (ell - c) * c2) % ell;
            }
        }
        combo.retain(|_, c| *c != 0);
        if let Some(pivot) = v.iter().position(|&x| x != 0) {
            let inv = ff_inv(v[pivot] as i64, field).expect("nonzero");
            let v: Vec<u32> = v.iter().map(|&x| x * inv % ell).collect();
            let combo = combo
                .into_iter()
                .map(|(f2, c2)| (f2, c2 * inv % ell))
                .collect();
            img.basis.push(v);
            img.pivots.push(pivot);
            img.preimages.push(combo);
        }
    }
    img
}

/// Outcome of the indivisibility decision on a system.
#[derive(Debug, Clone)]
pub struct IndivisibleReport {
    pub exists: bool,
    /// Per-color witness chains over `F_ell`, indexed by ground position.
    pub witness_chains: Option<Vec<crate::IntChain>>,
    pub witness_profile: Option<Vec<i64>>,
    pub solution_dim: usize,
    pub cond_rank: usize,
    pub aug_rank: usize,
    pub image_dim: usize,
    /// Every solution has identically zero color profile.
    pub all_profiles_zero: bool,
}

/// Decides whether some solution has a color profile with every
/// coordinate nonzero mod `ell`, by enumerating the profile image of the
/// solution space. Returns an explicit witness when one exists.
pub fn exists_indivisible(sys: &SolutionSystem) -> Result<IndivisibleReport, SolverError> {
    let ell = sys.ell as u64;
    let ech = CondEchelon::of_transpose(sys);
    let img = profile_image(sys, &ech);
    let k = img.basis.len();
    let solution_dim = sys.cond.nrows() - ech.rank();
    let mut report = IndivisibleReport {
        exists: false,
        witness_chains: None,
        witness_profile: None,
        solution_dim,
        cond_rank: ech.rank(),
        aug_rank: ech.rank() + k,
        image_dim: k,
        all_profiles_zero: k == 0,
    };
    if k == 0 {
        return Ok(report);
    }
    if k > IMAGE_DIM_LIMIT || ell.checked_pow(k as u32).is_none_or(|t| t > IMAGE_ENUM_LIMIT) {
        return Err(SolverError::ImageTooLarge { dim: k });
    }
    let n = sys.matroid.size();
    let total = ell.pow(k as u32);
    let mut combo = vec![0u32; k];
    'outer: for idx in 1..total {
        let mut t = idx;
        for c in combo.iter_mut() {
            *c = (t % ell) as u32;
            t /= ell;
        }
        let mut w = vec![0u64; n];
        for (i, &c) in combo.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &b) in w.iter_mut().zip(&img.basis[i]) {
                *a += (c as u64) * b as u64;
            }
        }
        for a in w.iter_mut() {
            *a %= ell;
        }
        if w.contains(&0) {
            continue 'outer;
        }
        // found: assemble the witness solution from the kernel preimages
        let mut edge_coeffs = vec![0u64; sys.cond.nrows()];
        for (i, &c) in combo.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (&f, &cf) in &img.preimages[i] {
                let kv = ech.kernel_vector(f);
                let factor = (c * cf % sys.ell) as u64;
                for (acc, &x) in edge_coeffs.iter_mut().zip(&kv) {
                    *acc = (*acc + factor * x as u64) % ell;
                }
            }
        }
        let mut chains: Vec<crate::IntChain> = vec![crate::IntChain::new(); n];
        for (e, &c) in edge_coeffs.iter().enumerate() {
            if c != 0 {
                let s = sys.color_to_ground[sys.host.edge(e).color.expect("colored")];
                chains[s].add_edge(e, c as i64);
            }
        }
        report.exists = true;
        report.witness_profile = Some(w.iter().map(|&x| x as i64).collect());
        report.witness_chains = Some(chains);
        return Ok(report);
    }
    Ok(report)
}

/// A family of per-color chains on an Albanese host, with coefficients
/// mod `ell^r` and the profile value of each chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub matroid_name: String,
    pub params: AlbParams,
    pub reduced: bool,
    /// chains indexed by ground position
    pub chains: Vec<crate::IntChain>,
    /// profile value of chain `s` at its own color, mod `ell^r`
    pub profiles: Vec<i64>,
}

impl Solution {
    pub fn modulus(&self) -> i64 {
        (self.params.ell as i64).pow(self.params.r)
    }

    /// Largest `i` such that no profile value is divisible by `ell^i`;
    /// profile values that vanish mod `ell^r` cap the answer at 0.
    pub fn indivisibility_index(&self) -> u32 {
        let ell = self.params.ell as i64;
        let min_val = self
            .profiles
            .iter()
            .map(|&p| {
                let mut p = p.rem_euclid(self.modulus());
                if p == 0 {
                    return self.params.r;
                }
                let mut v = 0;
                while p % ell == 0 {
                    p /= ell;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(0);
        if min_val >= self.params.r {
            0
        } else {
            min_val + 1
        }
    }

    pub fn to_json(&self, ground: &[String]) -> serde_json::Value {
        let chains: BTreeMap<String, BTreeMap<String, i64>> = ground
            .iter()
            .enumerate()
            .map(|(s, label)| {
                let coeffs: BTreeMap<String, i64> = self.chains[s]
                    .iter()
                    .map(|(&e, &c)| (e.to_string(), c))
                    .collect();
                (label.clone(), coeffs)
            })
            .collect();
        let profiles: BTreeMap<String, i64> = ground
            .iter()
            .enumerate()
            .map(|(s, label)| (label.clone(), self.profiles[s]))
            .collect();
        serde_json::json!({
            "matroid": self.matroid_name,
            "params": {
                "ell": self.params.ell,
                "r": self.params.r,
                "j": self.params.j,
                "reduced": self.reduced,
            },
            "chains": chains,
            "profiles": profiles,
        })
    }

    pub fn from_json(v: &serde_json::Value, m: &Matroid) -> Result<Solution, SolverError> {
        let params = v
            .get("params")
            .ok_or_else(|| SolverError::InvalidSolution("missing params".into()))?;
        let get = |k: &str| -> Result<u64, SolverError> {
            params
                .get(k)
                .and_then(|x| x.as_u64())
                .ok_or_else(|| SolverError::InvalidSolution(format!("missing params.{k}")))
        };
        let alb_params = AlbParams::new(get("ell")? as u32, get("r")? as u32, get("j")? as u32);
        let reduced = params.get("reduced").and_then(|x| x.as_bool()).unwrap_or(false);
        let chains_json = v
            .get("chains")
            .and_then(|c| c.as_object())
            .ok_or_else(|| SolverError::InvalidSolution("missing chains".into()))?;
        let mut chains = vec![crate::IntChain::new(); m.size()];
        for (label, coeffs) in chains_json {
            let s = m.label_index(label)?;
            let coeffs = coeffs
                .as_object()
                .ok_or_else(|| SolverError::InvalidSolution("bad chain".into()))?;
            for (edge, c) in coeffs {
                let e: EdgeId = edge
                    .parse()
                    .map_err(|_| SolverError::InvalidSolution(format!("bad edge id {edge}")))?;
                let c = c
                    .as_i64()
                    .ok_or_else(|| SolverError::InvalidSolution("bad coefficient".into()))?;
                chains[s].add_edge(e, c);
            }
        }
        let mut sol = Solution {
            matroid_name: m.name().to_string(),
            params: alb_params,
            reduced,
            chains,
            profiles: vec![0; m.size()],
        };
        sol.profiles = recompute_profiles(&sol);
        Ok(sol)
    }
}

fn recompute_profiles(sol: &Solution) -> Vec<i64> {
    let modulus = sol.modulus();
    sol.chains
        .iter()
        .map(|c| {
            c.iter()
                .map(|(_, &v)| v)
                .fold(0i64, |acc, v| (acc + v).rem_euclid(modulus))
        })
        .collect()
}

/// Structural validity of a solution against its rebuilt host.
#[derive(Debug, Clone)]
pub struct SolutionCheck {
    pub profiles: Vec<i64>,
    /// l-adic valuation of each profile value, capped at `r`.
    pub valuations: Vec<u32>,
}

/// Rebuilds the host graph of a solution.
pub fn rebuild_host(
    m: &Matroid,
    params: AlbParams,
    reduced: bool,
    max_edges: u64,
) -> Result<ColoredGraph, SolverError> {
    let alb = albanese::build_with_limit(m, params, max_edges)?;
    if reduced {
        Ok(albanese::reduce_2_1(&alb)?.graph)
    } else {
        Ok(alb.graph)
    }
}

/// Checks the solution conditions mod `ell^r`: every chain has its own
/// color, and each realization row combines the chains into a closed
/// chain. Returns the recomputed profile data.
pub fn validate_solution(
    m: &Matroid,
    sol: &Solution,
    max_edges: u64,
) -> Result<SolutionCheck, SolverError> {
    let host = rebuild_host(m, sol.params, sol.reduced, max_edges)?;
    validate_solution_on(m, sol, &host)
}

pub fn validate_solution_on(
    m: &Matroid,
    sol: &Solution,
    host: &ColoredGraph,
) -> Result<SolutionCheck, SolverError> {
    if sol.chains.len() != m.size() {
        return Err(SolverError::InvalidSolution(
            "one chain per ground element required".into(),
        ));
    }
    let modulus = sol.modulus();
    let color_to_ground =
        albanese::match_colors(host, m).map_err(|_| SolverError::ColorMismatch)?;
    for (s, chain) in sol.chains.iter().enumerate() {
        for (&e, _) in chain.iter() {
            if e >= host.num_edges() {
                return Err(SolverError::Graph(crate::error::GraphError::UnknownEdge(e)));
            }
            let c = host.edge(e).color.expect("colored host");
            if color_to_ground[c] != s {
                return Err(SolverError::InvalidSolution(format!(
                    "chain {s} touches an edge of color {c}"
                )));
            }
        }
    }
    // closedness of every realization-row combination
    for k in 0..m.rank() {
        let mut combined = crate::IntChain::new();
        for (s, chain) in sol.chains.iter().enumerate() {
            let a = m.entry(k, s);
            if a != 0 {
                combined = combined.plus(&chain.scaled(&a));
            }
        }
        let b = boundary(&combined, host)?;
        if b.values().any(|v| v.rem_euclid(modulus) != 0) {
            return Err(SolverError::InvalidSolution(format!(
                "row {k} combination is not closed mod {modulus}"
            )));
        }
    }
    let profiles = recompute_profiles(sol);
    if profiles != sol.profiles {
        return Err(SolverError::InvalidSolution(
            "stored profiles disagree with the chains".into(),
        ));
    }
    let ell = sol.params.ell as i64;
    let valuations = profiles
        .iter()
        .map(|&p| {
            let mut p = p.rem_euclid(modulus);
            if p == 0 {
                return sol.params.r;
            }
            let mut v = 0;
            while p % ell == 0 {
                p /= ell;
                v += 1;
            }
            v
        })
        .collect();
    Ok(SolutionCheck {
        profiles,
        valuations,
    })
}

/// Membership outcome at one prime.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub ell: u32,
    pub member: bool,
    pub solution_dim: usize,
    pub image_dim: usize,
    pub witness: Option<Solution>,
}

/// Whether the matroid admits an indivisible solution at level
/// `(ell, 1)`; for `ell = 2` the computation runs on the reduced graph.
pub fn membership(m: &Matroid, ell: u32, max_edges: u64) -> Result<MembershipReport, SolverError> {
    let params = AlbParams::new(ell, 1, 0);
    let alb = albanese::build_with_limit(m, params, max_edges)?;
    let reduced = ell == 2;
    let host = if reduced {
        albanese::reduce_2_1(&alb)?.graph
    } else {
        alb.graph
    };
    let sys = assemble(m, &host, ell)?;
    let rep = exists_indivisible(&sys)?;
    let witness = rep.witness_chains.as_ref().map(|chains| {
        let sol = Solution {
            matroid_name: m.name().to_string(),
            params,
            reduced,
            chains: chains.clone(),
            profiles: rep.witness_profile.clone().expect("profile with witness"),
        };
        debug_assert!(validate_solution_on(m, &sol, &host).is_ok());
        sol
    });
    Ok(MembershipReport {
        ell,
        member: rep.exists,
        solution_dim: rep.solution_dim,
        image_dim: rep.image_dim,
        witness,
    })
}

/// Radical distance data: membership at every prime below the rank.
#[derive(Debug, Clone)]
pub struct DistanceReport {
    pub distance: u64,
    pub memberships: BTreeMap<u32, bool>,
}

/// Least common multiple of the primes at which membership fails.
/// Primes at or above the rank always belong, so only `ell < rank` are
/// checked; the sweep fans out across `threads` workers.
pub fn radical_distance(
    m: &Matroid,
    max_edges: u64,
    threads: usize,
) -> Result<DistanceReport, SolverError> {
    if !m.is_loopless() {
        return Err(SolverError::Matroid(
            crate::error::MatroidError::LoopElement(m.loops().remove(0)),
        ));
    }
    let primes = primes_below(m.rank() as u32);
    let threads = threads.max(1);
    let mut results: Vec<(u32, bool)> = Vec::new();
    std::thread::scope(|scope| -> Result<(), SolverError> {
        let mut handles = Vec::new();
        for chunk in primes.chunks(primes.len().div_ceil(threads).max(1)) {
            handles.push(scope.spawn(move || -> Result<Vec<(u32, bool)>, SolverError> {
                chunk
                    .iter()
                    .map(|&ell| Ok((ell, membership(m, ell, max_edges)?.member)))
                    .collect()
            }));
        }
        for h in handles {
            results.extend(h.join().expect("membership worker")?);
        }
        Ok(())
    })?;
    let mut distance = 1u64;
    let mut memberships = BTreeMap::new();
    for (ell, member) in results {
        memberships.insert(ell, member);
        if !member {
            distance = num_integer::lcm(distance, ell as u64);
        }
    }
    Ok(DistanceReport {
        distance,
        memberships,
    })
}
