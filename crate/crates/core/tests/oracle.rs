//! Independent oracles: exhaustive enumeration cross-checks for the
//! kernel computations and the indivisibility decision.

mod common;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use matroidal::albanese::{self, AlbParams};
use matroidal::linalg::{left_kernel, right_kernel, FpMat, Gf2Mat};
use matroidal::solver::{assemble, exists_indivisible, solution_space};

use common::{brute_force_f2 as brute_force, small_matroids};

#[test]
fn brute_force_matches_solver_on_tiny_matroids() {
    for m in small_matroids() {
        let alb = albanese::build(&m, AlbParams::new(2, 1, 0)).unwrap();
        let red = albanese::reduce_2_1(&alb).unwrap();
        for (host, tag) in [(&alb.graph, "full"), (&red.graph, "reduced")] {
            if host.num_edges() > 16 {
                continue;
            }
            let sys = assemble(&m, host, 2).unwrap();
            let space = solution_space(&sys);
            let rep = exists_indivisible(&sys).unwrap();
            let (count, indivisible) = brute_force(&m, host);
            assert_eq!(
                count,
                1usize << space.dim(),
                "{} on {tag}: solution count",
                m.name()
            );
            assert_eq!(
                indivisible,
                rep.exists,
                "{} on {tag}: indivisibility",
                m.name()
            );
        }
    }
}

#[test]
fn right_kernel_matches_enumeration_over_f5() {
    let mut rng = StdRng::seed_from_u64(31);
    for _ in 0..3 {
        let rows: Vec<Vec<i64>> = (0..5)
            .map(|_| (0..8).map(|_| rng.gen_range(0..5)).collect())
            .collect();
        let m = FpMat::from_rows(&rows, 5).unwrap();
        let kb = right_kernel(&m);
        // enumerate all of F5^8 and compare the solution sets
        let mut brute = 0usize;
        let mut v = [0u32; 8];
        'vec: loop {
            let is_zero = (0..5).all(|r| {
                (0..8).map(|c| m.get(r, c) * v[c]).sum::<u32>() % 5 == 0
            });
            if is_zero {
                brute += 1;
            }
            for slot in v.iter_mut() {
                *slot += 1;
                if *slot < 5 {
                    continue 'vec;
                }
                *slot = 0;
            }
            break;
        }
        assert_eq!(brute, 5usize.pow(kb.dim() as u32), "solution set sizes");
        for kv in &kb.vectors {
            for r in 0..5 {
                let dot: u32 = (0..8).map(|c| m.get(r, c) * kv[c] as u32).sum();
                assert_eq!(dot % 5, 0);
            }
        }
    }
}

#[test]
fn packed_f2_agrees_with_generic_path() {
    let mut rng = StdRng::seed_from_u64(32);
    for _ in 0..200 {
        let nr = rng.gen_range(1..=64);
        let nc = rng.gen_range(1..=64);
        let rows: Vec<Vec<i64>> = (0..nr)
            .map(|_| (0..nc).map(|_| rng.gen_range(0..2)).collect())
            .collect();
        let m = FpMat::from_rows(&rows, 2).unwrap();
        let packed = Gf2Mat::from_fp(&m);
        let (pe, ge) = (packed.rref(), m.clone().rref());
        assert_eq!(pe.rank(), ge.rank());
        assert_eq!(pe.pivots(), ge.pivots());
        assert_eq!(pe.kernel_basis(), ge.kernel_basis());
    }
}

#[test]
fn left_and_right_kernels_annihilate() {
    let mut rng = StdRng::seed_from_u64(33);
    for ell in [2u32, 3, 5, 7] {
        for _ in 0..10 {
            let nr = rng.gen_range(1..=12);
            let nc = rng.gen_range(1..=12);
            let rows: Vec<Vec<i64>> = (0..nr)
                .map(|_| (0..nc).map(|_| rng.gen_range(0..ell as i64)).collect())
                .collect();
            let m = FpMat::from_rows(&rows, ell).unwrap();
            let lk = left_kernel(&m);
            assert_eq!(lk.dim() + m.rank(), nr, "rank-nullity");
            for v in &lk.vectors {
                for c in 0..nc {
                    let dot: u64 = (0..nr).map(|r| v[r] as u64 * m.get(r, c) as u64).sum();
                    assert_eq!(dot % ell as u64, 0);
                }
            }
            let rk = right_kernel(&m);
            assert_eq!(rk.dim() + m.rank(), nc);
        }
    }
}
