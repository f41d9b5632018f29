#![allow(dead_code)]

use gorhom::algebra::{AlgebraRef, FinModule, Side};
use gorhom::complex::{ChainComplex, ChainMap, Tail};
use gorhom::fixtures;
use gorhom::linalg::{kernel, Domain, Matrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FIELDS: [Domain; 3] = [Domain::Prime { p: 2 }, Domain::Prime { p: 3 }, Domain::Rational];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, dom: Domain, rows: usize, cols: usize) -> Matrix {
    let values: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
    Matrix::from_i64(dom, rows, cols, &values)
}

/// A bounded complex of free modules over the ground field in degrees
/// `lo..lo+len`, each differential landing in the kernel of the next one down.
pub fn random_complex(rng: &mut ChaCha8Rng, alg: &AlgebraRef, side: Side, lo: i64, len: usize, max_dim: usize) -> ChainComplex {
    let dom = alg.domain();
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut diffs: Vec<Matrix> = Vec::new();
    for k in 1..len {
        let d = match diffs.last() {
            None => random_matrix(rng, dom, dims[0], dims[1]),
            Some(prev) => {
                let z = kernel(prev);
                z.mul(&random_matrix(rng, dom, z.cols(), dims[k]))
            }
        };
        diffs.push(d);
    }
    let modules = dims.iter().map(|&d| FinModule::free(alg.clone(), side, d)).collect();
    ChainComplex::new(alg.clone(), side, lo, modules, diffs, Tail::Zero, Tail::Zero).expect("valid random complex")
}

/// `c·id + ∂h + h∂` on a bounded complex over a field, for a random homotopy `h`.
pub fn random_chain_map(rng: &mut ChaCha8Rng, c: &ChainComplex) -> ChainMap {
    let dom = c.domain();
    let (lo, hi) = c.window();
    let scalar = rng.gen_range(-2..=2);
    let h: Vec<Matrix> =
        (lo - 1..=hi).map(|i| random_matrix(rng, dom, c.module(i + 1).dim(), c.module(i).dim())).collect();
    let h_at = |i: i64| &h[(i - lo + 1) as usize];
    let maps = (lo..=hi)
        .map(|i| {
            let n = c.module(i).dim();
            let id = Matrix::from_i64(dom, n, n, &(0..n * n).map(|k| if k % (n + 1) == 0 { scalar } else { 0 }).collect::<Vec<_>>());
            id.add(&c.diff(i + 1).mul(h_at(i))).add(&h_at(i - 1).mul(&c.diff(i)))
        })
        .collect();
    ChainMap::new(c.clone(), c.clone(), lo, maps, Tail::Zero, Tail::Zero).expect("homotopy formula gives a chain map")
}

pub fn ground(dom: Domain) -> AlgebraRef {
    fixtures::ground(dom)
}
