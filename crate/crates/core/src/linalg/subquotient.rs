//! Subquotients of finitely presented modules over the coefficient domain.
//!
//! A presented module is `𝕜^g / span(rels)`. The homology of
//! `A --f--> B --g--> C` at `B` is `{b : g b ∈ rels_C} / (im f + rels_B)`;
//! it is itself presented on the cycle basis, so the same routine measures
//! homology of chain complexes, exactness of long sequences and cokernels.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::domain::{Domain, Scalar};
use super::matrix::Matrix;
use super::reduce::{kernel, rank, smith_normal_form, solve_matrix, span_basis};

/// Isomorphism class of a finitely generated module over the coefficient
/// domain: free rank plus torsion divisors (always empty over a field).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub domain: Domain,
    pub rank: usize,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero(domain: Domain) -> Self {
        HomologyGroup { domain, rank: 0, torsion: Vec::new() }
    }

    pub fn free(domain: Domain, rank: usize) -> Self {
        HomologyGroup { domain, rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Dimension over a field; panics over ℤ.
    pub fn dim(&self) -> usize {
        assert!(self.domain.is_field(), "dimension of a Z-module");
        self.rank
    }

    /// Direct sum of two groups (torsion parts merged into a divisibility chain).
    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        assert_eq!(self.domain, other.domain);
        let n = self.torsion.len() + other.torsion.len();
        let mut diag = Matrix::zeros(self.domain, n, n);
        for (k, t) in self.torsion.iter().chain(&other.torsion).enumerate() {
            diag.set(k, k, Scalar::from_integer(t.clone()));
        }
        let torsion = smith_normal_form(&diag).invariants().into_iter().filter(|d| !d.is_one()).collect();
        HomologyGroup { domain: self.domain, rank: self.rank + other.rank, torsion }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let base = match self.domain {
            Domain::Integer => "Z",
            _ => "k",
        };
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push(base.to_string());
        } else if self.rank > 1 {
            parts.push(format!("{base}^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

/// `𝕜^gens / span(rels)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presented {
    pub gens: usize,
    pub rels: Matrix,
}

impl Presented {
    pub fn free(domain: Domain, gens: usize) -> Self {
        Presented { gens, rels: Matrix::zeros(domain, gens, 0) }
    }

    pub fn domain(&self) -> Domain {
        self.rels.domain()
    }

    pub fn descriptor(&self) -> HomologyGroup {
        let zero_out = Matrix::zeros(self.domain(), 0, self.gens);
        Subquotient::new(&zero_out, &Matrix::zeros(self.domain(), 0, 0), &self.rels).descriptor()
    }
}

/// Cycles modulo boundaries at one spot of a sequence of presented modules.
#[derive(Clone, Debug)]
pub struct Subquotient {
    /// Basis of the cycle lattice, as columns in ambient coordinates.
    pub cycles: Matrix,
    /// Boundary generators (incoming image plus ambient relations) in cycle coordinates.
    pub boundaries: Matrix,
}

impl Subquotient {
    /// `out_map`: ambient → next, with `out_rels` the relations of the next
    /// module; `incoming`: generators of everything to be quotiented out
    /// (image of the incoming map together with the ambient relations).
    pub fn new(out_map: &Matrix, out_rels: &Matrix, incoming: &Matrix) -> Self {
        let dom = incoming.domain();
        let ambient = incoming.rows();
        assert_eq!(out_map.cols(), ambient, "outgoing map source dimension");
        assert_eq!(out_map.rows(), out_rels.rows(), "outgoing relations");
        let stacked = Matrix::hstack(&[out_map, out_rels]);
        let ker = kernel(&stacked);
        let proj = ker.submatrix(0..ambient, 0..ker.cols());
        let cycles = if proj.cols() == 0 { Matrix::zeros(dom, ambient, 0) } else { span_basis(&proj) };
        let boundaries = if incoming.cols() == 0 {
            Matrix::zeros(dom, cycles.cols(), 0)
        } else if cycles.cols() == 0 {
            Matrix::zeros(dom, 0, incoming.cols())
        } else {
            solve_matrix(&cycles, incoming).expect("incoming image must consist of cycles")
        };
        Subquotient { cycles, boundaries }
    }

    pub fn as_presented(&self) -> Presented {
        Presented { gens: self.cycles.cols(), rels: self.boundaries.clone() }
    }

    pub fn descriptor(&self) -> HomologyGroup {
        let dom = self.cycles.domain();
        let z = self.cycles.cols();
        let snf = smith_normal_form(&self.boundaries);
        let torsion: Vec<BigInt> = snf.invariants().into_iter().filter(|d| !d.is_one()).collect();
        HomologyGroup { domain: dom, rank: z - snf.rank, torsion }
    }

    /// Coordinates of an ambient cycle in the cycle basis.
    pub fn coords(&self, v: &Matrix) -> Matrix {
        if self.cycles.cols() == 0 {
            return Matrix::zeros(v.domain(), 0, v.cols());
        }
        solve_matrix(&self.cycles, v).expect("vector is not a cycle")
    }
}

/// Matrix of the map induced on subquotients by an ambient map `f`.
pub fn induced_map(source: &Subquotient, target: &Subquotient, f: &Matrix) -> Matrix {
    let images = f.mul(&source.cycles);
    target.coords(&images)
}

/// Certified exactness at the middle of `A --f--> B --g--> C` of presented
/// modules, reporting the homology there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessCertificate {
    pub composite_zero: bool,
    /// Rank of the image of the incoming map in the middle module.
    pub image_rank: usize,
    /// Rank of the kernel of the outgoing map.
    pub kernel_rank: usize,
    pub homology: HomologyGroup,
}

impl ExactnessCertificate {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.homology.is_zero()
    }
}

pub fn exactness_at(a: &Presented, f: &Matrix, b: &Presented, g: &Matrix, c: &Presented) -> ExactnessCertificate {
    assert_eq!(f.shape(), (b.gens, a.gens), "incoming map shape");
    assert_eq!(g.shape(), (c.gens, b.gens), "outgoing map shape");
    let composite_zero = solve_matrix(&c.rels, &g.mul(f)).is_some();
    let incoming = Matrix::hstack(&[f, &b.rels]);
    let sq = Subquotient::new(g, &c.rels, &incoming);
    let rel_rank = rank(&b.rels);
    ExactnessCertificate {
        composite_zero,
        image_rank: rank(&incoming) - rel_rank,
        kernel_rank: sq.cycles.cols() - rel_rank,
        homology: sq.descriptor(),
    }
}
