use serde::{Deserialize, Serialize};

use super::{cone, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::{exactness_at, induced_map, ExactnessCertificate, HomologyGroup, Matrix, Presented, Subquotient};

/// Exactness at every interior spot of `G₀ → G₁ → ⋯` of presented modules.
pub fn sequence_exactness(groups: &[Presented], maps: &[Matrix]) -> Vec<ExactnessCertificate> {
    assert_eq!(maps.len() + 1, groups.len(), "one map between consecutive groups");
    (1..groups.len().saturating_sub(1))
        .map(|k| exactness_at(&groups[k - 1], &maps[k - 1], &groups[k], &maps[k], &groups[k + 1]))
        .collect()
}

/// `0 → A → B → C → 0`, degreewise split over the coefficients: `section`
/// gives 𝕜-linear maps `C_i → B_i` with `π σ = id`.
pub struct ShortExactSequence<'a> {
    pub sub: &'a ChainComplex,
    pub mid: &'a ChainComplex,
    pub quot: &'a ChainComplex,
    pub incl: Box<dyn Fn(i64) -> Matrix + 'a>,
    pub proj: Box<dyn Fn(i64) -> Matrix + 'a>,
    pub section: Box<dyn Fn(i64) -> Matrix + 'a>,
}

/// One group of a long exact homology sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTerm {
    /// `"sub"`, `"mid"` or `"quot"`.
    pub term: String,
    pub degree: i64,
    pub group: HomologyGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongExactSequence {
    pub terms: Vec<SequenceTerm>,
    pub certificates: Vec<ExactnessCertificate>,
}

impl LongExactSequence {
    pub fn exact(&self) -> bool {
        self.certificates.iter().all(ExactnessCertificate::exact)
    }
}

impl ShortExactSequence<'_> {
    /// `δ : H_n(C) → H_{n−1}(A)` in cycle coordinates (snake lemma).
    pub fn connecting(&self, n: i64, hc: &Subquotient, ha: &Subquotient) -> Result<Matrix> {
        let dom = self.sub.domain();
        let lifted = (self.section)(n).mul(&hc.cycles);
        let boundary = self.mid.diff(n).mul(&lifted);
        let a_dim = self.sub.module(n - 1).dim();
        let system = Matrix::hstack(&[&(self.incl)(n - 1), self.mid.module(n - 1).rels()]);
        if boundary.cols() == 0 {
            return Ok(Matrix::zeros(dom, ha.cycles.cols(), 0));
        }
        let pre = solve_matrix_or_zero(&system, &boundary)
            .ok_or_else(|| Error::Complex(format!("boundary of a lifted cycle is not in the subcomplex at degree {n}")))?;
        let a = pre.submatrix(0..a_dim, 0..pre.cols());
        Ok(ha.coords(&a))
    }

    /// The sequence `H_n(A) → H_n(B) → H_n(C) → H_{n−1}(A) → ⋯` for `n` from
    /// `top` down to `bottom`, with exactness certified at every interior spot.
    pub fn long_exact_sequence(&self, bottom: i64, top: i64) -> Result<LongExactSequence> {
        let mut groups = Vec::new();
        let mut maps = Vec::new();
        let mut terms = Vec::new();
        for n in (bottom..=top).rev() {
            let (ha, hb, hc) = (self.sub.subquotient_at(n), self.mid.subquotient_at(n), self.quot.subquotient_at(n));
            let ha_next = self.sub.subquotient_at(n - 1);
            let iota = induced_map(&ha, &hb, &(self.incl)(n));
            let pi = induced_map(&hb, &hc, &(self.proj)(n));
            let delta = self.connecting(n, &hc, &ha_next)?;
            for (name, sq) in [("sub", &ha), ("mid", &hb), ("quot", &hc)] {
                terms.push(SequenceTerm { term: name.into(), degree: n, group: sq.descriptor() });
                groups.push(sq.as_presented());
            }
            maps.extend([iota, pi, delta]);
        }
        terms.push(SequenceTerm { term: "sub".into(), degree: bottom - 1, group: self.sub.homology_at(bottom - 1) });
        groups.push(self.sub.subquotient_at(bottom - 1).as_presented());
        Ok(LongExactSequence { terms, certificates: sequence_exactness(&groups, &maps) })
    }
}

fn solve_matrix_or_zero(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    if b.is_zero() {
        return Some(Matrix::zeros(a.domain(), a.cols(), b.cols()));
    }
    if a.cols() == 0 {
        return None;
    }
    crate::linalg::solve_matrix(a, b)
}

/// Long exact sequence of `0 → T → Cone f → ΣS → 0` for `f : S → T`.
pub fn cone_sequence(f: &ChainMap, bottom: i64, top: i64) -> Result<LongExactSequence> {
    let c = cone(f)?;
    let shifted = f.source().shift(1);
    let (s, t) = (f.source(), f.target());
    let dom = c.domain();
    let ses = ShortExactSequence {
        sub: t,
        mid: &c,
        quot: &shifted,
        incl: Box::new(move |i| {
            let (s1, t0) = (s.module(i - 1).dim(), t.module(i).dim());
            Matrix::vstack(&[&Matrix::zeros(dom, s1, t0), &Matrix::identity(dom, t0)])
        }),
        proj: Box::new(move |i| {
            let (s1, t0) = (s.module(i - 1).dim(), t.module(i).dim());
            Matrix::hstack(&[&Matrix::identity(dom, s1), &Matrix::zeros(dom, s1, t0)])
        }),
        section: Box::new(move |i| {
            let (s1, t0) = (s.module(i - 1).dim(), t.module(i).dim());
            Matrix::vstack(&[&Matrix::identity(dom, s1), &Matrix::zeros(dom, t0, s1)])
        }),
    };
    ses.long_exact_sequence(bottom, top)
}
