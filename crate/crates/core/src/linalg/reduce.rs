//! Row reduction over fields and Smith normal form over ℤ (or any of the
//! supported domains, which are all principal ideal domains).

use num_bigint::BigInt;
use num_traits::Zero;

use super::domain::{Domain, Scalar};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Reduced row echelon form with the list of pivot columns.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let d = a.domain();
    assert!(d.is_field(), "rref needs a field");
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&i| !m.get(i, col).is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = d.inv(m.get(row, col)).expect("nonzero pivot");
        m.scale_row(row, &inv);
        for i in 0..m.rows() {
            if i != row && !m.get(i, col).is_zero() {
                let c = d.neg(m.get(i, col));
                m.add_row_multiple(i, row, &c);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

/// Rank, kernel basis (as columns) and image basis (pivot columns of `a`).
pub fn rank_kernel_image(a: &Matrix) -> Result<(usize, Matrix, Matrix)> {
    let d = a.domain();
    if !d.is_field() {
        return Err(Error::Domain("rank_kernel_image needs a field; use smith_normal_form over Z".into()));
    }
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Matrix::zeros(d, a.cols(), free.len());
    for (k, &f) in free.iter().enumerate() {
        kernel.set_raw(f, k, d.one());
        for (row, &p) in pivots.iter().enumerate() {
            kernel.set_raw(p, k, d.neg(r.get(row, f)));
        }
    }
    let image = a.select_columns(&pivots);
    Ok((pivots.len(), kernel, image))
}

pub fn rank(a: &Matrix) -> usize {
    if a.domain().is_field() {
        rref(a).1.len()
    } else {
        smith_normal_form(a).rank
    }
}

/// `u * a * v = d` with `u`, `v` invertible over the domain and `d`
/// diagonal with `d[0] | d[1] | ...`, entries canonical associates.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero invariant factors as integers (all ones over a field).
    pub fn invariants(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.numer().clone())
            .collect()
    }
}

pub fn smith_normal_form(a: &Matrix) -> SmithDecomposition {
    let dom = a.domain();
    let (rows, cols) = a.shape();
    let mut m = a.clone();
    let mut u = Matrix::identity(dom, rows);
    let mut v = Matrix::identity(dom, cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero pivot, ties to lowest row then lowest column
        let Some((pi, pj)) = smallest_entry(dom, &m, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)))) else {
            break;
        };
        move_to(&mut m, &mut u, &mut v, (pi, pj), t);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !m.get(i, t).is_zero() {
                    let q = dom.neg(&dom.div_floor(m.get(i, t), m.get(t, t)));
                    m.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    clean &= m.get(i, t).is_zero();
                }
            }
            for j in t + 1..cols {
                if !m.get(t, j).is_zero() {
                    let q = dom.neg(&dom.div_floor(m.get(t, j), m.get(t, t)));
                    m.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    clean &= m.get(t, j).is_zero();
                }
            }
            if !clean {
                let cand = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                let p = smallest_entry(dom, &m, cand).expect("pivot row/column nonzero");
                move_to(&mut m, &mut u, &mut v, p, t);
                continue;
            }
            // enforce divisibility against the trailing block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !dom.divides(m.get(t, t), m.get(i, j)));
            match bad {
                Some((i, _)) => {
                    let one = dom.one();
                    m.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        let p = m.get(t, t).clone();
        let canon = dom.canonical_associate(&p);
        if canon != p {
            // p and canon differ by a unit
            let unit = dom.div_floor(&canon, &p);
            m.scale_row(t, &unit);
            u.scale_row(t, &unit);
        }
        t += 1;
    }
    SmithDecomposition { u, d: m, v, rank: t }
}

fn smallest_entry(
    dom: Domain,
    m: &Matrix,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in cells {
        let x = m.get(i, j);
        if x.is_zero() {
            continue;
        }
        let n = dom.norm(x);
        let better = match &best {
            None => true,
            Some(((bi, bj), bn)) => n < *bn || (n == *bn && (i, j) < (*bi, *bj)),
        };
        if better {
            best = Some(((i, j), n));
        }
    }
    best.map(|(p, _)| p)
}

fn move_to(m: &mut Matrix, u: &mut Matrix, v: &mut Matrix, (i, j): (usize, usize), t: usize) {
    m.swap_rows(t, i);
    u.swap_rows(t, i);
    m.swap_cols(t, j);
    v.swap_cols(t, j);
}

/// Proof that `a x = b` has no solution over the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inconsistency {
    /// `yᵀ a = 0` and `yᵀ b ≠ 0`.
    LeftKernel { y: Vec<Scalar>, residue: Scalar },
    /// `yᵀ a ≡ 0` and `yᵀ b ≢ 0` modulo `modulus` (integers only).
    Divisibility { y: Vec<Scalar>, residue: Scalar, modulus: Scalar },
}

impl Inconsistency {
    /// Re-checks the certificate against the system it refutes.
    pub fn verify(&self, a: &Matrix, b: &[Scalar]) -> bool {
        let d = a.domain();
        let (y, modulus) = match self {
            Inconsistency::LeftKernel { y, .. } => (y, None),
            Inconsistency::Divisibility { y, modulus, .. } => (y, Some(modulus)),
        };
        let yt = Matrix::from_columns(d, y.len(), std::slice::from_ref(y)).transpose();
        let ya = yt.mul(a);
        let yb = yt.mul_vec(b)[0].clone();
        match modulus {
            None => ya.is_zero() && !yb.is_zero(),
            Some(m) => {
                (0..ya.cols()).all(|j| d.divides(m, ya.get(0, j))) && !d.divides(m, &yb)
            }
        }
    }
}

/// Solves `a x = b`, or returns a certificate of inconsistency.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<std::result::Result<Vec<Scalar>, Inconsistency>> {
    if b.len() != a.rows() {
        return Err(Error::Shape(format!("right-hand side of length {} for {} rows", b.len(), a.rows())));
    }
    let dom = a.domain();
    let snf = smith_normal_form(a);
    Ok(solve_with(&snf, dom, b))
}

pub(crate) fn solve_with(
    snf: &SmithDecomposition,
    dom: Domain,
    b: &[Scalar],
) -> std::result::Result<Vec<Scalar>, Inconsistency> {
    let c = snf.u.mul_vec(b);
    let cols = snf.v.rows();
    let mut y = vec![Scalar::zero(); cols];
    for (k, ck) in c.iter().enumerate() {
        if k < snf.rank {
            let dk = snf.d.get(k, k);
            if !dom.divides(dk, ck) {
                return Err(Inconsistency::Divisibility { y: snf.u.row(k), residue: ck.clone(), modulus: dk.clone() });
            }
            y[k] = dom.div_floor(ck, dk);
        } else if !ck.is_zero() {
            return Err(Inconsistency::LeftKernel { y: snf.u.row(k), residue: ck.clone() });
        }
    }
    Ok(snf.v.mul_vec(&y))
}

/// Solves `a X = b` column by column; `None` if any column is inconsistent.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows(), "solve_matrix row mismatch");
    let dom = a.domain();
    let snf = smith_normal_form(a);
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        cols.push(solve_with(&snf, dom, &b.column(j)).ok()?);
    }
    Some(Matrix::from_columns(dom, a.cols(), &cols))
}

/// Basis (as columns) of `{x : a x = 0}`; saturated over ℤ.
pub fn kernel(a: &Matrix) -> Matrix {
    if a.domain().is_field() {
        rank_kernel_image(a).expect("field").1
    } else {
        let snf = smith_normal_form(a);
        let idx: Vec<usize> = (snf.rank..a.cols()).collect();
        snf.v.select_columns(&idx)
    }
}

/// Basis (as columns) of the span of the columns of `g`.
pub fn span_basis(g: &Matrix) -> Matrix {
    if g.domain().is_field() {
        rank_kernel_image(g).expect("field").2
    } else {
        let snf = smith_normal_form(g);
        let idx: Vec<usize> = (0..snf.rank).collect();
        g.mul(&snf.v).select_columns(&idx)
    }
}

/// Whether `v` lies in the span of the columns of `g`.
pub fn in_span(g: &Matrix, v: &[Scalar]) -> bool {
    solve(g, v).expect("shape").is_ok()
}

/// Whether a square matrix is invertible over its domain.
pub fn is_invertible(a: &Matrix) -> bool {
    if a.rows() != a.cols() {
        return false;
    }
    let snf = smith_normal_form(a);
    snf.rank == a.rows() && snf.diagonal().iter().all(|x| a.domain().is_unit(x))
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    if !is_invertible(a) {
        return None;
    }
    solve_matrix(a, &Matrix::identity(a.domain(), a.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows_i64(Domain::Integer, rows)
    }

    #[test]
    fn rank_of_zero_and_identity() {
        let f2 = Domain::prime(2).unwrap();
        let (r, k, i) = rank_kernel_image(&Matrix::zeros(f2, 2, 3)).unwrap();
        assert_eq!((r, k.cols(), i.cols()), (0, 3, 0));
        let (r, k, _) = rank_kernel_image(&Matrix::identity(Domain::Rational, 3)).unwrap();
        assert_eq!((r, k.cols()), (3, 0));
    }

    #[test]
    fn all_ones_over_f2_has_kernel_one_one() {
        let f2 = Domain::prime(2).unwrap();
        let a = Matrix::from_rows_i64(f2, &[&[1, 1], &[1, 1]]);
        let (r, k, _) = rank_kernel_image(&a).unwrap();
        assert_eq!(r, 1);
        assert_eq!(k, Matrix::from_rows_i64(f2, &[&[1], &[1]]));
        // enumerate all four vectors of F2^2: only 0 and (1,1) are killed
        let killed: Vec<(i64, i64)> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .into_iter()
            .filter(|&(x, y)| a.mul_vec(&[f2.from_i64(x), f2.from_i64(y)]).iter().all(Zero::is_zero))
            .collect();
        assert_eq!(killed, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn rank_kernel_image_rejects_integers() {
        assert!(rank_kernel_image(&z(&[&[1]])).is_err());
    }

    #[test]
    fn smith_small_cases() {
        assert_eq!(smith_normal_form(&z(&[&[1]])).invariants(), vec![BigInt::from(1)]);
        assert_eq!(smith_normal_form(&z(&[&[2]])).invariants(), vec![BigInt::from(2)]);
        let a = z(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariants(), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        let e = smith_normal_form(&Matrix::zeros(Domain::Integer, 0, 0));
        assert_eq!(e.rank, 0);
    }

    #[test]
    fn solve_examples() {
        let q = Domain::Rational;
        let b = vec![q.from_i64(3), q.from_i64(-1)];
        assert_eq!(solve(&Matrix::identity(q, 2), &b).unwrap().unwrap(), b);

        let a = z(&[&[2]]);
        let zb = vec![Domain::Integer.from_i64(3)];
        let cert = solve(&a, &zb).unwrap().unwrap_err();
        assert!(cert.verify(&a, &zb));
        assert!(matches!(cert, Inconsistency::Divisibility { .. }));

        let f2 = Domain::prime(2).unwrap();
        let a = Matrix::from_rows_i64(f2, &[&[1, 1], &[0, 1]]);
        let x = solve(&a, &[f2.from_i64(0), f2.from_i64(1)]).unwrap().unwrap();
        assert_eq!(x, vec![f2.from_i64(1), f2.from_i64(1)]);
    }

    #[test]
    fn solve_rejects_bad_shape() {
        assert!(solve(&z(&[&[1, 2]]), &[]).is_err());
    }

    #[test]
    fn integer_kernel_is_saturated() {
        let a = z(&[&[2, 4]]);
        let k = kernel(&a);
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        let g = num_integer::Integer::gcd(col[0].numer(), col[1].numer());
        assert_eq!(g, BigInt::from(1));
    }
}
