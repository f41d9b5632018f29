//! Finite-dimensional algebras given by structure constants, and their
//! one-sided modules.

mod module;
mod ops;

pub(crate) use module::same_algebra;
pub(crate) use ops::balanced_relations;
pub use module::{FinModule, Side};
pub use ops::{
    dual, find_isomorphism, hom_space, hom_to_regular, indecomposable_injectives, module_tensor, HomSpace,
    TensorSpace,
};

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::error::{Error, Result};
use crate::linalg::{rank, Domain, Matrix, Scalar};

pub type AlgebraRef = Arc<Algebra>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    domain: Domain,
    labels: Vec<String>,
    /// `products[i][j]` holds the coordinates of `eᵢ·eⱼ`.
    products: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    frobenius_form: Option<Matrix>,
    idempotents: Vec<Vec<Scalar>>,
}

impl Algebra {
    /// Validates associativity, the unit, and the Frobenius form when given.
    /// Idempotents default to the basis idempotents when those form a
    /// complete orthogonal set, and to the unit otherwise.
    pub fn new(
        name: impl Into<String>,
        domain: Domain,
        labels: Vec<String>,
        products: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        frobenius_form: Option<Matrix>,
        idempotents: Option<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Algebra("dimension must be positive".into()));
        }
        let shape_ok = products.len() == n
            && products.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == n))
            && unit.len() == n;
        if !shape_ok {
            return Err(Error::Algebra(format!("structure constants must be {n}x{n}x{n} with a unit of length {n}")));
        }
        let products = products
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.into_iter().map(|x| domain.normalize(x)).collect()).collect())
            .collect();
        let unit = unit.into_iter().map(|x| domain.normalize(x)).collect();
        let mut alg = Algebra {
            name: name.into(),
            domain,
            labels,
            products,
            unit,
            frobenius_form: None,
            idempotents: Vec::new(),
        };
        alg.check_associative()?;
        alg.check_unit()?;
        if let Some(form) = frobenius_form {
            alg.check_frobenius(&form)?;
            alg.frobenius_form = Some(form);
        }
        alg.idempotents = match idempotents {
            Some(list) => {
                let list: Vec<Vec<Scalar>> =
                    list.into_iter().map(|v| v.into_iter().map(|x| domain.normalize(x)).collect()).collect();
                alg.check_idempotents(&list)?;
                list
            }
            None => alg.default_idempotents()?,
        };
        Ok(alg)
    }

    /// The coefficient ring itself as a one-dimensional algebra.
    pub fn ground(domain: Domain) -> Self {
        let one = vec![Scalar::one()];
        Algebra {
            name: format!("{domain}"),
            domain,
            labels: vec!["1".into()],
            products: vec![vec![one.clone()]],
            unit: one.clone(),
            frobenius_form: domain.is_field().then(|| Matrix::identity(domain, 1)),
            idempotents: vec![one],
        }
    }

    /// Group algebra of the cyclic group of order `n` on the basis `1, t, …, tⁿ⁻¹`.
    pub fn cyclic_group(domain: Domain, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Algebra("group order must be positive".into()));
        }
        let products = (0..n)
            .map(|i| (0..n).map(|j| unit_vector(n, (i + j) % n)).collect())
            .collect();
        let labels = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("t^{i}") }).collect();
        // symmetric form (a, b) ↦ coefficient of 1 in ab
        let form = domain.is_field().then(|| {
            let mut f = Matrix::zeros(domain, n, n);
            for i in 0..n {
                f.set(i, (n - i) % n, Scalar::one());
            }
            f
        });
        Algebra::new(format!("{domain}[C{n}]"), domain, labels, products, unit_vector(n, 0), form, None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i][j]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn frobenius_form(&self) -> Option<&Matrix> {
        self.frobenius_form.as_ref()
    }

    pub fn is_frobenius(&self) -> bool {
        self.frobenius_form.is_some()
    }

    pub fn idempotents(&self) -> &[Vec<Scalar>] {
        &self.idempotents
    }

    /// Multiplication of coordinate vectors.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let d = self.domain;
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let c = d.mul(&a[i], &b[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    let p = &self.products[i][j][k];
                    if !p.is_zero() {
                        *o = d.add(o, &d.mul(&c, p));
                    }
                }
            }
        }
        out
    }

    /// Matrices of multiplication by each basis element on the algebra:
    /// `x ↦ eᵢx` for the left side, `x ↦ xeᵢ` for the right side.
    pub fn regular_action(&self, side: Side) -> Vec<Matrix> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut m = Matrix::zeros(self.domain, n, n);
                for j in 0..n {
                    let col = match side {
                        Side::Left => &self.products[i][j],
                        Side::Right => &self.products[j][i],
                    };
                    for (k, v) in col.iter().enumerate() {
                        m.set(k, j, v.clone());
                    }
                }
                m
            })
            .collect()
    }

    /// Matrix of multiplication by an arbitrary element.
    pub fn multiplication_matrix(&self, side: Side, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.domain, self.dim(), self.dim());
        for (i, m) in self.regular_action(side).iter().enumerate() {
            if !a[i].is_zero() {
                out = out.add(&m.scale(&a[i]));
            }
        }
        out
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.products[i][j];
                for l in 0..n {
                    let left = self.mul(ij, &unit_vector(n, l));
                    let right = self.mul(&unit_vector(n, i), &self.products[j][l]);
                    if left != right {
                        return Err(Error::Algebra(format!("associativity fails at ({},{},{})", i + 1, j + 1, l + 1)));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let e = unit_vector(n, i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::Algebra(format!("unit axiom fails at basis element {}", i + 1)));
            }
        }
        Ok(())
    }

    fn check_frobenius(&self, form: &Matrix) -> Result<()> {
        let n = self.dim();
        if form.shape() != (n, n) || form.domain() != self.domain {
            return Err(Error::Algebra(format!("Frobenius form must be a {n}x{n} matrix over {}", self.domain)));
        }
        if !self.domain.is_field() || rank(form) != n {
            return Err(Error::Algebra("Frobenius form is singular".into()));
        }
        let pair = |a: &[Scalar], b: &[Scalar]| -> Scalar {
            let fb = form.mul_vec(b);
            a.iter().zip(&fb).fold(Scalar::zero(), |acc, (x, y)| self.domain.add(&acc, &self.domain.mul(x, y)))
        };
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let (ei, ej, el) = (unit_vector(n, i), unit_vector(n, j), unit_vector(n, l));
                    if pair(&self.mul(&ei, &ej), &el) != pair(&ei, &self.mul(&ej, &el)) {
                        return Err(Error::Algebra(format!(
                            "Frobenius form is not associative at ({},{},{})",
                            i + 1,
                            j + 1,
                            l + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_idempotents(&self, list: &[Vec<Scalar>]) -> Result<()> {
        let n = self.dim();
        if list.is_empty() || list.iter().any(|e| e.len() != n) {
            return Err(Error::Algebra("idempotents must be nonempty vectors of algebra length".into()));
        }
        let mut sum = vec![Scalar::zero(); n];
        for (a, e) in list.iter().enumerate() {
            for (b, f) in list.iter().enumerate() {
                let ef = self.mul(e, f);
                let expected = if a == b { e.clone() } else { vec![Scalar::zero(); n] };
                if ef != expected {
                    return Err(Error::Algebra(format!("idempotents {} and {} are not orthogonal idempotents", a + 1, b + 1)));
                }
            }
            sum = sum.iter().zip(e).map(|(x, y)| self.domain.add(x, y)).collect();
        }
        if sum != self.unit {
            return Err(Error::Algebra("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    fn default_idempotents(&self) -> Result<Vec<Vec<Scalar>>> {
        let n = self.dim();
        let basis: Vec<Vec<Scalar>> = (0..n)
            .map(|i| unit_vector(n, i))
            .filter(|e| !e.iter().all(Zero::is_zero) && self.mul(e, e) == *e)
            .collect();
        let candidate = if self.check_idempotents(&basis).is_ok() { basis } else { vec![self.unit.clone()] };
        for (k, e) in candidate.iter().enumerate() {
            if !self.corner_is_local(e) {
                return Err(Error::Algebra(format!(
                    "cannot certify idempotent {} as primitive; supply a complete set of primitive orthogonal idempotents",
                    k + 1
                )));
            }
        }
        Ok(candidate)
    }

    /// Whether `eRe` is local: every element is nilpotent or invertible.
    /// Decided by enumeration over small prime fields and by sampling otherwise;
    /// dimension one is always local and ℤ-orders are not checked.
    fn corner_is_local(&self, e: &[Scalar]) -> bool {
        let n = self.dim();
        let corner: Vec<Vec<Scalar>> =
            (0..n).map(|i| self.mul(&self.mul(e, &unit_vector(n, i)), e)).collect();
        let cols: Vec<Matrix> = corner.iter().map(|v| column(self.domain, v)).collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        let span = crate::linalg::span_basis(&Matrix::hstack(&refs));
        let d = span.cols();
        if d <= 1 || !self.domain.is_field() {
            return true;
        }
        let elements = match self.domain.order() {
            Some(p) if (p as f64).powi(d as i32) <= 4096.0 => enumerate_combinations(self.domain, p, d),
            _ => {
                // sample: sound only as a rejection test, so treat as local when no witness appears
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
                (0..256)
                    .map(|_| (0..d).map(|_| self.domain.from_i64(rng.gen_range(-3..=3))).collect())
                    .collect()
            }
        };
        let left = self.regular_action(Side::Left);
        elements.iter().all(|coeffs: &Vec<Scalar>| {
            let x = span.mul_vec(coeffs);
            let mut m = Matrix::zeros(self.domain, n, n);
            for (i, a) in left.iter().enumerate() {
                if !x[i].is_zero() {
                    m = m.add(&a.scale(&x[i]));
                }
            }
            // restricted to eRe, x is a unit iff x·eRe = eRe, nilpotent iff some power vanishes
            let image = m.mul(&span);
            rank(&image) == d || is_nilpotent(&m)
        })
    }
}

fn is_nilpotent(m: &Matrix) -> bool {
    let mut p = m.clone();
    for _ in 0..m.rows().max(1) {
        if p.is_zero() {
            return true;
        }
        p = p.mul(m);
    }
    p.is_zero()
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub(crate) fn column(domain: Domain, v: &[Scalar]) -> Matrix {
    Matrix::from_columns(domain, v.len(), &[v.to_vec()])
}

/// All coefficient vectors of length `d` over 𝔽ₚ in lexicographic order.
pub(crate) fn enumerate_combinations(domain: Domain, p: u64, d: usize) -> Vec<Vec<Scalar>> {
    let total = p.pow(d as u32);
    (0..total)
        .map(|mut k| {
            (0..d)
                .map(|_| {
                    let digit = k % p;
                    k /= p;
                    domain.from_i64(digit as i64)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests;
