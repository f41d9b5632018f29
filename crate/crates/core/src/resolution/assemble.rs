use super::projective::{closed_resolution, DEFAULT_HORIZON};
use crate::algebra::{hom_space, FinModule};
use crate::complex::{cone, ChainComplex, ChainMap, SplitKernel, Tail};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, Scalar};

/// A surjective quasi-isomorphism `G → M` from a bounded complex of
/// Gorenstein projectives (projective above the top of `M`), with its
/// acyclic kernel `K`.
#[derive(Clone, Debug)]
pub struct AssembledResolution {
    pub resolved: ChainComplex,
    pub cover: ChainComplex,
    pub kernel: ChainComplex,
    /// `G → M`.
    pub map: ChainMap,
    /// `K → G`.
    pub inclusion: ChainMap,
}

/// Builds `G → M` for a bounded complex over a field by induction on the top
/// degree: `M = Cone(Σ^{s−1}M_s → M_{≤s−1})`, the two pieces are resolved,
/// the map between them lifted, and `G`, `K` taken as cones. Each module is
/// covered by itself over a Frobenius algebra (every module is Gorenstein
/// projective there) and by its projective resolution otherwise.
pub fn assemble_complex_resolution(m: &ChainComplex) -> Result<AssembledResolution> {
    if !m.domain().is_field() {
        return Err(Error::Unsupported("assembling resolutions of complexes over the integers".into()));
    }
    let (inf, sup) = match (m.inf(), m.sup()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Unsupported("assembling resolutions of unbounded complexes".into())),
    };
    let (lo, hi) = m.window();
    for i in lo..=hi {
        if m.module(i).has_relations() {
            return Err(Error::Unsupported(format!("module in degree {i} carries relations; reduce it first")));
        }
    }
    if inf > sup {
        let z = ChainComplex::zero(m.algebra().clone(), m.side());
        return Ok(AssembledResolution {
            resolved: m.clone(),
            cover: z.clone(),
            kernel: z.clone(),
            map: ChainMap::zero(&z, m),
            inclusion: ChainMap::identity(&z),
        });
    }
    induct(m, inf, sup)
}

fn induct(m: &ChainComplex, inf: i64, sup: i64) -> Result<AssembledResolution> {
    if inf == sup {
        return base(m.module(sup), sup);
    }
    let top = base(m.module(sup), sup - 1)?;
    let rest_complex = m.truncate_below(sup - 1);
    let rest = induct(&rest_complex, inf, sup - 1)?;
    let f = ChainMap::new(top.resolved.clone(), rest.resolved.clone(), sup - 1, vec![m.diff(sup)], Tail::Zero, Tail::Zero)?;
    let g = lift(&f, &top, &rest)?;
    let h = restrict(&g, &top, &rest)?;
    let cover = cone(&g)?;
    let kernel = cone(&h)?;
    let resolved = cone(&f)?;
    let dom = m.domain();
    let (a, b) = cover.window();
    let maps = (a..=b)
        .map(|i| Matrix::block_diag(dom, &[&top.map.at(i - 1), &rest.map.at(i)]))
        .collect();
    let map = ChainMap::new(cover.clone(), resolved.clone(), a, maps, Tail::Zero, Tail::Zero)?;
    let (ka, kb) = kernel.window();
    let incl = (ka..=kb)
        .map(|i| Matrix::block_diag(dom, &[&top.inclusion.at(i - 1), &rest.inclusion.at(i)]))
        .collect();
    let inclusion = ChainMap::new(kernel.clone(), cover.clone(), ka, incl, Tail::Zero, Tail::Zero)?;
    Ok(AssembledResolution { resolved, cover, kernel, map, inclusion })
}

fn base(module: &FinModule, d: i64) -> Result<AssembledResolution> {
    let resolved = ChainComplex::concentrated(module.clone(), d);
    if module.algebra().is_frobenius() {
        let zero = ChainComplex::zero(module.algebra().clone(), module.side());
        return Ok(AssembledResolution {
            cover: resolved.clone(),
            kernel: zero.clone(),
            map: ChainMap::identity(&resolved),
            inclusion: ChainMap::zero(&zero, &resolved),
            resolved,
        });
    }
    let p = closed_resolution(module, DEFAULT_HORIZON)?;
    if p.length().is_none() {
        return Err(Error::Unsupported("module of infinite projective dimension over a non-Frobenius algebra".into()));
    }
    let cover = p.complex.shift(d);
    let map = ChainMap::new(cover.clone(), resolved.clone(), d, vec![p.augmentation.clone()], Tail::Zero, Tail::Zero)?;
    let split = SplitKernel::new(&map)?;
    Ok(AssembledResolution { resolved, cover, kernel: split.kernel, map, inclusion: split.inclusion })
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|i| m.row(i)).collect()
}

/// Solves for a chain map `g : G' → G''` with `α'' g = f α'`.
fn lift(f: &ChainMap, top: &AssembledResolution, rest: &AssembledResolution) -> Result<ChainMap> {
    let (src, tgt) = (&top.cover, &rest.cover);
    let dom = src.domain();
    let (a, b) = src.window();
    let bases: Vec<Vec<Matrix>> =
        (a..=b).map(|i| Ok(hom_space(src.module(i), tgt.module(i))?.basis)).collect::<Result<_>>()?;
    let offsets: Vec<usize> = bases
        .iter()
        .scan(0, |acc, v| {
            let o = *acc;
            *acc += v.len();
            Some(o)
        })
        .collect();
    let unknowns: usize = bases.iter().map(Vec::len).sum();
    let var = |i: i64| ((i - a) as usize, offsets[(i - a) as usize]);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut push_block = |entries: Vec<(usize, Matrix)>, target: Matrix, size: usize| {
        let flats: Vec<(usize, Vec<Scalar>)> = entries.iter().map(|(c, m)| (*c, flatten(m))).collect();
        let goal = flatten(&target);
        for e in 0..size {
            let mut row = vec![dom.zero(); unknowns];
            for (col, v) in &flats {
                row[*col] = v[e].clone();
            }
            rows.push(row);
            rhs.push(goal[e].clone());
        }
    };
    for i in a..=b + 1 {
        // ∂'' g_i − g_{i−1} ∂' = 0
        let (r, c) = (tgt.module(i - 1).dim(), src.module(i).dim());
        let mut entries = Vec::new();
        if i <= b {
            let (k, off) = var(i);
            for (j, basis) in bases[k].iter().enumerate() {
                entries.push((off + j, tgt.diff(i).mul(basis)));
            }
        }
        if i > a {
            let (k, off) = var(i - 1);
            for (j, basis) in bases[k].iter().enumerate() {
                entries.push((off + j, basis.mul(&src.diff(i)).neg()));
            }
        }
        push_block(entries, Matrix::zeros(dom, r, c), r * c);
    }
    for i in a..=b {
        // α'' g_i = f α'
        let (k, off) = var(i);
        let entries = bases[k].iter().enumerate().map(|(j, basis)| (off + j, rest.map.at(i).mul(basis))).collect();
        let target = f.at(i).mul(&top.map.at(i));
        let size = target.rows() * target.cols();
        push_block(entries, target, size);
    }
    let system = Matrix::from_scalars(dom, rows.len(), unknowns, rows.into_iter().flatten().collect())?;
    let coeffs = match solve(&system, &rhs)? {
        Ok(c) => c,
        Err(_) => return Err(Error::Resolution("the comparison map does not lift".into())),
    };
    let maps = (a..=b)
        .map(|i| {
            let (k, off) = var(i);
            let mut g = Matrix::zeros(dom, tgt.module(i).dim(), src.module(i).dim());
            for (j, basis) in bases[k].iter().enumerate() {
                g = g.add(&basis.scale(&coeffs[off + j]));
            }
            g
        })
        .collect();
    ChainMap::new(src.clone(), tgt.clone(), a, maps, Tail::Zero, Tail::Zero)
}

/// The restriction `K' → K''` of a lift.
fn restrict(g: &ChainMap, top: &AssembledResolution, rest: &AssembledResolution) -> Result<ChainMap> {
    let (src, tgt) = (&top.kernel, &rest.kernel);
    let dom = src.domain();
    let (a, b) = src.window();
    let mut maps = Vec::new();
    for i in a..=b {
        let image = g.at(i).mul(&top.inclusion.at(i));
        let incl = rest.inclusion.at(i);
        let h = if image.is_zero() {
            Matrix::zeros(dom, tgt.module(i).dim(), src.module(i).dim())
        } else {
            crate::linalg::solve_matrix(&incl, &image)
                .ok_or_else(|| Error::Resolution(format!("lift does not preserve kernels in degree {i}")))?
        };
        maps.push(h);
    }
    ChainMap::new(src.clone(), tgt.clone(), a, maps, Tail::Zero, Tail::Zero)
}
