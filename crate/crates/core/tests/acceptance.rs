//! One line per acceptance criterion, `PASS` or `FAIL`, with the measured
//! runtime against its pinned bound.

mod common;

use std::time::{Duration, Instant};

use gorhom::algebra::{FinModule, Side};
use gorhom::checks::{
    check_balance_tate, check_balance_unbounded, check_theorem_b, check_theorem_c, run_suite, CheckReport, Relation,
};
use gorhom::complex::{cone_sequence, ChainComplex, Tail};
use gorhom::corpus::builtin_corpus;
use gorhom::fixtures;
use gorhom::functors::unbounded_tor;
use gorhom::gdim::{gfd_detect, DimValue};
use gorhom::linalg::{kernel, rank, smith_normal_form, Domain, HomologyGroup, Matrix};
use gorhom::resolution::{complete_resolution, cyclic_group_complete_resolution};
use gorhom::tensor::{homology_window, tensor_complexes};
use num_bigint::BigInt;

const SIGN_BOUND: Duration = Duration::from_secs(10);
const BALANCE_BOUND: Duration = Duration::from_secs(5);
const SUITE_BOUND: Duration = Duration::from_secs(60);
const RANGE: (i64, i64) = (-4, 6);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn first_failure(r: &CheckReport) -> String {
    match r.failing_rows().next() {
        Some(row) => format!("{} / {}: {} @{:?}: {} vs {}", r.check, r.instance, row.label, row.degree, row.left, row.right),
        None => String::new(),
    }
}

fn f2() -> Domain {
    Domain::prime(2).unwrap()
}

/// ∂² = 0 on the assembled tensor complex of random bounded complexes.
fn tensor_sign_convention() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(1);
    let mut checked = 0;
    for trial in 0..100 {
        let dom = common::FIELDS[trial % 3];
        let alg = common::ground(dom);
        let len_m = 1 + trial % 4;
        let len_n = 1 + (trial / 4) % 4;
        let m = common::random_complex(&mut rng, &alg, Side::Right, -1, len_m, 3);
        let n = common::random_complex(&mut rng, &alg, Side::Left, 0, len_n, 3);
        let t = tensor_complexes(&m, &n, -3, 6).unwrap().complex;
        for d in -2..=6 {
            if !t.diff(d - 1).mul(&t.diff(d)).is_zero() {
                return outcome(false, format!("trial {trial} over {dom}: ∂² ≠ 0 in degree {d}"));
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(elapsed < SIGN_BOUND, format!("{checked} degrees, {elapsed:.1?} (bound {SIGN_BOUND:?})"))
}

/// Windowed homology against a recomputation from a wider brutal truncation.
fn window_lemma() -> Outcome {
    let d = fixtures::dual_numbers(2).unwrap();
    let g = fixtures::group_algebra(2, 2).unwrap();
    let zg = fixtures::integral_group_ring(2).unwrap();
    let periodic = [
        complete_resolution(&fixtures::residue_field(&d, Side::Right).unwrap()).unwrap().totally_acyclic,
        complete_resolution(&fixtures::trivial_group_module(&g, Side::Right).unwrap()).unwrap().totally_acyclic,
        cyclic_group_complete_resolution(&zg, Side::Right).unwrap().totally_acyclic,
    ];
    let reg = FinModule::regular(d.clone(), Side::Left);
    let dx = Matrix::from_rows_i64(f2(), &[&[0, 0], &[1, 0]]);
    let bounded = [
        ChainComplex::concentrated(fixtures::residue_field(&d, Side::Left).unwrap(), 0),
        ChainComplex::new(d.clone(), Side::Left, 0, vec![reg.clone(), reg], vec![dx], Tail::Zero, Tail::Zero).unwrap(),
        ChainComplex::concentrated(fixtures::trivial_group_module(&g, Side::Left).unwrap(), 1),
        ChainComplex::concentrated(fixtures::integral_trivial(&zg, Side::Left, 0).unwrap(), 0),
        ChainComplex::concentrated(fixtures::integral_trivial(&zg, Side::Left, 3).unwrap(), -1),
    ];
    let pairs = [(0, 0), (0, 1), (1, 2), (2, 3), (2, 4)];
    let mut count = 0;
    for (ti, ni) in pairs {
        let (t, n) = (&periodic[ti], &bounded[ni]);
        let (inf, sup) = (n.inf().unwrap(), n.sup().unwrap());
        for deg in RANGE.0..=RANGE.1 {
            let h = homology_window(t, n, deg).unwrap();
            let (a, b) = (deg - sup - 3, deg - inf + 3);
            let wide = t.truncate_above(a).truncate_below(b);
            let direct = tensor_complexes(&wide, n, deg - 1, deg + 1).unwrap().complex.homology_at(deg);
            if h != direct {
                return outcome(false, format!("pair ({ti},{ni}) degree {deg}: {h} vs {direct}"));
            }
            count += 1;
        }
    }
    outcome(true, format!("{count} degrees agree"))
}

/// Tate homology against `H(M ⊗ T′)` on three pairs, with the expected values.
fn theorem_a() -> Outcome {
    let start = Instant::now();
    let d = fixtures::dual_numbers(2).unwrap();
    let g = fixtures::group_algebra(2, 2).unwrap();
    let zg = fixtures::integral_group_ring(2).unwrap();
    let k_everywhere = |_: i64| "k".to_string();
    let alternating = |i: i64| if i.rem_euclid(2) == 1 { "Z/2".to_string() } else { "0".to_string() };
    let cases: [(FinModule, FinModule, &dyn Fn(i64) -> String); 3] = [
        (fixtures::residue_field(&d, Side::Right).unwrap(), fixtures::residue_field(&d, Side::Left).unwrap(), &k_everywhere),
        (
            fixtures::trivial_group_module(&g, Side::Right).unwrap(),
            fixtures::trivial_group_module(&g, Side::Left).unwrap(),
            &k_everywhere,
        ),
        (
            fixtures::integral_trivial(&zg, Side::Right, 0).unwrap(),
            fixtures::integral_trivial(&zg, Side::Left, 0).unwrap(),
            &alternating,
        ),
    ];
    for (m, n, expected) in &cases {
        let r = check_balance_tate(m, n, RANGE).unwrap();
        if !r.pass {
            return outcome(false, first_failure(&r));
        }
        for row in r.rows.iter().filter(|row| row.relation == Relation::Iso) {
            let deg = row.degree.unwrap();
            if row.left != expected(deg) {
                return outcome(false, format!("{}: {} @{deg} is {}, expected {}", r.instance, row.label, row.left, expected(deg)));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(elapsed < BALANCE_BOUND, format!("3 pairs over {RANGE:?}, {elapsed:.1?} (bound {BALANCE_BOUND:?})"))
}

/// The four-term sequence on four pairs, including the all-`k` sequence and
/// both degenerate projective cases.
fn theorem_c() -> Outcome {
    let d = fixtures::dual_numbers(2).unwrap();
    let g = fixtures::group_algebra(2, 2).unwrap();
    let zg = fixtures::integral_group_ring(2).unwrap();
    let k_l = fixtures::residue_field(&d, Side::Left).unwrap();
    let pairs = [
        (fixtures::residue_field(&d, Side::Right).unwrap(), k_l.clone()),
        (FinModule::regular(d.clone(), Side::Right), k_l),
        (FinModule::regular(zg.clone(), Side::Right), fixtures::integral_trivial(&zg, Side::Left, 0).unwrap()),
        (fixtures::trivial_group_module(&g, Side::Right).unwrap(), fixtures::trivial_group_module(&g, Side::Left).unwrap()),
    ];
    let mut exact_rows = 0;
    for (k, (m, n)) in pairs.iter().enumerate() {
        let r = check_theorem_c(m, n).unwrap();
        if !r.pass {
            return outcome(false, first_failure(&r));
        }
        exact_rows += r.rows.iter().filter(|row| row.relation == Relation::Exact).count();
        if k == 0 && !r.rows.iter().filter(|row| row.relation == Relation::Iso).all(|row| row.left == "k") {
            return outcome(false, "(k, k) sequence is not k at every spot");
        }
        if k == 1 || k == 2 {
            let tate_zero = r.rows.iter().filter(|row| row.relation == Relation::Iso && row.label.contains("Tate")).all(|row| row.left == "0");
            if !tate_zero {
                return outcome(false, format!("{}: Tate terms do not vanish for a projective", r.instance));
            }
        }
    }
    outcome(true, format!("4 pairs, {exact_rows} exactness certificates"))
}

/// The dimension bound on every bounded complex of the built-in corpus over
/// a field. Over the integers the detector has no finite list of injectives
/// to test against, so those complexes are counted as skipped.
fn theorem_b() -> Outcome {
    let corpus = builtin_corpus().unwrap();
    let mut count = 0;
    let mut skipped = 0;
    for (id, c) in &corpus.complexes {
        if !c.domain().is_field() {
            skipped += 1;
            continue;
        }
        let r = check_theorem_b(c).unwrap();
        if !r.pass {
            return outcome(false, format!("{id}: {}", first_failure(&r)));
        }
        count += 1;
    }
    let intro = check_theorem_b(&corpus.complexes["intro"]).unwrap();
    let row = &intro.rows[0];
    let intro_ok = row.left == "-inf" && row.right == "0" && row.label.contains("strict");
    outcome(count >= 10 && intro_ok, format!("{count} complexes ({skipped} integral skipped); intro: {} against {} ({})", row.left, row.right, row.label))
}

/// Detected dimensions with matching upper and lower witnesses.
fn detector() -> Outcome {
    let d = fixtures::dual_numbers(2).unwrap();
    let k = ChainComplex::concentrated(fixtures::residue_field(&d, Side::Right).unwrap(), 0);
    let corpus = builtin_corpus().unwrap();
    for (name, c, expected) in [("k", k.clone(), Some(0)), ("Σ²k", k.shift(2), Some(2)), ("intro", corpus.complexes["intro"].clone(), None)] {
        let r = gfd_detect(&c).unwrap();
        let value_ok = match expected {
            Some(g) => r.value == DimValue::Exact(g),
            None => r.value == DimValue::NegInfinity,
        };
        let upper_ok = r.upper.as_ref().is_some_and(|u| u.bound == expected);
        let lower_ok = match expected {
            Some(g) => r.lower.as_ref().is_some_and(|l| l.degree == g && !l.group.is_zero()),
            None => r.lower.is_none(),
        };
        if !(value_ok && upper_ok && lower_ok) {
            return outcome(false, format!("Gfd {name} = {} with witnesses {:?} / {:?}", r.value, r.upper, r.lower));
        }
    }
    outcome(true, "Gfd k = 0, Gfd Σ²k = 2, Gfd intro = -inf")
}

/// Every `X` with `X² = 0` on `𝔽₂^d`, `d ≤ 3`.
fn square_zero_matrices(dim: usize) -> Vec<Matrix> {
    let dom = f2();
    (0u32..1 << (dim * dim))
        .map(|bits| Matrix::from_i64(dom, dim, dim, &(0..dim * dim).map(|b| ((bits >> b) & 1) as i64).collect::<Vec<_>>()))
        .filter(|x| x.mul(x).is_zero())
        .collect()
}

/// `bTor_i(k, N) = 0` for `i ≥ 1` and `bTor_0(k, N) ≅ Hom(Hom(k, R), N)` for
/// all small `N`. The right side uses `Hom(k, R) ≅ xR ≅ k`, so it is the
/// socle `ker x` of `N`, read off the action matrix directly.
fn small_modules() -> Outcome {
    let d = fixtures::dual_numbers(2).unwrap();
    let cr = complete_resolution(&fixtures::residue_field(&d, Side::Right).unwrap()).unwrap();
    let mut count = 0;
    for dim in 0..=3 {
        for x in square_zero_matrices(dim) {
            let n = FinModule::new(d.clone(), Side::Left, dim, vec![Matrix::identity(f2(), dim), x.clone()], None).unwrap();
            let nc = ChainComplex::concentrated(n, 0);
            for i in 1..=3 {
                let b = unbounded_tor(&cr, &nc, i).unwrap().group;
                if !b.is_zero() {
                    return outcome(false, format!("bTor_{i}(k, N) = {b} for x = {:?}", x.to_strings()));
                }
            }
            let b0 = unbounded_tor(&cr, &nc, 0).unwrap().group;
            let socle = HomologyGroup::free(f2(), kernel(&x).cols());
            if b0 != socle {
                return outcome(false, format!("bTor_0(k, N) = {b0}, socle {socle} for x = {:?}", x.to_strings()));
            }
            count += 1;
        }
    }
    outcome(true, format!("{count} modules"))
}

/// Exactness and the cokernel vanishing rows of every sequence instance in
/// the built-in corpus.
fn exact_sequences() -> Outcome {
    let corpus = builtin_corpus().unwrap();
    let tags: Vec<String> = ["stor_sequences", "relative_comparison", "theorem_c"].map(String::from).to_vec();
    let suite = run_suite(&corpus, &tags, None).unwrap();
    if let Some(r) = suite.reports.iter().find(|r| !r.pass) {
        return outcome(false, first_failure(r));
    }
    let rows = suite.reports.iter().flat_map(|r| &r.rows);
    let exact = rows.clone().filter(|row| row.relation == Relation::Exact).count();
    let vanishing = rows.filter(|row| row.label.contains("vanishes")).count();
    outcome(exact > 0 && vanishing > 0, format!("{} instances, {exact} exact spots, {vanishing} vanishing rows", suite.reports.len()))
}

/// Symmetry of unbounded homology on three pairs.
fn unbounded_balance() -> Outcome {
    let d = fixtures::dual_numbers(2).unwrap();
    let g = fixtures::group_algebra(2, 2).unwrap();
    let t2 = fixtures::upper_triangular(2).unwrap();
    let injectives = gorhom::algebra::indecomposable_injectives(&t2, Side::Left).unwrap();
    let pairs = [
        (fixtures::residue_field(&d, Side::Right).unwrap(), fixtures::residue_field(&d, Side::Left).unwrap()),
        (fixtures::trivial_group_module(&g, Side::Right).unwrap(), fixtures::trivial_group_module(&g, Side::Left).unwrap()),
        (fixtures::one_dimensional(&t2, Side::Right, &[0]).unwrap(), injectives[0].clone()),
    ];
    for (m, n) in &pairs {
        let r = check_balance_unbounded(m, n, RANGE).unwrap();
        if !r.pass {
            return outcome(false, first_failure(&r));
        }
    }
    outcome(true, format!("3 pairs over {RANGE:?}"))
}

fn snf_table() -> Result<usize, String> {
    let z = Domain::Integer;
    let cases: [(&[&[i64]], &[i64]); 10] = [
        (&[&[2, 0], &[0, 3]], &[1, 6]),
        (&[&[2, 4], &[6, 8]], &[2, 4]),
        (&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]], &[1, 3]),
        (&[&[6]], &[6]),
        (&[&[0, 0], &[0, 0]], &[]),
        (&[&[2, 0, 0], &[0, 4, 0], &[0, 0, 8]], &[2, 4, 8]),
        (&[&[4, 6]], &[2]),
        (&[&[2], &[3]], &[1]),
        (&[&[1, 1], &[1, -1]], &[1, 2]),
        (&[&[12, 18], &[18, 12]], &[6, 30]),
    ];
    for (rows, expected) in cases {
        let a = Matrix::from_rows_i64(z, rows);
        let s = smith_normal_form(&a);
        let got: Vec<BigInt> = s.invariants();
        let want: Vec<BigInt> = expected.iter().map(|&v| BigInt::from(v)).collect();
        if got != want || s.u.mul(&a).mul(&s.v) != s.d {
            return Err(format!("SNF of {rows:?}: {got:?}, expected {want:?}"));
        }
    }
    Ok(cases.len())
}

fn rank_nullity() -> Result<usize, String> {
    let mut rng = common::rng(10);
    for trial in 0..200 {
        let dom = common::FIELDS[trial % 3];
        let (r, c) = (1 + trial % 5, 1 + (trial / 5) % 5);
        let a = common::random_matrix(&mut rng, dom, r, c);
        let k = kernel(&a);
        if rank(&a) + k.cols() != c || !a.mul(&k).is_zero() || rank(&k) != k.cols() {
            return Err(format!("rank-nullity fails on trial {trial} over {dom}"));
        }
    }
    Ok(200)
}

fn cone_sequences() -> Result<usize, String> {
    let mut rng = common::rng(20);
    for trial in 0..50 {
        let dom = common::FIELDS[trial % 3];
        let alg = common::ground(dom);
        let c = common::random_complex(&mut rng, &alg, Side::Left, -1, 1 + trial % 4, 3);
        let f = common::random_chain_map(&mut rng, &c);
        let les = cone_sequence(&f, -2, 3).map_err(|e| e.to_string())?;
        if !les.exact() {
            return Err(format!("cone sequence not exact on trial {trial} over {dom}"));
        }
    }
    Ok(50)
}

fn infrastructure(suite_start: Instant) -> Outcome {
    let parts = (|| Ok::<_, String>((snf_table()?, rank_nullity()?, cone_sequences()?)))();
    let elapsed = suite_start.elapsed();
    match parts {
        Ok((s, r, c)) => outcome(
            elapsed < SUITE_BOUND,
            format!("{s} SNF cases, {r} rank-nullity, {c} cone sequences; full suite {elapsed:.1?} (bound {SUITE_BOUND:?})"),
        ),
        Err(e) => outcome(false, e),
    }
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("tensor sign convention", Box::new(tensor_sign_convention)),
        ("window lemma", Box::new(window_lemma)),
        ("Tate balance", Box::new(theorem_a)),
        ("four-term Tate sequence", Box::new(theorem_c)),
        ("dimension bound for complexes", Box::new(theorem_b)),
        ("dimension detector", Box::new(detector)),
        ("unbounded homology of k", Box::new(small_modules)),
        ("exact sequences", Box::new(exact_sequences)),
        ("unbounded balance", Box::new(unbounded_balance)),
        ("infrastructure oracles", Box::new(move || infrastructure(start))),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {name}: {}", k + 1, o.detail);
        if !o.pass {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
