//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superquiver::lie::{
    check_gl_invariant, check_weight, gl_basis, group_point_test, is_sl_invariant,
    random_group_element, Derivation, GroupPoint, Weight,
};
use superquiver::oracle::{
    component_basis, generator_span_dim, hom_dim, hom_dim_doubled, hom_ext_dims,
    semi_invariant_dim, ConcreteSuperRep, DEFAULT_CAP,
};
use superquiver::quiver::examples::{a3, kronecker, loop_quiver, three_cycle, two_cycle};
use superquiver::quiver::{
    enumerate_closed_paths, normalize_at, ringel_form, MultiDegree, Parity, ParityVector, Path,
    Quiver, SuperDim, SuperDimVector,
};
use superquiver::ring::{rational, GrassmannAlgebra, GrassmannElement, Polynomial, Rational, Var};
use superquiver::semi::{
    detlike_semi_invariant, linearize_and_restitute_check, reduce_normalized, strace_invariant,
    DetBlock, DetLikeSpec,
};
use superquiver::space::RepSpace;

type Outcome = Result<(), String>;

fn sdv(d: &[(u32, u32)]) -> SuperDimVector {
    SuperDimVector(d.iter().map(|&(p, q)| SuperDim::new(p, q)).collect())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn deg(n: &[u32]) -> MultiDegree {
    MultiDegree(n.to_vec())
}

/// Every degree vector with `1 ≤ total ≤ max`.
fn degrees(num_edges: usize, max: u32) -> Vec<MultiDegree> {
    MultiDegree::all_up_to(num_edges, max)
}

fn criterion_1() -> Outcome {
    let cases: Vec<(Quiver, SuperDimVector)> = vec![
        (loop_quiver(), sdv(&[(1, 1)])),
        (loop_quiver(), sdv(&[(2, 1)])),
        (two_cycle(), sdv(&[(1, 1), (2, 1)])),
        (two_cycle(), sdv(&[(2, 2), (0, 1)])),
        (three_cycle(), sdv(&[(1, 1), (2, 0), (1, 2)])),
    ];
    let mut checked = 0;
    for (q, alpha) in cases {
        for b in ParityVector::all(&q) {
            let space = RepSpace::new(q.clone(), alpha.clone(), b.clone()).map_err(|e| e.to_string())?;
            for p in enumerate_closed_paths(&q, 3) {
                let f = strace_invariant(&space, &p).map_err(|e| e.to_string())?;
                let v = check_gl_invariant(&space, &f);
                ensure(v.passed(), || {
                    format!("{} on {} b={:?}: {}", p.display(&q), q, b.0, v.render(&space))
                })?;
                checked += 1;
            }
        }
    }
    ensure(checked == 28, || format!("only {checked} supertraces checked"))
}

fn criterion_2() -> Outcome {
    let loop11 = RepSpace::unshifted(loop_quiver(), sdv(&[(1, 1)])).unwrap();
    let cycle = RepSpace::unshifted(two_cycle(), sdv(&[(1, 1), (1, 1)])).unwrap();
    let mut mismatches = Vec::new();
    for (name, space, max) in [("loop", &loop11, 4), ("2-cycle", &cycle, 4)] {
        for n in degrees(space.num_edges(), max) {
            let len = n.total() as usize;
            let ssi = semi_invariant_dim(space, &n, DEFAULT_CAP).map_err(|e| e.to_string())?;
            let span = generator_span_dim(space, &n, len, DEFAULT_CAP).map_err(|e| e.to_string())?;
            if ssi != span {
                mismatches.push(format!("{name} n={n} ssi={ssi} span={span}"));
            }
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join("; "))
}

fn criterion_3() -> Outcome {
    let q = kronecker();
    for alpha in [sdv(&[(1, 1), (1, 1)]), sdv(&[(2, 1), (1, 2)])] {
        for b in ParityVector::all(&q) {
            let space = RepSpace::new(q.clone(), alpha.clone(), b.clone()).unwrap();
            for n in degrees(2, 4) {
                let ssi = semi_invariant_dim(&space, &n, DEFAULT_CAP).map_err(|e| e.to_string())?;
                ensure(ssi == 0, || format!("α={:?} b={:?} n={n}: ssi={ssi}", alpha.0, b.0))?;
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let q = kronecker();
    let space = RepSpace::unshifted(q.clone(), sdv(&[(2, 0), (2, 0)])).unwrap();
    let n = deg(&[1, 1]);
    let ssi = semi_invariant_dim(&space, &n, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure(ssi == 1, || format!("ssi={ssi}"))?;
    let span = generator_span_dim(&space, &n, 2, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure(span == 1, || format!("span={span}"))?;

    let path = |id: &str| Path::from_ids(&q, &[id]).unwrap();
    let spec = DetLikeSpec {
        sinks: vec![(1, 1)],
        sources: vec![(0, 1)],
        blocks: vec![DetBlock {
            sink: (0, 1),
            source: (0, 1),
            terms: vec![(Polynomial::one(), path("e1")), (Polynomial::one(), path("e2"))],
        }],
    };
    let d = detlike_semi_invariant(&space, &spec).map_err(|e| e.to_string())?;
    let mixed = d
        .components
        .iter()
        .find(|(m, _)| *m == n)
        .map(|(_, f)| f.clone())
        .ok_or("no mixed component")?;
    // x11 y22 + y11 x22 − x12 y21 − y12 x21 by hand
    let x = |e: usize, i: usize, j: usize| space.var(e, i, j);
    let expected = [
        (1, [x(0, 0, 0), x(1, 1, 1)]),
        (1, [x(1, 0, 0), x(0, 1, 1)]),
        (-1, [x(0, 0, 1), x(1, 1, 0)]),
        (-1, [x(1, 0, 1), x(0, 1, 0)]),
    ]
    .iter()
    .fold(Polynomial::zero(), |acc, (c, vs)| &acc + &Polynomial::product_of(rational(*c), vs));
    ensure(mixed == expected, || "mixed component differs from the hand expansion".into())?;

    let w = Weight(vec![-1, 1]);
    let v = check_weight(&space, &mixed, &w).map_err(|e| e.to_string())?;
    ensure(v.passed(), || v.render(&space))?;
    let alg = GrassmannAlgebra::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let point = GroupPoint::random(&space, &alg, &mut rng);
        let ok = group_point_test(&space, &mixed, &w, &point).map_err(|e| e.to_string())?;
        ensure(ok, || "group point test failed".into())?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let alg = GrassmannAlgebra::new(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in [SuperDim::new(1, 1), SuperDim::new(2, 1)] {
        for _ in 0..20 {
            let g = random_group_element(d, &alg, &mut rng);
            let h = random_group_element(d, &alg, &mut rng);
            let gh = g.mul(&h).map_err(|e| e.to_string())?;
            let lhs = gh.berezinian().map_err(|e| e.to_string())?;
            let rhs = &g.berezinian().map_err(|e| e.to_string())? * &h.berezinian().map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("Ber(gh) ≠ Ber(g)Ber(h) at {d}"))?;
        }
    }
    for d in [SuperDim::new(2, 0), SuperDim::new(0, 2), SuperDim::new(3, 0), SuperDim::new(0, 1)] {
        for _ in 0..5 {
            let g = random_group_element(d, &alg, &mut rng);
            let ber = g.berezinian().map_err(|e| e.to_string())?;
            let det = leibniz_det(g.entries());
            if d.odd == 0 {
                ensure(ber == det, || format!("Ber ≠ det at {d}"))?;
            } else {
                ensure((&ber * &det) == GrassmannElement::scalar(rational(1)), || format!("Ber ≠ det⁻¹ at {d}"))?;
            }
        }
    }
    Ok(())
}

/// Determinant by the permutation expansion; entries commute.
fn leibniz_det(m: &[Vec<GrassmannElement>]) -> GrassmannElement {
    let n = m.len();
    let mut total = GrassmannElement::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut prod = GrassmannElement::scalar(rational(1));
        for (i, &j) in p.iter().enumerate() {
            prod = &prod * &m[i][j];
        }
        total = if inversions % 2 == 0 { &total + &prod } else { &total - &prod };
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn random_alpha<R: Rng>(q: &Quiver, rng: &mut R) -> SuperDimVector {
    SuperDimVector(
        (0..q.num_vertices())
            .map(|_| SuperDim::new(rng.gen_range(0..=2), rng.gen_range(0..=2)))
            .collect(),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for q in [kronecker(), loop_quiver(), a3()] {
        for _ in 0..20 {
            let v = ConcreteSuperRep::random(&q, random_alpha(&q, &mut rng), &mut rng).unwrap();
            let w = ConcreteSuperRep::random(&q, random_alpha(&q, &mut rng), &mut rng).unwrap();
            let (hom, ext) = hom_ext_dims(&q, &v, &w).map_err(|e| e.to_string())?;
            let form = ringel_form(&q, &v.alpha, &w.alpha).map_err(|e| e.to_string())?;
            ensure(hom as i64 - ext as i64 == form, || "hom − ext ≠ form".into())?;
            let (hom2, euler) = hom_dim_doubled(&q, &v, &w).map_err(|e| e.to_string())?;
            ensure(hom2 == hom, || format!("{q}: hom {hom} vs doubled {hom2}"))?;
            ensure(euler == form, || format!("{q}: euler {euler} vs form {form}"))?;
            ensure(hom_dim(&q, &v, &w).unwrap() == hom, || "unstable hom".into())?;
        }
    }
    Ok(())
}

fn random_homogeneous<R: Rng>(space: &RepSpace, rng: &mut R, max_total: u32) -> (MultiDegree, Polynomial) {
    loop {
        let total = rng.gen_range(1..=max_total);
        let mut n = vec![0u32; space.num_edges()];
        for _ in 0..total {
            let i = rng.gen_range(0..n.len());
            n[i] += 1;
        }
        let n = MultiDegree(n);
        let basis = component_basis(space, &n).unwrap();
        if basis.is_empty() {
            continue;
        }
        let mut f = Polynomial::zero();
        for m in &basis.monomials {
            if rng.gen_bool(0.4) {
                f = &f + &Polynomial::term(m.clone(), rational(rng.gen_range(-3..=3)));
            }
        }
        if !f.is_zero() {
            return (n, f);
        }
    }
}

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * rational(k as i64))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spaces = [
        RepSpace::unshifted(loop_quiver(), sdv(&[(1, 1)])).unwrap(),
        RepSpace::unshifted(kronecker(), sdv(&[(1, 1), (1, 0)])).unwrap(),
    ];
    for space in &spaces {
        for _ in 0..10 {
            let (n, f) = random_homogeneous(space, &mut rng, 3);
            let t: Vec<usize> = (0..space.num_edges()).filter(|_| rng.gen_bool(0.7)).collect();
            let (ok, factor) = linearize_and_restitute_check(space, &f, &t).map_err(|e| e.to_string())?;
            let expected = t.iter().fold(Rational::one(), |acc, &e| acc * factorial(n.0[e]));
            ensure(ok, || format!("identity fails for n={n}, T={t:?}"))?;
            ensure(factor == expected, || format!("factor {factor} ≠ {expected}"))?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let q = two_cycle();
    let alpha = sdv(&[(0, 2), (1, 1)]);
    let b = ParityVector::zero(&q);
    let norm = normalize_at(&q, &alpha, &b, 0).map_err(|e| e.to_string())?;
    let big = RepSpace::new(norm.quiver.clone(), norm.alpha.clone(), norm.parity.clone()).unwrap();
    let small = RepSpace::new(q.clone(), alpha, b).unwrap();
    let det = big
        .generic_matrix(norm.new_edge)
        .and_then(|m| m.determinant())
        .map_err(|e| e.to_string())?;
    let reduced = reduce_normalized(&norm, &det).map_err(|e| e.to_string())?;
    ensure(reduced == Polynomial::one(), || "det X(e(a)) does not reduce to 1".into())?;
    let paths = enumerate_closed_paths(&norm.quiver, 6);
    ensure(!paths.is_empty(), || "no closed paths".into())?;
    for p in paths {
        let f = strace_invariant(&big, &p).map_err(|e| e.to_string())?;
        let g = reduce_normalized(&norm, &f).map_err(|e| e.to_string())?;
        ensure(is_sl_invariant(&small, &g), || format!("{} does not reduce to a semi-invariant", p.display(&norm.quiver)))?;
    }
    Ok(())
}

/// Random polynomial of one parity in the variables of `space`.
fn random_poly<R: Rng>(vars: &[Var], rng: &mut R, parity: Parity) -> Polynomial {
    let mut f = Polynomial::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(0..=3);
        let picked: Vec<Var> = (0..k).map(|_| vars[rng.gen_range(0..vars.len())]).collect();
        let m = Polynomial::product_of(rational(rng.gen_range(-3..=3)), &picked);
        if m.parity() == Some(parity) {
            f = &f + &m;
        }
    }
    f
}

fn random_parity<R: Rng>(rng: &mut R) -> Parity {
    if rng.gen_bool(0.5) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn criterion_9() -> Outcome {
    let space = RepSpace::unshifted(two_cycle(), sdv(&[(1, 1), (2, 1)])).unwrap();
    let vars = space.vars();
    let gens: Vec<Derivation> = gl_basis(&space).into_iter().map(|e| Derivation::new(&space, e)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sign = |p: Parity, q: Parity| if p.is_odd() && q.is_odd() { -Rational::one() } else { Rational::one() };
    for _ in 0..1000 {
        let (pf, pg) = (random_parity(&mut rng), random_parity(&mut rng));
        let (f, g) = (random_poly(&vars, &mut rng, pf), random_poly(&vars, &mut rng, pg));
        ensure(&f * &g == (&g * &f).scale(&sign(pf, pg)), || "supercommutativity".into())?;
    }
    for _ in 0..1000 {
        let ps: Vec<Parity> = (0..3).map(|_| random_parity(&mut rng)).collect();
        let [f, g, h] = [0, 1, 2].map(|i| random_poly(&vars, &mut rng, ps[i]));
        ensure(&(&f * &g) * &h == &f * &(&g * &h), || "associativity".into())?;
        ensure(&f * &(&g + &h) == &(&f * &g) + &(&f * &h), || "distributivity".into())?;
    }
    for _ in 0..1000 {
        let d = &gens[rng.gen_range(0..gens.len())];
        let (pf, pg) = (random_parity(&mut rng), random_parity(&mut rng));
        let (f, g) = (random_poly(&vars, &mut rng, pf), random_poly(&vars, &mut rng, pg));
        let lhs = d.apply(&(&f * &g));
        let rhs = &(&d.apply(&f) * &g) + &(&f * &d.apply(&g)).scale(&sign(d.parity, pf));
        ensure(lhs == rhs, || "Leibniz rule".into())?;
    }
    for _ in 0..1000 {
        let (pf, pg) = (random_parity(&mut rng), random_parity(&mut rng));
        let (f, g) = (random_poly(&vars, &mut rng, pf), random_poly(&vars, &mut rng, pg));
        let fg = &f * &g;
        if fg.is_zero() {
            continue;
        }
        ensure(fg.parity() == Some(pf + pg), || "parity grading".into())?;
        let mut by_degree: BTreeMap<MultiDegree, Polynomial> = BTreeMap::new();
        for (m, c) in fg.terms() {
            let piece = Polynomial::term(m.clone(), c.clone());
            let slot = by_degree.entry(m.multidegree(space.num_edges())).or_default();
            *slot = &*slot + &piece;
        }
        ensure(by_degree == fg.components(space.num_edges()), || "multigrading".into())?;
        for (m, _) in fg.terms() {
            let odd: Vec<&(Var, u32)> = m.factors().iter().filter(|(v, _)| v.is_odd()).collect();
            ensure(odd.iter().all(|(_, k)| *k == 1), || "odd square survived".into())?;
        }
    }
    for v in vars.iter().filter(|v| v.is_odd()) {
        let x = Polynomial::var(*v);
        ensure((&x * &x).is_zero(), || "odd variable squares to zero".into())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 sign conventions: gl(α) annihilates str(Π^b X(p))", criterion_1),
        ("2 generator completeness on loop and 2-cycle", criterion_2),
        ("3 acyclic without extremal vertices: SSI = K", criterion_3),
        ("4 classical Kronecker determinant", criterion_4),
        ("5 Berezinian multiplicativity and degenerations", criterion_5),
        ("6 Hom/Ext identity and doubled-quiver count", criterion_6),
        ("7 polarization and restitution", criterion_7),
        ("8 reduction after normalizing", criterion_8),
        ("9 ring axioms", criterion_9),
    ];
    let mut failed = false;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({secs:.1}s)"),
            Err(why) => {
                failed = true;
                println!("FAIL criterion {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
