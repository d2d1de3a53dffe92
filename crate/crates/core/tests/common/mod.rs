//! Property checks shared by the integration tests and the acceptance run.
//! Each returns `Err` describing the first counterexample.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pnverify_core::pairgroupoid::{
    check_all_axioms, check_bivector_multiplicative, check_endo_multiplicative, first_failure, Convention,
    PairGroupoid,
};
use pnverify_core::report::CheckReport;
use pnverify_core::symexpr::{parse_expr, rat, ChartSpace, Poly, Rational};
use pnverify_core::tensorcalc::{
    d_function, endo_dual, form_bracket, jacobiator, lie_bracket, magri_morosi, pn_manifold_check,
    poisson_bracket, schouten_square, sharp, torsion_on, Bivector, EndoField, OneForm, VectorField,
};
use pnverify_core::verifier::{
    correspondence_corpus, numeric_oracle, oracle_cases, random_bivector, random_endo, random_oneform,
    random_poly, random_rational, random_vector, run_correspondence, run_groupoid_suite, so3_bivector,
    PolyShape, MATCHED_ITEMS, ORACLE_FAMILIES, ORACLE_TOLERANCE,
};

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r3() -> Arc<ChartSpace> {
    ChartSpace::numbered("x", 3).unwrap()
}

pub fn small() -> PolyShape {
    PolyShape { max_degree: 2, max_terms: 3 }
}

pub fn linear() -> PolyShape {
    PolyShape { max_degree: 1, max_terms: 2 }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zero3() -> [Rational; 3] {
    [rat(0, 1), rat(0, 1), rat(0, 1)]
}

pub fn so3() -> Bivector {
    so3_bivector(&r3(), &rat(1, 1), zero3())
}

/// Constant plus linear Poisson bivectors: translated and scaled so(3).
pub fn random_affine_poisson<R: Rng>(rng: &mut R) -> Bivector {
    let mut c = random_rational(rng);
    if c.is_zero() {
        c = rat(1, 1);
    }
    so3_bivector(&r3(), &c, [random_rational(rng), random_rational(rng), random_rational(rng)])
}

// ---------------------------------------------------------------------------
// Polynomial identities

pub fn ring_axioms(seed: u64, count: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    for _ in 0..count {
        let (a, b, c) = (random_poly(&mut g, &s, small()), random_poly(&mut g, &s, small()), random_poly(&mut g, &s, small()));
        ensure(&(&a + &b) + &c == &a + &(&b + &c), || format!("additive associativity: {a}, {b}, {c}"))?;
        ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("multiplicative associativity: {a}, {b}, {c}"))?;
        ensure(&a + &b == &b + &a && &a * &b == &b * &a, || format!("commutativity: {a}, {b}"))?;
        ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("distributivity: {a}, {b}, {c}"))?;
        let copy = a.clone();
        let d = &a - &copy;
        ensure(d.is_zero() && d.num_terms() == 0, || format!("cancellation: {a}"))?;
    }
    Ok(())
}

pub fn leibniz(seed: u64, count: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    for _ in 0..count {
        let (p, q) = (random_poly(&mut g, &s, small()), random_poly(&mut g, &s, small()));
        let i = g.random_range(0..3);
        let lhs = (&p * &q).partial(i).unwrap();
        let rhs = &(&p * &q.partial(i).unwrap()) + &(&q * &p.partial(i).unwrap());
        ensure(lhs == rhs, || format!("Leibniz fails for {p}, {q} in direction {i}"))?;
    }
    Ok(())
}

pub fn clairaut(seed: u64, count: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    for _ in 0..count {
        let p = random_poly(&mut g, &s, PolyShape { max_degree: 4, max_terms: 5 });
        for i in 0..3 {
            for j in 0..3 {
                let a = p.partial(i).unwrap().partial(j).unwrap();
                let b = p.partial(j).unwrap().partial(i).unwrap();
                ensure(a == b, || format!("mixed partials differ for {p} ({i},{j})"))?;
            }
        }
    }
    Ok(())
}

/// Random expression tree, rendered to text and evaluated directly.
#[derive(Debug, Clone)]
pub enum Expr {
    Num(i64, i64),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn random<R: Rng>(rng: &mut R, dim: usize, depth: u32) -> Expr {
        if depth == 0 || rng.random_range(0..4) == 0 {
            return if rng.random_bool(0.5) {
                Expr::Var(rng.random_range(0..dim))
            } else {
                Expr::Num(rng.random_range(0..=9), rng.random_range(1..=4))
            };
        }
        let op = rng.random_range(0..5);
        let mut sub = || Box::new(Expr::random(rng, dim, depth - 1));
        match op {
            0 => Expr::Add(sub(), sub()),
            1 => Expr::Sub(sub(), sub()),
            2 => Expr::Mul(sub(), sub()),
            3 => {
                let e = sub();
                let k = rng.random_range(0..=3);
                Expr::Pow(e, k)
            }
            _ => Expr::Neg(sub()),
        }
    }

    /// Fully parenthesized text in the expression grammar.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            Expr::Num(a, 1) => format!("{a}"),
            Expr::Num(a, b) => format!("{a}/{b}"),
            Expr::Var(i) => names[*i].clone(),
            Expr::Add(a, b) => format!("({} + {})", a.render(names), b.render(names)),
            Expr::Sub(a, b) => format!("({} - {})", a.render(names), b.render(names)),
            Expr::Mul(a, b) => format!("({} * {})", a.render(names), b.render(names)),
            Expr::Pow(a, k) => format!("({})^{k}", a.render(names)),
            Expr::Neg(a) => format!("(-{})", a.render(names)),
        }
    }

    pub fn eval(&self, pt: &[Rational]) -> Rational {
        match self {
            Expr::Num(a, b) => rat(*a, *b),
            Expr::Var(i) => pt[*i].clone(),
            Expr::Add(a, b) => a.eval(pt) + b.eval(pt),
            Expr::Sub(a, b) => a.eval(pt) - b.eval(pt),
            Expr::Mul(a, b) => a.eval(pt) * b.eval(pt),
            Expr::Pow(a, k) => {
                let v = a.eval(pt);
                (0..*k).fold(Rational::one(), |acc, _| acc * &v)
            }
            Expr::Neg(a) => -a.eval(pt),
        }
    }
}

pub fn parse_eval_agreement(seed: u64, count: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    for _ in 0..count {
        let e = Expr::random(&mut g, 3, 4);
        let text = e.render(s.names());
        let p = parse_expr(&text, &s).map_err(|err| format!("{text}: {err}"))?;
        let pt: Vec<Rational> = (0..3).map(|_| random_rational(&mut g)).collect();
        ensure(p.eval(&pt).unwrap() == e.eval(&pt), || format!("evaluation mismatch for {text}"))?;
        let printed = p.to_string();
        let again = parse_expr(&printed, &s).map_err(|err| format!("reparse {printed}: {err}"))?;
        ensure(again == p && again.to_string() == printed, || format!("print/parse not a fixed point: {printed}"))?;
    }
    Ok(())
}

pub fn partial_matches_finite_difference(seed: u64, count: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    let h = 1e-4;
    for _ in 0..count {
        let p = random_poly(&mut g, &s, PolyShape { max_degree: 4, max_terms: 5 });
        let i = g.random_range(0..3);
        let pt: Vec<Rational> = (0..3).map(|_| rat(g.random_range(-64..=64), 64)).collect();
        let x: Vec<f64> = pt.iter().map(|r| num_traits::ToPrimitive::to_f64(r).unwrap()).collect();
        let exact = num_traits::ToPrimitive::to_f64(&p.partial(i).unwrap().eval(&pt).unwrap()).unwrap();
        let (mut xp, mut xm) = (x.clone(), x.clone());
        xp[i] += h;
        xm[i] -= h;
        let approx = (p.eval_f64(&xp).unwrap() - p.eval_f64(&xm).unwrap()) / (2.0 * h);
        let dev = (exact - approx).abs() / exact.abs().max(1.0);
        ensure(dev < 1e-6, || format!("finite difference off by {dev} for {p}"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Tensor identities

pub fn lie_bracket_antisymmetry_and_jacobi(seed: u64, count: usize, triples: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    for _ in 0..count {
        let (x, y) = (random_vector(&mut g, &s, small()), random_vector(&mut g, &s, small()));
        let a = lie_bracket(&x, &y).unwrap();
        let b = lie_bracket(&y, &x).unwrap();
        ensure(a.add(&b).is_zero(), || "[X,Y] != -[Y,X]".into())?;
    }
    for _ in 0..triples {
        let (x, y, z) = (
            random_vector(&mut g, &s, linear()),
            random_vector(&mut g, &s, small()),
            random_vector(&mut g, &s, small()),
        );
        let j = lie_bracket(&x, &lie_bracket(&y, &z).unwrap())
            .unwrap()
            .add(&lie_bracket(&y, &lie_bracket(&z, &x).unwrap()).unwrap())
            .add(&lie_bracket(&z, &lie_bracket(&x, &y).unwrap()).unwrap());
        ensure(j.is_zero(), || "Jacobi identity fails for vector fields".into())?;
    }
    Ok(())
}

/// Random `(P, N)` with `N∘P♯` skew: `N` a polynomial multiple of the identity
/// plus a constant multiple of the identity.
fn compatible_pair<R: Rng>(g: &mut R, s: &Arc<ChartSpace>) -> (Bivector, EndoField) {
    let p = random_bivector(g, s, small());
    let f = &random_poly(g, s, linear()) + &Poly::constant(s, random_rational(g));
    (p, EndoField::scalar(s, &f))
}

pub fn bracket_antisymmetry(seed: u64, count: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    for _ in 0..count {
        let p = random_bivector(&mut g, &s, small());
        let (a, b) = (random_oneform(&mut g, &s, small()), random_oneform(&mut g, &s, small()));
        let ab = form_bracket(&p, &a, &b).unwrap();
        let ba = form_bracket(&p, &b, &a).unwrap();
        ensure(ab.add(&ba).is_zero(), || "form bracket not antisymmetric".into())?;

        let (p, n) = compatible_pair(&mut g, &s);
        let (a, b) = (random_oneform(&mut g, &s, linear()), random_oneform(&mut g, &s, linear()));
        let ab = magri_morosi(&p, &n, &a, &b).unwrap();
        let ba = magri_morosi(&p, &n, &b, &a).unwrap();
        ensure(ab.add(&ba).is_zero(), || "concomitant not antisymmetric".into())?;
    }
    Ok(())
}

pub fn torsion_tensoriality(seed: u64, count: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    for _ in 0..count {
        let n = random_endo(&mut g, &s, linear());
        let (x, y) = (random_vector(&mut g, &s, linear()), random_vector(&mut g, &s, linear()));
        let f = random_poly(&mut g, &s, small());
        let lhs = torsion_on(&n, &x.scale(&f), &y).unwrap();
        let rhs = torsion_on(&n, &x, &y).unwrap().scale(&f);
        ensure(lhs == rhs, || format!("torsion not function-linear for f = {f}"))?;
    }
    Ok(())
}

pub fn concomitant_function_linearity(seed: u64, count: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    for _ in 0..count {
        let (p, n) = compatible_pair(&mut g, &s);
        let (a, b) = (random_oneform(&mut g, &s, linear()), random_oneform(&mut g, &s, linear()));
        let f = random_poly(&mut g, &s, linear());
        let lhs = magri_morosi(&p, &n, &a.scale(&f), &b).unwrap();
        let rhs = magri_morosi(&p, &n, &a, &b).unwrap().scale(&f);
        ensure(lhs == rhs, || format!("concomitant not function-linear for f = {f}"))?;
    }
    Ok(())
}

pub fn form_bracket_of_differentials(seed: u64, random_structures: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    let mut structures = vec![so3()];
    structures.extend((0..random_structures).map(|_| random_affine_poisson(&mut g)));
    for p in &structures {
        ensure(schouten_square(p).is_zero(), || "corpus bivector is not Poisson".into())?;
        for _ in 0..3 {
            let (f, h) = (random_poly(&mut g, &s, small()), random_poly(&mut g, &s, small()));
            let lhs = form_bracket(p, &d_function(&f).unwrap(), &d_function(&h).unwrap()).unwrap();
            let rhs = d_function(&poisson_bracket(p, &f, &h).unwrap()).unwrap();
            ensure(lhs == rhs, || format!("[df,dg] != d{{f,g}} for f = {f}, g = {h}"))?;
        }
    }
    Ok(())
}

pub fn pairing_identities(seed: u64, count: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    for _ in 0..count {
        let n = random_endo(&mut g, &s, small());
        let a = random_oneform(&mut g, &s, small());
        let x = random_vector(&mut g, &s, small());
        ensure(endo_dual(&n, &a).unwrap().pair(&x) == a.pair(&n.apply(&x).unwrap()), || "<N*a,X> != <a,NX>".into())?;

        let p = random_bivector(&mut g, &s, small());
        let b = random_oneform(&mut g, &s, small());
        let ab = a.pair(&sharp(&p, &b).unwrap());
        let ba = b.pair(&sharp(&p, &a).unwrap());
        ensure(ab == -ba, || "<a,P#b> != -<b,P#a>".into())?;

        let (f, h) = (random_poly(&mut g, &s, small()), random_poly(&mut g, &s, small()));
        ensure(
            d_function(&(&f + &h)).unwrap() == d_function(&f).unwrap().add(&d_function(&h).unwrap()),
            || "d not additive".into(),
        )?;
    }
    Ok(())
}

/// Criterion 1: every exact identity.
pub fn exact_identity_suite(seed: u64) -> Vec<(&'static str, Check)> {
    vec![
        ("ring axioms", ring_axioms(seed, 100)),
        ("leibniz", leibniz(seed + 1, 100)),
        ("clairaut", clairaut(seed + 2, 50)),
        ("parse/eval", parse_eval_agreement(seed + 3, 100)),
        ("finite differences", partial_matches_finite_difference(seed + 4, 100)),
        ("lie bracket", lie_bracket_antisymmetry_and_jacobi(seed + 5, 50, 25)),
        ("bracket antisymmetry", bracket_antisymmetry(seed + 6, 50)),
        ("torsion tensoriality", torsion_tensoriality(seed + 7, 25)),
        ("concomitant linearity", concomitant_function_linearity(seed + 8, 25)),
        ("form bracket derivation", form_bracket_of_differentials(seed + 9, 10)),
        ("pairings", pairing_identities(seed + 10, 50)),
    ]
}

// ---------------------------------------------------------------------------
// Criterion 2

pub fn schouten_jacobiator_crosscheck(seed: u64, count: usize) -> Check {
    let mut g = rng(seed);
    let s = r3();
    let x = Poly::vars(&s);
    for _ in 0..count {
        let p = random_bivector(&mut g, &s, small());
        let t = schouten_square(&p);
        let two = Poly::from_int(&s, 2);
        let coord = &two * &jacobiator(&p, &x[0], &x[1], &x[2]).unwrap();
        ensure(t.get(0, 1, 2) == coord, || "[P,P]^123 != 2 Jac(x1,x2,x3)".into())?;
        let (f, h, k) = (random_poly(&mut g, &s, linear()), random_poly(&mut g, &s, small()), random_poly(&mut g, &s, small()));
        let lhs = t.contract(&d_function(&f).unwrap(), &d_function(&h).unwrap(), &d_function(&k).unwrap());
        let rhs = &two * &jacobiator(&p, &f, &h, &k).unwrap();
        ensure(lhs == rhs, || format!("[P,P](df,dg,dh) != 2 Jac for f={f}, g={h}, h={k}"))?;
    }
    ensure(schouten_square(&so3()).is_zero(), || "so(3) has nonzero Schouten square".into())?;
    let pert = pnverify_core::verifier::perturbed_bivector(&s, &rat(1, 1), &rat(1, 1));
    let r = pn_manifold_check(&pert, &EndoField::identity(&s)).unwrap();
    let w = r.get("poisson").and_then(|e| e.witness.clone()).ok_or("perturbed structure passes")?;
    ensure(w.label == "jac(x1,x2,x3)" && w.expr == "1", || format!("unexpected witness {w}"))
}

// ---------------------------------------------------------------------------
// Criterion 3

/// Worst deviation per family over `per_family` instances, `trials` points each.
pub fn oracle_deviations(seed: u64, per_family: usize, trials: usize) -> Vec<(&'static str, f64)> {
    let mut g = rng(seed);
    let cases = oracle_cases(&mut g, per_family);
    ORACLE_FAMILIES
        .iter()
        .map(|&fam| {
            let worst = cases
                .iter()
                .filter(|c| c.family() == fam)
                .enumerate()
                .map(|(k, c)| numeric_oracle(c, trials, seed + k as u64).unwrap())
                .fold(0.0, f64::max);
            (fam, worst)
        })
        .collect()
}

pub fn oracle_agreement(seed: u64) -> Check {
    let a = oracle_deviations(seed, 1, 100);
    for (fam, d) in &a {
        ensure(*d < ORACLE_TOLERANCE, || format!("{fam}: relative deviation {d:e}"))?;
    }
    let b = oracle_deviations(seed, 1, 100);
    ensure(
        a.iter().zip(&b).all(|((_, x), (_, y))| x.to_bits() == y.to_bits()),
        || "oracle not deterministic".into(),
    )
}

// ---------------------------------------------------------------------------
// Criterion 4

pub fn groupoid_axioms(dims: &[usize]) -> Check {
    for &n in dims {
        let r = check_all_axioms(&ChartSpace::numbered("x", n).unwrap());
        ensure(r.entries().len() == 12 && r.all_pass(), || format!("dim {n}:\n{}", r.to_text()))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Criterion 5

pub fn correspondence_on_corpus(seed: u64, conv: Convention) -> Check {
    let corpus = correspondence_corpus(&mut rng(seed));
    let mut failing_items = 0;
    for (k, d) in corpus.iter().enumerate() {
        let r = run_correspondence(d, conv);
        for item in MATCHED_ITEMS {
            let e = r.get(&format!("match.{item}")).unwrap();
            ensure(e.passed(), || format!("instance {k}: {item} verdicts differ\n{}", r.to_text()))?;
            failing_items += usize::from(!r.get(&format!("algebroid.{item}")).unwrap().passed());
        }
        for id in ["roundtrip.bivector", "roundtrip.endo", "extension.bracket"] {
            ensure(r.get(id).unwrap().passed(), || format!("instance {k}: {id} fails\n{}", r.to_text()))?;
        }
        let torsion_free = r.get("algebroid.nijenhuis").unwrap().passed();
        let endo_mult = r.get("groupoid.endo_multiplicative").unwrap().passed();
        ensure(!torsion_free || endo_mult, || format!("instance {k}: endo not multiplicative"))?;
    }
    ensure(failing_items > 0, || "corpus has no failing items".into())
}

// ---------------------------------------------------------------------------
// Criterion 6

pub fn classical_structure(l: &Bivector) -> (PairGroupoid, Bivector) {
    let g = PairGroupoid::new(l.space());
    let right = g.extend_bivector(l, Convention::Right);
    let left = g.extend_bivector(l, Convention::Left);
    let p = right.add(&left.scale(&Poly::from_int(g.total(), -1)));
    (g, p)
}

pub fn known_multiplicative_structure() -> Check {
    let (g, p) = classical_structure(&so3());
    let r = check_bivector_multiplicative(&g, &p).map_err(|e| e.to_string())?;
    ensure(r.all_pass(), || format!("classical so(3) structure:\n{}", r.to_text()))?;

    let base = ChartSpace::numbered("x", 2).unwrap();
    let g = PairGroupoid::new(&base);
    let l = Bivector::from_upper(&base, [(0, 1, Poly::one(&base))]).unwrap();
    let p = g.extend_bivector(&l, Convention::Right);
    let m = first_failure("bivector_multiplicative", &check_bivector_multiplicative(&g, &p).map_err(|e| e.to_string())?);
    let w = m.witness.clone().ok_or("right extension passes")?;
    ensure(w.expr == "-c1_x2" && w.label.starts_with("(b)"), || format!("unexpected witness {w}"))?;

    let id = EndoField::identity(&base);
    let suite = run_groupoid_suite(&g, &p, &EndoField::identity(g.total()), &id, Convention::Right)
        .map_err(|e| e.to_string())?;
    let entry = suite.get("bivector_multiplicative").unwrap();
    ensure(
        !entry.passed() && entry.note.as_deref().is_some_and(|n| n.contains("right-invariant")),
        || format!("groupoid suite lacks the invariance note:\n{}", suite.to_text()),
    )?;
    let corr = run_correspondence(
        &pnverify_core::verifier::AlgebroidData::new(l, id).unwrap(),
        Convention::Right,
    );
    let entry = corr.get("groupoid.bivector_multiplicative").unwrap();
    ensure(entry.informational && entry.note.is_some() && corr.all_pass(), || corr.to_text())
}

// ---------------------------------------------------------------------------
// Criterion 7

pub fn samples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("samples")
}

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn pnverify(args: &[&str]) -> CliRun {
    let out = Command::new(env!("CARGO_BIN_EXE_pnverify")).args(args).output().expect("binary runs");
    CliRun {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn sample(name: &str) -> String {
    samples_dir().join(name).to_string_lossy().into_owned()
}

/// Valid shipped input files.
pub fn valid_samples() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(samples_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "pnv") && !p.ends_with("malformed.pnv"))
        .collect();
    v.sort();
    v
}

pub fn formatter_idempotent(path: &std::path::Path) -> Check {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let once = pnverify_core::cli::parse_specfile(&text).map_err(|e| format!("{}: {e}", path.display()))?.to_string();
    let twice = pnverify_core::cli::parse_specfile(&once).map_err(|e| format!("{}: {e}", path.display()))?.to_string();
    ensure(once == twice, || format!("{} not idempotent", path.display()))
}

pub fn cli_behaviour() -> Check {
    let ok = pnverify(&["verify", &sample("so3.pnv")]);
    ensure(ok.code == 0, || format!("so3 exit {}:\n{}", ok.code, ok.stdout))?;

    let bad = pnverify(&["verify", &sample("nonpoisson.pnv")]);
    ensure(bad.code == 1, || format!("non-Poisson exit {}", bad.code))?;
    let line = bad
        .stdout
        .lines()
        .find(|l| l.trim_start().starts_with("witness: jac("))
        .ok_or("no Jacobiator witness in report")?;
    let expr = line.split_once(" = ").ok_or("witness without '='")?.1;
    let reparsed = parse_expr(expr, &r3()).map_err(|e| format!("witness '{expr}' does not reparse: {e}"))?;
    ensure(reparsed == Poly::one(&r3()), || format!("witness {expr} != 1"))?;

    let mal = pnverify(&["verify", &sample("malformed.pnv")]);
    ensure(mal.code == 2 && mal.stdout.is_empty(), || format!("malformed exit {} body {:?}", mal.code, mal.stdout))?;

    for p in valid_samples() {
        formatter_idempotent(&p)?;
    }
    Ok(())
}

pub fn all_pass(r: &CheckReport) -> bool {
    r.all_pass()
}

pub fn endo_of_extension_is_multiplicative(n: &EndoField) -> bool {
    let g = PairGroupoid::new(n.space());
    check_endo_multiplicative(&g, &g.extend_endo(n, Convention::Right), n).unwrap().all_pass()
}

pub fn one_forms_on(s: &Arc<ChartSpace>) -> Vec<OneForm> {
    (0..s.dim()).map(|i| OneForm::coordinate(s, i)).collect()
}

pub fn coordinate_fields(s: &Arc<ChartSpace>) -> Vec<VectorField> {
    (0..s.dim()).map(|i| VectorField::coordinate(s, i)).collect()
}
