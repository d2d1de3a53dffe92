//! Floating-point re-evaluation of the exact operations. Every derivative is
//! replaced by a central difference, and the results are compared with the
//! exact values at random rational points.

use std::rc::Rc;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive};
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{CheckEntry, CheckReport, Verdict, Witness};
use crate::symexpr::{rat, ChartSpace, Poly, Rational};
use crate::tensorcalc::{
    d_function, deformed_bracket, endo_dual, form_bracket, jacobiator, lie_bracket, lie_derivative_oneform,
    magri_morosi, nijenhuis_torsion, schouten_square, sharp, Bivector, EndoField, OneForm, TensorError,
    VectorField,
};

use super::corpus::{random_bivector, random_endo, random_oneform, random_poly, random_vector, PolyShape};

/// Central-difference step.
pub const FD_STEP: f64 = 1e-4;
/// Maximum accepted relative deviation.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

pub const ORACLE_FAMILIES: [&str; 12] = [
    "partial",
    "lie_bracket",
    "schouten",
    "jacobiator",
    "sharp",
    "endo_dual",
    "torsion",
    "deformed_bracket",
    "d",
    "lie_derivative",
    "form_bracket",
    "magri_morosi",
];

/// One instance of an operation, with its inputs.
#[derive(Debug, Clone)]
pub enum OracleCase {
    Partial(Poly, usize),
    LieBracket(VectorField, VectorField),
    Schouten(Bivector),
    Jacobiator(Bivector, Poly, Poly, Poly),
    Sharp(Bivector, OneForm),
    EndoDual(EndoField, OneForm),
    Torsion(EndoField),
    DeformedBracket(EndoField, VectorField, VectorField),
    D(Poly),
    LieDerivative(VectorField, OneForm),
    FormBracket(Bivector, OneForm, OneForm),
    MagriMorosi(Bivector, EndoField, OneForm, OneForm),
}

type F = Rc<dyn Fn(&[f64]) -> f64>;

fn poly_fn(p: &Poly) -> F {
    let p = p.clone();
    Rc::new(move |x| p.eval_f64(x).expect("point matches chart"))
}

fn fd(f: &F, i: usize) -> F {
    let f = Rc::clone(f);
    Rc::new(move |x| {
        let mut plus = x.to_vec();
        let mut minus = x.to_vec();
        plus[i] += FD_STEP;
        minus[i] -= FD_STEP;
        (f(&plus) - f(&minus)) / (2.0 * FD_STEP)
    })
}

fn mul(a: &F, b: &F) -> F {
    let (a, b) = (Rc::clone(a), Rc::clone(b));
    Rc::new(move |x| a(x) * b(x))
}

fn lin(terms: Vec<(f64, F)>) -> F {
    Rc::new(move |x| terms.iter().map(|(c, f)| c * f(x)).sum())
}

fn sum(fs: Vec<F>) -> F {
    lin(fs.into_iter().map(|f| (1.0, f)).collect())
}

fn diff(a: &F, b: &F) -> F {
    lin(vec![(1.0, Rc::clone(a)), (-1.0, Rc::clone(b))])
}

type Vector = Vec<F>;
type Matrix = Vec<Vec<F>>;

fn vec_of(ps: &[Poly]) -> Vector {
    ps.iter().map(poly_fn).collect()
}

fn bivector_matrix(p: &Bivector) -> Matrix {
    let n = p.space().dim();
    (0..n).map(|i| (0..n).map(|j| poly_fn(&p.get(i, j))).collect()).collect()
}

fn endo_matrix(nt: &EndoField) -> Matrix {
    nt.rows().iter().map(|r| vec_of(r)).collect()
}

fn vdiff(a: &Vector, b: &Vector) -> Vector {
    a.iter().zip(b).map(|(x, y)| diff(x, y)).collect()
}

fn directional(x: &Vector, f: &F) -> F {
    sum((0..x.len()).map(|j| mul(&x[j], &fd(f, j))).collect())
}

fn bracket(x: &Vector, y: &Vector) -> Vector {
    (0..x.len()).map(|i| diff(&directional(x, &y[i]), &directional(y, &x[i]))).collect()
}

fn apply(m: &Matrix, x: &Vector) -> Vector {
    m.iter().map(|row| sum(row.iter().zip(x).map(|(e, c)| mul(e, c)).collect())).collect()
}

fn dual(m: &Matrix, a: &Vector) -> Vector {
    (0..a.len()).map(|j| sum((0..a.len()).map(|i| mul(&m[i][j], &a[i])).collect())).collect()
}

fn sharp_f(p: &Matrix, a: &Vector) -> Vector {
    (0..a.len()).map(|i| sum((0..a.len()).map(|j| mul(&p[j][i], &a[j])).collect())).collect()
}

fn pair_f(p: &Matrix, a: &Vector, b: &Vector) -> F {
    let n = a.len();
    sum((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| mul(&p[i][j], &mul(&a[i], &b[j]))).collect())
}

fn grad(f: &F, n: usize) -> Vector {
    (0..n).map(|i| fd(f, i)).collect()
}

fn poisson_f(p: &Matrix, f: &F, g: &F) -> F {
    let n = p.len();
    pair_f(p, &grad(f, n), &grad(g, n))
}

fn jacobiator_f(p: &Matrix, f: &F, g: &F, h: &F) -> F {
    sum(vec![
        poisson_f(p, f, &poisson_f(p, g, h)),
        poisson_f(p, g, &poisson_f(p, h, f)),
        poisson_f(p, h, &poisson_f(p, f, g)),
    ])
}

fn deformed_f(m: &Matrix, x: &Vector, y: &Vector) -> Vector {
    let a = bracket(&apply(m, x), y);
    let b = bracket(x, &apply(m, y));
    let c = apply(m, &bracket(x, y));
    (0..x.len()).map(|i| sum(vec![Rc::clone(&a[i]), Rc::clone(&b[i]), lin(vec![(-1.0, Rc::clone(&c[i]))])])).collect()
}

fn lie_derivative_f(x: &Vector, b: &Vector) -> Vector {
    let n = x.len();
    (0..n)
        .map(|i| {
            let mut terms: Vec<F> = (0..n).map(|j| mul(&x[j], &fd(&b[i], j))).collect();
            terms.extend((0..n).map(|j| mul(&b[j], &fd(&x[j], i))));
            sum(terms)
        })
        .collect()
}

fn form_bracket_f(p: &Matrix, a: &Vector, b: &Vector) -> Vector {
    let l1 = lie_derivative_f(&sharp_f(p, a), b);
    let l2 = lie_derivative_f(&sharp_f(p, b), a);
    let d = grad(&pair_f(p, a, b), a.len());
    (0..a.len()).map(|i| diff(&diff(&l1[i], &l2[i]), &d[i])).collect()
}

fn magri_morosi_f(p: &Matrix, m: &Matrix, a: &Vector, b: &Vector) -> Vector {
    let n = a.len();
    let np: Matrix = (0..n)
        .map(|i| (0..n).map(|j| sum((0..n).map(|k| mul(&m[i][k], &p[k][j])).collect())).collect())
        .collect();
    let first = form_bracket_f(&np, a, b);
    let t1 = form_bracket_f(p, &dual(m, a), b);
    let t2 = form_bracket_f(p, a, &dual(m, b));
    let t3 = dual(m, &form_bracket_f(p, a, b));
    (0..n)
        .map(|i| {
            lin(vec![
                (1.0, Rc::clone(&first[i])),
                (-1.0, Rc::clone(&t1[i])),
                (-1.0, Rc::clone(&t2[i])),
                (1.0, Rc::clone(&t3[i])),
            ])
        })
        .collect()
}

fn coordinate_fns(n: usize) -> Vector {
    (0..n).map(|i| -> F { Rc::new(move |x: &[f64]| x[i]) }).collect()
}

fn unit_fields(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| (0..n).map(|j| -> F { Rc::new(move |_: &[f64]| if i == j { 1.0 } else { 0.0 }) }).collect())
        .collect()
}

impl OracleCase {
    pub fn family(&self) -> &'static str {
        ORACLE_FAMILIES[match self {
            OracleCase::Partial(..) => 0,
            OracleCase::LieBracket(..) => 1,
            OracleCase::Schouten(..) => 2,
            OracleCase::Jacobiator(..) => 3,
            OracleCase::Sharp(..) => 4,
            OracleCase::EndoDual(..) => 5,
            OracleCase::Torsion(..) => 6,
            OracleCase::DeformedBracket(..) => 7,
            OracleCase::D(..) => 8,
            OracleCase::LieDerivative(..) => 9,
            OracleCase::FormBracket(..) => 10,
            OracleCase::MagriMorosi(..) => 11,
        }]
    }

    pub fn space(&self) -> &Arc<ChartSpace> {
        match self {
            OracleCase::Partial(p, _) | OracleCase::D(p) => p.space(),
            OracleCase::LieBracket(x, _) | OracleCase::LieDerivative(x, _) => x.space(),
            OracleCase::Schouten(p)
            | OracleCase::Jacobiator(p, ..)
            | OracleCase::Sharp(p, _)
            | OracleCase::FormBracket(p, ..)
            | OracleCase::MagriMorosi(p, ..) => p.space(),
            OracleCase::EndoDual(nt, _) | OracleCase::Torsion(nt) | OracleCase::DeformedBracket(nt, ..) => {
                nt.space()
            }
        }
    }

    /// Exact result, flattened to components.
    pub fn exact(&self) -> Result<Vec<Poly>, TensorError> {
        Ok(match self {
            OracleCase::Partial(p, i) => vec![p.partial(*i)?],
            OracleCase::LieBracket(x, y) => lie_bracket(x, y)?.components().to_vec(),
            OracleCase::Schouten(p) => schouten_square(p).entries().map(|(_, t)| t.clone()).collect(),
            OracleCase::Jacobiator(p, f, g, h) => vec![jacobiator(p, f, g, h)?],
            OracleCase::Sharp(p, a) => sharp(p, a)?.components().to_vec(),
            OracleCase::EndoDual(nt, a) => endo_dual(nt, a)?.components().to_vec(),
            OracleCase::Torsion(nt) => {
                let t = nijenhuis_torsion(nt);
                let n = nt.space().dim();
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        out.extend(t.on_pair(i, j).components().iter().cloned());
                    }
                }
                out
            }
            OracleCase::DeformedBracket(nt, x, y) => deformed_bracket(nt, x, y)?.components().to_vec(),
            OracleCase::D(f) => d_function(f)?.components().to_vec(),
            OracleCase::LieDerivative(x, b) => lie_derivative_oneform(x, b)?.components().to_vec(),
            OracleCase::FormBracket(p, a, b) => form_bracket(p, a, b)?.components().to_vec(),
            OracleCase::MagriMorosi(p, nt, a, b) => magri_morosi(p, nt, a, b)?.components().to_vec(),
        })
    }

    /// Floating-point closures in the same component order as [`Self::exact`].
    fn approximate(&self) -> Vector {
        let n = self.space().dim();
        match self {
            OracleCase::Partial(p, i) => vec![fd(&poly_fn(p), *i)],
            OracleCase::LieBracket(x, y) => bracket(&vec_of(x.components()), &vec_of(y.components())),
            OracleCase::Schouten(p) => {
                // [P,P]^{ijk} = 2·Jac(xi, xj, xk), through nested differences.
                let m = bivector_matrix(p);
                let x = coordinate_fns(n);
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j + 1..n {
                            out.push(lin(vec![(2.0, jacobiator_f(&m, &x[i], &x[j], &x[k]))]));
                        }
                    }
                }
                out
            }
            OracleCase::Jacobiator(p, f, g, h) => {
                vec![jacobiator_f(&bivector_matrix(p), &poly_fn(f), &poly_fn(g), &poly_fn(h))]
            }
            OracleCase::Sharp(p, a) => sharp_f(&bivector_matrix(p), &vec_of(a.components())),
            OracleCase::EndoDual(nt, a) => dual(&endo_matrix(nt), &vec_of(a.components())),
            OracleCase::Torsion(nt) => {
                let m = endo_matrix(nt);
                let e = unit_fields(n);
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let lhs = bracket(&apply(&m, &e[i]), &apply(&m, &e[j]));
                        let rhs = apply(&m, &deformed_f(&m, &e[i], &e[j]));
                        out.extend(vdiff(&lhs, &rhs));
                    }
                }
                out
            }
            OracleCase::DeformedBracket(nt, x, y) => {
                deformed_f(&endo_matrix(nt), &vec_of(x.components()), &vec_of(y.components()))
            }
            OracleCase::D(f) => grad(&poly_fn(f), n),
            OracleCase::LieDerivative(x, b) => lie_derivative_f(&vec_of(x.components()), &vec_of(b.components())),
            OracleCase::FormBracket(p, a, b) => {
                form_bracket_f(&bivector_matrix(p), &vec_of(a.components()), &vec_of(b.components()))
            }
            OracleCase::MagriMorosi(p, nt, a, b) => magri_morosi_f(
                &bivector_matrix(p),
                &endo_matrix(nt),
                &vec_of(a.components()),
                &vec_of(b.components()),
            ),
        }
    }
}

/// Random rational in `[−1, 1]` with denominator at most 64.
fn random_coordinate<R: Rng>(rng: &mut R) -> Rational {
    let den: i64 = rng.random_range(1..=64);
    rat(rng.random_range(-den..=den), den)
}

/// Largest relative deviation `|exact − approx| / max(|exact|, 1)` over all
/// components and `trials` random points (at least one). Deterministic in
/// `seed`.
pub fn numeric_oracle(case: &OracleCase, trials: usize, seed: u64) -> Result<f64, TensorError> {
    let exact = case.exact()?;
    let approx = case.approximate();
    debug_assert_eq!(exact.len(), approx.len());
    let n = case.space().dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials.max(1) {
        let point: Vec<Rational> = (0..n).map(|_| random_coordinate(&mut rng)).collect();
        let fpoint: Vec<f64> = point.iter().map(|r| r.to_f64().expect("finite")).collect();
        for (e, a) in exact.iter().zip(&approx) {
            let ev = e.eval(&point)?;
            let scale = ev.abs().to_f64().expect("finite").max(1.0);
            let dev = (ev.to_f64().expect("finite") - a(&fpoint)).abs() / scale;
            worst = worst.max(dev);
        }
    }
    Ok(worst)
}

/// `per_family` random instances of every family in [`ORACLE_FAMILIES`]
/// order, on `ℝ³`.
pub fn oracle_cases<R: Rng>(rng: &mut R, per_family: usize) -> Vec<OracleCase> {
    let s = ChartSpace::numbered("x", 3).expect("valid chart");
    let shape = PolyShape::default();
    let linear = PolyShape { max_degree: 1, max_terms: 2 };
    let mut out = Vec::new();
    for family in ORACLE_FAMILIES {
        for _ in 0..per_family {
            let case = match family {
                "partial" => {
                    let p = random_poly(rng, &s, PolyShape { max_degree: 4, max_terms: 5 });
                    OracleCase::Partial(p, rng.random_range(0..3))
                }
                "lie_bracket" => OracleCase::LieBracket(random_vector(rng, &s, shape), random_vector(rng, &s, shape)),
                "schouten" => OracleCase::Schouten(random_bivector(rng, &s, shape)),
                "jacobiator" => OracleCase::Jacobiator(
                    random_bivector(rng, &s, shape),
                    random_poly(rng, &s, shape),
                    random_poly(rng, &s, shape),
                    random_poly(rng, &s, shape),
                ),
                "sharp" => OracleCase::Sharp(random_bivector(rng, &s, shape), random_oneform(rng, &s, shape)),
                "endo_dual" => OracleCase::EndoDual(random_endo(rng, &s, shape), random_oneform(rng, &s, shape)),
                "torsion" => OracleCase::Torsion(random_endo(rng, &s, shape)),
                "deformed_bracket" => OracleCase::DeformedBracket(
                    random_endo(rng, &s, linear),
                    random_vector(rng, &s, shape),
                    random_vector(rng, &s, shape),
                ),
                "d" => OracleCase::D(random_poly(rng, &s, PolyShape { max_degree: 4, max_terms: 5 })),
                "lie_derivative" => {
                    OracleCase::LieDerivative(random_vector(rng, &s, shape), random_oneform(rng, &s, shape))
                }
                "form_bracket" => OracleCase::FormBracket(
                    random_bivector(rng, &s, shape),
                    random_oneform(rng, &s, shape),
                    random_oneform(rng, &s, shape),
                ),
                "magri_morosi" => {
                    // A scalar N always composes with P into a bivector.
                    let f = random_poly(rng, &s, linear);
                    OracleCase::MagriMorosi(
                        random_bivector(rng, &s, shape),
                        EndoField::scalar(&s, &f),
                        random_oneform(rng, &s, linear),
                        random_oneform(rng, &s, linear),
                    )
                }
                _ => unreachable!("family list is fixed"),
            };
            out.push(case);
        }
    }
    out
}

/// One entry per family: pass when the worst deviation over its instances
/// stays below [`ORACLE_TOLERANCE`].
pub fn run_oracle_suite(trials: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = oracle_cases(&mut rng, 2);
    let mut report = CheckReport::new();
    for family in ORACLE_FAMILIES {
        let mut worst = 0.0f64;
        let mut error = None;
        for (k, case) in cases.iter().filter(|c| c.family() == family).enumerate() {
            match numeric_oracle(case, trials, seed.wrapping_add(k as u64)) {
                Ok(d) => worst = worst.max(d),
                Err(e) => error = Some(e),
            }
        }
        let entry = match error {
            Some(e) => CheckEntry::new(family, Verdict::Error).with_note(e.to_string()),
            None => {
                let w = (worst >= ORACLE_TOLERANCE).then(|| Witness::scalar("max relative deviation", worst));
                CheckEntry::from_witness(family, w).with_note(format!("max relative deviation {worst:e}"))
            }
        };
        report.push(entry);
    }
    report
}
