//! Seeded random instances. Every generator takes the RNG explicitly, so a
//! fixed seed reproduces the same sequence.

use std::sync::Arc;

use rand::{Rng, RngExt};

use crate::symexpr::{rat, ChartSpace, Poly, Rational};
use crate::tensorcalc::{Bivector, EndoField, OneForm, VectorField};

use super::AlgebroidData;

/// Instances in [`correspondence_corpus`].
pub const CORPUS_SIZE: usize = 20;

/// Size limits for random polynomials.
#[derive(Debug, Clone, Copy)]
pub struct PolyShape {
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape { max_degree: 2, max_terms: 3 }
    }
}

/// `a/b` with `|a| ≤ 5`, `1 ≤ b ≤ 3`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.random_range(-5..=5), rng.random_range(1..=3))
}

pub fn random_poly<R: Rng>(rng: &mut R, space: &Arc<ChartSpace>, shape: PolyShape) -> Poly {
    let n = space.dim();
    let count = rng.random_range(0..=shape.max_terms);
    let terms: Vec<(Vec<u32>, Rational)> = (0..count)
        .map(|_| {
            let mut exps = vec![0u32; n];
            let degree = rng.random_range(0..=shape.max_degree);
            for _ in 0..degree {
                exps[rng.random_range(0..n)] += 1;
            }
            (exps, random_rational(rng))
        })
        .collect();
    Poly::from_terms(space, terms).expect("exponent vectors match the chart")
}

pub fn random_vector<R: Rng>(rng: &mut R, space: &Arc<ChartSpace>, shape: PolyShape) -> VectorField {
    let comps = (0..space.dim()).map(|_| random_poly(rng, space, shape)).collect();
    VectorField::new(space, comps).expect("dimension matches")
}

pub fn random_oneform<R: Rng>(rng: &mut R, space: &Arc<ChartSpace>, shape: PolyShape) -> OneForm {
    let comps = (0..space.dim()).map(|_| random_poly(rng, space, shape)).collect();
    OneForm::new(space, comps).expect("dimension matches")
}

pub fn random_bivector<R: Rng>(rng: &mut R, space: &Arc<ChartSpace>, shape: PolyShape) -> Bivector {
    let n = space.dim();
    let entries: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, random_poly(rng, space, shape)))
        .collect();
    Bivector::from_upper(space, entries).expect("upper entries")
}

pub fn random_endo<R: Rng>(rng: &mut R, space: &Arc<ChartSpace>, shape: PolyShape) -> EndoField {
    let n = space.dim();
    let rows = (0..n)
        .map(|_| (0..n).map(|_| random_poly(rng, space, shape)).collect())
        .collect();
    EndoField::new(space, rows).expect("square")
}

/// `c · Λ_so(3)` translated by `a`: `Λ¹² = c(x3+a3)`, `Λ²³ = c(x1+a1)`,
/// `Λ¹³ = −c(x2+a2)`. Poisson for every `c`, `a`. Needs a chart of dim 3.
pub fn so3_bivector(space: &Arc<ChartSpace>, c: &Rational, a: [Rational; 3]) -> Bivector {
    let x = Poly::vars(space);
    let shifted = |i: usize| (&x[i] + &Poly::constant(space, a[i].clone())).scale(c);
    Bivector::from_upper(space, [(0, 1, shifted(2)), (1, 2, shifted(0)), (0, 2, -shifted(1))])
        .expect("dim 3 chart")
}

/// `c ∂₁∧∂₂ + q x2 ∂₂∧∂₃`, whose Jacobiator on `(x1,x2,x3)` is `c·q`.
pub fn perturbed_bivector(space: &Arc<ChartSpace>, c: &Rational, q: &Rational) -> Bivector {
    let x2 = Poly::var(space, 1).expect("dim 3 chart");
    Bivector::from_upper(space, [(0, 1, Poly::constant(space, c.clone())), (1, 2, x2.scale(q))])
        .expect("dim 3 chart")
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = random_rational(rng);
        if r != rat(0, 1) {
            return r;
        }
    }
}

/// [`CORPUS_SIZE`] instances on `ℝ³`: ten Poisson bivectors (constant and
/// translated/scaled so(3)) and ten perturbed ones, each paired with a
/// constant scalar, a constant diagonal, or `diag(x2, 1, 1)`.
pub fn correspondence_corpus<R: Rng>(rng: &mut R) -> Vec<AlgebroidData> {
    let s = ChartSpace::numbered("x", 3).expect("valid chart");
    let constant = PolyShape { max_degree: 0, max_terms: 1 };
    (0..CORPUS_SIZE)
        .map(|k| {
            let lambda = match (k < CORPUS_SIZE / 2, k % 2) {
                (true, 0) => random_bivector(rng, &s, constant),
                (true, _) => {
                    let a = [random_rational(rng), random_rational(rng), random_rational(rng)];
                    so3_bivector(&s, &nonzero_rational(rng), a)
                }
                (false, _) => perturbed_bivector(&s, &nonzero_rational(rng), &nonzero_rational(rng)),
            };
            let n = match k % 3 {
                0 => EndoField::scalar(&s, &Poly::constant(&s, random_rational(rng))),
                1 => {
                    let d = (0..3).map(|_| Poly::constant(&s, random_rational(rng))).collect();
                    EndoField::diagonal(&s, d).expect("dim 3")
                }
                _ => {
                    let d = vec![Poly::var(&s, 1).expect("dim 3"), Poly::one(&s), Poly::one(&s)];
                    EndoField::diagonal(&s, d).expect("dim 3")
                }
            };
            AlgebroidData::new(lambda, n).expect("same chart")
        })
        .collect()
}
