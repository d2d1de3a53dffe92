use std::sync::Arc;

use crate::symexpr::{ensure_same, rat, ChartSpace, Poly};

use super::fields::{Bivector, EndoField, OneForm, Trivector, VectorField, VectorTwoForm};
use super::TensorError;

fn sum<I: IntoIterator<Item = Poly>>(space: &Arc<ChartSpace>, it: I) -> Poly {
    it.into_iter().fold(Poly::zero(space), |acc, p| &acc + &p)
}

/// Directional derivative `X(f) = Σ Xʲ ∂ⱼ f`.
pub fn directional(x: &VectorField, f: &Poly) -> Result<Poly, TensorError> {
    ensure_same(x.space(), f.space())?;
    let n = x.space().dim();
    let mut acc = Poly::zero(x.space());
    for j in 0..n {
        let xj = x.component(j);
        if !xj.is_zero() {
            acc = &acc + &(xj * &f.partial(j)?);
        }
    }
    Ok(acc)
}

/// `[X, Y]ⁱ = Σⱼ Xʲ ∂ⱼ Yⁱ − Yʲ ∂ⱼ Xⁱ`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, TensorError> {
    ensure_same(x.space(), y.space())?;
    let comps = (0..x.space().dim())
        .map(|i| Ok(&directional(x, y.component(i))? - &directional(y, x.component(i))?))
        .collect::<Result<Vec<_>, TensorError>>()?;
    VectorField::new(x.space(), comps)
}

/// `{f, g} = P(df, dg)`.
pub fn poisson_bracket(p: &Bivector, f: &Poly, g: &Poly) -> Result<Poly, TensorError> {
    ensure_same(p.space(), f.space())?;
    ensure_same(p.space(), g.space())?;
    Ok(p.pair(&d_function(f)?, &d_function(g)?))
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
pub fn jacobiator(p: &Bivector, f: &Poly, g: &Poly, h: &Poly) -> Result<Poly, TensorError> {
    let a = poisson_bracket(p, f, &poisson_bracket(p, g, h)?)?;
    let b = poisson_bracket(p, g, &poisson_bracket(p, h, f)?)?;
    let c = poisson_bracket(p, h, &poisson_bracket(p, f, g)?)?;
    Ok(&(&a + &b) + &c)
}

/// Schouten square `[P, P]`, normalized so that
/// `[P,P](df, dg, dh) = 2 · jacobiator(P, f, g, h)`.
pub fn schouten_square(p: &Bivector) -> Trivector {
    let s = p.space();
    let n = s.dim();
    // Σ_l P^{il} ∂_l P^{jk}
    let term = |i: usize, j: usize, k: usize| -> Poly {
        let pjk = p.get(j, k);
        sum(
            s,
            (0..n).map(|l| &p.get(i, l) * &pjk.partial(l).expect("index in range")),
        )
    };
    let two = Poly::from_int(s, 2);
    let mut t = Trivector::zero(s);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let cyc = &(&term(i, j, k) + &term(j, k, i)) + &term(k, i, j);
                t.set(i, j, k, &two * &cyc);
            }
        }
    }
    t
}

/// `(P♯a)ⁱ = Σⱼ Pʲⁱ aⱼ`, so that `⟨b, P♯a⟩ = P(a, b)`.
pub fn sharp(p: &Bivector, a: &OneForm) -> Result<VectorField, TensorError> {
    ensure_same(p.space(), a.space())?;
    let s = p.space();
    let n = s.dim();
    let comps = (0..n)
        .map(|i| sum(s, (0..n).map(|j| &p.get(j, i) * a.component(j))))
        .collect();
    VectorField::new(s, comps)
}

/// `(N*a)ⱼ = Σᵢ Nⁱⱼ aᵢ`.
pub fn endo_dual(nt: &EndoField, a: &OneForm) -> Result<OneForm, TensorError> {
    ensure_same(nt.space(), a.space())?;
    let s = nt.space();
    let n = s.dim();
    let comps = (0..n)
        .map(|j| sum(s, (0..n).map(|i| nt.entry(i, j) * a.component(i))))
        .collect();
    OneForm::new(s, comps)
}

/// The bivector `NΠ` with `(NΠ)♯ = N∘Π♯`.
///
/// Fails with [`TensorError::NotABivector`] carrying the first nonzero
/// `(N·P)ⁱʲ + (N·P)ʲⁱ` when `N∘P♯ ≠ P♯∘N*`.
pub fn endo_compose_bivector(nt: &EndoField, p: &Bivector) -> Result<Bivector, TensorError> {
    ensure_same(nt.space(), p.space())?;
    let s = p.space();
    let n = s.dim();
    let product: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| sum(s, (0..n).map(|k| nt.entry(i, k) * &p.get(k, j))))
                .collect()
        })
        .collect();
    Bivector::from_matrix(s, &product)
}

/// `N([X,Y])`-style evaluation of the torsion on arbitrary fields:
/// `[NX,NY] − N([NX,Y] + [X,NY] − N[X,Y])`.
pub fn torsion_on(nt: &EndoField, x: &VectorField, y: &VectorField) -> Result<VectorField, TensorError> {
    let nx = nt.apply(x)?;
    let ny = nt.apply(y)?;
    let first = lie_bracket(&nx, &ny)?;
    let inner = deformed_bracket(nt, x, y)?;
    Ok(first.sub(&nt.apply(&inner)?))
}

/// Nijenhuis torsion tabulated on coordinate field pairs.
pub fn nijenhuis_torsion(nt: &EndoField) -> VectorTwoForm {
    let s = nt.space();
    VectorTwoForm::from_pairs(s, |i, j| {
        torsion_on(nt, &VectorField::coordinate(s, i), &VectorField::coordinate(s, j))
            .expect("same chart")
    })
}

/// `[X,Y]_N = [NX,Y] + [X,NY] − N[X,Y]`.
pub fn deformed_bracket(nt: &EndoField, x: &VectorField, y: &VectorField) -> Result<VectorField, TensorError> {
    ensure_same(nt.space(), x.space())?;
    let a = lie_bracket(&nt.apply(x)?, y)?;
    let b = lie_bracket(x, &nt.apply(y)?)?;
    let c = nt.apply(&lie_bracket(x, y)?)?;
    Ok(a.add(&b).sub(&c))
}

/// `df = Σ ∂ᵢf dxⁱ`.
pub fn d_function(f: &Poly) -> Result<OneForm, TensorError> {
    let s = f.space();
    let comps = (0..s.dim())
        .map(|i| f.partial(i))
        .collect::<Result<Vec<_>, _>>()?;
    OneForm::new(s, comps)
}

/// `(L_X b)ᵢ = Σⱼ Xʲ ∂ⱼ bᵢ + bⱼ ∂ᵢ Xʲ`.
pub fn lie_derivative_oneform(x: &VectorField, b: &OneForm) -> Result<OneForm, TensorError> {
    ensure_same(x.space(), b.space())?;
    let s = x.space();
    let n = s.dim();
    let comps = (0..n)
        .map(|i| {
            let transport = directional(x, b.component(i))?;
            let twist = sum(
                s,
                (0..n).map(|j| b.component(j) * &x.component(j).partial(i).expect("index in range")),
            );
            Ok(&transport + &twist)
        })
        .collect::<Result<Vec<_>, TensorError>>()?;
    OneForm::new(s, comps)
}

/// `[a, b]_P = L_{P♯a} b − L_{P♯b} a − d(P(a, b))`.
pub fn form_bracket(p: &Bivector, a: &OneForm, b: &OneForm) -> Result<OneForm, TensorError> {
    ensure_same(p.space(), a.space())?;
    ensure_same(p.space(), b.space())?;
    let lb = lie_derivative_oneform(&sharp(p, a)?, b)?;
    let la = lie_derivative_oneform(&sharp(p, b)?, a)?;
    let dp = d_function(&p.pair(a, b))?;
    Ok(lb.sub(&la).sub(&dp))
}

/// Magri–Morosi concomitant
/// `C(a,b) = [a,b]_{NP} − ([N*a, b]_P + [a, N*b]_P − N*[a,b]_P)`.
///
/// Aborts with [`TensorError::NotABivector`] when `NP` is not antisymmetric.
pub fn magri_morosi(p: &Bivector, nt: &EndoField, a: &OneForm, b: &OneForm) -> Result<OneForm, TensorError> {
    ensure_same(p.space(), nt.space())?;
    let np = endo_compose_bivector(nt, p)?;
    let deformed = form_bracket(&np, a, b)?;
    let t1 = form_bracket(p, &endo_dual(nt, a)?, b)?;
    let t2 = form_bracket(p, a, &endo_dual(nt, b)?)?;
    let t3 = endo_dual(nt, &form_bracket(p, a, b)?)?;
    Ok(deformed.sub(&t1.add(&t2).sub(&t3)))
}

/// Half of a Schouten component, i.e. the Jacobiator on a coordinate triple.
pub(crate) fn half(p: &Poly) -> Poly {
    p.scale(&rat(1, 2))
}
