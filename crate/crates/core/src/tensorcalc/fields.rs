use std::sync::Arc;

use crate::symexpr::{ensure_same, ChartSpace, Poly, SymError};

use super::TensorError;

fn check_len(space: &Arc<ChartSpace>, comps: &[Poly], expected: usize) -> Result<(), TensorError> {
    if comps.len() != expected {
        return Err(SymError::LengthMismatch { expected, got: comps.len() }.into());
    }
    for c in comps {
        ensure_same(space, c.space())?;
    }
    Ok(())
}

fn zeros(space: &Arc<ChartSpace>, n: usize) -> Vec<Poly> {
    vec![Poly::zero(space); n]
}

/// Contravariant field `Σ Xⁱ ∂ᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    space: Arc<ChartSpace>,
    comps: Vec<Poly>,
}

impl VectorField {
    pub fn new(space: &Arc<ChartSpace>, comps: Vec<Poly>) -> Result<Self, TensorError> {
        check_len(space, &comps, space.dim())?;
        Ok(VectorField { space: Arc::clone(space), comps })
    }

    pub fn zero(space: &Arc<ChartSpace>) -> Self {
        VectorField { space: Arc::clone(space), comps: zeros(space, space.dim()) }
    }

    /// The coordinate field `∂ᵢ` (0-based).
    pub fn coordinate(space: &Arc<ChartSpace>, i: usize) -> Self {
        let mut v = Self::zero(space);
        v.comps[i] = Poly::one(space);
        v
    }

    pub fn space(&self) -> &Arc<ChartSpace> {
        &self.space
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        VectorField { space: Arc::clone(&self.space), comps }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect();
        VectorField { space: Arc::clone(&self.space), comps }
    }

    pub fn scale(&self, f: &Poly) -> VectorField {
        let comps = self.comps.iter().map(|c| c * f).collect();
        VectorField { space: Arc::clone(&self.space), comps }
    }
}

/// Covariant field `Σ aᵢ dxⁱ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    space: Arc<ChartSpace>,
    comps: Vec<Poly>,
}

impl OneForm {
    pub fn new(space: &Arc<ChartSpace>, comps: Vec<Poly>) -> Result<Self, TensorError> {
        check_len(space, &comps, space.dim())?;
        Ok(OneForm { space: Arc::clone(space), comps })
    }

    pub fn zero(space: &Arc<ChartSpace>) -> Self {
        OneForm { space: Arc::clone(space), comps: zeros(space, space.dim()) }
    }

    /// The coordinate differential `dxⁱ` (0-based).
    pub fn coordinate(space: &Arc<ChartSpace>, i: usize) -> Self {
        let mut a = Self::zero(space);
        a.comps[i] = Poly::one(space);
        a
    }

    pub fn space(&self) -> &Arc<ChartSpace> {
        &self.space
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        OneForm { space: Arc::clone(&self.space), comps }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect();
        OneForm { space: Arc::clone(&self.space), comps }
    }

    pub fn scale(&self, f: &Poly) -> OneForm {
        let comps = self.comps.iter().map(|c| c * f).collect();
        OneForm { space: Arc::clone(&self.space), comps }
    }

    /// `⟨a, X⟩ = Σ aᵢ Xⁱ`.
    pub fn pair(&self, x: &VectorField) -> Poly {
        self.comps
            .iter()
            .zip(&x.comps)
            .fold(Poly::zero(&self.space), |acc, (a, v)| &acc + &(a * v))
    }
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * (2 * dim - i - 1) / 2 + (j - i - 1)
}

/// Antisymmetric `Σ_{i<j} Pⁱʲ ∂ᵢ∧∂ⱼ`; only the strictly upper triangle is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivector {
    space: Arc<ChartSpace>,
    upper: Vec<Poly>,
}

impl Bivector {
    pub fn zero(space: &Arc<ChartSpace>) -> Self {
        let n = space.dim();
        Bivector { space: Arc::clone(space), upper: zeros(space, n * n.saturating_sub(1) / 2) }
    }

    /// Builds from `(i, j, Pⁱʲ)` entries with `i < j`, 0-based.
    pub fn from_upper<I>(space: &Arc<ChartSpace>, entries: I) -> Result<Self, TensorError>
    where
        I: IntoIterator<Item = (usize, usize, Poly)>,
    {
        let mut b = Self::zero(space);
        for (i, j, p) in entries {
            b.set(i, j, p)?;
        }
        Ok(b)
    }

    /// Builds from a full matrix, which must be antisymmetric.
    #[allow(clippy::needless_range_loop)]
    pub fn from_matrix(space: &Arc<ChartSpace>, m: &[Vec<Poly>]) -> Result<Self, TensorError> {
        let n = space.dim();
        let mut b = Self::zero(space);
        for i in 0..n {
            for j in i..n {
                let sym = &m[i][j] + &m[j][i];
                if !sym.is_zero() {
                    return Err(TensorError::NotABivector { i, j, witness: sym });
                }
                if i < j {
                    b.set(i, j, m[i][j].clone())?;
                }
            }
        }
        Ok(b)
    }

    /// Sets `Pⁱʲ` (and implicitly `Pʲⁱ = -Pⁱʲ`); requires `i < j`.
    pub fn set(&mut self, i: usize, j: usize, p: Poly) -> Result<(), TensorError> {
        let n = self.space.dim();
        if j >= n {
            return Err(SymError::IndexOutOfRange { index: j, dim: n }.into());
        }
        if i >= j {
            return Err(TensorError::NotUpperIndex { i, j });
        }
        ensure_same(&self.space, p.space())?;
        self.upper[pair_index(n, i, j)] = p;
        Ok(())
    }

    pub fn space(&self) -> &Arc<ChartSpace> {
        &self.space
    }

    /// Full antisymmetric component `Pⁱʲ`.
    pub fn get(&self, i: usize, j: usize) -> Poly {
        let n = self.space.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(n, i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.upper[pair_index(n, j, i)],
            std::cmp::Ordering::Equal => Poly::zero(&self.space),
        }
    }

    /// Stored components as `(i, j, Pⁱʲ)` with `i < j`.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        let n = self.space.dim();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j))).map(move |(i, j)| (i, j, &self.upper[pair_index(n, i, j)]))
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, f: &Poly) -> Bivector {
        Bivector {
            space: Arc::clone(&self.space),
            upper: self.upper.iter().map(|c| c * f).collect(),
        }
    }

    pub fn add(&self, other: &Bivector) -> Bivector {
        Bivector {
            space: Arc::clone(&self.space),
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a + b).collect(),
        }
    }

    /// `P(a, b) = Σ Pⁱʲ aᵢ bⱼ`.
    pub fn pair(&self, a: &OneForm, b: &OneForm) -> Poly {
        let mut acc = Poly::zero(&self.space);
        for (i, j, p) in self.upper_entries() {
            if p.is_zero() {
                continue;
            }
            let t = &(&a.comps[i] * &b.comps[j]) - &(&a.comps[j] * &b.comps[i]);
            acc = &acc + &(p * &t);
        }
        acc
    }
}

/// Fully antisymmetric `Tⁱʲᵏ` with only `i<j<k` stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trivector {
    space: Arc<ChartSpace>,
    comps: Vec<((usize, usize, usize), Poly)>,
}

impl Trivector {
    pub fn zero(space: &Arc<ChartSpace>) -> Self {
        let n = space.dim();
        let mut comps = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    comps.push(((i, j, k), Poly::zero(space)));
                }
            }
        }
        Trivector { space: Arc::clone(space), comps }
    }

    pub fn space(&self) -> &Arc<ChartSpace> {
        &self.space
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        self.comps
            .iter()
            .position(|(idx, _)| *idx == (i, j, k))
            .expect("sorted triple within dimension")
    }

    /// Sets the component for a strictly increasing triple.
    pub fn set(&mut self, i: usize, j: usize, k: usize, p: Poly) {
        let s = self.slot(i, j, k);
        self.comps[s].1 = p;
    }

    /// Full antisymmetric component for any index triple.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Poly {
        let mut idx = [i, j, k];
        let mut sign = false;
        for pass in 0..2 {
            for b in 0..2 - pass {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = !sign;
                }
            }
        }
        if idx[0] == idx[1] || idx[1] == idx[2] {
            return Poly::zero(&self.space);
        }
        let p = self.comps[self.slot(idx[0], idx[1], idx[2])].1.clone();
        if sign { -p } else { p }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Poly)> {
        self.comps.iter().map(|(i, p)| (*i, p))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|(_, p)| p.is_zero())
    }

    /// `T(a, b, c) = Σ Tⁱʲᵏ aᵢ bⱼ cₖ` over all index triples.
    pub fn contract(&self, a: &OneForm, b: &OneForm, c: &OneForm) -> Poly {
        let mut acc = Poly::zero(&self.space);
        for ((i, j, k), t) in self.entries() {
            if t.is_zero() {
                continue;
            }
            let perms = [
                (i, j, k, false),
                (j, k, i, false),
                (k, i, j, false),
                (j, i, k, true),
                (i, k, j, true),
                (k, j, i, true),
            ];
            for (p, q, r, neg) in perms {
                let m = &(&a.comps[p] * &b.comps[q]) * &c.comps[r];
                acc = if neg { &acc - &(t * &m) } else { &acc + &(t * &m) };
            }
        }
        acc
    }
}

/// A (1,1)-tensor; `entry(i, j) = ⟨dxⁱ, N ∂ⱼ⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoField {
    space: Arc<ChartSpace>,
    rows: Vec<Vec<Poly>>,
}

impl EndoField {
    pub fn new(space: &Arc<ChartSpace>, rows: Vec<Vec<Poly>>) -> Result<Self, TensorError> {
        let n = space.dim();
        if rows.len() != n {
            return Err(SymError::LengthMismatch { expected: n, got: rows.len() }.into());
        }
        for r in &rows {
            check_len(space, r, n)?;
        }
        Ok(EndoField { space: Arc::clone(space), rows })
    }

    pub fn zero(space: &Arc<ChartSpace>) -> Self {
        let n = space.dim();
        EndoField { space: Arc::clone(space), rows: vec![zeros(space, n); n] }
    }

    pub fn identity(space: &Arc<ChartSpace>) -> Self {
        Self::scalar(space, &Poly::one(space))
    }

    /// `f · id`.
    pub fn scalar(space: &Arc<ChartSpace>, f: &Poly) -> Self {
        let mut e = Self::zero(space);
        for i in 0..space.dim() {
            e.rows[i][i] = f.clone();
        }
        e
    }

    pub fn diagonal(space: &Arc<ChartSpace>, diag: Vec<Poly>) -> Result<Self, TensorError> {
        check_len(space, &diag, space.dim())?;
        let mut e = Self::zero(space);
        for (i, d) in diag.into_iter().enumerate() {
            e.rows[i][i] = d;
        }
        Ok(e)
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) -> Result<(), TensorError> {
        let n = self.space.dim();
        if i >= n || j >= n {
            return Err(SymError::IndexOutOfRange { index: i.max(j), dim: n }.into());
        }
        ensure_same(&self.space, p.space())?;
        self.rows[i][j] = p;
        Ok(())
    }

    pub fn space(&self) -> &Arc<ChartSpace> {
        &self.space
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Poly::is_zero)
    }

    /// `(N X)ⁱ = Σⱼ Nⁱⱼ Xʲ`.
    pub fn apply(&self, x: &VectorField) -> Result<VectorField, TensorError> {
        ensure_same(&self.space, x.space())?;
        let comps = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x.components())
                    .fold(Poly::zero(&self.space), |acc, (n, v)| &acc + &(n * v))
            })
            .collect();
        Ok(VectorField { space: Arc::clone(&self.space), comps })
    }
}

/// Vector-valued 2-form on coordinate fields: `value(k, i, j) = ⟨dxᵏ, T(∂ᵢ, ∂ⱼ)⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorTwoForm {
    space: Arc<ChartSpace>,
    values: Vec<Vec<Vec<Poly>>>,
}

impl VectorTwoForm {
    #[allow(clippy::needless_range_loop)]
    pub(crate) fn from_pairs(space: &Arc<ChartSpace>, mut f: impl FnMut(usize, usize) -> VectorField) -> Self {
        let n = space.dim();
        let mut values = vec![vec![vec![Poly::zero(space); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                for (k, c) in v.comps.into_iter().enumerate() {
                    values[k][i][j] = c;
                }
            }
        }
        VectorTwoForm { space: Arc::clone(space), values }
    }

    pub fn space(&self) -> &Arc<ChartSpace> {
        &self.space
    }

    pub fn value(&self, k: usize, i: usize, j: usize) -> &Poly {
        &self.values[k][i][j]
    }

    /// `T(∂ᵢ, ∂ⱼ)` as a vector field.
    pub fn on_pair(&self, i: usize, j: usize) -> VectorField {
        let comps = (0..self.space.dim()).map(|k| self.values[k][i][j].clone()).collect();
        VectorField { space: Arc::clone(&self.space), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().flatten().all(Poly::is_zero)
    }

    /// First nonzero `(k, i, j)` with `i < j`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, &Poly)> {
        let n = self.space.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = &self.values[k][i][j];
                    if !v.is_zero() {
                        return Some((k, i, j, v));
                    }
                }
            }
        }
        None
    }
}
