use std::sync::Arc;

use crate::report::Witness;
use crate::symexpr::{ChartSpace, Poly};
use crate::tensorcalc::{Bivector, EndoField, Trivector, VectorField};

use super::{Convention, GroupoidError};

/// `M×M ⇉ M` on a single chart: base coordinates `x`, total coordinates
/// `(x, y)` where the `y` block mirrors the base names with a `_y` suffix.
#[derive(Debug, Clone)]
pub struct PairGroupoid {
    base: Arc<ChartSpace>,
    total: Arc<ChartSpace>,
}

impl PairGroupoid {
    pub fn new(base: &Arc<ChartSpace>) -> Self {
        let mut names: Vec<String> = base.names().to_vec();
        for n in base.names() {
            let mut candidate = format!("{n}_y");
            while names.contains(&candidate) {
                candidate.push('_');
            }
            names.push(candidate);
        }
        let total = ChartSpace::new(&names).expect("derived names are distinct identifiers");
        PairGroupoid { base: Arc::clone(base), total }
    }

    pub fn base(&self) -> &Arc<ChartSpace> {
        &self.base
    }

    pub fn total(&self) -> &Arc<ChartSpace> {
        &self.total
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Index of the same coordinate in the other block.
    fn flip(&self, i: usize) -> usize {
        let n = self.dim();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    fn total_vars(&self) -> Vec<Poly> {
        Poly::vars(&self.total)
    }

    /// A base function expressed in the `x` block.
    pub fn lift_x(&self, p: &Poly) -> Poly {
        let v = self.total_vars();
        p.compose(&v[..self.dim()]).expect("base chart")
    }

    /// A base function expressed in the `y` block.
    pub fn lift_y(&self, p: &Poly) -> Poly {
        let v = self.total_vars();
        p.compose(&v[self.dim()..]).expect("base chart")
    }

    /// Restriction of a total-space function to the units `y = x`.
    pub fn at_units(&self, p: &Poly) -> Poly {
        let x = Poly::vars(&self.base);
        let images: Vec<Poly> = x.iter().chain(&x).cloned().collect();
        p.compose(&images).expect("total chart")
    }

    /// `p ∘ i` for the inversion `i(x, y) = (y, x)`.
    pub fn invert_function(&self, p: &Poly) -> Poly {
        let v = self.total_vars();
        let images: Vec<Poly> = (0..2 * self.dim()).map(|i| v[self.flip(i)].clone()).collect();
        p.compose(&images).expect("total chart")
    }

    pub fn push_vector(&self, x: &VectorField) -> VectorField {
        let comps = (0..2 * self.dim())
            .map(|j| self.invert_function(x.component(self.flip(j))))
            .collect();
        VectorField::new(&self.total, comps).expect("total chart")
    }

    pub fn push_bivector(&self, p: &Bivector) -> Bivector {
        let m = 2 * self.dim();
        let entries = (0..m).flat_map(|j| (j + 1..m).map(move |k| (j, k))).map(|(j, k)| {
            (j, k, self.invert_function(&p.get(self.flip(j), self.flip(k))))
        });
        Bivector::from_upper(&self.total, entries).expect("total chart")
    }

    pub fn push_trivector(&self, t: &Trivector) -> Trivector {
        let mut out = Trivector::zero(&self.total);
        let m = 2 * self.dim();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let c = t.get(self.flip(i), self.flip(j), self.flip(k));
                    out.set(i, j, k, self.invert_function(&c));
                }
            }
        }
        out
    }

    pub fn push_endo(&self, nt: &EndoField) -> EndoField {
        let m = 2 * self.dim();
        let rows = (0..m)
            .map(|j| {
                (0..m)
                    .map(|k| self.invert_function(nt.entry(self.flip(j), self.flip(k))))
                    .collect()
            })
            .collect();
        EndoField::new(&self.total, rows).expect("total chart")
    }

    /// Right: `(X(x), 0)`. Left: the inversion image of the right extension.
    pub fn extend_vector(&self, x: &VectorField, conv: Convention) -> VectorField {
        let n = self.dim();
        let mut comps: Vec<Poly> = x.components().iter().map(|c| self.lift_x(c)).collect();
        comps.extend((0..n).map(|_| Poly::zero(&self.total)));
        let right = VectorField::new(&self.total, comps).expect("total chart");
        match conv {
            Convention::Right => right,
            Convention::Left => self.push_vector(&right),
        }
    }

    /// Right: `Π^{xᵢxⱼ}(x, y) = Λⁱʲ(x)`, all other blocks zero.
    pub fn extend_bivector(&self, l: &Bivector, conv: Convention) -> Bivector {
        let right = Bivector::from_upper(
            &self.total,
            l.upper_entries().map(|(i, j, p)| (i, j, self.lift_x(p))),
        )
        .expect("total chart");
        match conv {
            Convention::Right => right,
            Convention::Left => self.push_bivector(&right),
        }
    }

    pub fn extend_trivector(&self, t: &Trivector, conv: Convention) -> Trivector {
        let mut right = Trivector::zero(&self.total);
        for ((i, j, k), p) in t.entries() {
            right.set(i, j, k, self.lift_x(p));
        }
        match conv {
            Convention::Right => right,
            Convention::Left => self.push_trivector(&right),
        }
    }

    /// Block-diagonal `n(x) ⊕ n(y)`.
    pub fn extend_endo(&self, nt: &EndoField, conv: Convention) -> EndoField {
        let n = self.dim();
        let mut out = EndoField::zero(&self.total);
        for i in 0..n {
            for j in 0..n {
                let e = nt.entry(i, j);
                out.set(i, j, self.lift_x(e)).expect("in range");
                out.set(i + n, j + n, self.lift_y(e)).expect("in range");
            }
        }
        match conv {
            Convention::Right => out,
            Convention::Left => self.push_endo(&out),
        }
    }

    pub fn restrict_vector(&self, x: &VectorField, conv: Convention) -> VectorField {
        let x = match conv {
            Convention::Right => x.clone(),
            Convention::Left => self.push_vector(x),
        };
        let comps = (0..self.dim()).map(|i| self.at_units(x.component(i))).collect();
        VectorField::new(&self.base, comps).expect("base chart")
    }

    /// Values at the units, as a section of `∧²A`; fails if any component
    /// outside the `xx` block survives at `y = x`.
    pub fn restrict_bivector(&self, p: &Bivector, conv: Convention) -> Result<Bivector, GroupoidError> {
        let p = match conv {
            Convention::Right => p.clone(),
            Convention::Left => self.push_bivector(p),
        };
        let n = self.dim();
        for (i, j, c) in p.upper_entries() {
            if j < n {
                continue;
            }
            let at = self.at_units(c);
            if !at.is_zero() {
                return Err(GroupoidError::NotSVertical {
                    label: format!("P^({},{})", self.total.name(i), self.total.name(j)),
                    residual: at,
                });
            }
        }
        let entries = p
            .upper_entries()
            .filter(|&(_, j, _)| j < n)
            .map(|(i, j, c)| (i, j, self.at_units(c)))
            .collect::<Vec<_>>();
        Ok(Bivector::from_upper(&self.base, entries).expect("base chart"))
    }

    pub fn restrict_endo(&self, nt: &EndoField, conv: Convention) -> EndoField {
        let nt = match conv {
            Convention::Right => nt.clone(),
            Convention::Left => self.push_endo(nt),
        };
        let n = self.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.at_units(nt.entry(i, j))).collect())
            .collect();
        EndoField::new(&self.base, rows).expect("base chart")
    }

    /// Right-invariance of a bivector: only the `xx` block is nonzero and it
    /// does not depend on `y`. `Err` carries the first offending component.
    pub fn bivector_invariance(&self, p: &Bivector, conv: Convention) -> Result<(), Witness> {
        let p = match conv {
            Convention::Right => p.clone(),
            Convention::Left => self.push_bivector(p),
        };
        let n = self.dim();
        for (i, j, c) in p.upper_entries() {
            let label = format!("P^({},{})", self.total.name(i), self.total.name(j));
            if j >= n {
                if !c.is_zero() {
                    return Err(Witness::from_poly(label, c));
                }
            } else if c.variables().iter().any(|&v| v >= n) {
                return Err(Witness::from_poly(format!("{label} depends on the y block"), c));
            }
        }
        Ok(())
    }

    /// An endomorphism is invariant when it equals the extension of its own
    /// restriction.
    pub fn endo_invariance(&self, nt: &EndoField, conv: Convention) -> Result<(), Witness> {
        let rebuilt = self.extend_endo(&self.restrict_endo(nt, conv), conv);
        let m = 2 * self.dim();
        for i in 0..m {
            for j in 0..m {
                let d = nt.entry(i, j) - rebuilt.entry(i, j);
                if !d.is_zero() {
                    let label = format!(
                        "N - ext(restrict N) at ({},{})",
                        self.total.name(i),
                        self.total.name(j)
                    );
                    return Err(Witness::from_poly(label, &d));
                }
            }
        }
        Ok(())
    }
}
