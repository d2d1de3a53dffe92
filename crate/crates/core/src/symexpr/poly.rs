use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::chart::{ensure_same, same_chart, ChartSpace};
use super::{Rational, SymError};

/// Exponent multi-index of a monomial, one entry per chart coordinate.
///
/// Ordered graded-lexicographically, so the largest key in a term map is the
/// leading term under the usual total-degree ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients over a chart.
///
/// Stored in canonical form: no zero coefficients, so structural equality is
/// semantic equality.
#[derive(Debug, Clone)]
pub struct Poly {
    space: Arc<ChartSpace>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.space, &other.space) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(space: &Arc<ChartSpace>) -> Self {
        Poly {
            space: Arc::clone(space),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<ChartSpace>, c: Rational) -> Self {
        let mut p = Poly::zero(space);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(space.dim()), c);
        }
        p
    }

    pub fn from_int(space: &Arc<ChartSpace>, c: i64) -> Self {
        Poly::constant(space, Rational::from_integer(BigInt::from(c)))
    }

    pub fn one(space: &Arc<ChartSpace>) -> Self {
        Poly::from_int(space, 1)
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(space: &Arc<ChartSpace>, i: usize) -> Result<Self, SymError> {
        if i >= space.dim() {
            return Err(SymError::IndexOutOfRange { index: i, dim: space.dim() });
        }
        let mut p = Poly::zero(space);
        p.terms.insert(Monomial::var(space.dim(), i), Rational::one());
        Ok(p)
    }

    /// All coordinate functions of a chart, in order.
    pub fn vars(space: &Arc<ChartSpace>) -> Vec<Poly> {
        (0..space.dim())
            .map(|i| Poly::var(space, i).expect("index in range"))
            .collect()
    }

    pub fn from_terms<I>(space: &Arc<ChartSpace>, terms: I) -> Result<Self, SymError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Poly::zero(space);
        for (e, c) in terms {
            if e.len() != space.dim() {
                return Err(SymError::LengthMismatch { expected: space.dim(), got: e.len() });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn space(&self) -> &Arc<ChartSpace> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Indices of the coordinates that occur with positive exponent.
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    out.insert(i);
                }
            }
        }
        out
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, SymError> {
        ensure_same(&self.space, &other.space)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, SymError> {
        ensure_same(&self.space, &other.space)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, SymError> {
        ensure_same(&self.space, &other.space)?;
        let mut out = Poly::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.space);
        }
        Poly {
            space: Arc::clone(&self.space),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.space);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to coordinate `i` (0-based).
    pub fn partial(&self, i: usize) -> Result<Poly, SymError> {
        if i >= self.space.dim() {
            return Err(SymError::IndexOutOfRange { index: i, dim: self.space.dim() });
        }
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] = e - 1;
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, SymError> {
        if point.len() != self.space.dim() {
            return Err(SymError::LengthMismatch { expected: self.space.dim(), got: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Floating-point evaluation; used only by numeric oracles.
    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, SymError> {
        if point.len() != self.space.dim() {
            return Err(SymError::LengthMismatch { expected: self.space.dim(), got: point.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (x, &e) in point.iter().zip(&m.0) {
                    if e > 0 {
                        t *= x.powi(e as i32);
                    }
                }
                t
            })
            .sum())
    }

    /// Substitutes `images[i]` for coordinate `i`; the result lives on the images' chart.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, SymError> {
        if images.len() != self.space.dim() {
            return Err(SymError::LengthMismatch { expected: self.space.dim(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => Arc::clone(&p.space),
            None => return Ok(self.clone()),
        };
        for p in images {
            ensure_same(&target, &p.space)?;
        }
        let mut powers: Vec<Vec<Poly>> = vec![Vec::new(); images.len()];
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() < e as usize {
                    let next = match cache.last() {
                        Some(last) => last * &images[i],
                        None => images[i].clone(),
                    };
                    cache.push(next);
                }
                t = &t * &cache[e as usize - 1];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Re-expresses the polynomial on another chart that contains all of its
    /// coordinate names.
    pub fn embed(&self, target: &Arc<ChartSpace>) -> Result<Poly, SymError> {
        let images = self
            .space
            .names()
            .iter()
            .map(|n| {
                let i = target
                    .index_of(n)
                    .ok_or_else(|| SymError::UnknownIdentifier { name: n.clone(), pos: 0 })?;
                Poly::var(target, i)
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.compose(&images)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    /// Panics on chart mismatch; use [`Poly::try_add`] for a checked version.
    fn add(self, rhs: &'a Poly) -> Poly {
        self.try_add(rhs).expect("polynomials on different charts")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &'a Poly) -> Poly {
        self.try_sub(rhs).expect("polynomials on different charts")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &'a Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials on different charts")
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            space: Arc::clone(&self.space),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, space: &ChartSpace, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(space.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Prints in the canonical expression grammar, so the output re-parses to the
/// same polynomial.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.space, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{parse_expr, rat};

    fn chart2() -> Arc<ChartSpace> {
        ChartSpace::numbered("x", 2).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let s = chart2();
        let x1 = Poly::var(&s, 0).unwrap();
        let one = Poly::one(&s);
        let p = &(&x1 + &one) * &(&x1 - &one);
        assert_eq!(p, parse_expr("x1^2 - 1", &s).unwrap());
    }

    #[test]
    fn cancellation_gives_canonical_zero() {
        let s = chart2();
        let p = parse_expr("x1*x2 + 3/2", &s).unwrap();
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
        assert_eq!(z, Poly::zero(&s));
    }

    #[test]
    fn additive_identity() {
        let s = chart2();
        let p = parse_expr("x1^3 - x2", &s).unwrap();
        assert_eq!(p.try_add(&Poly::zero(&s)).unwrap(), p);
    }

    #[test]
    fn chart_mismatch_is_an_error() {
        let a = Poly::one(&chart2());
        let b = Poly::one(&ChartSpace::numbered("y", 2).unwrap());
        assert!(matches!(a.try_add(&b), Err(SymError::ChartMismatch { .. })));
        assert!(a.try_mul(&b).is_err());
        assert!(a.try_sub(&b).is_err());
    }

    #[test]
    fn partial_power_rule() {
        let s = chart2();
        let p = parse_expr("x1^2*x2", &s).unwrap();
        assert_eq!(p.partial(0).unwrap(), parse_expr("2*x1*x2", &s).unwrap());
        assert!(Poly::from_int(&s, 7).partial(1).unwrap().is_zero());
        assert!(matches!(p.partial(2), Err(SymError::IndexOutOfRange { .. })));
    }

    #[test]
    fn eval_exact() {
        let s = chart2();
        let p = parse_expr("x1 + x2", &s).unwrap();
        assert_eq!(p.eval(&[rat(1, 2), rat(1, 3)]).unwrap(), rat(5, 6));
        assert_eq!(Poly::zero(&s).eval(&[rat(3, 1), rat(9, 1)]).unwrap(), rat(0, 1));
        assert!(p.eval(&[rat(1, 1)]).is_err());
    }

    #[test]
    fn compose_substitutes() {
        let s = chart2();
        let p = parse_expr("x1*x2^2", &s).unwrap();
        let x1 = Poly::var(&s, 0).unwrap();
        let images = vec![&x1 + &Poly::one(&s), x1.clone()];
        assert_eq!(p.compose(&images).unwrap(), parse_expr("x1^3 + x1^2", &s).unwrap());
    }

    #[test]
    fn display_is_canonical() {
        let s = chart2();
        let p = parse_expr("x1*(x2 + 3/2)^2", &s).unwrap();
        assert_eq!(p.to_string(), "x1*x2^2 + 3*x1*x2 + 9/4*x1");
        assert_eq!((-&p).to_string(), "-x1*x2^2 - 3*x1*x2 - 9/4*x1");
        assert_eq!(Poly::from_int(&s, -2).to_string(), "-2");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let s = chart2();
        let p = parse_expr("x1 - 2*x2 + 1/3", &s).unwrap();
        let mut acc = Poly::one(&s);
        for k in 0..6u32 {
            assert_eq!(p.pow(k), acc);
            acc = &acc * &p;
        }
    }
}
