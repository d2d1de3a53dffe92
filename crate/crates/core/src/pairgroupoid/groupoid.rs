//! The pair groupoid `M×M ⇉ M` and its tangent and cotangent groupoids,
//! evaluated on formal (symbolic) points, vectors and covectors.
//!
//! Conventions: an arrow `(x, y)` has target `x` and source `y`, so
//! `(x, y)·(y, z) = (x, z)`. On the cotangent groupoid `t̃(ξ, η) = ξ` and
//! `s̃(ξ, η) = −η`.

use std::sync::Arc;

use crate::report::{CheckEntry, CheckReport, Witness};
use crate::symexpr::{ChartSpace, Poly};

use super::GroupoidError;

/// Flattening into labelled polynomial components, used to compare values.
pub trait Components {
    fn components(&self) -> Vec<(String, Poly)>;
}

/// First component where `a − b` is nonzero.
pub fn first_difference<T: Components>(a: &T, b: &T) -> Option<(String, Poly)> {
    a.components()
        .into_iter()
        .zip(b.components())
        .map(|((label, pa), (_, pb))| (label, &pa - &pb))
        .find(|(_, d)| !d.is_zero())
}

fn labelled(prefix: &str, comps: &[Poly]) -> Vec<(String, Poly)> {
    comps
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("{prefix}[{}]", i + 1), p.clone()))
        .collect()
}

fn negate(v: &[Poly]) -> Vec<Poly> {
    v.iter().map(|p| -p).collect()
}

/// Point of `M` with formal coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point(pub Vec<Poly>);

impl Components for Point {
    fn components(&self) -> Vec<(String, Poly)> {
        labelled("point", &self.0)
    }
}

/// Arrow `(x, y)` of the pair groupoid: target `x`, source `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairArrow {
    pub x: Vec<Poly>,
    pub y: Vec<Poly>,
}

impl PairArrow {
    /// Coordinates `(x, y)` in total-chart order.
    pub fn coords(&self) -> Vec<Poly> {
        self.x.iter().chain(&self.y).cloned().collect()
    }
}

impl Components for PairArrow {
    fn components(&self) -> Vec<(String, Poly)> {
        let mut out = labelled("x", &self.x);
        out.extend(labelled("y", &self.y));
        out
    }
}

/// Tangent vector `v` at a point of `M`: an object of `TG ⇉ TM`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentVector {
    pub point: Vec<Poly>,
    pub vector: Vec<Poly>,
}

impl Components for TangentVector {
    fn components(&self) -> Vec<(String, Poly)> {
        let mut out = labelled("point", &self.point);
        out.extend(labelled("v", &self.vector));
        out
    }
}

/// Tangent vector `(v, w)` at an arrow `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentElement {
    pub at: PairArrow,
    pub v: Vec<Poly>,
    pub w: Vec<Poly>,
}

impl TangentElement {
    pub fn vector(&self) -> Vec<Poly> {
        self.v.iter().chain(&self.w).cloned().collect()
    }
}

impl Components for TangentElement {
    fn components(&self) -> Vec<(String, Poly)> {
        let mut out = self.at.components();
        out.extend(labelled("v", &self.v));
        out.extend(labelled("w", &self.w));
        out
    }
}

/// Covector on `M`, an object of `T*G ⇉ A*G` (here `A* = T*M`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covector {
    pub point: Vec<Poly>,
    pub covector: Vec<Poly>,
}

impl Components for Covector {
    fn components(&self) -> Vec<(String, Poly)> {
        let mut out = labelled("point", &self.point);
        out.extend(labelled("alpha", &self.covector));
        out
    }
}

/// Covector `(ξ, η)` at an arrow `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotangentElement {
    pub at: PairArrow,
    pub xi: Vec<Poly>,
    pub eta: Vec<Poly>,
}

impl CotangentElement {
    pub fn covector(&self) -> Vec<Poly> {
        self.xi.iter().chain(&self.eta).cloned().collect()
    }
}

impl Components for CotangentElement {
    fn components(&self) -> Vec<(String, Poly)> {
        let mut out = self.at.components();
        out.extend(labelled("xi", &self.xi));
        out.extend(labelled("eta", &self.eta));
        out
    }
}

pub trait Groupoid {
    type Arrow: Components + Clone;
    type Object: Components + Clone;

    fn source(&self, g: &Self::Arrow) -> Self::Object;
    fn target(&self, g: &Self::Arrow) -> Self::Object;
    fn unit(&self, x: &Self::Object) -> Self::Arrow;
    fn inverse(&self, g: &Self::Arrow) -> Self::Arrow;
    /// Composition `g·h`, defined when `s(g) = t(h)`.
    fn compose_unchecked(&self, g: &Self::Arrow, h: &Self::Arrow) -> Self::Arrow;

    fn compose(&self, g: &Self::Arrow, h: &Self::Arrow) -> Result<Self::Arrow, GroupoidError> {
        match first_difference(&self.source(g), &self.target(h)) {
            None => Ok(self.compose_unchecked(g, h)),
            Some((label, residual)) => Err(GroupoidError::NonComposable { label, residual }),
        }
    }
}

/// `M×M ⇉ M`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BaseGroupoid;

impl Groupoid for BaseGroupoid {
    type Arrow = PairArrow;
    type Object = Point;

    fn source(&self, g: &PairArrow) -> Point {
        Point(g.y.clone())
    }
    fn target(&self, g: &PairArrow) -> Point {
        Point(g.x.clone())
    }
    fn unit(&self, x: &Point) -> PairArrow {
        PairArrow { x: x.0.clone(), y: x.0.clone() }
    }
    fn inverse(&self, g: &PairArrow) -> PairArrow {
        PairArrow { x: g.y.clone(), y: g.x.clone() }
    }
    fn compose_unchecked(&self, g: &PairArrow, h: &PairArrow) -> PairArrow {
        PairArrow { x: g.x.clone(), y: h.y.clone() }
    }
}

/// `T(M×M) ⇉ TM`: every structure map is the derivative of the base one.
#[derive(Debug, Clone, Copy, Default)]
pub struct TangentGroupoid;

impl Groupoid for TangentGroupoid {
    type Arrow = TangentElement;
    type Object = TangentVector;

    fn source(&self, g: &TangentElement) -> TangentVector {
        TangentVector { point: g.at.y.clone(), vector: g.w.clone() }
    }
    fn target(&self, g: &TangentElement) -> TangentVector {
        TangentVector { point: g.at.x.clone(), vector: g.v.clone() }
    }
    fn unit(&self, x: &TangentVector) -> TangentElement {
        TangentElement {
            at: BaseGroupoid.unit(&Point(x.point.clone())),
            v: x.vector.clone(),
            w: x.vector.clone(),
        }
    }
    fn inverse(&self, g: &TangentElement) -> TangentElement {
        TangentElement { at: BaseGroupoid.inverse(&g.at), v: g.w.clone(), w: g.v.clone() }
    }
    fn compose_unchecked(&self, g: &TangentElement, h: &TangentElement) -> TangentElement {
        TangentElement {
            at: BaseGroupoid.compose_unchecked(&g.at, &h.at),
            v: g.v.clone(),
            w: h.w.clone(),
        }
    }
}

/// `T*(M×M) ⇉ T*M` with `t̃(ξ,η) = ξ`, `s̃(ξ,η) = −η`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CotangentGroupoid;

impl Groupoid for CotangentGroupoid {
    type Arrow = CotangentElement;
    type Object = Covector;

    fn source(&self, g: &CotangentElement) -> Covector {
        Covector { point: g.at.y.clone(), covector: negate(&g.eta) }
    }
    fn target(&self, g: &CotangentElement) -> Covector {
        Covector { point: g.at.x.clone(), covector: g.xi.clone() }
    }
    fn unit(&self, a: &Covector) -> CotangentElement {
        CotangentElement {
            at: BaseGroupoid.unit(&Point(a.point.clone())),
            xi: a.covector.clone(),
            eta: negate(&a.covector),
        }
    }
    fn inverse(&self, g: &CotangentElement) -> CotangentElement {
        CotangentElement { at: BaseGroupoid.inverse(&g.at), xi: negate(&g.eta), eta: negate(&g.xi) }
    }
    fn compose_unchecked(&self, g: &CotangentElement, h: &CotangentElement) -> CotangentElement {
        CotangentElement {
            at: BaseGroupoid.compose_unchecked(&g.at, &h.at),
            xi: g.xi.clone(),
            eta: h.eta.clone(),
        }
    }
}

/// A polynomial ring of formal symbols: named blocks of `n` variables each,
/// named `<block>_<base coordinate>`.
#[derive(Debug, Clone)]
pub struct FormalSymbols {
    space: Arc<ChartSpace>,
    blocks: Vec<(String, Vec<Poly>)>,
}

impl FormalSymbols {
    pub fn new(base: &ChartSpace, blocks: &[&str]) -> Self {
        let names: Vec<String> = blocks
            .iter()
            .flat_map(|b| base.names().iter().map(move |c| format!("{b}_{c}")))
            .collect();
        let space = ChartSpace::new(&names).expect("block prefixes produce distinct identifiers");
        let vars = Poly::vars(&space);
        let n = base.dim();
        let blocks = blocks
            .iter()
            .enumerate()
            .map(|(k, b)| (b.to_string(), vars[k * n..(k + 1) * n].to_vec()))
            .collect();
        FormalSymbols { space, blocks }
    }

    pub fn space(&self) -> &Arc<ChartSpace> {
        &self.space
    }

    pub fn block(&self, name: &str) -> Vec<Poly> {
        self.blocks
            .iter()
            .find(|(b, _)| b == name)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| panic!("no formal block '{name}'"))
    }
}

/// Three composable formal arrows `g, h, k` of a groupoid.
pub struct ComposableTriple<A> {
    pub g: A,
    pub h: A,
    pub k: A,
}

fn error_witness(what: &str, e: GroupoidError) -> Witness {
    match e {
        GroupoidError::NonComposable { label, residual } | GroupoidError::NotSVertical { label, residual } => {
            Witness::from_poly(format!("{what} {label}"), &residual)
        }
        other => Witness::scalar(what, other),
    }
}

/// Checks the four Lie groupoid axioms on a formal composable triple.
pub fn check_axioms<G: Groupoid>(grp: &G, sample: &ComposableTriple<G::Arrow>) -> CheckReport {
    let ComposableTriple { g, h, k } = sample;
    let mut report = CheckReport::new();
    let diff = |a: &G::Arrow, b: &G::Arrow| first_difference(a, b);
    let to_witness = |r: Option<(String, Poly)>| r.map(|(l, p)| Witness::from_poly(l, &p));
    let compose = |a: &G::Arrow, b: &G::Arrow| grp.compose(a, b);

    let entry = |id: &str, r: Result<Option<(String, Poly)>, GroupoidError>| match r {
        Ok(w) => CheckEntry::from_witness(id, to_witness(w)),
        Err(e) => CheckEntry::from_witness(id, Some(error_witness("composability", e))),
    };

    let gh = compose(g, h);
    report.push(entry(
        "source_target",
        gh.as_ref().map_err(Clone::clone).map(|gh| {
            first_difference(&grp.source(gh), &grp.source(h))
                .or_else(|| first_difference(&grp.target(gh), &grp.target(g)))
        }),
    ));

    let assoc = (|| -> Result<_, GroupoidError> {
        let left = compose(&compose(g, h)?, k)?;
        let right = compose(g, &compose(h, k)?)?;
        Ok(diff(&left, &right))
    })();
    report.push(entry("associativity", assoc));

    let units = (|| -> Result<_, GroupoidError> {
        let l = compose(&grp.unit(&grp.target(g)), g)?;
        let r = compose(g, &grp.unit(&grp.source(g)))?;
        Ok(diff(&l, g).or_else(|| diff(&r, g)))
    })();
    report.push(entry("units", units));

    let inverses = (|| -> Result<_, GroupoidError> {
        let inv = grp.inverse(g);
        let a = compose(g, &inv)?;
        let b = compose(&inv, g)?;
        Ok(diff(&a, &grp.unit(&grp.target(g))).or_else(|| diff(&b, &grp.unit(&grp.source(g)))))
    })();
    report.push(entry("inverses", inverses));
    report
}

/// Formal composable triples for the three groupoids over a base chart.
pub fn base_triple(sym: &FormalSymbols) -> ComposableTriple<PairArrow> {
    let p: Vec<Vec<Poly>> = (0..4).map(|i| sym.block(&format!("p{i}"))).collect();
    let arrow = |a: usize, b: usize| PairArrow { x: p[a].clone(), y: p[b].clone() };
    ComposableTriple { g: arrow(0, 1), h: arrow(1, 2), k: arrow(2, 3) }
}

pub fn tangent_triple(sym: &FormalSymbols) -> ComposableTriple<TangentElement> {
    let base = base_triple(sym);
    let v: Vec<Vec<Poly>> = (0..4).map(|i| sym.block(&format!("v{i}"))).collect();
    let el = |at: PairArrow, a: usize, b: usize| TangentElement { at, v: v[a].clone(), w: v[b].clone() };
    ComposableTriple { g: el(base.g, 0, 1), h: el(base.h, 1, 2), k: el(base.k, 2, 3) }
}

pub fn cotangent_triple(sym: &FormalSymbols) -> ComposableTriple<CotangentElement> {
    let base = base_triple(sym);
    let c: Vec<Vec<Poly>> = (0..4).map(|i| sym.block(&format!("c{i}"))).collect();
    // s̃(ξ,η) = −η must equal t̃ of the next factor.
    let g = CotangentElement { at: base.g, xi: c[0].clone(), eta: c[1].clone() };
    let h = CotangentElement { at: base.h, xi: negate(&c[1]), eta: c[2].clone() };
    let k = CotangentElement { at: base.k, xi: negate(&c[2]), eta: c[3].clone() };
    ComposableTriple { g, h, k }
}

/// Symbols sufficient for [`base_triple`], [`tangent_triple`] and [`cotangent_triple`].
pub fn axiom_symbols(base: &ChartSpace) -> FormalSymbols {
    FormalSymbols::new(
        base,
        &["p0", "p1", "p2", "p3", "v0", "v1", "v2", "v3", "c0", "c1", "c2", "c3"],
    )
}

/// Runs the axiom checks for the base, tangent and cotangent groupoids.
pub fn check_all_axioms(base: &ChartSpace) -> CheckReport {
    let sym = axiom_symbols(base);
    let mut report = CheckReport::new();
    report.extend_prefixed("base.", check_axioms(&BaseGroupoid, &base_triple(&sym)));
    report.extend_prefixed("tangent.", check_axioms(&TangentGroupoid, &tangent_triple(&sym)));
    report.extend_prefixed("cotangent.", check_axioms(&CotangentGroupoid, &cotangent_triple(&sym)));
    report
}

/// Checks that `(arrow_map, object_map)` is a groupoid morphism on formal
/// samples: source, target, units, then composition, in that order.
pub fn check_morphism<G, H, F, O>(
    from: &G,
    to: &H,
    arrow_map: F,
    object_map: O,
    composable: (&G::Arrow, &G::Arrow),
) -> CheckReport
where
    G: Groupoid,
    H: Groupoid,
    F: Fn(&G::Arrow) -> H::Arrow,
    O: Fn(&G::Object) -> H::Object,
{
    let (g, h) = composable;
    let w = |r: Option<(String, Poly)>, what: &str| r.map(|(l, p)| Witness::from_poly(format!("{what} {l}"), &p));
    let mut report = CheckReport::new();

    let fg = arrow_map(g);
    report.push(CheckEntry::from_witness(
        "source",
        w(first_difference(&to.source(&fg), &object_map(&from.source(g))), "s'F - fs"),
    ));
    report.push(CheckEntry::from_witness(
        "target",
        w(first_difference(&to.target(&fg), &object_map(&from.target(g))), "t'F - ft"),
    ));
    let x = from.target(g);
    report.push(CheckEntry::from_witness(
        "unit",
        w(first_difference(&arrow_map(&from.unit(&x)), &to.unit(&object_map(&x))), "F(1) - 1'"),
    ));
    let composed = match from.compose(g, h) {
        Ok(gh) => {
            let fh = arrow_map(h);
            match to.compose(&fg, &fh) {
                Ok(prod) => w(first_difference(&arrow_map(&gh), &prod), "F(gh) - F(g)F(h)"),
                Err(e) => Some(error_witness("F(g),F(h) not composable", e)),
            }
        }
        Err(e) => Some(error_witness("sample not composable", e)),
    };
    report.push(CheckEntry::from_witness("compose", composed));
    report
}
