//! Multiplicativity of bivectors and (1,1)-tensors on the pair groupoid,
//! verified as polynomial identities in formal points and (co)vectors.

use std::collections::BTreeSet;

use crate::report::{CheckEntry, CheckReport, Witness};
use crate::symexpr::{ensure_same, Poly};
use crate::tensorcalc::{Bivector, EndoField};

use super::groupoid::{
    check_morphism, first_difference, CotangentElement, CotangentGroupoid, FormalSymbols, Groupoid,
    PairArrow, TangentElement, TangentGroupoid, TangentVector,
};
use super::{GroupoidError, PairGroupoid};

/// `P♯` evaluated at a formal cotangent element.
fn sharp_at(p: &Bivector, c: &CotangentElement) -> TangentElement {
    let at = c.at.coords();
    let cov = c.covector();
    let m = cov.len();
    let zero = Poly::zero(cov[0].space());
    let vec: Vec<Poly> = (0..m)
        .map(|i| {
            (0..m).fold(zero.clone(), |acc, j| {
                let pji = p.get(j, i);
                if pji.is_zero() {
                    acc
                } else {
                    &acc + &(&pji.compose(&at).expect("total chart") * &cov[j])
                }
            })
        })
        .collect();
    let n = m / 2;
    TangentElement { at: c.at.clone(), v: vec[..n].to_vec(), w: vec[n..].to_vec() }
}

/// Matrix-vector product with entries evaluated at `point` (`point` has one
/// entry per coordinate of the tensor's chart).
fn apply_at(nt: &EndoField, point: &[Poly], v: &[Poly]) -> Vec<Poly> {
    let zero = Poly::zero(v[0].space());
    nt.rows()
        .iter()
        .map(|row| {
            row.iter().zip(v).fold(zero.clone(), |acc, (e, x)| {
                if e.is_zero() {
                    acc
                } else {
                    &acc + &(&e.compose(point).expect("chart") * x)
                }
            })
        })
        .collect()
}

fn only_uses(p: &Poly, allowed: &BTreeSet<usize>) -> Option<usize> {
    p.variables().into_iter().find(|v| !allowed.contains(v))
}

/// Whether `P♯ : T*G → TG` is a groupoid morphism over some base map
/// `A* → TM`. Conditions, reported in order:
///
/// (a) `Ts∘P♯` depends only on `s̃` and `Tt∘P♯` only on `t̃`;
/// (b) `s̃(C1) = t̃(C2)` implies `Ts(P♯C1) = Tt(P♯C2)`;
/// (c) `P♯(C1·C2) = P♯C1 · P♯C2` on composable pairs.
///
/// Given (a), (b) is exactly the requirement that the two base maps agree.
pub fn check_bivector_multiplicative(g: &PairGroupoid, p: &Bivector) -> Result<CheckReport, GroupoidError> {
    ensure_same(g.total(), p.space()).map_err(|_| GroupoidError::WrongChart)?;
    let n = g.dim();
    let sym = FormalSymbols::new(g.base(), &["p0", "p1", "p2", "c0", "c1", "c2"]);
    let pt: Vec<Vec<Poly>> = (0..3).map(|i| sym.block(&format!("p{i}"))).collect();
    let cv: Vec<Vec<Poly>> = (0..3).map(|i| sym.block(&format!("c{i}"))).collect();
    let block_vars = |k: usize| (k * n..(k + 1) * n).collect::<BTreeSet<usize>>();
    let names = sym.space().names();

    let c1 = CotangentElement {
        at: PairArrow { x: pt[0].clone(), y: pt[1].clone() },
        xi: cv[0].clone(),
        eta: cv[1].clone(),
    };
    let c2 = CotangentElement {
        at: PairArrow { x: pt[1].clone(), y: pt[2].clone() },
        xi: cv[1].iter().map(|q| -q).collect(),
        eta: cv[2].clone(),
    };
    let img1 = sharp_at(p, &c1);
    let img2 = sharp_at(p, &c2);

    let mut report = CheckReport::new();

    // (a) p1/c1 are blocks 1 and 4; p0/c0 are blocks 0 and 3.
    let src_allowed: BTreeSet<usize> = block_vars(1).union(&block_vars(4)).copied().collect();
    let tgt_allowed: BTreeSet<usize> = block_vars(0).union(&block_vars(3)).copied().collect();
    let mut witness = None;
    for (what, comps, allowed) in [("Ts(P#C)", &img1.w, &src_allowed), ("Tt(P#C)", &img1.v, &tgt_allowed)] {
        for (i, c) in comps.iter().enumerate() {
            if let Some(v) = only_uses(c, allowed) {
                witness = Some(Witness::from_poly(format!("(a) {what}[{}] depends on {}", i + 1, names[v]), c));
                break;
            }
        }
        if witness.is_some() {
            break;
        }
    }
    report.push(CheckEntry::from_witness("base_map", witness));

    let ts = TangentGroupoid.source(&img1);
    let tt = TangentGroupoid.target(&img2);
    let w_b = first_difference(&ts, &tt)
        .map(|(l, d)| Witness::from_poly(format!("(b) Ts(P#C1) - Tt(P#C2) {l}"), &d));
    report.push(CheckEntry::from_witness("composability", w_b));

    // Tm only needs the outer blocks; when (b) fails the product is formal.
    let lhs = sharp_at(p, &CotangentGroupoid.compose_unchecked(&c1, &c2));
    let rhs = TangentGroupoid.compose_unchecked(&img1, &img2);
    let w_c = first_difference(&lhs, &rhs)
        .map(|(l, d)| Witness::from_poly(format!("(c) P#(C1C2) - Tm(P#C1, P#C2) {l}"), &d));
    report.push(CheckEntry::from_witness("multiplicative", w_c));
    Ok(report)
}

/// Whether `(N, n_M)` is a morphism of the tangent groupoid to itself:
/// `Ts∘N = n_M∘Ts`, `Tt∘N = n_M∘Tt`, `N∘Tu = Tu∘n_M`, `N(V·W) = NV·NW`.
pub fn check_endo_multiplicative(
    g: &PairGroupoid,
    nt: &EndoField,
    n_m: &EndoField,
) -> Result<CheckReport, GroupoidError> {
    ensure_same(g.total(), nt.space()).map_err(|_| GroupoidError::WrongChart)?;
    ensure_same(g.base(), n_m.space()).map_err(|_| GroupoidError::WrongChart)?;
    let n = g.dim();
    let sym = FormalSymbols::new(g.base(), &["p0", "p1", "p2", "v0", "v1", "v2"]);
    let pt: Vec<Vec<Poly>> = (0..3).map(|i| sym.block(&format!("p{i}"))).collect();
    let vs: Vec<Vec<Poly>> = (0..3).map(|i| sym.block(&format!("v{i}"))).collect();
    let el = |a: usize, b: usize| TangentElement {
        at: PairArrow { x: pt[a].clone(), y: pt[b].clone() },
        v: vs[a].clone(),
        w: vs[b].clone(),
    };
    let (v, w) = (el(0, 1), el(1, 2));

    let arrow_map = |e: &TangentElement| {
        let out = apply_at(nt, &e.at.coords(), &e.vector());
        TangentElement { at: e.at.clone(), v: out[..n].to_vec(), w: out[n..].to_vec() }
    };
    let object_map = |o: &TangentVector| TangentVector {
        point: o.point.clone(),
        vector: apply_at(n_m, &o.point, &o.vector),
    };
    Ok(check_morphism(&TangentGroupoid, &TangentGroupoid, arrow_map, object_map, (&v, &w)))
}

/// Collapses a condition report to its first failure (or a pass).
pub fn first_failure(id: &str, r: &CheckReport) -> CheckEntry {
    match r.entries().iter().find(|e| !e.passed()) {
        Some(e) => {
            let mut out = CheckEntry::new(id, e.verdict);
            out.witness = e.witness.clone();
            out.note = Some(format!("first failing condition: {}", e.check_id));
            out
        }
        None => CheckEntry::pass(id),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairgroupoid::Convention;
    use crate::symexpr::{parse_expr, ChartSpace};

    fn so3(b: &std::sync::Arc<ChartSpace>) -> Bivector {
        let e = |t: &str| parse_expr(t, b).unwrap();
        Bivector::from_upper(b, [(0, 1, e("x3")), (1, 2, e("x1")), (0, 2, e("-x2"))]).unwrap()
    }

    #[test]
    fn zero_bivector_is_multiplicative() {
        let g = PairGroupoid::new(&ChartSpace::numbered("x", 2).unwrap());
        let r = check_bivector_multiplicative(&g, &Bivector::zero(g.total())).unwrap();
        assert!(r.all_pass());
    }

    #[test]
    fn difference_structure_is_multiplicative() {
        let g = PairGroupoid::new(&ChartSpace::numbered("x", 3).unwrap());
        let right = g.extend_bivector(&so3(g.base()), Convention::Right);
        let left = g.extend_bivector(&so3(g.base()), Convention::Left);
        let p = right.add(&left.scale(&Poly::from_int(g.total(), -1)));
        let r = check_bivector_multiplicative(&g, &p).unwrap();
        assert!(r.all_pass(), "{}", r.to_text());
    }

    #[test]
    fn right_extension_of_symplectic_plane_fails_composability() {
        let g = PairGroupoid::new(&ChartSpace::numbered("x", 2).unwrap());
        let l = Bivector::from_upper(g.base(), [(0, 1, Poly::one(g.base()))]).unwrap();
        let p = g.extend_bivector(&l, Convention::Right);
        let r = check_bivector_multiplicative(&g, &p).unwrap();
        let entry = first_failure("m", &r);
        assert!(!entry.passed());
        assert_eq!(entry.note.as_deref(), Some("first failing condition: composability"));
        let w = entry.witness.unwrap();
        // Ts(P♯C1) = 0 while Tt(P♯C2) = Λ♯(−η), whose first entry is η₂.
        assert_eq!(w.expr, "-c1_x2");
        assert!(r.get("base_map").unwrap().passed());
        assert!(r.get("multiplicative").unwrap().passed());
    }

    #[test]
    fn endo_examples() {
        let g = PairGroupoid::new(&ChartSpace::numbered("x", 2).unwrap());
        let b = g.base();
        let id = check_endo_multiplicative(&g, &EndoField::identity(g.total()), &EndoField::identity(b)).unwrap();
        assert!(id.all_pass());

        let e = |t: &str| parse_expr(t, b).unwrap();
        let n = EndoField::new(b, vec![vec![e("x2"), e("x1")], vec![e("1"), e("0")]]).unwrap();
        let r = check_endo_multiplicative(&g, &g.extend_endo(&n, Convention::Right), &n).unwrap();
        assert!(r.all_pass(), "{}", r.to_text());

        let mut cross = EndoField::identity(g.total());
        cross.set(0, 2, Poly::one(g.total())).unwrap();
        let r = check_endo_multiplicative(&g, &cross, &EndoField::identity(b)).unwrap();
        assert!(r.get("source").unwrap().passed());
        let target = r.get("target").unwrap();
        assert!(!target.passed());
        assert_eq!(target.witness.as_ref().unwrap().expr, "v1_x1");
    }
}
