use crate::report::{CheckEntry, CheckReport, Verdict, Witness};
use crate::symexpr::ensure_same;

use super::fields::{Bivector, EndoField, OneForm};
use super::ops::{endo_compose_bivector, half, magri_morosi, nijenhuis_torsion, schouten_square};
use super::TensorError;

/// Check ids produced by [`pn_manifold_check`], in report order.
pub const PN_ITEMS: [&str; 4] = ["poisson", "nijenhuis", "compatible", "concomitant"];

/// The four Poisson–Nijenhuis conditions for `(P, N)` on one chart.
///
/// The concomitant is tested on coordinate differentials only; it is
/// function-bilinear, so that is a complete test.
pub fn pn_manifold_check(p: &Bivector, nt: &EndoField) -> Result<CheckReport, TensorError> {
    ensure_same(p.space(), nt.space())?;
    let s = p.space();
    let names = s.names();
    let n = s.dim();
    let mut report = CheckReport::new();

    let sq = schouten_square(p);
    let w = sq.entries().find(|(_, t)| !t.is_zero()).map(|((i, j, k), t)| {
        Witness::from_poly(format!("jac({},{},{})", names[i], names[j], names[k]), &half(t))
    });
    report.push(CheckEntry::from_witness(PN_ITEMS[0], w));

    let torsion = nijenhuis_torsion(nt);
    let w = torsion.first_nonzero().map(|(k, i, j, v)| {
        Witness::from_poly(format!("torsion(d/d{}, d/d{})^{}", names[i], names[j], names[k]), v)
    });
    report.push(CheckEntry::from_witness(PN_ITEMS[1], w));

    match endo_compose_bivector(nt, p) {
        Ok(_) => {
            report.push(CheckEntry::pass(PN_ITEMS[2]));
            let mut witness = None;
            'outer: for i in 0..n {
                for j in i + 1..n {
                    let c = magri_morosi(p, nt, &OneForm::coordinate(s, i), &OneForm::coordinate(s, j))?;
                    if let Some(k) = (0..n).find(|&k| !c.component(k).is_zero()) {
                        witness = Some(Witness::from_poly(
                            format!("C(d{}, d{})_{}", names[i], names[j], names[k]),
                            c.component(k),
                        ));
                        break 'outer;
                    }
                }
            }
            report.push(CheckEntry::from_witness(PN_ITEMS[3], witness));
        }
        Err(TensorError::NotABivector { i, j, witness }) => {
            report.push(CheckEntry::new(PN_ITEMS[2], Verdict::Fail).with_witness(Witness::from_poly(
                format!("(N.P)^({},{}) + (N.P)^({},{})", names[i], names[j], names[j], names[i]),
                &witness,
            )));
            report.push(
                CheckEntry::new(PN_ITEMS[3], Verdict::Error)
                    .with_note("concomitant undefined: N∘P♯ is not a bivector"),
            );
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}
