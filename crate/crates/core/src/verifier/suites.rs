use crate::pairgroupoid::{
    check_bivector_multiplicative, check_endo_multiplicative, first_failure, Convention, PairGroupoid,
};
use crate::report::{CheckEntry, CheckReport, Witness};
use crate::symexpr::Poly;
use crate::tensorcalc::{lie_bracket, pn_manifold_check, sharp, Bivector, EndoField, OneForm, VectorField, PN_ITEMS};

use super::{AlgebroidData, VerifyError};

/// Items compared between the algebroid and the groupoid level.
pub const MATCHED_ITEMS: [&str; 4] = PN_ITEMS;

/// Schouten square, torsion, `n∘Λ♯ = Λ♯∘n*` and the concomitant, on the base.
pub fn run_algebroid_suite(data: &AlgebroidData) -> CheckReport {
    pn_manifold_check(data.lambda(), data.n()).expect("Λ and n share a chart")
}

/// The PN conditions on the total space, multiplicativity of `P♯` and of
/// `(N, n_M)`, and (informational) invariance of `P` and `N` under `conv`.
pub fn run_groupoid_suite(
    g: &PairGroupoid,
    p: &Bivector,
    nt: &EndoField,
    n_m: &EndoField,
    conv: Convention,
) -> Result<CheckReport, VerifyError> {
    let mut report = pn_manifold_check(p, nt)?;
    let invariant_p = g.bivector_invariance(p, conv);

    let mut mult = first_failure("bivector_multiplicative", &check_bivector_multiplicative(g, p)?);
    if !mult.passed() && invariant_p.is_ok() {
        let prior = mult.note.take().unwrap_or_default();
        mult = mult.with_note(format!(
            "{prior}; P is {conv}-invariant, and a nonzero invariant bivector is not multiplicative on the pair groupoid"
        ));
    }
    report.push(mult);
    report.push(first_failure("endo_multiplicative", &check_endo_multiplicative(g, nt, n_m)?));
    report.push(
        CheckEntry::from_witness("invariant_bivector", invariant_p.err())
            .informational()
            .with_note(format!("{conv}-invariance of P")),
    );
    report.push(
        CheckEntry::from_witness("invariant_endo", g.endo_invariance(nt, conv).err())
            .informational()
            .with_note(format!("{conv}-invariance of N")),
    );
    Ok(report)
}

fn first_component_difference(label: &str, a: &[Poly], b: &[Poly]) -> Option<Witness> {
    a.iter()
        .zip(b)
        .enumerate()
        .map(|(i, (x, y))| (i, x - y))
        .find(|(_, d)| !d.is_zero())
        .map(|(i, d)| Witness::from_poly(format!("{label}[{}]", i + 1), &d))
}

fn bivector_difference(label: &str, a: &Bivector, b: &Bivector) -> Option<Witness> {
    let names = a.space().names();
    a.upper_entries()
        .zip(b.upper_entries())
        .map(|((i, j, x), (_, _, y))| (i, j, x - y))
        .find(|(_, _, d)| !d.is_zero())
        .map(|(i, j, d)| Witness::from_poly(format!("{label}^({},{})", names[i], names[j]), &d))
}

fn endo_difference(label: &str, a: &EndoField, b: &EndoField) -> Option<Witness> {
    let names = a.space().names();
    let n = names.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, a.entry(i, j) - b.entry(i, j)))
        .find(|(_, _, d)| !d.is_zero())
        .map(|(i, j, d)| Witness::from_poly(format!("{label}^{}_{}", names[i], names[j]), &d))
}

/// Fields on which bracket preservation of the extension is tested:
/// `∂ᵢ`, `xᵢ∂ᵢ`, `n∂ᵢ` and `Λ♯dxᵢ`.
fn bracket_samples(data: &AlgebroidData) -> Vec<VectorField> {
    let s = data.base();
    let mut out = Vec::new();
    for i in 0..s.dim() {
        let e = VectorField::coordinate(s, i);
        let xi = Poly::var(s, i).expect("index in range");
        out.push(e.scale(&xi));
        out.push(data.n().apply(&e).expect("same chart"));
        out.push(sharp(data.lambda(), &OneForm::coordinate(s, i)).expect("same chart"));
        out.push(e);
    }
    out
}

/// Algebroid suite on `(Λ, n)`, the PN conditions and endo multiplicativity
/// on the `conv`-invariant extension, restriction round trips, bracket
/// preservation of the extension, and a per-item comparison of the two
/// levels. Bivector multiplicativity is reported but kept informational.
pub fn run_correspondence(data: &AlgebroidData, conv: Convention) -> CheckReport {
    let g = PairGroupoid::new(data.base());
    let algebroid = run_algebroid_suite(data);
    let p = g.extend_bivector(data.lambda(), conv);
    let nt = g.extend_endo(data.n(), conv);
    let groupoid = pn_manifold_check(&p, &nt).expect("extensions share the total chart");

    let mut report = CheckReport::new();
    report.extend_prefixed("algebroid.", algebroid.clone());
    report.extend_prefixed("groupoid.", groupoid.clone());
    let endo = check_endo_multiplicative(&g, &nt, data.n()).expect("charts of g");
    report.push(first_failure("groupoid.endo_multiplicative", &endo));

    let roundtrip = match g.restrict_bivector(&p, conv) {
        Ok(l) => bivector_difference("restrict(ext L) - L", &l, data.lambda()),
        Err(e) => Some(Witness::scalar("restrict(ext L)", e)),
    };
    report.push(CheckEntry::from_witness("roundtrip.bivector", roundtrip));
    let back = g.restrict_endo(&nt, conv);
    report.push(CheckEntry::from_witness("roundtrip.endo", endo_difference("restrict(ext n) - n", &back, data.n())));

    let samples = bracket_samples(data);
    let mut witness = None;
    'outer: for (a, x) in samples.iter().enumerate() {
        for y in &samples[a + 1..] {
            let lhs = g.extend_vector(&lie_bracket(x, y).expect("same chart"), conv);
            let rhs = lie_bracket(&g.extend_vector(x, conv), &g.extend_vector(y, conv)).expect("same chart");
            witness = first_component_difference("ext[X,Y] - [ext X, ext Y]", lhs.components(), rhs.components());
            if witness.is_some() {
                break 'outer;
            }
        }
    }
    report.push(CheckEntry::from_witness("extension.bracket", witness));

    for item in MATCHED_ITEMS {
        let a = algebroid.get(item).expect("item present").verdict;
        let b = groupoid.get(item).expect("item present").verdict;
        let w = (a != b).then(|| Witness::scalar("algebroid vs groupoid", format!("{a} vs {b}")));
        report.push(CheckEntry::from_witness(format!("match.{item}"), w));
    }

    let mult = check_bivector_multiplicative(&g, &p).expect("charts of g");
    report.push(
        first_failure("groupoid.bivector_multiplicative", &mult)
            .informational()
            .with_note("not part of the correspondence: invariance does not imply multiplicativity here"),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::symexpr::{parse_expr, rat, ChartSpace};
    use crate::verifier::{perturbed_bivector, so3_bivector};

    fn zero3() -> [crate::symexpr::Rational; 3] {
        [rat(0, 1), rat(0, 1), rat(0, 1)]
    }

    #[test]
    fn algebroid_examples() {
        let s = ChartSpace::numbered("x", 3).unwrap();
        let so3 = so3_bivector(&s, &rat(1, 1), zero3());
        let d = AlgebroidData::new(so3, EndoField::scalar(&s, &Poly::from_int(&s, 3))).unwrap();
        assert!(run_algebroid_suite(&d).all_pass());

        let d = AlgebroidData::new(perturbed_bivector(&s, &rat(1, 1), &rat(1, 1)), EndoField::identity(&s)).unwrap();
        let r = run_algebroid_suite(&d);
        let v: Vec<_> = r.entries().iter().map(|e| e.verdict).collect();
        assert_eq!(v, vec![Verdict::Fail, Verdict::Pass, Verdict::Pass, Verdict::Pass]);

        let n = EndoField::new(&s, vec![
            vec![parse_expr("x1", &s).unwrap(), Poly::zero(&s), Poly::zero(&s)],
            vec![Poly::zero(&s), parse_expr("x1", &s).unwrap(), Poly::zero(&s)],
            vec![Poly::zero(&s), Poly::zero(&s), Poly::one(&s)],
        ])
        .unwrap();
        let d = AlgebroidData::new(Bivector::zero(&s), n).unwrap();
        assert!(run_algebroid_suite(&d).all_pass());
    }

    #[test]
    fn groupoid_examples() {
        let s = ChartSpace::numbered("x", 3).unwrap();
        let g = PairGroupoid::new(&s);
        let so3 = so3_bivector(&s, &rat(1, 1), zero3());
        let right = g.extend_bivector(&so3, Convention::Right);
        let left = g.extend_bivector(&so3, Convention::Left);
        let classical = right.add(&left.scale(&Poly::from_int(g.total(), -1)));
        let id = EndoField::identity(&s);
        let r = run_groupoid_suite(&g, &classical, &EndoField::identity(g.total()), &id, Convention::Right).unwrap();
        assert!(r.entries().iter().filter(|e| !e.informational).all(|e| e.passed()), "{}", r.to_text());
        assert!(!r.get("invariant_bivector").unwrap().passed());

        let c = EndoField::scalar(&s, &Poly::from_int(&s, 2));
        let nt = g.extend_endo(&c, Convention::Right);
        let r = run_groupoid_suite(&g, &right, &nt, &c, Convention::Right).unwrap();
        for item in PN_ITEMS {
            assert!(r.get(item).unwrap().passed());
        }
        assert!(r.get("endo_multiplicative").unwrap().passed());
        let m = r.get("bivector_multiplicative").unwrap();
        assert!(!m.passed());
        assert!(m.note.as_deref().unwrap().contains("right-invariant"));
        assert!(r.get("invariant_bivector").unwrap().passed());

        let r = run_groupoid_suite(&g, &Bivector::zero(g.total()), &EndoField::identity(g.total()), &id, Convention::Right)
            .unwrap();
        assert!(r.entries().iter().filter(|e| e.check_id != "invariant_bivector").all(|e| e.passed()));
    }

    #[test]
    fn correspondence_examples() {
        let s = ChartSpace::numbered("x", 3).unwrap();
        let so3 = so3_bivector(&s, &rat(1, 1), zero3());
        for conv in [Convention::Right, Convention::Left] {
            let d = AlgebroidData::new(so3.clone(), EndoField::scalar(&s, &Poly::from_int(&s, 5))).unwrap();
            let r = run_correspondence(&d, conv);
            assert!(r.all_pass(), "{}", r.to_text());
            assert!(r.get("groupoid.bivector_multiplicative").unwrap().informational);

            let d = AlgebroidData::new(perturbed_bivector(&s, &rat(2, 1), &rat(1, 1)), EndoField::identity(&s)).unwrap();
            let r = run_correspondence(&d, conv);
            assert!(!r.get("algebroid.poisson").unwrap().passed());
            assert!(!r.get("groupoid.poisson").unwrap().passed());
            assert!(r.get("match.poisson").unwrap().passed());
            assert!(!r.all_pass());
        }
        let d = AlgebroidData::new(Bivector::zero(&s), EndoField::identity(&s)).unwrap();
        let r = run_correspondence(&d, Convention::Right);
        assert!(r.entries().iter().all(|e| e.passed()), "{}", r.to_text());
    }
}
