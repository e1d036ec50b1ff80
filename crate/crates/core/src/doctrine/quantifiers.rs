//! Quantification along arbitrary arrows and the unique-choice check.
//!
//! In an existential elementary doctrine the left adjoint along any arrow
//! f : A → B is definable from the projection adjoints and equality:
//! ∃_f(α) = ∃_{pr2}(P_{f×id}(δ_B) ∧ P_{pr1}(α)), and dually with ⇒ and ∀
//! for the right adjoint. These are the general quantifiers used by the
//! unique-choice inequality.

use super::Doctrine;
use crate::cat::{Arr, Obj};
use crate::error::{Error, Result};
use crate::order::{self, Elem};
use crate::report::{Counterexample, Report};

impl Doctrine {
    /// Left adjoint along the chosen projection of `a1 × a2` (side 1 or 2),
    /// as a map on fiber elements.
    pub fn exists_proj(&self, a1: &Obj, a2: &Obj, side: usize) -> Result<order::MonotoneMap> {
        let p = self.base().product(a1, a2);
        let pr = if side == 1 { &p.pr1 } else { &p.pr2 };
        order::left_adjoint(&self.reindex(pr))
            .map_err(|e| Error::NoAdjoint(format!("∃ along projection: {e}")))
    }

    /// Right adjoint along the chosen projection of `a1 × a2`.
    pub fn forall_proj(&self, a1: &Obj, a2: &Obj, side: usize) -> Result<order::MonotoneMap> {
        let p = self.base().product(a1, a2);
        let pr = if side == 1 { &p.pr1 } else { &p.pr2 };
        order::right_adjoint(&self.reindex(pr))
            .map_err(|e| Error::NoAdjoint(format!("∀ along projection: {e}")))
    }
}

/// ∃_f(α) = ∃_{pr2}(P_{f×id_B}(δ_B) ∧ P_{pr1}(α)) for f : A → B and α over A.
pub fn exists_along(p: &Doctrine, f: &Arr, alpha: Elem) -> Result<Elem> {
    let c = p.base();
    let a = c.src(f);
    let b = c.tgt(f);
    let pab = c.product(&a, &b);
    let delta_b = p.delta(&b)?;
    let f_id = c.times(f, &c.identity(&b));
    let graph_pred = p.reindex(&f_id).apply(delta_b);
    let alpha_up = p.reindex(&pab.pr1).apply(alpha);
    let inner = p.meet(&pab.obj, graph_pred, alpha_up);
    let ex = order::left_adjoint(&p.reindex(&pab.pr2))
        .map_err(|e| Error::NoAdjoint(format!("∃ along pr2 of {}×{}: {e}", a, b)))?;
    Ok(ex.apply(inner))
}

/// ∀_f(α) = ∀_{pr2}(P_{f×id_B}(δ_B) ⇒ P_{pr1}(α)) for f : A → B and α over A.
pub fn forall_along(p: &Doctrine, f: &Arr, alpha: Elem) -> Result<Elem> {
    let c = p.base();
    let a = c.src(f);
    let b = c.tgt(f);
    let pab = c.product(&a, &b);
    let delta_b = p.delta(&b)?;
    let f_id = c.times(f, &c.identity(&b));
    let graph_pred = p.reindex(&f_id).apply(delta_b);
    let alpha_up = p.reindex(&pab.pr1).apply(alpha);
    let inner = p.implies(&pab.obj, graph_pred, alpha_up)?;
    let fa = order::right_adjoint(&p.reindex(&pab.pr2))
        .map_err(|e| Error::NoAdjoint(format!("∀ along pr2 of {}×{}: {e}", a, b)))?;
    Ok(fa.apply(inner))
}

/// α ⇒ β computed as ∀_{{|α|}}(P_{{|α|}}(β)) through a full weak
/// comprehension of α; the residuation law is verified exhaustively over
/// the fiber before the value is returned.
pub fn implication_via_comprehension(
    p: &Doctrine,
    a: &Obj,
    alpha: Elem,
    beta: Elem,
) -> Result<Elem> {
    let comp = super::find_comprehension(p, a, alpha, super::CompMode::Weak)?;
    if !comp.full {
        return Err(Error::NotFound(format!(
            "comprehension of {} is not full",
            p.label_elem(a, alpha)
        )));
    }
    let m = p.reindex(&comp.arrow);
    let r = order::right_adjoint(&m)
        .map_err(|e| Error::NoAdjoint(format!("∀ along comprehension: {e}")))?;
    let value = r.apply(m.apply(beta));
    let fib = p.fiber(a);
    for gamma in fib.iter() {
        let direct = fib.leq(gamma, value);
        let residuated = fib.leq(fib.meet(alpha, gamma), beta);
        if direct != residuated {
            return Err(Error::InvariantViolation(format!(
                "residuation fails at γ = {}",
                fib.label(gamma)
            )));
        }
    }
    Ok(value)
}

/// The unique-choice inequality for the pair (A, B): for every relation ρ
/// over A×B, totality ∧ single-valuedness ≤ ∃h ∀x ρ(x, w(h,x)), where w is
/// a weak evaluation from A to B. All quantifiers are the general ones.
pub fn check_auc(p: &Doctrine, a: &Obj, b: &Obj) -> Result<Report> {
    let c = p.base();
    let wname = c.window_name();
    let (wobj, w) = crate::cat::find_weak_evaluation(c, a, b)?;
    let pab = c.product(a, b);
    let fib_ab = p.fiber(&pab.obj);
    if fib_ab.len() > super::MATERIALIZE_BOUND {
        return Err(Error::FiberTooLarge(format!(
            "relation fiber over {} has {} elements",
            c.obj_label(&pab.obj),
            fib_ab.len()
        )));
    }

    // Carriers shared by all relations.
    let bb = c.product(b, b);
    let t = c.product(&bb.obj, a); // (B×B)×A, coordinates (y2, y3, x1)
    let x1 = t.pr2.clone();
    let y2 = c.compose(&bb.pr1, &t.pr1);
    let y3 = c.compose(&bb.pr2, &t.pr1);
    let pt12 = c.pair(&x1, &y2); // (x1,y2) : T → A×B
    let pt13 = c.pair(&x1, &y3);
    let pt23 = c.pair(&y2, &y3); // (y2,y3) : T → B×B
    let delta_b = p.delta(b)?;

    let pwa = c.product(&wobj, a);
    let graph = c.pair(&pwa.pr2, &w); // (x, w(h,x)) : W×A → A×B

    let one = c.terminal();
    let fib1 = p.fiber(&one);

    let ex = p.exists_proj(a, b, 1)?;
    let fa_t = p.forall_proj(&bb.obj, a, 1)?;
    let fa_w = p.forall_proj(&wobj, a, 1)?;
    let m12 = p.reindex(&pt12);
    let m13 = p.reindex(&pt13);
    let d23 = p.reindex(&pt23).apply(delta_b);
    let mg = p.reindex(&graph);

    let mut checked = 0u64;
    for rho in fib_ab.iter() {
        checked += 1;
        // totality: ∀_{!_A} ∃_{pr1}(ρ)
        let tot = forall_along(p, &c.bang(a), ex.apply(rho))?;
        // single-valuedness: ∀_{!_{B×B}} ∀_{T→B×B}((ρ12 ∧ ρ13) ⇒ δ_B(y2,y3))
        let r12 = m12.apply(rho);
        let r13 = m13.apply(rho);
        let body = p.implies(&t.obj, p.meet(&t.obj, r12, r13), d23)?;
        let sv = forall_along(p, &c.bang(&bb.obj), fa_t.apply(body))?;
        // right side: ∃_{!_W} ∀_{W×A→W} P_{(x, w(h,x))}(ρ)
        let lifted = mg.apply(rho);
        let rhs = exists_along(p, &c.bang(&wobj), fa_w.apply(lifted))?;

        let lhs = fib1.meet(tot, sv);
        if !fib1.leq(lhs, rhs) {
            return Ok(Report::fail(
                "unique-choice",
                checked,
                wname,
                Counterexample::new("AUC inequality fails")
                    .with("A", c.obj_label(a))
                    .with("B", c.obj_label(b))
                    .with("ρ", fib_ab.label(rho))
                    .with("lhs", fib1.label(lhs))
                    .with("rhs", fib1.label(rhs)),
            ));
        }
    }
    Ok(Report::pass("unique-choice", checked, wname))
}
