//! The checker ladder: primary, elementary, existential, implicational,
//! universal. Each checker quantifies exhaustively over the window and the
//! fibers involved and reports the first counterexample in enumeration order.

use super::{DocKind, Doctrine};
use crate::cat::Obj;
use crate::error::Error;
use crate::exec;
use crate::order::{self, Elem, MonotoneMap};
use crate::report::{Counterexample, Report};

/// Bound on |src fiber| × |tgt fiber| for the generic Frobenius loop; power
/// fibers beyond it go through the mask-specialized loop instead.
const GENERIC_PAIR_BOUND: u64 = 1 << 24;

/// Exhaustive Frobenius reciprocity for a reindexing `m` with left adjoint
/// `l`: for all α in the source fiber of `m` and β in its target fiber,
/// `l(m(α) ∧ β) = α ∧ l(β)`. Returns the first failing pair.
fn frobenius_failure(m: &MonotoneMap, l: &MonotoneMap) -> Result<Option<(Elem, Elem)>, Error> {
    let big = &m.src;
    let small = &m.tgt;
    let (nb, ns) = (big.len(), small.len());
    if big.power_carrier().is_some() && small.power_carrier().is_some() {
        // Mask-specialized sweep: precompute l on the whole small fiber.
        let etab: Vec<u64> = (0..ns).map(|b| l.apply(Elem::Mask(b)).mask()).collect();
        let bad_alpha = exec::first_failure(nb, |alpha| {
            let pa = m.apply(Elem::Mask(alpha)).mask();
            for (b, &eb) in etab.iter().enumerate() {
                if etab[(pa & b as u64) as usize] != alpha & eb {
                    return false;
                }
            }
            true
        });
        if let Some(alpha) = bad_alpha {
            let pa = m.apply(Elem::Mask(alpha)).mask();
            let beta = (0..ns)
                .find(|&b| etab[(pa & b) as usize] != alpha & etab[b as usize])
                .expect("witness recheck");
            return Ok(Some((Elem::Mask(alpha), Elem::Mask(beta))));
        }
        return Ok(None);
    }
    if nb.saturating_mul(ns) > GENERIC_PAIR_BOUND {
        return Err(Error::FiberTooLarge(format!(
            "Frobenius sweep over {nb}×{ns} fiber elements"
        )));
    }
    let bad = exec::first_hit(nb * ns, |i| {
        let alpha = big.elem(i / ns);
        let beta = small.elem(i % ns);
        let lhs = l.apply(small.meet(m.apply(alpha), beta));
        let rhs = big.meet(alpha, l.apply(beta));
        if lhs != rhs {
            Some((alpha, beta))
        } else {
            None
        }
    });
    Ok(bad)
}

/// Pass iff reindexing is contravariantly functorial and every reindex map
/// preserves finite meets, over the window.
pub fn check_primary(p: &Doctrine) -> Report {
    let c = p.base();
    let wname = c.window_name();
    let window = c.window();
    let mut checked = 0u64;

    if let DocKind::Table { fibers, reindex } = &p.inner.kind {
        // Explicit data can be malformed; surface that as a failure rather
        // than a panic downstream.
        for a in &window {
            if !fibers.contains_key(a) {
                return Report::fail(
                    "primary",
                    checked,
                    wname,
                    Counterexample::new("missing fiber").with("object", c.obj_label(a)),
                );
            }
        }
        for a in &window {
            for b in &window {
                for f in c.hom(a, b) {
                    match reindex.get(&f) {
                        None => {
                            return Report::fail(
                                "primary",
                                checked,
                                wname,
                                Counterexample::new("missing reindex map")
                                    .with("arrow", c.arr_label(&f)),
                            )
                        }
                        Some(m) => {
                            if m.src.len() != fibers[b].len() || m.tgt.len() != fibers[a].len() {
                                return Report::fail(
                                    "primary",
                                    checked,
                                    wname,
                                    Counterexample::new("reindex endpoints mismatch fibers")
                                        .with("arrow", c.arr_label(&f)),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    for a in &window {
        let fib = p.fiber(a);
        let m = p.reindex(&c.identity(a));
        for x in fib.iter() {
            checked += 1;
            if m.apply(x) != x {
                return Report::fail(
                    "primary",
                    checked,
                    wname,
                    Counterexample::new("reindex(id) ≠ id")
                        .with("object", c.obj_label(a))
                        .with("element", fib.label(x)),
                );
            }
        }
    }

    for a in &window {
        for b in &window {
            for f in c.hom(a, b) {
                let mf = p.reindex(&f);
                let rep = order::preserves_meets(&mf);
                checked += rep.checked;
                if !rep.pass {
                    let mut w = rep.counterexample.unwrap();
                    w.items.push(("arrow".into(), c.arr_label(&f)));
                    return Report::fail("primary", checked, wname, w);
                }
                for x in &window {
                    for g in c.hom(b, x) {
                        let lhs = p.reindex(&c.compose(&g, &f));
                        let rhs = mf.compose_after(&p.reindex(&g));
                        checked += 1;
                        if !lhs.same_graph(&rhs) {
                            return Report::fail(
                                "primary",
                                checked,
                                wname,
                                Counterexample::new("reindex(g∘f) ≠ reindex(f)∘reindex(g)")
                                    .with("f", c.arr_label(&f))
                                    .with("g", c.arr_label(&g)),
                            );
                        }
                    }
                }
            }
        }
    }

    Report::pass("primary", checked, wname)
}

/// Pass iff left adjoints along every `id_C × Δ_A` exist, commute with
/// reindexing in C, and satisfy Frobenius reciprocity as an equality over
/// all fiber elements.
pub fn check_elementary(p: &Doctrine) -> Report {
    let c = p.base();
    let wname = c.window_name();
    let window = c.window();
    let mut checked = 0u64;

    for cc in &window {
        for a in &window {
            let d = c.times(&c.identity(cc), &c.diagonal(a));
            let m = p.reindex(&d);
            let l = match order::left_adjoint(&m) {
                Ok(l) => l,
                Err(e) => {
                    return Report::fail(
                        "elementary",
                        checked,
                        wname,
                        Counterexample::new("no left adjoint along id×Δ")
                            .with("C", c.obj_label(cc))
                            .with("A", c.obj_label(a))
                            .with("at", e),
                    )
                }
            };
            checked += m.src.len() * m.tgt.len();
            match frobenius_failure(&m, &l) {
                Err(e) => {
                    return Report::fail(
                        "elementary",
                        checked,
                        wname,
                        Counterexample::new(e.to_string()),
                    )
                }
                Ok(Some((alpha, beta))) => {
                    return Report::fail(
                        "elementary",
                        checked,
                        wname,
                        Counterexample::new("Frobenius reciprocity fails")
                            .with("C", c.obj_label(cc))
                            .with("A", c.obj_label(a))
                            .with("α", m.src.label(alpha))
                            .with("β", m.tgt.label(beta)),
                    )
                }
                Ok(None) => {}
            }

            // Adjoints along id×Δ must commute with reindexing along
            // h × id : C'×A → C×A.
            let sq = c.product(a, a);
            for cprime in &window {
                for h in c.hom(cprime, cc) {
                    let dprime = c.times(&c.identity(cprime), &c.diagonal(a));
                    let lprime = match order::left_adjoint(&p.reindex(&dprime)) {
                        Ok(l) => l,
                        Err(_) => continue, // already reported above for (C',A)
                    };
                    let h_a = c.times(&h, &c.identity(a));
                    let h_aa = c.times(&h, &c.identity(&sq.obj));
                    let small = p.reindex(&h_a);
                    let bigm = p.reindex(&h_aa);
                    for beta in m.tgt.iter() {
                        checked += 1;
                        if lprime.apply(small.apply(beta)) != bigm.apply(l.apply(beta)) {
                            return Report::fail(
                                "elementary",
                                checked,
                                wname,
                                Counterexample::new("∃ along id×Δ not natural in C")
                                    .with("C'", c.obj_label(cprime))
                                    .with("C", c.obj_label(cc))
                                    .with("A", c.obj_label(a))
                                    .with("h", c.arr_label(&h))
                                    .with("β", m.tgt.label(beta)),
                            );
                        }
                    }
                }
            }
        }
    }

    Report::pass("elementary", checked, wname)
}

/// Shared core for the existential/universal checks: adjoints along window
/// projections plus Beck-Chevalley over the canonical squares with a
/// projection edge, plus Frobenius for the existential case.
fn check_quantifier(p: &Doctrine, existential: bool) -> Report {
    let name = if existential { "existential" } else { "universal" };
    let c = p.base();
    let wname = c.window_name();
    let window = c.window();
    let mut checked = 0u64;

    let adjoint = |m: &MonotoneMap| -> Result<MonotoneMap, order::AdjointFailure> {
        if existential {
            order::left_adjoint(m)
        } else {
            order::right_adjoint(m)
        }
    };

    for a1 in &window {
        for a2 in &window {
            let prod = c.product(a1, a2);
            for side in [1usize, 2] {
                let (pr, ai) = if side == 1 {
                    (&prod.pr1, a1)
                } else {
                    (&prod.pr2, a2)
                };
                let m = p.reindex(pr);
                let adj = match adjoint(&m) {
                    Ok(l) => l,
                    Err(e) => {
                        return Report::fail(
                            name,
                            checked,
                            wname,
                            Counterexample::new("no adjoint along projection")
                                .with("A1", c.obj_label(a1))
                                .with("A2", c.obj_label(a2))
                                .with("side", side)
                                .with("at", e),
                        )
                    }
                };

                if existential {
                    checked += m.src.len() * m.tgt.len();
                    match frobenius_failure(&m, &adj) {
                        Err(e) => {
                            return Report::fail(
                                name,
                                checked,
                                wname,
                                Counterexample::new(e.to_string()),
                            )
                        }
                        Ok(Some((alpha, beta))) => {
                            return Report::fail(
                                name,
                                checked,
                                wname,
                                Counterexample::new("Frobenius reciprocity fails")
                                    .with("A1", c.obj_label(a1))
                                    .with("A2", c.obj_label(a2))
                                    .with("α", m.src.label(alpha))
                                    .with("β", m.tgt.label(beta)),
                            )
                        }
                        Ok(None) => {}
                    }
                }

                // Beck-Chevalley over the canonical squares: pull the
                // projection back along any window arrow into its target.
                for aprime in &window {
                    for f in c.hom(aprime, ai) {
                        let (pprime, fprime) = if side == 1 {
                            let pp = c.product(aprime, a2);
                            let fp = c.times(&f, &c.identity(a2));
                            (pp, fp)
                        } else {
                            let pp = c.product(a1, aprime);
                            let fp = c.times(&c.identity(a1), &f);
                            (pp, fp)
                        };
                        let prp = if side == 1 { &pprime.pr1 } else { &pprime.pr2 };
                        let adjp = match adjoint(&p.reindex(prp)) {
                            Ok(l) => l,
                            Err(e) => {
                                return Report::fail(
                                    name,
                                    checked,
                                    wname,
                                    Counterexample::new("no adjoint along pulled-back projection")
                                        .with("A'", c.obj_label(aprime))
                                        .with("at", e),
                                )
                            }
                        };
                        let mf = p.reindex(&f);
                        let mfp = p.reindex(&fprime);
                        let fib = p.fiber(&prod.obj);
                        for beta in fib.iter() {
                            checked += 1;
                            let lhs = adjp.apply(mfp.apply(beta));
                            let rhs = mf.apply(adj.apply(beta));
                            if lhs != rhs {
                                return Report::fail(
                                    name,
                                    checked,
                                    wname,
                                    Counterexample::new("Beck-Chevalley fails")
                                        .with("A1", c.obj_label(a1))
                                        .with("A2", c.obj_label(a2))
                                        .with("side", side)
                                        .with("f", c.arr_label(&f))
                                        .with("β", fib.label(beta)),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    Report::pass(name, checked, wname)
}

/// Pass iff left adjoints along all window projections exist and satisfy
/// Beck-Chevalley and Frobenius as equalities.
pub fn check_existential(p: &Doctrine) -> Report {
    check_quantifier(p, true)
}

/// Pass iff right adjoints along all window projections exist and satisfy
/// Beck-Chevalley as an equality.
pub fn check_universal(p: &Doctrine) -> Report {
    check_quantifier(p, false)
}

/// Pass iff every α ∧ − admits a right adjoint, fiber by fiber over the
/// window; cross-checked against the doctrine's implication operator.
pub fn check_implicational(p: &Doctrine) -> Report {
    let c = p.base();
    let wname = c.window_name();
    let mut checked = 0u64;
    for a in c.window() {
        let fib = p.fiber(&a);
        for alpha in fib.iter() {
            let endo: Vec<Elem> = fib.iter().map(|x| fib.meet(alpha, x)).collect();
            let m = MonotoneMap::graph(fib.clone(), fib.clone(), endo);
            match order::right_adjoint(&m) {
                Ok(r) => {
                    for beta in fib.iter() {
                        checked += 1;
                        let via_doctrine = p.implies(&a, alpha, beta);
                        match via_doctrine {
                            Ok(v) if v == r.apply(beta) => {}
                            Ok(v) => {
                                return Report::fail(
                                    "implicational",
                                    checked,
                                    wname,
                                    Counterexample::new("implication disagrees with adjoint")
                                        .with("object", c.obj_label(&a))
                                        .with("α", fib.label(alpha))
                                        .with("β", fib.label(beta))
                                        .with("operator", fib.label(v))
                                        .with("adjoint", fib.label(r.apply(beta))),
                                )
                            }
                            Err(e) => {
                                return Report::fail(
                                    "implicational",
                                    checked,
                                    wname,
                                    Counterexample::new(e.to_string()),
                                )
                            }
                        }
                    }
                }
                Err(e) => {
                    return Report::fail(
                        "implicational",
                        checked,
                        wname,
                        Counterexample::new("α ∧ − has no right adjoint")
                            .with("object", c.obj_label(&a))
                            .with("α", fib.label(alpha))
                            .with("at", e),
                    )
                }
            }
        }
    }
    Report::pass("implicational", checked, wname)
}

impl Doctrine {
    /// Heyting implication in the fiber over `a`, when it exists: the value
    /// at `beta` of the right adjoint to `alpha ∧ −`.
    pub fn implies(&self, a: &Obj, alpha: Elem, beta: Elem) -> Result<Elem, Error> {
        let fib = self.fiber(a);
        if fib.power_carrier().is_some() {
            let full = fib.top().mask();
            return Ok(Elem::Mask((!alpha.mask() | beta.mask()) & full));
        }
        // max{γ : α ∧ γ ≤ β} by scan.
        let cands: Vec<Elem> = fib
            .iter()
            .filter(|&g| fib.leq(fib.meet(alpha, g), beta))
            .collect();
        cands
            .iter()
            .copied()
            .find(|&m| cands.iter().all(|&g| fib.leq(g, m)))
            .ok_or_else(|| {
                Error::NoAdjoint(format!(
                    "no implication {} ⇒ {} over {}",
                    fib.label(alpha),
                    fib.label(beta),
                    self.base().obj_label(a)
                ))
            })
    }
}
