//! Comprehension search and comprehensive equalizers.
//!
//! A comprehension of α over A is an arrow {|α|} : X → A through which every
//! window arrow landing in α factors — uniquely for a strict comprehension.
//! The search scans window-sourced arrows into A in enumeration order and
//! recomputes the strict/full flags for whichever witness comes first.

use super::Doctrine;
use crate::cat::{self, Arr, Obj};
use crate::error::{Error, Result};
use crate::order::Elem;
use crate::report::{Counterexample, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompMode {
    Strict,
    Weak,
}

/// A found comprehension with its recomputed flags.
#[derive(Debug, Clone)]
pub struct Comprehension {
    pub arrow: Arr,
    pub strict: bool,
    pub full: bool,
}

/// Searches window arrows into `a` for a (weak) comprehension of `alpha`.
pub fn find_comprehension(
    p: &Doctrine,
    a: &Obj,
    alpha: Elem,
    mode: CompMode,
) -> Result<Comprehension> {
    let c = p.base();
    let window = c.window();
    // Competitors: all window arrows into a landing in alpha.
    let mut competitors: Vec<Arr> = Vec::new();
    for y in &window {
        for g in c.hom(y, a) {
            let top_y = p.top(y);
            if p.leq(y, top_y, p.reindex(&g).apply(alpha)) {
                competitors.push(g);
            }
        }
    }
    let mut best_partial: Option<Arr> = None;
    for x in &window {
        for m in c.hom(x, a) {
            let top_x = p.top(x);
            if !p.leq(x, top_x, p.reindex(&m).apply(alpha)) {
                continue;
            }
            if best_partial.is_none() {
                best_partial = Some(m.clone());
            }
            let mut weak = true;
            let mut strict = true;
            for g in &competitors {
                let y = c.src(g);
                let mediators = c
                    .hom(&y, x)
                    .into_iter()
                    .filter(|h| c.compose(&m, h) == *g)
                    .count();
                if mediators == 0 {
                    weak = false;
                    break;
                }
                if mediators > 1 {
                    strict = false;
                }
            }
            if !weak || (mode == CompMode::Strict && !strict) {
                continue;
            }
            // fullness: ⊤_X ≤ P_m(β) implies α ≤ β, over the whole fiber.
            let fib_a = p.fiber(a);
            let mm = p.reindex(&m);
            let full = fib_a
                .iter()
                .all(|beta| !p.leq(x, top_x, mm.apply(beta)) || fib_a.leq(alpha, beta));
            return Ok(Comprehension {
                arrow: m.clone(),
                strict,
                full,
            });
        }
    }
    let partial = best_partial
        .map(|m| format!("best partial witness {}", c.arr_label(&m)))
        .unwrap_or_else(|| "no arrow lands in the element".into());
    Err(Error::NotFound(format!(
        "no {} comprehension of {} over {} in window {}; {partial}",
        if mode == CompMode::Strict { "strict" } else { "weak" },
        p.label_elem(a, alpha),
        c.obj_label(a),
        c.window_name()
    )))
}

/// Pass iff for every window A the diagonal Δ_A is a stable (weak)
/// comprehension of δ_A: comprehension property for Δ itself, plus for every
/// window arrow f into A×A a comprehension of P_f(δ) exists — with the weak
/// pullback square in weak mode.
pub fn has_comprehensive_equalizers(p: &Doctrine, mode: CompMode) -> Report {
    let c = p.base();
    let wname = c.window_name();
    let window = c.window();
    let mut checked = 0u64;
    for a in &window {
        let delta = match p.delta(a) {
            Ok(d) => d,
            Err(e) => {
                return Report::fail(
                    "comprehensive-equalizers",
                    checked,
                    wname,
                    Counterexample::new(e.to_string()).with("object", c.obj_label(a)),
                )
            }
        };
        let sq = c.product(a, a);
        let diag = c.diagonal(a);
        // Δ_A itself must satisfy the (strict, by monicity of diagonals)
        // comprehension property for δ_A over the window.
        checked += 1;
        if let Err(e) = verify_is_comprehension(p, &sq.obj, delta, &diag, mode) {
            return Report::fail(
                "comprehensive-equalizers",
                checked,
                wname,
                Counterexample::new(e.to_string()).with("object", c.obj_label(a)),
            );
        }
        // Stability along window arrows into A×A.
        for aprime in &window {
            for f in c.hom(aprime, &sq.obj) {
                checked += 1;
                let pulled = p.reindex(&f).apply(delta);
                match find_comprehension(p, aprime, pulled, mode) {
                    Err(e) => {
                        return Report::fail(
                            "comprehensive-equalizers",
                            checked,
                            wname,
                            Counterexample::new("reindexed δ has no comprehension")
                                .with("A", c.obj_label(a))
                                .with("f", c.arr_label(&f))
                                .with("detail", e),
                        )
                    }
                    Ok(comp) => {
                        if mode == CompMode::Weak {
                            // The mediating arrow completes a weak pullback
                            // square over (Δ, f).
                            let lifted = c.compose(&f, &comp.arrow);
                            let med = c
                                .hom(&c.src(&comp.arrow), a)
                                .into_iter()
                                .find(|h| c.compose(&diag, h) == lifted);
                            let ok = med.is_some_and(|h| {
                                let span = cat::Span {
                                    apex: c.src(&comp.arrow),
                                    left: h,
                                    right: comp.arrow.clone(),
                                };
                                cat::span_weakly_covers(c, &diag, &f, &span, &window)
                            });
                            if !ok {
                                return Report::fail(
                                    "comprehensive-equalizers",
                                    checked,
                                    wname,
                                    Counterexample::new("stability square not a weak pullback")
                                        .with("A", c.obj_label(a))
                                        .with("f", c.arr_label(&f)),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Report::pass("comprehensive-equalizers", checked, wname)
}

/// Verifies that `m` is a (weak) comprehension of `alpha` over the window.
fn verify_is_comprehension(
    p: &Doctrine,
    a: &Obj,
    alpha: Elem,
    m: &Arr,
    mode: CompMode,
) -> Result<()> {
    let c = p.base();
    let x = c.src(m);
    if !p.leq(&x, p.top(&x), p.reindex(m).apply(alpha)) {
        return Err(Error::InvariantViolation(format!(
            "⊤ ≰ P_m({}) for m = {}",
            p.label_elem(a, alpha),
            c.arr_label(m)
        )));
    }
    for y in c.window() {
        for g in c.hom(&y, a) {
            if !p.leq(&y, p.top(&y), p.reindex(&g).apply(alpha)) {
                continue;
            }
            let mediators = c
                .hom(&y, &x)
                .into_iter()
                .filter(|h| c.compose(m, h) == g)
                .count();
            if mediators == 0 {
                return Err(Error::NotFound(format!(
                    "{} does not factor through {}",
                    c.arr_label(&g),
                    c.arr_label(m)
                )));
            }
            if mode == CompMode::Strict && mediators != 1 {
                return Err(Error::InvariantViolation(format!(
                    "{} factors through {} in {} ways",
                    c.arr_label(&g),
                    c.arr_label(m),
                    mediators
                )));
            }
        }
    }
    Ok(())
}

/// The (weak) equalizer of a parallel pair via the diagonal: the
/// comprehension of P_{⟨f,g⟩}(δ_A), verified to equalize and to factor all
/// window competitors.
pub fn weak_equalizer_via_diagonal(
    p: &Doctrine,
    f: &Arr,
    g: &Arr,
    mode: CompMode,
) -> Result<Arr> {
    let c = p.base();
    let x = c.src(f);
    let a = c.tgt(f);
    assert_eq!(x, c.src(g), "parallel pair required");
    assert_eq!(a, c.tgt(g), "parallel pair required");
    let delta = p.delta(&a)?;
    let fg = c.pair(f, g);
    let pulled = p.reindex(&fg).apply(delta);
    let comp = find_comprehension(p, &x, pulled, mode)?;
    let e = comp.arrow;
    if c.compose(f, &e) != c.compose(g, &e) {
        return Err(Error::InvariantViolation(format!(
            "comprehension {} does not equalize",
            c.arr_label(&e)
        )));
    }
    for t in c.window() {
        for u in c.hom(&t, &x) {
            if c.compose(f, &u) != c.compose(g, &u) {
                continue;
            }
            let mediators = c
                .hom(&t, &c.src(&e))
                .into_iter()
                .filter(|h| c.compose(&e, h) == u)
                .count();
            if mediators == 0 || (mode == CompMode::Strict && mediators != 1) {
                return Err(Error::InvariantViolation(format!(
                    "equalizer universal property fails at {}",
                    c.arr_label(&u)
                )));
            }
        }
    }
    Ok(e)
}
