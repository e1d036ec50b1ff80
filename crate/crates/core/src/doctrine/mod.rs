//! Indexed meet-semilattices over a base category and their law checkers.
//!
//! A `Doctrine` assigns a fiber to every base object and a meet-preserving
//! monotone reindexing map to every base arrow, contravariantly. The checkers
//! in this module and its submodules decide, over a declared window, whether
//! the assignment is functorial, carries fibered equality (left adjoints
//! along diagonals with Frobenius reciprocity), existential and universal
//! quantifiers along projections (with Beck-Chevalley), implications, and
//! comprehensions — and they witness every failure.

mod checks;
mod comprehension;
mod quantifiers;
mod quotient;

pub use checks::{
    check_elementary, check_existential, check_implicational, check_primary, check_universal,
};
pub use comprehension::{
    find_comprehension, has_comprehensive_equalizers, weak_equalizer_via_diagonal, CompMode,
    Comprehension,
};
pub use quantifiers::{
    check_auc, exists_along, forall_along, implication_via_comprehension,
};
pub use quotient::{classify_quotient, QuotientFlags};

use crate::cat::{Arr, Category, Functor, Obj, Product};
use crate::error::{Error, Result};
use crate::order::{self, Elem, MeetSemilattice, MonotoneMap};
use crate::report::{Counterexample, Report};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Fibers larger than this are never materialized as tables.
pub(crate) const MATERIALIZE_BOUND: u64 = 1 << 14;

/// Data of a slice-class fiber: the poset of classes plus a representative
/// arrow into the carrier for each class.
#[derive(Debug, Clone)]
pub struct ClassFiber {
    pub lat: MeetSemilattice,
    pub reps: Vec<Arr>,
}

#[derive(Debug)]
pub(crate) enum DocKind {
    /// Subsets with inverse-image reindexing over the finite-set base.
    Power,
    /// Explicit fibers and reindex maps.
    Table {
        fibers: HashMap<Obj, MeetSemilattice>,
        reindex: HashMap<Arr, MonotoneMap>,
    },
    /// Subobject classes (`strict`) or slice classes up to mutual factoring
    /// (weak); fibers are materialized on demand.
    Sub { strict: bool },
    /// Descent-data fibers over the base of a quotient completion; the
    /// underlying doctrine lives inside the base category.
    Quot,
    /// fiber(D) = outer.fiber(F D), reindex along F.
    ChangeBase { outer: Doctrine, f: Functor },
}

pub(crate) struct DocInner {
    pub base: Category,
    pub kind: DocKind,
    pub class_cache: Mutex<HashMap<Obj, Arc<ClassFiber>>>,
    pub delta_cache: Mutex<HashMap<Obj, Elem>>,
}

impl fmt::Debug for DocInner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Doctrine({:?} over {})", self.kind, self.base.window_name())
    }
}

/// A contravariant assignment of meet-semilattice fibers to a base category.
#[derive(Debug, Clone)]
pub struct Doctrine {
    pub(crate) inner: Arc<DocInner>,
}

/// A fiber element over A×A together with the carrier and the trace of the
/// three verified inequalities.
#[derive(Debug, Clone)]
pub struct EquivalenceRelationWitness {
    pub carrier: Obj,
    pub relation: Elem,
    pub trace: [String; 3],
}

impl Doctrine {
    pub(crate) fn new(base: Category, kind: DocKind) -> Doctrine {
        Doctrine {
            inner: Arc::new(DocInner {
                base,
                kind,
                class_cache: Mutex::new(HashMap::new()),
                delta_cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    /// Explicit doctrine from fiber and reindex tables.
    pub fn from_tables(
        base: Category,
        fibers: HashMap<Obj, MeetSemilattice>,
        reindex: HashMap<Arr, MonotoneMap>,
    ) -> Doctrine {
        Doctrine::new(base, DocKind::Table { fibers, reindex })
    }

    pub fn base(&self) -> &Category {
        &self.inner.base
    }

    pub fn name(&self) -> String {
        match &self.inner.kind {
            DocKind::Power => format!("powerset over {}", self.base().window_name()),
            DocKind::Table { .. } => format!("table doctrine over {}", self.base().window_name()),
            DocKind::Sub { strict: true } => {
                format!("subobjects of {}", self.base().window_name())
            }
            DocKind::Sub { strict: false } => {
                format!("weak slices of {}", self.base().window_name())
            }
            DocKind::Quot => format!("quotient completion over {}", self.base().window_name()),
            DocKind::ChangeBase { outer, .. } => format!("change of base of {}", outer.name()),
        }
    }

    /// The fiber over a base object.
    pub fn fiber(&self, a: &Obj) -> MeetSemilattice {
        match &self.inner.kind {
            DocKind::Power => MeetSemilattice::power(a.fin_size()),
            DocKind::Table { fibers, .. } => fibers
                .get(a)
                .unwrap_or_else(|| panic!("no fiber over {a}"))
                .clone(),
            DocKind::Sub { .. } => self.class_fiber(a).lat.clone(),
            DocKind::Quot => crate::completion::q_fiber(self, a),
            DocKind::ChangeBase { outer, f } => outer.fiber(&f.apply_obj(a)),
        }
    }

    /// The reindexing map P_f : P(B) → P(A) for f : A → B.
    pub fn reindex(&self, f: &Arr) -> MonotoneMap {
        match &self.inner.kind {
            DocKind::Power => {
                let table = f.fin_table().to_vec();
                let tgt = self.base().tgt(f).fin_size();
                MonotoneMap::power_preimage(table, tgt)
            }
            DocKind::Table { reindex, .. } => reindex
                .get(f)
                .unwrap_or_else(|| panic!("no reindex map for {f}"))
                .clone(),
            DocKind::Sub { strict } => self.sub_reindex(f, *strict),
            DocKind::Quot => crate::completion::q_reindex(self, f),
            DocKind::ChangeBase { outer, f: fun } => outer.reindex(&fun.apply_arr(f)),
        }
    }

    pub fn top(&self, a: &Obj) -> Elem {
        self.fiber(a).top()
    }

    pub fn leq(&self, a: &Obj, x: Elem, y: Elem) -> bool {
        self.fiber(a).leq(x, y)
    }

    pub fn meet(&self, a: &Obj, x: Elem, y: Elem) -> Elem {
        self.fiber(a).meet(x, y)
    }

    pub fn label_elem(&self, a: &Obj, x: Elem) -> String {
        self.fiber(a).label(x)
    }

    /// Class fiber (lattice plus representative arrows) for slice-style
    /// doctrines; cached per object with idempotent fill.
    pub fn class_fiber(&self, a: &Obj) -> Arc<ClassFiber> {
        if let Some(hit) = self.inner.class_cache.lock().unwrap().get(a) {
            return hit.clone();
        }
        let strict = match &self.inner.kind {
            DocKind::Sub { strict } => *strict,
            _ => panic!("class fibers exist only for slice-style doctrines"),
        };
        let built = Arc::new(crate::builders::build_class_fiber(self.base(), a, strict));
        let mut cache = self.inner.class_cache.lock().unwrap();
        cache.entry(a.clone()).or_insert(built).clone()
    }

    fn sub_reindex(&self, f: &Arr, strict: bool) -> MonotoneMap {
        let a = self.base().src(f);
        let b = self.base().tgt(f);
        let src_fiber = self.class_fiber(&b);
        let tgt_fiber = self.class_fiber(&a);
        let graph: Vec<Elem> = src_fiber
            .reps
            .iter()
            .map(|m| {
                let span = crate::cat::weak_pullback(self.base(), f, m, strict)
                    .unwrap_or_else(|e| panic!("reindexing failed: {e}"));
                crate::builders::class_of(self.base(), &tgt_fiber, &span.left)
            })
            .collect();
        MonotoneMap::graph(src_fiber.lat.clone(), tgt_fiber.lat.clone(), graph)
    }

    /// δ_A = ∃_{Δ_A}(⊤_A), the fibered equality predicate on A×A.
    pub fn delta(&self, a: &Obj) -> Result<Elem> {
        if let Some(hit) = self.inner.delta_cache.lock().unwrap().get(a) {
            return Ok(*hit);
        }
        let diag = self.base().diagonal(a);
        let m = self.reindex(&diag);
        let l = order::left_adjoint(&m)
            .map_err(|e| Error::NoAdjoint(format!("δ over {a}: {e}")))?;
        let d = l.apply(self.top(a));
        self.inner
            .delta_cache
            .lock()
            .unwrap()
            .entry(a.clone())
            .or_insert(d);
        Ok(d)
    }

    /// The two projections of the chosen square A×A.
    pub fn square(&self, a: &Obj) -> Product {
        self.base().product(a, a)
    }

    /// The swap arrow ⟨pr2, pr1⟩ : A×A → A×A.
    pub fn swap(&self, a: &Obj) -> Arr {
        let p = self.square(a);
        self.base().pair(&p.pr2, &p.pr1)
    }

    /// The P-kernel of f : A → B, the equivalence relation P_{f×f}(δ_B).
    pub fn kernel_of(&self, f: &Arr) -> Result<EquivalenceRelationWitness> {
        let b = self.base().tgt(f);
        let delta_b = self.delta(&b)?;
        let ff = self.base().times(f, f);
        let rel = self.reindex(&ff).apply(delta_b);
        let a = self.base().src(f);
        let rep = self.is_equivalence_relation(&a, rel);
        if !rep.pass {
            return Err(Error::InvariantViolation(format!(
                "kernel of {} is not an equivalence relation: {}",
                self.base().arr_label(f),
                rep.counterexample.unwrap()
            )));
        }
        Ok(EquivalenceRelationWitness {
            carrier: a,
            relation: rel,
            trace: [
                "reflexivity verified".into(),
                "symmetry verified".into(),
                "transitivity verified".into(),
            ],
        })
    }

    /// Checks the three equivalence-relation inequalities for ρ over A×A.
    pub fn is_equivalence_relation(&self, a: &Obj, rho: Elem) -> Report {
        let wname = self.base().window_name();
        let aa = self.square(a).obj;
        let mut checked = 0u64;

        let delta = match self.delta(a) {
            Ok(d) => d,
            Err(e) => {
                return Report::fail(
                    "equivalence-relation",
                    0,
                    wname,
                    Counterexample::new(e.to_string()),
                )
            }
        };
        checked += 1;
        if !self.leq(&aa, delta, rho) {
            return Report::fail(
                "equivalence-relation",
                checked,
                wname,
                Counterexample::new("reflexivity fails: δ ≰ ρ")
                    .with("carrier", self.base().obj_label(a))
                    .with("ρ", self.label_elem(&aa, rho)),
            );
        }

        checked += 1;
        let swapped = self.reindex(&self.swap(a)).apply(rho);
        if !self.leq(&aa, rho, swapped) {
            return Report::fail(
                "equivalence-relation",
                checked,
                wname,
                Counterexample::new("symmetry fails: ρ ≰ P⟨pr2,pr1⟩(ρ)")
                    .with("carrier", self.base().obj_label(a))
                    .with("ρ", self.label_elem(&aa, rho)),
            );
        }

        checked += 1;
        let t = self.triple(a);
        let r12 = self.reindex(&t.p12).apply(rho);
        let r23 = self.reindex(&t.p23).apply(rho);
        let r13 = self.reindex(&t.p13).apply(rho);
        if !self.leq(&t.obj, self.meet(&t.obj, r12, r23), r13) {
            return Report::fail(
                "equivalence-relation",
                checked,
                wname,
                Counterexample::new("transitivity fails")
                    .with("carrier", self.base().obj_label(a))
                    .with("ρ", self.label_elem(&aa, rho)),
            );
        }

        Report::pass("equivalence-relation", checked, wname)
    }

    /// Wraps ρ as a witness if the three inequalities hold.
    pub fn equivalence_witness(&self, a: &Obj, rho: Elem) -> Result<EquivalenceRelationWitness> {
        let rep = self.is_equivalence_relation(a, rho);
        if !rep.pass {
            return Err(Error::NotAnEquivalenceRelation(
                rep.counterexample.unwrap().to_string(),
            ));
        }
        Ok(EquivalenceRelationWitness {
            carrier: a.clone(),
            relation: rho,
            trace: [
                format!("δ ≤ {}", self.label_elem(&self.square(a).obj, rho)),
                "ρ ≤ P⟨pr2,pr1⟩(ρ)".into(),
                "P⟨pr1,pr2⟩(ρ) ∧ P⟨pr2,pr3⟩(ρ) ≤ P⟨pr1,pr3⟩(ρ)".into(),
            ],
        })
    }

    /// All equivalence relations over `a`, in fiber enumeration order.
    /// Fails if the fiber over A×A is too large to enumerate.
    pub fn equivalence_relations(&self, a: &Obj) -> Result<Vec<Elem>> {
        let aa = self.square(a).obj;
        let fib = self.fiber(&aa);
        if fib.len() > MATERIALIZE_BOUND {
            return Err(Error::FiberTooLarge(format!(
                "fiber over {} has {} elements",
                self.base().obj_label(&aa),
                fib.len()
            )));
        }
        Ok(fib
            .iter()
            .filter(|&rho| self.is_equivalence_relation(a, rho).pass)
            .collect())
    }

    /// The sub-order of descent data des(ρ) ⊆ P(A): those α with
    /// P_pr1(α) ∧ ρ ≤ P_pr2(α). Closed under finite meets (asserted).
    pub fn descent_data(&self, rho: &EquivalenceRelationWitness) -> Result<MeetSemilattice> {
        let a = &rho.carrier;
        let p = self.square(a);
        let fib = self.fiber(a);
        if fib.len() > MATERIALIZE_BOUND {
            return Err(Error::FiberTooLarge(format!(
                "fiber over {} has {} elements",
                self.base().obj_label(a),
                fib.len()
            )));
        }
        let m1 = self.reindex(&p.pr1);
        let m2 = self.reindex(&p.pr2);
        let paa = p.obj.clone();
        let elems: Vec<Elem> = fib
            .iter()
            .filter(|&alpha| {
                let lhs = self.meet(&paa, m1.apply(alpha), rho.relation);
                self.leq(&paa, lhs, m2.apply(alpha))
            })
            .collect();
        order::sub_lattice(&fib, elems)
            .map_err(|e| Error::InvariantViolation(format!("descent data over {a}: {e}")))
    }

    /// The triple product (A×A)×A with the three projections to A.
    pub(crate) fn triple(&self, a: &Obj) -> Triple {
        let sq = self.square(a);
        let t = self.base().product(&sq.obj, a);
        let pr1 = self.base().compose(&sq.pr1, &t.pr1);
        let pr2 = self.base().compose(&sq.pr2, &t.pr1);
        let pr3 = t.pr2.clone();
        let c = self.base();
        Triple {
            obj: t.obj.clone(),
            p12: c.pair(&pr1, &pr2),
            p23: c.pair(&pr2, &pr3),
            p13: c.pair(&pr1, &pr3),
        }
    }
}

/// The object (A×A)×A with the pairings of its three projections to A.
pub(crate) struct Triple {
    pub obj: Obj,
    pub p12: Arr,
    pub p23: Arr,
    pub p13: Arr,
}
