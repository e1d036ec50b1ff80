//! Computable base categories with chosen finite-product structure.
//!
//! A `Category` is one of: the category of canonical finite sets windowed by
//! cardinality, an explicit table category, the base of a quotient
//! completion, or a Grothendieck total category. Objects and arrows are
//! immutable values compared structurally, so everything here is safe to
//! share across threads.
//!
//! Window-quantified universal properties (monicity, pullbacks, weak
//! evaluations) are honest approximations: every report names the window.

use crate::doctrine::Doctrine;
use crate::error::{Error, Result};
use crate::order::Elem;
use crate::report::{Counterexample, Report};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Object of the base category of a quotient completion: a carrier together
/// with an equivalence relation element of the fiber over carrier × carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotObj {
    pub carrier: Obj,
    pub relation: Elem,
}

/// Arrow of a quotient completion: an equivalence class of base arrows with
/// a canonical (enumeration-least admissible) representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotArr {
    pub src: QuotObj,
    pub tgt: QuotObj,
    pub rep: Arr,
}

/// Object of a Grothendieck total category: (carrier, fiber element).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalObj {
    pub carrier: Obj,
    pub pred: Elem,
}

/// Arrow of a total category over a poset-fibered doctrine: the base arrow
/// (the 2-cell datum is the inequality fact, which carries no information).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalArr {
    pub src: TotalObj,
    pub tgt: TotalObj,
    pub base: Arr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obj {
    /// Canonical finite set {0..n-1}.
    Fin(usize),
    /// Object of a table category, by index.
    Named(u32),
    Quot(Arc<QuotObj>),
    Total(Arc<TotalObj>),
}

impl Obj {
    pub fn fin_size(&self) -> usize {
        match self {
            Obj::Fin(n) => *n,
            _ => panic!("expected a finite-set object"),
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Fin(n) => write!(f, "{n}"),
            Obj::Named(i) => write!(f, "#{i}"),
            Obj::Quot(q) => write!(f, "({},{})", q.carrier, q.relation),
            Obj::Total(t) => write!(f, "({},{})", t.carrier, t.pred),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arr {
    /// Function between canonical finite sets; source size is the table
    /// length, `tgt` the target size.
    FinFn { tgt: usize, table: Arc<Vec<u8>> },
    /// Arrow of a table category, by index.
    Named(u32),
    Quot(Arc<QuotArr>),
    Total(Arc<TotalArr>),
}

impl Arr {
    pub fn fin_fn(tgt: usize, table: Vec<u8>) -> Arr {
        Arr::FinFn {
            tgt,
            table: Arc::new(table),
        }
    }

    pub fn fin_table(&self) -> &[u8] {
        match self {
            Arr::FinFn { table, .. } => table,
            _ => panic!("expected a finite-set arrow"),
        }
    }

    /// Representative base arrow of a quotient-completion class.
    pub fn quot_rep(&self) -> &Arr {
        match self {
            Arr::Quot(q) => &q.rep,
            _ => panic!("expected a quotient-completion arrow"),
        }
    }
}

impl fmt::Display for Arr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arr::FinFn { table, tgt } => {
                let entries: Vec<String> = table.iter().map(|v| v.to_string()).collect();
                write!(f, "[{}]->{}", entries.join(","), tgt)
            }
            Arr::Named(i) => write!(f, "#{i}"),
            Arr::Quot(q) => write!(f, "[{}]", q.rep),
            Arr::Total(t) => write!(f, "{}", t.base),
        }
    }
}

/// Chosen product of two objects: the object and its two projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub obj: Obj,
    pub pr1: Arr,
    pub pr2: Arr,
}

/// Explicit finite category with chosen structure.
#[derive(Debug)]
pub struct TableCat {
    pub obj_names: Vec<String>,
    pub arr_names: Vec<String>,
    pub arr_src: Vec<u32>,
    pub arr_tgt: Vec<u32>,
    /// identity arrow per object
    pub identities: Vec<u32>,
    /// (g, f) -> g∘f for tgt(f) = src(g)
    pub compose: HashMap<(u32, u32), u32>,
    pub terminal: u32,
    /// (a, b) -> (product object, pr1, pr2)
    pub products: HashMap<(u32, u32), (u32, u32, u32)>,
}

impl TableCat {
    pub fn hom_ids(&self, a: u32, b: u32) -> impl Iterator<Item = u32> + '_ {
        (0..self.arr_src.len() as u32)
            .filter(move |&i| self.arr_src[i as usize] == a && self.arr_tgt[i as usize] == b)
    }
}

/// Base of a quotient completion; class computation is delegated to the
/// completion module and cached per object pair (idempotent fill).
pub struct QuotCat {
    pub p: Doctrine,
    pub window: Vec<Obj>,
    pub(crate) hom_cache: Mutex<HashMap<(Obj, Obj), Arc<Vec<Arr>>>>,
}

impl fmt::Debug for QuotCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotCat({} window objects)", self.window.len())
    }
}

/// Grothendieck total category of a doctrine.
#[derive(Debug)]
pub struct TotalCat {
    pub p: Doctrine,
}

#[derive(Debug)]
pub(crate) enum CatInner {
    FinSet { bound: usize },
    Table(TableCat),
    Quot(QuotCat),
    Total(TotalCat),
}

/// A locally finite category with a declared object window, chosen terminal
/// object and chosen binary products.
#[derive(Debug, Clone)]
pub struct Category {
    pub(crate) inner: Arc<CatInner>,
}

/// Guard for hom-set enumeration; anything above this is a misuse of the
/// desk-scale checkers.
const HOM_BOUND: u64 = 1 << 22;

fn fin_hom(m: usize, n: usize) -> Vec<Arr> {
    if m == 0 {
        return vec![Arr::fin_fn(n, Vec::new())];
    }
    if n == 0 {
        return Vec::new();
    }
    let count = (n as u64).checked_pow(m as u32).filter(|&c| c <= HOM_BOUND);
    let count = count.unwrap_or_else(|| panic!("hom({m},{n}) too large to enumerate"));
    let mut out = Vec::with_capacity(count as usize);
    let mut table = vec![0u8; m];
    loop {
        out.push(Arr::fin_fn(n, table.clone()));
        // lexicographic odometer, last position fastest
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (table[i] as usize) + 1 < n {
                table[i] += 1;
                for t in table.iter_mut().skip(i + 1) {
                    *t = 0;
                }
                break;
            }
        }
    }
}

impl Category {
    /// The category of canonical finite sets {0..n-1} for n ≤ bound, with
    /// products formed on demand and renumbered canonically.
    pub fn finset(bound: usize) -> Category {
        Category {
            inner: Arc::new(CatInner::FinSet { bound }),
        }
    }

    pub fn table(t: TableCat) -> Category {
        Category {
            inner: Arc::new(CatInner::Table(t)),
        }
    }

    pub(crate) fn quot(q: QuotCat) -> Category {
        Category {
            inner: Arc::new(CatInner::Quot(q)),
        }
    }

    pub(crate) fn total(t: TotalCat) -> Category {
        Category {
            inner: Arc::new(CatInner::Total(t)),
        }
    }

    pub fn is_finset(&self) -> bool {
        matches!(&*self.inner, CatInner::FinSet { .. })
    }

    pub fn as_quot(&self) -> Option<&QuotCat> {
        match &*self.inner {
            CatInner::Quot(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_table(&self) -> Option<&TableCat> {
        match &*self.inner {
            CatInner::Table(t) => Some(t),
            _ => None,
        }
    }

    /// Declared object window, in enumeration order.
    pub fn window(&self) -> Vec<Obj> {
        match &*self.inner {
            CatInner::FinSet { bound } => (0..=*bound).map(Obj::Fin).collect(),
            CatInner::Table(t) => (0..t.obj_names.len() as u32).map(Obj::Named).collect(),
            CatInner::Quot(q) => q.window.clone(),
            CatInner::Total(t) => crate::builders::total_window(&t.p),
        }
    }

    pub fn window_name(&self) -> String {
        match &*self.inner {
            CatInner::FinSet { bound } => format!("FinSet(bound={bound})"),
            CatInner::Table(t) => format!("table({} objects)", t.obj_names.len()),
            CatInner::Quot(q) => format!("Q[{}]", q.p.base().window_name()),
            CatInner::Total(t) => format!("Gr[{}]", t.p.base().window_name()),
        }
    }

    pub fn hom(&self, a: &Obj, b: &Obj) -> Vec<Arr> {
        match &*self.inner {
            CatInner::FinSet { .. } => fin_hom(a.fin_size(), b.fin_size()),
            CatInner::Table(t) => match (a, b) {
                (Obj::Named(x), Obj::Named(y)) => t.hom_ids(*x, *y).map(Arr::Named).collect(),
                _ => panic!("foreign object in table category"),
            },
            CatInner::Quot(q) => crate::completion::q_hom(q, a, b).to_vec(),
            CatInner::Total(t) => crate::builders::total_hom(&t.p, a, b),
        }
    }

    pub fn src(&self, f: &Arr) -> Obj {
        match (&*self.inner, f) {
            (CatInner::FinSet { .. }, Arr::FinFn { table, .. }) => Obj::Fin(table.len()),
            (CatInner::Table(t), Arr::Named(i)) => Obj::Named(t.arr_src[*i as usize]),
            (CatInner::Quot(_), Arr::Quot(q)) => Obj::Quot(Arc::new(q.src.clone())),
            (CatInner::Total(_), Arr::Total(t)) => Obj::Total(Arc::new(t.src.clone())),
            _ => panic!("foreign arrow"),
        }
    }

    pub fn tgt(&self, f: &Arr) -> Obj {
        match (&*self.inner, f) {
            (CatInner::FinSet { .. }, Arr::FinFn { tgt, .. }) => Obj::Fin(*tgt),
            (CatInner::Table(t), Arr::Named(i)) => Obj::Named(t.arr_tgt[*i as usize]),
            (CatInner::Quot(_), Arr::Quot(q)) => Obj::Quot(Arc::new(q.tgt.clone())),
            (CatInner::Total(_), Arr::Total(t)) => Obj::Total(Arc::new(t.tgt.clone())),
            _ => panic!("foreign arrow"),
        }
    }

    pub fn identity(&self, a: &Obj) -> Arr {
        match &*self.inner {
            CatInner::FinSet { .. } => {
                let n = a.fin_size();
                Arr::fin_fn(n, (0..n as u8).collect())
            }
            CatInner::Table(t) => match a {
                Obj::Named(i) => Arr::Named(t.identities[*i as usize]),
                _ => panic!("foreign object"),
            },
            CatInner::Quot(q) => crate::completion::q_identity(q, a),
            CatInner::Total(tc) => crate::builders::total_identity(&tc.p, a),
        }
    }

    /// g ∘ f
    pub fn compose(&self, g: &Arr, f: &Arr) -> Arr {
        match &*self.inner {
            CatInner::FinSet { .. } => {
                let (gt, ft) = (g.fin_table(), f.fin_table());
                let table: Vec<u8> = ft.iter().map(|&x| gt[x as usize]).collect();
                let tgt = match g {
                    Arr::FinFn { tgt, .. } => *tgt,
                    _ => unreachable!(),
                };
                Arr::fin_fn(tgt, table)
            }
            CatInner::Table(t) => match (g, f) {
                (Arr::Named(gi), Arr::Named(fi)) => Arr::Named(
                    *t.compose
                        .get(&(*gi, *fi))
                        .unwrap_or_else(|| panic!("missing composite #{gi}∘#{fi}")),
                ),
                _ => panic!("foreign arrow"),
            },
            CatInner::Quot(q) => crate::completion::q_compose(q, g, f),
            CatInner::Total(tc) => crate::builders::total_compose(&tc.p, g, f),
        }
    }

    pub fn terminal(&self) -> Obj {
        match &*self.inner {
            CatInner::FinSet { .. } => Obj::Fin(1),
            CatInner::Table(t) => Obj::Named(t.terminal),
            CatInner::Quot(q) => crate::completion::q_terminal(q),
            CatInner::Total(tc) => crate::builders::total_terminal(&tc.p),
        }
    }

    /// The chosen unique arrow into the terminal object.
    pub fn bang(&self, a: &Obj) -> Arr {
        match &*self.inner {
            CatInner::FinSet { .. } => Arr::fin_fn(1, vec![0; a.fin_size()]),
            CatInner::Table(t) => match a {
                Obj::Named(i) => {
                    let candidates: Vec<u32> = t.hom_ids(*i, t.terminal).collect();
                    assert_eq!(candidates.len(), 1, "terminal violated at object #{i}");
                    Arr::Named(candidates[0])
                }
                _ => panic!("foreign object"),
            },
            CatInner::Quot(q) => crate::completion::q_bang(q, a),
            CatInner::Total(tc) => crate::builders::total_bang(&tc.p, a),
        }
    }

    /// Chosen product with projections.
    pub fn product(&self, a: &Obj, b: &Obj) -> Product {
        match &*self.inner {
            CatInner::FinSet { .. } => {
                let (m, n) = (a.fin_size(), b.fin_size());
                let p = m * n;
                assert!(p <= 255, "product carrier exceeds the representable size");
                let pr1: Vec<u8> = (0..p).map(|k| (k / n.max(1)) as u8).collect();
                let pr2: Vec<u8> = (0..p).map(|k| (k % n.max(1)) as u8).collect();
                Product {
                    obj: Obj::Fin(p),
                    pr1: Arr::fin_fn(m, pr1),
                    pr2: Arr::fin_fn(n, pr2),
                }
            }
            CatInner::Table(t) => match (a, b) {
                (Obj::Named(x), Obj::Named(y)) => {
                    let (p, p1, p2) = *t
                        .products
                        .get(&(*x, *y))
                        .unwrap_or_else(|| panic!("no chosen product for (#{x},#{y})"));
                    Product {
                        obj: Obj::Named(p),
                        pr1: Arr::Named(p1),
                        pr2: Arr::Named(p2),
                    }
                }
                _ => panic!("foreign object"),
            },
            CatInner::Quot(q) => crate::completion::q_product(q, a, b),
            CatInner::Total(tc) => crate::builders::total_product(&tc.p, a, b),
        }
    }

    /// Pairing ⟨f, g⟩ into the chosen product of the targets.
    pub fn pair(&self, f: &Arr, g: &Arr) -> Arr {
        match &*self.inner {
            CatInner::FinSet { .. } => {
                let (ft, gt) = (f.fin_table(), g.fin_table());
                assert_eq!(ft.len(), gt.len(), "pairing of arrows with different sources");
                let n = match g {
                    Arr::FinFn { tgt, .. } => *tgt,
                    _ => unreachable!(),
                };
                let m = match f {
                    Arr::FinFn { tgt, .. } => *tgt,
                    _ => unreachable!(),
                };
                assert!(m * n <= 255, "pairing target exceeds the representable size");
                let table: Vec<u8> = ft
                    .iter()
                    .zip(gt.iter())
                    .map(|(&x, &y)| (x as usize * n + y as usize) as u8)
                    .collect();
                Arr::fin_fn(m * n, table)
            }
            CatInner::Table(_) => {
                let a = self.tgt(f);
                let b = self.tgt(g);
                let x = self.src(f);
                let p = self.product(&a, &b);
                let found = self.hom(&x, &p.obj).into_iter().find(|h| {
                    self.compose(&p.pr1, h) == *f && self.compose(&p.pr2, h) == *g
                });
                found.unwrap_or_else(|| panic!("no pairing for the given arrows"))
            }
            CatInner::Quot(q) => crate::completion::q_pair(q, f, g),
            CatInner::Total(tc) => crate::builders::total_pair(&tc.p, f, g),
        }
    }

    /// Δ_A = ⟨id, id⟩ : A → A×A.
    pub fn diagonal(&self, a: &Obj) -> Arr {
        let id = self.identity(a);
        self.pair(&id, &id)
    }

    /// f × g = ⟨f∘pr1, g∘pr2⟩ : A×B → A'×B'.
    pub fn times(&self, f: &Arr, g: &Arr) -> Arr {
        let a = self.src(f);
        let b = self.src(g);
        let p = self.product(&a, &b);
        self.pair(&self.compose(f, &p.pr1), &self.compose(g, &p.pr2))
    }

    pub fn obj_label(&self, a: &Obj) -> String {
        match (&*self.inner, a) {
            (CatInner::Table(t), Obj::Named(i)) => t.obj_names[*i as usize].clone(),
            (CatInner::Quot(q), Obj::Quot(qo)) => format!(
                "({},{})",
                q.p.base().obj_label(&qo.carrier),
                crate::completion::q_relation_label(q, qo)
            ),
            _ => a.to_string(),
        }
    }

    pub fn arr_label(&self, f: &Arr) -> String {
        match (&*self.inner, f) {
            (CatInner::Table(t), Arr::Named(i)) => t.arr_names[*i as usize].clone(),
            (CatInner::Quot(q), Arr::Quot(qa)) => {
                format!("[{}]", q.p.base().arr_label(&qa.rep))
            }
            _ => f.to_string(),
        }
    }
}

/// Validates the category laws and the chosen structure on the window.
pub fn check_category(c: &Category) -> Report {
    let window = c.window();
    let wname = c.window_name();
    let mut checked = 0u64;

    // Identity and associativity.
    for a in &window {
        let ida = c.identity(a);
        if c.src(&ida) != *a || c.tgt(&ida) != *a {
            return Report::fail(
                "category",
                checked,
                wname,
                Counterexample::new("identity endpoints wrong").with("object", c.obj_label(a)),
            );
        }
        for b in &window {
            for f in c.hom(a, b) {
                checked += 1;
                let idb = c.identity(b);
                if c.compose(&idb, &f) != f || c.compose(&f, &ida) != f {
                    return Report::fail(
                        "category",
                        checked,
                        wname,
                        Counterexample::new("identity law fails").with("arrow", c.arr_label(&f)),
                    );
                }
                if c.src(&f) != *a || c.tgt(&f) != *b {
                    return Report::fail(
                        "category",
                        checked,
                        wname,
                        Counterexample::new("arrow endpoints inconsistent")
                            .with("arrow", c.arr_label(&f)),
                    );
                }
            }
        }
    }
    for a in &window {
        for b in &window {
            for x in &window {
                for f in c.hom(a, b) {
                    for g in c.hom(b, x) {
                        let gf = c.compose(&g, &f);
                        if c.src(&gf) != *a || c.tgt(&gf) != *x {
                            return Report::fail(
                                "category",
                                checked,
                                wname,
                                Counterexample::new("composite endpoints wrong")
                                    .with("f", c.arr_label(&f))
                                    .with("g", c.arr_label(&g)),
                            );
                        }
                        for y in &window {
                            for h in c.hom(x, y) {
                                checked += 1;
                                if c.compose(&h, &gf) != c.compose(&c.compose(&h, &g), &f) {
                                    return Report::fail(
                                        "category",
                                        checked,
                                        wname,
                                        Counterexample::new("associativity fails")
                                            .with("f", c.arr_label(&f))
                                            .with("g", c.arr_label(&g))
                                            .with("h", c.arr_label(&h)),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // Terminal: exactly one arrow from each window object.
    let term = c.terminal();
    for a in &window {
        checked += 1;
        let hom = c.hom(a, &term);
        if hom.len() != 1 || hom[0] != c.bang(a) {
            return Report::fail(
                "category",
                checked,
                wname,
                Counterexample::new("terminal object violated").with("object", c.obj_label(a)),
            );
        }
    }

    // Chosen products: existence, the projection equations, uniqueness of
    // the pairing, and ⟨pr1,pr2⟩ = id.
    for a in &window {
        for b in &window {
            let p = c.product(a, b);
            checked += 1;
            if c.pair(&p.pr1, &p.pr2) != c.identity(&p.obj) {
                return Report::fail(
                    "category",
                    checked,
                    wname,
                    Counterexample::new("⟨pr1,pr2⟩ ≠ id")
                        .with("a", c.obj_label(a))
                        .with("b", c.obj_label(b)),
                );
            }
            for x in &window {
                let homa = c.hom(x, a);
                let homb = c.hom(x, b);
                let homp = c.hom(x, &p.obj);
                for f in &homa {
                    for g in &homb {
                        checked += 1;
                        let fg = c.pair(f, g);
                        if c.compose(&p.pr1, &fg) != *f || c.compose(&p.pr2, &fg) != *g {
                            return Report::fail(
                                "category",
                                checked,
                                wname,
                                Counterexample::new("projection equations fail")
                                    .with("f", c.arr_label(f))
                                    .with("g", c.arr_label(g)),
                            );
                        }
                        let mediators = homp
                            .iter()
                            .filter(|h| {
                                c.compose(&p.pr1, h) == *f && c.compose(&p.pr2, h) == *g
                            })
                            .count();
                        if mediators != 1 {
                            return Report::fail(
                                "category",
                                checked,
                                wname,
                                Counterexample::new("pairing not unique")
                                    .with("f", c.arr_label(f))
                                    .with("g", c.arr_label(g))
                                    .with("count", mediators),
                            );
                        }
                    }
                }
            }
        }
    }

    Report::pass("category", checked, wname)
}

/// Window-quantified monicity: `f` is monic iff `f∘g = f∘h` implies `g = h`
/// for all window-sourced parallel pairs.
pub fn is_mono(c: &Category, f: &Arr) -> bool {
    let a = c.src(f);
    for x in c.window() {
        let hx = c.hom(&x, &a);
        for (i, g) in hx.iter().enumerate() {
            for h in hx.iter().skip(i + 1) {
                if c.compose(f, g) == c.compose(f, h) && g != h {
                    return false;
                }
            }
        }
    }
    true
}

/// A commuting span over a cospan.
#[derive(Debug, Clone)]
pub struct Span {
    pub apex: Obj,
    pub left: Arr,
    pub right: Arr,
}

/// Weak pullback of `f : A → C`, `g : B → C`. With `require_strict` the
/// mediating arrows must also be unique. In the finite-set category the
/// canonical fiber product is returned directly; elsewhere the window is
/// searched smallest-first.
pub fn weak_pullback(c: &Category, f: &Arr, g: &Arr, require_strict: bool) -> Result<Span> {
    assert_eq!(c.tgt(f), c.tgt(g), "pullback of a non-cospan");
    if c.is_finset() {
        return Ok(finset_fiber_product(f, g));
    }
    weak_pullback_search(c, f, g, require_strict)
}

/// Canonical fiber product {(a,b) | f(a) = g(b)} renumbered canonically.
pub fn finset_fiber_product(f: &Arr, g: &Arr) -> Span {
    let (ft, gt) = (f.fin_table(), g.fin_table());
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (a, &fa) in ft.iter().enumerate() {
        for (b, &gb) in gt.iter().enumerate() {
            if fa == gb {
                left.push(a as u8);
                right.push(b as u8);
            }
        }
    }
    Span {
        apex: Obj::Fin(left.len()),
        left: Arr::fin_fn(ft.len(), left),
        right: Arr::fin_fn(gt.len(), right),
    }
}

/// Exhaustive window search for a (weak) pullback, smallest apex first.
pub fn weak_pullback_search(
    c: &Category,
    f: &Arr,
    g: &Arr,
    require_strict: bool,
) -> Result<Span> {
    let a = c.src(f);
    let b = c.src(g);
    let window = c.window();
    for v in &window {
        for p in c.hom(v, &a) {
            for q in c.hom(v, &b) {
                if c.compose(f, &p) != c.compose(g, &q) {
                    continue;
                }
                let span = Span {
                    apex: v.clone(),
                    left: p.clone(),
                    right: q.clone(),
                };
                if span_is_weak_limit(c, f, g, &span, require_strict, &window) {
                    return Ok(span);
                }
            }
        }
    }
    let kind = if require_strict { "pullback" } else { "weak pullback" };
    Err(Error::MissingWeakPullback(format!(
        "{kind} of ({}, {}) not found in window {}",
        c.arr_label(f),
        c.arr_label(g),
        c.window_name()
    )))
}

/// True iff the span commutes over the cospan (f, g) and every competing
/// window span factors through it (not necessarily uniquely).
pub fn span_weakly_covers(c: &Category, f: &Arr, g: &Arr, span: &Span, window: &[Obj]) -> bool {
    c.compose(f, &span.left) == c.compose(g, &span.right)
        && span_is_weak_limit(c, f, g, span, false, window)
}

fn span_is_weak_limit(
    c: &Category,
    f: &Arr,
    g: &Arr,
    span: &Span,
    require_strict: bool,
    window: &[Obj],
) -> bool {
    let a = c.src(f);
    let b = c.src(g);
    for t in window {
        for s in c.hom(t, &a) {
            for r in c.hom(t, &b) {
                if c.compose(f, &s) != c.compose(g, &r) {
                    continue;
                }
                let mediators = c
                    .hom(t, &span.apex)
                    .into_iter()
                    .filter(|u| {
                        c.compose(&span.left, u) == s && c.compose(&span.right, u) == r
                    })
                    .count();
                if mediators == 0 || (require_strict && mediators != 1) {
                    return false;
                }
            }
        }
    }
    true
}

/// Candidate objects for searches that may need products of window objects:
/// the window itself followed by pairwise chosen products not already in it,
/// ordered deterministically.
pub fn extended_window(c: &Category) -> Vec<Obj> {
    let window = c.window();
    let mut out = window.clone();
    let mut extra: Vec<Obj> = Vec::new();
    for a in &window {
        for b in &window {
            let p = c.product(a, b).obj;
            if !out.contains(&p) && !extra.contains(&p) {
                extra.push(p);
            }
        }
    }
    extra.sort();
    out.extend(extra);
    out
}

/// Searches for a weak evaluation from `a` to `b`: an arrow `w : W×A → B`
/// through which every `f : X×A → B` with window `X` factors. Candidates for
/// `W` range over the window extended by pairwise products, smallest first.
pub fn find_weak_evaluation(c: &Category, a: &Obj, b: &Obj) -> Result<(Obj, Arr)> {
    let window = c.window();
    // Competitor transposes are checked for every window X.
    let competitors: Vec<(Obj, Product, Vec<Arr>)> = window
        .iter()
        .map(|x| {
            let p = c.product(x, a);
            let fs = c.hom(&p.obj, b);
            (x.clone(), p, fs)
        })
        .collect();
    for wobj in extended_window(c) {
        let pw = c.product(&wobj, a);
        for w in c.hom(&pw.obj, b) {
            let mut all_factor = true;
            'outer: for (x, px, fs) in &competitors {
                for f in fs {
                    if factor_through_evaluation(c, &wobj, &pw, &w, x, px, f).is_none() {
                        all_factor = false;
                        break 'outer;
                    }
                }
            }
            if all_factor {
                return Ok((wobj, w));
            }
        }
    }
    Err(Error::NoWeakEvaluation(format!(
        "no weak evaluation from {} to {} within window {}",
        c.obj_label(a),
        c.obj_label(b),
        c.window_name()
    )))
}

/// Finds `f' : X → W` with `f = w ∘ (f'×id_A)`, if any.
pub fn factor_through_evaluation(
    c: &Category,
    wobj: &Obj,
    _pw: &Product,
    w: &Arr,
    x: &Obj,
    px: &Product,
    f: &Arr,
) -> Option<Arr> {
    c.hom(x, wobj).into_iter().find(|fp| {
        // f' × id_A : X×A → W×A against the chosen products
        let lifted = c.pair(&c.compose(fp, &px.pr1), &px.pr2);
        c.compose(w, &lifted) == *f
    })
}

/// A functor presented by object and arrow assignments, or one of the
/// structural functors that arise from the constructions in this crate.
#[derive(Debug, Clone)]
pub struct Functor {
    pub src: Category,
    pub tgt: Category,
    pub(crate) kind: FunKind,
}

#[derive(Debug, Clone)]
pub(crate) enum FunKind {
    Identity,
    Explicit {
        omap: Arc<HashMap<Obj, Obj>>,
        amap: Arc<HashMap<Arr, Arr>>,
    },
    /// The unit embedding into a quotient completion: A ↦ (A, δ_A).
    Embed { q: Doctrine },
    /// Projection of a total category onto its base.
    Proj,
    /// Right adjoint section of the projection: A ↦ (A, ⊤).
    TopSection { total: Category },
    Composite(Arc<Functor>, Arc<Functor>),
}

impl Functor {
    pub fn identity(c: &Category) -> Functor {
        Functor {
            src: c.clone(),
            tgt: c.clone(),
            kind: FunKind::Identity,
        }
    }

    pub fn explicit(
        src: &Category,
        tgt: &Category,
        omap: HashMap<Obj, Obj>,
        amap: HashMap<Arr, Arr>,
    ) -> Functor {
        Functor {
            src: src.clone(),
            tgt: tgt.clone(),
            kind: FunKind::Explicit {
                omap: Arc::new(omap),
                amap: Arc::new(amap),
            },
        }
    }

    /// g ∘ f as functors.
    pub fn then(f: &Functor, g: &Functor) -> Functor {
        Functor {
            src: f.src.clone(),
            tgt: g.tgt.clone(),
            kind: FunKind::Composite(Arc::new(g.clone()), Arc::new(f.clone())),
        }
    }

    pub fn apply_obj(&self, a: &Obj) -> Obj {
        match &self.kind {
            FunKind::Identity => a.clone(),
            FunKind::Explicit { omap, .. } => omap
                .get(a)
                .unwrap_or_else(|| panic!("functor undefined on object {a}"))
                .clone(),
            FunKind::Embed { q } => crate::completion::embed_obj(q, a),
            FunKind::Proj => match a {
                Obj::Total(t) => t.carrier.clone(),
                _ => panic!("projection applied to a foreign object"),
            },
            FunKind::TopSection { total } => crate::builders::top_section_obj(total, a),
            FunKind::Composite(g, f) => g.apply_obj(&f.apply_obj(a)),
        }
    }

    pub fn apply_arr(&self, f: &Arr) -> Arr {
        match &self.kind {
            FunKind::Identity => f.clone(),
            FunKind::Explicit { amap, .. } => amap
                .get(f)
                .unwrap_or_else(|| panic!("functor undefined on arrow {f}"))
                .clone(),
            FunKind::Embed { q } => crate::completion::embed_arr(q, f),
            FunKind::Proj => match f {
                Arr::Total(t) => t.base.clone(),
                _ => panic!("projection applied to a foreign arrow"),
            },
            FunKind::TopSection { total } => crate::builders::top_section_arr(total, f),
            FunKind::Composite(g, h) => g.apply_arr(&h.apply_arr(f)),
        }
    }
}

/// Checks functoriality (identities and composites) over the source window.
pub fn check_functor(f: &Functor) -> Report {
    let window = f.src.window();
    let wname = f.src.window_name();
    let mut checked = 0u64;
    for a in &window {
        checked += 1;
        let fa = f.apply_obj(a);
        if f.apply_arr(&f.src.identity(a)) != f.tgt.identity(&fa) {
            return Report::fail(
                "functor",
                checked,
                wname,
                Counterexample::new("identity not preserved").with("object", f.src.obj_label(a)),
            );
        }
    }
    for a in &window {
        for b in &window {
            for g in f.src.hom(a, b) {
                let fg = f.apply_arr(&g);
                if f.tgt.src(&fg) != f.apply_obj(a) || f.tgt.tgt(&fg) != f.apply_obj(b) {
                    return Report::fail(
                        "functor",
                        checked,
                        wname,
                        Counterexample::new("arrow endpoints not respected")
                            .with("arrow", f.src.arr_label(&g)),
                    );
                }
                for x in &window {
                    for h in f.src.hom(b, x) {
                        checked += 1;
                        let lhs = f.apply_arr(&f.src.compose(&h, &g));
                        let rhs = f.tgt.compose(&f.apply_arr(&h), &fg);
                        if lhs != rhs {
                            return Report::fail(
                                "functor",
                                checked,
                                wname,
                                Counterexample::new("composition not preserved")
                                    .with("g", f.src.arr_label(&g))
                                    .with("h", f.src.arr_label(&h)),
                            );
                        }
                    }
                }
            }
        }
    }
    Report::pass("functor", checked, wname)
}

/// The canonical comparison ⟨F pr1, F pr2⟩ : F(A×B) → FA×FB must be an
/// isomorphism for all window pairs, and F must send the chosen terminal to
/// a terminal object.
pub fn preserves_chosen_products(f: &Functor) -> Report {
    let window = f.src.window();
    let wname = f.src.window_name();
    let mut checked = 0u64;
    let fterm = f.apply_obj(&f.src.terminal());
    for x in f.tgt.window() {
        checked += 1;
        if f.tgt.hom(&x, &fterm).len() != 1 {
            return Report::fail(
                "product-preservation",
                checked,
                wname,
                Counterexample::new("terminal not preserved").with("at", f.tgt.obj_label(&x)),
            );
        }
    }
    for a in &window {
        for b in &window {
            checked += 1;
            let p = f.src.product(a, b);
            let fp = f.apply_obj(&p.obj);
            let q = f.tgt.product(&f.apply_obj(a), &f.apply_obj(b));
            let e = f.tgt.pair(&f.apply_arr(&p.pr1), &f.apply_arr(&p.pr2));
            let inverse = f.tgt.hom(&q.obj, &fp).into_iter().find(|h| {
                f.tgt.compose(&e, h) == f.tgt.identity(&q.obj)
                    && f.tgt.compose(h, &e) == f.tgt.identity(&fp)
            });
            if inverse.is_none() {
                return Report::fail(
                    "product-preservation",
                    checked,
                    wname,
                    Counterexample::new("comparison arrow not invertible")
                        .with("a", f.src.obj_label(a))
                        .with("b", f.src.obj_label(b)),
                );
            }
        }
    }
    Report::pass("product-preservation", checked, wname)
}
