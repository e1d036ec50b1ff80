//! Finite meet-semilattices, monotone maps, and exhaustive adjoint search.
//!
//! Two representations coexist behind one type. `Power(n)` is the lattice of
//! subsets of `{0..n-1}` kept implicit as bit masks, which is what makes the
//! larger set-doctrine windows tractable. `Table` is an explicit finite poset
//! with a meet table, used for hand-built fixtures, parsed documents, and the
//! derived fibers (slice classes, descent data) that are small by nature.
//!
//! Elements are `Elem` values: a mask for power lattices, an index for table
//! lattices. Enumeration order (ascending mask / index) is the tie-break
//! order everywhere, so "first counterexample" is well defined.

use crate::error::{Error, Result};
use crate::exec;
use crate::report::{Counterexample, Report};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// An element of a fiber: a subset mask or a table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Mask(u64),
    Ix(u32),
}

impl Elem {
    pub fn mask(self) -> u64 {
        match self {
            Elem::Mask(m) => m,
            Elem::Ix(_) => panic!("expected a mask element"),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Elem::Mask(m) => m as usize,
            Elem::Ix(i) => i as usize,
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Mask(m) => {
                let elems: Vec<String> = (0..64)
                    .filter(|b| m >> b & 1 == 1)
                    .map(|b| b.to_string())
                    .collect();
                write!(f, "{{{}}}", elems.join(","))
            }
            Elem::Ix(i) => write!(f, "#{i}"),
        }
    }
}

/// Explicit finite meet-semilattice.
#[derive(Debug)]
pub struct TableLattice {
    /// Display names, index-aligned with elements.
    pub labels: Vec<String>,
    /// `leq[i * n + j]` iff element i ≤ element j; reflexive-transitive closed.
    pub leq: Vec<bool>,
    /// `meet[i * n + j]` = index of the meet.
    pub meet: Vec<u32>,
    pub top: u32,
    /// For sub-lattices carved out of another fiber: the underlying element
    /// of the ambient fiber for each index.
    pub under: Option<Vec<Elem>>,
}

#[derive(Debug, Clone)]
enum LatKind {
    /// Subsets of {0..n-1} ordered by inclusion; n ≤ 64.
    Power { n: u32 },
    Table(Arc<TableLattice>),
}

/// A finite partial order with top and binary meets.
#[derive(Debug, Clone)]
pub struct MeetSemilattice {
    kind: LatKind,
}

impl MeetSemilattice {
    pub fn power(n: usize) -> Self {
        assert!(n <= 64, "power lattice carrier exceeds 64 elements");
        MeetSemilattice {
            kind: LatKind::Power { n: n as u32 },
        }
    }

    pub fn table(t: TableLattice) -> Self {
        MeetSemilattice {
            kind: LatKind::Table(Arc::new(t)),
        }
    }

    /// Builds the table lattice on `labels` with order `leq_pairs` (indices),
    /// closing reflexively and transitively, then deriving meets. Fails if
    /// the closure breaks antisymmetry, top is missing, or some pair has no
    /// greatest lower bound.
    pub fn from_order(labels: Vec<String>, leq_pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedInput("empty element set".into()));
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in leq_pairs {
            if i >= n || j >= n {
                return Err(Error::MalformedInput(format!(
                    "order pair ({i},{j}) references unknown element"
                )));
            }
            leq[i * n + j] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::MalformedInput(format!(
                        "antisymmetry fails between {} and {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x * n + t]))
            .ok_or_else(|| Error::MalformedInput("no maximum element".into()))?;
        let mut meet = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let lower: Vec<usize> = (0..n)
                    .filter(|&z| leq[z * n + i] && leq[z * n + j])
                    .collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&m| lower.iter().all(|&z| leq[z * n + m]))
                    .ok_or_else(|| {
                        Error::MalformedInput(format!(
                            "no meet for {} and {}",
                            labels[i], labels[j]
                        ))
                    })?;
                meet[i * n + j] = glb as u32;
            }
        }
        Ok(MeetSemilattice::table(TableLattice {
            labels,
            leq,
            meet,
            top: top as u32,
            under: None,
        }))
    }

    pub fn len(&self) -> u64 {
        match &self.kind {
            LatKind::Power { n } => 1u64 << n,
            LatKind::Table(t) => t.labels.len() as u64,
        }
    }

    /// Carrier size of a power lattice, if this is one.
    pub fn power_carrier(&self) -> Option<usize> {
        match &self.kind {
            LatKind::Power { n } => Some(*n as usize),
            LatKind::Table(_) => None,
        }
    }

    pub fn table_data(&self) -> Option<&TableLattice> {
        match &self.kind {
            LatKind::Power { .. } => None,
            LatKind::Table(t) => Some(t),
        }
    }

    pub fn elem(&self, i: u64) -> Elem {
        match &self.kind {
            LatKind::Power { .. } => Elem::Mask(i),
            LatKind::Table(_) => Elem::Ix(i as u32),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len()).map(|i| self.elem(i))
    }

    pub fn top(&self) -> Elem {
        match &self.kind {
            LatKind::Power { n } => Elem::Mask(full_mask(*n as usize)),
            LatKind::Table(t) => Elem::Ix(t.top),
        }
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        match &self.kind {
            LatKind::Power { .. } => x.mask() & !y.mask() == 0,
            LatKind::Table(t) => {
                let n = t.labels.len();
                t.leq[x.index() * n + y.index()]
            }
        }
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        match &self.kind {
            LatKind::Power { .. } => Elem::Mask(x.mask() & y.mask()),
            LatKind::Table(t) => {
                let n = t.labels.len();
                Elem::Ix(t.meet[x.index() * n + y.index()])
            }
        }
    }

    pub fn eq_elem(&self, x: Elem, y: Elem) -> bool {
        x == y
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.kind {
            LatKind::Power { .. } => x.to_string(),
            LatKind::Table(t) => t.labels[x.index()].clone(),
        }
    }

    /// Underlying ambient element for sub-lattices, identity otherwise.
    pub fn under(&self, x: Elem) -> Elem {
        match &self.kind {
            LatKind::Power { .. } => x,
            LatKind::Table(t) => match &t.under {
                Some(u) => u[x.index()],
                None => x,
            },
        }
    }

    /// Index of the element whose `under` is `e`, for sub-lattices.
    pub fn index_of_under(&self, e: Elem) -> Option<Elem> {
        match &self.kind {
            LatKind::Power { .. } => Some(e),
            LatKind::Table(t) => match &t.under {
                Some(u) => u
                    .iter()
                    .position(|&x| x == e)
                    .map(|i| Elem::Ix(i as u32)),
                None => Some(e),
            },
        }
    }

    /// Two lattices agree as posets under enumeration-order identification.
    pub fn same_shape(&self, other: &MeetSemilattice) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.leq(self.elem(i), self.elem(j)) == other.leq(other.elem(i), other.elem(j))
            })
        })
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Validates raw order data as a meet-semilattice, reporting the first
/// violated axiom with a witness.
pub fn check_semilattice(labels: Vec<String>, leq_pairs: &[(usize, usize)]) -> Report {
    let window = format!("{} elements", labels.len());
    match MeetSemilattice::from_order(labels, leq_pairs) {
        Ok(lat) => {
            // from_order established the axioms constructively; re-assert the
            // derivable laws directly, as promised by the contract.
            let n = lat.len();
            let mut checked = 0u64;
            for x in lat.iter() {
                checked += 1;
                if !lat.leq(x, lat.top()) {
                    return Report::fail(
                        "semilattice",
                        checked,
                        window,
                        Counterexample::new("no maximum").with("x", lat.label(x)),
                    );
                }
                if lat.meet(x, x) != x {
                    return Report::fail(
                        "semilattice",
                        checked,
                        window,
                        Counterexample::new("meet not idempotent").with("x", lat.label(x)),
                    );
                }
            }
            for x in lat.iter() {
                for y in lat.iter() {
                    checked += 1;
                    if lat.meet(x, y) != lat.meet(y, x) {
                        return Report::fail(
                            "semilattice",
                            checked,
                            window,
                            Counterexample::new("meet not commutative")
                                .with("x", lat.label(x))
                                .with("y", lat.label(y)),
                        );
                    }
                    let m = lat.meet(x, y);
                    if !lat.leq(m, x) || !lat.leq(m, y) {
                        return Report::fail(
                            "semilattice",
                            checked,
                            window,
                            Counterexample::new("meet not a lower bound")
                                .with("x", lat.label(x))
                                .with("y", lat.label(y)),
                        );
                    }
                    for z in lat.iter() {
                        if lat.leq(z, x) && lat.leq(z, y) && !lat.leq(z, m) {
                            return Report::fail(
                                "semilattice",
                                checked,
                                window,
                                Counterexample::new("meet not greatest lower bound")
                                    .with("x", lat.label(x))
                                    .with("y", lat.label(y))
                                    .with("z", lat.label(z)),
                            );
                        }
                    }
                }
            }
            for x in lat.iter() {
                for y in lat.iter() {
                    for z in lat.iter() {
                        checked += 1;
                        if lat.meet(lat.meet(x, y), z) != lat.meet(x, lat.meet(y, z)) {
                            return Report::fail(
                                "semilattice",
                                checked,
                                window,
                                Counterexample::new("meet not associative")
                                    .with("x", lat.label(x))
                                    .with("y", lat.label(y))
                                    .with("z", lat.label(z)),
                            );
                        }
                    }
                }
            }
            Report::pass("semilattice", checked.max(n), window)
        }
        Err(e) => Report::fail(
            "semilattice",
            0,
            window,
            Counterexample::new(e.to_string()),
        ),
    }
}

/// A monotone map between fibers. `src` is the domain, `tgt` the codomain.
#[derive(Debug, Clone)]
pub struct MonotoneMap {
    pub src: MeetSemilattice,
    pub tgt: MeetSemilattice,
    kind: MapKind,
}

#[derive(Debug, Clone)]
enum MapKind {
    /// Inverse image along a function `f : X -> Y` between canonical finite
    /// sets: maps `P(Y)` (src, carrier `tgt_of_f`) to `P(X)` (tgt).
    /// `fun[x] = f(x)`, so bit `x` of the result is bit `fun[x]` of the input.
    PowerPre(Arc<Vec<u8>>),
    /// Direct image along a function: maps `P(X)` to `P(Y)`.
    PowerImage { fun: Arc<Vec<u8>> },
    /// Universal image along a function: maps `P(X)` to `P(Y)`,
    /// `y ∈ R(s)` iff the whole preimage of `y` is inside `s`.
    PowerForall { fun: Arc<Vec<u8>> },
    /// Explicit graph indexed by src enumeration order.
    Graph(Arc<Vec<Elem>>),
}

impl MonotoneMap {
    /// Inverse image `P({0..m-1}) -> P({0..k-1})` along `fun : {0..k-1} -> {0..m-1}`.
    pub fn power_preimage(fun: Vec<u8>, target_carrier: usize) -> Self {
        MonotoneMap {
            src: MeetSemilattice::power(target_carrier),
            tgt: MeetSemilattice::power(fun.len()),
            kind: MapKind::PowerPre(Arc::new(fun)),
        }
    }

    /// Direct image `P({0..k-1}) -> P({0..m-1})` along `fun`.
    pub fn power_image(fun: Vec<u8>, target_carrier: usize) -> Self {
        MonotoneMap {
            src: MeetSemilattice::power(fun.len()),
            tgt: MeetSemilattice::power(target_carrier),
            kind: MapKind::PowerImage { fun: Arc::new(fun) },
        }
    }

    /// Universal image `P({0..k-1}) -> P({0..m-1})` along `fun`.
    pub fn power_forall(fun: Vec<u8>, target_carrier: usize) -> Self {
        MonotoneMap {
            src: MeetSemilattice::power(fun.len()),
            tgt: MeetSemilattice::power(target_carrier),
            kind: MapKind::PowerForall { fun: Arc::new(fun) },
        }
    }

    pub fn graph(src: MeetSemilattice, tgt: MeetSemilattice, graph: Vec<Elem>) -> Self {
        assert_eq!(graph.len() as u64, src.len(), "graph covers the source");
        MonotoneMap {
            src,
            tgt,
            kind: MapKind::Graph(Arc::new(graph)),
        }
    }

    pub fn identity(lat: MeetSemilattice) -> Self {
        let graph: Vec<Elem> = lat.iter().collect();
        MonotoneMap {
            src: lat.clone(),
            tgt: lat,
            kind: MapKind::Graph(Arc::new(graph)),
        }
    }

    /// Function table when this map is an inverse image on power lattices.
    pub fn preimage_table(&self) -> Option<&[u8]> {
        match &self.kind {
            MapKind::PowerPre(f) => Some(f),
            _ => None,
        }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        match &self.kind {
            MapKind::PowerPre(fun) => {
                let m = x.mask();
                let mut out = 0u64;
                for (i, &fi) in fun.iter().enumerate() {
                    if m >> fi & 1 == 1 {
                        out |= 1 << i;
                    }
                }
                Elem::Mask(out)
            }
            MapKind::PowerImage { fun } => {
                let m = x.mask();
                let mut out = 0u64;
                for (i, &fi) in fun.iter().enumerate() {
                    if m >> i & 1 == 1 {
                        out |= 1 << fi;
                    }
                }
                Elem::Mask(out)
            }
            MapKind::PowerForall { fun } => {
                let m = x.mask();
                let mut out = full_mask(self.tgt.power_carrier().expect("power"));
                for (i, &fi) in fun.iter().enumerate() {
                    if m >> i & 1 == 0 {
                        out &= !(1 << fi);
                    }
                }
                Elem::Mask(out)
            }
            MapKind::Graph(g) => g[x.index()],
        }
    }

    /// Pointwise equality with another map over the same source.
    pub fn same_graph(&self, other: &MonotoneMap) -> bool {
        self.src.len() == other.src.len()
            && self.src.iter().all(|x| self.apply(x) == other.apply(x))
    }

    pub fn compose_after(&self, first: &MonotoneMap) -> MonotoneMap {
        // self ∘ first
        let graph: Vec<Elem> = first.src.iter().map(|x| self.apply(first.apply(x))).collect();
        MonotoneMap::graph(first.src.clone(), self.tgt.clone(), graph)
    }

    /// Checks monotonicity exhaustively.
    pub fn check_monotone(&self) -> Report {
        let window = format!("{}x{} elements", self.src.len(), self.src.len());
        let n = self.src.len();
        let mut checked = 0;
        for x in self.src.iter() {
            for y in self.src.iter() {
                checked += 1;
                if self.src.leq(x, y) && !self.tgt.leq(self.apply(x), self.apply(y)) {
                    return Report::fail(
                        "monotone",
                        checked,
                        window,
                        Counterexample::new("order not preserved")
                            .with("x", self.src.label(x))
                            .with("y", self.src.label(y)),
                    );
                }
            }
        }
        Report::pass("monotone", n * n, window)
    }
}

/// Pass iff the map sends top to top and meets to meets, exhaustively.
pub fn preserves_meets(m: &MonotoneMap) -> Report {
    let window = format!("{} source elements", m.src.len());
    let mut checked = 1u64;
    if m.apply(m.src.top()) != m.tgt.top() {
        return Report::fail(
            "preserves-meets",
            checked,
            window,
            Counterexample::new("top not preserved").with("top", m.src.label(m.src.top())),
        );
    }
    for x in m.src.iter() {
        for y in m.src.iter() {
            checked += 1;
            let lhs = m.apply(m.src.meet(x, y));
            let rhs = m.tgt.meet(m.apply(x), m.apply(y));
            if lhs != rhs {
                return Report::fail(
                    "preserves-meets",
                    checked,
                    window,
                    Counterexample::new("binary meet not preserved")
                        .with("x", m.src.label(x))
                        .with("y", m.src.label(y)),
                );
            }
        }
    }
    Report::pass("preserves-meets", checked, window)
}

/// Failure witness for an adjoint search: the first source element whose
/// candidate set has no minimum (respectively maximum).
#[derive(Debug, Clone)]
pub struct AdjointFailure {
    pub at: Elem,
    pub detail: String,
}

impl fmt::Display for AdjointFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no adjoint at {}: {}", self.at, self.detail)
    }
}

/// Bound above which the exhaustive post-search adjunction sweep is skipped;
/// the mask-backed fast paths are covered by dedicated oracle tests instead.
const VERIFY_BOUND: u64 = 1 << 22;

/// Left adjoint of `m : Q -> P`: the map `L : P -> Q` with
/// `L(p) ≤ q  iff  p ≤ m(q)`, found by exhaustive search.
///
/// For inverse-image maps on power lattices the adjoint is the direct image,
/// which the search would also find but far too slowly at the larger windows.
pub fn left_adjoint(m: &MonotoneMap) -> std::result::Result<MonotoneMap, AdjointFailure> {
    if let Some(fun) = m.preimage_table() {
        let carrier = m.src.power_carrier().expect("preimage source is a power fiber");
        let l = MonotoneMap::power_image(fun.to_vec(), carrier);
        if m.src.len() * m.tgt.len() <= VERIFY_BOUND {
            verify_left_adjunction(&l, m)?;
        }
        return Ok(l);
    }
    let graph: Result<Vec<Elem>> = m
        .tgt
        .iter()
        .map(|p| {
            // Candidates {q : p ≤ m(q)} are closed under meets when m
            // preserves them, so the minimum, if any, is the running meet.
            let mut acc: Option<Elem> = None;
            for q in m.src.iter() {
                if m.tgt.leq(p, m.apply(q)) {
                    acc = Some(match acc {
                        None => q,
                        Some(a) => m.src.meet(a, q),
                    });
                }
            }
            match acc {
                Some(a) if m.tgt.leq(p, m.apply(a)) => Ok(a),
                Some(_) => Err(Error::NoAdjoint(format!(
                    "candidate set for {} has no minimum",
                    m.tgt.label(p)
                ))),
                None => Err(Error::NoAdjoint(format!(
                    "candidate set for {} is empty",
                    m.tgt.label(p)
                ))),
            }
        })
        .collect();
    match graph {
        Ok(g) => {
            let l = MonotoneMap::graph(m.tgt.clone(), m.src.clone(), g);
            verify_left_adjunction(&l, m)?;
            Ok(l)
        }
        Err(e) => {
            // Recover the offending element for the witness.
            let p = m
                .tgt
                .iter()
                .find(|&p| {
                    let mut acc: Option<Elem> = None;
                    for q in m.src.iter() {
                        if m.tgt.leq(p, m.apply(q)) {
                            acc = Some(match acc {
                                None => q,
                                Some(a) => m.src.meet(a, q),
                            });
                        }
                    }
                    !matches!(acc, Some(a) if m.tgt.leq(p, m.apply(a)))
                })
                .expect("failure element exists");
            Err(AdjointFailure {
                at: p,
                detail: e.to_string(),
            })
        }
    }
}

fn verify_left_adjunction(
    l: &MonotoneMap,
    m: &MonotoneMap,
) -> std::result::Result<(), AdjointFailure> {
    let np = m.tgt.len();
    let nq = m.src.len();
    let bad = exec::first_failure(np * nq, |i| {
        let p = m.tgt.elem(i / nq);
        let q = m.src.elem(i % nq);
        m.src.leq(l.apply(p), q) == m.tgt.leq(p, m.apply(q))
    });
    match bad {
        None => Ok(()),
        Some(i) => {
            let p = m.tgt.elem(i / nq);
            Err(AdjointFailure {
                at: p,
                detail: "adjunction equivalence fails".into(),
            })
        }
    }
}

/// Right adjoint of `m : Q -> P`: the map `R : P -> Q` with
/// `q ≤ R(p)  iff  m(q) ≤ p`; order-dual of `left_adjoint`.
pub fn right_adjoint(m: &MonotoneMap) -> std::result::Result<MonotoneMap, AdjointFailure> {
    if let Some(fun) = m.preimage_table() {
        let carrier = m.src.power_carrier().expect("preimage source is a power fiber");
        let r = MonotoneMap::power_forall(fun.to_vec(), carrier);
        if m.src.len() * m.tgt.len() <= VERIFY_BOUND {
            verify_right_adjunction(&r, m)?;
        }
        return Ok(r);
    }
    let mut graph = Vec::with_capacity(m.tgt.len() as usize);
    for p in m.tgt.iter() {
        // Candidates {q : m(q) ≤ p}; the maximum must dominate all of them,
        // so scan for an element of the set that is above every other.
        let cands: Vec<Elem> = m.src.iter().filter(|&q| m.tgt.leq(m.apply(q), p)).collect();
        let max = cands
            .iter()
            .copied()
            .find(|&c| cands.iter().all(|&q| m.src.leq(q, c)));
        match max {
            Some(c) => graph.push(c),
            None => {
                return Err(AdjointFailure {
                    at: p,
                    detail: if cands.is_empty() {
                        "candidate set is empty".into()
                    } else {
                        "candidate set has no maximum".into()
                    },
                })
            }
        }
    }
    let r = MonotoneMap::graph(m.tgt.clone(), m.src.clone(), graph);
    verify_right_adjunction(&r, m)?;
    Ok(r)
}

fn verify_right_adjunction(
    r: &MonotoneMap,
    m: &MonotoneMap,
) -> std::result::Result<(), AdjointFailure> {
    let np = m.tgt.len();
    let nq = m.src.len();
    let bad = exec::first_failure(np * nq, |i| {
        let p = m.tgt.elem(i / nq);
        let q = m.src.elem(i % nq);
        m.src.leq(q, r.apply(p)) == m.tgt.leq(m.apply(q), p)
    });
    match bad {
        None => Ok(()),
        Some(i) => Err(AdjointFailure {
            at: m.tgt.elem(i / nq),
            detail: "adjunction equivalence fails".into(),
        }),
    }
}

/// Materializes a sub-lattice of `ambient` on the given elements (which must
/// be meet-closed and contain top); elements keep their ambient identity in
/// `under`.
pub fn sub_lattice(ambient: &MeetSemilattice, elems: Vec<Elem>) -> Result<MeetSemilattice> {
    let n = elems.len();
    let pos: HashMap<Elem, usize> = elems.iter().copied().enumerate().map(|(i, e)| (e, i)).collect();
    let top = *pos
        .get(&ambient.top())
        .ok_or_else(|| Error::InvariantViolation("sub-lattice misses top".into()))?;
    let mut leq = vec![false; n * n];
    let mut meet = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = ambient.leq(elems[i], elems[j]);
            let m = ambient.meet(elems[i], elems[j]);
            meet[i * n + j] = *pos.get(&m).ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "sub-lattice not meet-closed at {} ∧ {}",
                    ambient.label(elems[i]),
                    ambient.label(elems[j])
                ))
            })? as u32;
        }
    }
    let labels = elems.iter().map(|&e| ambient.label(e)).collect();
    Ok(MeetSemilattice::table(TableLattice {
        labels,
        leq,
        meet,
        top: top as u32,
        under: Some(elems),
    }))
}
