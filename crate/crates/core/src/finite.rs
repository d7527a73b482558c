//! Partial injections between finite sets, and an exhaustive law checker.
//!
//! This model is deliberately naive: graphs are explicit sets of pairs and
//! every law is checked against its defining equation. It is the oracle the
//! symbolic model in [`crate::arrow`] is measured against.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Largest carrier size enumerated exhaustively; larger runs are sampled.
pub const EXHAUSTIVE_LIMIT: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSet {
    elements: Vec<u32>,
}

impl FiniteSet {
    pub fn new(elements: impl IntoIterator<Item = u32>) -> Self {
        let set: BTreeSet<u32> = elements.into_iter().collect();
        FiniteSet {
            elements: set.into_iter().collect(),
        }
    }

    /// `{0, …, n-1}`.
    pub fn initial(n: usize) -> Self {
        FiniteSet {
            elements: (0..n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// `A ⊎ B = A×{0} ∪ B×{1}`, with `(x, tag)` encoded as `2x + tag`.
    pub fn disjoint_union(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet::new(
            self.elements
                .iter()
                .map(|&a| 2 * a)
                .chain(other.elements.iter().map(|&b| 2 * b + 1)),
        )
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

/// A partial injection, stored as its graph of `(target, source)` pairs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinPIso {
    dom: FiniteSet,
    cod: FiniteSet,
    graph: Vec<(u32, u32)>,
}

impl FinPIso {
    pub fn new(
        dom: FiniteSet,
        cod: FiniteSet,
        pairs: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<FinPIso> {
        let graph: BTreeSet<(u32, u32)> = pairs.into_iter().collect();
        for &(b, a) in &graph {
            if !cod.contains(b) || !dom.contains(a) {
                return Err(Error::Invalid(format!(
                    "pair ({b},{a}) is outside {cod:?} × {dom:?}"
                )));
            }
        }
        let graph: Vec<(u32, u32)> = graph.into_iter().collect();
        if !is_injective_both_ways(&graph) {
            return Err(Error::Invalid(format!(
                "{graph:?} is not a partial injection"
            )));
        }
        Ok(FinPIso { dom, cod, graph })
    }

    pub fn zero(dom: FiniteSet, cod: FiniteSet) -> FinPIso {
        FinPIso {
            dom,
            cod,
            graph: Vec::new(),
        }
    }

    pub fn identity(set: &FiniteSet) -> FinPIso {
        FinPIso {
            dom: set.clone(),
            cod: set.clone(),
            graph: set.elements.iter().map(|&x| (x, x)).collect(),
        }
    }

    pub fn dom(&self) -> &FiniteSet {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSet {
        &self.cod
    }

    pub fn graph(&self) -> &[(u32, u32)] {
        &self.graph
    }

    pub fn is_zero(&self) -> bool {
        self.graph.is_empty()
    }

    fn image_of(&self, a: u32) -> Option<u32> {
        self.graph.iter().find(|&&(_, x)| x == a).map(|&(b, _)| b)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &FinPIso) -> Result<FinPIso> {
        if f.cod != self.dom {
            return Err(Error::Invalid(format!(
                "cannot compose: codomain {:?} is not domain {:?}",
                f.cod, self.dom
            )));
        }
        Ok(self.compose_unchecked(f))
    }

    fn compose_unchecked(&self, f: &FinPIso) -> FinPIso {
        let mut graph: Vec<(u32, u32)> = f
            .graph
            .iter()
            .filter_map(|&(m, a)| self.image_of(m).map(|c| (c, a)))
            .collect();
        graph.sort_unstable();
        FinPIso {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            graph,
        }
    }

    pub fn dagger(&self) -> FinPIso {
        let mut graph: Vec<(u32, u32)> = self.graph.iter().map(|&(b, a)| (a, b)).collect();
        graph.sort_unstable();
        FinPIso {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            graph,
        }
    }

    /// `f ⊎ g = inc₀₀(f) ∪ inc₁₁(g)`.
    pub fn tensor(&self, g: &FinPIso) -> FinPIso {
        let mut graph: Vec<(u32, u32)> = self
            .graph
            .iter()
            .map(|&(b, a)| (2 * b, 2 * a))
            .chain(g.graph.iter().map(|&(y, x)| (2 * y + 1, 2 * x + 1)))
            .collect();
        graph.sort_unstable();
        FinPIso {
            dom: self.dom.disjoint_union(&g.dom),
            cod: self.cod.disjoint_union(&g.cod),
            graph,
        }
    }

    fn require_parallel(&self, g: &FinPIso) -> Result<()> {
        if self.dom != g.dom || self.cod != g.cod {
            return Err(Error::Invalid("arrows are not parallel".into()));
        }
        Ok(())
    }

    /// Orthogonality by its defining equations `g‡f = 0` and `gf‡ = 0`.
    pub fn orthogonal(&self, g: &FinPIso) -> Result<bool> {
        self.require_parallel(g)?;
        Ok(g.dagger().compose_unchecked(self).is_zero()
            && g.compose_unchecked(&self.dagger()).is_zero())
    }

    /// Graph union; defined only when the union is still a partial injection.
    pub fn join(&self, g: &FinPIso) -> Result<FinPIso> {
        self.require_parallel(g)?;
        let graph: BTreeSet<(u32, u32)> = self.graph.iter().chain(&g.graph).copied().collect();
        let graph: Vec<(u32, u32)> = graph.into_iter().collect();
        if !is_injective_both_ways(&graph) {
            return Err(Error::JoinUndefined(format!(
                "{:?} ∪ {:?} is not a partial injection",
                self.graph, g.graph
            )));
        }
        Ok(FinPIso {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            graph,
        })
    }

    pub fn meet(&self, g: &FinPIso) -> Result<FinPIso> {
        self.require_parallel(g)?;
        Ok(FinPIso {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            graph: self
                .graph
                .iter()
                .filter(|p| g.graph.contains(p))
                .copied()
                .collect(),
        })
    }

    /// `self = g ∘ self‡ ∘ self`.
    pub fn natural_leq(&self, g: &FinPIso) -> Result<bool> {
        self.require_parallel(g)?;
        Ok(&g.compose_unchecked(&self.dagger().compose_unchecked(self)) == self)
    }

    pub fn is_subgraph_of(&self, g: &FinPIso) -> bool {
        self.graph.iter().all(|p| g.graph.contains(p))
    }

    pub fn is_idempotent(&self) -> bool {
        self.dom == self.cod && self.compose_unchecked(self) == *self
    }

    /// The single-pair pieces whose join is `self`.
    pub fn atoms(&self) -> Vec<FinPIso> {
        self.graph
            .iter()
            .map(|&p| FinPIso {
                dom: self.dom.clone(),
                cod: self.cod.clone(),
                graph: vec![p],
            })
            .collect()
    }

    /// Every partial injection `dom → cod`.
    pub fn all(dom: &FiniteSet, cod: &FiniteSet) -> Vec<FinPIso> {
        let mut out = Vec::new();
        let mut used = vec![false; cod.len()];
        let mut current = Vec::new();
        enumerate(dom, cod, 0, &mut used, &mut current, &mut out);
        out
    }

    pub fn random(dom: &FiniteSet, cod: &FiniteSet, rng: &mut impl Rng) -> FinPIso {
        let mut targets: Vec<u32> = cod.elements.clone();
        targets.shuffle(rng);
        let mut graph: Vec<(u32, u32)> = dom
            .elements
            .iter()
            .zip(targets)
            .filter(|_| rng.gen_bool(0.7))
            .map(|(&a, b)| (b, a))
            .collect();
        graph.sort_unstable();
        FinPIso {
            dom: dom.clone(),
            cod: cod.clone(),
            graph,
        }
    }
}

fn is_injective_both_ways(graph: &[(u32, u32)]) -> bool {
    graph
        .iter()
        .enumerate()
        .all(|(i, &(b, a))| graph[i + 1..].iter().all(|&(y, x)| (b == y) == (a == x)))
}

fn enumerate(
    dom: &FiniteSet,
    cod: &FiniteSet,
    i: usize,
    used: &mut [bool],
    current: &mut Vec<(u32, u32)>,
    out: &mut Vec<FinPIso>,
) {
    if i == dom.len() {
        let mut graph = current.clone();
        graph.sort_unstable();
        out.push(FinPIso {
            dom: dom.clone(),
            cod: cod.clone(),
            graph,
        });
        return;
    }
    enumerate(dom, cod, i + 1, used, current, out);
    for j in 0..cod.len() {
        if !used[j] {
            used[j] = true;
            current.push((cod.elements[j], dom.elements[i]));
            enumerate(dom, cod, i + 1, used, current, out);
            current.pop();
            used[j] = false;
        }
    }
}

impl fmt::Debug for FinPIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {:?} -> {:?}", self.graph, self.dom, self.cod)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub max_size: usize,
    pub exhaustive: bool,
    pub seed: Option<u64>,
    pub checks: Vec<AxiomCheck>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }
}

/// Supplies hom-sets: every arrow when exhaustive, a seeded sample otherwise.
struct Homs {
    sizes: Vec<usize>,
    sample: Option<(ChaCha8Rng, usize)>,
}

impl Homs {
    fn hom(&mut self, x: usize, y: usize) -> Vec<FinPIso> {
        let (dx, dy) = (FiniteSet::initial(x), FiniteSet::initial(y));
        match &mut self.sample {
            None => FinPIso::all(&dx, &dy),
            Some((rng, k)) => (0..*k).map(|_| FinPIso::random(&dx, &dy, rng)).collect(),
        }
    }

    fn idempotents(&mut self, x: usize) -> Vec<FinPIso> {
        let set = FiniteSet::initial(x);
        let subsets: Vec<u32> = match &mut self.sample {
            None => (0..1u32 << x).collect(),
            Some((rng, k)) => (0..*k)
                .map(|_| rng.gen_range(0..1u32 << x.min(31)))
                .collect(),
        };
        subsets
            .into_iter()
            .map(|mask| FinPIso {
                dom: set.clone(),
                cod: set.clone(),
                graph: (0..x as u32)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| (i, i))
                    .collect(),
            })
            .collect()
    }
}

struct Check {
    name: &'static str,
    cases: u64,
    counterexample: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            cases: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            name: self.name,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

/// Exhaustive check over carriers `{0..n-1}`, `n ≤ max_size`, when
/// `max_size ≤ 4`; seeded sampling with [`DEFAULT_SEED`] beyond that.
pub fn check_axioms(max_size: usize) -> OracleReport {
    check_axioms_seeded(max_size, DEFAULT_SEED)
}

pub fn check_axioms_seeded(max_size: usize, seed: u64) -> OracleReport {
    let exhaustive = max_size <= EXHAUSTIVE_LIMIT;
    let mut homs = if exhaustive {
        Homs {
            sizes: (0..=max_size).collect(),
            sample: None,
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sizes: Vec<usize> = vec![0, 1, max_size];
        sizes.push(rng.gen_range(2..max_size));
        sizes.sort_unstable();
        sizes.dedup();
        Homs {
            sizes,
            sample: Some((rng, 10)),
        }
    };
    let sizes = homs.sizes.clone();
    let mut checks = Vec::new();

    // Regularity, involution and uniqueness of generalised inverses.
    let mut regular = Check::new("generalised inverse: f f‡ f = f, f‡ f f‡ = f‡, f‡‡ = f");
    let mut unique = Check::new("uniqueness of generalised inverses");
    let mut unitary = Check::new("isomorphisms are unitary");
    for &x in &sizes {
        for &y in &sizes {
            let fwd = homs.hom(x, y);
            let back = homs.hom(y, x);
            for f in &fwd {
                let fd = f.dagger();
                regular.record(
                    f.compose_unchecked(&fd).compose_unchecked(f) == *f
                        && fd.compose_unchecked(f).compose_unchecked(&fd) == fd
                        && fd.dagger() == *f,
                    || format!("{f:?}"),
                );
                for g in &back {
                    let inverse_like = f.compose_unchecked(g).compose_unchecked(f) == *f
                        && g.compose_unchecked(f).compose_unchecked(g) == *g;
                    unique.record(!inverse_like || *g == fd, || {
                        format!("f = {f:?}, g = {g:?}")
                    });
                    let iso = f.compose_unchecked(g) == FinPIso::identity(f.cod())
                        && g.compose_unchecked(f) == FinPIso::identity(f.dom());
                    unitary.record(!iso || *g == fd, || format!("u = {f:?}, u⁻¹ = {g:?}"));
                }
            }
        }
    }
    checks.extend([regular.finish(), unique.finish(), unitary.finish()]);

    let mut contravariant = Check::new("dagger is contravariant: (g f)‡ = f‡ g‡");
    for &x in &sizes {
        for &y in &sizes {
            let fs = homs.hom(x, y);
            for &z in &sizes {
                let gs = homs.hom(y, z);
                for f in &fs {
                    for g in &gs {
                        contravariant.record(
                            g.compose_unchecked(f).dagger()
                                == f.dagger().compose_unchecked(&g.dagger()),
                            || format!("f = {f:?}, g = {g:?}"),
                        );
                    }
                }
            }
        }
    }
    checks.push(contravariant.finish());

    let mut commute = Check::new("idempotents commute and are closed under composition");
    for &x in &sizes {
        let all: Vec<FinPIso> = homs
            .hom(x, x)
            .into_iter()
            .filter(FinPIso::is_idempotent)
            .collect();
        for e in &all {
            for e2 in &all {
                let ee2 = e.compose_unchecked(e2);
                commute.record(
                    ee2 == e2.compose_unchecked(e) && ee2.is_idempotent(),
                    || format!("e = {e:?}, e' = {e2:?}"),
                );
            }
        }
    }
    checks.push(commute.finish());

    let mut pushing = Check::new("pushing an idempotent: e' = f e f‡ is idempotent, e' f = f e");
    for &x in &sizes {
        let es = homs.idempotents(x);
        for &y in &sizes {
            for f in &homs.hom(x, y) {
                for e in &es {
                    let e2 = f.compose_unchecked(e).compose_unchecked(&f.dagger());
                    pushing.record(
                        e2.is_idempotent() && e2.compose_unchecked(f) == f.compose_unchecked(e),
                        || format!("f = {f:?}, e = {e:?}"),
                    );
                }
            }
        }
    }
    checks.push(pushing.finish());

    // The order by its defining equation, against graph inclusion.
    let mut order = Check::new("natural order is graph inclusion");
    let mut congruence = Check::new("natural order is a congruence");
    for &x in &sizes {
        for &y in &sizes {
            let xy = homs.hom(x, y);
            let mut below = Vec::new();
            for f in &xy {
                for h in &xy {
                    let leq = f.natural_leq(h).expect("parallel");
                    order.record(leq == f.is_subgraph_of(h), || {
                        format!("f = {f:?}, g = {h:?}")
                    });
                    if leq {
                        below.push((f, h));
                    }
                }
            }
            for &z in &sizes {
                let yz = homs.hom(y, z);
                let mut below_yz = Vec::new();
                for g in &yz {
                    for k in &yz {
                        if g.natural_leq(k).expect("parallel") {
                            below_yz.push((g, k));
                        }
                    }
                }
                for &(f, h) in &below {
                    for &(g, k) in &below_yz {
                        let lhs = g.compose_unchecked(f);
                        let rhs = k.compose_unchecked(h);
                        congruence.record(lhs.natural_leq(&rhs).expect("parallel"), || {
                            format!("f ⊴ h: {f:?} ⊴ {h:?}; g ⊴ k: {g:?} ⊴ {k:?}")
                        });
                    }
                }
            }
        }
    }
    checks.extend([order.finish(), congruence.finish()]);

    let mut distributive =
        Check::new("composition distributes over joins of pairwise-orthogonal families");
    // Two-sided contexts range over carriers up to this size; at size 4 the
    // full product is tens of millions of cases.
    let context_limit = if max_size <= 3 { max_size } else { 2 };
    let contexts: Vec<usize> = sizes
        .iter()
        .copied()
        .filter(|&s| s <= context_limit || !exhaustive)
        .collect();
    for &x in &sizes {
        for &y in &sizes {
            let xy = homs.hom(x, y);
            let mut families: Vec<Vec<FinPIso>> = Vec::new();
            for (i, f1) in xy.iter().enumerate() {
                for f2 in &xy[i + 1..] {
                    if f1.orthogonal(f2).expect("parallel") {
                        families.push(vec![f1.clone(), f2.clone()]);
                    }
                }
                families.push(f1.atoms());
            }
            for &w in &contexts {
                let wx = homs.hom(w, x);
                for &z in &contexts {
                    let yz = homs.hom(y, z);
                    for fam in &families {
                        let joined = fam.iter().try_fold(
                            FinPIso::zero(FiniteSet::initial(x), FiniteSet::initial(y)),
                            |acc, f| acc.join(f),
                        );
                        let Ok(joined) = joined else {
                            distributive.record(false, || format!("family {fam:?} has no join"));
                            continue;
                        };
                        for a in &wx {
                            for b in &yz {
                                let lhs = b.compose_unchecked(&joined).compose_unchecked(a);
                                let rhs = fam.iter().try_fold(
                                    FinPIso::zero(FiniteSet::initial(w), FiniteSet::initial(z)),
                                    |acc, f| acc.join(&b.compose_unchecked(f).compose_unchecked(a)),
                                );
                                distributive.record(rhs.as_ref() == Ok(&lhs), || {
                                    format!("family {fam:?}, a = {a:?}, b = {b:?}")
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    checks.push(distributive.finish());

    OracleReport {
        max_size,
        exhaustive,
        seed: (!exhaustive).then_some(seed),
        checks,
    }
}
