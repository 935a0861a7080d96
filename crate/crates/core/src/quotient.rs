//! Truncated quotients `T(V)/⟨R⟩` of the free tensor algebra.
//!
//! A [`QuotientContext`] completes the relation set to a degree-truncated
//! rewriting system (noncommutative Buchberger completion under the
//! degree-lexicographic word order, stopped at word length `D + H`).
//! Words of degree at most `D` that contain no leading word are the
//! quotient basis, and [`QuotientContext::reduce`] rewrites any element onto
//! them.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use serde::Serialize;

use crate::freealg::{wedge, Element, MetricSpace, Word};
use crate::geometry::BivectorTransform;
use crate::scalar::{HalfInteger, Rational};
use crate::uea::{self, PbwElement};
use crate::Error;

/// A named, deterministic list of relation generators in `T(V)`.
#[derive(Clone, Debug)]
pub struct RelationFamily {
    name: String,
    dim: usize,
    generators: Vec<Element>,
}

impl RelationFamily {
    /// A family from explicit generators; zero generators are dropped.
    pub fn new(name: impl Into<String>, dim: usize, generators: Vec<Element>) -> Self {
        RelationFamily {
            name: name.into(),
            dim,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    /// No relations: the free algebra itself.
    pub fn free(dim: usize) -> Self {
        Self::new("free", dim, Vec::new())
    }

    /// `e_i ⊗ e_j + e_j ⊗ e_i - 2 g(e_i, e_j)` for `i ≤ j`.
    pub fn clifford(space: &MetricSpace) -> Self {
        let n = space.dim();
        let mut gens = Vec::new();
        for i in 1..=n as u8 {
            for j in i..=n as u8 {
                let mut r = &Element::word(n, &[i, j]) + &Element::word(n, &[j, i]);
                r.add_term(Word::empty(), -(space.g(i, j) * &Rational::from_integer(2)));
                gens.push(r);
            }
        }
        Self::new("clifford", n, gens)
    }

    /// `(e_a ∧ e_b) ⊗ e_c - e_c ⊗ (e_a ∧ e_b) - g(a,c) e_b + g(b,c) e_a` for `a < b`.
    pub fn weak(space: &MetricSpace) -> Self {
        let n = space.dim();
        let mut gens = Vec::new();
        for a in 1..=n as u8 {
            for b in a + 1..=n as u8 {
                let ab = basis_wedge(n, &[a, b]);
                for c in 1..=n as u8 {
                    let ec = Element::basis(n, c);
                    let mut r = ab.commutator(&ec).expect("same dimension");
                    r.add_term(Word::new(&[b]), -space.g(a, c).clone());
                    r.add_term(Word::new(&[a]), space.g(b, c).clone());
                    gens.push(r);
                }
            }
        }
        Self::new("weak", n, gens)
    }

    /// `e_a ⊗ e_b - e_b ⊗ e_a` for `a < b`.
    pub fn sym(dim: usize) -> Self {
        let mut gens = Vec::new();
        for a in 1..=dim as u8 {
            for b in a + 1..=dim as u8 {
                gens.push(&Element::word(dim, &[a, b]) - &Element::word(dim, &[b, a]));
            }
        }
        Self::new("sym", dim, gens)
    }

    /// Images of `μ_{2s+1}` on every generator word, written in vector words
    /// of `T(E)`, `dim E = 3`, through `J_p = ½ Σ ε_abp e_a ∧ e_b`.
    pub fn spin_ideal_relations(s: HalfInteger) -> Result<Self, Error> {
        if s.is_zero() {
            return Err(Error::SpinZero);
        }
        let transform = BivectorTransform::weak();
        let gens = multipole_images(s)
            .iter()
            .map(|t| transform.j_to_bivectors(&t.to_free()))
            .collect();
        Ok(Self::new(format!("spin-ideal:{s}"), 3, gens))
    }

    /// Spinless weak relations over `(E, δ)` together with the spin-`s` ideal.
    pub fn spin_weak(s: HalfInteger) -> Result<Self, Error> {
        let ideal = Self::spin_ideal_relations(s)?;
        Ok(Self::weak(&MetricSpace::euclidean(3))
            .extended(&ideal)
            .renamed(format!("spin:{s}")))
    }

    /// The presentation of `U(so(3))`: `J_a J_b - J_b J_a - Σ_c ε_abc J_c`,
    /// letters `1..=3` standing for `J1..J3`.
    pub fn uea() -> Self {
        let mut gens = Vec::new();
        for a in 1..=3u8 {
            for b in a + 1..=3u8 {
                let mut r = &Element::word(3, &[a, b]) - &Element::word(3, &[b, a]);
                for c in 1..=3u8 {
                    let e = uea::epsilon(a, b, c);
                    if e != 0 {
                        r.add_term(Word::new(&[c]), Rational::from_integer(-e));
                    }
                }
                gens.push(r);
            }
        }
        Self::new("uea", 3, gens)
    }

    /// `U(so(3))` modulo the two-sided ideal generated by `Im μ_{2s+1}`, in `J` letters.
    pub fn uea_spin(s: HalfInteger) -> Self {
        let images = multipole_images(s).iter().map(PbwElement::to_free).collect();
        Self::uea()
            .extended(&Self::new("", 3, images))
            .renamed(format!("uea-spin:{s}"))
    }

    pub fn extended(mut self, other: &RelationFamily) -> Self {
        assert_eq!(self.dim, other.dim, "relation families over different spaces");
        self.generators.extend(other.generators.iter().cloned());
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Generators of degree at most `degree`.
    pub fn generators_up_to(&self, degree: usize) -> impl Iterator<Item = &Element> {
        self.generators
            .iter()
            .filter(move |g| g.degree().unwrap_or(0) <= degree)
    }
}

/// `μ_{2s+1}` on every index word of length `2s+1`.
fn multipole_images(s: HalfInteger) -> Vec<PbwElement> {
    let k = s.twice() as usize + 1;
    let mut table = uea::MultipoleTable::new();
    uea::index_words(k)
        .iter()
        .map(|w| table.get(w).expect("indices in range"))
        .collect()
}

/// `e_{i1} ∧ ... ∧ e_{ik}`.
pub fn basis_wedge(dim: usize, indices: &[u8]) -> Element {
    let vectors: Vec<Element> = indices.iter().map(|&i| Element::basis(dim, i)).collect();
    wedge(&vectors).expect("basis vectors")
}

/// A monic rewriting rule `lead -> -(tail)`.
#[derive(Clone, Debug)]
struct Rule {
    lead: Word,
    /// Remaining terms, descending.
    tail: Vec<(Word, Rational)>,
}

impl Rule {
    fn to_map(&self) -> BTreeMap<Word, Rational> {
        let mut m: BTreeMap<Word, Rational> = self.tail.iter().cloned().collect();
        m.insert(self.lead.clone(), Rational::one());
        m
    }

    fn to_element(&self, dim: usize) -> Element {
        Element::from_terms(dim, self.to_map())
    }
}

enum Task {
    Reduce(BTreeMap<Word, Rational>),
    /// Overlap of rule `i`'s lead suffix with rule `j`'s lead prefix of length `k`.
    Overlap(usize, usize, usize),
}

struct Completion {
    rules: Vec<Option<Rule>>,
    index: HashMap<Box<[u8]>, usize>,
    lead_lengths: Vec<usize>,
    cap: usize,
    queue: BinaryHeap<Reverse<(usize, usize)>>,
    tasks: Vec<Option<Task>>,
}

impl Completion {
    fn new(cap: usize) -> Self {
        Completion {
            rules: Vec::new(),
            index: HashMap::new(),
            lead_lengths: Vec::new(),
            cap,
            queue: BinaryHeap::new(),
            tasks: Vec::new(),
        }
    }

    fn push(&mut self, degree: usize, task: Task) {
        self.queue.push(Reverse((degree, self.tasks.len())));
        self.tasks.push(Some(task));
    }

    fn divisor(&self, w: &[u8]) -> Option<(usize, usize)> {
        find_divisor(&self.index, &self.lead_lengths, w)
    }

    /// Full normal form.
    fn normal_form(&self, mut work: BTreeMap<Word, Rational>) -> BTreeMap<Word, Rational> {
        let mut out = BTreeMap::new();
        while let Some((w, c)) = work.pop_last() {
            let Some((r, at)) = self.divisor(w.letters()) else {
                out.insert(w, c);
                continue;
            };
            let rule = self.rules[r].as_ref().expect("indexed rules are live");
            let l = w.letters();
            let (pre, post) = (&l[..at], &l[at + rule.lead.len()..]);
            for (t, a) in &rule.tail {
                let mut v: Vec<u8> = Vec::with_capacity(pre.len() + t.len() + post.len());
                v.extend_from_slice(pre);
                v.extend_from_slice(t.letters());
                v.extend_from_slice(post);
                add_to(&mut work, Word::new(&v), -(a * &c));
            }
        }
        out
    }

    fn insert(&mut self, poly: BTreeMap<Word, Rational>) {
        let Some((lead, lc)) = poly.last_key_value() else {
            return;
        };
        let lead = lead.clone();
        let inv = lc.recip();
        let tail: Vec<(Word, Rational)> = poly
            .iter()
            .rev()
            .skip(1)
            .map(|(w, c)| (w.clone(), c * &inv))
            .collect();
        // rules made redundant by the new lead go back into the queue
        let displaced: Vec<usize> = self
            .rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let r = r.as_ref()?;
                contains_subword(r.lead.letters(), lead.letters()).then_some(i)
            })
            .collect();
        for i in displaced {
            let rule = self.rules[i].take().expect("live rule");
            self.index.remove(rule.lead.letters());
            self.push(rule.lead.len(), Task::Reduce(rule.to_map()));
        }
        let id = self.rules.len();
        self.index.insert(lead.letters().into(), id);
        self.rules.push(Some(Rule {
            lead: lead.clone(),
            tail,
        }));
        self.lead_lengths = self
            .rules
            .iter()
            .flatten()
            .map(|r| r.lead.len())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let live: Vec<(usize, Word)> = self
            .rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, r.lead.clone())))
            .collect();
        for (j, other) in live {
            for k in overlaps(lead.letters(), other.letters()) {
                let deg = lead.len() + other.len() - k;
                if deg <= self.cap {
                    self.push(deg, Task::Overlap(id, j, k));
                }
            }
            if j != id {
                for k in overlaps(other.letters(), lead.letters()) {
                    let deg = lead.len() + other.len() - k;
                    if deg <= self.cap {
                        self.push(deg, Task::Overlap(j, id, k));
                    }
                }
            }
        }
    }

    fn run(&mut self) {
        while let Some(Reverse((_, t))) = self.queue.pop() {
            let task = self.tasks[t].take().expect("each task runs once");
            let poly = match task {
                Task::Reduce(p) => p,
                Task::Overlap(i, j, k) => {
                    let (Some(ri), Some(rj)) = (&self.rules[i], &self.rules[j]) else {
                        continue;
                    };
                    // ri.lead = u·x, rj.lead = x·v with |x| = k; S = ri·v - u·rj
                    let v = &rj.lead.letters()[k..];
                    let u = &ri.lead.letters()[..ri.lead.len() - k];
                    let mut s = BTreeMap::new();
                    for (w, c) in &ri.tail {
                        add_to(&mut s, cat(&[w.letters(), v]), c.clone());
                    }
                    for (w, c) in &rj.tail {
                        add_to(&mut s, cat(&[u, w.letters()]), -c.clone());
                    }
                    s
                }
            };
            let reduced = self.normal_form(poly);
            if !reduced.is_empty() {
                self.insert(reduced);
            }
        }
    }
}

fn cat(parts: &[&[u8]]) -> Word {
    Word::new(&parts.concat())
}

fn add_to(map: &mut BTreeMap<Word, Rational>, w: Word, c: Rational) {
    match map.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// First occurrence of an indexed lead inside `w`: `(rule, offset)`.
fn find_divisor(
    index: &HashMap<Box<[u8]>, usize>,
    lead_lengths: &[usize],
    w: &[u8],
) -> Option<(usize, usize)> {
    for start in 0..=w.len() {
        for &len in lead_lengths {
            if start + len > w.len() {
                break;
            }
            if let Some(&r) = index.get(&w[start..start + len]) {
                return Some((r, start));
            }
        }
    }
    None
}

/// Proper overlap lengths `k`: the last `k` letters of `a` are the first `k` of `b`.
fn overlaps(a: &[u8], b: &[u8]) -> Vec<usize> {
    let max = a.len().min(b.len());
    (1..max.max(1))
        .filter(|&k| k < a.len() && k < b.len())
        .filter(|&k| a[a.len() - k..] == b[..k])
        .collect()
}

fn contains_subword(haystack: &[u8], needle: &[u8]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Result of rebuilding a context with two more degrees of headroom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub headroom: usize,
    pub dims: Vec<usize>,
    pub audit_headroom: usize,
    pub audit_dims: Vec<usize>,
    pub stable: bool,
}

/// A truncated quotient of `T(V)` by a two-sided ideal.
#[derive(Clone, Debug)]
pub struct QuotientContext {
    space: MetricSpace,
    relations: RelationFamily,
    max_degree: usize,
    headroom: usize,
    rules: Vec<Rule>,
    index: HashMap<Box<[u8]>, usize>,
    lead_lengths: Vec<usize>,
    basis: Vec<Vec<Word>>,
    dims: Vec<usize>,
}

impl QuotientContext {
    /// Completes `relations` up to word length `max_degree + headroom` and
    /// selects the normal words of degree at most `max_degree`.
    pub fn build(
        space: &MetricSpace,
        relations: RelationFamily,
        max_degree: usize,
        headroom: usize,
    ) -> Self {
        assert_eq!(
            space.dim(),
            relations.dim(),
            "relation family does not match the space"
        );
        let cap = max_degree + headroom;
        let mut completion = Completion::new(cap);
        for g in relations.generators_up_to(cap) {
            let map: BTreeMap<Word, Rational> =
                g.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
            completion.push(g.degree().unwrap_or(0), Task::Reduce(map));
        }
        completion.run();

        let rules: Vec<Rule> = completion.rules.into_iter().flatten().collect();
        let index: HashMap<Box<[u8]>, usize> = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lead.letters().into(), i))
            .collect();
        let lead_lengths = completion.lead_lengths;
        let mut ctx = QuotientContext {
            space: space.clone(),
            relations,
            max_degree,
            headroom,
            rules,
            index,
            lead_lengths,
            basis: Vec::new(),
            dims: Vec::new(),
        };
        ctx.enumerate_basis();
        ctx
    }

    fn enumerate_basis(&mut self) {
        let n = self.space.dim() as u8;
        let mut layers: Vec<Vec<Word>> = Vec::new();
        let mut current = if self.suffix_is_normal(&[]) {
            vec![Word::empty()]
        } else {
            Vec::new()
        };
        for d in 0..=self.max_degree {
            if d > 0 {
                let mut next = Vec::new();
                for w in &current {
                    for a in 1..=n {
                        let mut v = w.clone();
                        v.push(a);
                        if self.suffix_is_normal(v.letters()) {
                            next.push(v);
                        }
                    }
                }
                next.sort();
                current = next;
            }
            layers.push(current.clone());
        }
        let mut total = 0;
        self.dims = layers
            .iter()
            .map(|l| {
                total += l.len();
                total
            })
            .collect();
        self.basis = layers;
    }

    /// No lead occurs as a suffix of `w`.
    fn suffix_is_normal(&self, w: &[u8]) -> bool {
        !self
            .lead_lengths
            .iter()
            .any(|&len| len <= w.len() && self.index.contains_key(&w[w.len() - len..]))
    }

    fn divisor(&self, w: &[u8]) -> Option<(usize, usize)> {
        find_divisor(&self.index, &self.lead_lengths, w)
    }

    /// Canonical representative of `x` on the quotient basis.
    pub fn reduce(&self, x: &Element) -> Result<Element, Error> {
        if x.dim() != self.space.dim() {
            return Err(Error::DimensionMismatch {
                left: x.dim(),
                right: self.space.dim(),
            });
        }
        if let Some(d) = x.degree() {
            if d > self.max_degree {
                return Err(Error::DegreeOverflow {
                    degree: d,
                    max: self.max_degree,
                });
            }
        }
        let mut work: BTreeMap<Word, Rational> =
            x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = Element::zero(x.dim());
        while let Some((w, c)) = work.pop_last() {
            let Some((r, at)) = self.divisor(w.letters()) else {
                out.add_term(w, c);
                continue;
            };
            let rule = &self.rules[r];
            let l = w.letters();
            let (pre, post) = (&l[..at], &l[at + rule.lead.len()..]);
            for (t, a) in &rule.tail {
                add_to(&mut work, cat(&[pre, t.letters(), post]), -(a * &c));
            }
        }
        Ok(out)
    }

    /// `reduce(x) == 0`.
    pub fn is_zero(&self, x: &Element) -> Result<bool, Error> {
        Ok(self.reduce(x)?.is_zero())
    }

    /// Cumulative dimensions of the degree-`≤ d` components, `d = 0..=D`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension of each homogeneous layer of normal words.
    pub fn layer_dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Normal words of each degree.
    pub fn quotient_basis(&self) -> &[Vec<Word>] {
        &self.basis
    }

    /// The computed ideal segment as monic elements, leading word first.
    pub fn ideal_basis(&self) -> Vec<Element> {
        self.rules
            .iter()
            .map(|r| r.to_element(self.space.dim()))
            .collect()
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    pub fn relations(&self) -> &RelationFamily {
        &self.relations
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn headroom(&self) -> usize {
        self.headroom
    }

    /// Rebuilds with headroom `H + 2` and compares dimensions up to `D`.
    pub fn audit(&self) -> Audit {
        let wider = QuotientContext::build(
            &self.space,
            self.relations.clone(),
            self.max_degree,
            self.headroom + 2,
        );
        Audit {
            headroom: self.headroom,
            dims: self.dims.clone(),
            audit_headroom: self.headroom + 2,
            audit_dims: wider.dims.clone(),
            stable: wider.dims == self.dims,
        }
    }
}

/// Rank of a list of elements over `ℚ`.
pub fn rank(elements: &[Element]) -> usize {
    let mut pivots: BTreeMap<Word, Element> = BTreeMap::new();
    for e in elements {
        let mut v = e.clone();
        loop {
            let Some((lead, c)) = v.terms().next_back().map(|(w, c)| (w.clone(), c.clone())) else {
                break;
            };
            match pivots.get(&lead) {
                Some(row) => v = &v - &row.scale(&c),
                None => {
                    pivots.insert(lead, v.scale(&c.recip()));
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn e3(letters: &[u8]) -> Element {
        Element::word(3, letters)
    }

    fn all_words(n: u8, max: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max {
            let mut next = Vec::new();
            for w in &layer {
                for a in 1..=n {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Dimensions by plain linear algebra on every sandwich `x ⊗ r ⊗ y` of
    /// degree at most `cap`, projected to degree `≤ d`.
    fn sandwich_dims(rel: &RelationFamily, n: u8, d: usize, cap: usize) -> Vec<usize> {
        let words = all_words(n, cap);
        let mut sandwiches = Vec::new();
        for r in rel.generators() {
            let rd = r.degree().unwrap_or(0);
            for x in &words {
                for y in &words {
                    if x.len() + rd + y.len() > cap {
                        continue;
                    }
                    let xe = Element::monomial(n as usize, x.clone(), Rational::one());
                    let ye = Element::monomial(n as usize, y.clone(), Rational::one());
                    sandwiches.push(&(&xe * r) * &ye);
                }
            }
        }
        // row reduce with the greatest word as pivot; the span intersected with
        // degree ≤ k has dimension = number of pivots of degree ≤ k
        let mut pivots: BTreeMap<Word, Element> = BTreeMap::new();
        for s in sandwiches {
            let mut v = s;
            loop {
                let Some((lead, c)) = v.terms().next_back().map(|(w, c)| (w.clone(), c.clone())) else {
                    break;
                };
                match pivots.get(&lead) {
                    Some(row) => v = &v - &row.scale(&c),
                    None => {
                        pivots.insert(lead, v.scale(&c.recip()));
                        break;
                    }
                }
            }
        }
        (0..=d)
            .map(|k| {
                let total = words.iter().filter(|w| w.len() <= k).count();
                total - pivots.keys().filter(|w| w.len() <= k).count()
            })
            .collect()
    }

    #[test]
    fn clifford_dims() {
        let space = MetricSpace::euclidean(3);
        let ctx = QuotientContext::build(&space, RelationFamily::clifford(&space), 3, 2);
        assert_eq!(ctx.dims(), &[1, 4, 7, 8]);
        let ctx = QuotientContext::build(&space, RelationFamily::clifford(&space), 5, 2);
        assert_eq!(ctx.dims(), &[1, 4, 7, 8, 8, 8]);
        assert_eq!(
            sandwich_dims(&RelationFamily::clifford(&space), 3, 3, 5),
            vec![1, 4, 7, 8]
        );
    }

    #[test]
    fn clifford_dims_in_other_signatures() {
        for (p, q) in [(1, 1), (1, 3), (2, 2)] {
            let space = MetricSpace::signature(p, q);
            let n = p + q;
            let ctx = QuotientContext::build(&space, RelationFamily::clifford(&space), n + 1, 2);
            assert_eq!(*ctx.dims().last().unwrap(), 1 << n);
        }
    }

    #[test]
    fn symmetric_and_free_dims() {
        let ctx = QuotientContext::build(&MetricSpace::euclidean(3), RelationFamily::sym(3), 3, 2);
        // oracle: number of monomials of degree ≤ d in 3 commuting variables
        let counts: Vec<usize> = (0..=3).map(|d| (d + 1) * (d + 2) * (d + 3) / 6).collect();
        assert_eq!(ctx.dims(), counts.as_slice());
        let ctx = QuotientContext::build(&MetricSpace::euclidean(3), RelationFamily::free(3), 2, 2);
        assert_eq!(ctx.dims(), &[1, 4, 13]);
    }

    #[test]
    fn clifford_reductions() {
        let space = MetricSpace::euclidean(3);
        let ctx = QuotientContext::build(&space, RelationFamily::clifford(&space), 3, 2);
        assert_eq!(ctx.reduce(&e3(&[1, 1])).unwrap(), Element::one(3));
        assert_eq!(
            ctx.reduce(&e3(&[2, 1])).unwrap(),
            e3(&[1, 2]).scale(&q(-1, 1))
        );
        assert!(matches!(
            ctx.reduce(&e3(&[1, 2, 3, 1])),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn weak_reductions() {
        let space = MetricSpace::euclidean(3);
        let ctx = QuotientContext::build(&space, RelationFamily::weak(&space), 3, 2);
        let b12 = basis_wedge(3, &[1, 2]);
        let x = b12.commutator(&e3(&[3])).unwrap();
        assert!(ctx.reduce(&x).unwrap().is_zero());
        let x = b12.commutator(&e3(&[1])).unwrap();
        assert_eq!(ctx.reduce(&x).unwrap(), e3(&[2]));
    }

    #[test]
    fn weak_dims_follow_the_lie_algebra_hilbert_series() {
        // generators of degree 1 (three) and 2 (three): 1/((1-t)^3 (1-t^2)^3)
        let series = hilbert_series(&[3, 3], 6);
        let mut cumulative = Vec::new();
        let mut total = 0;
        for c in series {
            total += c;
            cumulative.push(total);
        }
        let space = MetricSpace::euclidean(3);
        let ctx = QuotientContext::build(&space, RelationFamily::weak(&space), 5, 2);
        assert_eq!(ctx.dims(), &cumulative[..6]);
    }

    /// Coefficients of `Π_d 1/(1-t^d)^{m_d}` up to `t^max`, `m_d = counts[d-1]`.
    fn hilbert_series(counts: &[usize], max: usize) -> Vec<usize> {
        let mut series = vec![0usize; max + 1];
        series[0] = 1;
        for (i, &m) in counts.iter().enumerate() {
            let d = i + 1;
            for _ in 0..m {
                for k in d..=max {
                    series[k] += series[k - d];
                }
            }
        }
        series
    }

    #[test]
    fn completion_contains_the_sandwich_span() {
        let space = MetricSpace::euclidean(3);
        let weak = RelationFamily::weak(&space);
        let ctx = QuotientContext::build(&space, weak.clone(), 3, 1);
        let sandwich = sandwich_dims(&weak, 3, 3, 4);
        for (a, b) in ctx.dims().iter().zip(&sandwich) {
            assert!(a <= b);
        }
    }

    #[test]
    fn relations_reduce_to_zero() {
        let space = MetricSpace::signature(1, 2);
        for rel in [
            RelationFamily::clifford(&space),
            RelationFamily::weak(&space),
            RelationFamily::sym(3),
        ] {
            let ctx = QuotientContext::build(&space, rel.clone(), 3, 2);
            for g in rel.generators() {
                assert!(ctx.reduce(g).unwrap().is_zero(), "{} {g}", rel.name());
            }
        }
    }

    #[test]
    fn spin_ideal_generator_counts() {
        let half = RelationFamily::spin_ideal_relations(HalfInteger::HALF).unwrap();
        assert_eq!(half.generators().len(), 9);
        assert!(half.generators().iter().all(|g| g.degree() == Some(4)));
        let one = RelationFamily::spin_ideal_relations(HalfInteger::ONE).unwrap();
        assert_eq!(one.generators().len(), 27);
        assert!(one.generators().iter().all(|g| g.degree() == Some(6)));
        assert_eq!(
            RelationFamily::spin_ideal_relations(HalfInteger::ZERO).unwrap_err(),
            Error::SpinZero
        );
    }

    #[test]
    fn uea_presentation_has_pbw_dims() {
        let ctx = QuotientContext::build(&MetricSpace::euclidean(3), RelationFamily::uea(), 4, 2);
        let counts: Vec<usize> = (0..=4).map(|d| (d + 1) * (d + 2) * (d + 3) / 6).collect();
        assert_eq!(ctx.dims(), counts.as_slice());
        // reduction agrees with PBW normal form
        let x = e3(&[3, 2, 1]);
        let nf = uea::pbw_normal_form(&x).to_free();
        assert_eq!(ctx.reduce(&x).unwrap(), ctx.reduce(&nf).unwrap());
    }

    fn arb_element(n: u8, max_len: usize) -> impl Strategy<Value = Element> {
        proptest::collection::vec(
            (proptest::collection::vec(1u8..=n, 0..=max_len), -3i64..=3),
            0..5,
        )
        .prop_map(move |terms| {
            Element::from_terms(
                n as usize,
                terms
                    .into_iter()
                    .map(|(w, c)| (Word::new(&w), Rational::from_integer(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reduce_is_linear_and_idempotent(
            x in arb_element(3, 4),
            y in arb_element(3, 4),
            a in -3i64..=3,
        ) {
            let space = MetricSpace::euclidean(3);
            let ctx = QuotientContext::build(&space, RelationFamily::weak(&space), 4, 2);
            let rx = ctx.reduce(&x).unwrap();
            prop_assert_eq!(ctx.reduce(&rx).unwrap(), rx.clone());
            let a = Rational::from_integer(a);
            let lhs = ctx.reduce(&(&x.scale(&a) + &y)).unwrap();
            let rhs = &rx.scale(&a) + &ctx.reduce(&y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduce_respects_products(x in arb_element(3, 2), y in arb_element(3, 2)) {
            let space = MetricSpace::signature(2, 1);
            let ctx = QuotientContext::build(&space, RelationFamily::clifford(&space), 4, 2);
            let lhs = ctx.reduce(&(&x * &y)).unwrap();
            let rhs = ctx.reduce(&(&ctx.reduce(&x).unwrap() * &ctx.reduce(&y).unwrap())).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
