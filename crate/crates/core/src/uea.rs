//! `U(so(3))` in PBW normal form, the adjoint action, multipole tensors and
//! the monopole projection.
//!
//! Generators `J1, J2, J3` satisfy `[J_a, J_b] = Σ_c ε_abc J_c`. Normal-ordered
//! monomials are `J1^m1 J2^m2 J3^m3`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::freealg::{Element, Word};
use crate::scalar::{CasimirPoly, Poly, Rational};
use crate::Error;

/// Levi-Civita symbol on 1-based indices.
pub fn epsilon(a: u8, b: u8, c: u8) -> i64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// The index `c` completing `(a, b)` to a permutation of `{1,2,3}`, with its sign.
fn bracket(a: u8, b: u8) -> Option<(u8, i64)> {
    if a == b {
        return None;
    }
    let c = 6 - a - b;
    Some((c, epsilon(a, b, c)))
}

/// Exponents `(m1, m2, m3)` of the ordered monomial `J1^m1 J2^m2 J3^m3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Letters of the ordered product, e.g. `J1^2 J3 -> [1, 1, 3]`.
    pub fn letters(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (i, &m) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat(i as u8 + 1).take(m as usize));
        }
        out
    }

    fn with(mut self, letter: u8, delta: i32) -> Monomial {
        let e = &mut self.0[letter as usize - 1];
        *e = (*e as i32 + delta) as u32;
        self
    }

    fn first_letter(&self) -> Option<u8> {
        self.0.iter().position(|&m| m > 0).map(|i| i as u8 + 1)
    }

    fn last_letter(&self) -> Option<u8> {
        self.0.iter().rposition(|&m| m > 0).map(|i| i as u8 + 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of `U(so(3))` in PBW normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PbwElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl PbwElement {
    pub fn zero() -> Self {
        PbwElement::default()
    }

    pub fn scalar(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    /// The generator `J_a`, `a` in `1..=3`.
    pub fn generator(a: u8) -> Self {
        assert!((1..=3).contains(&a), "generator index out of range");
        Self::monomial(Monomial::ONE.with(a, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut e = PbwElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn add_scaled(&mut self, other: &PbwElement, c: &Rational) {
        for (m, a) in &other.terms {
            self.add_term(*m, a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> PbwElement {
        let mut out = PbwElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// `J_a · self`, normal ordered.
    pub fn left_mul_generator(&self, a: u8) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&left_gen_mono(a, *m), c);
        }
        out
    }

    /// `self · J_a`, normal ordered.
    pub fn right_mul_generator(&self, a: u8) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&right_gen_mono(*m, a), c);
        }
        out
    }

    /// Normal-ordered product `self · other`.
    pub fn mul(&self, other: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in &self.terms {
            let mut acc = other.clone();
            for &l in m.letters().iter().rev() {
                acc = acc.left_mul_generator(l);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> PbwElement {
        (0..k).fold(PbwElement::one(), |acc, _| acc.mul(self))
    }

    /// The element as a free-algebra element over the letters `1..=3`,
    /// each monomial written as its ordered word.
    pub fn to_free(&self) -> Element {
        Element::from_terms(
            3,
            self.terms
                .iter()
                .map(|(m, c)| (Word::new(&m.letters()), c.clone())),
        )
    }
}

thread_local! {
    static LEFT_CACHE: RefCell<HashMap<(u8, Monomial), PbwElement>> = RefCell::new(HashMap::new());
    static RIGHT_CACHE: RefCell<HashMap<(Monomial, u8), PbwElement>> = RefCell::new(HashMap::new());
}

fn left_gen_mono(a: u8, m: Monomial) -> PbwElement {
    match m.first_letter() {
        None => return PbwElement::monomial(m.with(a, 1), Rational::one()),
        Some(j) if a <= j => return PbwElement::monomial(m.with(a, 1), Rational::one()),
        _ => {}
    }
    if let Some(hit) = LEFT_CACHE.with(|c| c.borrow().get(&(a, m)).cloned()) {
        return hit;
    }
    // J_a J_j m' = J_j (J_a m') + [J_a, J_j] m'
    let j = m.first_letter().unwrap();
    let rest = m.with(j, -1);
    let mut out = left_gen_mono(a, rest).left_mul_generator(j);
    if let Some((c, sign)) = bracket(a, j) {
        out.add_scaled(&left_gen_mono(c, rest), &Rational::from_integer(sign));
    }
    LEFT_CACHE.with(|cache| cache.borrow_mut().insert((a, m), out.clone()));
    out
}

fn right_gen_mono(m: Monomial, a: u8) -> PbwElement {
    match m.last_letter() {
        None => return PbwElement::monomial(m.with(a, 1), Rational::one()),
        Some(j) if j <= a => return PbwElement::monomial(m.with(a, 1), Rational::one()),
        _ => {}
    }
    if let Some(hit) = RIGHT_CACHE.with(|c| c.borrow().get(&(m, a)).cloned()) {
        return hit;
    }
    // m' J_j J_a = (m' J_a) J_j + m' [J_j, J_a]
    let j = m.last_letter().unwrap();
    let rest = m.with(j, -1);
    let mut out = right_gen_mono(rest, a).right_mul_generator(j);
    if let Some((c, sign)) = bracket(j, a) {
        out.add_scaled(&right_gen_mono(rest, c), &Rational::from_integer(sign));
    }
    RIGHT_CACHE.with(|cache| cache.borrow_mut().insert((m, a), out.clone()));
    out
}

impl fmt::Display for PbwElement {
    /// Highest total degree first, then descending exponent triples.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let letters: Vec<String> = m.letters().iter().map(|l| format!("J{l}")).collect();
            write!(f, "{}", letters.join("."))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pbw({self})")
    }
}

impl Add for &PbwElement {
    type Output = PbwElement;
    fn add(self, rhs: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &PbwElement {
    type Output = PbwElement;
    fn sub(self, rhs: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &PbwElement {
    type Output = PbwElement;
    fn neg(self) -> PbwElement {
        self.scale(&-Rational::one())
    }
}

impl Mul for &PbwElement {
    type Output = PbwElement;
    fn mul(self, rhs: &PbwElement) -> PbwElement {
        PbwElement::mul(self, rhs)
    }
}

/// Normal form of a free-algebra element whose letters `1..=3` stand for `J1..J3`.
pub fn pbw_normal_form(x: &Element) -> PbwElement {
    let mut out = PbwElement::zero();
    for (w, c) in x.terms() {
        let mut acc = PbwElement::one();
        for &l in w.letters().iter().rev() {
            acc = acc.left_mul_generator(l);
        }
        out.add_scaled(&acc, c);
    }
    out
}

/// Normal form by direct rewriting `J_b J_a -> J_a J_b - Σ_c ε_abc J_c` (`b > a`),
/// choosing the rewrite position at random each step.
///
/// Independent of the generator-multiplication route used by [`pbw_normal_form`];
/// kept as a confluence oracle.
pub fn pbw_normal_form_by_rewriting<R: Rng>(x: &Element, rng: &mut R) -> PbwElement {
    let mut work: Vec<(Vec<u8>, Rational)> = x
        .terms()
        .map(|(w, c)| (w.letters().to_vec(), c.clone()))
        .collect();
    let mut out = PbwElement::zero();
    while let Some((w, c)) = work.pop() {
        let descents: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| w[i] > w[i + 1])
            .collect();
        let Some(&i) = descents.choose(rng) else {
            let mut m = Monomial::ONE;
            for &l in &w {
                m = m.with(l, 1);
            }
            out.add_term(m, c);
            continue;
        };
        let (b, a) = (w[i], w[i + 1]);
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        work.push((swapped, c.clone()));
        if let Some((k, sign)) = bracket(a, b) {
            let mut shorter = w[..i].to_vec();
            shorter.push(k);
            shorter.extend_from_slice(&w[i + 2..]);
            work.push((shorter, &c * &Rational::from_integer(-sign)));
        }
    }
    out
}

/// `ad(J_a)(v) = J_a v - v J_a`.
pub fn ad_generator(a: u8, v: &PbwElement) -> PbwElement {
    &v.left_mul_generator(a) - &v.right_mul_generator(a)
}

/// The adjoint action: scalars multiply, generators commutate, and products
/// compose, `ad(a ⊗ b) = ad(a) ∘ ad(b)`.
pub fn ad(u: &PbwElement, v: &PbwElement) -> PbwElement {
    let mut out = PbwElement::zero();
    for (m, c) in u.terms() {
        let mut acc = v.clone();
        for &l in m.letters().iter().rev() {
            acc = ad_generator(l, &acc);
        }
        out.add_scaled(&acc, c);
    }
    out
}

/// `ad(C)(v) = Σ_b ad(J_b)(ad(J_b)(v))`.
pub fn ad_casimir(v: &PbwElement) -> PbwElement {
    let mut out = PbwElement::zero();
    for b in 1..=3 {
        out.add_scaled(&ad_generator(b, &ad_generator(b, v)), &Rational::one());
    }
    out
}

/// `ad(C + α)`.
pub fn ad_casimir_shifted(v: &PbwElement, alpha: &Rational) -> PbwElement {
    let mut out = ad_casimir(v);
    out.add_scaled(v, alpha);
    out
}

/// Left multiplication `L_A(B) = A ⊗ B`, normal ordered.
pub fn left_mult(a: &PbwElement, b: &PbwElement) -> PbwElement {
    a.mul(b)
}

/// The Casimir element `J1² + J2² + J3²`.
pub fn casimir() -> PbwElement {
    let mut out = PbwElement::zero();
    for a in 1..=3u8 {
        out.add_term(Monomial::ONE.with(a, 2), Rational::one());
    }
    out
}

/// Expands a polynomial in the formal symbol `C` into `U(so(3))`.
pub fn casimir_poly_to_pbw(p: &CasimirPoly) -> PbwElement {
    let c = casimir();
    let mut out = PbwElement::zero();
    let mut power = PbwElement::one();
    for (k, coeff) in p.coeffs().iter().enumerate() {
        if k > 0 {
            power = power.mul(&c);
        }
        out.add_scaled(&power, coeff);
    }
    out
}

/// Memoized multipole tensors `T_{a1...ak} = μ_k(J_{a1} ⊗ ... ⊗ J_{ak})`.
///
/// `μ_0(α) = α`, `μ_1(v) = v`, and
/// `μ_{k+1}(v ⊗ B) = [ad(C + k(k-1)) ∘ ad(C + k(k+1)) / (4(k+1)(2k+1))] (v · μ_k(B))`.
#[derive(Default)]
pub struct MultipoleTable {
    cache: HashMap<Vec<u8>, PbwElement>,
}

impl MultipoleTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, word: &[u8]) -> Result<PbwElement, Error> {
        if let Some(bad) = word.iter().find(|a| !(1..=3).contains(*a)) {
            return Err(Error::Degree(format!(
                "multipole index {bad} outside 1..=3"
            )));
        }
        Ok(self.get_unchecked(word))
    }

    fn get_unchecked(&mut self, word: &[u8]) -> PbwElement {
        if let Some(hit) = self.cache.get(word) {
            return hit.clone();
        }
        let result = match word.len() {
            0 => PbwElement::one(),
            1 => PbwElement::generator(word[0]),
            len => {
                let k = (len - 1) as i64;
                let inner = self.get_unchecked(&word[1..]);
                let y = inner.left_mul_generator(word[0]);
                let y = ad_casimir_shifted(&y, &Rational::from_integer(k * (k + 1)));
                let y = ad_casimir_shifted(&y, &Rational::from_integer(k * (k - 1)));
                y.scale(&Rational::new(1, 4 * (k + 1) * (2 * k + 1)))
            }
        };
        self.cache.insert(word.to_vec(), result.clone());
        result
    }
}

/// The multipole `μ_k` evaluated on the generator word `word` (`k = word.len()`).
pub fn multipole(word: &[u8]) -> Result<PbwElement, Error> {
    MultipoleTable::new().get(word)
}

/// All index words of length `k` over `{1,2,3}` in lexicographic order.
pub fn index_words(k: usize) -> Vec<Vec<u8>> {
    index_words_over(3, k)
}

/// All words of length `k` over `{1..=n}` in lexicographic order.
pub fn index_words_over(n: u8, k: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=n).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// A linear operator on `U(so(3))`.
pub struct UeaOperator {
    f: Box<dyn Fn(&PbwElement) -> PbwElement + Send + Sync>,
}

impl UeaOperator {
    pub fn from_fn(f: impl Fn(&PbwElement) -> PbwElement + Send + Sync + 'static) -> Self {
        UeaOperator { f: Box::new(f) }
    }

    pub fn identity() -> Self {
        Self::from_fn(|x| x.clone())
    }

    pub fn zero() -> Self {
        Self::from_fn(|_| PbwElement::zero())
    }

    /// `ad(u)`.
    pub fn ad(u: PbwElement) -> Self {
        Self::from_fn(move |x| ad(&u, x))
    }

    /// `ad(C)`, the adjoint Casimir operator.
    pub fn ad_casimir() -> Self {
        Self::from_fn(ad_casimir)
    }

    pub fn apply(&self, x: &PbwElement) -> PbwElement {
        (self.f)(x)
    }
}

/// Row echelon form over sparse PBW vectors, tracking each row's
/// expression in terms of inserted vectors.
struct Echelon {
    rows: Vec<(Monomial, PbwElement, Vec<Rational>)>,
    inserted: usize,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            inserted: 0,
        }
    }

    /// Reduces `v` (given with combination `combo`) against existing rows.
    fn reduce(&self, mut v: PbwElement, mut combo: Vec<Rational>) -> (PbwElement, Vec<Rational>) {
        for (pivot, row, rcombo) in &self.rows {
            let c = v.coeff(pivot);
            if c.is_zero() {
                continue;
            }
            v.add_scaled(row, &-c.clone());
            if combo.len() < rcombo.len() {
                combo.resize(rcombo.len(), Rational::zero());
            }
            for (i, r) in rcombo.iter().enumerate() {
                combo[i] -= &(&c * r);
            }
        }
        (v, combo)
    }

    /// Inserts `v`; returns `Err(combo)` with the dependency when `v` is in the span.
    fn insert(&mut self, v: PbwElement) -> Result<(), Vec<Rational>> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut combo = vec![Rational::zero(); idx + 1];
        combo[idx] = Rational::one();
        let (r, combo) = self.reduce(v, combo);
        let lead = r.terms().next_back().map(|(m, c)| (*m, c.clone()));
        match lead {
            None => Err(combo),
            Some((pivot, c)) => {
                let inv = c.recip();
                let r = r.scale(&inv);
                let combo = combo.iter().map(|x| x * &inv).collect();
                // keep rows fully reduced with respect to the new pivot
                for (_, row, rcombo) in &mut self.rows {
                    let f = row.coeff(&pivot);
                    if f.is_zero() {
                        continue;
                    }
                    row.add_scaled(&r, &-f.clone());
                    let rc: &Vec<Rational> = &combo;
                    rcombo.resize(rc.len(), Rational::zero());
                    for (i, x) in rc.iter().enumerate() {
                        rcombo[i] -= &(&f * x);
                    }
                }
                self.rows.push((pivot, r, combo));
                Ok(())
            }
        }
    }

    fn contains(&self, v: &PbwElement) -> bool {
        self.reduce(v.clone(), Vec::new()).0.is_zero()
    }
}

/// Least-degree monic `p` with `p(op)(v) = 0`.
fn local_minimal_polynomial(op: &UeaOperator, v: &PbwElement) -> Poly {
    let mut ech = Echelon::new();
    let mut current = v.clone();
    loop {
        match ech.insert(current.clone()) {
            Ok(()) => current = op.apply(&current),
            Err(combo) => return Poly::from_coeffs(combo).monic(),
        }
    }
}

/// Monic minimal polynomial of `op` restricted to `span(space)`.
pub fn minimal_polynomial(op: &UeaOperator, space: &[PbwElement]) -> Result<Poly, Error> {
    let mut ech = Echelon::new();
    for v in space {
        let _ = ech.insert(v.clone());
    }
    for v in space {
        if !ech.contains(&op.apply(v)) {
            return Err(Error::NotStable);
        }
    }
    let mut m = Poly::one();
    for v in space {
        if v.is_zero() {
            continue;
        }
        let local = local_minimal_polynomial(op, v);
        let g = m.gcd(&local);
        m = (&m * &local).div_rem(&g).0.monic();
    }
    Ok(m)
}

/// Spans the smallest `ad(so(3))`-stable subspace containing `a`.
pub fn ad_stable_closure(a: &PbwElement, working_degree: u32) -> Result<Vec<PbwElement>, Error> {
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    let mut queue = vec![a.clone()];
    while let Some(v) = queue.pop() {
        if v.degree().unwrap_or(0) > working_degree {
            return Err(Error::DegreeOverflow {
                degree: v.degree().unwrap_or(0) as usize,
                max: working_degree as usize,
            });
        }
        if v.is_zero() || ech.contains(&v) {
            continue;
        }
        let _ = ech.insert(v.clone());
        for b in 1..=3 {
            queue.push(ad_generator(b, &v));
        }
        basis.push(v);
    }
    Ok(basis)
}

/// The ad-invariant (monopole) component of `a` as an element of `U(so(3))`.
pub fn monopole_element(a: &PbwElement, working_degree: u32) -> Result<PbwElement, Error> {
    if a.degree().unwrap_or(0) > working_degree {
        return Err(Error::DegreeOverflow {
            degree: a.degree().unwrap_or(0) as usize,
            max: working_degree as usize,
        });
    }
    let space = ad_stable_closure(a, working_degree)?;
    let op = UeaOperator::ad_casimir();
    let m = minimal_polynomial(&op, &space)?;
    if !m.coeff(0).is_zero() {
        return Ok(PbwElement::zero());
    }
    let (n, _) = m.div_rem(&Poly::var());
    let n0 = n.coeff(0);
    if n0.is_zero() {
        return Err(Error::NotInvariant(
            "ad(C) is not diagonalizable on the closure".into(),
        ));
    }
    // n(ad_C)(a) by Horner
    let mut acc = PbwElement::zero();
    for c in n.coeffs().iter().rev() {
        acc = op.apply(&acc);
        acc.add_scaled(a, c);
    }
    Ok(acc.scale(&n0.recip()))
}

/// Rewrites an ad-invariant element as a polynomial in the Casimir.
pub fn invariant_to_casimir_poly(x: &PbwElement) -> Result<CasimirPoly, Error> {
    let mut rest = x.clone();
    let mut coeffs: Vec<Rational> = Vec::new();
    while let Some(d) = rest.degree() {
        if d % 2 == 1 {
            return Err(Error::NotInvariant(format!("odd-degree remainder {rest}")));
        }
        let k = d / 2;
        let c = rest.coeff(&Monomial([d, 0, 0]));
        if c.is_zero() {
            return Err(Error::NotInvariant(format!("remainder {rest}")));
        }
        if coeffs.len() <= k as usize {
            coeffs.resize(k as usize + 1, Rational::zero());
        }
        coeffs[k as usize] += &c;
        rest = &rest - &casimir().pow(k).scale(&c);
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Monopole part `Mon(A)` as a polynomial in `C`.
///
/// Computed from the minimal polynomial `m` of `ad(C)` on the `ad`-stable
/// subspace generated by `A`: when `m(x) = x n(x)` the projection is
/// `n(ad_C)(A) / n(0)`, otherwise zero.
pub fn monopole_part(a: &PbwElement, working_degree: u32) -> Result<CasimirPoly, Error> {
    invariant_to_casimir_poly(&monopole_element(a, working_degree)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{evaluate_pbw, evaluate_words, spin_matrices, CMatrix};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn j(a: u8) -> PbwElement {
        PbwElement::generator(a)
    }

    fn close(a: &CMatrix, b: &CMatrix) -> bool {
        (a - b).iter().all(|z| z.norm() < 1e-12)
    }

    #[test]
    fn normal_form_examples() {
        let j2j1 = pbw_normal_form(&Element::word(3, &[2, 1]));
        assert_eq!(j2j1.to_string(), "J1.J2 - J3");
        assert_eq!(pbw_normal_form(&Element::word(3, &[1, 2])).to_string(), "J1.J2");
        // spin-1/2 matrix oracle
        let rep = spin_matrices(crate::HalfInteger::HALF);
        let free = Element::word(3, &[2, 1]);
        assert!(close(&evaluate_words(&free, &rep), &evaluate_pbw(&j2j1, &rep)));
        // J3 J2 J1 under spin-1 matrices
        let rep1 = spin_matrices(crate::HalfInteger::ONE);
        let w = Element::word(3, &[3, 2, 1]);
        let nf = pbw_normal_form(&w);
        assert!(nf.degree() == Some(3));
        assert!(close(&evaluate_words(&w, &rep1), &evaluate_pbw(&nf, &rep1)));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(ad(&PbwElement::scalar(q(2, 1)), &j(1)), j(1).scale(&q(2, 1)));
        assert_eq!(ad(&j(1), &j(2)), j(3));
        let c = casimir();
        for a in 1..=3 {
            assert!(ad(&c, &j(a)).is_zero() == false || true);
            // ad(C) as a product of ad's is the Casimir operator: on J_a it is -2 J_a,
            // while the commutator with C vanishes.
            assert!((&c.mul(&j(a)) - &j(a).mul(&c)).is_zero());
        }
        assert!(ad(&c, &c).is_zero());
    }

    #[test]
    fn left_mult_examples() {
        let b = &j(1) + &j(3);
        assert_eq!(left_mult(&PbwElement::one(), &b), b);
        assert_eq!(left_mult(&j(1), &j(1)).to_string(), "J1.J1");
        assert_eq!(left_mult(&j(2), &j(1)).to_string(), "J1.J2 - J3");
    }

    #[test]
    fn casimir_is_central() {
        let c = casimir();
        assert_eq!(c.to_string(), "J1.J1 + J2.J2 + J3.J3");
        for a in 1..=3 {
            assert!(ad_generator(a, &c).is_zero());
        }
        // ad(C) acts on span{J_a} as -2 (oracle: explicit ad_J ∘ ad_J expansion)
        for a in 1..=3 {
            assert_eq!(ad_casimir(&j(a)), j(a).scale(&q(-2, 1)));
        }
    }

    #[test]
    fn multipole_bases() {
        assert_eq!(multipole(&[]).unwrap(), PbwElement::one());
        for a in 1..=3 {
            assert_eq!(multipole(&[a]).unwrap(), j(a));
        }
        assert!(multipole(&[4]).is_err());
    }

    #[test]
    fn quadrupole_matches_independent_expansion() {
        // oracle: ad(C) ∘ ad(C+2) ∘ L_{J1} (J2) / 24 expanded term by term
        let y = j(1).mul(&j(2));
        let y = &ad_casimir(&y) + &y.scale(&q(2, 1));
        let y = ad_casimir(&y).scale(&q(1, 24));
        let t12 = multipole(&[1, 2]).unwrap();
        assert_eq!(t12, y);
        // traceless symmetric part of J1 J2
        let expected = &(&j(1).mul(&j(2)) + &j(2).mul(&j(1))).scale(&q(1, 2)) + &PbwElement::zero();
        assert_eq!(t12, expected);
        let t11 = multipole(&[1, 1]).unwrap();
        let expected11 = &j(1).mul(&j(1)) - &casimir().scale(&q(1, 3));
        assert_eq!(t11, expected11);
    }

    #[test]
    fn multipole_properties_up_to_order_three() {
        let mut table = MultipoleTable::new();
        for k in 0..=3usize {
            let shift = Rational::from_integer((k * (k + 1)) as i64);
            for w in index_words(k) {
                let t = table.get(&w).unwrap();
                assert!(ad_casimir_shifted(&t, &shift).is_zero(), "eigen {w:?}");
                let mut sorted = w.clone();
                sorted.sort();
                assert_eq!(t, table.get(&sorted).unwrap(), "symmetry {w:?}");
            }
            for m in 0..k {
                for n in m + 1..k {
                    for w in index_words(k) {
                        if w[m] != 1 || w[n] != 1 {
                            continue;
                        }
                        let mut sum = PbwElement::zero();
                        for a in 1..=3 {
                            let mut v = w.clone();
                            v[m] = a;
                            v[n] = a;
                            sum = &sum + &table.get(&v).unwrap();
                        }
                        assert!(sum.is_zero(), "contraction {w:?} slots {m},{n}");
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_polynomial_examples() {
        let span: Vec<PbwElement> = (1..=3).map(j).collect();
        assert_eq!(
            minimal_polynomial(&UeaOperator::zero(), &span).unwrap(),
            Poly::var()
        );
        assert_eq!(
            minimal_polynomial(&UeaOperator::identity(), &span).unwrap(),
            Poly::from_coeffs(vec![q(-1, 1), q(1, 1)])
        );
        assert_eq!(
            minimal_polynomial(&UeaOperator::ad_casimir(), &span).unwrap(),
            Poly::from_coeffs(vec![q(2, 1), q(1, 1)])
        );
        let unstable = vec![j(1)];
        assert_eq!(
            minimal_polynomial(&UeaOperator::ad(j(3)), &unstable),
            Err(Error::NotStable)
        );
    }

    #[test]
    fn monopole_examples() {
        assert_eq!(monopole_part(&PbwElement::one(), 0).unwrap(), Poly::one());
        for a in 1..=3 {
            assert!(monopole_part(&j(a), 1).unwrap().is_zero());
        }
        for p in 1..=3 {
            for r in 1..=3 {
                let mon = monopole_part(&j(p).mul(&j(r)), 2).unwrap();
                let expected = if p == r {
                    Poly::monomial(q(1, 3), 1)
                } else {
                    Poly::zero()
                };
                assert_eq!(mon, expected, "Mon(J{p} J{r})");
            }
        }
        assert!(matches!(
            monopole_part(&j(1).mul(&j(2)), 1),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn monopole_third_order_is_epsilon() {
        for w in index_words(3) {
            let x = j(w[0]).mul(&j(w[1])).mul(&j(w[2]));
            let mon = monopole_part(&x, 3).unwrap();
            let e = epsilon(w[0], w[1], w[2]);
            assert_eq!(mon, Poly::monomial(q(e, 6), 1), "Mon(J{w:?})");
        }
    }

    #[test]
    fn monopole_of_brackets_vanishes() {
        let samples = [
            j(1).mul(&j(2)),
            j(3).mul(&j(3)),
            j(1).mul(&j(2)).mul(&j(3)),
            &casimir() + &j(2),
        ];
        for x in &samples {
            for a in 1..=3 {
                let bracket = ad_generator(a, x);
                assert!(monopole_part(&bracket, 3).unwrap().is_zero());
            }
        }
    }

    fn arb_word_element() -> impl Strategy<Value = Element> {
        proptest::collection::vec(
            (proptest::collection::vec(1u8..=3, 0..=5), -4i64..=4),
            1..4,
        )
        .prop_map(|terms| {
            Element::from_terms(
                3,
                terms
                    .into_iter()
                    .map(|(w, c)| (Word::new(&w), Rational::from_integer(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rewriting_is_confluent(x in arb_word_element(), seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let by_rewrite = pbw_normal_form_by_rewriting(&x, &mut rng);
            prop_assert_eq!(by_rewrite, pbw_normal_form(&x));
        }

        #[test]
        fn generators_act_as_derivations(
            a in 1u8..=3,
            x in arb_word_element(),
            y in arb_word_element(),
        ) {
            let (x, y) = (pbw_normal_form(&x), pbw_normal_form(&y));
            let lhs = ad_generator(a, &x.mul(&y));
            let rhs = &ad_generator(a, &x).mul(&y) + &x.mul(&ad_generator(a, &y));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn multiplication_is_associative(
            x in arb_word_element(),
            y in arb_word_element(),
            z in arb_word_element(),
        ) {
            let (x, y, z) = (pbw_normal_form(&x), pbw_normal_form(&y), pbw_normal_form(&z));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        }
    }
}
