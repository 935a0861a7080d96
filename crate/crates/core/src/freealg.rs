//! The free tensor algebra `T(V)` over a finite-dimensional metric space.
//!
//! Elements are sparse rational combinations of [`Word`]s. Blades are not a
//! separate type: a `k`-blade is the expanded antisymmetrized tensor returned
//! by [`wedge`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use smallvec::SmallVec;

use crate::scalar::Rational;
use crate::Error;

/// A real vector space with a symmetric nondegenerate bilinear form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetricSpace {
    dim: usize,
    metric: Vec<Rational>,
    inverse: Vec<Rational>,
}

impl MetricSpace {
    /// Builds a metric space from a row-major Gram matrix.
    pub fn new(dim: usize, metric: Vec<Rational>) -> Result<Self, Error> {
        if dim == 0 || dim > 9 || metric.len() != dim * dim {
            return Err(Error::InvalidMetric(format!(
                "expected a {dim}x{dim} matrix with 1 <= dim <= 9"
            )));
        }
        for i in 0..dim {
            for j in 0..i {
                if metric[i * dim + j] != metric[j * dim + i] {
                    return Err(Error::InvalidMetric("metric is not symmetric".into()));
                }
            }
        }
        let inverse = invert(dim, &metric)
            .ok_or_else(|| Error::InvalidMetric("metric is degenerate".into()))?;
        Ok(MetricSpace {
            dim,
            metric,
            inverse,
        })
    }

    /// The identity metric on `R^n`.
    pub fn euclidean(dim: usize) -> Self {
        Self::signature(dim, 0)
    }

    /// Diagonal metric with `p` entries `+1` followed by `q` entries `-1`.
    pub fn signature(p: usize, q: usize) -> Self {
        let dim = p + q;
        let mut metric = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            metric[i * dim + i] = if i < p {
                Rational::one()
            } else {
                -Rational::one()
            };
        }
        MetricSpace::new(dim, metric).expect("diagonal signature metric is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `g(e_i, e_j)` for 1-based indices.
    pub fn g(&self, i: u8, j: u8) -> &Rational {
        &self.metric[(i as usize - 1) * self.dim + (j as usize - 1)]
    }

    /// Entry of the Gram matrix, 0-based.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.metric[i * self.dim + j]
    }

    /// Entry of the inverse Gram matrix, 0-based.
    pub fn inverse_entry(&self, i: usize, j: usize) -> &Rational {
        &self.inverse[i * self.dim + j]
    }

    /// `g(a, b)` for coordinate vectors.
    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let g = self.entry(i, j);
                if !g.is_zero() && !b[j].is_zero() {
                    acc += &(&(&a[i] * g) * &b[j]);
                }
            }
        }
        acc
    }

    pub fn is_euclidean(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let expect = if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                *self.entry(i, j) == expect
            })
        })
    }

    /// Basis vector `e_i` (1-based) as a coordinate vector.
    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        (1..=self.dim)
            .map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }
}

/// Gauss-Jordan inverse of a small dense rational matrix.
pub(crate) fn invert(n: usize, m: &[Rational]) -> Option<Vec<Rational>> {
    let w = 2 * n;
    let mut a = vec![Rational::zero(); n * w];
    for i in 0..n {
        for j in 0..n {
            a[i * w + j] = m[i * n + j].clone();
        }
        a[i * w + n + i] = Rational::one();
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r * w + col].is_zero())?;
        if pivot != col {
            for j in 0..w {
                a.swap(pivot * w + j, col * w + j);
            }
        }
        let inv = a[col * w + col].recip();
        for j in 0..w {
            a[col * w + j] = &a[col * w + j] * &inv;
        }
        for r in 0..n {
            if r == col || a[r * w + col].is_zero() {
                continue;
            }
            let f = a[r * w + col].clone();
            for j in 0..w {
                let t = &f * &a[col * w + j];
                a[r * w + j] -= t;
            }
        }
    }
    Some(
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * w + n + j].clone())
            .collect(),
    )
}

/// A basis monomial `e_{a1} ⊗ ... ⊗ e_{ak}` with 1-based letters.
///
/// Words are ordered degree-first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn new(letters: &[u8]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }
}

impl From<&[u8]> for Word {
    fn from(s: &[u8]) -> Self {
        Word::new(s)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.0.iter().map(|l| format!("e{l}")).join("."))
    }
}

/// A finite rational combination of words in `T(V)`, `dim V = dim`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    dim: usize,
    terms: BTreeMap<Word, Rational>,
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        Self::monomial(dim, Word::empty(), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Rational::one())
    }

    /// The basis vector `e_i`, 1-based.
    pub fn basis(dim: usize, i: u8) -> Self {
        assert!(i >= 1 && (i as usize) <= dim, "basis index out of range");
        Self::monomial(dim, Word::new(&[i]), Rational::one())
    }

    pub fn monomial(dim: usize, word: Word, c: Rational) -> Self {
        let mut e = Element::zero(dim);
        e.add_term(word, c);
        e
    }

    pub fn word(dim: usize, letters: &[u8]) -> Self {
        Self::monomial(dim, Word::new(letters), Rational::one())
    }

    /// A degree-1 element from coordinates.
    pub fn vector(coords: &[Rational]) -> Self {
        let mut e = Element::zero(coords.len());
        for (i, c) in coords.iter().enumerate() {
            e.add_term(Word::new(&[i as u8 + 1]), c.clone());
        }
        e
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut e = Element::zero(dim);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending (degree, lexicographic) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Maximum word length, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::len)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// The scalar (degree-0) coefficient.
    pub fn scalar_part(&self) -> Rational {
        self.coeff(&Word::empty())
    }

    /// Returns `Some(c)` when the element is the scalar `c`.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.scalar_part()),
            _ => None,
        }
    }

    pub fn homogeneous_part(&self, k: usize) -> Element {
        Element {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coordinates of the degree-1 part.
    pub fn vector_coords(&self) -> Vec<Rational> {
        (1..=self.dim as u8)
            .map(|i| self.coeff(&Word::new(&[i])))
            .collect()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(self.dim);
        }
        Element {
            dim: self.dim,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    fn check_dim(&self, other: &Element) -> Result<(), Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// The tensor product `self ⊗ other`.
    pub fn concat(&self, other: &Element) -> Result<Element, Error> {
        self.check_dim(other)?;
        let mut out = Element::zero(self.dim);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Element) -> Result<Element, Error> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// `self ⊗ other - other ⊗ self`.
    pub fn commutator(&self, other: &Element) -> Result<Element, Error> {
        Ok(&self.concat(other)? - &other.concat(self)?)
    }

    /// Applies `f` to every word, summing the images.
    pub fn map_words(&self, dim: usize, mut f: impl FnMut(&Word) -> Element) -> Element {
        let mut out = Element::zero(dim);
        for (w, c) in &self.terms {
            for (v, d) in f(w).terms {
                out.add_term(v, c * &d);
            }
        }
        out
    }

    /// Formats with a custom letter prefix, e.g. `J` for generator words.
    pub fn display_with<'a>(&'a self, prefix: &'a str) -> impl fmt::Display + 'a {
        ElementDisplay {
            element: self,
            prefix,
        }
    }
}

struct ElementDisplay<'a> {
    element: &'a Element,
    prefix: &'a str,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.element.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let letters = w.letters().iter().map(|l| format!("{}{l}", self.prefix));
            write!(f, "{}", letters.format("."))?;
        }
        Ok(())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("e"))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({self})", self.dim)
    }
}

/// Panics on a dimension mismatch; use [`Element::try_add`] to get an error instead.
impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("dimension mismatch in addition")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_add(&-rhs).expect("dimension mismatch in subtraction")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

/// Tensor product; panics on a dimension mismatch ([`Element::concat`] returns an error).
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.concat(rhs).expect("dimension mismatch in tensor product")
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

/// Sign of a permutation given as images of `0..k`.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The blade `v1 ∧ ... ∧ vk = (1/k!) Σ_σ sgn(σ) v_σ(1) ⊗ ... ⊗ v_σ(k)`.
///
/// Arguments of degree 0 act as scalar factors (0-blades).
pub fn wedge(args: &[Element]) -> Result<Element, Error> {
    let dim = args.first().map_or(1, Element::dim);
    let mut scalar = Rational::one();
    let mut vectors = Vec::new();
    for a in args {
        if a.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: a.dim(),
            });
        }
        if a.is_zero() {
            return Ok(Element::zero(dim));
        }
        match (a.min_degree(), a.degree()) {
            (Some(0), Some(0)) => scalar = &scalar * &a.scalar_part(),
            (Some(1), Some(1)) => vectors.push(a),
            _ => {
                return Err(Error::Degree(format!(
                    "wedge arguments must be scalars or vectors, got `{a}`"
                )))
            }
        }
    }
    let k = vectors.len();
    let norm = &scalar / &Rational::factorial(k);
    let mut out = Element::zero(dim);
    for perm in (0..k).permutations(k) {
        let sign = Rational::from_integer(permutation_sign(&perm));
        let mut prod = Element::one(dim);
        for &i in &perm {
            prod = &prod * vectors[i];
        }
        out = &out + &prod.scale(&(&sign * &norm));
    }
    Ok(out)
}

fn require_homogeneous(x: &Element) -> Result<usize, Error> {
    match (x.min_degree(), x.degree()) {
        (None, None) => Ok(0),
        (Some(a), Some(b)) if a == b => Ok(a),
        _ => Err(Error::Degree(format!("`{x}` is not homogeneous"))),
    }
}

/// Permutes tensor slots: the output word at slot `i` is the input letter at slot `perm[i]`.
pub fn apply_permutation(x: &Element, perm: &[usize]) -> Result<Element, Error> {
    let k = require_homogeneous(x)?;
    if x.is_zero() {
        return Ok(x.clone());
    }
    if perm.len() != k || !perm.iter().copied().sorted().eq(0..k) {
        return Err(Error::Degree(format!(
            "{perm:?} is not a permutation of {k} slots"
        )));
    }
    Ok(Element::from_terms(
        x.dim(),
        x.terms().map(|(w, c)| {
            let l = w.letters();
            (Word(perm.iter().map(|&p| l[p]).collect()), c.clone())
        }),
    ))
}

fn average_over_permutations(x: &Element, signed: bool) -> Result<Element, Error> {
    let k = require_homogeneous(x)?;
    if x.is_zero() {
        return Ok(x.clone());
    }
    let norm = Rational::factorial(k).recip();
    let mut out = Element::zero(x.dim());
    for perm in (0..k).permutations(k) {
        let c = if signed {
            &norm * &Rational::from_integer(permutation_sign(&perm))
        } else {
            norm.clone()
        };
        out = &out + &apply_permutation(x, &perm)?.scale(&c);
    }
    Ok(out)
}

/// Total symmetrizer `(1/k!) Σ_τ τ(x)` on a homogeneous element.
pub fn symmetrize(x: &Element) -> Result<Element, Error> {
    average_over_permutations(x, false)
}

/// Total antisymmetrizer `(1/k!) Σ_τ sgn(τ) τ(x)` on a homogeneous element.
pub fn antisymmetrize(x: &Element) -> Result<Element, Error> {
    average_over_permutations(x, true)
}

/// Metric trace over 1-based slots `m < n` of a homogeneous element.
pub fn contract(x: &Element, m: usize, n: usize, space: &MetricSpace) -> Result<Element, Error> {
    let k = require_homogeneous(x)?;
    if x.is_zero() {
        return Ok(x.clone());
    }
    if !(1 <= m && m < n && n <= k) {
        return Err(Error::SlotOutOfRange { m, n, degree: k });
    }
    if x.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: space.dim(),
        });
    }
    let mut out = Element::zero(x.dim());
    for (w, c) in x.terms() {
        let l = w.letters();
        let g = space.g(l[m - 1], l[n - 1]);
        if g.is_zero() {
            continue;
        }
        let rest: SmallVec<[u8; 16]> = l
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != m - 1 && *i != n - 1)
            .map(|(_, &a)| a)
            .collect();
        out.add_term(Word(rest), c * g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: u8) -> Element {
        Element::basis(3, i)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn concat_examples() {
        assert_eq!(&e(1) * &e(2), Element::word(3, &[1, 2]));
        let lhs = &(&e(1) + &e(2)) * &e(1);
        assert_eq!(lhs, &Element::word(3, &[1, 1]) + &Element::word(3, &[2, 1]));
        let x = &e(3) * &e(1);
        assert_eq!(&Element::one(3) * &x, x);
        assert!(matches!(
            e(1).concat(&Element::basis(2, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn wedge_examples() {
        assert!(wedge(&[e(1), e(1)]).unwrap().is_zero());
        let w = wedge(&[e(1), e(2)]).unwrap();
        assert_eq!(w.to_string(), "1/2*e1.e2 - 1/2*e2.e1");
        let w3 = wedge(&[e(1), e(2), e(3)]).unwrap();
        assert_eq!(w3.len(), 6);
        assert_eq!(w3.coeff(&Word::new(&[1, 2, 3])), q(1, 6));
        assert_eq!(w3.coeff(&Word::new(&[2, 1, 3])), q(-1, 6));
        assert_eq!(w3.coeff(&Word::new(&[3, 1, 2])), q(1, 6));
        // scalar 0-blades multiply
        let s = wedge(&[Element::scalar(3, q(2, 1)), e(1)]).unwrap();
        assert_eq!(s, e(1).scale(&q(2, 1)));
        assert!(wedge(&[&e(1) * &e(2)]).is_err());
        assert!(wedge(&[&e(1) + &Element::one(3)]).is_err());
    }

    #[test]
    fn symmetrize_examples() {
        let s = symmetrize(&Element::word(3, &[1, 2])).unwrap();
        assert_eq!(s.to_string(), "1/2*e1.e2 + 1/2*e2.e1");
        assert_eq!(symmetrize(&s).unwrap(), s);
        assert!(symmetrize(&wedge(&[e(1), e(2)]).unwrap()).unwrap().is_zero());
        assert!(symmetrize(&(&e(1) + &Element::word(3, &[1, 2]))).is_err());
    }

    #[test]
    fn contract_examples() {
        let d = MetricSpace::euclidean(3);
        assert_eq!(
            contract(&Element::word(3, &[1, 1]), 1, 2, &d).unwrap(),
            Element::one(3)
        );
        assert!(contract(&Element::word(3, &[1, 2]), 1, 2, &d).unwrap().is_zero());
        let trace = (1..=3).fold(Element::zero(3), |acc, a| &acc + &Element::word(3, &[a, a]));
        assert_eq!(
            contract(&trace, 1, 2, &d).unwrap(),
            Element::scalar(3, q(3, 1))
        );
        assert!(matches!(
            contract(&Element::word(3, &[1, 2]), 1, 3, &d),
            Err(Error::SlotOutOfRange { .. })
        ));
    }

    #[test]
    fn permutation_examples() {
        let x = Element::word(3, &[1, 2]);
        assert_eq!(apply_permutation(&x, &[1, 0]).unwrap(), Element::word(3, &[2, 1]));
        assert_eq!(apply_permutation(&x, &[0, 1]).unwrap(), x);
        let y = Element::word(3, &[1, 2, 3]);
        assert_eq!(
            apply_permutation(&y, &[1, 2, 0]).unwrap(),
            Element::word(3, &[2, 3, 1])
        );
        assert!(apply_permutation(&(&x + &e(1)), &[1, 0]).is_err());
    }

    #[test]
    fn metric_validation() {
        assert!(MetricSpace::new(2, vec![q(1, 1), q(1, 1), q(1, 1), q(1, 1)]).is_err());
        assert!(MetricSpace::new(2, vec![q(1, 1), q(2, 1), q(0, 1), q(1, 1)]).is_err());
        let m = MetricSpace::new(2, vec![q(0, 1), q(1, 1), q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(m.inner(&[q(1, 1), q(1, 1)], &[q(1, 1), q(1, 1)]), q(2, 1));
    }

    #[test]
    fn wedge_is_associative_on_basis_triples() {
        // (a ∧ b) ∧ c expanded through the antisymmetrizer equals a ∧ b ∧ c.
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    let ab = wedge(&[e(a), e(b)]).unwrap();
                    let lhs = antisymmetrize(&(&ab * &e(c))).unwrap();
                    let rhs = wedge(&[e(a), e(b), e(c)]).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn projectors_annihilate_at_degree_two() {
        for a in 1..=3 {
            for b in 1..=3 {
                let x = Element::word(3, &[a, b]);
                let s = symmetrize(&x).unwrap();
                let t = antisymmetrize(&x).unwrap();
                assert_eq!(antisymmetrize(&t).unwrap(), t);
                assert!(antisymmetrize(&s).unwrap().is_zero());
                assert!(symmetrize(&t).unwrap().is_zero());
                assert_eq!(&s + &t, x);
            }
        }
    }

    fn arb_element(max_deg: usize) -> impl Strategy<Value = Element> {
        proptest::collection::vec(
            (
                proptest::collection::vec(1u8..=3, 0..=max_deg),
                -5i64..5,
                1i64..4,
            ),
            0..5,
        )
        .prop_map(|terms| {
            Element::from_terms(
                3,
                terms
                    .into_iter()
                    .map(|(w, n, d)| (Word::new(&w), Rational::new(n, d))),
            )
        })
    }

    fn arb_vector() -> impl Strategy<Value = Element> {
        proptest::collection::vec(-3i64..=3, 3)
            .prop_map(|v| Element::vector(&v.into_iter().map(Rational::from_integer).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn concat_is_associative(x in arb_element(3), y in arb_element(3), z in arb_element(3)) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&Element::one(3) * &x, x.clone());
            prop_assert_eq!(&x * &Element::one(3), x);
        }

        #[test]
        fn wedge_is_alternating(a in arb_vector(), b in arb_vector(), c in arb_vector()) {
            prop_assert!(wedge(&[a.clone(), b.clone(), a.clone()]).unwrap().is_zero());
            let abc = wedge(&[a.clone(), b.clone(), c.clone()]).unwrap();
            let bac = wedge(&[b, a, c]).unwrap();
            prop_assert_eq!(abc, -&bac);
        }
    }
}
