//! Endomorphisms of a metric space (conformal reflections, `g`-adjoints,
//! `t(a, b)`), the closure constraint on the third-order tensor `f`, the
//! Cauchy–Binet and `g_Λ` metrics, and the bivector/generator transforms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::freealg::{antisymmetrize, Element, MetricSpace, Word};
use crate::quotient::QuotientContext;
use crate::scalar::{CasimirPoly, Poly, Rational};
use crate::uea::{epsilon, PbwElement};
use crate::Error;

pub type Vector = Vec<Rational>;

/// A square rational matrix acting on column vectors, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    dim: usize,
    entries: Vec<Rational>,
}

impl Endomorphism {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Endomorphism { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: rows.iter().map(Vec::len).find(|&l| l != dim).unwrap_or(0),
            });
        }
        Ok(Endomorphism {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Rational::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at 0-based `(row, column)`.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.entry(j, i).clone())
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.dim, "vector length does not match");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j) * &v[j]).sum())
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self::from_fn(self.dim, |i, j| {
            (0..self.dim)
                .map(|k| self.entry(i, k) * other.entry(k, j))
                .sum()
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Endomorphism {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    /// `self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &Endomorphism) -> Self {
        &self.compose(other) - &other.compose(self)
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                let row: Vec<String> = (0..self.dim).map(|j| self.entry(i, j).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Add for &Endomorphism {
    type Output = Endomorphism;
    fn add(self, rhs: &Endomorphism) -> Endomorphism {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Endomorphism {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Endomorphism {
    type Output = Endomorphism;
    fn sub(self, rhs: &Endomorphism) -> Endomorphism {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Endomorphism {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Endomorphism {
    type Output = Endomorphism;
    fn neg(self) -> Endomorphism {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Endomorphism {
    type Output = Endomorphism;
    fn mul(self, rhs: &Endomorphism) -> Endomorphism {
        self.compose(rhs)
    }
}

fn check_len(space: &MetricSpace, v: &[Rational]) -> Result<(), Error> {
    if v.len() != space.dim() {
        return Err(Error::DimensionMismatch {
            left: v.len(),
            right: space.dim(),
        });
    }
    Ok(())
}

/// `G a`, the covector `g(a, ·)`.
fn lower(space: &MetricSpace, a: &[Rational]) -> Vector {
    let n = space.dim();
    (0..n)
        .map(|j| (0..n).map(|i| &a[i] * space.entry(i, j)).sum())
        .collect()
}

fn axpy(c: &Rational, x: &[Rational], y: &[Rational]) -> Vector {
    x.iter().zip(y).map(|(a, b)| &(c * a) + b).collect()
}

fn scaled(c: &Rational, x: &[Rational]) -> Vector {
    x.iter().map(|a| c * a).collect()
}

/// The unique `Ā` with `g(A v, w) = g(v, Ā w)`: `Ā = G⁻¹ Aᵀ G`.
pub fn g_adjoint(a: &Endomorphism, space: &MetricSpace) -> Endomorphism {
    let n = space.dim();
    assert_eq!(a.dim(), n, "dimension mismatch");
    let ginv = Endomorphism::from_fn(n, |i, j| space.inverse_entry(i, j).clone());
    let g = Endomorphism::from_fn(n, |i, j| space.entry(i, j).clone());
    ginv.compose(&a.transpose()).compose(&g)
}

/// `(a₊(A), a₋(A)) = (½(A + Ā), ½(A - Ā))`.
pub fn adjoint_parts(a: &Endomorphism, space: &MetricSpace) -> (Endomorphism, Endomorphism) {
    let bar = g_adjoint(a, space);
    let half = Rational::new(1, 2);
    ((a + &bar).scale(&half), (a - &bar).scale(&half))
}

/// `S(k, a)(v) = g(a,a) v + (k - 1) g(a,v) a`.
pub fn scale_map(k: &Rational, a: &[Rational], space: &MetricSpace) -> Result<Endomorphism, Error> {
    check_len(space, a)?;
    let aa = space.inner(a, a);
    if aa.is_zero() {
        return Err(Error::NullVector);
    }
    let ga = lower(space, a);
    let km1 = k - &Rational::one();
    Ok(Endomorphism::from_fn(space.dim(), |i, j| {
        let diag = if i == j { aa.clone() } else { Rational::zero() };
        &diag + &(&km1 * &(&a[i] * &ga[j]))
    }))
}

/// `R(a) = S(-1, a)`: `v ↦ g(a,a) v - 2 g(a,v) a`.
pub fn conformal_reflection(a: &[Rational], space: &MetricSpace) -> Result<Endomorphism, Error> {
    scale_map(&Rational::from_integer(-1), a, space)
}

/// `t(a, b)(v) = g(a,v) b - g(b,v) a`.
pub fn t_map(a: &[Rational], b: &[Rational], space: &MetricSpace) -> Endomorphism {
    let (ga, gb) = (lower(space, a), lower(space, b));
    Endomorphism::from_fn(space.dim(), |i, j| &(&b[i] * &ga[j]) - &(&a[i] * &gb[j]))
}

/// Splits a nonzero null `b` as `b = p + n` with a null partner `c = p - n`,
/// `g(p,p) = -g(n,n) > 0` and `g(p,n) = 0`.
///
/// The partner is built from the first basis vector `w` with `g(b, w) ≠ 0`:
/// `c ∝ w - g(w,w)/(2 g(b,w)) b`, normalised so that `g(b, c) = 2`.
pub fn decompose_null(b: &[Rational], space: &MetricSpace) -> Result<(Vector, Vector), Error> {
    check_len(space, b)?;
    if b.iter().all(Rational::is_zero) {
        return Err(Error::ZeroVector);
    }
    if !space.inner(b, b).is_zero() {
        return Err(Error::NotNull);
    }
    let gb = lower(space, b);
    let i = gb
        .iter()
        .position(|x| !x.is_zero())
        .expect("nondegenerate metric");
    let w = space.basis_vector(i + 1);
    let ww = space.inner(&w, &w);
    let c0 = axpy(&-(&ww / &(&gb[i] * &Rational::from_integer(2))), b, &w);
    let bc = space.inner(b, &c0);
    let c = scaled(&(&Rational::from_integer(2) / &bc), &c0);
    let half = Rational::new(1, 2);
    let p = scaled(&half, &axpy(&Rational::one(), b, &c));
    let n = scaled(&half, &axpy(&-Rational::one(), &c, b));
    Ok((p, n))
}

/// Gram determinant `det(g(a_j, b_k))`; blades of different order give 0.
pub fn cauchy_binet(blade1: &[Vector], blade2: &[Vector], space: &MetricSpace) -> Rational {
    if blade1.len() != blade2.len() {
        return Rational::zero();
    }
    let k = blade1.len();
    let gram: Vec<Vec<Rational>> = blade1
        .iter()
        .map(|a| blade2.iter().map(|b| space.inner(a, b)).collect())
        .collect();
    determinant(gram, k)
}

fn determinant(mut m: Vec<Vec<Rational>>, k: usize) -> Rational {
    let mut det = Rational::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = &det * &pivot;
        for r in col + 1..k {
            let f = &m[r][col] / &pivot;
            if f.is_zero() {
                continue;
            }
            for c in col..k {
                let d = &f * &m[col][c];
                m[r][c] -= &d;
            }
        }
    }
    det
}

/// Strictly increasing index tuples of length `k` over `1..=n`.
pub fn increasing_words(n: usize, k: usize) -> Vec<Vec<u8>> {
    use itertools::Itertools;
    (1..=n as u8).combinations(k).collect()
}

/// Blade coordinates `X_I` of an antisymmetric tensor, `X = Σ_I X_I e_{I1} ∧ ... ∧ e_{Ik}`,
/// grouped by order.
pub fn blade_coordinates(x: &Element) -> Result<BTreeMap<Vec<u8>, Rational>, Error> {
    let mut out = BTreeMap::new();
    let max = x.degree().unwrap_or(0);
    for k in 0..=max {
        let part = x.homogeneous_part(k);
        if part.is_zero() {
            continue;
        }
        if antisymmetrize(&part)? != part {
            return Err(Error::NotAntisymmetric(part.to_string()));
        }
        let kf = Rational::factorial(k);
        for idx in increasing_words(x.dim(), k) {
            let c = part.coeff(&Word::new(&idx));
            if !c.is_zero() {
                out.insert(idx, &c * &kf);
            }
        }
    }
    Ok(out)
}

/// The extension `g_Λ` of the metric to antisymmetric tensors, valued in `ℚ[C]`:
/// `αβ` on scalars, `g` on vectors, `(1/3) g_CB C` on bivectors,
/// `-(1/3) g_CB C` on trivectors, zero between different orders.
pub fn lambda_metric(x: &Element, y: &Element, space: &MetricSpace) -> Result<CasimirPoly, Error> {
    for z in [x, y] {
        if z.dim() != space.dim() {
            return Err(Error::DimensionMismatch {
                left: z.dim(),
                right: space.dim(),
            });
        }
        if z.degree().unwrap_or(0) > 3 {
            return Err(Error::Degree(format!(
                "`{z}` has order above 3, where the metric is not defined"
            )));
        }
    }
    let (xs, ys) = (blade_coordinates(x)?, blade_coordinates(y)?);
    let mut out = Poly::zero();
    for (i, a) in &xs {
        for (j, b) in &ys {
            if i.len() != j.len() {
                continue;
            }
            let coeff = a * b;
            let blade = |idx: &[u8]| -> Vec<Vector> {
                idx.iter().map(|&l| space.basis_vector(l as usize)).collect()
            };
            let cb = cauchy_binet(&blade(i), &blade(j), space);
            let term = match i.len() {
                0 => Poly::constant(coeff),
                1 => Poly::constant(&coeff * &cb),
                2 => Poly::monomial(&(&coeff * &cb) * &Rational::new(1, 3), 1),
                _ => Poly::monomial(&(&coeff * &cb) * &Rational::new(-1, 3), 1),
            };
            out = &out + &term;
        }
    }
    Ok(out)
}

/// One pair of basis blades in a [`metric_table`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricEntry {
    pub left: String,
    pub right: String,
    /// `g_Λ` as a polynomial in `C`.
    pub symbolic: String,
    /// The value after `C = -s(s+1)`, keyed by spin.
    pub values: BTreeMap<String, String>,
}

/// Basis blades of orders 0 to 3 over `(E, δ)` with their labels.
pub fn basis_blades() -> Vec<(String, Element)> {
    let mut out = vec![("1".to_string(), Element::one(3))];
    for k in 1..=3 {
        for idx in increasing_words(3, k) {
            let label = idx.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join("^");
            out.push((label, crate::quotient::basis_wedge(3, &idx)));
        }
    }
    out
}

/// `g_Λ` on every unordered pair of basis blades, symbolic and per spin.
pub fn metric_table(spins: &[crate::scalar::HalfInteger]) -> Result<Vec<MetricEntry>, Error> {
    let space = MetricSpace::euclidean(3);
    let blades = basis_blades();
    let mut out = Vec::new();
    for (i, (l, x)) in blades.iter().enumerate() {
        for (r, y) in &blades[i..] {
            let p = lambda_metric(x, y, &space)?;
            let values = spins
                .iter()
                .map(|&s| (s.to_string(), crate::scalar::substitute_casimir(&p, s).to_string()))
                .collect();
            out.push(MetricEntry {
                left: l.clone(),
                right: r.clone(),
                symbolic: p.to_string(),
                values,
            });
        }
    }
    Ok(out)
}

/// Slotwise action of an endomorphism on a tensor, `A(v1 ⊗ ... ⊗ vk) = Σ_i v1 ⊗ .. A(vi) .. ⊗ vk`.
pub fn derivation_action(a: &Endomorphism, x: &Element) -> Element {
    let n = a.dim();
    x.map_words(x.dim(), |w| {
        let l = w.letters();
        let mut out = Element::zero(n);
        for slot in 0..l.len() {
            let col = l[slot] as usize - 1;
            for row in 0..n {
                let c = a.entry(row, col);
                if c.is_zero() {
                    continue;
                }
                let mut v = l.to_vec();
                v[slot] = row as u8 + 1;
                out.add_term(Word::new(&v), c.clone());
            }
        }
        out
    })
}

/// Conversion between generators `J_p` and bivectors over `(E, δ)`,
/// `J_p = c Σ_{a,b} ε_abp e_a ∧ e_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivectorTransform {
    factor: Rational,
}

impl BivectorTransform {
    /// `J_p = ½ Σ ε_abp e_a ∧ e_b`, inverse `e_a ∧ e_b = Σ_p ε_abp J_p`.
    pub fn weak() -> Self {
        BivectorTransform {
            factor: Rational::new(1, 2),
        }
    }

    /// `J'_p = -¼ Σ ε_abp e_a ∧ e_b`.
    pub fn strong() -> Self {
        BivectorTransform {
            factor: Rational::new(-1, 4),
        }
    }

    pub fn factor(&self) -> &Rational {
        &self.factor
    }

    /// The image of `J_p` in `T(E)`.
    pub fn generator(&self, p: u8) -> Element {
        let mut out = Element::zero(3);
        for a in 1..=3u8 {
            for b in 1..=3u8 {
                let e = epsilon(a, b, p);
                if e == 0 {
                    continue;
                }
                let c = &self.factor * &Rational::new(e, 2);
                out.add_term(Word::new(&[a, b]), c.clone());
                out.add_term(Word::new(&[b, a]), -c);
            }
        }
        out
    }

    /// `Σ_p J_p ⊗ J_p` in `T(E)`.
    pub fn casimir(&self) -> Element {
        (1..=3)
            .map(|p| {
                let j = self.generator(p);
                &j * &j
            })
            .fold(Element::zero(3), |acc, x| &acc + &x)
    }

    /// Substitutes the bivector image for every generator letter of a `J`-word element.
    pub fn j_to_bivectors(&self, x: &Element) -> Element {
        let gens: Vec<Element> = (1..=3).map(|p| self.generator(p)).collect();
        x.map_words(3, |w| {
            w.letters()
                .iter()
                .fold(Element::one(3), |acc, &l| &acc * &gens[l as usize - 1])
        })
    }

    pub fn pbw_to_bivectors(&self, x: &PbwElement) -> Element {
        self.j_to_bivectors(&x.to_free())
    }

    /// `e_a ∧ e_b` as a combination of generators (a degree-1 `J`-word element).
    pub fn wedge_to_j(&self, a: u8, b: u8) -> Element {
        let scale = (&self.factor * &Rational::from_integer(2)).recip();
        let mut out = Element::zero(3);
        for p in 1..=3u8 {
            let e = epsilon(a, b, p);
            if e != 0 {
                out.add_term(Word::new(&[p]), &scale * &Rational::from_integer(e));
            }
        }
        out
    }

    /// A bivector of `T(E)` rewritten in generators.
    pub fn bivectors_to_j(&self, x: &Element) -> Result<Element, Error> {
        if x.degree().unwrap_or(2) != 2 || x.min_degree().unwrap_or(2) != 2 {
            return Err(Error::Degree(format!("`{x}` is not a bivector")));
        }
        let coords = blade_coordinates(x)?;
        let mut out = Element::zero(3);
        for (idx, c) in coords {
            out = &out + &self.wedge_to_j(idx[0], idx[1]).scale(&c);
        }
        Ok(out)
    }
}

/// `ℓ(B)(x) = B ⊗ x - x ⊗ B`, reduced in a weak-type context.
pub fn bivector_action(b: &Element, x: &Element, ctx: &QuotientContext) -> Result<Element, Error> {
    let needed = x.degree().unwrap_or(0) + b.degree().unwrap_or(0);
    if needed > ctx.max_degree() {
        return Err(Error::DegreeOverflow {
            degree: needed,
            max: ctx.max_degree(),
        });
    }
    ctx.reduce(&b.commutator(x)?)
}

/// `ℓ(B1 ⊗ ... ⊗ Bm) = ℓ(B1) ∘ ... ∘ ℓ(Bm)`.
pub fn bivector_product_action(
    bs: &[Element],
    x: &Element,
    ctx: &QuotientContext,
) -> Result<Element, Error> {
    let mut acc = ctx.reduce(x)?;
    for b in bs.iter().rev() {
        acc = bivector_action(b, &acc, ctx)?;
    }
    Ok(acc)
}

/// Coefficients `(k1, k2, k3)` of
/// `f(a,b,c) = k1 (ab - ba)c + k2 c(ab - ba) + k3 (acb - bca)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FCoefficients(pub [Rational; 3]);

impl FCoefficients {
    pub fn new(k1: Rational, k2: Rational, k3: Rational) -> Self {
        FCoefficients([k1, k2, k3])
    }

    /// `f` extended multilinearly to tensor arguments.
    pub fn apply(&self, a: &Element, b: &Element, c: &Element) -> Element {
        let [k1, k2, k3] = &self.0;
        let ab = &(a * b) - &(b * a);
        let mut out = (&ab * c).scale(k1);
        out = &out + &(c * &ab).scale(k2);
        let t = &(&(a * c) * b) - &(&(b * c) * a);
        &out + &t.scale(k3)
    }
}

impl fmt::Display for FCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Expands `f(f(a,b,c),d,e) + f(c,f(a,b,d),e) + f(f(c,d,a),b,e) + f(a,f(c,d,b),e)`
/// over every basis 5-tuple.
///
/// Each tuple's degree-5 residual is returned prefixed by the tuple itself,
/// so the result is zero iff every tuple's residual vanishes.
pub fn check_f_constraint(k: &FCoefficients, space: &MetricSpace) -> Result<Element, Error> {
    let n = space.dim();
    if n < 2 {
        return Err(Error::Unsupported(
            "the f-constraint needs dimension at least 2".into(),
        ));
    }
    let mut out = Element::zero(n);
    for tuple in crate::uea::index_words_over(n as u8, 5) {
        let r = f_residual(k, n, &tuple);
        let prefix = Element::word(n, &tuple);
        out = &out + &(&prefix * &r);
    }
    Ok(out)
}

fn f_residual(k: &FCoefficients, n: usize, t: &[u8]) -> Element {
    let e: Vec<Element> = t.iter().map(|&i| Element::basis(n, i)).collect();
    let (a, b, c, d, x) = (&e[0], &e[1], &e[2], &e[3], &e[4]);
    let mut r = k.apply(&k.apply(a, b, c), d, x);
    r = &r + &k.apply(c, &k.apply(a, b, d), x);
    r = &r + &k.apply(&k.apply(c, d, a), b, x);
    &r + &k.apply(a, &k.apply(c, d, b), x)
}

/// One quadratic form `Σ q_m k^m` over monomials
/// `[k1², k1k2, k1k3, k2², k2k3, k3²]`.
pub type QuadraticForm = [Rational; 6];

const QUAD_INDEX: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// The linearly independent quadratic equations on `(k1, k2, k3)` imposed by the constraint.
pub fn f_constraint_equations(space: &MetricSpace) -> Result<Vec<QuadraticForm>, Error> {
    let unit = |i: usize| {
        let mut k = [Rational::zero(), Rational::zero(), Rational::zero()];
        k[i] = Rational::one();
        k
    };
    let eval = |k: [Rational; 3]| check_f_constraint(&FCoefficients(k), space);
    let diag: Vec<Element> = (0..3).map(|i| eval(unit(i))).collect::<Result<_, _>>()?;
    let mut parts: Vec<Element> = Vec::new();
    for &(i, j) in &QUAD_INDEX {
        if i == j {
            parts.push(diag[i].clone());
        } else {
            let mut k = unit(i);
            k[j] = Rational::one();
            parts.push(&(&eval(k)? - &diag[i]) - &diag[j]);
        }
    }
    let words: BTreeSet<Word> = parts
        .iter()
        .flat_map(|p| p.terms().map(|(w, _)| w.clone()))
        .collect();
    let mut rows: Vec<QuadraticForm> = Vec::new();
    let mut seen = BTreeSet::new();
    for w in &words {
        let row: QuadraticForm = std::array::from_fn(|m| parts[m].coeff(w));
        if let Some(normal) = normalise_row(&row) {
            if seen.insert(normal.clone()) {
                rows.push(normal);
            }
        }
    }
    Ok(row_basis(rows))
}

fn normalise_row(row: &QuadraticForm) -> Option<QuadraticForm> {
    let lead = row.iter().find(|x| !x.is_zero())?.recip();
    Some(std::array::from_fn(|m| &row[m] * &lead))
}

fn row_basis(rows: Vec<QuadraticForm>) -> Vec<QuadraticForm> {
    let mut basis: Vec<QuadraticForm> = Vec::new();
    for mut r in rows {
        for b in &basis {
            let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if !r[p].is_zero() {
                let f = r[p].clone();
                for m in 0..6 {
                    let d = &f * &b[m];
                    r[m] -= &d;
                }
            }
        }
        if let Some(n) = normalise_row(&r) {
            let p = n.iter().position(|x| !x.is_zero()).unwrap();
            for b in &mut basis {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for m in 0..6 {
                        let d = &f * &n[m];
                        b[m] -= &d;
                    }
                }
            }
            basis.push(n);
        }
    }
    basis.sort_by_key(|r| r.iter().position(|x| !x.is_zero()));
    basis
}

/// Real projective solutions of the f-constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FSolution {
    /// Rational projective points `(k1 : k2 : k3)`, first nonzero entry 1.
    pub rational_points: Vec<[Rational; 3]>,
    /// The rational points whose relations `f(a,b,c) = t(a,b)(c)` force every
    /// vector to vanish; a subset of `rational_points`.
    pub collapsing: Vec<[Rational; 3]>,
    /// Number of further real points with irrational coordinates.
    pub irrational_points: usize,
    /// Whether the solution set contains a curve (infinitely many lines of solutions).
    pub positive_dimensional: bool,
    /// The independent quadratic equations that were solved.
    pub equations: usize,
}

impl FSolution {
    /// Rational points that keep the vectors alive in the quotient.
    pub fn nontrivial_points(&self) -> impl Iterator<Item = &[Rational; 3]> {
        self.rational_points
            .iter()
            .filter(|p| !self.collapsing.contains(p))
    }

    /// `Some(point)` when the only nonzero solutions that do not collapse the
    /// vectors are multiples of one rational triple.
    pub fn unique_family(&self) -> Option<&[Rational; 3]> {
        if self.irrational_points > 0 || self.positive_dimensional {
            return None;
        }
        let mut pts = self.nontrivial_points();
        match (pts.next(), pts.next()) {
            (Some(p), None) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for FSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive_dimensional {
            return write!(f, "positive-dimensional solution set");
        }
        let pts: Vec<String> = self
            .rational_points
            .iter()
            .map(|p| {
                let tag = if self.collapsing.contains(p) {
                    " [collapses V]"
                } else {
                    ""
                };
                format!("k*({}, {}, {}){tag}", p[0], p[1], p[2])
            })
            .collect();
        write!(f, "{}", pts.join(" | "))?;
        if self.irrational_points > 0 {
            write!(f, " + {} irrational point(s)", self.irrational_points)?;
        }
        if self.rational_points.is_empty() && self.irrational_points == 0 {
            write!(f, "only k = (0, 0, 0)")?;
        }
        Ok(())
    }
}

/// Solves the f-constraint on `(k1, k2, k3)` projectively.
///
/// The quadrics are intersected chart by chart: `k3 = 1` by a lexicographic
/// Gröbner basis in `(k1, k2)`, `k3 = 0, k2 = 1` by a univariate gcd, and the
/// point `(1 : 0 : 0)` directly.
pub fn solve_f_constraint(space: &MetricSpace) -> Result<FSolution, Error> {
    let eqs = f_constraint_equations(space)?;
    let mut sol = FSolution {
        rational_points: Vec::new(),
        collapsing: Vec::new(),
        irrational_points: 0,
        positive_dimensional: false,
        equations: eqs.len(),
    };
    // chart k3 = 1: variables x = k1, y = k2
    let chart: Vec<Bivariate> = eqs
        .iter()
        .map(|q| {
            let mut p = Bivariate::new();
            for (m, &(i, j)) in QUAD_INDEX.iter().enumerate() {
                let mut e = [0u32; 2];
                for v in [i, j] {
                    if v < 2 {
                        e[1 - v] += 1; // exponent order (y, x)
                    }
                }
                p.add((e[0], e[1]), q[m].clone());
            }
            p
        })
        .collect();
    let affine = solve_bivariate(chart);
    sol.positive_dimensional |= affine.positive_dimensional;
    sol.irrational_points += affine.irrational;
    for (x, y) in affine.points {
        sol.rational_points.push(normalise_point([x, y, Rational::one()]));
    }
    // chart k3 = 0, k2 = 1: univariate in x = k1
    let mut g = Poly::zero();
    for q in &eqs {
        let p = Poly::from_coeffs(vec![q[3].clone(), q[1].clone(), q[0].clone()]);
        g = g.gcd(&p);
    }
    if g.is_zero() {
        sol.positive_dimensional = true;
    } else {
        let roots = g.rational_roots();
        sol.irrational_points += squarefree(&g).count_real_roots() - roots.len();
        for x in roots {
            sol.rational_points
                .push(normalise_point([x, Rational::one(), Rational::zero()]));
        }
    }
    // point (1 : 0 : 0)
    if eqs.iter().all(|q| q[0].is_zero()) {
        sol.rational_points
            .push([Rational::one(), Rational::zero(), Rational::zero()]);
    }
    for p in &sol.rational_points {
        if collapses_vectors(&FCoefficients(p.clone()), space)? {
            sol.collapsing.push(p.clone());
        }
    }
    Ok(sol)
}

/// Whether `T(V) / ⟨f(a,b,c) - t(a,b)(c)⟩` has no nonzero vectors.
///
/// Decided on basis triples with a completion truncated at degree 4; any
/// degree-one element of the ideal is found by then because the relations are
/// at most cubic.
pub fn collapses_vectors(k: &FCoefficients, space: &MetricSpace) -> Result<bool, Error> {
    let n = space.dim();
    let mut gens = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            let t = t_map(&space.basis_vector(a), &space.basis_vector(b), space);
            for c in 1..=n {
                let basis = |i: usize| Element::basis(n, i as u8);
                let lhs = k.apply(&basis(a), &basis(b), &basis(c));
                let rhs = Element::vector(&t.apply(&space.basis_vector(c)));
                gens.push(&lhs - &rhs);
            }
        }
    }
    let rels = crate::quotient::RelationFamily::new("f-t", n, gens);
    let ctx = QuotientContext::build(space, rels, 1, 3);
    Ok(ctx.dims()[1] == 1)
}

fn normalise_point(p: [Rational; 3]) -> [Rational; 3] {
    let lead = p.iter().find(|x| !x.is_zero()).expect("projective point").recip();
    std::array::from_fn(|i| &p[i] * &lead)
}

fn squarefree(p: &Poly) -> Poly {
    if p.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    p.div_rem(&p.gcd(&p.derivative())).0
}

/// Polynomial in `ℚ[y, x]` keyed by exponents `(y, x)`; lex order with `y > x`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Bivariate(BTreeMap<(u32, u32), Rational>);

impl Bivariate {
    fn new() -> Self {
        Bivariate(BTreeMap::new())
    }

    fn add(&mut self, e: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(e).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> Option<((u32, u32), &Rational)> {
        self.0.iter().next_back().map(|(e, c)| (*e, c))
    }

    fn shifted_scaled(&self, shift: (u32, u32), c: &Rational) -> Bivariate {
        Bivariate(
            self.0
                .iter()
                .map(|(e, a)| ((e.0 + shift.0, e.1 + shift.1), a * c))
                .collect(),
        )
    }

    fn sub_assign(&mut self, other: &Bivariate) {
        for (e, c) in &other.0 {
            self.add(*e, -c.clone());
        }
    }

    fn monic(&self) -> Bivariate {
        match self.lead() {
            Some((_, c)) => self.shifted_scaled((0, 0), &c.recip()),
            None => self.clone(),
        }
    }

    fn reduce(&self, basis: &[Bivariate]) -> Bivariate {
        let mut p = self.clone();
        let mut out = Bivariate::new();
        while let Some((e, c)) = p.lead().map(|(e, c)| (e, c.clone())) {
            let divisor = basis.iter().find_map(|g| {
                let (ge, gc) = g.lead()?;
                (ge.0 <= e.0 && ge.1 <= e.1).then(|| (g, (e.0 - ge.0, e.1 - ge.1), gc.clone()))
            });
            match divisor {
                Some((g, shift, gc)) => p.sub_assign(&g.shifted_scaled(shift, &(&c / &gc))),
                None => {
                    out.add(e, c.clone());
                    p.add(e, -c);
                }
            }
        }
        out
    }

    /// Univariate in `x` when no term involves `y`.
    fn as_x_poly(&self) -> Option<Poly> {
        if self.0.keys().any(|e| e.0 > 0) {
            return None;
        }
        let deg = self.0.keys().map(|e| e.1).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.0 {
            coeffs[e.1 as usize] = c.clone();
        }
        Some(Poly::from_coeffs(coeffs))
    }

    /// Substitutes `x = x0`, giving a polynomial in `y`.
    fn at_x(&self, x0: &Rational) -> Poly {
        let deg = self.0.keys().map(|e| e.0).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.0 {
            coeffs[e.0 as usize] += &(c * &x0.pow(e.1));
        }
        Poly::from_coeffs(coeffs)
    }
}

fn s_polynomial(f: &Bivariate, g: &Bivariate) -> Bivariate {
    let ((fe, fc), (ge, gc)) = (f.lead().unwrap(), g.lead().unwrap());
    let l = (fe.0.max(ge.0), fe.1.max(ge.1));
    let mut s = f.shifted_scaled((l.0 - fe.0, l.1 - fe.1), &fc.recip());
    s.sub_assign(&g.shifted_scaled((l.0 - ge.0, l.1 - ge.1), &gc.recip()));
    s
}

fn groebner(gens: Vec<Bivariate>) -> Vec<Bivariate> {
    let mut basis: Vec<Bivariate> = Vec::new();
    for g in gens {
        let r = g.reduce(&basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..i).map(move |j| (j, i)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let r = s_polynomial(&basis[i], &basis[j]).reduce(&basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // interreduce
    let mut out: Vec<Bivariate> = Vec::new();
    for i in 0..basis.len() {
        let others: Vec<Bivariate> = basis
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, b)| b.clone())
            .collect();
        let lead = basis[i].lead().unwrap().0;
        let redundant = others.iter().enumerate().any(|(j, b)| {
            let be = b.lead().unwrap().0;
            let j = if j >= i { j + 1 } else { j };
            be.0 <= lead.0 && be.1 <= lead.1 && (be != lead || j < i)
        });
        if !redundant {
            out.push(basis[i].clone());
        }
    }
    let reduced: Vec<Bivariate> = (0..out.len())
        .map(|i| {
            let others: Vec<Bivariate> = out
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, b)| b.clone())
                .collect();
            let lead = out[i].lead().map(|(e, c)| (e, c.clone())).unwrap();
            let mut tail = out[i].clone();
            tail.add(lead.0, -lead.1.clone());
            let mut r = tail.reduce(&others);
            r.add(lead.0, lead.1);
            r.monic()
        })
        .collect();
    reduced
}

struct AffineSolutions {
    points: Vec<(Rational, Rational)>,
    irrational: usize,
    positive_dimensional: bool,
}

fn solve_bivariate(eqs: Vec<Bivariate>) -> AffineSolutions {
    let mut out = AffineSolutions {
        points: Vec::new(),
        irrational: 0,
        positive_dimensional: false,
    };
    let gb = groebner(eqs.into_iter().filter(|e| !e.is_zero()).collect());
    if gb.is_empty() {
        out.positive_dimensional = true;
        return out;
    }
    if gb.iter().any(|g| g.lead().unwrap().0 == (0, 0)) {
        return out;
    }
    let Some(px) = gb.iter().find_map(Bivariate::as_x_poly) else {
        out.positive_dimensional = true;
        return out;
    };
    let xs = px.rational_roots();
    // irrational x-roots each carry at least one complex fibre; count real ones by bound
    let irrational_x = squarefree(&px).count_real_roots() - xs.len();
    if irrational_x > 0 {
        // fibres over irrational x are counted once per real root of the eliminant
        out.irrational += irrational_x;
    }
    for x0 in xs {
        let mut g = Poly::zero();
        for b in &gb {
            g = g.gcd(&b.at_x(&x0));
        }
        if g.is_zero() {
            out.positive_dimensional = true;
            continue;
        }
        let ys = g.rational_roots();
        out.irrational += squarefree(&g).count_real_roots() - ys.len();
        for y0 in ys {
            out.points.push((x0.clone(), y0));
        }
    }
    out
}
