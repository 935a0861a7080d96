//! Spin-`s` matrix representations of `so(3)`, used as a numerical oracle.
//!
//! `J_a = -i Ŝ_a` with `Ŝ_a` the Hermitian angular-momentum matrices, so that
//! `[J_a, J_b] = Σ_c ε_abc J_c` and `Σ_a J_a² = -s(s+1)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::freealg::Element;
use crate::scalar::{CasimirPoly, HalfInteger, Rational};
use crate::uea::{self, MultipoleTable, PbwElement};

pub type CMatrix = DMatrix<Complex64>;

/// Assertion tolerance for images that must vanish.
pub const VANISH_TOL: f64 = 1e-9;
/// Lower bound on images that must survive.
pub const SURVIVE_TOL: f64 = 1e-6;

/// The three generator matrices of the spin-`s` representation.
#[derive(Clone, Debug)]
pub struct SpinRep {
    pub s: HalfInteger,
    pub matrices: [CMatrix; 3],
}

impl SpinRep {
    pub fn dim(&self) -> usize {
        self.s.multiplicity()
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim(), self.dim())
    }

    /// The same matrices multiplied by `c`.
    pub fn scaled(&self, c: f64) -> [CMatrix; 3] {
        self.matrices.clone().map(|m| m * Complex64::new(c, 0.0))
    }
}

/// Ladder-operator construction over the basis `|s⟩, |s-1⟩, ..., |-s⟩`.
pub fn spin_matrices(s: HalfInteger) -> SpinRep {
    let d = s.multiplicity();
    let sv = s.to_f64();
    let m = |i: usize| sv - i as f64;
    let mut sz = CMatrix::zeros(d, d);
    let mut sp = CMatrix::zeros(d, d);
    for i in 0..d {
        sz[(i, i)] = Complex64::new(m(i), 0.0);
        if i > 0 {
            // S+ |m⟩ = sqrt(s(s+1) - m(m+1)) |m+1⟩
            let mi = m(i);
            sp[(i - 1, i)] = Complex64::new((sv * (sv + 1.0) - mi * (mi + 1.0)).sqrt(), 0.0);
        }
    }
    let sm = sp.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let sx = (&sp + &sm) * half;
    let sy = (&sp - &sm) * Complex64::new(0.0, -0.5);
    let minus_i = Complex64::new(0.0, -1.0);
    SpinRep {
        s,
        matrices: [sx * minus_i, sy * minus_i, sz * minus_i],
    }
}

fn scalar_matrix(d: usize, c: &Rational) -> CMatrix {
    CMatrix::identity(d, d) * Complex64::new(c.to_f64(), 0.0)
}

/// Evaluates a free-algebra element with letter `i` sent to `letters[i - 1]`.
pub fn evaluate_with(x: &Element, letters: &[CMatrix]) -> CMatrix {
    let d = letters.first().map_or(1, |m| m.nrows());
    let mut out = CMatrix::zeros(d, d);
    for (w, c) in x.terms() {
        let mut prod = CMatrix::identity(d, d);
        for &l in w.letters() {
            prod = prod * &letters[l as usize - 1];
        }
        out += prod * Complex64::new(c.to_f64(), 0.0);
    }
    out
}

/// Evaluates a `J`-word element.
pub fn evaluate_words(x: &Element, rep: &SpinRep) -> CMatrix {
    evaluate_with(x, &rep.matrices)
}

/// Evaluates a PBW element.
pub fn evaluate_pbw(x: &PbwElement, rep: &SpinRep) -> CMatrix {
    let d = rep.dim();
    let mut out = CMatrix::zeros(d, d);
    for (m, c) in x.terms() {
        let mut prod = CMatrix::identity(d, d);
        for (a, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                prod = prod * &rep.matrices[a];
            }
        }
        out += prod * Complex64::new(c.to_f64(), 0.0);
    }
    out
}

/// Evaluates a polynomial in `C` with `C = -s(s+1)`.
pub fn evaluate_casimir_poly(p: &CasimirPoly, rep: &SpinRep) -> CMatrix {
    scalar_matrix(rep.dim(), &crate::scalar::substitute_casimir(p, rep.s))
}

/// Images of vectors in the spin-`s` representation of the weak algebra over
/// `(E, δ)`: `e_a ↦ sign · √2 J_a`.
///
/// Both signs respect `(a∧b)c - c(a∧b) = g(a,c) b - g(b,c) a`; the bivector
/// `e_a ∧ e_b` maps to `Σ_p ε_abp J_p` either way.
pub fn weak_vector_images(rep: &SpinRep, sign: f64) -> [CMatrix; 3] {
    rep.scaled(sign * std::f64::consts::SQRT_2)
}

/// Largest entry modulus.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `ad(C + α)` on matrices: `Σ_b [J_b, [J_b, X]] + α X`.
pub fn ad_casimir_matrix(x: &CMatrix, rep: &SpinRep, alpha: f64) -> CMatrix {
    let mut out = x * Complex64::new(alpha, 0.0);
    for j in &rep.matrices {
        let inner = j * x - x * j;
        out += j * &inner - &inner * j;
    }
    out
}

/// The multipole recursion carried out directly on matrices.
pub fn numeric_multipole(word: &[u8], rep: &SpinRep) -> CMatrix {
    match word.len() {
        0 => rep.identity(),
        1 => rep.matrices[word[0] as usize - 1].clone(),
        len => {
            let k = (len - 1) as f64;
            let inner = numeric_multipole(&word[1..], rep);
            let y = &rep.matrices[word[0] as usize - 1] * inner;
            let y = ad_casimir_matrix(&y, rep, k * (k + 1.0));
            let y = ad_casimir_matrix(&y, rep, k * (k - 1.0));
            y * Complex64::new(1.0 / (4.0 * (k + 1.0) * (2.0 * k + 1.0)), 0.0)
        }
    }
}

/// Vanishing tolerance for a numeric rank-`k` multipole in spin `s`.
///
/// The recursion applies `ad_C` twice per step, so rounding error grows
/// roughly like `(1 + s(s+1))^(k+1)`.
pub fn multipole_tolerance(s: HalfInteger, k: usize) -> f64 {
    let x = s.to_f64();
    let c = 1.0 + x * (x + 1.0);
    1e-12 * c.powi(k as i32 + 1)
}

/// One numeric check in a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value < tolerance`.
    pub fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            max_residual: value,
            tolerance,
            pass: value < tolerance,
        }
    }

    /// Passes when `value > tolerance`.
    pub fn above(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            max_residual: value,
            tolerance,
            pass: value > tolerance,
        }
    }
}

/// Checks of one spin value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpinReport {
    pub s: HalfInteger,
    pub checks: Vec<Check>,
}

impl SpinReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Construction invariants of [`spin_matrices`].
pub fn verify_construction(rep: &SpinRep) -> Vec<Check> {
    let mut bracket: f64 = 0.0;
    for a in 1..=3u8 {
        for b in 1..=3u8 {
            let (ja, jb) = (&rep.matrices[a as usize - 1], &rep.matrices[b as usize - 1]);
            let mut lhs = ja * jb - jb * ja;
            for c in 1..=3u8 {
                let e = uea::epsilon(a, b, c) as f64;
                if e != 0.0 {
                    lhs -= &rep.matrices[c as usize - 1] * Complex64::new(e, 0.0);
                }
            }
            bracket = bracket.max(max_norm(&lhs));
        }
    }
    let cas = evaluate_pbw(&uea::casimir(), rep) - scalar_matrix(rep.dim(), &rep.s.casimir_value());
    vec![
        Check::below("commutators", bracket, 1e-12),
        Check::below("casimir", max_norm(&cas), 1e-12),
    ]
}

/// `Im μ_{2s+1}` vanishes in the spin-`s` representation and every lower
/// multipole order survives.
pub fn verify_spin_ideal(s: HalfInteger) -> SpinReport {
    let rep = spin_matrices(s);
    let top = s.twice() as usize + 1;
    let mut table = MultipoleTable::new();
    let mut checks = verify_construction(&rep);
    let top_norm = uea::index_words(top)
        .iter()
        .map(|w| max_norm(&evaluate_pbw(&table.get(w).expect("valid word"), &rep)))
        .fold(0.0, f64::max);
    checks.push(Check::below(format!("mu_{top} vanishes"), top_norm, VANISH_TOL));
    for k in 0..top {
        let norm = uea::index_words(k)
            .iter()
            .map(|w| max_norm(&evaluate_pbw(&table.get(w).expect("valid word"), &rep)))
            .fold(0.0, f64::max);
        checks.push(Check::above(format!("mu_{k} survives"), norm, SURVIVE_TOL));
    }
    SpinReport { s, checks }
}

/// Numerical rank of matrices, vectorised with real and imaginary parts stacked.
pub fn joint_rank(images: &[Vec<CMatrix>]) -> usize {
    let Some(first) = images.first() else {
        return 0;
    };
    let rows: usize = first.iter().map(|m| 2 * m.len()).sum();
    let mut stacked = DMatrix::<f64>::zeros(rows, images.len());
    for (col, blocks) in images.iter().enumerate() {
        let mut r = 0;
        for m in blocks {
            for z in m.iter() {
                stacked[(r, col)] = z.re;
                stacked[(r + 1, col)] = z.im;
                r += 2;
            }
        }
    }
    if stacked.nrows() < stacked.ncols() {
        stacked = stacked.transpose();
    }
    stacked
        .singular_values()
        .iter()
        .filter(|&&x| x > VANISH_TOL)
        .count()
}

/// Rank of the images of `μ_k` for `k = 0..=2s`.
pub fn multipole_span_rank(s: HalfInteger) -> usize {
    let rep = spin_matrices(s);
    let mut table = MultipoleTable::new();
    let mut images = Vec::new();
    for k in 0..=s.twice() as usize {
        for w in uea::index_words(k) {
            let w_sorted = {
                let mut v = w.clone();
                v.sort();
                v
            };
            // permutation symmetry lets the sorted word stand for the class
            if w != w_sorted {
                continue;
            }
            images.push(vec![evaluate_pbw(&table.get(&w).expect("valid word"), &rep)]);
        }
    }
    joint_rank(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        max_norm(&(a - b)) < tol
    }

    fn all_spins() -> Vec<HalfInteger> {
        (0..=6).map(HalfInteger::from_twice).collect()
    }

    #[test]
    fn construction_invariants() {
        for s in all_spins() {
            let rep = spin_matrices(s);
            assert!(verify_construction(&rep).iter().all(|c| c.pass), "s = {s}");
        }
    }

    #[test]
    fn spin_zero_and_half() {
        let rep = spin_matrices(HalfInteger::ZERO);
        assert!(rep.matrices.iter().all(|m| m.shape() == (1, 1) && m[(0, 0)].norm() == 0.0));
        let rep = spin_matrices(HalfInteger::HALF);
        let i = Complex64::new(0.0, 1.0);
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        let pauli = [
            CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
            CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
            CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        ];
        for a in 0..3 {
            let expected = &pauli[a] * Complex64::new(0.0, -0.5);
            assert!(close(&rep.matrices[a], &expected, 1e-12));
        }
        let one = spin_matrices(HalfInteger::ONE);
        let cas = evaluate_pbw(&uea::casimir(), &one);
        assert!(close(&cas, &(one.identity() * Complex64::new(-2.0, 0.0)), 1e-12));
    }

    #[test]
    fn evaluation_examples() {
        for s in all_spins() {
            let rep = spin_matrices(s);
            assert!(close(&evaluate_pbw(&PbwElement::one(), &rep), &rep.identity(), 0.0 + 1e-15));
            let mut x = &Element::word(3, &[2, 1]) - &Element::word(3, &[1, 2]);
            x = &x + &Element::word(3, &[3]);
            assert!(max_norm(&evaluate_words(&x, &rep)) < 1e-12);
        }
        let rep = spin_matrices(HalfInteger::HALF);
        let cas = evaluate_pbw(&uea::casimir(), &rep);
        assert!(close(&cas, &(rep.identity() * Complex64::new(-0.75, 0.0)), 1e-12));
    }

    #[test]
    fn spin_ideal_examples() {
        let half = verify_spin_ideal(HalfInteger::HALF);
        assert!(half.pass(), "{half:?}");
        let one = verify_spin_ideal(HalfInteger::ONE);
        assert!(one.pass(), "{one:?}");
        let zero = verify_spin_ideal(HalfInteger::ZERO);
        assert!(zero.pass(), "{zero:?}");
        // a spin-1 representation does not kill the quadrupole
        let rep = spin_matrices(HalfInteger::ONE);
        let q = evaluate_pbw(&uea::multipole(&[1, 2]).unwrap(), &rep);
        assert!(max_norm(&q) > SURVIVE_TOL);
    }

    #[test]
    fn span_ranks() {
        for s in all_spins().into_iter().take(4) {
            let d = s.multiplicity();
            assert_eq!(multipole_span_rank(s), d * d, "s = {s}");
        }
    }

    #[test]
    fn numeric_recursion_matches_exact_multipoles() {
        let rep = spin_matrices(HalfInteger::from_twice(3));
        for k in 0..=4 {
            for w in uea::index_words(k) {
                let exact = evaluate_pbw(&uea::multipole(&w).unwrap(), &rep);
                assert!(close(&exact, &numeric_multipole(&w, &rep), 1e-9));
            }
        }
    }

    #[test]
    fn numeric_multipole_properties() {
        for s in all_spins() {
            let rep = spin_matrices(s);
            for k in 0..=(s.twice() as usize + 1).min(4) {
                let shift = (k * (k + 1)) as f64;
                let tol = multipole_tolerance(s, k).max(1e-12);
                for w in uea::index_words(k) {
                    let t = numeric_multipole(&w, &rep);
                    assert!(max_norm(&ad_casimir_matrix(&t, &rep, shift)) < tol);
                    let mut sorted = w.clone();
                    sorted.sort();
                    assert!(close(&t, &numeric_multipole(&sorted, &rep), tol));
                }
            }
        }
    }

    #[test]
    fn weak_vector_images_respect_relations() {
        use crate::freealg::MetricSpace;
        use crate::quotient::RelationFamily;
        for s in all_spins() {
            let rep = spin_matrices(s);
            for sign in [1.0, -1.0] {
                let letters = weak_vector_images(&rep, sign);
                for r in RelationFamily::weak(&MetricSpace::euclidean(3)).generators() {
                    assert!(max_norm(&evaluate_with(r, &letters)) < 1e-12);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn evaluation_is_compatible_with_normal_form(
            terms in proptest::collection::vec(
                (proptest::collection::vec(1u8..=3, 0..=4), -3i64..=3), 1..4),
            twice in 0u32..=4,
        ) {
            let x = Element::from_terms(
                3,
                terms.into_iter().map(|(w, c)| (crate::Word::new(&w), Rational::from_integer(c))),
            );
            let rep = spin_matrices(HalfInteger::from_twice(twice));
            let lhs = evaluate_words(&x, &rep);
            let rhs = evaluate_pbw(&uea::pbw_normal_form(&x), &rep);
            prop_assert!(close(&lhs, &rhs, 1e-10));
        }

        #[test]
        fn monopole_part_is_the_trace_component(
            word in proptest::collection::vec(1u8..=3, 0..=3),
            twice in 0u32..=4,
        ) {
            let s = HalfInteger::from_twice(twice);
            let rep = spin_matrices(s);
            let mut a = PbwElement::one();
            for &l in &word {
                a = a.mul(&PbwElement::generator(l));
            }
            let mon = uea::monopole_part(&a, 3).unwrap();
            let rest = evaluate_pbw(&a, &rep) - evaluate_casimir_poly(&mon, &rep);
            prop_assert!(rest.trace().norm() < 1e-10);
        }
    }
}
