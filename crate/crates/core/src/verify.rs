//! Check suites shared by `weakcliff verify` and the acceptance tests.
//!
//! Every suite returns a list of [`Outcome`]s. Exact checks count
//! failures over an enumerated or seeded random input set; numeric checks
//! carry a residual and a tolerance.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::freealg::{Element, MetricSpace, Word};
use crate::geometry::{
    adjoint_parts, basis_blades, bivector_action, check_f_constraint, conformal_reflection,
    derivation_action, g_adjoint, lambda_metric, scale_map, solve_f_constraint, t_map,
    BivectorTransform, Endomorphism, FCoefficients, Vector,
};
use crate::quotient::{basis_wedge, rank, QuotientContext, RelationFamily};
use crate::rep::{self, evaluate_pbw, evaluate_with, max_norm, spin_matrices, CMatrix};
use crate::scalar::{substitute_casimir, HalfInteger, Poly, Rational};
use crate::uea::{self, epsilon, monopole_part, Monomial, MultipoleTable, PbwElement};
use crate::Error;

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Multipoles,
    CliffordSpinHalf,
    FConstraint,
    Reflections,
    Weak,
    SpinHalf,
    SpinOne,
    Metric,
    SpinZero,
    Rep,
    CrossOracle,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const EACH: [Suite; 11] = [
        Suite::Multipoles,
        Suite::CliffordSpinHalf,
        Suite::FConstraint,
        Suite::Reflections,
        Suite::Weak,
        Suite::SpinHalf,
        Suite::SpinOne,
        Suite::Metric,
        Suite::SpinZero,
        Suite::Rep,
        Suite::CrossOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Multipoles => "multipoles",
            Suite::CliffordSpinHalf => "clifford-spin-half",
            Suite::FConstraint => "f-constraint",
            Suite::Reflections => "reflections",
            Suite::Weak => "weak",
            Suite::SpinHalf => "spin-half",
            Suite::SpinOne => "spin-one",
            Suite::Metric => "metric",
            Suite::SpinZero => "spin-zero",
            Suite::Rep => "rep",
            Suite::CrossOracle => "cross-oracle",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite `{s}`")))
    }
}

/// Knobs shared by the suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    /// Highest multipole order in the `multipoles` suite.
    pub kmax: usize,
    pub seed: u64,
    /// Random draws per identity in the `reflections` suite.
    pub cases: usize,
    /// Truncation degree override for the `weak` and spin suites.
    pub degree: Option<usize>,
    pub headroom: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            kmax: 4,
            seed: 0,
            cases: 200,
            degree: None,
            headroom: 2,
        }
    }
}

/// The result of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub suite: String,
    pub name: String,
    /// The identity or property being checked.
    pub identity: String,
    /// What was observed: a failure count, residual, dimension or value.
    pub value: String,
    pub pass: bool,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{}] {}: {}", self.suite, self.name, self.value)
    }
}

struct Recorder {
    suite: Suite,
    out: Vec<Outcome>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Recorder {
            suite,
            out: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, identity: &str, value: String, pass: bool) {
        self.out.push(Outcome {
            suite: self.suite.name().to_string(),
            name: name.to_string(),
            identity: identity.to_string(),
            value,
            pass,
        });
    }

    /// Exact check over `total` inputs, `failed` of which broke the identity.
    fn count(&mut self, name: &str, identity: &str, failed: usize, total: usize) {
        self.push(name, identity, format!("{failed} of {total} failed"), failed == 0);
    }

    fn equal<T: PartialEq + fmt::Display>(&mut self, name: &str, identity: &str, got: T, want: T) {
        let pass = got == want;
        let value = if pass {
            format!("{got}")
        } else {
            format!("{got}, expected {want}")
        };
        self.push(name, identity, value, pass);
    }

    fn below(&mut self, name: &str, identity: &str, residual: f64, tol: f64) {
        self.push(
            name,
            identity,
            format!("residual {residual:.3e} (tolerance {tol:.0e})"),
            residual < tol,
        );
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run(suite: Suite, cfg: &VerifyConfig) -> Vec<Outcome> {
    if suite == Suite::All {
        return Suite::EACH.iter().flat_map(|&s| run(s, cfg)).collect();
    }
    let mut rec = Recorder::new(suite);
    let result = match suite {
        Suite::Multipoles => multipoles(&mut rec, cfg),
        Suite::CliffordSpinHalf => clifford_spin_half(&mut rec),
        Suite::FConstraint => f_constraint(&mut rec, cfg),
        Suite::Reflections => reflections(&mut rec, cfg),
        Suite::Weak => weak(&mut rec, cfg),
        Suite::SpinHalf => spin(&mut rec, cfg, HalfInteger::from_twice(1), 6),
        Suite::SpinOne => spin(&mut rec, cfg, HalfInteger::from_twice(2), 8),
        Suite::Metric => metric(&mut rec),
        Suite::SpinZero => spin_zero(&mut rec),
        Suite::Rep => representations(&mut rec),
        Suite::CrossOracle => cross_oracle(&mut rec, cfg),
        Suite::All => unreachable!(),
    };
    if let Err(e) = result {
        rec.push("suite error", "the suite runs to completion", e.to_string(), false);
    }
    rec.out
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn delta() -> MetricSpace {
    MetricSpace::euclidean(3)
}

fn vector_element(v: &[Rational]) -> Element {
    Element::vector(v)
}

fn multipoles(rec: &mut Recorder, cfg: &VerifyConfig) -> Result<(), Error> {
    let mut table = MultipoleTable::new();
    for k in 0..=cfg.kmax {
        let words = uea::index_words(k);
        let shift = Rational::from_integer((k * (k + 1)) as i64);
        let mut eigen = 0;
        let mut symmetric = 0;
        for w in &words {
            let t = table.get(w)?;
            if !uea::ad_casimir_shifted(&t, &shift).is_zero() {
                eigen += 1;
            }
            let mut sorted = w.clone();
            sorted.sort();
            if table.get(&sorted)? != t {
                symmetric += 1;
            }
        }
        rec.count(
            &format!("mu_{k} eigen-relation"),
            "ad(C + k(k+1)) mu_k = 0",
            eigen,
            words.len(),
        );
        rec.count(
            &format!("mu_{k} permutation symmetry"),
            "mu_k(w) = mu_k(sorted w)",
            symmetric,
            words.len(),
        );
        let (mut failed, mut total) = (0, 0);
        for m in 0..k {
            for n in m + 1..k {
                for w in words.iter().filter(|w| w[m] == 1 && w[n] == 1) {
                    let mut sum = PbwElement::zero();
                    for a in 1..=3 {
                        let mut v = w.clone();
                        v[m] = a;
                        v[n] = a;
                        sum = &sum + &table.get(&v)?;
                    }
                    total += 1;
                    if !sum.is_zero() {
                        failed += 1;
                    }
                }
            }
        }
        rec.count(
            &format!("mu_{k} contractionless"),
            "sum_a mu_k(..a..a..) = 0 for every slot pair",
            failed,
            total,
        );
    }
    Ok(())
}

/// Reduced `(a∧b)(c∧d) - (c∧d)(a∧b)` minus `scale` times
/// `g(a,c) b∧d - g(b,c) a∧d - g(a,d) b∧c + g(b,d) a∧c`, over all basis 4-tuples.
fn lie_product_failures(ctx: &QuotientContext, scale: &Rational) -> Result<(usize, usize), Error> {
    let g = ctx.space().clone();
    let n = g.dim();
    let w = |a: u8, b: u8| basis_wedge(n, &[a, b]);
    let (mut failed, mut total) = (0, 0);
    for a in 1..=n as u8 {
        for b in 1..=n as u8 {
            for c in 1..=n as u8 {
                for d in 1..=n as u8 {
                    let lhs = w(a, b).commutator(&w(c, d))?;
                    let rhs = &(&(&w(b, d).scale(g.g(a, c)) - &w(a, d).scale(g.g(b, c)))
                        - &w(b, c).scale(g.g(a, d)))
                        + &w(a, c).scale(g.g(b, d));
                    total += 1;
                    if !ctx.is_zero(&(&lhs - &rhs.scale(scale)))? {
                        failed += 1;
                    }
                }
            }
        }
    }
    Ok((failed, total))
}

/// Reduced `[J_p, J_q] - Σ ε_pqr J_r` under a transform.
fn bracket_failures(ctx: &QuotientContext, tr: &BivectorTransform) -> Result<usize, Error> {
    let mut failed = 0;
    for p in 1..=3u8 {
        for r in 1..=3u8 {
            let mut x = tr.generator(p).commutator(&tr.generator(r))?;
            for c in 1..=3u8 {
                let e = epsilon(p, r, c);
                if e != 0 {
                    x = &x - &tr.generator(c).scale(&Rational::from_integer(e));
                }
            }
            if !ctx.is_zero(&x)? {
                failed += 1;
            }
        }
    }
    Ok(failed)
}

/// Reduced images of all generator words of length at most `len`.
fn generator_words(ctx: &QuotientContext, tr: &BivectorTransform, len: usize) -> Result<Vec<Element>, Error> {
    let gens: Vec<Element> = (1..=3).map(|p| tr.generator(p)).collect();
    let mut layer = vec![Element::one(3)];
    let mut all = layer.clone();
    for _ in 0..len {
        let mut next = Vec::new();
        for x in &layer {
            for g in &gens {
                next.push(ctx.reduce(&(x * g))?);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all)
}

fn clifford_spin_half(rec: &mut Recorder) -> Result<(), Error> {
    let ctx = QuotientContext::build(&delta(), RelationFamily::clifford(&delta()), 6, 2);
    let tr = BivectorTransform::strong();
    let half = Element::scalar(3, q(1, 2));
    let mut failed = 0;
    for p in 1..=3u8 {
        for r in 1..=3u8 {
            let (jp, jr) = (tr.generator(p), tr.generator(r));
            let anti = &half * &(&(&jp * &jr) + &(&jr * &jp));
            let want = if p == r { q(-1, 4) } else { Rational::zero() };
            if ctx.reduce(&anti)? != Element::scalar(3, want) {
                failed += 1;
            }
        }
    }
    rec.count(
        "anticommutators",
        "1/2 (J'p J'q + J'q J'p) = -1/4 delta_pq",
        failed,
        9,
    );
    rec.equal(
        "casimir",
        "sum_p J'p J'p = -3/4",
        ctx.reduce(&tr.casimir())?,
        Element::scalar(3, q(-3, 4)),
    );
    let mut table = MultipoleTable::new();
    let mut failed = 0;
    for w in uea::index_words(2) {
        if !ctx.is_zero(&tr.pbw_to_bivectors(&table.get(&w)?))? {
            failed += 1;
        }
    }
    rec.count("quadrupole vanishes", "mu_2(J'a, J'b) = 0", failed, 9);
    let span = generator_words(&ctx, &tr, 3)?;
    rec.equal(
        "bivector subalgebra",
        "span of products of J' has dimension 4",
        rank(&span),
        4,
    );
    rec.count("bracket", "[J'p, J'q] = sum_r eps_pqr J'r", bracket_failures(&ctx, &tr)?, 9);
    let (failed, total) = lie_product_failures(&ctx, &q(-2, 1))?;
    rec.count(
        "bivector Lie product",
        "[a^b, c^d] = 2g(b,c) a^d - 2g(b,d) a^c - 2g(a,c) b^d + 2g(a,d) b^c",
        failed,
        total,
    );
    Ok(())
}

fn f_constraint(rec: &mut Recorder, cfg: &VerifyConfig) -> Result<(), Error> {
    let g = delta();
    let sol = solve_f_constraint(&g)?;
    let one = [q(1, 1), q(-1, 1), Rational::zero()];
    rec.push(
        "solution family",
        "the only non-collapsing solutions are k (1, -1, 0)",
        sol.to_string(),
        sol.unique_family() == Some(&one),
    );
    let consistent = sol
        .rational_points
        .iter()
        .map(|p| check_f_constraint(&FCoefficients(p.clone()), &g).map(|r| r.is_zero()))
        .collect::<Result<Vec<_>, _>>()?;
    rec.count(
        "solutions satisfy the constraint",
        "every returned point has zero residual",
        consistent.iter().filter(|ok| !**ok).count(),
        consistent.len(),
    );
    let half = FCoefficients::new(q(1, 2), q(-1, 2), Rational::zero());
    rec.push(
        "(1/2, -1/2, 0)",
        "the constraint holds",
        "residual checked".into(),
        check_f_constraint(&half, &g)?.is_zero(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut passed = 0;
    let mut drawn = 0;
    while drawn < 20 {
        let k: [Rational; 3] = std::array::from_fn(|_| q(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
        if k[2].is_zero() && k[0] == -&k[1] {
            continue;
        }
        drawn += 1;
        if check_f_constraint(&FCoefficients(k), &g)?.is_zero() {
            passed += 1;
        }
    }
    rec.count(
        "20 random other triples",
        "the constraint fails off the family",
        passed,
        drawn,
    );
    Ok(())
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    (0..n).map(|_| Rational::from_integer(rng.gen_range(-3..=3))).collect()
}

fn random_non_null(rng: &mut ChaCha8Rng, g: &MetricSpace) -> Vector {
    loop {
        let v = random_vector(rng, g.dim());
        if !g.inner(&v, &v).is_zero() {
            return v;
        }
    }
}

/// `v ↦ g(a,a) v - 2 g(a,v) a`, also for null `a`.
fn reflection(a: &[Rational], g: &MetricSpace) -> Endomorphism {
    let n = g.dim();
    let aa = g.inner(a, a);
    let ga: Vec<Rational> = (1..=n).map(|j| g.inner(a, &g.basis_vector(j))).collect();
    Endomorphism::from_fn(n, |i, j| {
        let diag = if i == j { aa.clone() } else { Rational::zero() };
        &diag - &(&Rational::from_integer(2) * &(&a[i] * &ga[j]))
    })
}

fn is_conformal(s: &Endomorphism, factor: &Rational, g: &MetricSpace) -> bool {
    let n = g.dim();
    (1..=n).all(|i| {
        (1..=n).all(|j| {
            let (v, w) = (g.basis_vector(i), g.basis_vector(j));
            g.inner(&s.apply(&v), &s.apply(&w)) == factor * &g.inner(&v, &w)
        })
    })
}

fn reflections(rec: &mut Recorder, cfg: &VerifyConfig) -> Result<(), Error> {
    let two = Rational::from_integer(2);
    let half = q(1, 2);
    for (p, qq) in [(3, 0), (1, 1), (1, 3)] {
        let g = MetricSpace::signature(p, qq);
        let n = g.dim();
        let sig = format!("({p},{qq})");
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (16 * p + qq) as u64);
        let mut fails = [0usize; 8];
        for _ in 0..cfg.cases {
            let a = random_non_null(&mut rng, &g);
            let b = random_non_null(&mut rng, &g);
            let c = random_vector(&mut rng, n);
            let d = random_vector(&mut rng, n);
            let (ra, rb) = (conformal_reflection(&a, &g)?, conformal_reflection(&b, &g)?);
            let aa = g.inner(&a, &a);
            let square = &aa * &aa;
            // conformal isometry exactly for k = ±1
            let iso = [-1i64, 1]
                .iter()
                .map(|&k| scale_map(&Rational::from_integer(k), &a, &g))
                .collect::<Result<Vec<_>, _>>()?;
            let others = [-2i64, 0, 2, 3]
                .iter()
                .map(|&k| scale_map(&Rational::from_integer(k), &a, &g))
                .collect::<Result<Vec<_>, _>>()?;
            if !iso.iter().all(|s| is_conformal(s, &square, &g))
                || others.iter().any(|s| is_conformal(s, &square, &g))
            {
                fails[0] += 1;
            }
            let tab = t_map(&a, &b, &g);
            let gab = g.inner(&a, &b);
            let (plus, minus) = adjoint_parts(&(&ra * &rb), &g);
            if minus != tab.scale(&(-&two * &gab)) {
                fails[1] += 1;
            }
            if &(&ra * &rb) - &(&rb * &ra) != tab.scale(&(&Rational::from_integer(-4) * &gab)) {
                fails[2] += 1;
            }
            let id = Endomorphism::identity(n).scale(&(&aa * &g.inner(&b, &b)));
            if plus != &id + &(&tab * &tab).scale(&two) {
                fails[3] += 1;
            }
            // mixed identities with t(b, c)
            let tbc = t_map(&b, &c, &g);
            let (plus, minus) = adjoint_parts(&(&ra * &tbc), &g);
            let want = (&t_map(&ra.apply(&b), &c, &g) + &t_map(&b, &ra.apply(&c), &g)).scale(&half);
            if minus != want {
                fails[4] += 1;
            }
            let (gac, gab2) = (g.inner(&a, &c), gab.clone());
            let rhs = &(&(&reflection(&b, &g).scale(&(&gac * &gac))
                - &reflection(&c, &g).scale(&(&gab2 * &gab2)))
                - &reflection(&t_map(&a, &b, &g).apply(&c), &g))
                + &reflection(&t_map(&a, &c, &g).apply(&b), &g);
            if plus.scale(&g.inner(&b, &c)) != rhs.scale(&half) {
                fails[5] += 1;
            }
            // closure of t
            let tcd = t_map(&c, &d, &g);
            let lhs = tab.commutator(&tcd);
            let rhs = &t_map(&tab.apply(&c), &d, &g) + &t_map(&c, &tab.apply(&d), &g);
            if lhs != rhs {
                fails[6] += 1;
            }
            if t_map(&b, &a, &g) != -&tab || g_adjoint(&tab, &g) != -&tab {
                fails[7] += 1;
            }
        }
        let names = [
            ("conformal isometry", "g(S(k,a)v, S(k,a)w) = g(a,a)^2 g(v,w) exactly for k = 1, -1"),
            ("commutator", "a-(R(a)R(b)) = -2 g(a,b) t(a,b)"),
            ("commutator (full)", "R(a)R(b) - R(b)R(a) = -4 g(a,b) t(a,b)"),
            ("anticommutator", "a+(R(a)R(b)) = g(a,a) g(b,b) id + 2 t(a,b) t(a,b)"),
            ("mixed a-", "a-(R(a) t(b,c)) = 1/2 (t(R(a)b, c) + t(b, R(a)c))"),
            (
                "mixed a+",
                "g(b,c) a+(R(a) t(b,c)) = 1/2 (g(a,c)^2 R(b) - g(a,b)^2 R(c) - R(t(a,b)c) + R(t(a,c)b))",
            ),
            ("t closure", "[t(a,b), t(c,d)] = t(t(a,b)c, d) + t(c, t(a,b)d)"),
            ("t symmetry", "t(b,a) = -t(a,b) and t(a,b) is anti-self-adjoint"),
        ];
        for ((name, identity), f) in names.iter().zip(fails) {
            rec.count(&format!("{name} {sig}"), identity, f, cfg.cases);
        }
    }
    Ok(())
}

fn weak(rec: &mut Recorder, cfg: &VerifyConfig) -> Result<(), Error> {
    let g = delta();
    let d = cfg.degree.unwrap_or(6);
    let ctx = QuotientContext::build(&g, RelationFamily::weak(&g), d, cfg.headroom);
    let audit = ctx.audit();
    rec.push(
        "stabilization audit",
        "dims unchanged with headroom H + 2",
        format!("{:?} vs {:?}", audit.dims, audit.audit_dims),
        audit.stable,
    );
    vector_action(rec, &ctx)?;
    let (mut failed, mut total) = (0, 0);
    for (a, b) in [(1u8, 2u8), (1, 3), (2, 3)] {
        let bv = basis_wedge(3, &[a, b]);
        for x in 1..=3u8 {
            for y in 1..=3u8 {
                for z in 0..=3u8 {
                    let letters: Vec<u8> = [x, y, z].into_iter().filter(|&l| l > 0).collect();
                    let lhs = bivector_action(&bv, &Element::word(3, &letters), &ctx)?;
                    let mut rhs = Element::zero(3);
                    for i in 0..letters.len() {
                        let single = bivector_action(&bv, &Element::basis(3, letters[i]), &ctx)?;
                        let pre = Element::word(3, &letters[..i]);
                        let post = Element::word(3, &letters[i + 1..]);
                        rhs = &rhs + &(&(&pre * &single) * &post);
                    }
                    total += 1;
                    if lhs != ctx.reduce(&rhs)? {
                        failed += 1;
                    }
                }
            }
        }
    }
    rec.count(
        "derivation",
        "l(B)(x y) = l(B)(x) y + x l(B)(y) on basis tensors",
        failed,
        total,
    );
    let (failed, total) = lie_product_failures(&ctx, &Rational::one())?;
    rec.count(
        "bivector Lie product",
        "[a^b, c^d] = g(a,c) b^d - g(b,c) a^d - g(a,d) b^c + g(b,d) a^c",
        failed,
        total,
    );
    let (mut failed, mut total) = (0, 0);
    let pairs = [(1u8, 2u8), (1, 3), (2, 3)];
    for &(a, b) in &pairs {
        for &(c, dd) in &pairs {
            let (b1, b2) = (basis_wedge(3, &[a, b]), basis_wedge(3, &[c, dd]));
            let bracket = bivector_action(&b1, &b2, &ctx)?;
            for v in 1..=3u8 {
                let x = Element::basis(3, v);
                let l1 = bivector_action(&b1, &bivector_action(&b2, &x, &ctx)?, &ctx)?;
                let l2 = bivector_action(&b2, &bivector_action(&b1, &x, &ctx)?, &ctx)?;
                total += 1;
                if &l1 - &l2 != bivector_action(&bracket, &x, &ctx)? {
                    failed += 1;
                }
            }
        }
    }
    rec.count(
        "action of the bracket",
        "l(B1) l(B2) - l(B2) l(B1) = l(l(B1)(B2))",
        failed,
        total,
    );
    let tr = BivectorTransform::weak();
    rec.count("bracket", "[J_p, J_q] = sum_r eps_pqr J_r", bracket_failures(&ctx, &tr)?, 9);
    for top in 2..=(d / 2).min(3) {
        let monomials: Vec<Element> = pbw_monomials(top as u32)
            .into_iter()
            .map(|m| ctx.reduce(&tr.pbw_to_bivectors(&PbwElement::monomial(m, Rational::one()))))
            .collect::<Result<_, _>>()?;
        let count = monomials.len();
        rec.equal(
            &format!("PBW independence, J-degree <= {top}"),
            "ordered J monomials stay linearly independent",
            rank(&monomials),
            count,
        );
    }
    Ok(())
}

fn pbw_monomials(max: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 0..=max {
        for j in 0..=max - i {
            for k in 0..=max - i - j {
                out.push(Monomial([i, j, k]));
            }
        }
    }
    out
}

/// `ℓ(e_a ∧ e_b)(e_c) = t(a,b)(e_c)` on basis triples.
fn vector_action(rec: &mut Recorder, ctx: &QuotientContext) -> Result<(), Error> {
    let g = ctx.space().clone();
    let (mut failed, mut total) = (0, 0);
    for a in 1..=3u8 {
        for b in 1..=3u8 {
            let t = t_map(&g.basis_vector(a as usize), &g.basis_vector(b as usize), &g);
            for c in 1..=3u8 {
                let got = bivector_action(&basis_wedge(3, &[a, b]), &Element::basis(3, c), ctx)?;
                total += 1;
                if got != vector_element(&t.apply(&g.basis_vector(c as usize))) {
                    failed += 1;
                }
            }
        }
    }
    rec.count(
        "bivector action on vectors",
        "(a^b) c - c (a^b) = g(a,c) b - g(b,c) a",
        failed,
        total,
    );
    Ok(())
}

/// The Casimir fixed to `-s(s+1)`, as a relation in vector words.
fn casimir_relation(s: HalfInteger) -> RelationFamily {
    let mut c = BivectorTransform::weak().casimir();
    c.add_term(Word::empty(), -s.casimir_value());
    RelationFamily::new("casimir", 3, vec![c])
}

/// Bivector anticommutators against `g_Λ` at spin `s`, or against
/// `(1/3) g_CB C` with `C` left symbolic when `s` is `None`.
fn anticommutator_failures(ctx: &QuotientContext, s: Option<HalfInteger>) -> Result<usize, Error> {
    let g = delta();
    let half = Element::scalar(3, q(1, 2));
    let cas = BivectorTransform::weak().casimir();
    let mut failed = 0;
    let pairs = [(1u8, 2u8), (1, 3), (2, 3)];
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            let (b1, b2) = (basis_wedge(3, &[a, b]), basis_wedge(3, &[c, d]));
            let anti = &half * &(&(&b1 * &b2) + &(&b2 * &b1));
            let lam = lambda_metric(&b1, &b2, &g)?;
            let want = match s {
                Some(s) => Element::scalar(3, substitute_casimir(&lam, s)),
                None => cas.scale(&lam.coeff(1)),
            };
            if !ctx.is_zero(&(&anti - &want))? {
                failed += 1;
            }
        }
    }
    Ok(failed)
}

fn spin(rec: &mut Recorder, cfg: &VerifyConfig, s: HalfInteger, default_degree: usize) -> Result<(), Error> {
    let g = delta();
    let d = cfg.degree.unwrap_or(default_degree);
    let tr = BivectorTransform::weak();
    let ctx = QuotientContext::build(&g, RelationFamily::spin_weak(s)?, d, cfg.headroom);
    let audit = ctx.audit();
    rec.push(
        "stabilization audit",
        "dims unchanged with headroom H + 2",
        format!("{:?} vs {:?}", audit.dims, audit.audit_dims),
        audit.stable,
    );
    rec.equal(
        "casimir",
        "C reduces to -s(s+1)",
        ctx.reduce(&tr.casimir())?,
        Element::scalar(3, s.casimir_value()),
    );
    if s == HalfInteger::from_twice(1) {
        rec.count(
            "bivector anticommutators",
            "1/2 {B1, B2} = g_L(B1, B2) at s = 1/2",
            anticommutator_failures(&ctx, Some(s))?,
            9,
        );
    }
    vector_action(rec, &ctx)?;

    // diagnostics: what the multipole ideal does give
    let tops = (d / 2).min(2 * s.twice() as usize + 1);
    let span = rank(&generator_words(&ctx, &tr, tops)?);
    let oracle = spin_block_rank(s, tops);
    rec.equal(
        "diagnostic: bivector subalgebra",
        "dimension equals the joint rank over spin reps j <= s",
        span,
        oracle,
    );
    if s == HalfInteger::from_twice(1) {
        let mut failed = 0;
        for a in 1..=3u8 {
            let v = Element::basis(3, a);
            let cv = &tr.casimir() * &v;
            if ctx.reduce(&cv)? != v.scale(&s.casimir_value()) {
                failed += 1;
            }
        }
        rec.count("diagnostic: casimir on vectors", "C v = -s(s+1) v", failed, 3);
        rec.count(
            "diagnostic: symbolic anticommutators",
            "1/2 {B1, B2} = (1/3) g_CB(B1, B2) C",
            anticommutator_failures(&ctx, None)?,
            9,
        );
    }
    let fixed = QuotientContext::build(
        &g,
        RelationFamily::spin_weak(s)?.extended(&casimir_relation(s)),
        d,
        cfg.headroom,
    );
    rec.equal(
        "diagnostic: with C = -s(s+1) adjoined, bivector subalgebra",
        "dimension (2s+1)^2",
        rank(&generator_words(&fixed, &tr, tops)?),
        s.multiplicity().pow(2),
    );
    if s == HalfInteger::from_twice(1) {
        rec.count(
            "diagnostic: with C = -s(s+1) adjoined, bivector anticommutators",
            "1/2 {B1, B2} = g_L(B1, B2) at s = 1/2",
            anticommutator_failures(&fixed, Some(s))?,
            9,
        );
    }
    Ok(())
}

/// Numeric rank of generator words of length at most `len` evaluated jointly in
/// every spin representation `j <= s`.
fn spin_block_rank(s: HalfInteger, len: usize) -> usize {
    let reps: Vec<_> = (0..=s.twice()).map(|t| spin_matrices(HalfInteger::from_twice(t))).collect();
    let mut images = Vec::new();
    let mut layer: Vec<Vec<CMatrix>> = vec![reps.iter().map(|r| r.identity()).collect()];
    images.extend(layer.iter().cloned());
    for _ in 0..len {
        let mut next = Vec::new();
        for x in &layer {
            for p in 0..3 {
                next.push(x.iter().zip(&reps).map(|(m, r)| m * &r.matrices[p]).collect());
            }
        }
        images.extend(next.iter().cloned());
        layer = next;
    }
    rep::joint_rank(&images)
}

fn metric(rec: &mut Recorder) -> Result<(), Error> {
    let g = delta();
    let blades = basis_blades();
    let spins: Vec<HalfInteger> = (0..=4).map(HalfInteger::from_twice).collect();
    let mut failed = 0;
    let mut total = 0;
    for (i, (_, x)) in blades.iter().enumerate() {
        for (j, (_, y)) in blades.iter().enumerate() {
            let p = lambda_metric(x, y, &g)?;
            let order = x.degree().unwrap_or(0);
            for &s in &spins {
                let ss = -s.casimir_value();
                let want = match (i == j, order) {
                    (false, _) => Rational::zero(),
                    (true, 0) | (true, 1) => Rational::one(),
                    (true, 2) => -&ss / &Rational::from_integer(3),
                    _ => &ss / &Rational::from_integer(3),
                };
                total += 1;
                if substitute_casimir(&p, s) != want {
                    failed += 1;
                }
            }
        }
    }
    rec.count(
        "g_L table",
        "bivectors -s(s+1)/3 g_CB, trivectors +s(s+1)/3 g_CB, other orders 0",
        failed,
        total,
    );
    let b12 = basis_wedge(3, &[1, 2]);
    let t123 = basis_wedge(3, &[1, 2, 3]);
    let at = |x: &Element, s: u32| -> Result<Rational, Error> {
        Ok(substitute_casimir(&lambda_metric(x, x, &g)?, HalfInteger::from_twice(s)))
    };
    rec.equal("spin 1/2 bivector norm", "g_L(e1^e2, e1^e2) = -1/4", at(&b12, 1)?, q(-1, 4));
    rec.equal("spin 1 bivector norm", "g_L(e1^e2, e1^e2) = -2/3", at(&b12, 2)?, q(-2, 3));
    rec.equal("spin 1 trivector norm", "g_L(e1^e2^e3, e1^e2^e3) = 2/3", at(&t123, 2)?, q(2, 3));
    rec.equal("spin 0 bivector norm", "g_L(e1^e2, e1^e2) = 0", at(&b12, 0)?, Rational::zero());
    rec.equal("spin 0 trivector norm", "g_L(e1^e2^e3, e1^e2^e3) = 0", at(&t123, 0)?, Rational::zero());

    let j = PbwElement::generator;
    let mut failed = 0;
    for p in 1..=3u8 {
        for r in 1..=3u8 {
            let want = if p == r { Poly::monomial(q(1, 3), 1) } else { Poly::zero() };
            if monopole_part(&j(p).mul(&j(r)), 2)? != want {
                failed += 1;
            }
        }
    }
    rec.count("Mon second order", "Mon(J_p J_q) = (1/3) delta_pq C", failed, 9);
    let mut failed = 0;
    for w in uea::index_words(3) {
        let x = j(w[0]).mul(&j(w[1])).mul(&j(w[2]));
        if monopole_part(&x, 3)? != Poly::monomial(q(epsilon(w[0], w[1], w[2]), 6), 1) {
            failed += 1;
        }
    }
    rec.count("Mon third order", "Mon(J_p J_q J_r) = (1/6) eps_pqr C", failed, 27);

    let tr = BivectorTransform::weak();
    let pairs = [(1u8, 2u8), (1, 3), (2, 3)];
    let mut failed = 0;
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            let prod = uea::pbw_normal_form(&(&tr.wedge_to_j(a, b) * &tr.wedge_to_j(c, d)));
            let lam = lambda_metric(&basis_wedge(3, &[a, b]), &basis_wedge(3, &[c, d]), &g)?;
            if monopole_part(&prod, 2)? != lam {
                failed += 1;
            }
        }
    }
    rec.count("g_L from Mon", "g_L(B1, B2) = Mon(B1 B2) on basis bivectors", failed, 9);

    let (mut sym, mut inv, mut total) = (0, 0, 0);
    for (_, x) in &blades {
        for (_, y) in &blades {
            total += 1;
            if lambda_metric(x, y, &g)? != lambda_metric(y, x, &g)? {
                sym += 1;
            }
        }
    }
    let mut inv_total = 0;
    for &(a, b) in &pairs {
        let t = t_map(&g.basis_vector(a as usize), &g.basis_vector(b as usize), &g);
        for (_, x) in &blades {
            for (_, y) in &blades {
                let lx = derivation_action(&t, x);
                let ly = derivation_action(&t, y);
                inv_total += 1;
                if !(&lambda_metric(&lx, y, &g)? + &lambda_metric(x, &ly, &g)?).is_zero() {
                    inv += 1;
                }
            }
        }
    }
    rec.count("g_L symmetric", "g_L(x, y) = g_L(y, x)", sym, total);
    rec.count(
        "g_L invariant",
        "g_L(l(B)x, y) + g_L(x, l(B)y) = 0",
        inv,
        inv_total,
    );
    Ok(())
}

fn spin_zero(rec: &mut Recorder) -> Result<(), Error> {
    let ctx = QuotientContext::build(&delta(), RelationFamily::sym(3), 3, 2);
    rec.equal(
        "dims",
        "cumulative dims of the symmetric algebra",
        format!("{:?}", ctx.dims()),
        "[1, 4, 10, 20]".to_string(),
    );
    let words: Vec<Vec<u8>> = (0..=3).flat_map(|k| uea::index_words_over(3, k)).collect();
    let (mut failed, mut total) = (0, 0);
    for x in &words {
        for y in &words {
            if x.len() + y.len() > 3 {
                continue;
            }
            let (ex, ey) = (Element::word(3, x), Element::word(3, y));
            total += 1;
            if !ctx.is_zero(&ex.commutator(&ey)?)? {
                failed += 1;
            }
        }
    }
    rec.count("commutative", "x y = y x for words of total degree <= 3", failed, total);
    let g = delta();
    let zero = HalfInteger::from_twice(0);
    let b = substitute_casimir(&lambda_metric(&basis_wedge(3, &[1, 2]), &basis_wedge(3, &[1, 2]), &g)?, zero);
    let t = basis_wedge(3, &[1, 2, 3]);
    let tt = substitute_casimir(&lambda_metric(&t, &t, &g)?, zero);
    rec.push(
        "g_L at spin 0",
        "bivector and trivector norms vanish",
        format!("{b}, {tt}"),
        b.is_zero() && tt.is_zero(),
    );
    rec.push(
        "spin:0 routing",
        "the multipole construction rejects s = 0",
        format!("{:?}", RelationFamily::spin_weak(zero).err()),
        matches!(RelationFamily::spin_weak(zero), Err(Error::SpinZero)),
    );
    Ok(())
}

fn representations(rec: &mut Recorder) -> Result<(), Error> {
    for t in 0..=6u32 {
        let s = HalfInteger::from_twice(t);
        let report = rep::verify_spin_ideal(s);
        for c in &report.checks {
            rec.push(
                &format!("s = {s}: {}", c.name),
                if c.name.contains("survives") {
                    "max entry norm above tolerance"
                } else {
                    "max entry residual below tolerance"
                },
                format!("{:.3e} (tolerance {:.0e})", c.max_residual, c.tolerance),
                c.pass,
            );
        }
        rec.equal(
            &format!("s = {s}: multipole span rank"),
            "rank of mu_0 .. mu_2s images is (2s+1)^2",
            rep::multipole_span_rank(s),
            s.multiplicity().pow(2),
        );
        let rm = spin_matrices(s);
        let mut worst: f64 = 0.0;
        for k in 0..=t as usize + 1 {
            let tol = rep::multipole_tolerance(s, k);
            for w in uea::index_words(k) {
                let m = rep::numeric_multipole(&w, &rm);
                let mut sorted = w.clone();
                sorted.sort();
                let eig = max_norm(&rep::ad_casimir_matrix(&m, &rm, (k * (k + 1)) as f64));
                let sym = max_norm(&(&m - rep::numeric_multipole(&sorted, &rm)));
                worst = worst.max(eig.max(sym) / tol);
            }
        }
        rec.below(
            &format!("s = {s}: numeric multipole properties"),
            "eigen-relation and symmetry of matrix multipoles, relative to the order-scaled tolerance",
            worst,
            1.0,
        );
        let mut worst: f64 = 0.0;
        let dim = rm.dim() as f64;
        for m in pbw_monomials(3) {
            let a = PbwElement::monomial(m.clone(), Rational::one());
            let mon = monopole_part(&a, m.degree())?;
            let diff = evaluate_pbw(&a, &rm) - rep::evaluate_casimir_poly(&mon, &rm);
            worst = worst.max(diff.trace().norm() / dim);
        }
        rec.below(
            &format!("s = {s}: monopole traces"),
            "A - Mon(A) is traceless for PBW monomials of degree <= 3",
            worst,
            rep::VANISH_TOL,
        );
    }
    Ok(())
}

fn random_element(rng: &mut ChaCha8Rng, max_degree: usize) -> Element {
    let mut x = Element::zero(3);
    for _ in 0..rng.gen_range(1..=4) {
        let len = rng.gen_range(0..=max_degree);
        let word: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=3)).collect();
        x.add_term(Word::new(&word), q(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
    }
    x
}

fn cross_oracle(rec: &mut Recorder, cfg: &VerifyConfig) -> Result<(), Error> {
    let g = delta();
    for t in [1u32, 2] {
        let s = HalfInteger::from_twice(t);
        let rm = spin_matrices(s);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(t as u64));
        let ctx = QuotientContext::build(&g, RelationFamily::spin_weak(s)?, 4, cfg.headroom);
        let images = [rep::weak_vector_images(&rm, 1.0), rep::weak_vector_images(&rm, -1.0)];
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let x = random_element(&mut rng, 4);
            let r = ctx.reduce(&x)?;
            for letters in &images {
                worst = worst.max(max_norm(&(evaluate_with(&x, letters) - evaluate_with(&r, letters))));
            }
        }
        rec.below(
            &format!("s = {s}: weak context vs matrices"),
            "reduce then evaluate under e_a -> +-sqrt(2) J_a equals evaluate",
            worst,
            rep::VANISH_TOL,
        );
        let ctx = QuotientContext::build(&g, RelationFamily::uea_spin(s), 4, cfg.headroom);
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let x = random_element(&mut rng, 4);
            let r = ctx.reduce(&x)?;
            let diff = rep::evaluate_words(&x, &rm) - rep::evaluate_words(&r, &rm);
            worst = worst.max(max_norm(&diff));
        }
        rec.below(
            &format!("s = {s}: enveloping quotient vs matrices"),
            "reduce in U(so(3)) / <mu_2s+1> then evaluate equals evaluate",
            worst,
            rep::VANISH_TOL,
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_suites_pass() {
        let cfg = VerifyConfig {
            kmax: 2,
            cases: 20,
            ..VerifyConfig::default()
        };
        for suite in [Suite::Multipoles, Suite::Reflections, Suite::SpinZero, Suite::Metric] {
            for o in run(suite, &cfg) {
                assert!(o.pass, "{o}");
            }
        }
    }

    #[test]
    fn spin_half_reports_the_casimir_mismatch() {
        let out = run(Suite::SpinHalf, &VerifyConfig::default());
        let find = |name: &str| out.iter().find(|o| o.name == name).unwrap();
        assert!(!find("casimir").pass);
        assert!(find("bivector action on vectors").pass);
        assert!(find("diagnostic: casimir on vectors").pass);
        assert!(find("diagnostic: bivector subalgebra").pass);
        assert_eq!(find("diagnostic: bivector subalgebra").value, "5");
    }
}
