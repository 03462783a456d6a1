//! Exact checks of the polynomial identities that place the `r = 3` pair of
//! `z^p` inside `(a, b)`, the `L` polynomial and double-sum forms of `V`, and
//! numerical sweeps of where the conjugate pairs land for higher orders.
//!
//! All polynomials in `b` here come from `a = 1`; general `(a, b)` reduces to
//! `(1, b/a)` by homogeneity.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::function::{falling_exact, FunctionSpec};
use crate::means::{self, exact_bracket_root, g_cubic_exact, strictly_inside, taylor_expand, MeanError, Tolerances};
use crate::poly::{fourier_budan_bound, int, rat_pow, PolyError, Polynomial, RatPoly};
use crate::roots::{all_roots_complex, RootError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("exponent p = {0} is excluded (p in {{0, 1, 2, 3}})")]
    ExcludedExponent(i64),
    #[error("{0}")]
    InvalidInput(String),
    #[error("constructions disagree: {0}")]
    Mismatch(String),
    #[error("sign violation: {0}")]
    SignViolation(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Mean(#[from] MeanError),
    #[error(transparent)]
    Root(#[from] RootError),
}

fn check_exponent(p: i64) -> Result<(), LabError> {
    if (0..=3).contains(&p) {
        return Err(LabError::ExcludedExponent(p));
    }
    Ok(())
}

fn binom(n: i64, k: i64) -> BigRational {
    if k < 0 || k > n {
        return BigRational::zero();
    }
    falling_exact(n, k as usize) / falling_exact(k, k as usize)
}

fn factorial(n: i64) -> BigRational {
    falling_exact(n, n as usize)
}

/// `b^shift · poly(b)`, normalized so `poly` has a nonzero constant term.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    shift: i64,
    poly: RatPoly,
}

impl LaurentPoly {
    pub fn new(shift: i64, poly: RatPoly) -> Self {
        let low = poly.coeffs().iter().take_while(|c| c.is_zero()).count();
        if poly.is_zero() {
            return Self { shift: 0, poly };
        }
        let coeffs = poly.coeffs()[low..].to_vec();
        Self {
            shift: shift + low as i64,
            poly: Polynomial::new(coeffs),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let Some(&low) = map.keys().next() else {
            return Self::new(0, RatPoly::zero());
        };
        let high = *map.keys().next_back().expect("nonempty");
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in map {
            coeffs[(e - low) as usize] = c;
        }
        Self::new(low, Polynomial::new(coeffs))
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        let shift = self.shift;
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (shift + k as i64, c))
    }

    pub fn eval(&self, b: &BigRational) -> BigRational {
        self.poly.eval(b) * rat_pow(b, self.shift)
    }

    /// `b^degree · self(1/b)`
    pub fn reflect(&self, degree: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (degree - e, c.clone())))
    }

    /// The ordinary polynomial, if no negative powers remain.
    pub fn to_polynomial(&self) -> Option<RatPoly> {
        (self.shift >= 0).then(|| self.poly.shift_up(self.shift as usize))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.shift, self.poly.scale(s))
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms()
                .map(|(e, c)| (e, c.clone()))
                .chain(rhs.terms().map(|(e, c)| (e, -c.clone()))),
        )
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::new(self.shift + rhs.shift, &self.poly * &rhs.poly)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.poly)
        } else {
            write!(f, "b^{} * ({})", self.shift, self.poly)
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The four `r = 3` moments of `z^p` over `[1, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerCase {
    pub p: i64,
    pub b: BigRational,
    pub moments: [BigRational; 4],
}

pub fn abcd_power(p: i64, b: &BigRational) -> Result<PowerCase, LabError> {
    check_exponent(p)?;
    if *b <= BigRational::one() {
        return Err(LabError::InvalidInput(format!("need b > 1, got {b}")));
    }
    let moments = abcd_laurent(p).map(|m| m.eval(b));
    Ok(PowerCase {
        p,
        b: b.clone(),
        moments,
    })
}

/// The moments as Laurent polynomials in `b`.
fn abcd_laurent(p: i64) -> [LaurentPoly; 4] {
    let term = |coef: i64, e: i64| LaurentPoly::from_terms([(e, int(coef)), (0, int(-coef))]);
    [
        term(p * (p - 1) * (p - 2), p - 3),
        term(p * (p - 1) * (p - 3), p - 2),
        term(p * (p - 2) * (p - 3), p - 1),
        term((p - 1) * (p - 2) * (p - 3), p),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct VWPair {
    pub p: i64,
    pub v: LaurentPoly,
    pub w: LaurentPoly,
}

/// `V` as displayed, expanded in powers of `b`.
pub fn v_expanded(p: i64) -> LaurentPoly {
    let t = |c: i64, e: i64| (e, int(c));
    LaurentPoly::from_terms([
        t(12 * (p + 1), 0),
        t(-2 * (p - 2) * (p - 3) * (4 * p * p - 12 * p - 1), 2 * p - 3),
        t(6 * p * (p - 3) * (4 * p * p - 16 * p + 13), 2 * p - 4),
        t(-24 * p * (p - 1) * (p - 2) * (p - 3), 2 * p - 5),
        t(8 * p * (p - 1) * (p - 2) * (p - 2), 2 * p - 6),
        t(-(p - 1) * (p - 2) * (p - 2) * (p - 3), p),
        t(3 * p * (p - 2) * (p - 3) * (p - 5), p - 1),
        t(-3 * p * (p - 3) * (p * p - 9 * p + 2), p - 2),
        t((p - 2) * (p + 1) * (p * p - 13 * p + 6), p - 3),
    ])
}

/// `W` as displayed, expanded in powers of `b`.
pub fn w_expanded(p: i64) -> LaurentPoly {
    let t = |c: i64, e: i64| (e, int(c));
    LaurentPoly::from_terms([
        t(12 * (p + 1), 2 * p - 3),
        t((p - 2) * (p + 1) * (p * p - 13 * p + 6), p),
        t(-3 * p * (p - 3) * (p * p - 9 * p + 2), p - 1),
        t(3 * p * (p - 2) * (p - 3) * (p - 5), p - 2),
        t(-(p - 1) * (p - 2) * (p - 2) * (p - 3), p - 3),
        t(8 * p * (p - 1) * (p - 2) * (p - 2), 3),
        t(-24 * p * (p - 1) * (p - 2) * (p - 3), 2),
        t(6 * p * (p - 3) * (4 * p * p - 16 * p + 13), 1),
        t(-2 * (p - 2) * (p - 3) * (4 * p * p - 12 * p - 1), 0),
    ])
}

/// `V(1/b)` for `p = -n` as displayed, an ordinary polynomial of degree `2n + 6`.
pub fn k_expanded(n: i64) -> RatPoly {
    let t = |c: i64, e: i64| (e, int(c));
    LaurentPoly::from_terms([
        t(-12 * (n - 1), 0),
        t(8 * n * (n + 1) * (n + 2) * (n + 2), 2 * n + 6),
        t(-24 * n * (n + 1) * (n + 2) * (n + 3), 2 * n + 5),
        t(6 * n * (n + 3) * (4 * n * n + 16 * n + 13), 2 * n + 4),
        t(-2 * (n + 2) * (n + 3) * (4 * n * n + 12 * n - 1), 2 * n + 3),
        t((n + 2) * (n - 1) * (n * n + 13 * n + 6), n + 3),
        t(-3 * (n + 3) * n * (n * n + 9 * n + 2), n + 2),
        t(3 * n * (n + 2) * (n + 3) * (n + 5), n + 1),
        t(-(n + 1) * (n + 2) * (n + 2) * (n + 3), n),
    ])
    .to_polynomial()
    .expect("nonnegative exponents")
}

/// `g` at `x = 1` and `x = b` with the moments substituted symbolically,
/// divided by `p(p - 1)`.
fn vw_direct(p: i64) -> (LaurentPoly, LaurentPoly) {
    let [a, b_, c, d] = abcd_laurent(p);
    let k = |n: i64| LaurentPoly::from_terms([(0, int(n))]);
    let x = LaurentPoly::from_terms([(1, int(1))]);
    let cubic = &(&k(8) * &a) * &a;
    let quadratic = &(&k(-24) * &a) * &b_;
    let linear = &k(6) * &(&(&a * &c) + &(&k(3) * &(&b_ * &b_)));
    let constant = &(&a * &d) - &(&k(9) * &(&b_ * &c));
    let at_one = &(&(&cubic + &quadratic) + &linear) + &constant;
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    let at_b = &(&(&(&cubic * &x3) + &(&quadratic * &x2)) + &(&linear * &x)) + &constant;
    let norm = BigRational::one() / int(p * (p - 1));
    (at_one.scale(&norm), at_b.scale(&norm))
}

/// `V` and `W`, from the displayed expansions and from direct substitution;
/// the two must agree term by term.
pub fn vw_build(p: i64) -> Result<VWPair, LabError> {
    check_exponent(p)?;
    let (v, w) = vw_direct(p);
    let (v_disp, w_disp) = (v_expanded(p), w_expanded(p));
    if v != v_disp {
        return Err(LabError::Mismatch(format!(
            "V for p = {p}: direct {v} vs expanded {v_disp}"
        )));
    }
    if w != w_disp {
        return Err(LabError::Mismatch(format!(
            "W for p = {p}: direct {w} vs expanded {w_disp}"
        )));
    }
    Ok(VWPair { p, v, w })
}

/// `W(b) = b^(2p - 3) V(1/b)` as a formal identity.
pub fn reflection_check(pair: &VWPair, p: i64) -> bool {
    pair.v.reflect(2 * p - 3) == pair.w
}

fn b_minus_one() -> RatPoly {
    RatPoly::from_integers([-1, 1])
}

fn strictly_signed(coeffs: &[BigRational], negative: bool) -> bool {
    !coeffs.is_empty()
        && coeffs
            .iter()
            .all(|c| if negative { c.is_negative() } else { c.is_positive() })
}

/// `V / (b - 1)^5` for `p = n`, with every coefficient strictly negative.
pub fn q_factor(n: i64) -> Result<RatPoly, LabError> {
    if n < 4 {
        return Err(LabError::InvalidInput(format!("q_factor needs n >= 4, got {n}")));
    }
    let v = vw_build(n)?.v.to_polynomial().expect("V is a polynomial for n >= 4");
    let q = v.divide_out_root_power(&int(1), 5)?;
    if !strictly_signed(q.coeffs(), true) {
        return Err(LabError::SignViolation(format!(
            "Q for n = {n} has a nonnegative coefficient: {q}"
        )));
    }
    Ok(q)
}

/// `V(1/b)` for `p = -n`, built by reflection and checked against the display.
pub fn k_poly(n: i64) -> Result<RatPoly, LabError> {
    if n < 1 {
        return Err(LabError::InvalidInput(format!("need n >= 1, got {n}")));
    }
    let reflected = vw_build(-n)?.v.reflect(0);
    let k = reflected
        .to_polynomial()
        .ok_or_else(|| LabError::Mismatch(format!("V(1/b) for n = {n} has negative powers")))?;
    let displayed = k_expanded(n);
    if k != displayed {
        return Err(LabError::Mismatch(format!(
            "K for n = {n}: {k} vs displayed {displayed}"
        )));
    }
    Ok(k)
}

/// `K / (b - 1)^5` for `p = -n`. After removing any power of `b`, every
/// coefficient must be strictly positive.
pub fn s_factor(n: i64) -> Result<RatPoly, LabError> {
    let s = k_poly(n)?.divide_out_root_power(&int(1), 5)?;
    let low = s.coeffs().iter().take_while(|c| c.is_zero()).count();
    if !strictly_signed(&s.coeffs()[low..], false) {
        return Err(LabError::SignViolation(format!(
            "S for n = {n} has a nonpositive coefficient: {s}"
        )));
    }
    Ok(s)
}

fn derivative_at_zero(p: &RatPoly, i: i64) -> BigRational {
    p.coeff(i as usize) * factorial(i)
}

/// Derivatives of `V` at 0 for `p = n >= 9` against the tabulated values.
pub fn dv_table_check(n: i64) -> bool {
    if n < 9 {
        return false;
    }
    let Ok(pair) = vw_build(n) else { return false };
    let v = pair.v.to_polynomial().expect("polynomial for n >= 4");
    let d = |i: i64| derivative_at_zero(&v, i);
    let fac = factorial;
    let mut ok = d(0) == int(12 * n + 12);
    ok &= (1..=n - 4).all(|i| d(i).is_zero());
    ok &= d(n - 3) == fac(n - 2) * int((n + 1) * (n * n - 13 * n + 6));
    ok &= d(n - 2) == fac(n - 2) * int(-3 * (n - 3) * n * (n * n - 9 * n + 2));
    ok &= d(n - 1) == fac(n) * int(3 * (n - 2) * (n - 3) * (n - 5));
    ok &= d(n) == fac(n) * int(-(n - 1) * (n - 2) * (n - 2) * (n - 3));
    ok &= (n + 1..=2 * n - 7).all(|i| d(i).is_zero());
    ok
}

/// Derivatives of `K` at 0 for `n >= 2` against the tabulated values.
pub fn dk_table_check(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let Ok(k) = k_poly(n) else { return false };
    let d = |i: i64| derivative_at_zero(&k, i);
    let f3 = factorial(n + 3);
    let mut ok = d(0) == int(-12 * (n - 1));
    ok &= (1..n).all(|i| d(i).is_zero());
    ok &= d(n) == &f3 * int(-(n + 2));
    ok &= d(n + 1) == &f3 * int(3 * n * (n + 5));
    ok &= d(n + 2) == &f3 * int(-3 * n * (n * n + 9 * n + 2));
    ok &= d(n + 3) == &f3 * int((n + 2) * (n - 1) * (n * n + 13 * n + 6));
    ok &= (n + 4..=2 * n + 2).all(|i| d(i).is_zero());
    ok
}

/// Both tables where their ranges apply (`V` needs `n >= 9`, `K` needs `n >= 2`).
pub fn derivative_table_check(n: i64) -> bool {
    (n < 9 || dv_table_check(n)) && (n < 2 || dk_table_check(n))
}

/// `8k³ + 60k² + 130k + 75`
pub fn cubic_weight(k: i64) -> i64 {
    8 * k * k * k + 60 * k * k + 130 * k + 75
}

/// Direct alternating sum against its closed form.
pub fn lemma5_sum(n: i64, j: i64) -> Result<(BigRational, BigRational), LabError> {
    if n < 4 || j < 0 || j > n - 4 {
        return Err(LabError::InvalidInput(format!(
            "need n >= 4 and 0 <= j <= n - 4, got n = {n}, j = {j}"
        )));
    }
    let lhs = (j..=n - 4).fold(BigRational::zero(), |acc, k| {
        let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
        acc + int(cubic_weight(k) * sign) * binom(n, k + 4) * binom(k, j)
    });
    let rhs = int(-(n + j + 1) * (n * n - (10 * j + 13) * n + j * j + 5 * j + 6)) / int(2);
    Ok((lhs, rhs))
}

/// `Σ_k C_k binom(n, k+4) x^k`
pub fn lemma6_poly(n: i64) -> RatPoly {
    Polynomial::new((0..=n - 4).map(|k| int(cubic_weight(k)) * binom(n, k + 4)).collect())
}

/// Fourier–Budan bound on `(-1, 0)` for the lemma polynomial; also checks
/// its value at `-1` against the closed form.
pub fn lemma6_root_count(n: i64) -> Result<usize, LabError> {
    if n < 13 {
        return Err(LabError::InvalidInput(format!("lemma6 needs n >= 13, got {n}")));
    }
    let poly = lemma6_poly(n);
    let at_minus_one = poly.eval(&int(-1));
    let expected = int(-(n + 1) * (n * n - 13 * n + 6)) / int(2);
    if at_minus_one != expected {
        return Err(LabError::Mismatch(format!(
            "N(-1) for n = {n}: {at_minus_one} vs {expected}"
        )));
    }
    Ok(fourier_budan_bound(&poly, &int(-1), &int(0))?)
}

/// `-2 Σ_k C_k binom(n, k+4) (b - 1)^(k+4)`
pub fn l_poly(n: i64) -> RatPoly {
    let shifted = b_minus_one();
    (0..=n - 4).fold(RatPoly::zero(), |acc, k| {
        let term = shifted
            .pow((k + 4) as u32)
            .scale(&(int(-2 * cubic_weight(k)) * binom(n, k + 4)));
        &acc + &term
    })
}

/// `V' = (n-2)(n-3) b^(n-4) L` exactly, plus the closed form of `L^(k)(1)`
/// for `k = 4..=n+2`.
pub fn l_poly_check(n: i64) -> bool {
    if n < 4 {
        return false;
    }
    let Ok(pair) = vw_build(n) else { return false };
    let v = pair.v.to_polynomial().expect("polynomial for n >= 4");
    let l = l_poly(n);
    let rhs = l.shift_up((n - 4) as usize).scale(&int((n - 2) * (n - 3)));
    if v.differentiate(1) != rhs {
        return false;
    }
    (4..=n + 2).all(|k| {
        let direct = l.differentiate(k as usize).eval(&int(1));
        let closed = int(-2 * (8 * k * k * k - 36 * k * k + 34 * k + 3)) * falling_exact(n, k as usize);
        direct == closed
    })
}

/// The double-sum form of `V`, expanded exactly.
pub fn v1_double_sum(n: i64) -> RatPoly {
    let mut by_power: BTreeMap<i64, BigRational> = BTreeMap::new();
    for k in 0..=n - 4 {
        for j in 0..=n - 4 {
            let m = j + k + 5;
            let c = int(cubic_weight(k)) * binom(n, k + 4) * binom(n - 4, j) / int(m);
            *by_power.entry(m).or_insert_with(BigRational::zero) += c;
        }
    }
    let shifted = b_minus_one();
    let sum = by_power
        .into_iter()
        .fold(RatPoly::zero(), |acc, (m, c)| &acc + &shifted.pow(m as u32).scale(&c));
    sum.scale(&int(-2 * (n - 2) * (n - 3)))
}

pub fn v1_double_sum_check(n: i64) -> bool {
    if n < 4 {
        return false;
    }
    let Ok(pair) = vw_build(n) else { return false };
    let v = pair.v.to_polynomial().expect("polynomial for n >= 4");
    let sum = v1_double_sum(n);
    sum == v && sum.degree() == Some((2 * n - 3) as usize)
}

/// One exact instance of the `r = 3` theorem for `z^p` on `(1, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Instance {
    pub p: i64,
    pub b: BigRational,
    pub g_at_1: BigRational,
    pub g_at_b: BigRational,
    /// Real root of `g`, bracketed with exact sign decisions.
    pub x1: f64,
    /// Pair real part from the direct root solve of `P_b - P_1`.
    pub pair_re: f64,
}

pub fn theorem1_verify(p: i64, b: &BigRational) -> Result<Theorem1Instance, LabError> {
    let case = abcd_power(p, b)?;
    let pair = vw_build(p)?;
    let g = g_cubic_exact(p, &int(1), b)?;
    let g_at_1 = g.eval(&int(1));
    let g_at_b = g.eval(b);
    let pp1 = int(p * (p - 1));
    if g_at_1 != &pp1 * pair.v.eval(b) || g_at_b != &pp1 * pair.w.eval(b) {
        return Err(LabError::Mismatch(format!(
            "g(1), g(b) against p(p-1)V, p(p-1)W for p = {p}, b = {b}"
        )));
    }
    let [m0, m1, m2, _] = &case.moments;
    if !(m1 * m1 - m0 * m2).is_negative() {
        return Err(LabError::SignViolation(format!("B^2 - AC >= 0 for p = {p}, b = {b}")));
    }
    if !(g_at_1.is_negative() && g_at_b.is_positive()) {
        return Err(LabError::SignViolation(format!(
            "g(1) = {g_at_1}, g(b) = {g_at_b} for p = {p}, b = {b}"
        )));
    }
    let bf = b.to_f64().unwrap_or(f64::NAN);
    let x1 = exact_bracket_root(&g, 1.0, bf)?;
    if !(x1 > 1.0 && x1 < bf) {
        return Err(LabError::SignViolation(format!("x1 = {x1} outside (1, {b})")));
    }
    let solved = means::mean(&FunctionSpec::Power(p as f64), 3, 1.0, bf, &Tolerances::default())?;
    let pair_re = solved
        .pairs
        .first()
        .map(|c| c.x)
        .ok_or_else(|| LabError::Mismatch("no conjugate pair".into()))?;
    Ok(Theorem1Instance {
        p,
        b: b.clone(),
        g_at_1,
        g_at_b,
        x1,
        pair_re,
    })
}

/// `ab(a + b) / (a² + b²)`, the exact pair real part for `1/z` at `r = 3`.
pub fn reciprocal_pair_real_part(a: &BigRational, b: &BigRational) -> BigRational {
    a * b * (a + b) / (a * a + b * b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormCheck {
    pub expected: Vec<f64>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCase {
    pub spec: String,
    pub r: usize,
    pub a: f64,
    pub b: f64,
    pub x0: Option<f64>,
    pub pairs: Vec<[f64; 2]>,
    pub inside: Vec<bool>,
    pub cj1: bool,
    pub cj2: bool,
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormCheck>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub cases: usize,
    pub errors: usize,
    pub cj1_holds: usize,
    pub cj2_holds: usize,
    pub closed_form_mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub cases: Vec<SweepCase>,
    pub summary: SweepSummary,
}

/// Known pair real parts of `1/z`, ascending.
pub fn reciprocal_closed_forms(r: usize, a: f64, b: f64) -> Option<Vec<f64>> {
    let s5 = 5f64.sqrt();
    let mut v = match r {
        3 => vec![a * b * (a + b) / (a * a + b * b)],
        4 => vec![
            0.5 * (5.0 + s5) * a * b * (a + b) / (2.0 * b * b + (1.0 + s5) * a * b + 2.0 * a * a),
            0.5 * (5.0 - s5) * a * b * (a + b) / (2.0 * b * b - (s5 - 1.0) * a * b + 2.0 * a * a),
        ],
        5 => vec![
            (a + b) * a * b / (2.0 * (a * a - a * b + b * b)),
            3.0 * (a + b) * a * b / (2.0 * (a * a + a * b + b * b)),
        ],
        _ => return None,
    };
    v.sort_by(f64::total_cmp);
    Some(v)
}

fn sweep_case(spec: &FunctionSpec, r: usize, a: f64, b: f64, tol: &Tolerances) -> SweepCase {
    let mut case = SweepCase {
        spec: spec.to_string(),
        r,
        a,
        b,
        x0: None,
        pairs: vec![],
        inside: vec![],
        cj1: false,
        cj2: false,
        residual: None,
        error: None,
        closed_form: None,
    };
    match means::mean(spec, r, a, b, tol) {
        Ok(m) => {
            case.cj1 = m.cj1();
            case.cj2 = m.cj2();
            case.x0 = m.x0;
            case.pairs = m.pairs.iter().map(|c| [c.x, c.y]).collect();
            case.inside = m.inside;
            case.residual = Some(m.residual);
            if *spec == FunctionSpec::Power(-1.0) {
                case.closed_form = reciprocal_closed_forms(r, a, b).map(|expected| {
                    let mut got: Vec<f64> = case.pairs.iter().map(|p| p[0]).collect();
                    got.sort_by(f64::total_cmp);
                    let matches = got.len() == expected.len()
                        && got
                            .iter()
                            .zip(&expected)
                            .all(|(x, e)| (x - e).abs() <= 1e-9 * e.abs().max(1.0));
                    ClosedFormCheck { expected, matches }
                });
            }
        }
        Err(e) => case.error = Some(e.to_string()),
    }
    case
}

/// Every `(spec, r, b)` combination on `(a, b)`, in input order. Cases run in
/// parallel on the current rayon pool; the result does not depend on it.
pub fn conjecture_sweep(
    specs: &[FunctionSpec],
    r_values: &[usize],
    a: f64,
    b_grid: &[f64],
    tol: &Tolerances,
) -> SweepReport {
    let keys: Vec<(&FunctionSpec, usize, f64)> = specs
        .iter()
        .flat_map(|s| {
            r_values
                .iter()
                .flat_map(move |&r| b_grid.iter().map(move |&b| (s, r, b)))
        })
        .collect();
    let cases: Vec<SweepCase> = keys.par_iter().map(|&(s, r, b)| sweep_case(s, r, a, b, tol)).collect();
    let summary = SweepSummary {
        cases: cases.len(),
        errors: cases.iter().filter(|c| c.error.is_some()).count(),
        cj1_holds: cases.iter().filter(|c| c.cj1).count(),
        cj2_holds: cases.iter().filter(|c| c.cj2).count(),
        closed_form_mismatches: cases
            .iter()
            .filter(|c| c.closed_form.as_ref().is_some_and(|f| !f.matches))
            .count(),
    };
    SweepReport { cases, summary }
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per pair; cases without pairs get a single row with empty
    /// pair fields.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record([
            "spec", "r", "a", "b", "x0", "pair", "x", "y", "inside", "cj1", "cj2", "residual", "error",
        ])
        .expect("in-memory write");
        let num = |x: f64| x.to_string();
        let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
        for c in &self.cases {
            let rows: Vec<Option<usize>> = if c.pairs.is_empty() {
                vec![None]
            } else {
                (0..c.pairs.len()).map(Some).collect()
            };
            for k in rows {
                let (x, y, inside) = match k {
                    Some(k) => (num(c.pairs[k][0]), num(c.pairs[k][1]), c.inside[k].to_string()),
                    None => (String::new(), String::new(), String::new()),
                };
                w.write_record([
                    c.spec.clone(),
                    c.r.to_string(),
                    num(c.a),
                    num(c.b),
                    opt(c.x0),
                    k.map(|k| k.to_string()).unwrap_or_default(),
                    x,
                    y,
                    inside,
                    c.cj1.to_string(),
                    c.cj2.to_string(),
                    opt(c.residual),
                    c.error.clone().unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

type ExactComplex = Complex<BigRational>;

#[derive(Debug, Clone, PartialEq)]
pub struct NonrealDemo {
    pub a: Complex64,
    pub b: Complex64,
    /// Roots of `P_a - P_b`, ascending by real part.
    pub roots: Vec<Complex64>,
    /// `P_a - P_b = (8 - 8i)(-z + 2 + 2i)(-z + 3 + 3i)(-z + 4 + 4i)` exactly.
    pub factorization_holds: bool,
    pub node_mean: Complex64,
}

/// `z^4` at `r = 3` with nonreal nodes `2 + 4i` and `4 + 2i`.
pub fn nonreal_nodes_demo() -> Result<NonrealDemo, LabError> {
    let c = |re: i64, im: i64| ExactComplex::new(int(re), int(im));
    let (a, b) = (c(2, 4), c(4, 2));
    let taylor = |node: &ExactComplex| {
        let d = [
            node * node * node * node,
            c(4, 0) * node * node * node,
            c(12, 0) * node * node,
            c(24, 0) * node,
        ];
        taylor_expand(&d, node)
    };
    let diff = &taylor(&a) - &taylor(&b);
    let factored = Polynomial::from_roots(c(8, -8), [c(2, 2), c(3, 3), c(4, 4)]);
    // (-z + w) = -(z - w), three times.
    let factorization_holds = diff == factored.scale(&c(-1, 0));
    let to_f = |z: &ExactComplex| Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN));
    let coeffs: Vec<Complex64> = diff.coeffs().iter().map(to_f).collect();
    let mut roots = all_roots_complex(&coeffs)?;
    roots.sort_by(|x, y| x.re.total_cmp(&y.re));
    let mean = (&a + &b) / c(2, 0);
    Ok(NonrealDemo {
        a: to_f(&a),
        b: to_f(&b),
        roots,
        factorization_holds,
        node_mean: to_f(&mean),
    })
}

/// Exact rational as `"num/den"`, or an integer string.
pub fn rational_string(q: &BigRational) -> String {
    q.to_string()
}

/// Real pair parts strictly inside `(a, b)` for a solved case, by the
/// identity tolerance.
pub fn inside_flags(pairs: &[[f64; 2]], a: f64, b: f64, tol: &Tolerances) -> Vec<bool> {
    pairs
        .iter()
        .map(|p| strictly_inside(p[0], a, b, tol.identity))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn ip(c: &[i64]) -> RatPoly {
        RatPoly::from_integers(c.iter().copied())
    }

    fn times_b_minus_one_5(q: &RatPoly) -> RatPoly {
        q * &b_minus_one().pow(5)
    }

    #[test]
    fn abcd_examples() {
        let m = |p, b| abcd_power(p, &b).unwrap().moments;
        assert_eq!(m(5, int(2)), [int(180), int(280), int(450), int(744)]);
        assert_eq!(m(4, int(2)), [int(24), int(36), int(56), int(90)]);
        assert_eq!(m(-1, int(2)), [rat(45, 8), int(7), int(9), int(12)]);
        assert_eq!(abcd_power(2, &int(2)), Err(LabError::ExcludedExponent(2)));
        // Agrees with the general moment route.
        let general = crate::function::moment_integrals_exact(-3, 3, &int(1), &rat(7, 3)).unwrap();
        assert_eq!(m(-3, rat(7, 3)).to_vec(), general.moments);
    }

    #[test]
    fn vw_examples() {
        assert_eq!(
            vw_build(4).unwrap().v.to_polynomial().unwrap(),
            times_b_minus_one_5(&ip(&[-60]))
        );
        let v5 = times_b_minus_one_5(&ip(&[-72, -360, -468]));
        assert_eq!(vw_build(5).unwrap().v.to_polynomial().unwrap(), v5);
        let k1 = vw_build(-1).unwrap().v.reflect(0).to_polynomial().unwrap();
        assert_eq!(k1, times_b_minus_one_5(&ip(&[0, 72, 144, 144])));
        assert!(matches!(vw_build(3), Err(LabError::ExcludedExponent(3))));
    }

    #[test]
    fn reflection_examples() {
        for p in [4, -1, 7, -12, 20] {
            assert!(reflection_check(&vw_build(p).unwrap(), p), "p = {p}");
        }
        let mut pair = vw_build(7).unwrap();
        pair.w = pair.w.scale(&int(2));
        assert!(!reflection_check(&pair, 7));
    }

    #[test]
    fn q_factor_examples() {
        assert_eq!(q_factor(4).unwrap(), ip(&[-60]));
        assert_eq!(q_factor(6).unwrap(), ip(&[7, 35, 105, 161, 142]).scale(&int(-12)));
        assert_eq!(
            q_factor(7).unwrap(),
            ip(&[4, 20, 60, 140, 220, 246, 185]).scale(&int(-24))
        );
        assert_eq!(
            q_factor(8).unwrap(),
            ip(&[3, 15, 45, 105, 210, 327, 395, 385, 265]).scale(&int(-36))
        );
        assert!(q_factor(13).unwrap().coeffs().iter().all(|c| c.is_negative()));
        assert!(q_factor(3).is_err());
    }

    #[test]
    fn s_factor_examples() {
        assert_eq!(s_factor(1).unwrap(), ip(&[0, 72, 144, 144]));
        for n in [2, 10] {
            assert!(s_factor(n).unwrap().coeffs().iter().all(|c| c.is_positive()));
        }
    }

    #[test]
    fn derivative_table_examples() {
        let v = vw_build(9).unwrap().v.to_polynomial().unwrap();
        assert_eq!(derivative_at_zero(&v, 0), int(120));
        assert_eq!(derivative_at_zero(&v, 9), factorial(9) * int(-8 * 49 * 6));
        assert_eq!(derivative_at_zero(&k_poly(2).unwrap(), 2), int(-480));
        assert!(dv_table_check(9) && dk_table_check(2));
        assert!((2..=20).all(derivative_table_check));
    }

    #[test]
    fn alternating_sum_examples() {
        assert_eq!(lemma5_sum(9, 0).unwrap(), (int(150), int(150)));
        assert_eq!(lemma5_sum(13, 1).unwrap(), (int(885), int(885)));
        assert_eq!(lemma5_sum(4, 0).unwrap(), (int(75), int(75)));
        assert!(lemma5_sum(6, 3).is_err());
    }

    #[test]
    fn root_count_examples() {
        assert_eq!(lemma6_poly(13).eval(&int(-1)), int(-42));
        for n in [13, 23, 40] {
            assert_eq!(lemma6_root_count(n).unwrap(), 1, "n = {n}");
        }
    }

    #[test]
    fn l_poly_examples() {
        assert_eq!(l_poly(4), b_minus_one().pow(4).scale(&int(-150)));
        assert_eq!(
            vw_build(4).unwrap().v.to_polynomial().unwrap().differentiate(1),
            b_minus_one().pow(4).scale(&int(-300))
        );
        assert!(l_poly_check(4) && l_poly_check(5) && l_poly_check(13));
    }

    #[test]
    fn v1_examples() {
        assert_eq!(v1_double_sum(4), b_minus_one().pow(5).scale(&int(-60)));
        assert!(v1_double_sum_check(5));
        assert!(v1_double_sum_check(13));
        assert_eq!(v1_double_sum(13).degree(), Some(23));
    }

    #[test]
    fn power_instances_on_unit_left_end() {
        let t = theorem1_verify(5, &int(2)).unwrap();
        assert!(t.g_at_1.is_negative() && t.g_at_b.is_positive());
        assert!(t.x1 > 1.0 && t.x1 < 2.0 && (t.x1 - t.pair_re).abs() < 1e-9);
        let t = theorem1_verify(-1, &int(2)).unwrap();
        assert_eq!(reciprocal_pair_real_part(&int(1), &int(2)), rat(6, 5));
        assert!(g_cubic_exact(-1, &int(1), &int(2)).unwrap().eval(&rat(6, 5)).is_zero());
        assert!((t.x1 - 1.2).abs() < 1e-14);
        let t = theorem1_verify(4, &int(3)).unwrap();
        assert!((t.x1 - 2.0).abs() < 1e-14);
    }

    #[test]
    fn sweep_examples() {
        let tol = Tolerances::default();
        let report = conjecture_sweep(&[FunctionSpec::Power(-1.0)], &[4, 5], 1.0, &[2.0, 4.0], &tol);
        assert_eq!(report.summary.cases, 4);
        assert_eq!(report.summary.closed_form_mismatches, 0);
        let r5 = report.cases.iter().find(|c| c.r == 5 && c.b == 2.0).unwrap();
        assert!(r5.cj1 && !r5.cj2);
        let r4 = report.cases.iter().find(|c| c.r == 4 && c.b == 4.0).unwrap();
        assert!(r4.cj1 && !r4.cj2);
        let report = conjecture_sweep(&[FunctionSpec::Power(2.0)], &[3], 1.0, &[2.0], &tol);
        assert_eq!(report.summary.errors, 1);
        let back: SweepReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn nonreal_demo() {
        let d = nonreal_nodes_demo().unwrap();
        assert!(d.factorization_holds);
        for (z, k) in d.roots.iter().zip([2.0, 3.0, 4.0]) {
            assert!((z - Complex64::new(k, k)).norm() < 1e-9);
        }
        assert_eq!(d.node_mean, Complex64::new(3.0, 3.0));
    }
}
