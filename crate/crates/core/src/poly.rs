//! Dense univariate polynomials over exact rationals, floats or complex scalars,
//! plus the classical sign-counting tools (Descartes, Fourier–Budan).
//!
//! Coefficients are stored lowest power first. Trailing zeros are stripped on
//! construction, so the zero polynomial has an empty coefficient vector and
//! [`Polynomial::degree`] returns `None` for it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact-rational polynomial.
pub type RatPoly = Polynomial<BigRational>;
/// Float polynomial.
pub type FloatPoly = Polynomial<f64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("deflation by (x - {root}) left a nonzero remainder {remainder} at stage {stage}")]
    NotDivisible {
        root: String,
        stage: usize,
        remainder: String,
    },
    #[error("polynomial vanishes at interval endpoint {0}")]
    EndpointRoot(String),
    #[error("invalid interval: left endpoint {0} is not below right endpoint {1}")]
    InvalidInterval(String, String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The linear factor `x - root`.
    pub fn linear_root(root: T) -> Self {
        Self::new(vec![T::zero() - root, T::one()])
    }

    /// `c * prod (x - r_i)`
    pub fn from_roots<I: IntoIterator<Item = T>>(c: T, roots: I) -> Self {
        roots
            .into_iter()
            .fold(Self::constant(c), |acc, r| &acc * &Self::linear_root(r))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation in the coefficient domain.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a complex point.
    pub fn eval_complex(&self, z: &Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, c| {
            acc * z.clone() + Complex::new(c.clone(), T::zero())
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(T::one()), |acc, _| &acc * self)
    }

    /// Substitute `x -> x + h`.
    pub fn taylor_shift(&self, h: &T) -> Self {
        let step = Self::new(vec![h.clone(), T::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &step) + &Self::constant(c.clone()))
    }

    /// k-th formal derivative.
    pub fn differentiate(&self, k: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        for _ in 0..k {
            if coeffs.is_empty() {
                break;
            }
            let mut weight = T::zero();
            coeffs = coeffs
                .into_iter()
                .skip(1)
                .map(|c| {
                    weight = weight.clone() + T::one();
                    c * weight.clone()
                })
                .collect();
        }
        Self::new(coeffs)
    }

    pub fn map<U: Clone + Num, F: FnMut(&T) -> U>(&self, f: F) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl RatPoly {
    /// Exact deflation by `(x - root)^m`. Every stage must leave a zero
    /// remainder; the first nonzero remainder is reported.
    pub fn divide_out_root_power(&self, root: &BigRational, m: usize) -> Result<Self, PolyError> {
        let mut current = self.clone();
        for stage in 1..=m {
            let (quotient, remainder) = synthetic_division(&current, root);
            if !remainder.is_zero() {
                return Err(PolyError::NotDivisible {
                    root: root.to_string(),
                    stage,
                    remainder: remainder.to_string(),
                });
            }
            current = quotient;
        }
        Ok(current)
    }

    pub fn to_f64(&self) -> FloatPoly {
        self.map(|c| c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }
}

/// Divide by `x - root`, returning quotient and remainder.
fn synthetic_division<T: Clone + Num>(p: &Polynomial<T>, root: &T) -> (Polynomial<T>, T) {
    let n = p.coeffs.len();
    if n == 0 {
        return (Polynomial::zero(), T::zero());
    }
    let mut quotient = vec![T::zero(); n - 1];
    let mut carry = T::zero();
    for i in (0..n).rev() {
        let value = p.coeffs[i].clone() + carry.clone() * root.clone();
        if i == 0 {
            carry = value;
        } else {
            quotient[i - 1] = value.clone();
            carry = value;
        }
    }
    (Polynomial::new(quotient), carry)
}

impl<T: Clone + Num> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Clone + Num> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Clone + Num> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Clone + Num + Neg<Output = T>> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Clone + Num + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(x: &T) -> Self {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// A sequence of signs and its number of strict alternations (zeros skipped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSequence {
    pub signs: Vec<Sign>,
    pub changes: usize,
}

impl SignSequence {
    pub fn from_values<'a, T: Signed + 'a, I: IntoIterator<Item = &'a T>>(values: I) -> Self {
        let signs: Vec<Sign> = values.into_iter().map(Sign::of).collect();
        let mut changes = 0;
        let mut last = None;
        for &s in signs.iter().filter(|s| **s != Sign::Zero) {
            if last.is_some_and(|l| l != s) {
                changes += 1;
            }
            last = Some(s);
        }
        Self { signs, changes }
    }
}

/// Strict sign changes in the coefficient sequence.
pub fn descartes_sign_changes<T: Clone + Num + Signed>(p: &Polynomial<T>) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(SignSequence::from_values(p.coeffs()).changes)
}

/// Sign sequence of `(p(t), p'(t), ..., p^(deg)(t))`.
pub fn derivative_signs<T: Clone + Num + Signed>(p: &Polynomial<T>, t: &T) -> SignSequence {
    let deg = p.degree().unwrap_or(0);
    let mut values = Vec::with_capacity(deg + 1);
    let mut current = p.clone();
    for _ in 0..=deg {
        values.push(current.eval(t));
        current = current.differentiate(1);
    }
    SignSequence::from_values(&values)
}

/// Fourier–Budan bound `V(a) - V(b)` on the number of roots in `(a, b]`.
pub fn fourier_budan_bound<T>(p: &Polynomial<T>, a: &T, b: &T) -> Result<usize, PolyError>
where
    T: Clone + Num + Signed + PartialOrd + fmt::Display,
{
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if a >= b {
        return Err(PolyError::InvalidInterval(a.to_string(), b.to_string()));
    }
    for t in [a, b] {
        if p.eval(t).is_zero() {
            return Err(PolyError::EndpointRoot(t.to_string()));
        }
    }
    let va = derivative_signs(p, a).changes;
    let vb = derivative_signs(p, b).changes;
    // Budan's theorem guarantees va >= vb.
    Ok(va.saturating_sub(vb))
}

/// Discriminant of the monic cubic `x^3 + a1 x^2 + a2 x + a3`.
pub fn cubic_discriminant<T: Clone + Num + FromPrimitive>(a1: &T, a2: &T, a3: &T) -> T {
    let k = |n: i64| T::from_i64(n).expect("small integer");
    let (a1, a2, a3) = (a1.clone(), a2.clone(), a3.clone());
    k(18) * a1.clone() * a2.clone() * a3.clone() + a1.clone() * a1.clone() * a2.clone() * a2.clone()
        - k(27) * a3.clone() * a3.clone()
        - k(4) * a2.clone() * a2.clone() * a2
        - k(4) * a1.clone() * a1.clone() * a1 * a3
}

/// Small helpers for building exact rationals.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `base^e` for any integer exponent.
pub fn rat_pow(base: &BigRational, e: i64) -> BigRational {
    let mag = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        mag.recip()
    } else {
        mag
    }
}
