//! Function specifications `f` on `(0, inf)` with their derivatives and the
//! moment integrals `m_j = ∫_a^b t^j f^(r+1)(t) dt`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{int, rat_pow};
use crate::quad::{self, QuadConfig, QuadError};

/// Points sampled when checking that `f^(r+1)` keeps one strict sign.
const SIGN_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionError {
    #[error("{0} is outside the domain (0, inf)")]
    Domain(f64),
    #[error("need 0 < a < b, got a = {0}, b = {1}")]
    InvalidInterval(f64, f64),
    #[error("f = z^{p} has identically zero derivative of order {order}")]
    ExcludedExponent { p: f64, order: usize },
    #[error("derivative of order {order} vanishes or changes sign near t = {at}")]
    SignChange { order: usize, at: f64 },
    #[error("order r must be at least {0}")]
    OrderTooLow(usize),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("cannot parse function spec {0:?}; expected power:<p>, exp or log")]
    Parse(String),
}

type DerivativeFn = dyn Fn(usize, f64) -> f64 + Send + Sync;

/// User-supplied derivative oracle `(k, c) -> f^(k)(c)`. Must be
/// deterministic and safe to call from several threads.
#[derive(Clone)]
pub struct CustomOracle {
    name: String,
    derivative: Arc<DerivativeFn>,
}

impl CustomOracle {
    pub fn new<F>(name: impl Into<String>, derivative: F) -> Self
    where
        F: Fn(usize, f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            derivative: Arc::new(derivative),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for CustomOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomOracle({})", self.name)
    }
}

#[derive(Debug, Clone)]
pub enum FunctionSpec {
    /// `z^p`
    Power(f64),
    Exp,
    Log,
    Custom(CustomOracle),
}

/// `p (p-1) ... (p-k+1)`
pub fn falling(p: f64, k: usize) -> f64 {
    (0..k).map(|i| p - i as f64).product()
}

pub fn falling_exact(p: i64, k: usize) -> BigRational {
    (0..k as i64).fold(BigRational::one(), |acc, i| acc * int(p - i))
}

impl FunctionSpec {
    /// The exponent when this is `z^p` with integral `p`.
    pub fn integer_exponent(&self) -> Option<i64> {
        match self {
            FunctionSpec::Power(p) if p.fract() == 0.0 && p.abs() < 1e15 => Some(*p as i64),
            _ => None,
        }
    }

    /// True when `f^(order)` is the zero function (`z^p` with integral `0 <= p < order`).
    pub fn derivative_vanishes(&self, order: usize) -> bool {
        matches!(self.integer_exponent(), Some(p) if p >= 0 && (p as usize) < order)
    }

    pub fn kth_derivative(&self, k: usize, c: f64) -> Result<f64, FunctionError> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(FunctionError::Domain(c));
        }
        Ok(match self {
            FunctionSpec::Power(p) => {
                if self.derivative_vanishes(k) {
                    0.0
                } else {
                    let e = p - k as f64;
                    let pow = if e.fract() == 0.0 && e.abs() < i32::MAX as f64 {
                        c.powi(e as i32)
                    } else {
                        c.powf(e)
                    };
                    falling(*p, k) * pow
                }
            }
            FunctionSpec::Exp => c.exp(),
            FunctionSpec::Log => {
                if k == 0 {
                    c.ln()
                } else {
                    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                    sign * factorial(k - 1) / c.powi(k as i32)
                }
            }
            FunctionSpec::Custom(oracle) => (oracle.derivative)(k, c),
        })
    }

    /// Density `f^(order)(t)` used by the moment integrals.
    pub fn density(&self, order: usize, t: f64) -> Result<f64, FunctionError> {
        self.kth_derivative(order, t)
    }

    fn check_density_sign(&self, order: usize, a: f64, b: f64) -> Result<(), FunctionError> {
        if let FunctionSpec::Power(p) = self {
            if self.derivative_vanishes(order) {
                return Err(FunctionError::ExcludedExponent { p: *p, order });
            }
        }
        let reference = self.density(order, a)?;
        if reference == 0.0 || !reference.is_finite() {
            return Err(FunctionError::SignChange { order, at: a });
        }
        for i in 1..=SIGN_SAMPLES {
            let t = a + (b - a) * i as f64 / SIGN_SAMPLES as f64;
            let v = self.density(order, t)?;
            if v == 0.0 || !v.is_finite() || v.signum() != reference.signum() {
                return Err(FunctionError::SignChange { order, at: t });
            }
        }
        Ok(())
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn check_interval(a: f64, b: f64) -> Result<(), FunctionError> {
    if !(a > 0.0 && a < b && b.is_finite()) {
        return Err(FunctionError::InvalidInterval(a, b));
    }
    Ok(())
}

impl PartialEq for FunctionSpec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FunctionSpec::Power(p), FunctionSpec::Power(q)) => p == q,
            (FunctionSpec::Exp, FunctionSpec::Exp) | (FunctionSpec::Log, FunctionSpec::Log) => true,
            (FunctionSpec::Custom(a), FunctionSpec::Custom(b)) => Arc::ptr_eq(&a.derivative, &b.derivative),
            _ => false,
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Power(p) => write!(f, "power:{p}"),
            FunctionSpec::Exp => write!(f, "exp"),
            FunctionSpec::Log => write!(f, "log"),
            FunctionSpec::Custom(o) => write!(f, "custom:{}", o.name),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = FunctionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "exp" => return Ok(FunctionSpec::Exp),
            "log" => return Ok(FunctionSpec::Log),
            _ => {}
        }
        let p = s
            .strip_prefix("power:")
            .and_then(parse_real)
            .filter(|p| p.is_finite())
            .ok_or_else(|| FunctionError::Parse(s.to_string()))?;
        Ok(FunctionSpec::Power(p))
    }
}

/// Parses a decimal or a `num/den` fraction.
pub fn parse_real(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().ok()?;
            let d: f64 = d.trim().parse().ok()?;
            (d != 0.0).then(|| n / d)
        }
        None => s.trim().parse().ok(),
    }
}

/// Moments `m_j = ∫_a^b t^j f^(r+1)(t) dt` for `j = 0..=r`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentIntegrals<T> {
    pub r: usize,
    pub moments: Vec<T>,
}

impl<T: Clone> MomentIntegrals<T> {
    pub fn m(&self, j: usize) -> &T {
        &self.moments[j]
    }

    /// `(A, B, C, D)`, the first four moments.
    pub fn abcd(&self) -> Option<(T, T, T, T)> {
        match self.moments.as_slice() {
            [a, b, c, d, ..] => Some((a.clone(), b.clone(), c.clone(), d.clone())),
            _ => None,
        }
    }
}

impl MomentIntegrals<f64> {
    /// `B^2 - AC`; strictly negative for a sign-definite density.
    pub fn cauchy_gap(&self) -> Option<f64> {
        match self.moments.as_slice() {
            [a, b, c, ..] => Some(b * b - a * c),
            _ => None,
        }
    }
}

impl MomentIntegrals<BigRational> {
    pub fn cauchy_gap(&self) -> Option<BigRational> {
        match self.moments.as_slice() {
            [a, b, c, ..] => Some(b * b - a * c),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> MomentIntegrals<f64> {
        use num_traits::ToPrimitive;
        MomentIntegrals {
            r: self.r,
            moments: self.moments.iter().map(|m| m.to_f64().unwrap_or(f64::NAN)).collect(),
        }
    }
}

/// `coef * ∫_a^b t^q dt`, stable for `b` close to `a` and for `q` near `-1`.
fn power_integral(coef: f64, q: f64, a: f64, b: f64) -> f64 {
    let e = q + 1.0;
    let log_ratio = (b / a).ln();
    let x = e * log_ratio;
    let scaled = if x.abs() < 1e-300 { log_ratio } else { x.exp_m1() / e };
    coef * a.powf(e) * scaled
}

/// `∫_a^b t^j e^t dt` via the antiderivative `e^t Σ (-1)^(j-i) j!/i! t^i`.
fn exp_moment(j: usize, a: f64, b: f64) -> f64 {
    let anti = |t: f64| {
        let mut sum = 0.0;
        let mut term = 1.0; // j!/i! for i = j
        for i in (0..=j).rev() {
            let sign = if (j - i).is_multiple_of(2) { 1.0 } else { -1.0 };
            sum += sign * term * t.powi(i as i32);
            term *= i as f64;
        }
        t.exp() * sum
    };
    anti(b) - anti(a)
}

pub fn moment_integrals(f: &FunctionSpec, r: usize, a: f64, b: f64) -> Result<MomentIntegrals<f64>, FunctionError> {
    check_interval(a, b)?;
    let order = r + 1;
    f.check_density_sign(order, a, b)?;
    let moments = match f {
        FunctionSpec::Power(p) => {
            let coef = falling(*p, order);
            (0..=r)
                .map(|j| power_integral(coef, p - order as f64 + j as f64, a, b))
                .collect()
        }
        FunctionSpec::Log => {
            // f^(m)(t) = (-1)^(m-1) (m-1)! t^(-m)
            let sign = if order % 2 == 1 { 1.0 } else { -1.0 };
            let coef = sign * factorial(order - 1);
            (0..=r)
                .map(|j| power_integral(coef, j as f64 - order as f64, a, b))
                .collect()
        }
        FunctionSpec::Exp => (0..=r).map(|j| exp_moment(j, a, b)).collect(),
        FunctionSpec::Custom(_) => return moment_integrals_quadrature(f, r, a, b, &QuadConfig::default()),
    };
    Ok(MomentIntegrals { r, moments })
}

/// Moments by adaptive quadrature of the density; the independent route.
pub fn moment_integrals_quadrature(
    f: &FunctionSpec,
    r: usize,
    a: f64,
    b: f64,
    config: &QuadConfig,
) -> Result<MomentIntegrals<f64>, FunctionError> {
    check_interval(a, b)?;
    let order = r + 1;
    f.check_density_sign(order, a, b)?;
    let moments = (0..=r)
        .map(|j| {
            quad::integrate(
                |t| f.density(order, t).unwrap_or(f64::NAN) * t.powi(j as i32),
                a,
                b,
                config,
            )
            .map(|q| q.value)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MomentIntegrals { r, moments })
}

/// Exact moments for `z^p` with integral `p` and rational endpoints.
pub fn moment_integrals_exact(
    p: i64,
    r: usize,
    a: &BigRational,
    b: &BigRational,
) -> Result<MomentIntegrals<BigRational>, FunctionError> {
    use num_traits::ToPrimitive;
    if !(a.is_positive() && a < b) {
        return Err(FunctionError::InvalidInterval(
            a.to_f64().unwrap_or(f64::NAN),
            b.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let order = r + 1;
    let coef = falling_exact(p, order);
    if coef.is_zero() {
        return Err(FunctionError::ExcludedExponent { p: p as f64, order });
    }
    // Antiderivative exponent p - r + j is nonzero whenever coef is.
    let moments = (0..=r as i64)
        .map(|j| {
            let e = p - r as i64 + j;
            &coef * (rat_pow(b, e) - rat_pow(a, e)) / int(e)
        })
        .collect();
    Ok(MomentIntegrals { r, moments })
}

/// Exact `f^(k)(c)` for `z^p` with integral `p`.
pub fn kth_derivative_exact(p: i64, k: usize, c: &BigRational) -> BigRational {
    let coef = falling_exact(p, k);
    if coef.is_zero() {
        return coef;
    }
    coef * rat_pow(c, p - k as i64)
}

/// Center of mass of `[a, b]` under density `|f^(r+1)|`, from the
/// integration-by-parts closed form in `f^(r-1)` and `f^(r)`.
pub fn center_of_mass(f: &FunctionSpec, r: usize, a: f64, b: f64) -> Result<f64, FunctionError> {
    if r == 0 {
        return Err(FunctionError::OrderTooLow(1));
    }
    check_interval(a, b)?;
    f.check_density_sign(r + 1, a, b)?;
    let lower =
        |c: f64| -> Result<f64, FunctionError> { Ok(f.kth_derivative(r - 1, c)? - c * f.kth_derivative(r, c)?) };
    let num = lower(b)? - lower(a)?;
    let den = f.kth_derivative(r, b)? - f.kth_derivative(r, a)?;
    Ok(-num / den)
}

/// Center of mass as a ratio of two quadratures.
pub fn center_of_mass_quadrature(f: &FunctionSpec, r: usize, a: f64, b: f64) -> Result<f64, FunctionError> {
    let m = moment_integrals_quadrature(f, r.max(1), a, b, &QuadConfig::default())?;
    Ok(m.moments[1] / m.moments[0])
}

/// Exact center of mass for `z^p`.
pub fn center_of_mass_exact(p: i64, r: usize, a: &BigRational, b: &BigRational) -> Result<BigRational, FunctionError> {
    let m = moment_integrals_exact(p, r.max(1), a, b)?;
    Ok(&m.moments[1] / &m.moments[0])
}
