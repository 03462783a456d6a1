//! Means from the roots of `P_b - P_a`, where `P_c` is the order-`r` Taylor
//! polynomial of `f` at `c`.
//!
//! `P_b - P_a` is built twice: by subtracting the two expansions, and from the
//! moment form `(1/r!) ∫_a^b f^(r+1)(t) (x - t)^r dt`. For `z^p` with integral
//! `p` both routes run in exact rationals and must agree exactly.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::function::{
    center_of_mass_quadrature, kth_derivative_exact, moment_integrals, moment_integrals_exact, FunctionError,
    FunctionSpec, MomentIntegrals,
};
use crate::poly::{FloatPoly, Polynomial, RatPoly};
use crate::quad::{self, QuadConfig};
use crate::roots::{all_roots_with, ConjugatePair, RootConfig, RootError};

/// Largest `|p|` for which integral powers take the exact-rational route.
const EXACT_EXPONENT_LIMIT: i64 = 64;

/// Every numerical tolerance used by the engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Bound on normalized residuals of reported roots.
    pub residual: f64,
    /// Identity checks and the strict-inside margin for real parts.
    pub identity: f64,
    /// Snapping threshold for nearly real roots.
    pub pairing: f64,
    /// Agreement of the two float constructions of `P_b - P_a`.
    pub construction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual: 1e-8,
            identity: 1e-9,
            pairing: 1e-9,
            construction: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeanError {
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("order r = {r} not allowed here: {reason}")]
    InvalidOrder { r: usize, reason: &'static str },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("the two constructions of P_b - P_a disagree (relative deviation {0:e})")]
    ConstructionMismatch(f64),
    #[error("residual {residual:e} exceeds tolerance {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("could not bracket the real root of g")]
    Bracket,
}

impl MeanError {
    /// True when the inputs violate a precondition rather than the numerics failing.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            MeanError::Function(
                FunctionError::Domain(_)
                    | FunctionError::InvalidInterval(..)
                    | FunctionError::ExcludedExponent { .. }
                    | FunctionError::SignChange { .. }
                    | FunctionError::OrderTooLow(_)
                    | FunctionError::Parse(_)
            ) | MeanError::InvalidOrder { .. }
        )
    }
}

fn factorial<T: Num + Clone + FromPrimitive>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * T::from_usize(i).expect("small integer"))
}

fn binomial<T: Num + Clone + FromPrimitive>(n: usize, k: usize) -> T {
    factorial::<T>(n) / (factorial::<T>(k) * factorial::<T>(n - k))
}

/// `Σ d_k / k! (x - c)^k` in the monomial basis.
pub fn taylor_expand<T: Clone + Num + FromPrimitive>(derivs: &[T], c: &T) -> Polynomial<T> {
    let local = Polynomial::new(
        derivs
            .iter()
            .enumerate()
            .map(|(k, d)| d.clone() / factorial::<T>(k))
            .collect(),
    );
    local.taylor_shift(&(T::zero() - c.clone()))
}

pub fn taylor_poly(f: &FunctionSpec, r: usize, c: f64) -> Result<FloatPoly, MeanError> {
    let derivs = (0..=r).map(|k| f.kth_derivative(k, c)).collect::<Result<Vec<_>, _>>()?;
    Ok(taylor_expand(&derivs, &c))
}

/// Exact Taylor polynomial of `z^p` at a rational center.
pub fn taylor_poly_exact(p: i64, r: usize, c: &BigRational) -> RatPoly {
    let derivs: Vec<BigRational> = (0..=r).map(|k| kth_derivative_exact(p, k, c)).collect();
    taylor_expand(&derivs, c)
}

/// `(1/r!) Σ_j (-1)^j C(r, j) m_j x^(r-j)`
pub fn diff_from_moments<T: Clone + Num + FromPrimitive>(moments: &MomentIntegrals<T>) -> Polynomial<T> {
    let r = moments.r;
    let rf = factorial::<T>(r);
    let mut coeffs = vec![T::zero(); r + 1];
    for j in 0..=r {
        let mut term = binomial::<T>(r, j) * moments.moments[j].clone() / rf.clone();
        if j % 2 == 1 {
            term = T::zero() - term;
        }
        coeffs[r - j] = term;
    }
    Polynomial::new(coeffs)
}

fn check_pair(a: f64, b: f64) -> Result<(), MeanError> {
    if !(a > 0.0 && a < b && b.is_finite()) {
        return Err(FunctionError::InvalidInterval(a, b).into());
    }
    Ok(())
}

fn check_order(r: usize) -> Result<(), MeanError> {
    if r == 0 {
        return Err(MeanError::InvalidOrder {
            r,
            reason: "Taylor order must be positive",
        });
    }
    Ok(())
}

fn exact_route(f: &FunctionSpec, a: f64, b: f64) -> Option<(i64, BigRational, BigRational)> {
    let p = f.integer_exponent().filter(|p| p.abs() <= EXACT_EXPONENT_LIMIT)?;
    Some((p, BigRational::from_float(a)?, BigRational::from_float(b)?))
}

/// `P_b - P_a` for `z^p`, both routes in exact arithmetic.
pub fn taylor_diff_exact(p: i64, r: usize, a: &BigRational, b: &BigRational) -> Result<RatPoly, MeanError> {
    check_order(r)?;
    let moments = moment_integrals_exact(p, r, a, b)?;
    let by_coefficients = &taylor_poly_exact(p, r, b) - &taylor_poly_exact(p, r, a);
    let by_moments = diff_from_moments(&moments);
    if by_coefficients != by_moments {
        return Err(MeanError::ConstructionMismatch(f64::INFINITY));
    }
    Ok(by_coefficients)
}

/// The moment-integral route alone.
pub fn taylor_diff_integral_form(f: &FunctionSpec, r: usize, a: f64, b: f64) -> Result<FloatPoly, MeanError> {
    check_order(r)?;
    Ok(diff_from_moments(&moment_integrals(f, r, a, b)?))
}

/// `P_b - P_a`, cross-checked between the subtraction and moment routes.
pub fn taylor_diff(f: &FunctionSpec, r: usize, a: f64, b: f64) -> Result<FloatPoly, MeanError> {
    taylor_diff_with(f, r, a, b, &Tolerances::default())
}

pub fn taylor_diff_with(f: &FunctionSpec, r: usize, a: f64, b: f64, tol: &Tolerances) -> Result<FloatPoly, MeanError> {
    check_order(r)?;
    check_pair(a, b)?;
    if let Some((p, ea, eb)) = exact_route(f, a, b) {
        return Ok(taylor_diff_exact(p, r, &ea, &eb)?.to_f64());
    }
    let pa = taylor_poly(f, r, a)?;
    let pb = taylor_poly(f, r, b)?;
    let by_coefficients = &pb - &pa;
    let by_moments = taylor_diff_integral_form(f, r, a, b)?;
    // Deviation relative to the size of the subtracted expansions.
    let scale = pa
        .coeffs()
        .iter()
        .chain(pb.coeffs())
        .chain(by_coefficients.coeffs())
        .fold(0.0f64, |m, c| m.max(c.abs()));
    let deviation = (0..=r)
        .map(|k| (by_coefficients.coeff(k) - by_moments.coeff(k)).abs())
        .fold(0.0f64, f64::max)
        / scale.max(f64::MIN_POSITIVE);
    if !(deviation <= tol.construction) {
        return Err(MeanError::ConstructionMismatch(deviation));
    }
    Ok(by_coefficients)
}

fn remainder_integral(f: &FunctionSpec, r: usize, a: f64, b: f64, z: Complex64) -> Result<(Complex64, f64), MeanError> {
    let order = r + 1;
    let density = |t: f64| f.density(order, t).unwrap_or(f64::NAN);
    let cfg = QuadConfig::default();
    let (x, y) = (z.re, z.im);
    let (re, im) = if r == 3 {
        // Re/Im of (z - t)^3 expanded in x - t and y.
        let re = quad::integrate(|t| density(t) * ((x - t).powi(3) - 3.0 * (x - t) * y * y), a, b, &cfg)
            .map_err(FunctionError::from)?;
        let im = quad::integrate(|t| density(t) * (3.0 * (x - t).powi(2) * y - y.powi(3)), a, b, &cfg)
            .map_err(FunctionError::from)?;
        (re, im)
    } else {
        let re =
            quad::integrate(|t| density(t) * (z - t).powi(r as i32).re, a, b, &cfg).map_err(FunctionError::from)?;
        let im =
            quad::integrate(|t| density(t) * (z - t).powi(r as i32).im, a, b, &cfg).map_err(FunctionError::from)?;
        (re, im)
    };
    let scale = quad::integrate(|t| density(t).abs() * (z - t).norm().powi(r as i32), a, b, &cfg)
        .map_err(FunctionError::from)?;
    Ok((Complex64::new(re.value, im.value), scale.value))
}

/// `|∫_a^b f^(r+1)(t) (z - t)^r dt|` by quadrature.
pub fn remainder_residual(f: &FunctionSpec, r: usize, a: f64, b: f64, z: Complex64) -> Result<f64, MeanError> {
    check_pair(a, b)?;
    Ok(remainder_integral(f, r, a, b, z)?.0.norm())
}

/// The remainder integral normalized by `∫ |f^(r+1)(t)| |z - t|^r dt`.
pub fn relative_remainder_residual(f: &FunctionSpec, r: usize, a: f64, b: f64, z: Complex64) -> Result<f64, MeanError> {
    check_pair(a, b)?;
    let (value, scale) = remainder_integral(f, r, a, b, z)?;
    Ok(if scale == 0.0 { 0.0 } else { value.norm() / scale })
}

/// Strictly inside `(a, b)` by more than the identity tolerance.
pub fn strictly_inside(x: f64, a: f64, b: f64, tol: f64) -> bool {
    let margin = tol * a.abs().max(b.abs()).max(1.0);
    x - a > margin && b - x > margin
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanResult {
    pub spec: String,
    pub r: usize,
    pub a: f64,
    pub b: f64,
    /// The unique real root; present exactly when `r` is odd.
    pub x0: Option<f64>,
    pub pairs: Vec<ConjugatePair>,
    pub inside: Vec<bool>,
    /// Largest normalized remainder residual over all roots.
    pub residual: f64,
}

impl MeanResult {
    pub fn cj1(&self) -> bool {
        self.inside.iter().any(|&i| i)
    }

    pub fn cj2(&self) -> bool {
        !self.inside.is_empty() && self.inside.iter().all(|&i| i)
    }

    /// `(x0 + Σ 2 x_k) / r`
    pub fn average_real_part(&self) -> f64 {
        let sum: f64 = self.x0.unwrap_or(0.0) + self.pairs.iter().map(|p| 2.0 * p.x).sum::<f64>();
        sum / self.r as f64
    }
}

/// Roots of `P_b - P_a` with the real-root structure checked and every root
/// confirmed against the remainder integral.
pub fn mean(f: &FunctionSpec, r: usize, a: f64, b: f64, tol: &Tolerances) -> Result<MeanResult, MeanError> {
    taylor_diff_with(f, r, a, b, tol)?;
    let (center, local) = centered_diff(f, r, a, b)?;
    let mut roots = all_roots_with(
        &local,
        &RootConfig {
            tol: tol.residual,
            pairing: tol.pairing,
        },
    )?;
    for x in roots.reals.iter_mut() {
        *x += center;
    }
    for pair in roots.pairs.iter_mut() {
        pair.x += center;
    }
    let x0 = if r % 2 == 1 {
        match roots.reals.as_slice() {
            [x] if strictly_inside(*x, a, b, 0.0) => Some(polish_real_root(&local, center, *x, a, b)),
            _ => {
                return Err(MeanError::HypothesisViolated(format!(
                    "odd order needs exactly one real root in (a, b), found {:?}",
                    roots.reals
                )))
            }
        }
    } else {
        if !roots.reals.is_empty() {
            return Err(MeanError::HypothesisViolated(format!(
                "even order must have no real roots, found {:?}",
                roots.reals
            )));
        }
        None
    };
    let mut residual = 0.0f64;
    for z in roots.all() {
        residual = residual.max(relative_remainder_residual(f, r, a, b, z)?);
    }
    if !(residual <= tol.residual) {
        return Err(MeanError::ResidualTooLarge {
            residual,
            tol: tol.residual,
        });
    }
    let inside = roots
        .pairs
        .iter()
        .map(|p| strictly_inside(p.x, a, b, tol.identity))
        .collect();
    Ok(MeanResult {
        spec: f.to_string(),
        r,
        a,
        b,
        x0,
        pairs: roots.pairs,
        inside,
        residual,
    })
}

/// `P_b - P_a` in `u = x - c`, with `c` the midpoint of `(a, b)`. The roots
/// cluster near `c` when `b - a` is small, and rounding coefficients in this
/// basis keeps them well separated.
pub fn centered_diff(f: &FunctionSpec, r: usize, a: f64, b: f64) -> Result<(f64, FloatPoly), MeanError> {
    check_order(r)?;
    check_pair(a, b)?;
    let center = 0.5 * (a + b);
    if let Some((p, ea, eb)) = exact_route(f, a, b) {
        let ec = BigRational::from_float(center).expect("finite");
        return Ok((center, taylor_diff_exact(p, r, &ea, &eb)?.taylor_shift(&ec).to_f64()));
    }
    let order = r + 1;
    let cfg = QuadConfig::default();
    let moments = (0..=r)
        .map(|j| {
            quad::integrate(
                |t| f.density(order, t).unwrap_or(f64::NAN) * (t - center).powi(j as i32),
                a,
                b,
                &cfg,
            )
            .map(|q| q.value)
            .map_err(FunctionError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((center, diff_from_moments(&MomentIntegrals { r, moments })))
}

/// Bisection refinement of the unique real root, which is bracketed by
/// `(a, b)` since `P_b - P_a` is increasing there for odd `r`.
fn polish_real_root(local: &FloatPoly, center: f64, guess: f64, a: f64, b: f64) -> f64 {
    let sign = |x: f64| local.eval(&(x - center)).signum();
    if sign(a) >= 0.0 || sign(b) <= 0.0 {
        return guess;
    }
    bisect_increasing(sign, a, b)
}

/// Root of an increasing sign function on a bracket with `sign(lo) < 0 < sign(hi)`.
fn bisect_increasing<S: Fn(f64) -> f64>(sign: S, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..2100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = sign(mid);
        if s == 0.0 {
            return mid;
        }
        if s < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of an increasing function given only its sign, searching outward
/// from `[a, b]` geometrically when the initial bracket fails.
pub fn solve_increasing<S: Fn(f64) -> f64>(sign: S, a: f64, b: f64) -> Result<f64, MeanError> {
    let width = b - a;
    let (mut lo, mut hi) = (a, b);
    if sign(lo) == 0.0 {
        return Ok(lo);
    }
    if sign(hi) == 0.0 {
        return Ok(hi);
    }
    let mut step = width;
    let mut tries = 0;
    while sign(lo) > 0.0 {
        hi = lo;
        lo -= step;
        step *= 2.0;
        tries += 1;
        if tries > 200 || !lo.is_finite() {
            return Err(MeanError::Bracket);
        }
    }
    step = width;
    while sign(hi) < 0.0 {
        lo = hi;
        hi += step;
        step *= 2.0;
        tries += 1;
        if tries > 400 || !hi.is_finite() {
            return Err(MeanError::Bracket);
        }
    }
    Ok(bisect_increasing(sign, lo, hi))
}

/// The unique real root of `P_b - P_a` for odd `r`.
pub fn unique_real_mean(f: &FunctionSpec, r: usize, a: f64, b: f64) -> Result<f64, MeanError> {
    if r.is_multiple_of(2) {
        return Err(MeanError::InvalidOrder {
            r,
            reason: "a unique real mean needs odd r",
        });
    }
    let result = mean(f, r, a, b, &Tolerances::default())?;
    Ok(result.x0.expect("odd order carries x0"))
}

/// Average of the root real parts against the center of mass computed by
/// quadrature.
pub fn real_parts_average_check(f: &FunctionSpec, r: usize, a: f64, b: f64) -> Result<(f64, f64), MeanError> {
    let result = mean(f, r, a, b, &Tolerances::default())?;
    let rhs = center_of_mass_quadrature(f, r, a, b)?;
    Ok((result.average_real_part(), rhs))
}

/// `8A²x³ − 24ABx² + 6(AC + 3B²)x + AD − 9BC`
pub fn g_from_moments<T: Clone + Num + FromPrimitive>(a: &T, b: &T, c: &T, d: &T) -> Polynomial<T> {
    let k = |n: i64| T::from_i64(n).expect("small integer");
    let (a, b, c, d) = (a.clone(), b.clone(), c.clone(), d.clone());
    Polynomial::new(vec![
        a.clone() * d - k(9) * b.clone() * c.clone(),
        k(6) * (a.clone() * c + k(3) * b.clone() * b.clone()),
        k(-24) * a.clone() * b,
        k(8) * a.clone() * a,
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct GCubic {
    pub poly: FloatPoly,
    pub moments: MomentIntegrals<f64>,
}

impl GCubic {
    pub fn from_moments(moments: MomentIntegrals<f64>) -> Self {
        let (a, b, c, d) = moments.abcd().expect("r = 3 moments");
        Self {
            poly: g_from_moments(&a, &b, &c, &d),
            moments,
        }
    }
}

fn r3_moments(f: &FunctionSpec, a: f64, b: f64) -> Result<MomentIntegrals<f64>, MeanError> {
    if let Some((p, ea, eb)) = exact_route(f, a, b) {
        return Ok(moment_integrals_exact(p, 3, &ea, &eb)?.to_f64());
    }
    Ok(moment_integrals(f, 3, a, b)?)
}

pub fn g_cubic(f: &FunctionSpec, a: f64, b: f64) -> Result<GCubic, MeanError> {
    check_pair(a, b)?;
    Ok(GCubic::from_moments(r3_moments(f, a, b)?))
}

/// `9 I2 I1 − I3 I0` with `I_k = ∫ f''''(t) (x − t)^k dt`, by quadrature.
pub fn g_integral_form(f: &FunctionSpec, a: f64, b: f64, x: f64) -> Result<f64, MeanError> {
    check_pair(a, b)?;
    let cfg = QuadConfig::default();
    let moment = |k: i32| -> Result<f64, MeanError> {
        let q = quad::integrate(|t| f.density(4, t).unwrap_or(f64::NAN) * (x - t).powi(k), a, b, &cfg)
            .map_err(FunctionError::from)?;
        Ok(q.value)
    };
    let (i0, i1, i2, i3) = (moment(0)?, moment(1)?, moment(2)?, moment(3)?);
    Ok(9.0 * i2 * i1 - i3 * i0)
}

/// The conjugate pair `x1 ± i y1` of `P_b − P_a` for `r = 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R3Pair {
    pub x1: f64,
    pub y1: f64,
    pub residual: f64,
    pub inside: bool,
}

/// Real root of `g` by bracketing, then `y1` from the radical, then a
/// residual check on the remainder integral. Powers are solved on
/// `(1, b/a)` and scaled back by `a`.
pub fn solve_r3_pair(f: &FunctionSpec, a: f64, b: f64) -> Result<R3Pair, MeanError> {
    solve_r3_pair_with(f, a, b, &Tolerances::default())
}

pub fn solve_r3_pair_with(f: &FunctionSpec, a: f64, b: f64, tol: &Tolerances) -> Result<R3Pair, MeanError> {
    check_pair(a, b)?;
    let (scale, lo, hi) = match f {
        FunctionSpec::Power(_) => (a, 1.0, b / a),
        _ => (1.0, a, b),
    };
    let moments = r3_moments(f, lo, hi)?;
    let g = GCubic::from_moments(moments.clone());
    if !(g.poly.leading().is_some_and(|c| *c > 0.0)) {
        return Err(MeanError::HypothesisViolated(
            "g must have positive leading coefficient".into(),
        ));
    }
    let x = solve_increasing(|x| g.poly.eval(&x).signum(), lo, hi)?;
    let (ma, mb, mc, _) = moments.abcd().expect("r = 3 moments");
    let radicand = 3.0 * x * x - 6.0 * mb / ma * x + 3.0 * mc / ma;
    if !(radicand > 0.0) {
        return Err(MeanError::HypothesisViolated(format!(
            "radicand {radicand} for y1 is not positive"
        )));
    }
    let (x1, y1) = (scale * x, scale * radicand.sqrt());
    let residual = relative_remainder_residual(f, 3, a, b, Complex64::new(x1, y1))?;
    if !(residual <= tol.residual) {
        return Err(MeanError::ResidualTooLarge {
            residual,
            tol: tol.residual,
        });
    }
    Ok(R3Pair {
        x1,
        y1,
        residual,
        inside: strictly_inside(x1, a, b, tol.identity),
    })
}

/// Exact `g` for `z^p` on rational `(a, b)`.
pub fn g_cubic_exact(p: i64, a: &BigRational, b: &BigRational) -> Result<RatPoly, MeanError> {
    let m = moment_integrals_exact(p, 3, a, b)?;
    let (ma, mb, mc, md) = m.abcd().expect("r = 3 moments");
    Ok(g_from_moments(&ma, &mb, &mc, &md))
}

/// Real root of an exact increasing cubic inside `(lo, hi)`, with each sign
/// decided in exact arithmetic at the float midpoints.
pub fn exact_bracket_root(g: &RatPoly, lo: f64, hi: f64) -> Result<f64, MeanError> {
    let sign = |x: f64| match BigRational::from_float(x) {
        Some(q) => {
            let v = g.eval(&q);
            if v.is_zero() {
                0.0
            } else if v.is_positive() {
                1.0
            } else {
                -1.0
            }
        }
        None => f64::NAN,
    };
    solve_increasing(sign, lo, hi)
}

/// Stolarsky mean `E_{r,s}(x, y)`. Parameters within `1e-12` of the
/// singular cases take the limit branches.
pub fn stolarsky_mean(r: f64, s: f64, x: f64, y: f64) -> f64 {
    const EPS: f64 = 1e-12;
    if !(x > 0.0 && y > 0.0) {
        return f64::NAN;
    }
    if x == y {
        return x;
    }
    let l = (x / y).ln();
    let (r, s) = if r.abs() < EPS { (s, r) } else { (r, s) };
    if r.abs() < EPS {
        // r = s = 0
        return (x * y).sqrt();
    }
    if (r - s).abs() < EPS {
        // identric-type branch e^{-1/r} (x^{x^r} / y^{y^r})^{1/(x^r - y^r)}
        return y * (-1.0 / r - l / (-r * l).exp_m1()).exp();
    }
    if s.abs() < EPS {
        return y * ((r * l).exp_m1() / (r * l)).powf(1.0 / r);
    }
    y * ((s / r) * (r * l).exp_m1() / (s * l).exp_m1()).powf(1.0 / (r - s))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem2Bounds {
    pub x0: f64,
    pub x1: f64,
    /// `k(b) = 3 E_{s-1,s}(b, 1) − b`
    pub k_value: f64,
    /// `l(b) = 3 E_{s-1,s}(b, 1) − 2b − 1`
    pub l_value: f64,
    /// `p ≥ 7/2` and `k(b) > 2`, certifying `1 < x1`.
    pub lower_ok: bool,
    /// `p < 2` and `l(b) < 0`, certifying `x1 < b`.
    pub upper_ok: bool,
}

/// Real part of the pair for `z^p`, `r = 3`, `a = 1`, from the root-sum
/// identity with `s = p − 2`.
pub fn theorem2_bounds(p: f64, b: f64) -> Result<Theorem2Bounds, MeanError> {
    if [0.0, 1.0, 2.0, 3.0].contains(&p) {
        return Err(FunctionError::ExcludedExponent { p, order: 4 }.into());
    }
    if !(b > 1.0) {
        return Err(FunctionError::InvalidInterval(1.0, b).into());
    }
    let f = FunctionSpec::Power(p);
    let x0 = unique_real_mean(&f, 3, 1.0, b)?;
    let s = p - 2.0;
    let e = stolarsky_mean(s - 1.0, s, b, 1.0);
    let x1 = 0.5 * (3.0 * e - x0);
    let k_value = 3.0 * e - b;
    let l_value = 3.0 * e - 2.0 * b - 1.0;
    Ok(Theorem2Bounds {
        x0,
        x1,
        k_value,
        l_value,
        lower_ok: p >= 3.5 && k_value > 2.0,
        upper_ok: p < 2.0 && l_value < 0.0,
    })
}

/// Convert a float to an exact rational, for callers mixing routes.
pub fn to_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
