//! All-roots solver for low-degree dense polynomials and conjugate-pair
//! classification of the result.
//!
//! Roots come from Aberth–Ehrlich simultaneous iteration. A root is frozen
//! once `|p(z)|` drops to the rounding level of Horner's scheme at `z`, and
//! the reported residual is the normalized backward error
//! `|p(z)| / Σ |c_k| |z|^k`, which is scale-free.

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::FloatPoly;

const MAX_ITERATIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial must have degree >= 1")]
    ConstantPolynomial,
    #[error("coefficients must be finite")]
    NonFinite,
    #[error("root iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("root residual {residual:e} exceeds tolerance {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("root {0} has no conjugate partner")]
    UnpairedRoot(Complex64),
}

/// A conjugate pair `x ± i y` stored with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugatePair {
    pub x: f64,
    pub y: f64,
}

impl ConjugatePair {
    pub fn upper(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    /// Ascending.
    pub reals: Vec<f64>,
    /// Ascending by real part.
    pub pairs: Vec<ConjugatePair>,
    pub residual: f64,
}

impl RootSet {
    pub fn count(&self) -> usize {
        self.reals.len() + 2 * self.pairs.len()
    }

    /// Every root, conjugates included.
    pub fn all(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = self.reals.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        for p in &self.pairs {
            out.push(p.upper());
            out.push(p.upper().conj());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    /// Bound on the normalized residual of each returned root.
    pub tol: f64,
    /// Imaginary parts below `pairing * max(1, |z|)` are snapped to the real axis.
    pub pairing: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            pairing: 1e-9,
        }
    }
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let az = z.norm();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * az + c.norm();
    }
    (p, dp, bound)
}

/// `|p(z)| / Σ |c_k| |z|^k`
pub fn backward_error(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _, bound) = horner_with_derivative(coeffs, z);
    if bound == 0.0 {
        0.0
    } else {
        p.norm() / bound
    }
}

/// All complex roots of a polynomial with complex coefficients (lowest power first).
pub fn all_roots_complex(coeffs: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(RootError::NonFinite);
    }
    if coeffs.len() < 2 {
        return Err(RootError::ConstantPolynomial);
    }
    // Roots at the origin come off exactly.
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let core: Vec<Complex64> = {
        let lead = coeffs[coeffs.len() - 1];
        coeffs[zeros..].iter().map(|c| c / lead).collect()
    };
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let degree = core.len() - 1;
    if degree == 0 {
        return Ok(roots);
    }
    if degree == 1 {
        roots.push(-core[0]);
        return Ok(roots);
    }

    // Initial guesses on a circle whose radius is the geometric mean of the
    // root moduli, rotated off the real axis.
    let radius = core[0].norm().powf(1.0 / degree as f64).max(f64::MIN_POSITIVE);
    let centroid = -core[degree - 1] / degree as f64;
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            centroid + Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut frozen = vec![false; degree];

    for _ in 0..MAX_ITERATIONS {
        let mut all_frozen = true;
        for k in 0..degree {
            if frozen[k] {
                continue;
            }
            let (p, dp, bound) = horner_with_derivative(&core, z[k]);
            if p.norm() <= 4.0 * f64::EPSILON * bound {
                frozen[k] = true;
                continue;
            }
            all_frozen = false;
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
            } else {
                z[k] += Complex64::from_polar(radius * 1e-3, k as f64);
            }
        }
        if all_frozen {
            roots.extend(z);
            return Ok(roots);
        }
    }
    Err(RootError::NoConvergence(MAX_ITERATIONS))
}

/// Split roots of a real-coefficient polynomial into reals and conjugate pairs.
pub fn pair_conjugates(raw: &[Complex64], tol: f64) -> Result<RootSet, RootError> {
    let mut reals = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for &z in raw {
        let scale = z.norm().max(1.0);
        if z.im.abs() <= tol * scale {
            reals.push(z.re);
        } else if z.im > 0.0 {
            upper.push(z);
        } else {
            lower.push(z);
        }
    }
    let mut pairs = Vec::with_capacity(upper.len());
    for u in upper {
        let target = u.conj();
        let best = lower
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - target).norm().total_cmp(&(b.1 - target).norm()));
        match best {
            Some((idx, l)) if (l - target).norm() <= tol * u.norm().max(1.0) => {
                let l = lower.swap_remove(idx);
                pairs.push(ConjugatePair {
                    x: 0.5 * (u.re + l.re),
                    y: 0.5 * (u.im - l.im),
                });
            }
            _ => return Err(RootError::UnpairedRoot(u)),
        }
    }
    if let Some(&l) = lower.first() {
        return Err(RootError::UnpairedRoot(l));
    }
    reals.sort_by(f64::total_cmp);
    pairs.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    Ok(RootSet {
        reals,
        pairs,
        residual: 0.0,
    })
}

/// All roots of a real polynomial, classified. The residual is the largest
/// normalized backward error over the classified roots.
pub fn all_roots_with(p: &FloatPoly, config: &RootConfig) -> Result<RootSet, RootError> {
    let coeffs: Vec<Complex64> = p.coeffs().iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let raw = all_roots_complex(&coeffs)?;
    let mut set = pair_conjugates(&raw, config.pairing)?;
    set.residual = set
        .all()
        .into_iter()
        .map(|z| backward_error(&coeffs, z))
        .fold(0.0, f64::max);
    if set.residual > config.tol {
        return Err(RootError::ResidualTooLarge {
            residual: set.residual,
            tol: config.tol,
        });
    }
    Ok(set)
}

pub fn all_roots(p: &FloatPoly, tol: f64) -> Result<RootSet, RootError> {
    all_roots_with(
        p,
        &RootConfig {
            tol,
            ..RootConfig::default()
        },
    )
}

/// Real roots strictly inside `(a, b)`, ascending.
pub fn real_roots_in(p: &FloatPoly, a: f64, b: f64, tol: f64) -> Result<Vec<f64>, RootError> {
    let set = all_roots(p, tol)?;
    Ok(set.reals.into_iter().filter(|&x| a < x && x < b).collect())
}
