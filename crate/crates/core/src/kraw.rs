//! Krawtchouk polynomials K_j(k; p, N) = 2F1(-j, -k; -N; 1/p) and the identities they satisfy.
//!
//! Coefficients are exact 128-bit binomials. For p <= 1/2 the hypergeometric sum is used as is;
//! above that the sum is re-expanded about 1/p = 1, where its alternating terms would otherwise cancel.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{ModelSpec, SpherePoint, MAX_N};
use crate::summation::{compensated, compensated_complex};

/// Exact binomial coefficient; zero outside 0 <= k <= n.
pub fn binomial_exact(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> f64 {
    binomial_exact(n, k) as f64
}

/// Indices and parameter of one polynomial value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrawParams {
    j: usize,
    k: usize,
    n: usize,
    p: f64,
}

impl KrawParams {
    pub fn new(j: usize, k: usize, n: usize, p: f64) -> Result<Self> {
        ModelSpec::new(n)?;
        for idx in [j, k] {
            if idx > n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        Ok(Self { j, k, n, p })
    }

    /// Parameters with p = rho / (1 + rho) taken from the point.
    pub fn at_point(j: usize, k: usize, n: usize, point: SpherePoint) -> Result<Self> {
        point.require_nonzero("p = rho/(1+rho)")?;
        Self::new(j, k, n, p_of(point))
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

pub fn p_of(point: SpherePoint) -> f64 {
    let rho = point.rho();
    rho / (1.0 + rho)
}

pub fn krawtchouk(params: &KrawParams) -> f64 {
    eval(params.j, params.k, params.n, params.p)
}

/// K_j(k) together with the sum of the absolute values of the terms that produced it. Rounding
/// errors in the value are a small multiple of machine epsilon times this magnitude.
pub fn krawtchouk_with_magnitude(params: &KrawParams) -> (f64, f64) {
    eval_with_magnitude(params.j, params.k, params.n, params.p)
}

/// Unchecked evaluation; also used for the order N - 1 polynomials of the forward shift,
/// which may have order zero.
pub(crate) fn eval(j: usize, k: usize, n: usize, p: f64) -> f64 {
    eval_with_magnitude(j, k, n, p).0
}

pub(crate) fn eval_with_magnitude(j: usize, k: usize, n: usize, p: f64) -> (f64, f64) {
    debug_assert!(j <= n && k <= n && n <= MAX_N);
    if j == 0 || k == 0 {
        return (1.0, 1.0);
    }
    let terms: Vec<f64> = if p <= 0.5 {
        let x = -1.0 / p;
        let mut power = 1.0;
        (0..=j.min(k))
            .map(|m| {
                let coeff = (binomial_exact(j, m) * binomial_exact(k, m)) as f64 / binomial(n, m);
                let term = coeff * power;
                power *= x;
                term
            })
            .collect()
    } else {
        let r = (1.0 - p) / p;
        let norm = binomial(n, k);
        let mut power = 1.0;
        (0..=j.min(k))
            .map(|l| {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                let term = sign * (binomial_exact(j, l) * binomial_exact(n - j, k - l)) as f64 / norm * power;
                power *= r;
                term
            })
            .collect()
    };
    let magnitude = terms.iter().map(|t| t.abs()).sum();
    (compensated(terms), magnitude)
}

/// K_j(k) and its magnitude, with the convention that an out-of-range index (k = -1 as `None`)
/// gives zero.
fn eval_or_zero(j: Option<usize>, k: Option<usize>, n: usize, p: f64) -> (f64, f64) {
    match (j, k) {
        (Some(j), Some(k)) if j <= n && k <= n => eval_with_magnitude(j, k, n, p),
        _ => (0.0, 0.0),
    }
}

/// dK_j(k)/d xi_+ = -k / (xi_+ (1 + rho)) (K_j(k) - K_j(k-1)). `params.p` should be the p of `point`.
pub fn krawtchouk_dxi(params: &KrawParams, point: SpherePoint) -> Result<Complex64> {
    point.require_nonzero("dK/dxi")?;
    Ok(derivative_factor(params) / (point.xi_plus() * (1.0 + point.rho())))
}

/// dK_j(k)/d xi_-; the conjugate of `krawtchouk_dxi`.
pub fn krawtchouk_dxibar(params: &KrawParams, point: SpherePoint) -> Result<Complex64> {
    point.require_nonzero("dK/dxibar")?;
    Ok(derivative_factor(params) / (point.xi_minus() * (1.0 + point.rho())))
}

fn derivative_factor(params: &KrawParams) -> f64 {
    let KrawParams { j, k, n, p } = *params;
    if k == 0 {
        return 0.0;
    }
    -(k as f64) * (eval(j, k, n, p) - eval(j, k - 1, n, p))
}

/// The weighted polynomial W_j(k) = xi_+^j xi_-^k K_j(k; p, N) / (1 + rho)^(N/2).
///
/// Evaluated from an expansion whose powers of xi_+/sqrt(1+rho), xi_-/sqrt(1+rho) and
/// 1/sqrt(1+rho) are all nonnegative, so it is finite everywhere, the origin included.
pub fn weighted(j: usize, k: usize, n: usize, point: SpherePoint) -> Complex64 {
    WeightedPowers::new(n, point).entry(j, k)
}

struct WeightedPowers {
    n: usize,
    pu: Vec<Complex64>,
    pubar: Vec<Complex64>,
    pw: Vec<f64>,
}

impl WeightedPowers {
    fn new(n: usize, point: SpherePoint) -> Self {
        let w = 1.0 / (1.0 + point.rho()).sqrt();
        let u = point.xi_plus() * w;
        let pw = powers(Complex64::new(w, 0.0), n + 1).into_iter().map(|z| z.re).collect();
        Self {
            n,
            pu: powers(u, n + 1),
            pubar: powers(u.conj(), n + 1),
            pw,
        }
    }

    fn entry(&self, j: usize, k: usize) -> Complex64 {
        let n = self.n;
        let norm = binomial(n, k);
        let lo = (j + k).saturating_sub(n);
        compensated_complex((lo..=j.min(k)).map(|l| {
            let coeff = (binomial_exact(j, l) * binomial_exact(n - j, k - l)) as f64 / norm;
            let sign = if l % 2 == 0 { coeff } else { -coeff };
            self.pu[j - l] * self.pubar[k - l] * (sign * self.pw[n + 2 * l - j - k])
        }))
    }
}

/// All W_j(k) for 0 <= j, k <= N at one point.
#[derive(Debug, Clone)]
pub struct WeightedTable {
    n: usize,
    values: Vec<Complex64>,
}

impl WeightedTable {
    pub fn new(n: usize, point: SpherePoint) -> Self {
        let powers = WeightedPowers::new(n, point);
        let values = (0..=n)
            .flat_map(|j| (0..=n).map(move |k| (j, k)))
            .map(|(j, k)| powers.entry(j, k))
            .collect();
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// W_j(k).
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.values[j * (self.n + 1) + k]
    }
}

fn powers(z: Complex64, count: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(count);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..count {
        out.push(acc);
        acc *= z;
    }
    out
}

/// The four orthogonality sums over the degree q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orthogonality {
    /// weight 1
    Ort1,
    /// weight q, diagonal
    Ort2,
    /// weight q, neighbouring arguments
    Ort3,
    /// weight q^2, diagonal
    Ort4,
}

impl Orthogonality {
    pub const ALL: [Orthogonality; 4] = [Self::Ort1, Self::Ort2, Self::Ort3, Self::Ort4];

    fn weight(self, q: usize) -> f64 {
        match self {
            Self::Ort1 => 1.0,
            Self::Ort2 | Self::Ort3 => q as f64,
            Self::Ort4 => (q * q) as f64,
        }
    }
}

/// Terms of the sum, each with the magnitude bounding its rounding error.
fn orthogonality_terms(kind: Orthogonality, k: usize, l: usize, n: usize, rho: f64, dual: bool) -> Vec<(f64, f64)> {
    let p = rho / (1.0 + rho);
    (0..=n)
        .map(|q| {
            let (a, b) = if dual {
                (eval_with_magnitude(k, q, n, p), eval_with_magnitude(l, q, n, p))
            } else {
                (eval_with_magnitude(q, k, n, p), eval_with_magnitude(q, l, n, p))
            };
            let w = binomial(n, q) * rho.powi(q as i32) * kind.weight(q);
            (w * a.0 * b.0, w * a.1 * b.1)
        })
        .collect()
}

fn check_pair(k: usize, l: usize, n: usize, point: SpherePoint) -> Result<()> {
    let spec = ModelSpec::new(n)?;
    spec.check_index(k)?;
    spec.check_index(l)?;
    point.require_nonzero("orthogonality sum")
}

/// Sum over q of C(N,q) rho^q w(q) K_q(k) K_q(l), with w fixed by `kind`.
pub fn orthogonality_sum(kind: Orthogonality, k: usize, l: usize, n: usize, point: SpherePoint) -> Result<f64> {
    check_pair(k, l, n, point)?;
    Ok(compensated(
        orthogonality_terms(kind, k, l, n, point.rho(), false).into_iter().map(|t| t.0),
    ))
}

/// Sum over the argument with fixed degrees j, l: C(N,k) rho^k w(k) K_j(k) K_l(k).
pub fn dual_orthogonality_sum(kind: Orthogonality, j: usize, l: usize, n: usize, point: SpherePoint) -> Result<f64> {
    check_pair(j, l, n, point)?;
    Ok(compensated(
        orthogonality_terms(kind, j, l, n, point.rho(), true).into_iter().map(|t| t.0),
    ))
}

/// Closed value of the sum, when one is known for this index pair.
///
/// Ort1 covers every pair. The weight-q sums are known on the diagonal (Ort2), for |k - l| = 1
/// (Ort3) and vanish for |k - l| >= 2 (both kinds). Ort4 is known on the diagonal only. The dual
/// sums share these values.
pub fn orthogonality_rhs(kind: Orthogonality, k: usize, l: usize, n: usize, rho: f64) -> Option<f64> {
    let nf = n as f64;
    let base = |kk: usize, shift: i32| (1.0 + rho).powi(n as i32 - shift) / (rho.powi(kk as i32) * binomial(n, kk));
    let gap = k.abs_diff(l);
    match kind {
        Orthogonality::Ort1 => Some(if k == l { base(k, 0) } else { 0.0 }),
        Orthogonality::Ort2 | Orthogonality::Ort3 if gap >= 2 => Some(0.0),
        Orthogonality::Ort2 if gap == 0 => {
            let kf = k as f64;
            Some(base(k, 1) * (kf + (nf - kf) * rho))
        }
        Orthogonality::Ort3 if gap == 1 => {
            let top = k.max(l);
            Some(-base(top, 1) * rho * (nf - top as f64 + 1.0))
        }
        Orthogonality::Ort4 if gap == 0 => {
            let kf = k as f64;
            let s = nf / 2.0;
            Some(base(k, 2) * (rho * rho * (kf - nf).powi(2) + 2.0 * rho * (4.0 * s * kf - 2.0 * kf * kf + s) + kf * kf))
        }
        _ => None,
    }
}

/// |sum - closed| / sum of term magnitudes, or `None` when no closed value is known.
pub fn orthogonality_defect(kind: Orthogonality, k: usize, l: usize, n: usize, point: SpherePoint, dual: bool) -> Result<Option<f64>> {
    check_pair(k, l, n, point)?;
    let rho = point.rho();
    let Some(rhs) = orthogonality_rhs(kind, k, l, n, rho) else {
        return Ok(None);
    };
    let terms = orthogonality_terms(kind, k, l, n, rho, dual);
    let scale: f64 = terms.iter().map(|t| t.1).sum();
    Ok(Some(
        (compensated(terms.into_iter().map(|t| t.0)) - rhs).abs() / scale.max(f64::MIN_POSITIVE),
    ))
}

/// A residual together with the magnitude of the terms that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub raw: f64,
    /// Sum over terms of |coefficient| times the magnitude of the polynomial value.
    pub scale: f64,
}

impl Residual {
    /// Terms as (coefficient, (value, magnitude)).
    fn from_terms(terms: &[(f64, (f64, f64))]) -> Self {
        Self {
            raw: compensated(terms.iter().map(|(c, (v, _))| c * v)).abs(),
            scale: terms.iter().map(|(c, (_, m))| c.abs() * m).sum(),
        }
    }

    /// raw / scale; zero when every term vanishes.
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.raw / self.scale
        } else {
            self.raw
        }
    }
}

/// K_j(k+1; N) - K_j(k; N) + j/(N p) K_{j-1}(k; N-1), for 0 <= k < N.
pub fn forward_shift_residual(j: usize, k: usize, n: usize, p: f64) -> Result<Residual> {
    KrawParams::new(j, k, n, p)?;
    if k == n {
        return Err(Error::IndexOutOfRange { index: k + 1, n });
    }
    let shifted = if j == 0 {
        (0.0, (0.0, 0.0))
    } else {
        (j as f64 / (n as f64 * p), eval_with_magnitude(j - 1, k, n - 1, p))
    };
    Ok(Residual::from_terms(&[
        (1.0, eval_with_magnitude(j, k + 1, n, p)),
        (-1.0, eval_with_magnitude(j, k, n, p)),
        shifted,
    ]))
}

/// -p(N-k) K_j(k+1) + (k - j + 2p(s-k)) K_j(k) - k(1-p) K_j(k-1). Out-of-range neighbours
/// carry vanishing coefficients and are dropped.
pub fn difference_residual(j: usize, k: usize, n: usize, p: f64) -> Result<Residual> {
    KrawParams::new(j, k, n, p)?;
    let (jf, kf, nf) = (j as f64, k as f64, n as f64);
    Ok(Residual::from_terms(&[
        (-p * (nf - kf), eval_or_zero(Some(j), Some(k + 1), n, p)),
        (kf - jf + p * (nf - 2.0 * kf), eval_with_magnitude(j, k, n, p)),
        (-kf * (1.0 - p), eval_or_zero(Some(j), k.checked_sub(1), n, p)),
    ]))
}

/// [2(s-j) K_j + rho (N-j) K_{j+1} - (j/rho) K_{j-1}] / (1+rho) - (N-k) K_j(k+1), all at argument k.
pub fn recurrence_d4_residual(j: usize, k: usize, n: usize, point: SpherePoint) -> Result<Residual> {
    let params = KrawParams::at_point(j, k, n, point)?;
    let p = params.p;
    let rho = point.rho();
    let (jf, kf, nf) = (j as f64, k as f64, n as f64);
    let denom = 1.0 + rho;
    Ok(Residual::from_terms(&[
        ((nf - 2.0 * jf) / denom, eval_with_magnitude(j, k, n, p)),
        (rho * (nf - jf) / denom, eval_or_zero(Some(j + 1), Some(k), n, p)),
        (-(jf / rho) / denom, eval_or_zero(j.checked_sub(1), Some(k), n, p)),
        (-(nf - kf), eval_or_zero(Some(j), Some(k + 1), n, p)),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::TOL_EXACT;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};
    use proptest::prelude::*;

    fn big_binomial(n: usize, k: usize) -> BigInt {
        BigInt::from(binomial_exact(n, k))
    }

    /// Terminating hypergeometric sum in exact rational arithmetic.
    fn exact(j: usize, k: usize, n: usize, p: &BigRational) -> BigRational {
        let inv = p.recip();
        let mut sum = BigRational::zero();
        let mut power = BigRational::one();
        for m in 0..=j.min(k) {
            let coeff = BigRational::new(big_binomial(j, m) * big_binomial(k, m), big_binomial(n, m));
            let term = coeff * &power;
            if m % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            power *= &inv;
        }
        sum
    }

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_exact(40, 20), 137_846_528_820);
        assert_eq!(binomial_exact(5, 7), 0);
        assert_eq!(binomial_exact(0, 0), 1);
        assert_eq!(binomial_exact(12, 5), 792);
    }

    #[test]
    fn small_values() {
        let k = |j, kk, n, p| krawtchouk(&KrawParams::new(j, kk, n, p).unwrap());
        assert_eq!(k(5, 0, 10, 0.3), 1.0);
        assert_eq!(k(0, 7, 10, 0.3), 1.0);
        assert!(k(1, 1, 2, 0.5).abs() < 1e-15);
    }

    #[test]
    fn params_validated() {
        assert!(matches!(KrawParams::new(0, 0, 2, 0.0), Err(Error::ProbabilityOutOfRange(_))));
        assert!(matches!(KrawParams::new(0, 0, 2, 1.0), Err(Error::ProbabilityOutOfRange(_))));
        assert!(matches!(KrawParams::new(3, 0, 2, 0.5), Err(Error::IndexOutOfRange { .. })));
        assert!(KrawParams::new(0, 0, 41, 0.5).is_err());
        assert!(KrawParams::at_point(0, 0, 2, SpherePoint::origin()).is_err());
    }

    #[test]
    fn matches_exact_rational_oracle() {
        // p on both sides of the switch between the two expansions.
        for (a, b) in [(1, 100), (1, 10), (1, 4), (3, 10), (1, 2), (2, 3), (9, 10), (99, 100)] {
            let pr = ratio(a, b);
            let pf = a as f64 / b as f64;
            for n in 1..=12 {
                for j in 0..=n {
                    for k in 0..=n {
                        let want = exact(j, k, n, &pr).to_f64().unwrap();
                        let got = eval(j, k, n, pf);
                        let err = (got - want).abs() / want.abs().max(1.0);
                        assert!(err < 1e-12, "K_{j}({k}; {pf}, {n}) = {got}, exact {want}");
                    }
                }
            }
        }
    }

    #[test]
    fn weighted_matches_definition() {
        for &xi in &[Complex64::new(0.3, 0.4), Complex64::new(-2.0, 1.5), Complex64::new(0.0, 0.9)] {
            let point = SpherePoint::new(xi);
            let n = 7;
            let table = WeightedTable::new(n, point);
            let p = p_of(point);
            for j in 0..=n {
                for k in 0..=n {
                    let direct = xi.powu(j as u32) * xi.conj().powu(k as u32) * eval(j, k, n, p) / (1.0 + point.rho()).powf(n as f64 / 2.0);
                    assert!((table.get(j, k) - direct).norm() < 1e-13, "W_{j}({k}) at {xi}");
                }
            }
        }
    }

    #[test]
    fn weighted_at_origin_is_diagonal() {
        let n = 5;
        let table = WeightedTable::new(n, SpherePoint::origin());
        for j in 0..=n {
            for k in 0..=n {
                let want = if j == k {
                    (if k % 2 == 0 { 1.0 } else { -1.0 }) / binomial(n, k)
                } else {
                    0.0
                };
                assert!((table.get(j, k) - Complex64::new(want, 0.0)).norm() < TOL_EXACT);
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let point = SpherePoint::from_real(0.7, -0.2);
        for j in 0..=4 {
            let d = krawtchouk_dxi(&KrawParams::at_point(j, 0, 4, point).unwrap(), point).unwrap();
            assert_eq!(d, Complex64::new(0.0, 0.0));
        }
        for k in 0..=4 {
            let d = krawtchouk_dxi(&KrawParams::at_point(0, k, 4, point).unwrap(), point).unwrap();
            assert!(d.norm() < 1e-16);
        }
        let params = KrawParams::new(1, 1, 4, 0.5).unwrap();
        assert!(krawtchouk_dxi(&params, SpherePoint::origin()).is_err());
    }

    #[test]
    fn derivative_against_central_difference() {
        let h = 1e-5;
        let value = |j, k, n, pt: SpherePoint| eval(j, k, n, p_of(pt));
        for &(j, k, n, xi) in &[
            (2, 1, 4, Complex64::new(1.0, 0.0)),
            (3, 2, 6, Complex64::new(0.4, -0.9)),
            (5, 5, 8, Complex64::new(-2.0, 0.3)),
        ] {
            let pt = SpherePoint::new(xi);
            let d1 = (value(j, k, n, pt.offset(h, 0.0)) - value(j, k, n, pt.offset(-h, 0.0))) / (2.0 * h);
            let d2 = (value(j, k, n, pt.offset(0.0, h)) - value(j, k, n, pt.offset(0.0, -h))) / (2.0 * h);
            let fd = Complex64::new(d1, -d2) * 0.5;
            let fdbar = Complex64::new(d1, d2) * 0.5;
            let params = KrawParams::at_point(j, k, n, pt).unwrap();
            assert!((krawtchouk_dxi(&params, pt).unwrap() - fd).norm() < 1e-6);
            assert!((krawtchouk_dxibar(&params, pt).unwrap() - fdbar).norm() < 1e-6);
        }
    }

    #[test]
    fn orthogonality_examples() {
        let unit = SpherePoint::from_real(1.0, 0.0);
        assert!(orthogonality_sum(Orthogonality::Ort1, 1, 2, 3, unit).unwrap().abs() < 1e-12);
        assert!((orthogonality_sum(Orthogonality::Ort1, 0, 0, 2, unit).unwrap() - 4.0).abs() < 1e-12);
        assert!((orthogonality_sum(Orthogonality::Ort2, 0, 0, 2, unit).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(orthogonality_rhs(Orthogonality::Ort2, 0, 0, 2, 1.0), Some(4.0));
        assert_eq!(orthogonality_rhs(Orthogonality::Ort4, 0, 1, 2, 1.0), None);
    }

    #[test]
    fn residual_examples() {
        assert_eq!(difference_residual(0, 1, 2, 0.5).unwrap().raw, 0.0);
        assert!(difference_residual(1, 1, 2, 0.5).unwrap().raw < 1e-12);
        assert!(difference_residual(3, 2, 6, 0.25).unwrap().raw < 1e-12);
        let unit = SpherePoint::from_real(1.0, 0.0);
        assert!(recurrence_d4_residual(0, 0, 2, unit).unwrap().raw < 1e-12);
        assert!(recurrence_d4_residual(2, 0, 2, unit).unwrap().raw < 1e-12);
        let two = SpherePoint::from_real(2f64.sqrt(), 0.0);
        assert!(recurrence_d4_residual(1, 3, 4, two).unwrap().raw < 1e-12);
        assert!(forward_shift_residual(2, 4, 4, 0.5).is_err());
    }

    proptest! {
        #[test]
        fn self_dual(n in 1usize..=12, a in 0usize..=12, b in 0usize..=12, p in 0.01f64..0.99) {
            let (j, k) = (a % (n + 1), b % (n + 1));
            let x = eval(j, k, n, p);
            let y = eval(k, j, n, p);
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0));
        }

        #[test]
        fn normalised_at_zero_argument(n in 1usize..=40, a in 0usize..=40, p in 0.01f64..0.99) {
            prop_assert_eq!(eval(a % (n + 1), 0, n, p), 1.0);
        }

        #[test]
        fn weighted_is_bounded(n in 1usize..=20, r in 0.0f64..1e3, phi in 0.0f64..6.3) {
            // Each column sqrt(C(N,k) C(N,j)) W_j(k) is a unit vector.
            let table = WeightedTable::new(n, SpherePoint::from_polar(r, phi));
            for k in 0..=n {
                let norm: f64 = (0..=n).map(|j| binomial(n, k) * binomial(n, j) * table.get(j, k).norm_sqr()).sum();
                prop_assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }
}
