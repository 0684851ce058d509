//! Exact-arithmetic and high-precision verification of the combinatorial and
//! series identities behind the Bessel closed forms.
//!
//! The binomial-sum identities are checked by brute-force summation in
//! arbitrary-precision rationals — exact equality, no tolerances. The series
//! identities (which involve transcendental values) are checked as small
//! floating-point residuals against the special-function kernel, and the
//! three antiderivative identities are checked by central finite differences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::specfun;

/// Binomial coefficient by the multiplicative formula; exact division at
/// every step keeps intermediates small enough for n in the thousands.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut result = BigInt::one();
    for i in 0..k {
        result = result * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    result
}

fn factorial(n: u64) -> BigInt {
    let mut result = BigInt::one();
    for i in 2..=n {
        result *= BigInt::from(i);
    }
    result
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Exact check of
/// Σ_{j=0}^{k} (−1)^j 2^{−j} binom(k,j) binom(j,⌊j/2⌋)
///   = binom(2k,k) / (2^k (k+1)),
/// the identity that turns the Cauchy product of e^{2x} with I₀ − I₁ into
/// the simple central-binomial series. Intended for k up to 1000.
pub fn wz1_check(k: u64) -> bool {
    let mut sum = BigRational::zero();
    for j in 0..=k {
        let term = BigRational::new(binomial(k, j) * binomial(j, j / 2), pow2(j));
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let rhs = BigRational::new(binomial(2 * k, k), pow2(k) * BigInt::from(k + 1));
    sum == rhs
}

/// Exact check of the even/odd split behind [`wz1_check`]:
/// S_e = Σ_j 2^{−2j} binom(k,2j) binom(2j,j) = 2^{−k} binom(2k,k) and
/// S_o = Σ_j 2^{−(2j+1)} binom(k,2j+1) binom(2j+1,j)
///     = k/((k+1) 2^k) binom(2k,k). Both must hold.
pub fn se_so_check(k: u64) -> bool {
    let mut s_even = BigRational::zero();
    let mut s_odd = BigRational::zero();
    for j in 0..=k.div_ceil(2) {
        if 2 * j <= k {
            s_even += BigRational::new(binomial(k, 2 * j) * binomial(2 * j, j), pow2(2 * j));
        }
        if 2 * j < k {
            s_odd += BigRational::new(
                binomial(k, 2 * j + 1) * binomial(2 * j + 1, j),
                pow2(2 * j + 1),
            );
        }
    }
    let central = binomial(2 * k, k);
    let even_ok = s_even == BigRational::new(central.clone(), pow2(k));
    let odd_ok = s_odd
        == BigRational::new(
            BigInt::from(k) * central,
            BigInt::from(k + 1) * pow2(k),
        );
    even_ok && odd_ok
}

/// Exact check of the two factorial-sum identities used in the trig-Bessel
/// lemma:
///
/// ```text
/// Σ_{j=0}^{k} 4^j / ((2j)! (k−j)!²)          = binom(4k,2k) / (2k)!
/// Σ_{j=0}^{k} 4^j / ((2j+1)! (k−j)! (k−j+1)!) = (4k+3)/(2k+3)! · binom(4k+2,2k+1)
/// ```
///
/// (The second sum carries (2j+1)!, matching the J₁ Cauchy-product it
/// resolves; with (2j)! the equality already fails at k = 1.)
/// Intended for k up to 300.
pub fn lemma62_sums_check(k: u64) -> bool {
    let mut first = BigRational::zero();
    let mut second = BigRational::zero();
    for j in 0..=k {
        let four_j = pow2(2 * j);
        let f2j = factorial(2 * j);
        let fkj = factorial(k - j);
        first += BigRational::new(four_j.clone(), &f2j * &fkj * &fkj);
        second += BigRational::new(four_j, factorial(2 * j + 1) * &fkj * factorial(k - j + 1));
    }
    let first_ok = first == BigRational::new(binomial(4 * k, 2 * k), factorial(2 * k));
    let second_ok = second
        == BigRational::new(
            BigInt::from(4 * k + 3) * binomial(4 * k + 2, 2 * k + 1),
            factorial(2 * k + 3),
        );
    first_ok && second_ok
}

/// Residual of Σ_{n<terms} binom(2n,n)/(n+1)! xⁿ against the closed form
/// e^{2x} (I₀(2x) − I₁(2x)), for |x| ≤ 2.
pub fn h_series_identity_check(x: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0; // binom(2n,n)/(n+1)! xⁿ at n = 0
    for n in 0..terms {
        sum += term;
        let nf = n as f64;
        term *= 2.0 * (2.0 * nf + 1.0) / ((nf + 1.0) * (nf + 2.0)) * x;
    }
    let closed = (2.0 * x).exp()
        * (specfun::bessel_i(0, 2.0 * x).unwrap() - specfun::bessel_i(1, 2.0 * x).unwrap());
    (sum - closed).abs()
}

/// Residual of g(c) = Σ_k (−1)^k binom(4k,2k)/(2k+1)! c^{2k} against the
/// Bessel closed form J₀(2c) cos 2c + J₁(2c) sin 2c, for |c| ≤ 2; the ₂F₃
/// form of the same function is cross-checked too and the larger of the two
/// residuals is returned.
pub fn trig_bessel_identity_check(c: f64, terms: usize) -> f64 {
    let g = trig_series(c, terms);
    let closed = specfun::bessel_j(0, 2.0 * c).unwrap() * (2.0 * c).cos()
        + specfun::bessel_j(1, 2.0 * c).unwrap() * (2.0 * c).sin();
    let hyp = specfun::hyp2f3(0.25, 0.75, 0.5, 1.0, 1.5, -4.0 * c * c).unwrap();
    (g - closed).abs().max((g - hyp).abs())
}

fn trig_series(c: f64, terms: usize) -> f64 {
    let c2 = c * c;
    let mut sum = 0.0;
    let mut term = 1.0; // (−1)^k binom(4k,2k)/(2k+1)! c^{2k}
    for k in 0..terms {
        sum += term;
        let kf = k as f64;
        let ratio = (4.0 * kf + 1.0) * (4.0 * kf + 2.0) * (4.0 * kf + 3.0) * (4.0 * kf + 4.0)
            / ((2.0 * kf + 1.0)
                * (2.0 * kf + 1.0)
                * (2.0 * kf + 2.0)
                * (2.0 * kf + 2.0)
                * (2.0 * kf + 2.0)
                * (2.0 * kf + 3.0));
        term *= -c2 * ratio;
    }
    sum
}

/// Maximum residuals of the three antiderivative identities, each checked by
/// central finite differences (step 1e-5) at 50 points in (0, 2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeChecks {
    /// d/dt [t e^{−t} (I₀(t)+I₁(t))] = e^{−t} I₀(t)
    pub exp_bessel_i: f64,
    /// d/dt [t (cos t J₀(t) + sin t J₁(t))] = cos t J₀(t)
    pub cos_bessel_j: f64,
    /// d/dx [(2x cos x − sin x) J₀(x) + 2x sin x J₁(x)] = J₀(x) cos x + J₁(x) sin x
    pub si_bessel_j: f64,
}

impl DerivativeChecks {
    pub fn pass(&self) -> bool {
        self.exp_bessel_i <= 1e-8 && self.cos_bessel_j <= 1e-8 && self.si_bessel_j <= 1e-8
    }
}

pub fn derivative_identity_checks() -> DerivativeChecks {
    let i0 = |t: f64| specfun::bessel_i(0, t).unwrap();
    let i1 = |t: f64| specfun::bessel_i(1, t).unwrap();
    let j0 = |t: f64| specfun::bessel_j(0, t).unwrap();
    let j1 = |t: f64| specfun::bessel_j(1, t).unwrap();

    let antider_i = |t: f64| t * (-t).exp() * (i0(t) + i1(t));
    let deriv_i = |t: f64| (-t).exp() * i0(t);

    let antider_cos = |t: f64| t * (t.cos() * j0(t) + t.sin() * j1(t));
    let deriv_cos = |t: f64| t.cos() * j0(t);

    let antider_si = |x: f64| (2.0 * x * x.cos() - x.sin()) * j0(x) + 2.0 * x * x.sin() * j1(x);
    let deriv_si = |x: f64| j0(x) * x.cos() + j1(x) * x.sin();

    let max_residual = |f: &dyn Fn(f64) -> f64, fp: &dyn Fn(f64) -> f64| {
        let h = 1e-5;
        (1..=50)
            .map(|i| {
                let t = 0.04 * i as f64;
                let numeric = (f(t + h) - f(t - h)) / (2.0 * h);
                (numeric - fp(t)).abs()
            })
            .fold(0.0f64, f64::max)
    };

    DerivativeChecks {
        exp_bessel_i: max_residual(&antider_i, &deriv_i),
        cos_bessel_j: max_residual(&antider_cos, &deriv_cos),
        si_bessel_j: max_residual(&antider_si, &deriv_si),
    }
}
