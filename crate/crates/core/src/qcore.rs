//! q-calculus primitives: q-integers, q-factorials and q-binomial coefficients.
//!
//! For a shape parameter `q` in `(0, 1]` the q-integer `[r]` is the sum
//! `1 + q + ... + q^(r-1)`, the q-factorial is `[r]! = [r][r-1]...[1]` and the
//! q-binomial coefficient is `[i]! / ([j]! [i-j]!)` for `i >= j >= 0` and zero
//! otherwise. Every quantity collapses to its classical counterpart at `q = 1`.

use crate::error::{Error, Result};

/// Largest degree accepted by the floating-point factorial path.
pub const MAX_DEGREE: usize = 60;

/// The shape parameter `q`, restricted to `0 < q <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QParam(f64);

impl QParam {
    /// `q = 1`, where every q-analogue reduces to the classical object.
    pub const ONE: QParam = QParam(1.0);

    pub fn new(q: f64) -> Result<Self> {
        if q > 0.0 && q <= 1.0 {
            Ok(QParam(q))
        } else {
            Err(Error::InvalidQ(q))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }

    /// `q^k` by repeated multiplication, matching [`QParam::powers`] bit for bit.
    pub fn pow(self, k: usize) -> f64 {
        let mut p = 1.0;
        for _ in 0..k {
            p *= self.0;
        }
        p
    }

    /// `[q^0, q^1, ..., q^n]`.
    pub fn powers(self, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n + 1);
        let mut p = 1.0;
        out.push(p);
        for _ in 0..n {
            p *= self.0;
            out.push(p);
        }
        out
    }
}

impl TryFrom<f64> for QParam {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        QParam::new(q)
    }
}

impl std::fmt::Display for QParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// The q-integer `[r] = 1 + q + ... + q^(r-1)`, summed directly.
///
/// `[0] = 0` and `[r] = r` exactly when `q = 1`.
pub fn q_integer(r: usize, q: QParam) -> f64 {
    let mut sum = 0.0;
    let mut p = 1.0;
    for _ in 0..r {
        sum += p;
        p *= q.value();
    }
    sum
}

/// The q-factorial `[r]! = [r][r-1]...[1]`, with `[0]! = 1`.
pub fn q_factorial(r: usize, q: QParam) -> Result<f64> {
    if r > MAX_DEGREE {
        return Err(Error::OutOfRange {
            what: "q-factorial argument",
            value: r,
            max: MAX_DEGREE,
        });
    }
    Ok(q_factorial_unchecked(r, q))
}

fn q_factorial_unchecked(r: usize, q: QParam) -> f64 {
    (1..=r).map(|s| q_integer(s, q)).product()
}

/// The q-binomial coefficient. Zero unless `i >= j >= 0`.
pub fn q_binomial(i: i64, j: i64, q: QParam) -> Result<f64> {
    if j < 0 || i < j {
        return Ok(0.0);
    }
    let (i, j) = (i as usize, j as usize);
    if i > MAX_DEGREE {
        return Err(Error::OutOfRange {
            what: "q-binomial upper index",
            value: i,
            max: MAX_DEGREE,
        });
    }
    Ok(qbinom(i, j, q))
}

/// q-binomial for `n <= MAX_DEGREE`, `k <= n`; callers have validated the degree.
pub(crate) fn qbinom(n: usize, k: usize, q: QParam) -> f64 {
    debug_assert!(n <= MAX_DEGREE && k <= n);
    q_factorial_unchecked(n, q) / (q_factorial_unchecked(k, q) * q_factorial_unchecked(n - k, q))
}

/// Classical binomial coefficient as a float; exact while the result fits in 53 bits.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for s in 1..=k {
        acc = acc * (n - k + s) as f64 / s as f64;
    }
    acc
}

/// Trinomial coefficient `(a+b+c)! / (a! b! c!)`.
pub fn multinomial(a: usize, b: usize, c: usize) -> f64 {
    binomial(a + b + c, c) * binomial(a + b, a)
}

pub(crate) fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        Err(Error::OutOfRange {
            what: "degree",
            value: n,
            max: MAX_DEGREE,
        })
    } else {
        Ok(())
    }
}

/// Exact rational counterparts for small degrees and rational `q`.
///
/// These exist to anchor floating-point tolerances: a test can compute a basis
/// value or coefficient with no rounding at all and compare.
pub mod exact {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    use crate::error::{Error, Result};
    use crate::tribasis::MultiIndex3;

    /// Largest degree served by the exact path.
    pub const EXACT_MAX_DEGREE: usize = 12;

    fn check(n: usize) -> Result<()> {
        if n > EXACT_MAX_DEGREE {
            Err(Error::OutOfRange {
                what: "exact degree",
                value: n,
                max: EXACT_MAX_DEGREE,
            })
        } else {
            Ok(())
        }
    }

    /// Exact conversion of a finite double (every double is a dyadic rational).
    pub fn rational(x: f64) -> BigRational {
        BigRational::from_float(x).expect("finite value")
    }

    pub fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn q_integer(r: usize, q: &BigRational) -> BigRational {
        let mut sum = BigRational::zero();
        let mut p = BigRational::one();
        for _ in 0..r {
            sum += &p;
            p *= q;
        }
        sum
    }

    pub fn q_factorial(r: usize, q: &BigRational) -> Result<BigRational> {
        check(r)?;
        Ok((1..=r).fold(BigRational::one(), |acc, s| acc * q_integer(s, q)))
    }

    pub fn q_binomial(i: i64, j: i64, q: &BigRational) -> Result<BigRational> {
        if j < 0 || i < j {
            return Ok(BigRational::zero());
        }
        let (i, j) = (i as usize, j as usize);
        Ok(q_factorial(i, q)? / (q_factorial(j, q)? * q_factorial(i - j, q)?))
    }

    fn binomial(n: usize, k: usize) -> BigRational {
        let mut acc = BigRational::one();
        for s in 1..=k {
            acc = acc * BigRational::from_integer(BigInt::from(n - k + s))
                / BigRational::from_integer(BigInt::from(s));
        }
        acc
    }

    /// Exact value of the triangular q-Bernstein function `idx` at `(u, v)`.
    pub fn basis_eval(
        idx: MultiIndex3,
        u: &BigRational,
        v: &BigRational,
        q: &BigRational,
    ) -> Result<BigRational> {
        let n = idx.degree();
        check(n)?;
        let mut value = q_binomial(n as i64, idx.k as i64, q)? * binomial(idx.i + idx.j, idx.i);
        for _ in 0..idx.i {
            value *= u;
        }
        for _ in 0..idx.j {
            value *= v;
        }
        let mut qs = BigRational::one();
        for _ in 0..idx.k {
            value *= BigRational::one() - &qs * u - &qs * v;
            qs *= q;
        }
        Ok(value)
    }
}
