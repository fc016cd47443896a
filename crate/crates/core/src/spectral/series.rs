//! Power-series expansion of the cross norm `‖v × w‖ = √(1 − ⟨v, w⟩²)`.
//!
//! `√(1 − x²) = 1 − Σ_{k≥1} c_k x^{2k}` with `c_k = C(2k, k) / (4^k (2k − 1))`,
//! and `⟨v, w⟩^{2k}` splits into monomials `x^a y^b z^c`, giving the positive
//! coefficients `C^{(k)}_{abc} = c_k (2k)! / (a! b! c!)`. Everything is exact
//! until a value is evaluated at a float.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `C^{(k)}_{abc}` with its exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorCoefficient {
    pub k: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub value: BigRational,
}

impl TaylorCoefficient {
    pub fn is_positive(&self) -> bool {
        self.value.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

impl Serialize for TaylorCoefficient {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TaylorCoefficient", 6)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("abc", &[self.a, self.b, self.c])?;
        st.serialize_field("numerator", &self.value.numer().to_string())?;
        st.serialize_field("denominator", &self.value.denom().to_string())?;
        st.serialize_field("approx", &self.to_f64())?;
        st.end()
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn central_binomial(k: u32) -> BigUint {
    factorial(2 * k) / (factorial(k) * factorial(k))
}

/// `c_k = C(2k, k) / (4^k (2k − 1))`, the coefficient of `x^{2k}` in `1 − √(1 − x²)`.
pub fn series_coefficient(k: u32) -> BigRational {
    assert!(k >= 1, "series coefficients start at k = 1");
    let num = BigInt::from(central_binomial(k));
    let den = (BigInt::one() << (2 * k as usize)) * BigInt::from(2 * k - 1);
    BigRational::new(num, den)
}

/// `C^{(k)}_{abc}` for `a + b + c = 2k`, `k ≥ 1`.
pub fn taylor_coefficient(k: u32, a: u32, b: u32, c: u32) -> Result<TaylorCoefficient> {
    if k == 0 || a + b + c != 2 * k {
        return Err(Error::BadMultiIndex { k, a, b, c });
    }
    let multinomial = factorial(2 * k) / (factorial(a) * factorial(b) * factorial(c));
    let value = series_coefficient(k) * BigRational::from_integer(BigInt::from(multinomial));
    Ok(TaylorCoefficient { k, a, b, c, value })
}

/// All `(a, b, c)` with `a + b + c = n`, lexicographically descending in `a`.
pub fn multi_indices(n: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (0..=n).rev().flat_map(move |a| (0..=n - a).rev().map(move |b| (a, b, n - a - b)))
}

/// `f_abc(v) = x^a y^b z^c`, exactly.
pub fn monomial(v: &[BigRational; 3], (a, b, c): (u32, u32, u32)) -> BigRational {
    let pow = |x: &BigRational, e: u32| num_traits::pow(x.clone(), e as usize);
    pow(&v[0], a) * pow(&v[1], b) * pow(&v[2], c)
}

/// `Σ_{a+b+c=2k} C^{(k)}_{abc} f_abc(v) f_abc(w)`; equals `c_k ⟨v, w⟩^{2k}`.
pub fn expansion_term(k: u32, v: &[BigRational; 3], w: &[BigRational; 3]) -> BigRational {
    multi_indices(2 * k).fold(BigRational::zero(), |acc, idx| {
        let c = taylor_coefficient(k, idx.0, idx.1, idx.2).expect("valid multi-index");
        acc + c.value * monomial(v, idx) * monomial(w, idx)
    })
}

/// Partial sum `1 − Σ_{k=1..terms} c_k x^{2k}`.
///
/// The central binomials are carried exactly; each `c_k` is rounded once when
/// it is multiplied into the float power `x^{2k}`.
pub fn truncated_cross_norm<T: Scalar>(x: T, terms: u32) -> Result<T> {
    if !(x.abs() <= T::one()) {
        return Err(Error::OutOfDomain(x.to_f64_lossy()));
    }
    let u = x * x;
    let mut power = T::one();
    let mut binom = BigUint::one();
    let mut sum = T::one();
    for k in 1..=terms {
        // C(2k, k) = C(2k − 2, k − 1) · 2(2k − 1) / k
        binom = binom * (2 * (2 * k - 1)) / k;
        power = power * u;
        if power == T::zero() {
            break;
        }
        sum = sum - coefficient_as::<T>(&binom, k) * power;
    }
    Ok(sum)
}

/// `binom / (2^{2k} (2k − 1))` without forming the huge power of two.
fn coefficient_as<T: Scalar>(binom: &BigUint, k: u32) -> T {
    let bits = binom.bits() as i64;
    let shift = (bits - 60).max(0);
    let mantissa = (binom >> shift as usize).to_u64().expect("fits in 60 bits") as f64;
    let exp = shift - 2 * k as i64;
    T::lit(mantissa * 2f64.powi(exp as i32) / f64::from(2 * k - 1))
}

/// `√(1 − x²)` as `‖v × w‖` for unit vectors with `⟨v, w⟩ = x`; reference value.
pub fn cross_norm_closed_form<T: Scalar>(x: T) -> T {
    (T::one() - x * x).max(T::zero()).sqrt()
}
