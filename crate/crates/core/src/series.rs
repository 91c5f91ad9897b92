//! Truncated one-variable power series with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("reciprocal requires a nonzero constant term")]
    NotAUnit,
}

/// coeffs[k] is the coefficient of x^k; the truncation order is
/// coeffs.len() − 1. All arithmetic is exact up to the truncation order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalPowerSeries {
    coeffs: Vec<BigRational>,
}

impl FormalPowerSeries {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        FormalPowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        FormalPowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, BigRational::zero());
        FormalPowerSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeff(k) + other.coeff(k))
            .collect();
        FormalPowerSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            if self.coeff(i).is_zero() {
                continue;
            }
            for j in 0..=order - i {
                let t = self.coeff(i) * other.coeff(j);
                coeffs[i + j] += t;
            }
        }
        FormalPowerSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FormalPowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(SeriesError::NotAUnit);
        }
        let order = self.order();
        let mut b = vec![BigRational::zero(); order + 1];
        b[0] = a0.recip();
        for k in 1..=order {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                acc += self.coeff(i) * &b[k - i];
            }
            b[k] = -acc / &a0;
        }
        Ok(FormalPowerSeries { coeffs: b })
    }
}

impl std::fmt::Display for FormalPowerSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "x^{}: {}", k, c)?;
        }
        Ok(())
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn half_power(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2).pow(k as u32))
}

/// sinh(x/2)/x = Σ (1/2)^(2m+1) x^(2m) / (2m+1)!  — a unit series.
pub fn sinh_half_over_x(order: usize) -> FormalPowerSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut m = 0;
    while 2 * m <= order {
        coeffs[2 * m] = half_power(2 * m + 1) / BigRational::from_integer(factorial(2 * m + 1));
        m += 1;
    }
    FormalPowerSeries { coeffs }
}

/// cosh(x/2) = Σ (1/2)^(2m) x^(2m) / (2m)!.
pub fn cosh_half(order: usize) -> FormalPowerSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut m = 0;
    while 2 * m <= order {
        coeffs[2 * m] = half_power(2 * m) / BigRational::from_integer(factorial(2 * m));
        m += 1;
    }
    FormalPowerSeries { coeffs }
}

/// tanh(x/2) as a truncated series.
pub fn tanh_half(order: usize) -> FormalPowerSeries {
    let sinh_over_x = sinh_half_over_x(order);
    let sinh = FormalPowerSeries::x(order).mul(&sinh_over_x.truncate(order));
    sinh.mul(&cosh_half(order).recip().expect("cosh(0/2) = 1"))
}

/// The defining series x/tanh(x/2) = cosh(x/2) / (sinh(x/2)/x).
/// Starts 2 + x²/6 − x⁴/360 + …; only even powers are nonzero.
pub fn l_tilde_series(order: usize) -> FormalPowerSeries {
    cosh_half(order).mul(&sinh_half_over_x(order).recip().expect("unit constant term"))
}
