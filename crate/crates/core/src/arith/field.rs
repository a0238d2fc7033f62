use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field of a ring: a prime field F_p (p odd, < 2^31) or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Field {
    pub const DEFAULT: Field = Field::Prime(101);

    pub fn prime(p: u32) -> Result<Field> {
        if p == 2 {
            return Err(Error::CharTwo);
        }
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidScalar(format!("{p} is not an odd prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    /// Field with the given characteristic; 0 selects the rationals.
    pub fn with_characteristic(c: u32) -> Result<Field> {
        if c == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(c)
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn prime_field(&self) -> Result<PrimeField> {
        match self {
            Field::Prime(p) => Ok(PrimeField::new(*p)),
            Field::Rational => Err(Error::UnsupportedField(
                "degree-wise linear algebra runs over prime fields only".into(),
            )),
        }
    }

    pub fn zero(&self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldScalar {
        match self {
            Field::Prime(p) => FieldScalar::Fp {
                value: PrimeField::new(*p).from_i64(n),
                p: *p,
            },
            Field::Rational => FieldScalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// `num / den`; fails when `den` vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldScalar> {
        match self {
            Field::Prime(p) => {
                let pf = PrimeField::new(*p);
                let n = pf.from_bigint(num);
                let d = pf.from_bigint(den);
                if d == 0 {
                    return Err(Error::InvalidScalar(format!("denominator {den} vanishes mod {p}")));
                }
                Ok(FieldScalar::Fp { value: pf.mul(n, pf.inv(d)), p: *p })
            }
            Field::Rational => {
                if den.is_zero() {
                    return Err(Error::InvalidScalar("zero denominator".into()));
                }
                Ok(FieldScalar::Q(BigRational::new(num.clone(), den.clone())))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of a field. F_p values are reduced into `[0, p)`; rationals are kept in lowest
/// terms with positive denominator (guaranteed by `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Fp { value: u32, p: u32 },
    Q(BigRational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
}

/// Applies `op` to `a` (and `b` for the binary operations).
pub fn field_ops(a: &FieldScalar, b: Option<&FieldScalar>, op: FieldOp) -> Result<FieldScalar> {
    match op {
        FieldOp::Add => a.add(b.ok_or_else(|| Error::InvalidArgument("add needs two operands".into()))?),
        FieldOp::Mul => a.mul(b.ok_or_else(|| Error::InvalidArgument("mul needs two operands".into()))?),
        FieldOp::Inv => a.inv(),
        FieldOp::Neg => Ok(a.neg()),
    }
}

impl FieldScalar {
    pub fn field(&self) -> Field {
        match self {
            FieldScalar::Fp { p, .. } => Field::Prime(*p),
            FieldScalar::Q(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Fp { value, .. } => *value == 0,
            FieldScalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Fp { value, .. } => *value == 1,
            FieldScalar::Q(q) => q.is_one(),
        }
    }

    fn check(&self, other: &FieldScalar) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().to_string(), other.field().to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldScalar) -> Result<FieldScalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (FieldScalar::Fp { value: a, p }, FieldScalar::Fp { value: b, .. }) => FieldScalar::Fp {
                value: PrimeField::new(*p).add(*a, *b),
                p: *p,
            },
            (FieldScalar::Q(a), FieldScalar::Q(b)) => FieldScalar::Q(a + b),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &FieldScalar) -> Result<FieldScalar> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldScalar) -> Result<FieldScalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (FieldScalar::Fp { value: a, p }, FieldScalar::Fp { value: b, .. }) => FieldScalar::Fp {
                value: PrimeField::new(*p).mul(*a, *b),
                p: *p,
            },
            (FieldScalar::Q(a), FieldScalar::Q(b)) => FieldScalar::Q(a * b),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> FieldScalar {
        match self {
            FieldScalar::Fp { value, p } => FieldScalar::Fp {
                value: PrimeField::new(*p).neg(*value),
                p: *p,
            },
            FieldScalar::Q(q) => FieldScalar::Q(-q),
        }
    }

    pub fn inv(&self) -> Result<FieldScalar> {
        if self.is_zero() {
            return Err(Error::InvalidScalar("division by zero".into()));
        }
        Ok(match self {
            FieldScalar::Fp { value, p } => FieldScalar::Fp {
                value: PrimeField::new(*p).inv(*value),
                p: *p,
            },
            FieldScalar::Q(q) => FieldScalar::Q(q.recip()),
        })
    }

    /// Raw F_p representative; `None` for rationals.
    pub fn fp_value(&self) -> Option<u32> {
        match self {
            FieldScalar::Fp { value, .. } => Some(*value),
            FieldScalar::Q(_) => None,
        }
    }

    /// Whether printing this coefficient should use a leading minus sign.
    pub(crate) fn is_negative_repr(&self) -> bool {
        match self {
            FieldScalar::Fp { value, p } => *value > p / 2,
            FieldScalar::Q(q) => q.is_negative(),
        }
    }
}

impl fmt::Display for FieldScalar {
    /// F_p values print as the representative of least absolute value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Fp { value, p } => {
                if *value > p / 2 {
                    write!(f, "-{}", p - value)
                } else {
                    write!(f, "{value}")
                }
            }
            FieldScalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

/// Arithmetic context for F_p on raw `u32` representatives; used by all hot loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const fn new(p: u32) -> Self {
        PrimeField { p }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n % BigInt::from(self.p);
        let r: i64 = r.try_into().expect("remainder fits in i64");
        self.from_i64(r)
    }

    pub fn scalar(&self, v: u32) -> FieldScalar {
        FieldScalar::Fp { value: v, p: self.p }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Field::prime(101).unwrap();
        let two = f.from_i64(2);
        let inv = two.inv().unwrap();
        assert_eq!(inv.fp_value(), Some(51));
        assert!(two.mul(&inv).unwrap().is_one());
        let s = f.from_i64(100).add(&f.from_i64(1)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn rationals_reduce() {
        let q = Field::Rational;
        let a = q.from_ratio(&BigInt::from(2), &BigInt::from(3)).unwrap();
        let b = q.from_ratio(&BigInt::from(9), &BigInt::from(4)).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c.to_string(), "3/2");
        let neg = q.from_ratio(&BigInt::from(1), &BigInt::from(-2)).unwrap();
        assert_eq!(neg.to_string(), "-1/2");
    }

    #[test]
    fn errors() {
        let f = Field::prime(101).unwrap();
        assert!(matches!(f.zero().inv(), Err(Error::InvalidScalar(_))));
        let q = Field::Rational.one();
        assert!(matches!(f.one().add(&q), Err(Error::FieldMismatch(..))));
        assert_eq!(Field::prime(2), Err(Error::CharTwo));
        assert!(Field::prime(91).is_err());
        assert_eq!(
            field_ops(&f.from_i64(3), None, FieldOp::Neg).unwrap(),
            f.from_i64(98)
        );
    }
}
