//! Exact arithmetic in Z[φ], φ = (1 + √5)/2.
//!
//! Elements are `a + b·φ` with integer coefficients. Multiplication by φ and
//! by φ⁻¹ stays in the ring (φ² = φ + 1, φ⁻¹ = φ − 1), so every potential built
//! from powers of φ is representable exactly and compared without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer types usable as coefficients: machine integers or `BigInt`.
pub trait RingScalar:
    Clone + Integer + Signed + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display
{
}

impl<T> RingScalar for T where
    T: Clone + Integer + Signed + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display
{
}

pub const PHI: f64 = 1.618_033_988_749_895;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GoldenValue<T> {
    pub a: T,
    pub b: T,
}

impl<T: RingScalar> GoldenValue<T> {
    pub fn new(a: T, b: T) -> Self {
        GoldenValue { a, b }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero())
    }

    pub fn from_int(a: T) -> Self {
        Self::new(a, T::zero())
    }

    /// `self · φ`.
    pub fn mul_phi(&self) -> Self {
        // (a + bφ)φ = b + (a + b)φ
        Self::new(self.b.clone(), self.a.clone() + self.b.clone())
    }

    /// `self · φ⁻¹`.
    pub fn div_phi(&self) -> Self {
        // (a + bφ)(φ − 1) = (b − a) + aφ
        Self::new(self.b.clone() - self.a.clone(), self.a.clone())
    }

    /// φ^k for any integer k.
    pub fn phi_pow(k: i64) -> Self {
        let mut x = Self::one();
        if k >= 0 {
            for _ in 0..k {
                x = x.mul_phi();
            }
        } else {
            for _ in 0..(-k) {
                x = x.div_phi();
            }
        }
        x
    }

    /// Exact sign of `a + bφ`.
    pub fn signum(&self) -> Ordering {
        let zero = T::zero();
        let (mut a, mut b) = (self.a.clone(), self.b.clone());
        loop {
            match (a.cmp(&zero), b.cmp(&zero)) {
                (Ordering::Equal, s) | (s, Ordering::Equal) => return s,
                (Ordering::Greater, Ordering::Greater) => return Ordering::Greater,
                (Ordering::Less, Ordering::Less) => return Ordering::Less,
                _ => {
                    // sign(a + bφ) = sign(φ⁻¹(a + bφ)) = sign(b + (a + b)φ);
                    // while signs stay mixed, |a| + |b| strictly decreases
                    let s = a.clone() + b.clone();
                    a = b;
                    b = s;
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * PHI
    }
}

impl<T: RingScalar> Add for GoldenValue<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl<'a, T: RingScalar> Add<&'a GoldenValue<T>> for GoldenValue<T> {
    type Output = Self;
    fn add(self, o: &'a Self) -> Self {
        Self::new(self.a + o.a.clone(), self.b + o.b.clone())
    }
}

impl<T: RingScalar> AddAssign<&GoldenValue<T>> for GoldenValue<T> {
    fn add_assign(&mut self, o: &Self) {
        self.a = self.a.clone() + o.a.clone();
        self.b = self.b.clone() + o.b.clone();
    }
}

impl<T: RingScalar> Sub for GoldenValue<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl<T: RingScalar> Neg for GoldenValue<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<T: RingScalar> Mul for GoldenValue<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (a + bφ)(c + dφ) = (ac + bd) + (ad + bc + bd)φ
        let bd = self.b.clone() * o.b.clone();
        Self::new(
            self.a.clone() * o.a.clone() + bd.clone(),
            self.a * o.b + self.b * o.a + bd,
        )
    }
}

impl<T: RingScalar> PartialOrd for GoldenValue<T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl<T: RingScalar> Ord for GoldenValue<T> {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.clone() - o.clone()).signum()
    }
}

impl<T: RingScalar> fmt::Display for GoldenValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = T::zero();
        if self.b == zero {
            write!(f, "{}", self.a)
        } else if self.a == zero {
            write!(f, "{}φ", self.b)
        } else if self.b < zero {
            write!(f, "{}-{}φ", self.a, -self.b.clone())
        } else {
            write!(f, "{}+{}φ", self.a, self.b)
        }
    }
}
