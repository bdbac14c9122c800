use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    F2,
    Q,
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::F2 => Scalar::F2(false),
            Field::Q => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::F2 => Scalar::F2(true),
            Field::Q => Scalar::Q(BigRational::one()),
        }
    }

    pub fn int(self, v: i64) -> Scalar {
        match self {
            Field::F2 => Scalar::F2(v.rem_euclid(2) == 1),
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// `(-1)^e`.
    pub fn sign(self, e: i64) -> Scalar {
        if e.rem_euclid(2) == 0 {
            self.one()
        } else {
            -self.one()
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Field::F2 => "f2",
            Field::Q => "q",
        }
    }
}

/// An exact field element tagged by its field.
///
/// Arithmetic between elements of different fields panics; matrix-level
/// entry points check field agreement and report it as an error instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    F2(bool),
    Q(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::F2(_) => Field::F2,
            Scalar::Q(_) => Field::Q,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::F2(b) => !*b,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::F2(b) => *b,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::F2(true) => Some(Scalar::F2(true)),
            Scalar::F2(false) => None,
            Scalar::Q(q) if q.is_zero() => None,
            Scalar::Q(q) => Some(Scalar::Q(q.recip())),
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Sign of a rational value; F2 elements report 1 when nonzero.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::F2(b) => i32::from(*b),
            Scalar::Q(q) => {
                if q.is_zero() {
                    0
                } else if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::F2(a), Scalar::F2(b)) => *a ^= *b,
            (Scalar::Q(a), Scalar::Q(b)) => *a += b,
            _ => panic!("field mismatch in scalar addition"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::F2(b) => write!(f, "{}", u8::from(*b)),
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::F2(a), Scalar::F2(b)) => Scalar::F2(a ^ b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => panic!("field mismatch in scalar addition"),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::F2(a), Scalar::F2(b)) => Scalar::F2(a ^ b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            _ => panic!("field mismatch in scalar subtraction"),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::F2(a), Scalar::F2(b)) => Scalar::F2(*a && *b),
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => panic!("field mismatch in scalar multiplication"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::F2(a) => Scalar::F2(*a),
            Scalar::Q(a) => Scalar::Q(-a),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(&self)
    }
}
