use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::{gcd, monomial_lcm};
use super::poly::{Monomial, Poly};
use super::ScalarError;

/// An exact element of `Q(params)`.
///
/// The representation is canonical: numerator and denominator are coprime and
/// the denominator is monic in graded-lex order, so structural equality is
/// equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_poly(Poly::int(n))
    }

    pub fn rational(r: BigRational) -> Self {
        Scalar::from_poly(Poly::constant(r))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The `v`-th parameter of the ambient parameter space.
    pub fn param(v: usize) -> Self {
        Scalar::from_poly(Poly::var(v))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// `num / den`, reduced to canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Scalar::make_monic(num, den)
    }

    fn make_monic(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Parameter-free value, if any.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Bit set of the parameters that occur.
    pub fn support(&self) -> u64 {
        self.num.support() | self.den.support()
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        if k == 0 {
            return Ok(Scalar::one());
        }
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = k as u32;
        if self.den.is_one() {
            return Ok(Scalar::from_poly(self.num.pow(k)));
        }
        // Powers of coprime polynomials stay coprime.
        Ok(Scalar::make_monic(self.num.pow(k), self.den.pow(k)))
    }

    /// Integer power of a known unit; panics on a zero base with negative exponent.
    pub fn powi(&self, k: i64) -> Scalar {
        self.pow(k).expect("power of an invertible scalar")
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// Substitutes rational values for some parameters; `None` entries stay symbolic.
    pub fn substitute(&self, values: &[Option<BigRational>]) -> Result<Scalar, ScalarError> {
        let num = self.num.substitute(values);
        let den = self.den.substitute(values);
        if den.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(Scalar::normalize(num, den))
    }

    /// Exact rational value at a full assignment.
    pub fn evaluate(&self, values: &[BigRational]) -> Result<BigRational, ScalarError> {
        let vals: Vec<Option<BigRational>> = values.iter().cloned().map(Some).collect();
        let s = self.substitute(&vals)?;
        s.as_rational().ok_or(ScalarError::Unassigned)
    }

    /// `c * x0^e0 * x1^e1 * ...` as a scalar, with signed exponents.
    pub fn laurent_monomial(c: BigRational, exps: &[i32]) -> Scalar {
        let pos: Vec<u16> = exps.iter().map(|&e| e.max(0) as u16).collect();
        let neg: Vec<u16> = exps.iter().map(|&e| (-e).max(0) as u16).collect();
        Scalar::make_monic(
            Poly::term(Monomial::from_exponents(&pos), c),
            Poly::term(Monomial::from_exponents(&neg), BigRational::one()),
        )
    }

    fn add_impl(&self, rhs: &Scalar, negate: bool) -> Scalar {
        let rnum = if negate { rhs.num.neg() } else { rhs.num.clone() };
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return Scalar {
                num: rnum,
                den: rhs.den.clone(),
            };
        }
        if self.den == rhs.den {
            let num = self.num.add(&rnum);
            if self.den.is_one() {
                return Scalar::from_poly(num);
            }
            return Scalar::normalize(num, self.den.clone());
        }
        if self.den.is_monomial() && rhs.den.is_monomial() {
            // Both denominators are monic monomials.
            let da = &self.den.terms()[0].0;
            let db = &rhs.den.terms()[0].0;
            let l = monomial_lcm(da, db);
            let num = self
                .num
                .mul_monomial(&da.quotient_of(&l))
                .add(&rnum.mul_monomial(&db.quotient_of(&l)));
            if num.is_zero() {
                return Scalar::zero();
            }
            let c = num.monomial_content().meet(&l);
            return Scalar {
                num: num.div_monomial(&c),
                den: Poly::term(c.quotient_of(&l), BigRational::one()),
            };
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rnum.mul(&self.den));
            let den = self.den.mul(&rhs.den);
            // Coprime denominators: any common factor of num and den is impossible.
            return Scalar::make_monic_nonzero(num, den);
        }
        let a1 = self.den.div_exact(&g).expect("gcd divides");
        let b1 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&b1).add(&rnum.mul(&a1));
        if num.is_zero() {
            return Scalar::zero();
        }
        let den = a1.mul(&rhs.den);
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            Scalar::make_monic(num, den)
        } else {
            Scalar::make_monic(
                num.div_exact(&g2).expect("gcd divides"),
                den.div_exact(&g2).expect("gcd divides"),
            )
        }
    }

    fn make_monic_nonzero(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            Scalar::zero()
        } else {
            Scalar::make_monic(num, den)
        }
    }

    fn mul_impl(&self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        if let Some(c) = self.as_rational() {
            return Scalar {
                num: rhs.num.scale(&c),
                den: rhs.den.clone(),
            };
        }
        if let Some(c) = rhs.as_rational() {
            return Scalar {
                num: self.num.scale(&c),
                den: self.den.clone(),
            };
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.div_exact(&g1).expect("gcd divides"),
                rhs.den.div_exact(&g1).expect("gcd divides"),
            )
        };
        let (n2, d1) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.div_exact(&g2).expect("gcd divides"),
                self.den.div_exact(&g2).expect("gcd divides"),
            )
        };
        Scalar::make_monic(n1.mul(&n2), d1.mul(&d2))
    }

    /// Evaluates a univariate-style value like `1 + p + ... + p^(k-1)`.
    pub fn quantum_integer(p: &Scalar, k: u32) -> Scalar {
        let mut acc = Scalar::zero();
        let mut pw = Scalar::one();
        for _ in 0..k {
            acc = &acc + &pw;
            pw = &pw * p;
        }
        acc
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.mul_impl(rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_impl(&rhs, false)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.add_impl(&rhs, true)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_impl(&rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "({:?})", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}
