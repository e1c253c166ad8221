//! Reduced rational functions over the multivariate polynomial ring.
//!
//! Canonical form: numerator and denominator share no factor (content and
//! primitive part both reduced), the denominator has coprime integer
//! coefficients, and its leading graded-lex coefficient is positive. Equal
//! functions therefore have identical representations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ArithError;
use crate::gcd::gcd;
use crate::poly::MultiPoly;
use crate::symbols::{Symbol, SymbolRegistry};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: MultiPoly, den: MultiPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            let reg = num.registry().clone();
            return RatFunc {
                num,
                den: MultiPoly::one(&reg),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides"),
                    den.exact_div(&g).expect("gcd divides"),
                )
            }
        };
        // Normalize the denominator to primitive integer form with positive
        // leading coefficient; the numerator absorbs the scalar.
        let (den_norm, factor) = den.int_normalize();
        let num_norm = num.mul_scalar(&factor.recip());
        RatFunc {
            num: num_norm,
            den: den_norm,
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let reg = p.registry().clone();
        RatFunc {
            num: p,
            den: MultiPoly::one(&reg),
        }
    }

    pub fn zero(reg: &Arc<SymbolRegistry>) -> Self {
        Self::from_poly(MultiPoly::zero(reg))
    }

    pub fn one(reg: &Arc<SymbolRegistry>) -> Self {
        Self::from_poly(MultiPoly::one(reg))
    }

    pub fn from_int(reg: &Arc<SymbolRegistry>, n: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(reg, n))
    }

    pub fn constant(reg: &Arc<SymbolRegistry>, c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(reg, c))
    }

    pub fn symbol(reg: &Arc<SymbolRegistry>, s: Symbol) -> Self {
        Self::from_poly(MultiPoly::symbol(reg, s))
    }

    pub fn registry(&self) -> &Arc<SymbolRegistry> {
        self.num.registry()
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Constant rational value if this is a constant; `None` otherwise.
    pub fn constant_value(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        // Knuth 4.5.1: with reduced inputs n1/d1 + n2/d2 and g = gcd(d1,d2),
        // only t = n1 (d2/g) + n2 (d1/g) and g can share a factor.
        let g = gcd(&self.den, &other.den);
        if g.is_constant() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            let (den, factor) = self.den.mul(&other.den).int_normalize();
            return RatFunc {
                num: num.mul_scalar(&factor.recip()),
                den,
            };
        }
        let d1g = self.den.exact_div(&g).expect("gcd divides");
        let d2g = other.den.exact_div(&g).expect("gcd divides");
        let t = self.num.mul(&d2g).add(&other.num.mul(&d1g));
        if t.is_zero() {
            return RatFunc::zero(self.registry());
        }
        let h = gcd(&t, &g);
        let (num, den) = if h.is_constant() {
            (t, self.den.mul(&d2g))
        } else {
            (
                t.exact_div(&h).expect("gcd divides"),
                self.den.exact_div(&h).expect("gcd divides").mul(&d2g),
            )
        };
        let (den, factor) = den.int_normalize();
        RatFunc {
            num: num.mul_scalar(&factor.recip()),
            den,
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.registry());
        }
        // Cross-reduce; afterwards numerator and denominator are coprime
        // (products of pairwise coprime factors), so no final gcd is needed.
        let (n1, d2) = if other.den.is_constant() {
            (self.num.clone(), other.den.clone())
        } else {
            let g1 = gcd(&self.num, &other.den);
            if g1.is_constant() {
                (self.num.clone(), other.den.clone())
            } else {
                (
                    self.num.exact_div(&g1).expect("gcd divides"),
                    other.den.exact_div(&g1).expect("gcd divides"),
                )
            }
        };
        let (n2, d1) = if self.den.is_constant() {
            (other.num.clone(), self.den.clone())
        } else {
            let g2 = gcd(&other.num, &self.den);
            if g2.is_constant() {
                (other.num.clone(), self.den.clone())
            } else {
                (
                    other.num.exact_div(&g2).expect("gcd divides"),
                    self.den.exact_div(&g2).expect("gcd divides"),
                )
            }
        };
        let (den, factor) = d1.mul(&d2).int_normalize();
        RatFunc {
            num: n1.mul(&n2).mul_scalar(&factor.recip()),
            den,
        }
    }

    pub fn mul_scalar(&self, c: &BigRational) -> RatFunc {
        RatFunc {
            num: self.num.mul_scalar(c),
            den: if c.is_zero() {
                MultiPoly::one(self.registry())
            } else {
                self.den.clone()
            },
        }
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, ArithError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn recip(&self) -> Result<RatFunc, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // Inputs are reduced, so a swap only needs renormalizing.
        let (den, factor) = self.num.int_normalize();
        Ok(RatFunc {
            num: self.den.mul_scalar(&factor.recip()),
            den,
        })
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc, ArithError> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        Ok(RatFunc {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        })
    }

    /// Exact partial derivative via the quotient rule. The repeated part
    /// `gcd(d, d')` of the denominator is split off first so the final
    /// reduction works on small operands.
    pub fn differentiate(&self, s: Symbol) -> RatFunc {
        let dn = self.num.derivative(s);
        if self.den.is_constant() {
            return Self::reduced(dn, self.den.clone());
        }
        let dd = self.den.derivative(s);
        if dd.is_zero() {
            return Self::reduced(dn, self.den.clone());
        }
        let g = gcd(&self.den, &dd);
        let e = self.den.exact_div(&g).expect("gcd divides");
        let ddg = dd.exact_div(&g).expect("gcd divides");
        let num = dn.mul(&e).sub(&self.num.mul(&ddg));
        let den = self.den.mul(&e);
        Self::reduced(num, den)
    }

    /// Simultaneous substitution of rational functions for symbols.
    pub fn substitute(&self, bind: &BTreeMap<Symbol, RatFunc>) -> Result<RatFunc, ArithError> {
        let n = eval_poly_at(&self.num, bind);
        let d = eval_poly_at(&self.den, bind);
        if d.is_zero() {
            return Err(ArithError::DenominatorVanishesIdentically);
        }
        n.div(&d)
    }

    pub fn eval_f64(&self, vals: &[f64]) -> Result<f64, crate::error::NumericError> {
        let d = self.den.eval_f64(vals);
        if d.abs() < 1e-12 {
            return Err(crate::error::NumericError::NearPole);
        }
        Ok(self.num.eval_f64(vals) / d)
    }

    /// Exact evaluation of selected symbols at rational values.
    pub fn eval_rational(
        &self,
        vals: &BTreeMap<Symbol, BigRational>,
    ) -> Result<RatFunc, ArithError> {
        let bind: BTreeMap<Symbol, RatFunc> = vals
            .iter()
            .map(|(s, v)| (*s, RatFunc::constant(self.registry(), v.clone())))
            .collect();
        self.substitute(&bind)
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.num.contains_symbol(s) || self.den.contains_symbol(s)
    }

    /// Degree in `s` of the numerator minus the denominator.
    pub fn degree(&self, s: Symbol) -> i64 {
        self.num.degree(s) - self.den.degree(s).max(0)
    }

    /// Split by powers of `s`, requiring a denominator free of `s`.
    /// Returns coefficients of `s^0, s^1, ...` as rational functions.
    pub fn split_by_symbol(&self, s: Symbol) -> Option<Vec<RatFunc>> {
        if self.den.contains_symbol(s) {
            return None;
        }
        let deg = self.num.degree(s).max(0);
        let mut out = Vec::with_capacity(deg as usize + 1);
        for k in 0..=deg {
            let c = self.num.coeff_of(s, k as u8);
            out.push(RatFunc::reduced(c, self.den.clone()));
        }
        Some(out)
    }
}

/// Evaluate a polynomial with symbols substituted by rational functions.
pub fn eval_poly_at(p: &MultiPoly, bind: &BTreeMap<Symbol, RatFunc>) -> RatFunc {
    let reg = p.registry().clone();
    let mut acc = RatFunc::zero(&reg);
    let mut powers: BTreeMap<(Symbol, u8), RatFunc> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut term = RatFunc::constant(&reg, c.clone());
        let mut rest = crate::poly::Monomial::unit(reg.len());
        for s in reg.symbols() {
            let e = m.exp(s);
            if e == 0 {
                continue;
            }
            if let Some(val) = bind.get(&s) {
                let pw = powers
                    .entry((s, e))
                    .or_insert_with(|| val.pow(e as i64).expect("positive power"))
                    .clone();
                term = term.mul(&pw);
            } else {
                rest = rest.mul(&crate::poly::Monomial::var(reg.len(), s, e));
            }
        }
        let rest_poly =
            MultiPoly::from_terms(&reg, [(rest, BigRational::one())]);
        term = term.mul(&RatFunc::from_poly(rest_poly));
        acc = acc.add(&term);
    }
    acc
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}

pub fn big_rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
