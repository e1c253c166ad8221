//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Representation: map from exponent vector to nonzero rational coefficient,
//! keyed by graded-lex order over the registry order. No zero coefficients
//! are ever stored; exponent vectors always have registry length.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::ArithError;
use crate::symbols::{Symbol, SymbolRegistry};

/// Exponent vector with cached total degree. Ordered graded-lex: total
/// degree first, then lexicographic with earlier registry symbols weighing
/// more.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    total: u32,
    exps: SmallVec<[u8; 64]>,
}

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial {
            total: 0,
            exps: smallvec::smallvec![0; nvars],
        }
    }

    pub fn var(nvars: usize, s: Symbol, e: u8) -> Self {
        let mut m = Self::unit(nvars);
        m.exps[s.index()] = e;
        m.total = e as u32;
        m
    }

    pub fn exp(&self, s: Symbol) -> u8 {
        self.exps[s.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.total
    }

    pub fn is_unit(&self) -> bool {
        self.total == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = self.exps.clone();
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        Monomial {
            total: self.total + other.total,
            exps,
        }
    }

    /// Componentwise division; `None` when not divisible.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial {
            total: self.total - other.total,
            exps,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    fn with_exp(&self, s: Symbol, e: u8) -> Monomial {
        let mut m = self.clone();
        let old = m.exps[s.index()] as u32;
        m.exps[s.index()] = e;
        m.total = m.total - old + e as u32;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total
            .cmp(&other.total)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with `BigRational` coefficients.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    reg: Arc<SymbolRegistry>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(reg: &Arc<SymbolRegistry>) -> Self {
        MultiPoly {
            reg: reg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(reg: &Arc<SymbolRegistry>, c: BigRational) -> Self {
        let mut p = Self::zero(reg);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(reg.len()), c);
        }
        p
    }

    pub fn one(reg: &Arc<SymbolRegistry>) -> Self {
        Self::constant(reg, BigRational::one())
    }

    pub fn from_int(reg: &Arc<SymbolRegistry>, n: i64) -> Self {
        Self::constant(reg, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn symbol(reg: &Arc<SymbolRegistry>, s: Symbol) -> Self {
        let mut p = Self::zero(reg);
        p.terms.insert(Monomial::var(reg.len(), s, 1), BigRational::one());
        p
    }

    pub fn from_terms(
        reg: &Arc<SymbolRegistry>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(reg);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn registry(&self) -> &Arc<SymbolRegistry> {
        &self.reg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_unit() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Monomial::is_unit)
    }

    /// Constant value when `is_constant`; zero polynomial gives 0.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Leading (maximal) term under graded-lex.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.last_key_value()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_same_reg(&self, other: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.reg, &other.reg) || self.reg == other.reg,
            "operands use different symbol registries"
        );
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_reg(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> MultiPoly {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = -c.clone();
        }
        r
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_reg(other);
        let mut r = MultiPoly::zero(&self.reg);
        if self.is_zero() || other.is_zero() {
            return r;
        }
        // Iterate over the smaller operand outside.
        let (a, b) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn mul_scalar(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.reg);
        }
        let mut r = self.clone();
        for v in r.terms.values_mut() {
            *v *= c;
        }
        r
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.reg);
        }
        let mut r = MultiPoly::zero(&self.reg);
        for (mm, cc) in &self.terms {
            r.terms.insert(mm.mul(m), cc * c);
        }
        r
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(&self.reg);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact division; errors when the divisor is zero or does not divide.
    pub fn exact_div(&self, other: &MultiPoly) -> Result<MultiPoly, ArithError> {
        self.assert_same_reg(other);
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.reg);
        let (lm, lc) = {
            let (m, c) = other.leading().unwrap();
            (m.clone(), c.clone())
        };
        while let Some((rm, rc)) = rem.leading() {
            let qm = match rm.div(&lm) {
                Some(qm) => qm,
                None => return Err(ArithError::NonExactDivision),
            };
            let qc = rc / &lc;
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&other.mul_monomial(&qm, &qc));
        }
        Ok(quot)
    }

    pub fn derivative(&self, s: Symbol) -> MultiPoly {
        let mut r = MultiPoly::zero(&self.reg);
        for (m, c) in &self.terms {
            let e = m.exp(s);
            if e > 0 {
                let nm = m.with_exp(s, e - 1);
                r.add_term(nm, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        r
    }

    pub fn degree(&self, s: Symbol) -> i64 {
        self.terms
            .keys()
            .map(|m| m.exp(s) as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.total_degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exp(s) > 0)
    }

    pub fn symbols_present(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for s in self.reg.symbols() {
            if self.contains_symbol(s) {
                out.push(s);
            }
        }
        out
    }

    /// Coefficient of `s^k`, as a polynomial free of `s`.
    pub fn coeff_of(&self, s: Symbol, k: u8) -> MultiPoly {
        let mut r = MultiPoly::zero(&self.reg);
        for (m, c) in &self.terms {
            if m.exp(s) == k {
                r.add_term(m.with_exp(s, 0), c.clone());
            }
        }
        r
    }

    /// View as univariate in `s`: coefficient polynomials by ascending power.
    pub fn as_univariate(&self, s: Symbol) -> Vec<MultiPoly> {
        let d = self.degree(s);
        if d < 0 {
            return vec![];
        }
        (0..=d as u8).map(|k| self.coeff_of(s, k)).collect()
    }

    pub fn from_univariate(reg: &Arc<SymbolRegistry>, s: Symbol, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut r = MultiPoly::zero(reg);
        for (k, c) in coeffs.iter().enumerate() {
            let mk = Monomial::var(reg.len(), s, k as u8);
            for (m, cc) in &c.terms {
                r.add_term(m.mul(&mk), cc.clone());
            }
        }
        r
    }

    /// Substitute polynomials for symbols (simultaneous).
    pub fn substitute_poly(&self, bind: &BTreeMap<Symbol, MultiPoly>) -> MultiPoly {
        let mut r = MultiPoly::zero(&self.reg);
        let mut powers: BTreeMap<(Symbol, u8), MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&self.reg, c.clone());
            let mut rest = Monomial::unit(self.reg.len());
            for s in self.reg.symbols() {
                let e = m.exp(s);
                if e == 0 {
                    continue;
                }
                if let Some(val) = bind.get(&s) {
                    let pw = powers
                        .entry((s, e))
                        .or_insert_with(|| val.pow(e as u32))
                        .clone();
                    term = term.mul(&pw);
                } else {
                    rest = rest.with_exp(s, e);
                }
            }
            r = r.add(&term.mul_monomial(&rest, &BigRational::one()));
        }
        r
    }

    /// Rational content: positive rational `c` with `self = c * primitive`,
    /// where the primitive part has coprime integer coefficients.
    pub fn content(&self) -> BigRational {
        use num_integer::Integer;
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// `(primitive, factor)` with `self = factor * primitive`, primitive with
    /// coprime integer coefficients and positive leading (graded-lex) coeff.
    pub fn int_normalize(&self) -> (MultiPoly, BigRational) {
        if self.is_zero() {
            return (self.clone(), BigRational::one());
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        let inv = c.recip();
        (self.mul_scalar(&inv), c)
    }

    pub fn eval_f64(&self, vals: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for s in self.reg.symbols() {
                let e = m.exp(s);
                if e > 0 {
                    t *= vals[s.index()].powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact evaluation at rational points for the given symbols.
    pub fn eval_rational(&self, vals: &BTreeMap<Symbol, BigRational>) -> MultiPoly {
        let bind: BTreeMap<Symbol, MultiPoly> = vals
            .iter()
            .map(|(s, v)| (*s, MultiPoly::constant(&self.reg, v.clone())))
            .collect();
        self.substitute_poly(&bind)
    }

    pub(crate) fn sorted_terms_desc(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        // Fall back through a scaled quotient for extreme magnitudes.
        let n = c.numer();
        let d = c.denom();
        let shift = (n.bits() as i64 - d.bits() as i64).clamp(-1000, 1000);
        let scaled = if shift > 0 {
            BigRational::new(n.clone(), d.clone() << shift as u64)
        } else {
            BigRational::new(n.clone() << (-shift) as u64, d.clone())
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms_desc() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_unit() {
                parts.push(abs.to_string());
            }
            for s in self.reg.symbols() {
                let e = m.exp(s);
                if e == 1 {
                    parts.push(self.reg.name(s).to_string());
                } else if e > 1 {
                    parts.push(format!("{}^{}", self.reg.name(s), e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
