//! Truncated Laurent and Puiseux series about a movable point.
//!
//! A series lives in a local variable `s` with `s^ram = (var - point)/scale`
//! and stores integer-exponent coefficients in the rational-function field
//! over the remaining symbols. `trunc` is the first unknown exponent: all
//! coefficients at exponents `< trunc` are exact, everything above is
//! `O(s^trunc)`. Every operation propagates truncation conservatively
//! (product order is `min(Na + val(b), Nb + val(a))`); nothing ever reports
//! digits the inputs do not justify.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::SeriesError;
use crate::ratfunc::RatFunc;
use crate::symbols::{Symbol, SymbolRegistry};

/// Truncation order used for exactly-known series (polynomials in `s`).
pub const EXACT_ORDER: i64 = i64::MAX / 8;

/// Expansion frame shared by all members of a solution tuple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expansion {
    pub var: Symbol,
    pub point: RatFunc,
    pub ram: u32,
    pub scale: RatFunc,
}

impl Expansion {
    pub fn laurent(reg: &Arc<SymbolRegistry>, var: Symbol, point: RatFunc) -> Self {
        Expansion {
            var,
            point,
            ram: 1,
            scale: RatFunc::one(reg),
        }
    }

    pub fn ramified(var: Symbol, point: RatFunc, ram: u32, scale: RatFunc) -> Self {
        assert!(ram >= 1);
        assert!(!scale.is_zero());
        Expansion {
            var,
            point,
            ram,
            scale,
        }
    }

    pub fn registry(&self) -> &Arc<SymbolRegistry> {
        self.point.registry()
    }

    /// `var` itself as a series: `point + scale * s^ram`, exact.
    pub fn var_series(&self) -> TruncatedSeries {
        let mut coeffs = BTreeMap::new();
        if !self.point.is_zero() {
            coeffs.insert(0, self.point.clone());
        }
        coeffs.insert(self.ram as i64, self.scale.clone());
        TruncatedSeries {
            exp: self.clone(),
            coeffs,
            trunc: EXACT_ORDER,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    exp: Expansion,
    coeffs: BTreeMap<i64, RatFunc>,
    trunc: i64,
}

fn sat(a: i64, b: i64) -> i64 {
    a.saturating_add(b).min(EXACT_ORDER)
}

impl TruncatedSeries {
    pub fn zero(exp: &Expansion, trunc: i64) -> Self {
        TruncatedSeries {
            exp: exp.clone(),
            coeffs: BTreeMap::new(),
            trunc,
        }
    }

    /// Constant (exact) series from a coefficient free of the local data.
    pub fn constant(exp: &Expansion, c: RatFunc) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        TruncatedSeries {
            exp: exp.clone(),
            coeffs,
            trunc: EXACT_ORDER,
        }
    }

    pub fn monomial(exp: &Expansion, n: i64, c: RatFunc, trunc: i64) -> Self {
        let mut s = Self::zero(exp, trunc);
        s.set_coeff(n, c);
        s
    }

    pub fn from_coeffs(
        exp: &Expansion,
        coeffs: impl IntoIterator<Item = (i64, RatFunc)>,
        trunc: i64,
    ) -> Self {
        let mut s = Self::zero(exp, trunc);
        for (n, c) in coeffs {
            s.set_coeff(n, c);
        }
        s
    }

    pub fn expansion(&self) -> &Expansion {
        &self.exp
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn registry(&self) -> &Arc<SymbolRegistry> {
        self.exp.registry()
    }

    pub fn set_coeff(&mut self, n: i64, c: RatFunc) {
        debug_assert!(n < self.trunc, "coefficient beyond truncation");
        if c.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, c);
        }
    }

    /// Known coefficient at exponent `n`: `Some(value)` when `n < trunc`
    /// (zero if absent), `None` when the exponent is beyond the truncation.
    pub fn coeff(&self, n: i64) -> Option<RatFunc> {
        if n >= self.trunc {
            return None;
        }
        Some(
            self.coeffs
                .get(&n)
                .cloned()
                .unwrap_or_else(|| RatFunc::zero(self.registry())),
        )
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &RatFunc)> {
        self.coeffs.iter()
    }

    /// Exact valuation when a nonzero coefficient is known.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Lower bound for the valuation: the leading known exponent, or the
    /// truncation order for an all-zero (so far) series.
    pub fn valuation_bound(&self) -> i64 {
        self.valuation().unwrap_or(self.trunc)
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.exp.var != other.exp.var
            || self.exp.point != other.exp.point
            || self.exp.scale != other.exp.scale
        {
            return Err(SeriesError::IncompatibleExpansionPoints);
        }
        Ok(())
    }

    /// Re-index into a finer ramification (a multiple of the current one).
    pub fn with_ramification(&self, ram: u32) -> TruncatedSeries {
        assert!(ram % self.exp.ram == 0);
        let k = (ram / self.exp.ram) as i64;
        if k == 1 {
            return self.clone();
        }
        let exp = Expansion {
            ram,
            ..self.exp.clone()
        };
        TruncatedSeries {
            exp,
            coeffs: self.coeffs.iter().map(|(n, c)| (n * k, c.clone())).collect(),
            trunc: self.trunc.saturating_mul(k).min(EXACT_ORDER),
        }
    }

    /// Inverse of `with_ramification` when all exponents allow it.
    pub fn reduce_ramification(&self, ram: u32) -> Option<TruncatedSeries> {
        assert!(self.exp.ram % ram == 0);
        let k = (self.exp.ram / ram) as i64;
        if k == 1 {
            return Some(self.clone());
        }
        let mut coeffs = BTreeMap::new();
        for (n, c) in &self.coeffs {
            if n % k != 0 {
                return None;
            }
            coeffs.insert(n / k, c.clone());
        }
        let exp = Expansion {
            ram,
            ..self.exp.clone()
        };
        Some(TruncatedSeries {
            exp,
            coeffs,
            trunc: self.trunc.div_euclid(k),
        })
    }

    fn merged(a: &TruncatedSeries, b: &TruncatedSeries) -> (TruncatedSeries, TruncatedSeries) {
        if a.exp.ram == b.exp.ram {
            (a.clone(), b.clone())
        } else {
            let l = num_integer::lcm(a.exp.ram, b.exp.ram);
            (a.with_ramification(l), b.with_ramification(l))
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(other).expect("incompatible series");
        let (a, b) = Self::merged(self, other);
        let trunc = a.trunc.min(b.trunc);
        let mut r = TruncatedSeries::zero(&a.exp, trunc);
        for (n, c) in &a.coeffs {
            if *n < trunc {
                r.set_coeff(*n, c.clone());
            }
        }
        for (n, c) in &b.coeffs {
            if *n < trunc {
                let cur = r.coeff(*n).unwrap();
                r.set_coeff(*n, cur.add(c));
            }
        }
        r
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            exp: self.exp.clone(),
            coeffs: self.coeffs.iter().map(|(n, c)| (*n, c.neg())).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(other).expect("incompatible series");
        let (a, b) = Self::merged(self, other);
        let trunc = sat(a.trunc, b.valuation_bound()).min(sat(b.trunc, a.valuation_bound()));
        let mut acc: BTreeMap<i64, RatFunc> = BTreeMap::new();
        for (na, ca) in &a.coeffs {
            for (nb, cb) in &b.coeffs {
                let n = na + nb;
                if n >= trunc {
                    continue;
                }
                let prod = ca.mul(cb);
                if prod.is_zero() {
                    continue;
                }
                match acc.entry(n) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = e.get().add(&prod);
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                }
            }
        }
        TruncatedSeries {
            exp: a.exp.clone(),
            coeffs: acc,
            trunc,
        }
    }

    pub fn mul_coeff(&self, c: &RatFunc) -> TruncatedSeries {
        if c.is_zero() {
            return TruncatedSeries::zero(&self.exp, EXACT_ORDER);
        }
        TruncatedSeries {
            exp: self.exp.clone(),
            coeffs: self.coeffs.iter().map(|(n, v)| (*n, v.mul(c))).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiply by the local monomial `s^k` (exact shift).
    pub fn shift(&self, k: i64) -> TruncatedSeries {
        TruncatedSeries {
            exp: self.exp.clone(),
            coeffs: self.coeffs.iter().map(|(n, c)| (n + k, c.clone())).collect(),
            trunc: sat(self.trunc, k),
        }
    }

    pub fn pow(&self, e: u32) -> TruncatedSeries {
        if e == 0 {
            return TruncatedSeries::constant(&self.exp, RatFunc::one(self.registry()));
        }
        let mut result = self.clone();
        for _ in 1..e {
            result = result.mul(self);
        }
        result
    }

    /// Derivative with respect to the outer variable:
    /// `d/dvar (c s^n) = (n / (ram * scale)) c s^(n - ram)`.
    pub fn derivative(&self) -> TruncatedSeries {
        let reg = self.registry().clone();
        let ram = self.exp.ram as i64;
        let factor = self.exp.scale.recip().expect("scale nonzero");
        let mut coeffs = BTreeMap::new();
        for (n, c) in &self.coeffs {
            if *n == 0 {
                continue;
            }
            let k = RatFunc::constant(
                &reg,
                BigRational::new(BigInt::from(*n), BigInt::from(ram)),
            );
            let v = c.mul(&k).mul(&factor);
            if !v.is_zero() {
                coeffs.insert(n - ram, v);
            }
        }
        TruncatedSeries {
            exp: self.exp.clone(),
            coeffs,
            trunc: sat(self.trunc, -ram),
        }
    }

    /// Multiplicative inverse. The result satisfies
    /// `self * invert(self) = 1 + O(s^(N - 2 val))`. An exact series with
    /// more than one term has an inverse of unbounded support; use
    /// [`TruncatedSeries::invert_to`] for those.
    pub fn invert(&self) -> Result<TruncatedSeries, SeriesError> {
        let out_trunc = sat(self.trunc, -2 * self.valuation_bound());
        assert!(
            out_trunc < EXACT_ORDER / 2 || self.coeffs.len() <= 1,
            "inverting an exact multi-term series requires invert_to"
        );
        self.invert_to(out_trunc)
    }

    /// Multiplicative inverse, truncated at `min(out_trunc, N - 2 val)`.
    pub fn invert_to(&self, out_trunc: i64) -> Result<TruncatedSeries, SeriesError> {
        let v = match self.valuation() {
            Some(v) => v,
            None => return Err(SeriesError::ZeroLeadingCoefficient),
        };
        let lead = self.coeffs.get(&v).unwrap().clone();
        let lead_inv = lead.recip().expect("leading coefficient nonzero");
        let out_trunc = out_trunc.min(sat(self.trunc, -2 * v));
        // b_m for m in [-v, out_trunc): recurrence from (self * b = 1).
        let mut out: BTreeMap<i64, RatFunc> = BTreeMap::new();
        if -v >= out_trunc {
            return Ok(TruncatedSeries {
                exp: self.exp.clone(),
                coeffs: out,
                trunc: out_trunc,
            });
        }
        out.insert(-v, lead_inv.clone());
        if self.coeffs.len() == 1 {
            // Monomial: the inverse is exact.
            return Ok(TruncatedSeries {
                exp: self.exp.clone(),
                coeffs: out,
                trunc: out_trunc,
            });
        }
        let mut m = -v + 1;
        while m < out_trunc {
            // coefficient of s^(m+v) in self*b must vanish:
            // sum_{j>=0} a_{v+j} b_{m-j} = 0  =>  b_m = -(1/a_v) sum_{j>=1} ...
            let mut acc = RatFunc::zero(self.registry());
            for (na, ca) in self.coeffs.range(v + 1..) {
                let j = na - v;
                if j > m + v {
                    break;
                }
                if let Some(bc) = out.get(&(m - j)) {
                    acc = acc.add(&ca.mul(bc));
                }
            }
            if !acc.is_zero() {
                out.insert(m, acc.mul(&lead_inv).neg());
            }
            m += 1;
        }
        Ok(TruncatedSeries {
            exp: self.exp.clone(),
            coeffs: out,
            trunc: out_trunc,
        })
    }

    /// Finite limit as `var -> point`: the constant coefficient, provided no
    /// negative exponent carries a nonzero coefficient.
    pub fn limit(&self) -> Result<RatFunc, SeriesError> {
        if self.trunc <= 0 {
            return Err(SeriesError::InsufficientOrder {
                requested: 1,
                available: self.trunc,
            });
        }
        if let Some((n, c)) = self.coeffs.iter().next() {
            if *n < 0 {
                return Err(SeriesError::DivergentLimit {
                    exponent: *n,
                    coeff: c.to_string(),
                });
            }
        }
        Ok(self.coeff(0).unwrap())
    }

    /// Error unless every exponent `< n` is known.
    pub fn require_known_through(&self, n: i64) -> Result<(), SeriesError> {
        if self.trunc < n {
            return Err(SeriesError::InsufficientOrder {
                requested: n,
                available: self.trunc,
            });
        }
        Ok(())
    }

    /// Drop knowledge above `trunc` (used to align orders in tests).
    pub fn truncate(&self, trunc: i64) -> TruncatedSeries {
        let t = trunc.min(self.trunc);
        TruncatedSeries {
            exp: self.exp.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(n, _)| **n < t)
                .map(|(n, c)| (*n, c.clone()))
                .collect(),
            trunc: t,
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reg = self.registry();
        let base = if self.exp.ram == 1 && self.exp.scale.is_one() {
            format!("({} - {})", reg.name(self.exp.var), self.exp.point)
        } else {
            "s".to_string()
        };
        let mut first = true;
        for (n, c) in &self.coeffs {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if *n == 0 {
                write!(f, "({c})")?;
            } else if *n == 1 {
                write!(f, "({c}) * {base}")?;
            } else {
                write!(f, "({c}) * {base}^({n})")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if self.trunc < EXACT_ORDER {
            write!(f, " + O({base}^({}))", self.trunc)?;
        }
        Ok(())
    }
}

/// Header line describing a ramified/scaled frame, for report output.
pub fn frame_description(exp: &Expansion) -> String {
    let reg = exp.registry();
    if exp.ram == 1 && exp.scale.is_one() {
        format!("series in ({} - {})", reg.name(exp.var), exp.point)
    } else {
        format!(
            "series in s with s^{} = ({} - {})/({})",
            exp.ram,
            reg.name(exp.var),
            exp.point,
            exp.scale
        )
    }
}

/// Expand a rational function along bound series. Symbols not bound pass
/// through as coefficient symbols; the expansion variable itself must be
/// bound explicitly by the caller when it appears in `f`. `work_order`
/// bounds inversions of exact denominators (the result's truncation field
/// reflects any such cap, so no unknown digit is ever reported as known).
pub fn substitute_ratfunc(
    f: &RatFunc,
    bind: &BTreeMap<Symbol, TruncatedSeries>,
    exp: &Expansion,
    work_order: i64,
) -> Result<TruncatedSeries, SeriesError> {
    let num = substitute_poly(f.numer(), bind, exp);
    if f.denom().is_one() {
        return Ok(num);
    }
    let den = substitute_poly(f.denom(), bind, exp);
    let natural = sat(den.trunc, -2 * den.valuation_bound());
    let cap = if natural >= EXACT_ORDER / 2 {
        work_order.saturating_sub(den.valuation_bound())
    } else {
        natural
    };
    let inv = den.invert_to(cap)?;
    Ok(num.mul(&inv))
}

fn substitute_poly(
    p: &crate::poly::MultiPoly,
    bind: &BTreeMap<Symbol, TruncatedSeries>,
    exp: &Expansion,
) -> TruncatedSeries {
    let reg = p.registry().clone();
    let mut acc = TruncatedSeries::zero(exp, EXACT_ORDER);
    let mut powers: BTreeMap<(Symbol, u8), TruncatedSeries> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut coeff_mono = crate::poly::Monomial::unit(reg.len());
        let mut series_part: Option<TruncatedSeries> = None;
        for s in reg.symbols() {
            let e = m.exp(s);
            if e == 0 {
                continue;
            }
            if let Some(val) = bind.get(&s) {
                let pw = powers
                    .entry((s, e))
                    .or_insert_with(|| val.pow(e as u32))
                    .clone();
                series_part = Some(match series_part {
                    None => pw,
                    Some(sp) => sp.mul(&pw),
                });
            } else {
                coeff_mono = coeff_mono.mul(&crate::poly::Monomial::var(reg.len(), s, e));
            }
        }
        let coeff = RatFunc::from_poly(crate::poly::MultiPoly::from_terms(
            &reg,
            [(coeff_mono, c.clone())],
        ));
        let term = match series_part {
            None => TruncatedSeries::constant(exp, coeff),
            Some(sp) => sp.mul_coeff(&coeff),
        };
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_ratfunc;

    fn frame() -> Expansion {
        let reg = SymbolRegistry::standard();
        let alpha = RatFunc::symbol(&reg, reg.sym("alpha"));
        Expansion::laurent(&reg, reg.sym("t1"), alpha)
    }

    fn rf(text: &str) -> RatFunc {
        parse_ratfunc(&SymbolRegistry::standard(), text).unwrap()
    }

    #[test]
    fn multiply_by_local_variable() {
        // (hbar/s - alpha + O(s)) * s = hbar - alpha s + O(s^2)
        let e = frame();
        let a = TruncatedSeries::from_coeffs(&e, [(-1, rf("hbar")), (0, rf("-alpha"))], 1);
        let s = TruncatedSeries::monomial(&e, 1, rf("1"), EXACT_ORDER);
        let p = a.mul(&s);
        assert_eq!(p.coeff(0).unwrap(), rf("hbar"));
        assert_eq!(p.coeff(1).unwrap(), rf("-alpha"));
        assert_eq!(p.truncation(), 2);
    }

    #[test]
    fn derivative_power_rule() {
        // d/dt1 hbar (t1-alpha)^-1 = -hbar (t1-alpha)^-2
        let e = frame();
        let a = TruncatedSeries::monomial(&e, -1, rf("hbar"), EXACT_ORDER);
        let d = a.derivative();
        assert_eq!(d.coeff(-2).unwrap(), rf("-hbar"));
    }

    #[test]
    fn leading_product_of_pole_series() {
        // q ~ hbar/s, p ~ -hbar/(4s): q*p ~ -hbar^2/(4 s^2)
        let e = frame();
        let q = TruncatedSeries::from_coeffs(&e, [(-1, rf("hbar")), (0, rf("-alpha"))], 4);
        let p = TruncatedSeries::from_coeffs(&e, [(-1, rf("-hbar/4")), (0, rf("-alpha/4"))], 4);
        let prod = q.mul(&p);
        assert_eq!(prod.coeff(-2).unwrap(), rf("-hbar^2/4"));
    }

    #[test]
    fn invert_geometric() {
        let e = frame();
        let a = TruncatedSeries::from_coeffs(&e, [(0, rf("1")), (1, rf("1"))], 6);
        let inv = a.invert().unwrap();
        for k in 0..5 {
            let expect = if k % 2 == 0 { rf("1") } else { rf("-1") };
            assert_eq!(inv.coeff(k).unwrap(), expect, "coefficient {k}");
        }
        // a * invert(a) = 1 + O(s^N)
        let prod = a.mul(&inv);
        assert_eq!(prod.coeff(0).unwrap(), rf("1"));
        for k in 1..prod.truncation() {
            assert!(prod.coeff(k).unwrap().is_zero());
        }
    }

    #[test]
    fn invert_pure_pole() {
        let e = frame();
        let a = TruncatedSeries::monomial(&e, -1, rf("hbar"), EXACT_ORDER);
        let inv = a.invert().unwrap();
        assert_eq!(inv.coeff(1).unwrap(), rf("1/hbar"));
        assert_eq!(inv.valuation(), Some(1));
    }

    #[test]
    fn limit_detects_divergence() {
        let e = frame();
        let a = TruncatedSeries::from_coeffs(&e, [(-1, rf("hbar")), (0, rf("1"))], 3);
        match a.limit() {
            Err(SeriesError::DivergentLimit { exponent, .. }) => assert_eq!(exponent, -1),
            other => panic!("expected divergence, got {other:?}"),
        }
        let b = TruncatedSeries::from_coeffs(&e, [(0, rf("alpha")), (1, rf("1"))], 3);
        assert_eq!(b.limit().unwrap(), rf("alpha"));
    }

    #[test]
    fn ramification_round_trip() {
        let e = frame();
        let a = TruncatedSeries::from_coeffs(&e, [(-1, rf("hbar")), (2, rf("beta"))], 5);
        let up = a.with_ramification(3);
        assert_eq!(up.coeff(-3).unwrap(), rf("hbar"));
        let back = up.reduce_ramification(1).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn substitute_along_solution_projection() {
        let reg = SymbolRegistry::standard();
        let e = frame();
        let q1 = TruncatedSeries::from_coeffs(&e, [(-5, rf("-hbar^5")), (-3, rf("beta*hbar^3"))], 0);
        let mut bind = BTreeMap::new();
        bind.insert(reg.sym("q1"), q1.clone());
        let f = rf("q1");
        let got = substitute_ratfunc(&f, &bind, &e, 40).unwrap();
        assert_eq!(got, q1);
    }

    #[test]
    fn substitute_with_denominator() {
        // 1/(x - q) along q = hbar/s + O(s^2): valuation +1 in s, and the
        // product identity (x - q) * invert = 1 holds to the known order.
        let reg = SymbolRegistry::standard();
        let e = frame();
        let q = TruncatedSeries::from_coeffs(&e, [(-1, rf("hbar")), (0, rf("-alpha"))], 2);
        let mut bind = BTreeMap::new();
        bind.insert(reg.sym("q"), q);
        let f = rf("1/(x - q)");
        let got = substitute_ratfunc(&f, &bind, &e, 40).unwrap();
        assert_eq!(got.valuation(), Some(1));
        assert_eq!(got.coeff(1).unwrap(), rf("-1/hbar"));
    }

    #[test]
    fn derivative_with_scale_and_ramification() {
        // s^3 = (t2 - b)/kappa with kappa symbolic:
        // d/dt2 (c s^n) = (n/(3 kappa)) c s^(n-3).
        let reg = SymbolRegistry::standard();
        let e = Expansion::ramified(
            reg.sym("t2"),
            RatFunc::symbol(&reg, reg.sym("b")),
            3,
            RatFunc::symbol(&reg, reg.sym("kappa")),
        );
        let a = TruncatedSeries::monomial(&e, 1, rf("c1"), EXACT_ORDER);
        let d = a.derivative();
        assert_eq!(d.coeff(-2).unwrap(), rf("c1/(3*kappa)"));
    }
}
