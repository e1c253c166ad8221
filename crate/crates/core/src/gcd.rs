//! Multivariate GCD, resultants, discriminants.
//!
//! GCD uses recursive content/primitive-part reduction to a primitive
//! pseudo-remainder sequence in the last-occurring registry symbol. The
//! resultant is a Sylvester determinant computed with fraction-free Bareiss
//! elimination; both stay exact over the rationals.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::ArithError;
use crate::poly::MultiPoly;
use crate::symbols::Symbol;

/// Greatest common divisor: primitive (coprime integer coefficients) with
/// positive leading graded-lex coefficient. `gcd(0,0) = 0` by convention.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.int_normalize().0;
    }
    if b.is_zero() {
        return a.int_normalize().0;
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.registry());
    }
    // Monomial operands reduce to a componentwise exponent minimum.
    if a.num_terms() == 1 || b.num_terms() == 1 {
        return monomial_gcd(a, b);
    }
    if a == b {
        return a.int_normalize().0;
    }
    // Split off common monomial content before anything heavy.
    let ma = monomial_content(a);
    let mb = monomial_content(b);
    let common = monomial_min(&ma.0, &mb.0, a);
    let (ar, br) = if common.is_unit() {
        (a.clone(), b.clone())
    } else {
        let cm = MultiPoly::from_terms(a.registry(), [(common.clone(), num_traits::One::one())]);
        (
            a.exact_div(&cm).expect("monomial content divides"),
            b.exact_div(&cm).expect("monomial content divides"),
        )
    };
    // Quick exact-division probes catch the frequent divisor case.
    if let Some(g) = try_division_gcd(&ar, &br) {
        return attach_monomial(&g, &common, a);
    }
    // Evaluation prefilter: for each shared variable, a univariate gcd at a
    // degree-preserving point certifies whether the true gcd can contain
    // that variable at all. Most gcd calls are coprime and exit here.
    let sa = ar.symbols_present();
    let sb = br.symbols_present();
    let shared: Vec<Symbol> = sa.iter().copied().filter(|s| sb.contains(s)).collect();
    let mut carriers: Vec<Symbol> = Vec::new();
    for &v in &shared {
        if !eval_excludes(&ar, &br, v) {
            carriers.push(v);
        }
    }
    if carriers.is_empty() {
        return attach_monomial(&MultiPoly::one(a.registry()), &common, a);
    }
    let main = *carriers.last().unwrap();
    let g = gcd_inner(&ar, &br, main);
    attach_monomial(&g.int_normalize().0, &common, a)
}

/// `true` when the gcd of `a` and `b` provably does not involve `v`:
/// at a point preserving `a`'s leading coefficient in `v`, the univariate
/// gcd is constant.
fn eval_excludes(a: &MultiPoly, b: &MultiPoly, v: Symbol) -> bool {
    use std::collections::BTreeMap;
    let reg = a.registry();
    let da = a.degree(v);
    for attempt in 0..3i64 {
        let mut pt: BTreeMap<Symbol, BigRational> = BTreeMap::new();
        for s in reg.symbols() {
            if s != v && (a.contains_symbol(s) || b.contains_symbol(s)) {
                let val = 3 + (s.index() as i64) * 7 + attempt * 131;
                pt.insert(s, BigRational::from_integer(val.into()));
            }
        }
        let ea = a.eval_rational(&pt);
        if ea.degree(v) != da {
            continue; // leading coefficient vanished; retry elsewhere
        }
        let eb = b.eval_rational(&pt);
        if eb.is_zero() {
            continue;
        }
        return univariate_gcd_degree(&ea, &eb, v) == 0;
    }
    false
}

/// Degree of the gcd of two univariate polynomials with rational
/// coefficients, by the monic Euclid remainder sequence.
fn univariate_gcd_degree(a: &MultiPoly, b: &MultiPoly, v: Symbol) -> usize {
    fn coeffs(p: &MultiPoly, v: Symbol) -> Vec<BigRational> {
        let d = p.degree(v).max(0) as usize;
        let mut out = vec![BigRational::zero(); d + 1];
        for (m, c) in p.terms() {
            out[m.exp(v) as usize] += c.clone();
        }
        while out.len() > 1 && out.last().map(Zero::is_zero).unwrap_or(false) {
            out.pop();
        }
        out
    }
    let mut r0 = coeffs(a, v);
    let mut r1 = coeffs(b, v);
    if r1.len() > r0.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        if r1.len() == 1 && r1[0].is_zero() {
            return r0.len() - 1;
        }
        if r1.len() == 1 {
            return 0;
        }
        // r0 mod r1 with monic r1.
        let lead = r1.last().unwrap().clone();
        let r1m: Vec<BigRational> = r1.iter().map(|c| c / &lead).collect();
        let mut rem = r0.clone();
        while rem.len() >= r1m.len() && !(rem.len() == 1 && rem[0].is_zero()) {
            let k = rem.len() - r1m.len();
            let f = rem.last().unwrap().clone();
            for (i, c) in r1m.iter().enumerate() {
                let t = c * &f;
                rem[k + i] -= t;
            }
            while rem.len() > 1 && rem.last().map(Zero::is_zero).unwrap_or(false) {
                rem.pop();
            }
        }
        r0 = r1m;
        r1 = rem;
    }
}

fn monomial_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let ma = monomial_content(a).0;
    let mb = monomial_content(b).0;
    let m = monomial_min(&ma, &mb, a);
    MultiPoly::from_terms(a.registry(), [(m, num_traits::One::one())])
}

/// Componentwise minimum exponent vector across all terms.
fn monomial_content(p: &MultiPoly) -> (crate::poly::Monomial, ()) {
    let reg = p.registry();
    let mut iter = p.terms();
    let (first, _) = iter.next().expect("nonzero");
    let mut m = first.clone();
    for (mm, _) in iter {
        m = monomial_min(&m, mm, p);
        if m.is_unit() {
            break;
        }
    }
    let _ = reg;
    (m, ())
}

fn monomial_min(
    a: &crate::poly::Monomial,
    b: &crate::poly::Monomial,
    ctx: &MultiPoly,
) -> crate::poly::Monomial {
    let reg = ctx.registry();
    let mut m = crate::poly::Monomial::unit(reg.len());
    for s in reg.symbols() {
        let e = a.exp(s).min(b.exp(s));
        if e > 0 {
            m = m.mul(&crate::poly::Monomial::var(reg.len(), s, e));
        }
    }
    m
}

fn attach_monomial(
    g: &MultiPoly,
    m: &crate::poly::Monomial,
    ctx: &MultiPoly,
) -> MultiPoly {
    if m.is_unit() {
        return g.clone();
    }
    let cm = MultiPoly::from_terms(ctx.registry(), [(m.clone(), num_traits::One::one())]);
    g.mul(&cm)
}

/// When the leading term of one operand divides the other's, try exact
/// division: a hit gives the gcd immediately.
fn try_division_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let (la, _) = a.leading()?;
    let (lb, _) = b.leading()?;
    if lb.divides(la) && a.exact_div(b).is_ok() {
        return Some(b.int_normalize().0);
    }
    if la.divides(lb) && b.exact_div(a).is_ok() {
        return Some(a.int_normalize().0);
    }
    None
}

fn gcd_inner(a: &MultiPoly, b: &MultiPoly, main: Symbol) -> MultiPoly {
    let ca = content_wrt(a, main);
    let cb = content_wrt(b, main);
    let cg = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let (mut u, mut v) = if pa.degree(main) >= pb.degree(main) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        if v.is_zero() {
            let pp = primitive_wrt(&u, main);
            return cg.mul(&pp);
        }
        if v.degree(main) == 0 {
            return cg;
        }
        let r = pseudo_rem(&u, &v, main);
        u = v;
        v = if r.is_zero() {
            r
        } else {
            primitive_wrt(&r, main)
        };
    }
}

/// Content of `p` with respect to `s`: gcd of the coefficient polynomials.
pub fn content_wrt(p: &MultiPoly, s: Symbol) -> MultiPoly {
    let coeffs = p.as_univariate(s);
    let reg = p.registry().clone();
    let mut g = MultiPoly::zero(&reg);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        MultiPoly::one(&reg)
    } else {
        g
    }
}

pub fn primitive_wrt(p: &MultiPoly, s: Symbol) -> MultiPoly {
    let c = content_wrt(p, s);
    p.exact_div(&c).expect("content divides")
}

/// Pseudo-remainder: `lc(v)^(du-dv+1) * u mod v`, univariate in `s`.
pub fn pseudo_rem(u: &MultiPoly, v: &MultiPoly, s: Symbol) -> MultiPoly {
    let reg = u.registry().clone();
    let dv = v.degree(s);
    assert!(dv >= 0, "pseudo_rem by zero");
    let lv = v.coeff_of(s, dv as u8);
    let mut r = u.clone();
    let mut dr = r.degree(s);
    let mut steps = (dr - dv + 1).max(0);
    while dr >= dv && !r.is_zero() {
        let lr = r.coeff_of(s, dr as u8);
        let shift = MultiPoly::from_univariate(&reg, s, &{
            let mut cs = vec![MultiPoly::zero(&reg); (dr - dv) as usize];
            cs.push(MultiPoly::one(&reg));
            cs
        });
        // r <- lv*r - lr*s^(dr-dv)*v
        r = lv.mul(&r).sub(&lr.mul(&shift).mul(v));
        steps -= 1;
        dr = r.degree(s);
    }
    // Pad remaining multiplications so the result matches the standard
    // pseudo-remainder normalization.
    while steps > 0 {
        r = lv.mul(&r);
        steps -= 1;
    }
    r
}

/// Resultant of `a` and `b` with respect to `s`, via Bareiss elimination of
/// the Sylvester matrix. Returns zero when the polynomials share a factor.
pub fn resultant(a: &MultiPoly, b: &MultiPoly, s: Symbol) -> MultiPoly {
    let reg = a.registry().clone();
    let da = a.degree(s);
    let db = b.degree(s);
    assert!(da >= 0 && db >= 0, "resultant of zero polynomial");
    if da == 0 {
        return a.pow(db as u32);
    }
    if db == 0 {
        return b.pow(da as u32);
    }
    let n = (da + db) as usize;
    let ac = a.as_univariate(s);
    let bc = b.as_univariate(s);
    // Sylvester matrix rows: db rows of a's coefficients, da rows of b's,
    // highest powers first.
    let mut mat: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::zero(&reg); n]; n];
    for i in 0..db as usize {
        for (k, c) in ac.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..da as usize {
        for (k, c) in bc.iter().rev().enumerate() {
            mat[db as usize + i][i + k] = c.clone();
        }
    }
    bareiss_determinant(mat, &reg)
}

fn bareiss_determinant(
    mut m: Vec<Vec<MultiPoly>>,
    reg: &std::sync::Arc<crate::symbols::SymbolRegistry>,
) -> MultiPoly {
    let n = m.len();
    let mut sign = false;
    let mut prev = MultiPoly::one(reg);
    for k in 0..n {
        // Pivot search.
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return MultiPoly::zero(reg),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero(reg);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Discriminant of `f` in `s`: `(-1)^(d(d-1)/2) * res(f, f') / lc(f)`.
/// Zero exactly when `f` has a repeated root in `s` over the closure.
pub fn discriminant(f: &MultiPoly, s: Symbol) -> Result<MultiPoly, ArithError> {
    let d = f.degree(s);
    if d <= 0 {
        return Err(ArithError::DegreeZero);
    }
    let fp = f.derivative(s);
    let res = if fp.is_zero() {
        MultiPoly::zero(f.registry())
    } else {
        resultant(f, &fp, s)
    };
    let lc = f.coeff_of(s, d as u8);
    let mut disc = res.exact_div(&lc)?;
    if (d * (d - 1) / 2) % 2 == 1 {
        disc = disc.neg();
    }
    Ok(disc)
}

/// Exact square root of a polynomial that is a perfect square; `None`
/// otherwise. Sign convention: positive leading coefficient.
pub fn poly_sqrt(p: &MultiPoly) -> Option<MultiPoly> {
    nth_root(p, 2)
}

/// Exact `n`-th root of a perfect power, univariate recursion on the last
/// present symbol.
pub fn nth_root(p: &MultiPoly, n: u32) -> Option<MultiPoly> {
    assert!(n >= 1);
    let reg = p.registry().clone();
    if n == 1 {
        return Some(p.clone());
    }
    if p.is_zero() {
        return Some(p.clone());
    }
    if let Some(c) = p.constant_value() {
        return rational_nth_root(&c, n).map(|r| MultiPoly::constant(&reg, r));
    }
    let s = *p.symbols_present().last().unwrap();
    let d = p.degree(s);
    if d % n as i64 != 0 {
        return None;
    }
    let coeffs = p.as_univariate(s);
    let lead = nth_root(&coeffs[d as usize], n)?;
    let dr = (d / n as i64) as usize;
    let mut root = vec![MultiPoly::zero(&reg); dr + 1];
    root[dr] = lead;
    // Match coefficients downward: for k from d-1 to 0, the coefficient of
    // s^k in root^n determines root[k - (n-1)*dr] when that index is valid.
    for j in (0..dr).rev() {
        // Coefficient of s^(j + (n-1)*dr) in root^n equals
        // n*root[dr]^(n-1)*root[j] + (terms from already-known entries).
        let target_pow = j + (n as usize - 1) * dr;
        let mut known = MultiPoly::from_univariate(&reg, s, &root);
        known = known.pow(n);
        let diff = p.sub(&known);
        let c = diff.coeff_of(s, target_pow as u8);
        let denom = root[dr].pow(n - 1).mul_scalar(&BigRational::from_integer(n.into()));
        root[j] = c.exact_div(&denom).ok()?;
    }
    let candidate = MultiPoly::from_univariate(&reg, s, &root);
    if candidate.pow(n) == *p {
        Some(candidate)
    } else {
        None
    }
}

pub fn rational_nth_root(c: &BigRational, n: u32) -> Option<BigRational> {
    use num_traits::Signed;
    if c.is_zero() {
        return Some(BigRational::zero());
    }
    let neg = c.is_negative();
    if neg && n % 2 == 0 {
        return None;
    }
    let num = c.numer().abs();
    let den = c.denom().clone();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if rn.pow(n) != num || rd.pow(n) != den {
        return None;
    }
    let mut r = BigRational::new(rn, rd);
    if neg {
        r = -r;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::symbols::SymbolRegistry;

    #[test]
    fn gcd_basic() {
        let r = SymbolRegistry::standard();
        let a = parse_poly(&r, "x^2 - 1").unwrap();
        let b = parse_poly(&r, "x - 1").unwrap();
        assert_eq!(gcd(&a, &b), b);
        // gcd with a unit is a unit
        assert!(gcd(&a, &MultiPoly::one(&r)).is_one());
        // gcd(0,0) = 0
        let z = MultiPoly::zero(&r);
        assert!(gcd(&z, &z).is_zero());
    }

    #[test]
    fn gcd_with_parameters() {
        let r = SymbolRegistry::standard();
        let g = parse_poly(&r, "2*x - 3*beta").unwrap();
        let a = g.pow(2).mul(&parse_poly(&r, "x - alpha").unwrap());
        let b = g.mul(&parse_poly(&r, "x").unwrap());
        let got = gcd(&a, &b);
        assert_eq!(got, g);
        // Verified by exact division of both inputs.
        assert!(a.exact_div(&got).is_ok());
        assert!(b.exact_div(&got).is_ok());
    }

    #[test]
    fn discriminant_quadratic() {
        let r = SymbolRegistry::standard();
        // Use c1 as the linear coefficient and c2 as the constant.
        let f = parse_poly(&r, "x^2 + c1*x + c2").unwrap();
        let d = discriminant(&f, r.sym("x")).unwrap();
        assert_eq!(d, parse_poly(&r, "c1^2 - 4*c2").unwrap());
    }

    #[test]
    fn discriminant_repeated_root_vanishes() {
        let r = SymbolRegistry::standard();
        let f = parse_poly(&r, "(x - 1)^2").unwrap();
        assert!(discriminant(&f, r.sym("x")).unwrap().is_zero());
    }

    #[test]
    fn degree_zero_rejected() {
        let r = SymbolRegistry::standard();
        let f = parse_poly(&r, "beta").unwrap();
        assert!(matches!(
            discriminant(&f, r.sym("x")),
            Err(ArithError::DegreeZero)
        ));
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let r = SymbolRegistry::standard();
        let p = parse_poly(&r, "(2*x - 3*beta)^2").unwrap();
        let s = poly_sqrt(&p).unwrap();
        assert_eq!(s.pow(2), p);
        assert!(poly_sqrt(&parse_poly(&r, "x^2 + 1").unwrap()).is_none());
    }

    #[test]
    fn monomial_cube_root() {
        let r = SymbolRegistry::standard();
        let p = parse_poly(&r, "-27*hbar^6").unwrap();
        let s = nth_root(&p, 3).unwrap();
        assert_eq!(s, parse_poly(&r, "-3*hbar^2").unwrap());
    }
}
