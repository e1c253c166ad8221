//! Small exact solvers over the rational-function field.
//!
//! Gaussian elimination for the per-order Kovalevskaya systems plus a
//! desk-scale polynomial-system solver used by the leading-balance search.
//! The polynomial solver handles what the dominant-balance systems of the
//! built-in models need: linear steps, univariate factors up to quadratics,
//! and binomial equations with exact roots. Anything beyond that is
//! reported as unsolved rather than guessed.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;

use crate::gcd::{poly_sqrt, rational_nth_root, nth_root};
use crate::poly::MultiPoly;
use crate::ratfunc::RatFunc;
use crate::symbols::{Symbol, SymbolRegistry};

/// Outcome of an exact linear solve `A u = rhs`.
#[derive(Debug, Clone)]
pub enum LinearOutcome {
    Unique(Vec<RatFunc>),
    /// Singular but consistent: a particular solution plus a kernel basis.
    Underdetermined {
        particular: Vec<RatFunc>,
        kernel: Vec<Vec<RatFunc>>,
    },
    /// Inconsistent; carries the nonzero residual of an unsolvable row.
    Inconsistent(RatFunc),
}

/// Fraction-based Gaussian elimination. Records every pivot used so callers
/// can surface nonvanishing assumptions.
pub fn solve_linear(
    mut a: Vec<Vec<RatFunc>>,
    mut rhs: Vec<RatFunc>,
    pivots_used: &mut Vec<RatFunc>,
) -> LinearOutcome {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let reg = if rows > 0 {
        a[0][0].registry().clone()
    } else {
        return LinearOutcome::Unique(vec![]);
    };
    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; rows];
    let mut row = 0;
    for col in 0..cols {
        let pr = (row..rows).find(|&r| !a[r][col].is_zero());
        let pr = match pr {
            Some(pr) => pr,
            None => continue,
        };
        a.swap(row, pr);
        rhs.swap(row, pr);
        let piv = a[row][col].clone();
        pivots_used.push(piv.clone());
        let inv = piv.recip().expect("pivot nonzero");
        for c in col..cols {
            a[row][c] = a[row][c].mul(&inv);
        }
        rhs[row] = rhs[row].mul(&inv);
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let t = a[row][c].mul(&f);
                    a[r][c] = a[r][c].sub(&t);
                }
                let t = rhs[row].mul(&f);
                rhs[r] = rhs[r].sub(&t);
            }
        }
        pivot_col_of_row[row] = Some(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    // Inconsistency: zero row with nonzero rhs.
    for r in row..rows {
        if !rhs[r].is_zero() {
            return LinearOutcome::Inconsistent(rhs[r].clone());
        }
    }
    let zero = RatFunc::zero(&reg);
    let mut particular = vec![zero.clone(); cols];
    let mut pivot_cols = vec![false; cols];
    for r in 0..row {
        let c = pivot_col_of_row[r].unwrap();
        particular[c] = rhs[r].clone();
        pivot_cols[c] = true;
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols[*c]).collect();
    if free_cols.is_empty() {
        return LinearOutcome::Unique(particular);
    }
    let mut kernel = Vec::new();
    for fc in free_cols {
        let mut v = vec![zero.clone(); cols];
        v[fc] = RatFunc::one(&reg);
        for r in 0..row {
            let c = pivot_col_of_row[r].unwrap();
            v[c] = a[r][fc].neg();
        }
        kernel.push(v);
    }
    LinearOutcome::Underdetermined {
        particular,
        kernel,
    }
}

/// A solution of a polynomial system: values for the solved unknowns (which
/// may reference unknowns that remained free).
pub type Assignment = BTreeMap<Symbol, RatFunc>;

/// Solve a small polynomial system exactly over the coefficient field.
/// Returns all solutions found with nonzero values permitted to reference
/// free unknowns; unsolvable shapes yield no solutions (the search is
/// bounded, not complete).
pub fn solve_poly_system(eqs: &[MultiPoly], unknowns: &[Symbol]) -> Vec<Assignment> {
    let reg = match eqs.first() {
        Some(e) => e.registry().clone(),
        None => return vec![Assignment::new()],
    };
    let mut sols = Vec::new();
    solve_rec(&reg, eqs.to_vec(), unknowns.to_vec(), Assignment::new(), &mut sols, 0);
    // Resolve chained references among solved values.
    for sol in &mut sols {
        resolve_assignment(sol);
    }
    dedupe(sols)
}

fn resolve_assignment(sol: &mut Assignment) {
    let keys: Vec<Symbol> = sol.keys().copied().collect();
    for _ in 0..keys.len() {
        let snapshot = sol.clone();
        for k in &keys {
            let v = sol.get(k).unwrap().clone();
            let substituted = v.substitute(&snapshot).unwrap_or(v);
            sol.insert(*k, substituted);
        }
    }
}

fn dedupe(sols: Vec<Assignment>) -> Vec<Assignment> {
    let mut out: Vec<Assignment> = Vec::new();
    for s in sols {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn substitute_eqs(eqs: &[MultiPoly], s: Symbol, val: &RatFunc) -> Vec<MultiPoly> {
    let mut bind = BTreeMap::new();
    bind.insert(s, val.clone());
    eqs.iter()
        .map(|e| {
            let f = crate::ratfunc::eval_poly_at(e, &bind);
            // Clearing the (nonzero) denominator preserves the zero set.
            f.numer().clone()
        })
        .collect()
}

fn solve_rec(
    reg: &Arc<SymbolRegistry>,
    eqs: Vec<MultiPoly>,
    unknowns: Vec<Symbol>,
    partial: Assignment,
    out: &mut Vec<Assignment>,
    depth: usize,
) {
    if depth > 12 {
        return;
    }
    let mut eqs: Vec<MultiPoly> = eqs.into_iter().filter(|e| !e.is_zero()).collect();
    // An equation with no unknowns left is a contradiction.
    if eqs
        .iter()
        .any(|e| unknowns.iter().all(|u| !e.contains_symbol(*u)))
    {
        return;
    }
    if eqs.is_empty() {
        out.push(partial);
        return;
    }
    eqs.sort_by_key(|e| e.num_terms());

    // 1. An equation linear in one unknown whose coefficient is free of
    //    unknowns.
    for e in &eqs {
        for &u in &unknowns {
            if e.degree(u) == 1 {
                let a = e.coeff_of(u, 1);
                let b = e.coeff_of(u, 0);
                if unknowns.iter().all(|w| !a.contains_symbol(*w)) {
                    let val = RatFunc::new(b.neg(), a).expect("nonzero coefficient");
                    let rest = substitute_eqs(&eqs, u, &val);
                    let mut p2 = partial.clone();
                    p2.insert(u, val);
                    let rem: Vec<Symbol> = unknowns.iter().copied().filter(|w| *w != u).collect();
                    solve_rec(reg, rest, rem, p2, out, depth + 1);
                    return;
                }
            }
        }
    }

    // 2. An equation univariate in a single unknown.
    for e in &eqs {
        let present: Vec<Symbol> = unknowns
            .iter()
            .copied()
            .filter(|u| e.contains_symbol(*u))
            .collect();
        if present.len() == 1 {
            let u = present[0];
            let roots = univariate_roots(reg, e, u);
            for r in roots {
                let rest = substitute_eqs(&eqs, u, &r);
                let mut p2 = partial.clone();
                p2.insert(u, r);
                let rem: Vec<Symbol> = unknowns.iter().copied().filter(|w| *w != u).collect();
                solve_rec(reg, rest, rem, p2, out, depth + 1);
            }
            return;
        }
    }

    // 3. Last resort: linear in one unknown with an unknown-carrying
    //    coefficient. Branch on coefficient nonzero (solve) and zero.
    for e in &eqs {
        for &u in &unknowns {
            if e.degree(u) == 1 {
                let a = e.coeff_of(u, 1);
                let b = e.coeff_of(u, 0);
                let val = match RatFunc::new(b.neg(), a.clone()) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                // Branch a != 0.
                let rest = substitute_eqs(&eqs, u, &val);
                let mut p2 = partial.clone();
                p2.insert(u, val);
                let rem: Vec<Symbol> = unknowns.iter().copied().filter(|w| *w != u).collect();
                solve_rec(reg, rest, rem, p2, out, depth + 1);
                // Branch a = 0 (adds the coefficient as an equation).
                let mut with_zero = eqs.clone();
                with_zero.push(a);
                solve_rec(reg, with_zero, unknowns.clone(), partial.clone(), out, depth + 1);
                return;
            }
        }
    }
    // Unsupported shape: report nothing.
}

/// Nonzero roots of a univariate polynomial (in `u`) over the remaining
/// symbol field, restricted to roots expressible as rational functions.
fn univariate_roots(reg: &Arc<SymbolRegistry>, e: &MultiPoly, u: Symbol) -> Vec<RatFunc> {
    let coeffs = e.as_univariate(u);
    // Factor out u^k: the u = 0 root is excluded (leading coefficients of a
    // balance must be nonzero).
    let k = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let g: Vec<MultiPoly> = coeffs[k..].to_vec();
    let deg = g.len() - 1;
    match deg {
        0 => vec![],
        1 => {
            let r = RatFunc::new(g[0].neg(), g[1].clone()).expect("nonzero lead");
            vec![r]
        }
        2 => {
            // (-b ± sqrt(b^2 - 4ac)) / 2a, kept only when the discriminant
            // is a perfect square in the polynomial ring.
            let (a, b, c) = (&g[2], &g[1], &g[0]);
            let disc = b.mul(b).sub(&a.mul(c).mul_scalar(&BigRational::from_integer(4.into())));
            let sq = match poly_sqrt(&disc) {
                Some(s) => s,
                None => return vec![],
            };
            let two_a = a.mul_scalar(&BigRational::from_integer(2.into()));
            let mut roots = Vec::new();
            for sgn in [1i64, -1] {
                let num = if sgn == 1 { b.neg().add(&sq) } else { b.neg().sub(&sq) };
                if let Ok(r) = RatFunc::new(num, two_a.clone()) {
                    if !r.is_zero() {
                        roots.push(r);
                    }
                }
            }
            dedupe_ratfuncs(roots)
        }
        d => {
            // Binomial a*u^d + c with an exact d-th root.
            let middle_zero = g[1..d].iter().all(|c| c.is_zero());
            if !middle_zero {
                return vec![];
            }
            let a = &g[d];
            let c = &g[0];
            let target = match RatFunc::new(c.neg(), a.clone()) {
                Ok(t) => t,
                Err(_) => return vec![],
            };
            let root = ratfunc_nth_root(&target, d as u32);
            let mut roots = Vec::new();
            if let Some(r) = root {
                if d % 2 == 0 {
                    roots.push(r.neg());
                }
                roots.push(r);
            }
            let _ = reg;
            dedupe_ratfuncs(roots)
        }
    }
}

fn dedupe_ratfuncs(v: Vec<RatFunc>) -> Vec<RatFunc> {
    let mut out: Vec<RatFunc> = Vec::new();
    for r in v {
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Exact n-th root of a rational function that is a perfect power.
pub fn ratfunc_nth_root(f: &RatFunc, n: u32) -> Option<RatFunc> {
    if let Some(c) = f.constant_value() {
        return rational_nth_root(&c, n).map(|r| RatFunc::constant(f.registry(), r));
    }
    let num = nth_root(f.numer(), n)?;
    let den = nth_root(f.denom(), n)?;
    RatFunc::new(num, den).ok()
}
