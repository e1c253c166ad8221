//! Painlevé test: leading-balance search and order-by-order expansion.
//!
//! Flows are maps `v -> F_v` with `hbar dv/dt = F_v`. The balance search
//! enumerates exponent tuples, discards tuples whose dominant term is a
//! single unkillable monomial (integer arithmetic only), and solves the
//! surviving dominant-balance systems exactly; solutions may carry free
//! leading coefficients. Expansion then solves one linear system per order;
//! a singular-but-consistent order inserts a free parameter along the
//! lexicographically first kernel direction, an inconsistent one aborts
//! with the obstruction. Everything is deterministic.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::TestError;
use crate::linalg::{solve_linear, solve_poly_system, LinearOutcome};
use crate::poly::MultiPoly;
use crate::ratfunc::RatFunc;
use crate::series::{substitute_ratfunc, Expansion, TruncatedSeries, EXACT_ORDER};
use crate::symbols::{Symbol, SymbolRegistry};

/// `hbar * d v/dt = F_v` for the listed variables.
#[derive(Clone, Debug)]
pub struct Flow {
    pub time: Symbol,
    pub vars: Vec<Symbol>,
    pub rhs: BTreeMap<Symbol, RatFunc>,
}

impl Flow {
    /// Build from a Hamilton vector field map (`dv/dt` entries).
    pub fn from_vector_field(
        reg: &Arc<SymbolRegistry>,
        time: Symbol,
        vars: Vec<Symbol>,
        field: &BTreeMap<Symbol, RatFunc>,
    ) -> Flow {
        let hbar = RatFunc::symbol(reg, reg.sym("hbar"));
        let rhs = field
            .iter()
            .map(|(v, f)| (*v, f.mul(&hbar)))
            .collect();
        Flow {
            time,
            vars,
            rhs,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PoleAnsatz {
    pub frame: Expansion,
    /// Leading exponent per variable, in local (sigma) units.
    pub exponents: Vec<i64>,
    /// Leading coefficient per variable; may reference scratch unknowns
    /// listed in `free_unknowns`.
    pub leading: Vec<RatFunc>,
    pub free_unknowns: Vec<Symbol>,
}

impl PoleAnsatz {
    pub fn is_holomorphic(&self) -> bool {
        self.exponents.iter().all(|e| *e >= 0)
    }
}

#[derive(Clone, Debug)]
pub struct ResonanceEvent {
    pub order: i64,
    pub kernel_dim: usize,
    pub consistent: bool,
    pub parameter: Option<Symbol>,
}

#[derive(Clone, Debug)]
pub struct LaurentSolution {
    pub frame: Expansion,
    pub vars: Vec<Symbol>,
    pub series: BTreeMap<Symbol, TruncatedSeries>,
    pub ledger: Vec<ResonanceEvent>,
    /// All free parameters: the expansion point, balance-level parameters,
    /// then resonance insertions in order.
    pub free_parameters: Vec<Symbol>,
    pub ansatz: PoleAnsatz,
    pub assumptions: Vec<String>,
}

impl LaurentSolution {
    pub fn series_for(&self, v: Symbol) -> &TruncatedSeries {
        &self.series[&v]
    }
}

/// Renaming plan applied during expansion so the output matches a chosen
/// parameter normalization.
#[derive(Clone, Debug, Default)]
pub struct ParamPlan {
    /// Values substituted for the balance-level free unknowns, in order of
    /// `PoleAnsatz::free_unknowns` (e.g. `-3/2*beta*hbar^2`).
    pub balance: Vec<RatFunc>,
    /// Parameters handed out at resonances, in order, together with the
    /// value given to the first nonzero kernel component.
    pub resonance: Vec<(Symbol, RatFunc)>,
}

/// Enumerate dominant balances of `flow` in the frame, with leading
/// exponents in `range` (sigma units) and at least one negative exponent
/// unless `allow_holomorphic`.
pub fn find_leading_balances(
    flow: &Flow,
    frame: &Expansion,
    range: std::ops::RangeInclusive<i64>,
    scratch: &[Symbol],
) -> Result<Vec<PoleAnsatz>, TestError> {
    if range.is_empty() {
        return Err(TestError::EmptyRange);
    }
    let n = flow.vars.len();
    assert!(scratch.len() >= n, "not enough scratch unknowns");
    let reg = frame.registry().clone();
    let lo = *range.start();
    let hi = *range.end();
    let mut out = Vec::new();
    let mut tuple = vec![lo; n];
    loop {
        if tuple.iter().any(|e| *e < 0) && prefilter(flow, frame, &tuple) {
            balance_tuple(flow, frame, &tuple, scratch, &reg, &mut out);
        }
        // advance odometer
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            tuple[i] += 1;
            if tuple[i] <= hi {
                break;
            }
            tuple[i] = lo;
            i += 1;
        }
    }
}

/// Integer-weight feasibility: reject tuples where one single monomial
/// strictly dominates an equation (its coefficient cannot vanish for
/// nonzero leading coefficients).
fn prefilter(flow: &Flow, frame: &Expansion, tuple: &[i64]) -> bool {
    let weight_of = |m: &crate::poly::Monomial| -> i64 {
        let mut w = 0i64;
        for (i, v) in flow.vars.iter().enumerate() {
            w += m.exp(*v) as i64 * tuple[i];
        }
        w
    };
    let ram = frame.ram as i64;
    for (i, v) in flow.vars.iter().enumerate() {
        let f = &flow.rhs[v];
        // Minimal weight and multiplicity for numerator and denominator.
        let min_count = |p: &MultiPoly| -> (i64, usize) {
            let mut best = i64::MAX;
            let mut count = 0;
            for (m, _) in p.terms() {
                let w = weight_of(m);
                if w < best {
                    best = w;
                    count = 1;
                } else if w == best {
                    count += 1;
                }
            }
            (best, count)
        };
        let (wn, cn) = min_count(f.numer());
        let (wd, cd) = min_count(f.denom());
        let wf = wn - wd;
        let lone_f = cn == 1 && cd == 1;
        match if tuple[i] != 0 { Some(tuple[i] - ram) } else { None } {
            // Lone derivative term below everything in F.
            Some(wl) if wl < wf => return false,
            // Lone dominant monomial in F below the derivative term.
            Some(wl) if wl > wf && lone_f => return false,
            // No derivative term: the unknown tail enters at weight 1-ram,
            // so a lone F monomial below that cannot be balanced.
            None if wf < 1 - ram && lone_f => return false,
            _ => {}
        }
    }
    true
}

fn balance_tuple(
    flow: &Flow,
    frame: &Expansion,
    tuple: &[i64],
    scratch: &[Symbol],
    reg: &Arc<SymbolRegistry>,
    out: &mut Vec<PoleAnsatz>,
) {
    let n = flow.vars.len();
    let mut bind: BTreeMap<Symbol, TruncatedSeries> = BTreeMap::new();
    bind.insert(frame.var, frame.var_series());
    for (i, v) in flow.vars.iter().enumerate() {
        bind.insert(
            *v,
            TruncatedSeries::monomial(
                frame,
                tuple[i],
                RatFunc::symbol(reg, scratch[i]),
                tuple[i] + 1,
            ),
        );
    }
    let hbar = RatFunc::symbol(reg, reg.sym("hbar"));
    let mut eqs: Vec<MultiPoly> = Vec::new();
    for (i, v) in flow.vars.iter().enumerate() {
        let lhs = bind[v].derivative().mul_coeff(&hbar);
        let rhs = match substitute_ratfunc(&flow.rhs[v], &bind, frame, tuple[i] + 8) {
            Ok(s) => s,
            Err(_) => return, // denominator identically unknown: skip tuple
        };
        let res = lhs.sub(&rhs);
        for (_, c) in res.coeffs() {
            eqs.push(c.numer().clone());
        }
    }
    let unknowns: Vec<Symbol> = scratch[..n].to_vec();
    for sol in solve_poly_system(&eqs, &unknowns) {
        // Leading coefficients must be nonzero.
        if sol.values().any(RatFunc::is_zero) {
            continue;
        }
        let leading: Vec<RatFunc> = unknowns
            .iter()
            .map(|u| {
                sol.get(u)
                    .cloned()
                    .unwrap_or_else(|| RatFunc::symbol(reg, *u))
            })
            .collect();
        let free: Vec<Symbol> = unknowns
            .iter()
            .copied()
            .filter(|u| !sol.contains_key(u))
            .collect();
        let ansatz = PoleAnsatz {
            frame: frame.clone(),
            exponents: tuple.to_vec(),
            leading,
            free_unknowns: free,
        };
        if !out.iter().any(|a: &PoleAnsatz| {
            a.exponents == ansatz.exponents && a.leading == ansatz.leading
        }) {
            out.push(ansatz);
        }
    }
}

/// Expand an ansatz to relative order `order`: coefficients are produced for
/// exponents `m_i + k`, `k < order`, for every variable.
pub fn expand_solution(
    flow: &Flow,
    ansatz: &PoleAnsatz,
    order: i64,
    plan: &ParamPlan,
    scratch: &[Symbol],
) -> Result<LaurentSolution, TestError> {
    let frame = &ansatz.frame;
    let reg = frame.registry().clone();
    let n = flow.vars.len();
    let hbar = RatFunc::symbol(&reg, reg.sym("hbar"));
    let mut assumptions: Vec<String> = Vec::new();
    let mut ledger: Vec<ResonanceEvent> = Vec::new();
    let mut free_parameters: Vec<Symbol> = Vec::new();
    // The expansion point counts as a free parameter when it is a symbol.
    if let Some(c) = frame.point.numer().symbols_present().first() {
        if frame.point == RatFunc::symbol(&reg, *c) {
            free_parameters.push(*c);
        }
    }

    // Balance-level renaming of free unknowns.
    assert_eq!(
        plan.balance.len(),
        ansatz.free_unknowns.len(),
        "plan must cover every free balance unknown"
    );
    let rename: BTreeMap<Symbol, RatFunc> = ansatz
        .free_unknowns
        .iter()
        .copied()
        .zip(plan.balance.iter().cloned())
        .collect();
    for val in plan.balance.iter() {
        for s in val.numer().symbols_present() {
            if !free_parameters.contains(&s) {
                free_parameters.push(s);
            }
        }
    }

    let mut series: Vec<TruncatedSeries> = Vec::with_capacity(n);
    for (i, _) in flow.vars.iter().enumerate() {
        let lead = ansatz.leading[i]
            .substitute(&rename)
            .expect("balance rename");
        assert!(!lead.is_zero(), "renamed leading coefficient vanished");
        series.push(TruncatedSeries::monomial(
            frame,
            ansatz.exponents[i],
            lead,
            ansatz.exponents[i] + 1,
        ));
    }

    let mut next_resonance = 0usize;
    for k in 1..order {
        // Trial tail u_i sigma^(m_i + k).
        let mut bind: BTreeMap<Symbol, TruncatedSeries> = BTreeMap::new();
        bind.insert(frame.var, frame.var_series());
        for (i, v) in flow.vars.iter().enumerate() {
            let e = ansatz.exponents[i] + k;
            // Extend the known part by one trial coefficient u_i at sigma^e.
            let mut coeffs: Vec<(i64, RatFunc)> =
                series[i].coeffs().map(|(n, c)| (*n, c.clone())).collect();
            coeffs.push((e, RatFunc::symbol(&reg, scratch[i])));
            bind.insert(*v, TruncatedSeries::from_coeffs(frame, coeffs, e + 1));
        }
        // Equations: for each variable, the lowest residual coefficient
        // containing a scratch unknown; everything below it must vanish.
        let mut mat: Vec<Vec<RatFunc>> = Vec::new();
        let mut rhs_vec: Vec<RatFunc> = Vec::new();
        for (i, v) in flow.vars.iter().enumerate() {
            let work = ansatz.exponents[i] + k + 2;
            let lhs = bind[v].derivative().mul_coeff(&hbar);
            let rhs = substitute_ratfunc(&flow.rhs[v], &bind, frame, work)
                .map_err(TestError::Series)?;
            let res = lhs.sub(&rhs);
            let mut row: Option<(Vec<RatFunc>, RatFunc)> = None;
            for (e, c) in res.coeffs() {
                let has_u = scratch[..n].iter().any(|u| c.contains_symbol(*u));
                if !has_u {
                    if row.is_none() && !c.is_zero() {
                        return Err(TestError::InconsistentResonance {
                            order: k,
                            obstruction: format!(
                                "residual of {} at exponent {e}: {c}",
                                reg.name(*v)
                            ),
                        });
                    }
                    continue;
                }
                if row.is_none() {
                    row = Some(split_linear(c, &scratch[..n], &reg));
                }
            }
            if let Some((coeffs, b)) = row {
                mat.push(coeffs);
                rhs_vec.push(b.neg());
            }
        }
        if mat.is_empty() {
            // Nothing constrains this order; all unknowns are free. Treat
            // as a full-kernel resonance.
            return Err(TestError::InconsistentResonance {
                order: k,
                obstruction: "order unconstrained by the flow".into(),
            });
        }
        let mut pivots = Vec::new();
        match solve_linear(mat, rhs_vec, &mut pivots) {
            LinearOutcome::Unique(sol) => {
                for (i, c) in sol.iter().enumerate() {
                    let e = ansatz.exponents[i] + k;
                    push_coeff(&mut series[i], e, c.clone());
                }
            }
            LinearOutcome::Underdetermined { particular, kernel } => {
                let event_order = k;
                let param = plan
                    .resonance
                    .get(next_resonance)
                    .cloned();
                let (param_sym, norm) = match param {
                    Some(p) => p,
                    None => {
                        return Err(TestError::OutOfParameterNames { order: k })
                    }
                };
                next_resonance += 1;
                // Lexicographically first kernel vector. The parameter is
                // defined so that the full coefficient at the first nonzero
                // kernel component equals `norm * param` (the particular
                // part there is absorbed into the parameter).
                let kv = &kernel[0];
                let first = kv
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("kernel vector nonzero");
                let w: Vec<RatFunc> = kv
                    .iter()
                    .map(|c| c.div(&kv[first]).expect("nonzero component"))
                    .collect();
                let pval = RatFunc::symbol(&reg, param_sym).mul(&norm);
                for (i, c) in particular.iter().enumerate() {
                    let e = ansatz.exponents[i] + k;
                    let shifted = c.sub(&particular[first].mul(&w[i]));
                    let add = pval.mul(&w[i]);
                    push_coeff(&mut series[i], e, shifted.add(&add));
                }
                ledger.push(ResonanceEvent {
                    order: event_order,
                    kernel_dim: kernel.len(),
                    consistent: true,
                    parameter: Some(param_sym),
                });
                free_parameters.push(param_sym);
            }
            LinearOutcome::Inconsistent(res) => {
                ledger.push(ResonanceEvent {
                    order: k,
                    kernel_dim: 0,
                    consistent: false,
                    parameter: None,
                });
                return Err(TestError::InconsistentResonance {
                    order: k,
                    obstruction: res.to_string(),
                });
            }
        }
        record_pivot_assumptions(&pivots, &mut assumptions, &reg);
    }

    let series_map: BTreeMap<Symbol, TruncatedSeries> = flow
        .vars
        .iter()
        .copied()
        .zip(series.into_iter())
        .collect();
    Ok(LaurentSolution {
        frame: frame.clone(),
        vars: flow.vars.clone(),
        series: series_map,
        ledger,
        free_parameters,
        ansatz: ansatz.clone(),
        assumptions,
    })
}

fn push_coeff(s: &mut TruncatedSeries, e: i64, c: RatFunc) {
    let mut coeffs: Vec<(i64, RatFunc)> = s.coeffs().map(|(n, v)| (*n, v.clone())).collect();
    if !c.is_zero() {
        coeffs.push((e, c));
    }
    *s = TruncatedSeries::from_coeffs(s.expansion(), coeffs, e + 1);
}

/// Split a rational function linear in the scratch unknowns into
/// (coefficient row, constant part).
fn split_linear(
    c: &RatFunc,
    unknowns: &[Symbol],
    reg: &Arc<SymbolRegistry>,
) -> (Vec<RatFunc>, RatFunc) {
    for u in unknowns {
        assert!(
            !c.denom().contains_symbol(*u),
            "unknown in denominator of residual coefficient"
        );
        assert!(
            c.numer().degree(*u) <= 1,
            "residual coefficient not linear in unknowns"
        );
    }
    let den = RatFunc::from_poly(c.denom().clone());
    let mut row = Vec::with_capacity(unknowns.len());
    let mut zero_bind: BTreeMap<Symbol, RatFunc> = BTreeMap::new();
    for u in unknowns {
        zero_bind.insert(*u, RatFunc::zero(reg));
    }
    for u in unknowns {
        let coeff_poly = c.numer().coeff_of(*u, 1);
        // Cross terms between two unknowns would violate linearity.
        for w in unknowns {
            assert!(
                *w == *u || !coeff_poly.contains_symbol(*w),
                "cross term between unknowns"
            );
        }
        row.push(RatFunc::from_poly(coeff_poly).div(&den).unwrap());
    }
    let const_part = RatFunc::from_poly(
        crate::ratfunc::eval_poly_at(c.numer(), &zero_bind)
            .numer()
            .clone(),
    )
    .div(&den)
    .unwrap();
    (row, const_part)
}

fn record_pivot_assumptions(
    pivots: &[RatFunc],
    assumptions: &mut Vec<String>,
    reg: &Arc<SymbolRegistry>,
) {
    for p in pivots {
        for s in p.numer().symbols_present() {
            let name = reg.name(s);
            if matches!(name, "beta" | "gamma" | "delta" | "t2" | "b" | "c1") {
                let a = format!("{name} != 0");
                if !assumptions.contains(&a) {
                    assumptions.push(a);
                }
            }
        }
    }
}

/// Substitute the solution into the flow and report the valuation bound of
/// each residual (the truncation order when the residual is known-zero).
pub fn verify_solution(flow: &Flow, sol: &LaurentSolution) -> BTreeMap<Symbol, i64> {
    let frame = &sol.frame;
    let reg = frame.registry().clone();
    let hbar = RatFunc::symbol(&reg, reg.sym("hbar"));
    let mut bind = sol.series.clone();
    bind.insert(frame.var, frame.var_series());
    let mut out = BTreeMap::new();
    for v in &sol.vars {
        let work = sol.series[v].truncation() + 4;
        let lhs = sol.series[v].derivative().mul_coeff(&hbar);
        let rhs = substitute_ratfunc(&flow.rhs[v], &bind, frame, work)
            .expect("substitution along a computed solution");
        let res = lhs.sub(&rhs);
        out.insert(*v, res.valuation_bound());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{builtin_model, hamilton_vector_field, ModelName};
    use crate::parser::parse_ratfunc;

    fn piv_flow() -> (Flow, Expansion) {
        let m = builtin_model(ModelName::PIV);
        let reg = m.reg.clone();
        let field = hamilton_vector_field(&m, 0);
        let flow = Flow::from_vector_field(
            &reg,
            reg.sym("t1"),
            vec![reg.sym("q"), reg.sym("p")],
            &field,
        );
        let frame = Expansion::laurent(&reg, reg.sym("t1"), RatFunc::symbol(&reg, reg.sym("alpha")));
        (flow, frame)
    }

    #[test]
    fn piv_balances_have_both_signs() {
        let (flow, frame) = piv_flow();
        let reg = frame.registry().clone();
        let scratch = [reg.sym("u1"), reg.sym("u2")];
        let balances = find_leading_balances(&flow, &frame, -6..=2, &scratch).unwrap();
        let rf = |t: &str| parse_ratfunc(&reg, t).unwrap();
        let found_plus = balances.iter().any(|a| {
            a.exponents == vec![-1, -1] && a.leading[0] == rf("hbar") && a.leading[1] == rf("-hbar/4")
        });
        let found_minus = balances.iter().any(|a| {
            a.exponents == vec![-1, -1] && a.leading[0] == rf("-hbar") && a.leading[1] == rf("-hbar/4")
        });
        assert!(found_plus, "missing C0=+1 balance: {balances:?}");
        assert!(found_minus, "missing C0=-1 balance");
    }

    #[test]
    fn piv_expansion_matches_display() {
        let (flow, frame) = piv_flow();
        let reg = frame.registry().clone();
        let rf = |t: &str| parse_ratfunc(&reg, t).unwrap();
        let scratch = [reg.sym("u1"), reg.sym("u2")];
        let balances = find_leading_balances(&flow, &frame, -3..=0, &scratch).unwrap();
        let ansatz = balances
            .iter()
            .find(|a| a.exponents == vec![-1, -1] && a.leading[0] == rf("hbar"))
            .unwrap();
        let plan = ParamPlan {
            balance: vec![],
            resonance: vec![(reg.sym("beta"), rf("1/hbar^2"))],
        };
        let sol = expand_solution(&flow, ansatz, 6, &plan, &scratch).unwrap();
        let q = &sol.series[&reg.sym("q")];
        assert_eq!(q.coeff(-1).unwrap(), rf("hbar"));
        assert_eq!(q.coeff(0).unwrap(), rf("-alpha"));
        assert_eq!(
            q.coeff(1).unwrap(),
            rf("(alpha^2 + 2*thetainf - 4*hbar)/(3*hbar)")
        );
        assert_eq!(q.coeff(2).unwrap(), rf("beta/hbar^2"));
        let p = &sol.series[&reg.sym("p")];
        assert_eq!(p.coeff(-1).unwrap(), rf("-hbar/4"));
        assert_eq!(p.coeff(0).unwrap(), rf("-alpha/4"));
        assert_eq!(
            p.coeff(1).unwrap(),
            rf("-(alpha^2 - 4*thetainf + 2*hbar)/(12*hbar)")
        );
        assert_eq!(
            p.coeff(2).unwrap(),
            rf("(3*beta + 2*alpha*thetainf - 2*alpha*hbar)/(4*hbar^2)")
        );
        // Two free parameters: the point alpha and the resonance beta.
        assert_eq!(sol.free_parameters, vec![reg.sym("alpha"), reg.sym("beta")]);
        assert_eq!(sol.ledger.len(), 1);
        assert_eq!(sol.ledger[0].order, 3);
        // Residual vanishes to the computed order.
        let vals = verify_solution(&flow, &sol);
        for (v, val) in vals {
            assert!(
                val >= sol.series[&v].truncation() - 1,
                "residual valuation {val} too small for {}",
                reg.name(v)
            );
        }
    }

    #[test]
    fn corrupted_coefficient_is_detected() {
        let (flow, frame) = piv_flow();
        let reg = frame.registry().clone();
        let rf = |t: &str| parse_ratfunc(&reg, t).unwrap();
        let scratch = [reg.sym("u1"), reg.sym("u2")];
        let balances = find_leading_balances(&flow, &frame, -2..=0, &scratch).unwrap();
        let ansatz = balances
            .iter()
            .find(|a| a.exponents == vec![-1, -1] && a.leading[0] == rf("hbar"))
            .unwrap();
        let plan = ParamPlan {
            balance: vec![],
            resonance: vec![(reg.sym("beta"), rf("1/hbar^2"))],
        };
        let mut sol = expand_solution(&flow, ansatz, 6, &plan, &scratch).unwrap();
        // Corrupt C2 of q.
        let q = sol.series.get_mut(&reg.sym("q")).unwrap();
        let mut coeffs: Vec<(i64, RatFunc)> = q.coeffs().map(|(n, c)| (*n, c.clone())).collect();
        for (n, c) in coeffs.iter_mut() {
            if *n == 1 {
                *c = c.add(&rf("1"));
            }
        }
        *q = TruncatedSeries::from_coeffs(q.expansion(), coeffs, q.truncation());
        let vals = verify_solution(&flow, &sol);
        // The broken coefficient surfaces immediately in the q residual.
        assert!(vals[&reg.sym("q")] <= 1, "valuation {}", vals[&reg.sym("q")]);
    }
}
