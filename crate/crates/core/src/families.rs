//! The movable-pole series families of the built-in models.
//!
//! Each family pins one dominant balance of the first-time flow (its
//! exponent tuple and leading coefficients) together with the parameter
//! normalization that the expansion uses at balance level and at each
//! resonance. Expanding a family is deterministic; the parameter count and
//! resonance orders are part of the family's contract and are asserted.

use std::sync::Arc;

use crate::error::TestError;
use crate::models::{builtin_model, hamilton_vector_field, ModelName, ModelSpec};
use crate::painleve::{
    expand_solution, find_leading_balances, Flow, LaurentSolution, ParamPlan, PoleAnsatz,
};
use crate::parser::parse_ratfunc;
use crate::ratfunc::RatFunc;
use crate::series::Expansion;
use crate::symbols::{Symbol, SymbolRegistry};

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum FamilyId {
    /// Simple-pole family of the fourth Painlevé equation with leading
    /// coefficient +hbar.
    PivPlus,
    /// Mirror family with leading coefficient -hbar.
    PivMinus,
    Gar92Main,
    Gar92Alt,
    Gar5232Main,
    Gar5232Alt,
}

impl FamilyId {
    pub fn model(&self) -> ModelName {
        match self {
            FamilyId::PivPlus | FamilyId::PivMinus => ModelName::PIV,
            FamilyId::Gar92Main | FamilyId::Gar92Alt => ModelName::Gar92,
            FamilyId::Gar5232Main | FamilyId::Gar5232Alt => ModelName::Gar5232,
        }
    }

    pub fn parse(text: &str) -> Option<(ModelName, FamilyId)> {
        let id = match text {
            "pIV-plus" | "piv-plus" | "pIV" => FamilyId::PivPlus,
            "pIV-minus" | "piv-minus" => FamilyId::PivMinus,
            "gar92-main" => FamilyId::Gar92Main,
            "gar92-alt" => FamilyId::Gar92Alt,
            "gar5232-main" => FamilyId::Gar5232Main,
            "gar5232-alt" => FamilyId::Gar5232Alt,
            _ => return None,
        };
        Some((id.model(), id))
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyId::PivPlus => "pIV-plus",
            FamilyId::PivMinus => "pIV-minus",
            FamilyId::Gar92Main => "gar92-main",
            FamilyId::Gar92Alt => "gar92-alt",
            FamilyId::Gar5232Main => "gar5232-main",
            FamilyId::Gar5232Alt => "gar5232-alt",
        }
    }

    pub fn all() -> [FamilyId; 6] {
        [
            FamilyId::PivPlus,
            FamilyId::PivMinus,
            FamilyId::Gar92Main,
            FamilyId::Gar92Alt,
            FamilyId::Gar5232Main,
            FamilyId::Gar5232Alt,
        ]
    }
}

/// The first-time flow of a model, in the shape the test machinery expects.
pub fn model_flow(m: &ModelSpec, time_index: usize) -> Flow {
    let field = hamilton_vector_field(m, time_index);
    Flow::from_vector_field(
        &m.reg,
        m.times[time_index],
        m.canonical_vars(),
        &field,
    )
}

/// Expansion frame at a movable point `alpha` on the first time axis.
pub fn movable_point_frame(reg: &Arc<SymbolRegistry>, time: Symbol) -> Expansion {
    Expansion::laurent(reg, time, RatFunc::symbol(reg, reg.sym("alpha")))
}

pub struct FamilySpec {
    pub id: FamilyId,
    pub exponents: Vec<i64>,
    /// Expected leading coefficients; `None` entries are balance-dependent.
    pub anchors: Vec<Option<RatFunc>>,
    pub plan: ParamPlan,
    /// Expected resonance orders, matched against the expansion ledger.
    pub resonance_orders: Vec<i64>,
    pub default_order: i64,
}

pub fn family_spec(id: FamilyId) -> FamilySpec {
    let reg = SymbolRegistry::standard();
    let rf = |t: &str| parse_ratfunc(&reg, t).unwrap();
    match id {
        FamilyId::PivPlus => FamilySpec {
            id,
            exponents: vec![-1, -1],
            anchors: vec![Some(rf("hbar")), Some(rf("-hbar/4"))],
            plan: ParamPlan {
                balance: vec![],
                resonance: vec![(reg.sym("beta"), rf("1/hbar^2"))],
            },
            resonance_orders: vec![3],
            default_order: 12,
        },
        FamilyId::PivMinus => FamilySpec {
            id,
            exponents: vec![-1, -1],
            anchors: vec![Some(rf("-hbar")), Some(rf("-hbar/4"))],
            plan: ParamPlan {
                balance: vec![],
                resonance: vec![(reg.sym("beta"), rf("1/hbar^2"))],
            },
            resonance_orders: vec![3],
            default_order: 12,
        },
        FamilyId::Gar92Main => FamilySpec {
            id,
            exponents: vec![-5, -3, -2, -2],
            anchors: vec![
                Some(rf("-hbar^5")),
                Some(rf("-hbar^3")),
                Some(rf("hbar^2")),
                None,
            ],
            plan: ParamPlan {
                balance: vec![rf("-3/2*beta*hbar^2")],
                resonance: vec![
                    (reg.sym("gamma"), rf("6/hbar")),
                    (reg.sym("delta"), rf("9/(22*hbar^4)")),
                ],
            },
            resonance_orders: vec![3, 6],
            default_order: 14,
        },
        FamilyId::Gar92Alt => FamilySpec {
            id,
            exponents: vec![-5, -3, -2, -4],
            anchors: vec![
                Some(rf("9*hbar^5")),
                Some(rf("-3*hbar^3")),
                Some(rf("3*hbar^2")),
                Some(rf("-9*hbar^4")),
            ],
            plan: ParamPlan {
                balance: vec![],
                resonance: vec![
                    (reg.sym("beta"), rf("1/hbar^3")),
                    (reg.sym("gamma"), rf("1/hbar^5")),
                ],
            },
            resonance_orders: vec![8, 10],
            default_order: 13,
        },
        FamilyId::Gar5232Main => FamilySpec {
            id,
            exponents: vec![-1, -2, 0, 1],
            anchors: vec![Some(rf("hbar")), None, None, Some(rf("-1/hbar"))],
            plan: ParamPlan {
                balance: vec![rf("beta*hbar^2")],
                resonance: vec![
                    (reg.sym("gamma"), rf("2/hbar")),
                    (reg.sym("delta"), rf("5/(2*hbar^2)")),
                ],
            },
            resonance_orders: vec![1, 2],
            default_order: 12,
        },
        FamilyId::Gar5232Alt => FamilySpec {
            id,
            exponents: vec![-1, 2, -2, -3],
            anchors: vec![Some(rf("-hbar")), None, Some(rf("hbar^2")), None],
            plan: ParamPlan {
                balance: vec![rf("beta/hbar^2")],
                resonance: vec![
                    (reg.sym("gamma"), rf("hbar^2")),
                    (reg.sym("delta"), rf("1/hbar^3")),
                ],
            },
            resonance_orders: vec![1, 4],
            default_order: 12,
        },
    }
}

/// Locate the family's ansatz among the dominant balances of the model's
/// first-time flow.
pub fn family_ansatz(id: FamilyId) -> Result<PoleAnsatz, TestError> {
    let m = builtin_model(id.model());
    let reg = m.reg.clone();
    let flow = model_flow(&m, 0);
    let frame = movable_point_frame(&reg, m.times[0]);
    let spec = family_spec(id);
    let scratch: Vec<Symbol> = (1..=flow.vars.len())
        .map(|k| reg.sym(&format!("u{k}")))
        .collect();
    let lo = *spec.exponents.iter().min().unwrap();
    let hi = *spec.exponents.iter().max().unwrap();
    let balances = find_leading_balances(&flow, &frame, lo..=hi.max(0), &scratch)?;
    balances
        .into_iter()
        .find(|a| {
            a.exponents == spec.exponents
                && spec
                    .anchors
                    .iter()
                    .zip(a.leading.iter())
                    .all(|(want, got)| want.as_ref().map_or(true, |w| w == got))
        })
        .ok_or(TestError::AnsatzNotFound)
}

/// Expand a family to the given relative order (or its default).
pub fn expand_family(id: FamilyId, order: Option<i64>) -> Result<LaurentSolution, TestError> {
    let m = builtin_model(id.model());
    let reg = m.reg.clone();
    let flow = model_flow(&m, 0);
    let spec = family_spec(id);
    let ansatz = family_ansatz(id)?;
    let scratch: Vec<Symbol> = (1..=flow.vars.len())
        .map(|k| reg.sym(&format!("u{k}")))
        .collect();
    let sol = expand_solution(
        &flow,
        &ansatz,
        order.unwrap_or(spec.default_order),
        &spec.plan,
        &scratch,
    )?;
    let orders: Vec<i64> = sol.ledger.iter().map(|e| e.order).collect();
    assert_eq!(
        orders, spec.resonance_orders,
        "{}: unexpected resonance structure",
        id.as_str()
    );
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::painleve::verify_solution;
    use std::collections::BTreeMap;

    fn check_series(
        sol: &LaurentSolution,
        var: &str,
        expect: &[(i64, &str)],
        zero_at: &[i64],
    ) {
        let reg = SymbolRegistry::standard();
        let s = sol.series_for(reg.sym(var));
        for (n, text) in expect {
            let want = parse_ratfunc(&reg, text).unwrap();
            let got = s
                .coeff(*n)
                .unwrap_or_else(|| panic!("{var}: exponent {n} beyond truncation"));
            assert_eq!(got, want, "{var} coefficient at {n}");
        }
        for n in zero_at {
            let got = s.coeff(*n).unwrap();
            assert!(got.is_zero(), "{var} coefficient at {n} should vanish: {got}");
        }
    }

    fn residuals_vanish(id: FamilyId, sol: &LaurentSolution) {
        let m = builtin_model(id.model());
        let flow = model_flow(&m, 0);
        for (v, val) in verify_solution(&flow, sol) {
            assert!(
                val >= sol.series[&v].truncation() - 1,
                "{}: residual valuation {val} for {}",
                id.as_str(),
                m.reg.name(v)
            );
        }
    }

    #[test]
    fn piv_family_golden() {
        let reg = SymbolRegistry::standard();
        let sol = expand_family(FamilyId::PivPlus, Some(6)).unwrap();
        check_series(
            &sol,
            "q",
            &[
                (-1, "hbar"),
                (0, "-alpha"),
                (1, "(alpha^2 + 2*thetainf - 4*hbar)/(3*hbar)"),
                (2, "beta/hbar^2"),
                // Sign forced by the scalar second-order equation: the
                // residual vanishes with the minus and breaks without it.
                (
                    3,
                    "-(alpha^4 + 36*alpha*beta + 18*theta0^2 - 14*thetainf^2 \
                     + 4*alpha^2*(thetainf - 5*hbar) + 32*thetainf*hbar - 26*hbar^2)/(45*hbar^3)",
                ),
            ],
            &[],
        );
        check_series(
            &sol,
            "p",
            &[
                (-1, "-hbar/4"),
                (0, "-alpha/4"),
                (1, "-(alpha^2 - 4*thetainf + 2*hbar)/(12*hbar)"),
                (2, "(3*beta + 2*alpha*thetainf - 2*alpha*hbar)/(4*hbar^2)"),
            ],
            &[],
        );
        assert_eq!(
            sol.free_parameters,
            vec![reg.sym("alpha"), reg.sym("beta")]
        );
        residuals_vanish(FamilyId::PivPlus, &sol);
    }

    #[test]
    fn gar92_main_family_golden() {
        let reg = SymbolRegistry::standard();
        let sol = expand_family(FamilyId::Gar92Main, Some(12)).unwrap();
        check_series(
            &sol,
            "q1",
            &[
                (-5, "-hbar^5"),
                (-3, "beta*hbar^3"),
                (0, "gamma"),
                (1, "(10*alpha - 18*t2*beta - 35*beta^3)/(70*hbar)"),
                (2, "-3*(50*beta*gamma - 3*hbar)/(20*hbar^2)"),
                (3, "delta/hbar^3"),
                (4, "-(-36*t2*gamma + 105*beta^2*gamma - 5*beta*hbar)/(14*hbar^4)"),
            ],
            &[-4, -2, -1],
        );
        check_series(
            &sol,
            "q2",
            &[
                (-3, "-hbar^3"),
                (1, "-3*(4*t2 + 5*beta^2)/(20*hbar)"),
                (2, "-6*gamma/hbar^2"),
                (3, "(4*alpha - 24*t2*beta - 35*beta^3)/(14*hbar^3)"),
                (4, "(-30*beta*gamma + hbar)/(4*hbar^4)"),
                (
                    5,
                    "3*(1008*t2^2 + 400*alpha*beta + 120*t2*beta^2 - 1925*beta^4 \
                     + 1400*delta)/(15400*hbar^5)",
                ),
            ],
            &[-2, -1, 0],
        );
        check_series(
            &sol,
            "p1",
            &[
                (-2, "hbar^2"),
                (0, "beta/2"),
                (2, "-3*(4*t2 + 5*beta^2)/(20*hbar^2)"),
                (3, "-4*gamma/hbar^3"),
                (4, "(4*alpha - 24*t2*beta - 35*beta^3)/(28*hbar^4)"),
                (5, "(-30*beta*gamma + hbar)/(10*hbar^5)"),
                (
                    6,
                    "(1008*t2^2 + 400*alpha*beta + 120*t2*beta^2 - 1925*beta^4 \
                     + 1400*delta)/(15400*hbar^6)",
                ),
            ],
            &[-1, 1],
        );
        check_series(
            &sol,
            "p2",
            &[
                (-2, "-3/2*beta*hbar^2"),
                (0, "t2 + 3/2*beta^2"),
                (1, "6*gamma/hbar"),
                (2, "9*(4*t2*beta + 5*beta^3)/(40*hbar^2)"),
                (3, "1/(5*hbar^2)"),
                (
                    4,
                    "-3*(1008*t2^2 + 400*alpha*beta + 120*t2*beta^2 - 1925*beta^4 \
                     - 1680*delta)/(12320*hbar^4)",
                ),
                (5, "-9*(32*t2*gamma + 70*beta^2*gamma - beta*hbar)/(140*hbar^5)"),
            ],
            &[-1],
        );
        assert_eq!(
            sol.free_parameters,
            vec![
                reg.sym("alpha"),
                reg.sym("beta"),
                reg.sym("gamma"),
                reg.sym("delta")
            ]
        );
        residuals_vanish(FamilyId::Gar92Main, &sol);
    }

    #[test]
    fn gar92_alt_family_golden() {
        let reg = SymbolRegistry::standard();
        let sol = expand_family(FamilyId::Gar92Alt, Some(11)).unwrap();
        check_series(
            &sol,
            "q1",
            &[
                (-5, "9*hbar^5"),
                (1, "alpha/(21*hbar)"),
                (2, "1/(20*hbar)"),
                (3, "beta/hbar^3"),
                (5, "gamma/hbar^5"),
            ],
            &[-4, -3, -2, -1, 0, 4],
        );
        // The q2 display block duplicates p1 in print; the flow forces
        // q2 = (hbar/2) p1', which is what the expansion produces.
        check_series(
            &sol,
            "q2",
            &[
                (-3, "-3*hbar^3"),
                (1, "-3*t2/(35*hbar)"),
                (3, "-2*alpha/(63*hbar^3)"),
                (4, "-1/(12*hbar^3)"),
            ],
            &[-2, -1, 0, 2],
        );
        check_series(
            &sol,
            "p1",
            &[
                (-2, "3*hbar^2"),
                (2, "-3*t2/(35*hbar^2)"),
                (4, "-alpha/(63*hbar^4)"),
                (5, "-1/(30*hbar^4)"),
            ],
            &[-1, 0, 1, 3],
        );
        check_series(
            &sol,
            "p2",
            &[
                (-4, "-9*hbar^4"),
                (0, "8*t2/35"),
                (2, "2*alpha/(21*hbar^2)"),
                (3, "2/(15*hbar^2)"),
            ],
            &[-3, -2, -1, 1],
        );
        // Exactly three free parameters.
        assert_eq!(
            sol.free_parameters,
            vec![reg.sym("alpha"), reg.sym("beta"), reg.sym("gamma")]
        );
        residuals_vanish(FamilyId::Gar92Alt, &sol);
    }

    #[test]
    fn gar5232_main_family_golden() {
        let reg = SymbolRegistry::standard();
        let sol = expand_family(FamilyId::Gar5232Main, Some(8)).unwrap();
        check_series(
            &sol,
            "q1",
            &[
                (-1, "hbar"),
                (1, "-(alpha - 2*beta)/(3*hbar)"),
                (2, "gamma/hbar^2"),
                (3, "delta/hbar^3"),
                (
                    4,
                    "-(3*alpha*gamma - 10*beta*gamma + alpha*hbar - 2*beta*hbar)/(9*hbar^4)",
                ),
            ],
            &[0],
        );
        check_series(
            &sol,
            "q2",
            &[
                (-2, "beta*hbar^2"),
                (0, "(alpha*beta - 2*beta^2)/3"),
                (1, "-2*beta*gamma/(3*hbar)"),
                (
                    2,
                    "(alpha^2*beta - 4*alpha*beta^2 + 4*beta^3 - 9*beta*delta)/(18*hbar^2)",
                ),
                (
                    3,
                    "2*(-2*alpha*beta*gamma + alpha*beta*hbar - 2*beta^2*hbar)/(45*hbar^3)",
                ),
            ],
            &[-1],
        );
        check_series(
            &sol,
            "p1",
            &[
                (0, "beta"),
                (1, "1/2 + 2*gamma/hbar"),
                (2, "(alpha^2 - 4*alpha*beta + 4*beta^2 + 45*delta)/(18*hbar^2)"),
                (
                    3,
                    "-(4*alpha*gamma - 12*beta*gamma + alpha*hbar - 2*beta*hbar)/(3*hbar^3)",
                ),
            ],
            &[],
        );
        check_series(
            &sol,
            "p2",
            &[
                (1, "-1/hbar"),
                (2, "-(4*gamma + hbar)/(4*beta*hbar^2)"),
                (3, "2*(alpha - 2*beta)/(3*hbar^3)"),
                (
                    4,
                    "(4*alpha*gamma - 20*beta*gamma + alpha*hbar - 2*beta*hbar)/(12*beta*hbar^4)",
                ),
            ],
            &[],
        );
        assert_eq!(
            sol.free_parameters,
            vec![
                reg.sym("alpha"),
                reg.sym("beta"),
                reg.sym("gamma"),
                reg.sym("delta")
            ]
        );
        residuals_vanish(FamilyId::Gar5232Main, &sol);
    }

    #[test]
    fn gar5232_alt_family_golden() {
        let reg = SymbolRegistry::standard();
        let sol = expand_family(FamilyId::Gar5232Alt, Some(9)).unwrap();
        check_series(
            &sol,
            "q1",
            &[
                (-1, "-hbar"),
                (1, "-(2*t2 - alpha*beta)/(3*beta*hbar)"),
                (2, "-(4*beta*gamma - 3*hbar)/(4*hbar^2)"),
                (3, "delta/hbar^3"),
            ],
            &[0],
        );
        check_series(
            &sol,
            "q2",
            &[
                (2, "beta/hbar^2"),
                (4, "(2*t2 - alpha*beta)/(3*hbar^4)"),
                (5, "beta*(4*beta*gamma - 3*hbar)/(6*hbar^5)"),
            ],
            &[3],
        );
        check_series(
            &sol,
            "p1",
            &[
                (-2, "hbar^2"),
                (0, "(t2 + alpha*beta)/(3*beta)"),
                (1, "1/2"),
                (
                    2,
                    "(4*t2^2 - 4*t2*alpha*beta + beta^2*alpha^2 + 9*beta^2*delta)/(18*beta^2*hbar^2)",
                ),
            ],
            &[-1],
        );
        check_series(
            &sol,
            "p2",
            &[
                (-3, "t2*hbar^3/beta^2"),
                (-2, "gamma*hbar^2"),
                (
                    0,
                    "(4*alpha*gamma*beta^2 - 12*t2*beta*gamma + 3*t2*hbar)/(12*beta^2)",
                ),
            ],
            &[-1],
        );
        assert_eq!(
            sol.free_parameters,
            vec![
                reg.sym("alpha"),
                reg.sym("beta"),
                reg.sym("gamma"),
                reg.sym("delta")
            ]
        );
        residuals_vanish(FamilyId::Gar5232Alt, &sol);
    }

    #[test]
    fn gar92_balance_table() {
        // The main and alternative balances both appear in the search.
        let main = family_ansatz(FamilyId::Gar92Main).unwrap();
        assert_eq!(main.free_unknowns.len(), 1);
        let alt = family_ansatz(FamilyId::Gar92Alt).unwrap();
        assert!(alt.free_unknowns.is_empty());
    }

    #[test]
    fn determinism_of_expansion() {
        let a = expand_family(FamilyId::Gar5232Main, Some(6)).unwrap();
        let b = expand_family(FamilyId::Gar5232Main, Some(6)).unwrap();
        let reg = SymbolRegistry::standard();
        for v in ["q1", "q2", "p1", "p2"] {
            let s = reg.sym(v);
            let ca: BTreeMap<i64, String> = a.series[&s]
                .coeffs()
                .map(|(n, c)| (*n, c.to_string()))
                .collect();
            let cb: BTreeMap<i64, String> = b.series[&s]
                .coeffs()
                .map(|(n, c)| (*n, c.to_string()))
                .collect();
            assert_eq!(ca, cb);
        }
    }
}
