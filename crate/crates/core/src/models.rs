//! Built-in isomonodromy models and compatibility checkers.
//!
//! Three models are embedded as exact data: the fourth Painlevé equation in
//! Schrödinger form, and the rank-2 Lax data of the degenerate Garnier
//! systems of type 9/2 and 5/2+3/2. The scalar second-order form is derived
//! from the rank-2 system by direct elimination of the second vector entry;
//! the shorthand first-order coefficient often quoted for that reduction is
//! also evaluated and compared against the derived one (they disagree by a
//! trace term, which the comparison surfaces).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::ModelError;
use crate::parser::parse_ratfunc;
use crate::ratfunc::RatFunc;
use crate::symbols::{Symbol, SymbolRegistry};

/// 2x2 matrix of rational functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2(pub [[RatFunc; 2]; 2]);

impl Mat2 {
    pub fn new(e11: RatFunc, e12: RatFunc, e21: RatFunc, e22: RatFunc) -> Self {
        Mat2([[e11, e12], [e21, e22]])
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatFunc {
        &self.0[i][j]
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Mat2 {
        Mat2([
            [f(&self.0[0][0]), f(&self.0[0][1])],
            [f(&self.0[1][0]), f(&self.0[1][1])],
        ])
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2([
            [self.0[0][0].add(&o.0[0][0]), self.0[0][1].add(&o.0[0][1])],
            [self.0[1][0].add(&o.0[1][0]), self.0[1][1].add(&o.0[1][1])],
        ])
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2([
            [self.0[0][0].sub(&o.0[0][0]), self.0[0][1].sub(&o.0[0][1])],
            [self.0[1][0].sub(&o.0[1][0]), self.0[1][1].sub(&o.0[1][1])],
        ])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| {
            self.0[i][0]
                .mul(&o.0[0][j])
                .add(&self.0[i][1].mul(&o.0[1][j]))
        };
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn commutator(&self, o: &Mat2) -> Mat2 {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(RatFunc::is_zero)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum ModelName {
    PIV,
    Gar92,
    Gar5232,
}

impl ModelName {
    pub fn parse(name: &str) -> Result<Self, ModelError> {
        match name {
            "pIV" | "piv" => Ok(ModelName::PIV),
            "gar92" => Ok(ModelName::Gar92),
            "gar5232" => Ok(ModelName::Gar5232),
            other => Err(ModelError::UnknownModel(other.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelName::PIV => "pIV",
            ModelName::Gar92 => "gar92",
            ModelName::Gar5232 => "gar5232",
        }
    }
}

/// One isomonodromy model: symbol roles, Hamiltonians, and either closed
/// Schrödinger data or rank-2 Lax data from which it is derived.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub name: ModelName,
    pub reg: Arc<SymbolRegistry>,
    /// Deformation times, one Hamiltonian per time.
    pub times: Vec<Symbol>,
    /// Canonical coordinates ordered (q..., p...).
    pub q_vars: Vec<Symbol>,
    pub p_vars: Vec<Symbol>,
    pub constants: Vec<Symbol>,
    pub hamiltonians: Vec<RatFunc>,
    pub lax: Option<LaxData>,
    /// Closed-form Schrödinger data when no Lax matrices are embedded.
    pub closed_schrodinger: Option<(RatFunc, Vec<RatFunc>)>,
    /// Nonvanishing assumptions this model relies on.
    pub assumptions: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct LaxData {
    pub l: Mat2,
    /// One deformation matrix per time.
    pub m: Vec<Mat2>,
}

/// Scalar (Schrödinger) data derived from a model.
#[derive(Clone, Debug)]
pub struct SchrodingerData {
    pub q: RatFunc,
    /// Deformation coefficients, one per time.
    pub a: Vec<RatFunc>,
    /// First-order coefficient of the eliminated scalar equation.
    pub p1: RatFunc,
    pub p2: RatFunc,
    /// The often-quoted shorthand for `p1` and whether it matches the
    /// derived one.
    pub p1_shorthand: RatFunc,
    pub p1_shorthand_matches: bool,
    /// Numerator of L12 in x: its zeros are the apparent singular points.
    pub apparent_locus: crate::poly::MultiPoly,
}

fn rf(reg: &Arc<SymbolRegistry>, text: &str) -> RatFunc {
    parse_ratfunc(reg, text).unwrap_or_else(|e| panic!("bad model expression {text}: {e}"))
}

/// Exact data for one of the built-in models.
pub fn builtin_model(name: ModelName) -> ModelSpec {
    let reg = SymbolRegistry::standard();
    match name {
        ModelName::PIV => {
            let h = rf(
                &reg,
                "2*q*(p^2 - hbar*p/q - ((theta0^2 - hbar^2)/(4*q^2) - thetainf/4 + ((q + 2*t1)/4)^2))",
            );
            let q_pot = rf(
                &reg,
                "theta0^2/(4*x^2) - thetainf/4 + ((x + 2*t1)/4)^2 \
                 + (2*q*(p^2 - hbar*p/q - ((theta0^2 - hbar^2)/(4*q^2) - thetainf/4 + ((q + 2*t1)/4)^2)))/(2*x) \
                 - hbar*p*q/(x*(x - q)) + hbar^2*(-1/(4*x^2) + 3/(4*(x - q)^2))",
            );
            let a = rf(&reg, "2*x/(x - q)");
            ModelSpec {
                name,
                reg: reg.clone(),
                times: vec![reg.sym("t1")],
                q_vars: vec![reg.sym("q")],
                p_vars: vec![reg.sym("p")],
                constants: vec![reg.sym("theta0"), reg.sym("thetainf")],
                hamiltonians: vec![h],
                lax: None,
                closed_schrodinger: Some((q_pot, vec![a])),
                assumptions: vec!["hbar != 0".into(), "q != 0".into()],
            }
        }
        ModelName::Gar92 => {
            let z = RatFunc::zero(&reg);
            let one = RatFunc::one(&reg);
            let l0 = Mat2::new(z.clone(), one.clone(), z.clone(), z.clone());
            let l1 = Mat2::new(z.clone(), rf(&reg, "p1"), one.clone(), z.clone());
            let l2 = Mat2::new(
                rf(&reg, "q2"),
                rf(&reg, "p1^2 + p2 + 2*t2"),
                rf(&reg, "-p1"),
                rf(&reg, "-q2"),
            );
            let l3 = Mat2::new(
                rf(&reg, "q1 - p1*q2"),
                rf(&reg, "p1^3 + 2*p1*p2 - q2^2 + t2*p1 - t1"),
                rf(&reg, "-p2 + t2"),
                rf(&reg, "-q1 + p1*q2"),
            );
            let m10 = Mat2::new(z.clone(), rf(&reg, "-2*p1"), rf(&reg, "-1"), z.clone());
            let m20 = Mat2::new(
                rf(&reg, "q2"),
                rf(&reg, "p1^2 + 2*p2 + t2"),
                rf(&reg, "-p1"),
                rf(&reg, "-q2"),
            );
            let x = rf(&reg, "x");
            let x2 = rf(&reg, "x^2");
            let x3 = rf(&reg, "x^3");
            // L = L0 x^3 + L1 x^2 + L2 x + L3
            let l = l0
                .map(|e| e.mul(&x3))
                .add(&l1.map(|e| e.mul(&x2)))
                .add(&l2.map(|e| e.mul(&x)))
                .add(&l3);
            // M1 = -L0 x + M10, M2 = L0 x^2 + L1 x + M20
            let m1 = l0.map(|e| e.mul(&x).neg()).add(&m10);
            let m2 = l0
                .map(|e| e.mul(&x2))
                .add(&l1.map(|e| e.mul(&x)))
                .add(&m20);
            let h1 = rf(
                &reg,
                "p1^4 + 3*p1^2*p2 + p1*q2^2 - 2*q1*q2 + p2^2 - t1*p1 + t2*p2",
            );
            // The t2^2*p1 term is forced: with t1^2*p1 in its place the
            // zero-curvature residual is (t1^2 - t2^2) diag(1,-1).
            let h2 = rf(
                &reg,
                "-p1^3*p2 + p1^2*q2^2 + t2*p1^3 - 2*p1*q1*q2 - 2*p1*p2^2 + p2*q2^2 \
                 + t2*p1*p2 + q1^2 - t2*q2^2 + t2^2*p1 + t1*p2",
            );
            ModelSpec {
                name,
                reg: reg.clone(),
                times: vec![reg.sym("t1"), reg.sym("t2")],
                q_vars: vec![reg.sym("q1"), reg.sym("q2")],
                p_vars: vec![reg.sym("p1"), reg.sym("p2")],
                constants: vec![],
                hamiltonians: vec![h1, h2],
                lax: Some(LaxData {
                    l,
                    m: vec![m1, m2],
                }),
                closed_schrodinger: None,
                assumptions: vec!["hbar != 0".into()],
            }
        }
        ModelName::Gar5232 => {
            let z = RatFunc::zero(&reg);
            let one = RatFunc::one(&reg);
            let l0 = Mat2::new(z.clone(), one.clone(), z.clone(), z.clone());
            let l1 = Mat2::new(
                rf(&reg, "q1"),
                rf(&reg, "p1 - q1^2 - t1"),
                one.clone(),
                rf(&reg, "-q1"),
            );
            let l2 = Mat2::new(
                rf(&reg, "p2*q2"),
                rf(&reg, "q2"),
                rf(&reg, "-p1"),
                rf(&reg, "-p2*q2"),
            );
            let l3 = Mat2::new(z.clone(), z.clone(), rf(&reg, "t2/q2"), z.clone());
            let m10 = Mat2::new(z.clone(), rf(&reg, "-1"), z.clone(), z.clone());
            let m11 = Mat2::new(rf(&reg, "-q1"), z.clone(), rf(&reg, "-1"), rf(&reg, "q1"));
            let m20 = Mat2::new(z.clone(), rf(&reg, "-q2/t2"), z.clone(), z.clone());
            let x = rf(&reg, "x");
            let xinv = rf(&reg, "1/x");
            let xinv2 = rf(&reg, "1/x^2");
            // L = L0 x + L1 + L2/x + L3/x^2
            let l = l0
                .map(|e| e.mul(&x))
                .add(&l1)
                .add(&l2.map(|e| e.mul(&xinv)))
                .add(&l3.map(|e| e.mul(&xinv2)));
            // M1 = M10 x + M11, M2 = M20 - L3/(t2 x)
            let m1 = m10.map(|e| e.mul(&x)).add(&m11);
            let t2x_inv = rf(&reg, "-1/(t2*x)");
            let m2 = m20.add(&l3.map(|e| e.mul(&t2x_inv)));
            let h1 = rf(
                &reg,
                "p1^2 - (q1^2 + t1)*p1 - 2*p2*q1*q2 - q2 - t2/q2",
            );
            let h2 = rf(&reg, "(p2^2*q2^2 - p1*q2)/t2 + (p1 - q1^2 - t1)/q2");
            ModelSpec {
                name,
                reg: reg.clone(),
                times: vec![reg.sym("t1"), reg.sym("t2")],
                q_vars: vec![reg.sym("q1"), reg.sym("q2")],
                p_vars: vec![reg.sym("p1"), reg.sym("p2")],
                constants: vec![],
                hamiltonians: vec![h1, h2],
                lax: Some(LaxData {
                    l,
                    m: vec![m1, m2],
                }),
                closed_schrodinger: None,
                assumptions: vec![
                    "hbar != 0".into(),
                    "t2 != 0".into(),
                    "q2 != 0".into(),
                ],
            }
        }
    }
}

impl ModelSpec {
    pub fn canonical_vars(&self) -> Vec<Symbol> {
        self.q_vars
            .iter()
            .chain(self.p_vars.iter())
            .copied()
            .collect()
    }

    pub fn hbar(&self) -> RatFunc {
        RatFunc::symbol(&self.reg, self.reg.sym("hbar"))
    }
}

/// Hamilton vector field for time index `j`, as a map
/// `symbol -> d(symbol)/dt_j` (the right sides divided by hbar, kept as
/// formal hbar-carrying rational functions).
pub fn hamilton_vector_field(m: &ModelSpec, j: usize) -> BTreeMap<Symbol, RatFunc> {
    let h = &m.hamiltonians[j];
    let hbar_inv = m.hbar().recip().unwrap();
    let mut out = BTreeMap::new();
    for (q, p) in m.q_vars.iter().zip(m.p_vars.iter()) {
        out.insert(*q, h.differentiate(*p).mul(&hbar_inv));
        out.insert(*p, h.differentiate(*q).neg().mul(&hbar_inv));
    }
    out
}

/// Total `t_j`-derivative of `f`: explicit time dependence plus the chain
/// rule through a flow map `symbol -> d(symbol)/dt`.
pub fn total_time_derivative(
    f: &RatFunc,
    t: Symbol,
    flow: &BTreeMap<Symbol, RatFunc>,
) -> RatFunc {
    let mut acc = f.differentiate(t);
    for (s, v) in flow {
        let d = f.differentiate(*s);
        if !d.is_zero() {
            acc = acc.add(&d.mul(v));
        }
    }
    acc
}

/// Zero-curvature residual
/// `hbar (dL/dt_j - dM_j/dx) + [L, M_j]`
/// with canonical-variable time derivatives supplied by the Hamilton flow.
/// Identically zero exactly when the model data is compatible.
pub fn check_matrix_compatibility(m: &ModelSpec, j: usize) -> Mat2 {
    let lax = m.lax.as_ref().expect("model has Lax data");
    let t = m.times[j];
    let x = m.reg.sym("x");
    let flow = hamilton_vector_field(m, j);
    let hbar = m.hbar();
    let dl_dt = lax.l.map(|e| total_time_derivative(e, t, &flow));
    let dm_dx = lax.m[j].map(|e| e.differentiate(x));
    let comm = lax.l.commutator(&lax.m[j]);
    dl_dt.sub(&dm_dx).map(|e| e.mul(&hbar)).add(&comm)
}

/// Scalar isomonodromy residual
/// `2 dQ/dt + hbar^2 d^3A/dx^3 - 4 Q dA/dx - 2 A dQ/dx`
/// with the `t`-dependence of auxiliary symbols supplied by `flow`.
pub fn check_scalar_compatibility(
    q: &RatFunc,
    a: &RatFunc,
    flow: &BTreeMap<Symbol, RatFunc>,
    t: Symbol,
) -> RatFunc {
    let reg = q.registry().clone();
    let x = reg.sym("x");
    let hbar2 = rf(&reg, "hbar^2");
    let dq_dt = total_time_derivative(q, t, flow);
    let da_dx = a.differentiate(x);
    let d3a = da_dx.differentiate(x).differentiate(x);
    let dq_dx = q.differentiate(x);
    let two = RatFunc::from_int(&reg, 2);
    let four = RatFunc::from_int(&reg, 4);
    dq_dt
        .mul(&two)
        .add(&hbar2.mul(&d3a))
        .sub(&four.mul(q).mul(&da_dx))
        .sub(&two.mul(a).mul(&dq_dx))
}

/// Derive the Schrödinger data from the rank-2 system by eliminating the
/// second vector entry, then applying the standard gauge:
/// `Q = -P2 + P1^2/4 + (hbar/2) dP1/dx`, `A_j = M_{j,12} / L12`.
pub fn schrodinger_from_lax(m: &ModelSpec) -> Result<SchrodingerData, ModelError> {
    let reg = m.reg.clone();
    let x = reg.sym("x");
    if let Some((q, a)) = &m.closed_schrodinger {
        // The closed form is the model's own scalar data.
        let l12 = RatFunc::one(&reg);
        return Ok(SchrodingerData {
            q: q.clone(),
            a: a.clone(),
            p1: RatFunc::zero(&reg),
            p2: q.neg(),
            p1_shorthand: RatFunc::zero(&reg),
            p1_shorthand_matches: true,
            apparent_locus: l12.numer().clone(),
        });
    }
    let lax = m.lax.as_ref().expect("model has Lax data");
    let l11 = lax.l.entry(0, 0);
    let l12 = lax.l.entry(0, 1);
    let l21 = lax.l.entry(1, 0);
    let l22 = lax.l.entry(1, 1);
    if l12.is_zero() {
        return Err(ModelError::L12IdenticallyZero);
    }
    let hbar = m.hbar();
    let dl12 = l12.differentiate(x);
    let dl11 = l11.differentiate(x);
    let dlog_l12 = dl12.div(l12).unwrap();
    // Elimination of the second entry gives
    //   hbar^2 f'' + P1 hbar f' + P2 f = 0 with
    //   P1 = -L11 - L22 - hbar L12'/L12,
    //   P2 = L11 L22 - L12 L21 + hbar(-L11' + L11 L12'/L12).
    let p1 = l11.add(l22).neg().sub(&hbar.mul(&dlog_l12));
    let p2 = l11
        .mul(l22)
        .sub(&l12.mul(l21))
        .add(&hbar.mul(&l11.mul(&dlog_l12).sub(&dl11)));
    // Shorthand with L12 in place of L22 in the trace term.
    let p1_shorthand = l11.add(l12).neg().sub(&hbar.mul(&dlog_l12));
    let p1_shorthand_matches = p1 == p1_shorthand;
    let quarter = rf(&reg, "1/4");
    let half_hbar = rf(&reg, "hbar/2");
    let q = p2
        .neg()
        .add(&p1.mul(&p1).mul(&quarter))
        .add(&half_hbar.mul(&p1.differentiate(x)));
    // hbar-degree of the derived potential never exceeds 2.
    let hs = reg.sym("hbar");
    assert!(
        q.numer().degree(hs).max(0) - q.denom().degree(hs).max(0) <= 2,
        "potential has unexpected hbar degree"
    );
    let a: Vec<RatFunc> = lax
        .m
        .iter()
        .map(|mj| mj.entry(0, 1).div(l12).unwrap())
        .collect();
    // Clear x-denominators of L12: the zeros of the numerator are the
    // apparent singular points.
    let apparent_locus = l12.numer().clone();
    Ok(SchrodingerData {
        q,
        a,
        p1,
        p2,
        p1_shorthand,
        p1_shorthand_matches,
        apparent_locus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gar92_lax_entries() {
        let m = builtin_model(ModelName::Gar92);
        let lax = m.lax.as_ref().unwrap();
        // Constant entry of the (2,1) slot is -p2 + t2.
        let l21 = lax.l.entry(1, 0);
        let expect = rf(&m.reg, "x^2 - p1*x - p2 + t2");
        assert_eq!(l21, &expect);
    }

    #[test]
    fn gar5232_second_hamiltonian() {
        let m = builtin_model(ModelName::Gar5232);
        let expect = rf(&m.reg, "(p2^2*q2^2 - p1*q2)/t2 + (p1 - q1^2 - t1)/q2");
        assert_eq!(m.hamiltonians[1], expect);
    }

    #[test]
    fn piv_deformation_coefficient() {
        let m = builtin_model(ModelName::PIV);
        let (_, a) = m.closed_schrodinger.as_ref().unwrap();
        assert_eq!(a[0], rf(&m.reg, "2*x/(x - q)"));
    }

    #[test]
    fn piv_flow_q_equation() {
        let m = builtin_model(ModelName::PIV);
        let flow = hamilton_vector_field(&m, 0);
        let expect = rf(&m.reg, "(4*q*p - 2*hbar)/hbar");
        assert_eq!(flow[&m.reg.sym("q")], expect);
    }

    #[test]
    fn gar5232_flow_q2_equation() {
        let m = builtin_model(ModelName::Gar5232);
        let flow = hamilton_vector_field(&m, 0);
        assert_eq!(flow[&m.reg.sym("q2")], rf(&m.reg, "-2*q1*q2/hbar"));
    }

    #[test]
    fn gar92_flow_p1_equation() {
        let m = builtin_model(ModelName::Gar92);
        let flow = hamilton_vector_field(&m, 0);
        assert_eq!(flow[&m.reg.sym("p1")], rf(&m.reg, "2*q2/hbar"));
    }

    #[test]
    fn matrix_compatibility_gar92() {
        let m = builtin_model(ModelName::Gar92);
        for j in 0..2 {
            let res = check_matrix_compatibility(&m, j);
            assert!(res.is_zero(), "gar92 residual j={j}: {:?}", res);
        }
    }

    #[test]
    fn matrix_compatibility_gar5232() {
        let m = builtin_model(ModelName::Gar5232);
        for j in 0..2 {
            let res = check_matrix_compatibility(&m, j);
            assert!(res.is_zero(), "gar5232 residual j={j}: {:?}", res);
        }
    }

    #[test]
    fn gar92_h2_time_square_variant_fails() {
        // Negative control: the variant second Hamiltonian carrying
        // t1^2*p1 leaves a (t1^2 - t2^2) diagonal residual.
        let mut m = builtin_model(ModelName::Gar92);
        let delta = rf(&m.reg, "t1^2*p1 - t2^2*p1");
        m.hamiltonians[1] = m.hamiltonians[1].add(&delta);
        let res = check_matrix_compatibility(&m, 1);
        assert_eq!(res.entry(0, 0), &rf(&m.reg, "t1^2 - t2^2"));
        assert_eq!(res.entry(1, 1), &rf(&m.reg, "t2^2 - t1^2"));
    }

    #[test]
    fn matrix_compatibility_detects_perturbation() {
        let mut m = builtin_model(ModelName::Gar92);
        m.hamiltonians[0] = m.hamiltonians[0].add(&rf(&m.reg, "q1"));
        let res = check_matrix_compatibility(&m, 0);
        assert!(!res.entry(1, 0).is_zero());
    }

    #[test]
    fn piv_scalar_compatibility() {
        let m = builtin_model(ModelName::PIV);
        let (q, a) = m.closed_schrodinger.clone().unwrap();
        let flow = hamilton_vector_field(&m, 0);
        let res = check_scalar_compatibility(&q, &a[0], &flow, m.reg.sym("t1"));
        assert!(res.is_zero(), "residual: {res}");
    }

    #[test]
    fn toy_diagonal_reduction() {
        // L = [[f, 1], [0, -f]] with f = x^2 + t1: Q = f^2 + hbar f'.
        let reg = SymbolRegistry::standard();
        let f = rf(&reg, "x^2 + t1");
        let m = ModelSpec {
            name: ModelName::PIV,
            reg: reg.clone(),
            times: vec![reg.sym("t1")],
            q_vars: vec![reg.sym("q")],
            p_vars: vec![reg.sym("p")],
            constants: vec![],
            hamiltonians: vec![RatFunc::zero(&reg)],
            lax: Some(LaxData {
                l: Mat2::new(
                    f.clone(),
                    RatFunc::one(&reg),
                    RatFunc::zero(&reg),
                    f.neg(),
                ),
                m: vec![Mat2::new(
                    RatFunc::zero(&reg),
                    RatFunc::zero(&reg),
                    RatFunc::zero(&reg),
                    RatFunc::zero(&reg),
                )],
            }),
            closed_schrodinger: None,
            assumptions: vec![],
        };
        let sch = schrodinger_from_lax(&m).unwrap();
        let expect = rf(&reg, "(x^2 + t1)^2 + 2*hbar*x");
        assert_eq!(sch.q, expect);
        assert!(sch.p1.is_zero());
    }

    #[test]
    fn shorthand_p1_differs_for_garnier_models() {
        for name in [ModelName::Gar92, ModelName::Gar5232] {
            let m = builtin_model(name);
            let sch = schrodinger_from_lax(&m).unwrap();
            assert!(
                !sch.p1_shorthand_matches,
                "{}: shorthand unexpectedly agrees",
                name.as_str()
            );
        }
    }
}
