//! Coefficient matching for a prescribed degree partition.
//!
//! The unknown partial quotients a_0, ..., a_{m-1} and h_1 = f - a_0^2 are
//! written with symbolic coefficients and the identity
//! kappa p_{m-2} h_1 = q_{m-3} + 2 kappa a_0 q_{m-2} is expanded in x. Every
//! coefficient of the difference must vanish. The equations are eliminated
//! one variable at a time by exact substitution.
//!
//! Leading coefficients of a_1, ..., a_{m/2} and kappa are nonvanishing, so
//! they may appear with negative exponents. A variable is only solved from an
//! equation in which it occurs linearly with a unit coefficient.

use crate::cf::cf_expand;
use crate::error::{Error, Result};
use crate::hseq::continuants;
use crate::multipoly::{Monomial, MultiPoly, Var};
use crate::partitions::PartitionSpec;
use crate::poly::Poly;
use crate::rational::{format_rational, Rational};
use crate::report::Report;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

/// Polynomial in x with multivariate coefficients, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct XPoly(Vec<MultiPoly>);

impl XPoly {
    pub fn new(mut c: Vec<MultiPoly>) -> XPoly {
        while c.last().is_some_and(|t| t.is_zero()) {
            c.pop();
        }
        XPoly(c)
    }

    pub fn constant(c: MultiPoly) -> XPoly {
        XPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> MultiPoly {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &XPoly) -> XPoly {
        let n = self.0.len().max(o.0.len());
        XPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &XPoly) -> XPoly {
        let n = self.0.len().max(o.0.len());
        XPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &XPoly) -> XPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return XPoly::default();
        }
        let mut out = vec![MultiPoly::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        XPoly::new(out)
    }

    pub fn scale(&self, c: &MultiPoly) -> XPoly {
        XPoly::new(self.0.iter().map(|t| t * c).collect())
    }

    pub fn eval(&self, values: &HashMap<Var, Rational>) -> Result<Poly> {
        Ok(Poly::new(self.0.iter().map(|c| c.eval(values)).collect::<Result<Vec<_>>>()?))
    }
}

/// Kind of unknown, used for naming and for the default pivot order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    /// Coefficient b_j of h_1 below its leading term.
    B,
    /// Coefficient r_j of a_0 below x^{g+1}.
    R,
    /// Constant coefficient c_{i,0} of a_i.
    K,
    /// Other non-leading coefficient c_{i,j}.
    C,
    /// Leading coefficient c_{i,delta_i}; nonvanishing.
    L,
    /// The skew value; nonvanishing.
    Kappa,
}

impl Role {
    fn rank(self) -> u8 {
        match self {
            Role::B => 0,
            Role::R | Role::K => 1,
            Role::C => 2,
            Role::L => 3,
            Role::Kappa => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarInfo {
    pub var: Var,
    /// Short name: l_i for the leading coefficient of a_i, k_i for its
    /// constant term, c_i for its linear term.
    pub alias: String,
    pub role: Role,
    pub flagged: bool,
}

/// One coefficient of the matching identity, indexed by its power of x.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub power: usize,
    pub poly: MultiPoly,
}

#[derive(Clone, Debug)]
pub struct SymbolicSystem {
    pub spec: PartitionSpec,
    pub variables: Vec<VarInfo>,
    pub kappa: MultiPoly,
    /// a_0, ..., a_m with a_m = 2 kappa a_0.
    pub a: Vec<XPoly>,
    pub h1: XPoly,
    pub identity: XPoly,
    /// Ordered by descending power of x.
    pub equations: Vec<Equation>,
    flagged: HashSet<Var>,
}

impl SymbolicSystem {
    pub fn is_flagged(&self, v: Var) -> bool {
        self.flagged.contains(&v)
    }

    pub fn info(&self, v: Var) -> Option<&VarInfo> {
        self.variables.iter().find(|i| i.var == v)
    }

    /// Accepts either the canonical name or the short alias.
    pub fn resolve(&self, name: &str) -> Option<Var> {
        let name = name.trim();
        self.variables.iter().find(|i| i.var.name() == name || i.alias == name).map(|i| i.var)
    }

    pub fn to_alias(&self, p: &MultiPoly) -> MultiPoly {
        p.rename(&alias_map(&self.variables))
    }

    /// Parses an expression written in short aliases or canonical names.
    pub fn parse_expr(&self, s: &str) -> Result<MultiPoly> {
        let back: HashMap<Var, Var> = self.variables.iter().map(|i| (Var::new(&i.alias), i.var)).collect();
        Ok(crate::expr::parse(s)?.rename(&back))
    }
}

fn alias_map(vars: &[VarInfo]) -> HashMap<Var, Var> {
    vars.iter().map(|i| (i.var, Var::new(&i.alias))).collect()
}

/// (delta_0 - delta_1) + (floor(m/2) + sum_{i <= m/2} delta_i) + (m mod 2) + (g + 1).
pub fn count_variables(spec: &PartitionSpec) -> usize {
    let half = spec.m / 2;
    let b = spec.delta(0) - spec.delta(1);
    let c: usize = half + (1..=half).map(|i| spec.delta(i)).sum::<usize>();
    b + c + spec.m % 2 + spec.g + 1
}

fn unit_inverse(p: &MultiPoly) -> MultiPoly {
    p.unit_inverse().expect("unit")
}

/// Sets up the unknowns and the coefficient equations of the matching
/// identity for `spec`.
pub fn build_system(spec: &PartitionSpec) -> Result<SymbolicSystem> {
    let (g, m) = (spec.g, spec.m);
    let mut variables = Vec::new();
    let mut push = |name: String, alias: String, role: Role| -> MultiPoly {
        let var = Var::new(&name);
        let flagged = matches!(role, Role::L | Role::Kappa);
        variables.push(VarInfo { var, alias, role, flagged });
        MultiPoly::var(var)
    };

    let top = spec.delta(0) - spec.delta(1);
    let bs: Vec<MultiPoly> = (0..top).map(|j| push(format!("b{j}"), format!("b{j}"), Role::B)).collect();
    let mut a0: Vec<MultiPoly> = (0..=g).map(|j| push(format!("r{j}"), format!("r{j}"), Role::R)).collect();
    a0.push(MultiPoly::one());
    let a0 = XPoly::new(a0);

    let half = m / 2;
    let mut a = vec![a0.clone()];
    for i in 1..=half {
        let d = spec.delta(i);
        let c = (0..=d)
            .map(|j| {
                let (alias, role) = if j == d {
                    (format!("l{i}"), Role::L)
                } else if j == 0 {
                    (format!("k{i}"), Role::K)
                } else if j == 1 {
                    (format!("c{i}"), Role::C)
                } else {
                    (format!("c{i}_{j}"), Role::C)
                };
                push(format!("c{i}_{j}"), alias, role)
            })
            .collect();
        a.push(XPoly::new(c));
    }
    let kappa = if m % 2 == 1 { push("kappa".into(), "kappa".into(), Role::Kappa) } else { MultiPoly::one() };
    let kappa_inv = unit_inverse(&kappa);
    for i in half + 1..m {
        let k = m - i;
        let factor = if k % 2 == 0 { &kappa } else { &kappa_inv };
        let next = a[k].scale(factor);
        a.push(next);
    }
    let two_kappa = kappa.scale(&Rational::from_integer(2.into()));
    a.push(a0.scale(&two_kappa));

    let lc1 = a[1].lc();
    let mut h = bs;
    h.push(unit_inverse(&lc1).scale(&Rational::from_integer(2.into())));
    let h1 = XPoly::new(h);

    let mut p = vec![XPoly::default(), XPoly::constant(MultiPoly::one())];
    let mut q = vec![XPoly::constant(MultiPoly::one()), XPoly::default()];
    for ai in &a[1..m] {
        let k = p.len();
        p.push(ai.mul(&p[k - 1]).add(&p[k - 2]));
        q.push(ai.mul(&q[k - 1]).add(&q[k - 2]));
    }
    // index j is stored at j + 2
    let pm2 = &p[m];
    let qm2 = &q[m];
    let qm3 = &q[m - 1];
    let identity = pm2
        .mul(&h1)
        .scale(&kappa)
        .sub(qm3)
        .sub(&a0.mul(qm2).scale(&two_kappa));

    let count = spec.n - spec.delta(1);
    if identity.degree().is_some_and(|d| d >= count) {
        return Err(Error::Invalid(format!("matching identity for {spec} has degree above {}", count.saturating_sub(1))));
    }
    let equations = (0..count).rev().map(|k| Equation { power: k, poly: identity.coeff(k) }).collect();
    let flagged = variables.iter().filter(|i| i.flagged).map(|i| i.var).collect();
    Ok(SymbolicSystem { spec: spec.clone(), variables, kappa, a, h1, identity, equations, flagged })
}

/// How the solver picks a variable when an equation admits several.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PivotPolicy {
    /// b before r and k, then other coefficients, then leading coefficients
    /// and kappa. Ties go to the shorter solution, then to the name.
    #[default]
    RoleRanked,
    /// Names (canonical or alias) in order of preference; unlisted
    /// candidates follow in role order.
    Explicit(Vec<String>),
}

impl PivotPolicy {
    pub fn from_list(s: &str) -> PivotPolicy {
        let names: Vec<String> = s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect();
        if names.is_empty() {
            PivotPolicy::RoleRanked
        } else {
            PivotPolicy::Explicit(names)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub var: Var,
    pub value: MultiPoly,
    /// Power of x of the equation the variable was solved from.
    pub power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// An equation reduced to a nonzero constant times a monomial in
    /// nonvanishing variables.
    Impossible { power: usize, witness: MultiPoly },
    /// Every remaining equation is a binomial in the free variables.
    Family { constraints: Vec<MultiPoly> },
    /// Remaining equations admit no further pivot and are not binomials.
    Stuck { residual: Vec<MultiPoly> },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Impossible { .. } => "IMPOSSIBLE",
            Verdict::Family { .. } => "FAMILY",
            Verdict::Stuck { .. } => "STUCK",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationTrace {
    pub spec: PartitionSpec,
    pub policy: PivotPolicy,
    pub variables: Vec<VarInfo>,
    pub equation_count: usize,
    pub steps: Vec<Step>,
    /// Equations left nonzero when elimination stopped.
    pub residual: Vec<Equation>,
    pub free: Vec<Var>,
    pub verdict: Verdict,
    /// Set when elimination stopped on the term budget.
    #[serde(default)]
    pub exhausted: bool,
}

impl EliminationTrace {
    pub fn alias(&self, p: &MultiPoly) -> MultiPoly {
        p.rename(&alias_map(&self.variables))
    }

    pub fn alias_of(&self, v: Var) -> String {
        self.variables.iter().find(|i| i.var == v).map_or_else(|| v.to_string(), |i| i.alias.clone())
    }

    /// The value a variable was solved to, in alias names.
    pub fn solved(&self, name: &str) -> Option<MultiPoly> {
        self.steps
            .iter()
            .find(|s| s.var.name() == name || self.alias_of(s.var) == name)
            .map(|s| self.alias(&s.value))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<EliminationTrace> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for EliminationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "partition: {}", self.spec)?;
        let names: Vec<String> = self
            .variables
            .iter()
            .map(|i| if i.alias == i.var.name() { i.alias.clone() } else { format!("{} ({})", i.alias, i.var) })
            .collect();
        writeln!(f, "variables ({}): {}", self.variables.len(), names.join(", "))?;
        writeln!(f, "equations: {}", self.equation_count)?;
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {} [x^{}]: {} = {}", k + 1, s.power, self.alias_of(s.var), self.alias(&s.value))?;
        }
        match &self.verdict {
            Verdict::Impossible { power, witness } => {
                writeln!(f, "verdict: IMPOSSIBLE, coefficient of x^{power} is {}", self.alias(witness))?;
            }
            Verdict::Family { constraints } => {
                let free: Vec<String> = self.free.iter().map(|v| self.alias_of(*v)).collect();
                writeln!(f, "verdict: FAMILY in {}", free.join(", "))?;
                for c in constraints {
                    writeln!(f, "  constraint: {} = 0", self.alias(c))?;
                }
            }
            Verdict::Stuck { residual } => {
                let why = if self.exhausted { " (term budget exhausted)" } else { "" };
                writeln!(f, "verdict: STUCK with {} equations{why}", residual.len())?;
                for c in residual {
                    writeln!(f, "  residual: {} = 0", self.alias(c))?;
                }
            }
        }
        Ok(())
    }
}

fn strip(p: &MultiPoly, flagged: &dyn Fn(Var) -> bool) -> MultiPoly {
    p.mul_monomial(&p.flagged_content(flagged).inv())
}

/// Candidate pivots of a stripped equation: variables occurring to the first
/// power only, with a unit coefficient. Nonvanishing variables additionally
/// need a unit value.
fn candidates(eq: &MultiPoly, sys: &SymbolicSystem) -> Vec<(Var, MultiPoly)> {
    let flagged = |v: Var| sys.is_flagged(v);
    let mut out = Vec::new();
    for v in eq.variables() {
        if eq.max_exp(v) != 1 || eq.min_exp(v) < 0 {
            continue;
        }
        let parts = eq.split_by(v);
        if parts.keys().any(|&e| e != 0 && e != 1) {
            continue;
        }
        let c = &parts[&1];
        if !c.is_unit(&flagged) {
            continue;
        }
        let r = parts.get(&0).cloned().unwrap_or_default();
        let value = -(&r * &unit_inverse(c));
        if sys.is_flagged(v) && !value.is_unit(&flagged) {
            continue;
        }
        out.push((v, value));
    }
    out
}

fn choose(cands: Vec<(Var, MultiPoly)>, sys: &SymbolicSystem, policy: &PivotPolicy) -> Option<(Var, MultiPoly)> {
    let role_key = |v: Var, value: &MultiPoly| {
        let role = sys.info(v).map_or(Role::C, |i| i.role);
        (role.rank(), value.len(), v.name())
    };
    let listed = |v: Var| -> usize {
        match policy {
            PivotPolicy::RoleRanked => usize::MAX,
            PivotPolicy::Explicit(names) => {
                let alias = sys.info(v).map(|i| i.alias.as_str()).unwrap_or("");
                names.iter().position(|n| n == v.name() || n == alias).unwrap_or(usize::MAX)
            }
        }
    };
    cands.into_iter().min_by(|(v, x), (w, y)| (listed(*v), role_key(*v, x)).cmp(&(listed(*w), role_key(*w, y))))
}

/// Eliminates variables from the highest equation down, restarting from the
/// top after every substitution. Equations without an admissible pivot are
/// revisited after later substitutions.
pub fn eliminate(sys: &SymbolicSystem, policy: &PivotPolicy) -> Result<EliminationTrace> {
    eliminate_with_budget(sys, policy, None)
}

/// As [`eliminate`], but stops with a STUCK verdict once the open equations
/// hold more than `max_terms` terms in total.
pub fn eliminate_with_budget(
    sys: &SymbolicSystem,
    policy: &PivotPolicy,
    max_terms: Option<usize>,
) -> Result<EliminationTrace> {
    let flagged = |v: Var| sys.is_flagged(v);
    let mut eqs: Vec<MultiPoly> = sys.equations.iter().map(|e| e.poly.clone()).collect();
    let mut open = vec![true; eqs.len()];
    let mut steps = Vec::new();
    let mut impossible = None;
    let mut exhausted = false;
    'outer: loop {
        for idx in 0..eqs.len() {
            if !open[idx] {
                continue;
            }
            if eqs[idx].is_zero() {
                open[idx] = false;
                continue;
            }
            let stripped = strip(&eqs[idx], &flagged);
            if stripped.is_constant() {
                impossible = Some(idx);
                break 'outer;
            }
            if let Some((v, value)) = choose(candidates(&stripped, sys), sys, policy) {
                open[idx] = false;
                for k in 0..eqs.len() {
                    if open[k] {
                        eqs[k] = eqs[k].substitute(v, &value)?;
                    }
                }
                steps.push(Step { var: v, value, power: sys.equations[idx].power });
                let size: usize = (0..eqs.len()).filter(|&k| open[k]).map(|k| eqs[k].len()).sum();
                if max_terms.is_some_and(|b| size > b) {
                    exhausted = true;
                    break 'outer;
                }
                continue 'outer;
            }
        }
        break;
    }
    let solved: HashSet<Var> = steps.iter().map(|s: &Step| s.var).collect();
    let free = sys.variables.iter().map(|i| i.var).filter(|v| !solved.contains(v)).collect();
    let residual: Vec<Equation> = (0..eqs.len())
        .filter(|&k| open[k] && !eqs[k].is_zero())
        .map(|k| Equation { power: sys.equations[k].power, poly: eqs[k].clone() })
        .collect();
    let verdict = if let Some(idx) = impossible {
        Verdict::Impossible { power: sys.equations[idx].power, witness: eqs[idx].clone() }
    } else {
        let stripped: Vec<MultiPoly> = residual.iter().map(|e| strip(&e.poly, &flagged)).collect();
        if !exhausted && stripped.iter().all(|s| s.len() == 2) {
            Verdict::Family { constraints: stripped }
        } else {
            Verdict::Stuck { residual: stripped }
        }
    };
    Ok(EliminationTrace {
        spec: sys.spec.clone(),
        policy: policy.clone(),
        variables: sys.variables.clone(),
        equation_count: sys.equations.len(),
        steps,
        residual,
        free,
        verdict,
        exhausted,
    })
}

/// Replays the recorded substitutions on the original equations: each
/// step's equation must vanish after its own substitution, and the
/// equations left over must coincide with the recorded residual.
pub fn verify_trace(sys: &SymbolicSystem, trace: &EliminationTrace) -> Result<Report> {
    let mut r = Report::new(format!("trace replay {}", sys.spec));
    let mut eqs: Vec<MultiPoly> = sys.equations.iter().map(|e| e.poly.clone()).collect();
    let index: HashMap<usize, usize> = sys.equations.iter().enumerate().map(|(k, e)| (e.power, k)).collect();
    let mut used = HashSet::new();
    for s in &trace.steps {
        for e in eqs.iter_mut() {
            *e = e.substitute(s.var, &s.value)?;
        }
        let k = index[&s.power];
        used.insert(k);
        r.check(format!("step {} discharges x^{}", s.var, s.power), eqs[k].is_zero(), eqs[k].to_string());
    }
    let left: Vec<Equation> = (0..eqs.len())
        .filter(|k| !used.contains(k) && !eqs[*k].is_zero())
        .map(|k| Equation { power: sys.equations[k].power, poly: eqs[k].clone() })
        .collect();
    match &trace.verdict {
        Verdict::Impossible { power, witness } => {
            let k = index[power];
            r.check("witness reproduced", &eqs[k] == witness, eqs[k].to_string());
        }
        _ => {
            r.check("residual reproduced", left == trace.residual, format!("{} equations", left.len()));
        }
    }
    Ok(r)
}

/// A curve obtained by assigning the free variables of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub f: Poly,
    pub kappa: Rational,
    /// a_0, ..., a_{m-1}.
    pub a: Vec<Poly>,
    pub values: BTreeMap<Var, Rational>,
    pub expansion: crate::cf::CfExpansion,
}

/// Assigns the free variables of a family, back-substitutes the solved
/// ones, forms f = a_0^2 + q_{m-1} / (kappa p_{m-2}) and checks that the
/// expansion of sqrt(f) has the prescribed partial quotients, quasi-period,
/// skew value and torsion order.
pub fn instantiate_curve(trace: &EliminationTrace, assignment: &HashMap<Var, Rational>) -> Result<Instance> {
    let Verdict::Family { .. } = &trace.verdict else {
        return Err(Error::Invalid(format!("{} is not a family", trace.spec)));
    };
    let sys = build_system(&trace.spec)?;
    let mut values: HashMap<Var, Rational> = HashMap::new();
    for v in &trace.free {
        let val = assignment.get(v).ok_or_else(|| Error::MissingAssignment(trace.alias_of(*v)))?;
        if sys.is_flagged(*v) && val.is_zero() {
            return Err(Error::NonvanishingViolated(trace.alias_of(*v)));
        }
        values.insert(*v, val.clone());
    }
    for e in &trace.residual {
        let val = e.poly.eval(&values)?;
        if !val.is_zero() {
            return Err(Error::ConstraintViolated(format!(
                "{} = {} at the assignment",
                trace.alias(&e.poly),
                format_rational(&val)
            )));
        }
    }
    for s in trace.steps.iter().rev() {
        let val = s.value.eval(&values)?;
        if sys.is_flagged(s.var) && val.is_zero() {
            return Err(Error::NonvanishingViolated(trace.alias_of(s.var)));
        }
        values.insert(s.var, val);
    }
    let m = trace.spec.m;
    let kappa = sys.kappa.eval(&values)?;
    let a: Vec<Poly> = sys.a.iter().map(|p| p.eval(&values)).collect::<Result<_>>()?;
    for (i, ai) in a.iter().enumerate().take(m) {
        if ai.degree() != Some(trace.spec.delta(i)) {
            return Err(Error::RoundTripFailed(format!("a_{i} = {ai} has the wrong degree")));
        }
    }
    let t = continuants(&a[1..=m]);
    let den = t.p(m as i64 - 2).scale(&kappa);
    let (h1, rem) = t.q(m as i64 - 1).divrem(&den)?;
    if !rem.is_zero() {
        return Err(Error::RoundTripFailed(format!("q_(m-1) is not divisible by kappa p_(m-2) for {}", trace.spec)));
    }
    if h1 != sys.h1.eval(&values)? {
        return Err(Error::RoundTripFailed("h_1 differs from its symbolic form".into()));
    }
    let f = &(&a[0] * &a[0]) + &h1;
    let e = cf_expand(&f, m + 1)?;
    let expect_periodic = if kappa.is_one() { "periodic" } else { "quasi-periodic" };
    if e.m != Some(m) || e.kappa.as_ref() != Some(&kappa) {
        return Err(Error::RoundTripFailed(format!(
            "expansion of {f} has m = {:?}, kappa = {:?}; expected {m}, {}",
            e.m,
            e.kappa.as_ref().map(format_rational),
            format_rational(&kappa)
        )));
    }
    if e.a[..=m] != a[..] {
        return Err(Error::RoundTripFailed(format!("partial quotients of {f} differ from the solution")));
    }
    if crate::torsion::torsion_order(&e, trace.spec.g)? != trace.spec.n {
        return Err(Error::RoundTripFailed(format!("{f} is not {expect_periodic} with N = {}", trace.spec.n)));
    }
    Ok(Instance { f, kappa, a: a[..m].to_vec(), values: values.into_iter().collect(), expansion: e })
}

/// Convenience: resolves `name = value` pairs against the trace's variables.
pub fn parse_assignment(trace: &EliminationTrace, pairs: &[(String, Rational)]) -> Result<HashMap<Var, Rational>> {
    let mut out = HashMap::new();
    for (name, val) in pairs {
        let v = trace
            .variables
            .iter()
            .find(|i| i.var.name() == name.trim() || i.alias == name.trim())
            .map(|i| i.var)
            .ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))?;
        out.insert(v, val.clone());
    }
    Ok(out)
}

/// Monomial in the nonvanishing variables dividing every term.
pub fn flagged_content(sys: &SymbolicSystem, p: &MultiPoly) -> Monomial {
    p.flagged_content(&|v| sys.is_flagged(v))
}
