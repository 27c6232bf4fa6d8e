//! Search over all admissible partitions of a (g, N) pair.

use crate::catalog::{hex, CurveRecord, RecordKind};
use crate::error::{Error, Result};
use crate::multipoly::{MultiPoly, Var};
use crate::partitions::{enumerate_partitions, PartitionSpec};
use crate::rational::{format_rational, parse_rational, rational_root, Rational};
use crate::report::Report;
use crate::symbolic::{
    build_system, eliminate_with_budget, instantiate_curve, verify_trace, EliminationTrace, Instance, PivotPolicy, Verdict,
};
use chrono::Utc;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap, HashSet};

pub const DEFAULT_POOL: [&str; 8] = ["1", "-1", "2", "-2", "1/2", "-1/2", "3", "1/3"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub g: usize,
    #[serde(rename = "N", alias = "n")]
    pub n: usize,
    pub m: Option<usize>,
    pub partition: Option<Vec<usize>>,
    /// Values drawn for free variables.
    pub pool: Vec<String>,
    /// Concrete curves sampled per family.
    pub samples: usize,
    /// Draws allowed per requested sample.
    pub attempts: usize,
    pub seed: u64,
    pub threads: Option<usize>,
    /// Term budget per partition for elimination.
    pub max_terms: Option<usize>,
    /// Pivot preference, canonical names or aliases.
    pub prefer: Vec<String>,
    /// Catalog file used by the command-line driver.
    pub catalog: Option<String>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            g: 2,
            n: 11,
            m: None,
            partition: None,
            pool: DEFAULT_POOL.iter().map(|s| s.to_string()).collect(),
            samples: 3,
            attempts: 40,
            seed: 0,
            threads: None,
            max_terms: Some(20_000),
            prefer: Vec::new(),
            catalog: None,
        }
    }
}

impl SearchConfig {
    pub fn new(g: usize, n: usize) -> SearchConfig {
        SearchConfig { g, n, ..SearchConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.g < 2 {
            return Err(Error::Invalid(format!("search needs g >= 2, got {}", self.g)));
        }
        if self.n < self.g + 1 {
            return Err(Error::Invalid(format!("search needs N >= g + 1, got N = {}", self.n)));
        }
        if self.pool.is_empty() {
            return Err(Error::Invalid("empty value pool".into()));
        }
        Ok(())
    }

    pub fn policy(&self) -> PivotPolicy {
        if self.prefer.is_empty() {
            PivotPolicy::RoleRanked
        } else {
            PivotPolicy::Explicit(self.prefer.clone())
        }
    }

    fn pool_values(&self) -> Result<Vec<Rational>> {
        let vals = self.pool.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Ok(vals.into_iter().filter(|v| !v.is_zero()).collect())
    }
}

fn seed_for(cfg: &SearchConfig, spec: &PartitionSpec) -> u64 {
    let h = Sha256::digest(format!("{}|{}", cfg.seed, spec.label()).as_bytes());
    u64::from_le_bytes(h[..8].try_into().expect("8 bytes"))
}

/// Solves the binomial `c` for `v` given values of its other variables.
fn solve_binomial(c: &MultiPoly, v: Var, values: &HashMap<Var, Rational>, rng: &mut ChaCha8Rng) -> Option<Rational> {
    let terms: Vec<_> = c.terms().collect();
    if terms.len() != 2 {
        return None;
    }
    let mut parts = Vec::new();
    for (mono, coeff) in &terms {
        let rest = MultiPoly::term((*coeff).clone(), mono.without(v));
        parts.push((mono.exp(v), rest.eval(values).ok()?));
    }
    let (e1, x1) = parts[0].clone();
    let (e2, x2) = parts[1].clone();
    if e1 == e2 || x1.is_zero() || x2.is_zero() {
        return None;
    }
    // v^(e1 - e2) = -x2 / x1
    let (d, rhs) = if e1 > e2 { (e1 - e2, -(&x2 / &x1)) } else { (e2 - e1, -(&x1 / &x2)) };
    let d = d as u32;
    if d % 2 == 1 {
        let r = rational_root(&rhs.abs(), d)?;
        Some(if rhs.is_negative() { -r } else { r })
    } else {
        if rhs.is_negative() {
            return None;
        }
        let r = rational_root(&rhs, d)?;
        Some(if rng.gen_bool(0.5) { r } else { -r })
    }
}

/// Draws an assignment of the free variables meeting every residual
/// constraint. Each constraint is solved for one of its variables, those
/// occurring to an odd power first.
fn draw(trace: &EliminationTrace, pool: &[Rational], rng: &mut ChaCha8Rng) -> Option<HashMap<Var, Rational>> {
    let Verdict::Family { constraints } = &trace.verdict else {
        return None;
    };
    let mut values: HashMap<Var, Rational> =
        trace.free.iter().map(|v| (*v, pool.choose(rng).expect("nonempty").clone())).collect();
    let mut fixed: HashSet<Var> = HashSet::new();
    for c in constraints {
        if c.eval(&values).ok().is_some_and(|x| x.is_zero()) {
            continue;
        }
        let mut options: Vec<Var> = c.variables().into_iter().filter(|v| !fixed.contains(v)).collect();
        options.sort_by_key(|v| {
            let spread = c.max_exp(*v) - c.min_exp(*v);
            (spread % 2 == 0, spread)
        });
        let mut solved = false;
        for v in options {
            if let Some(val) = solve_binomial(c, v, &values, rng) {
                values.insert(v, val);
                fixed.insert(v);
                solved = true;
                break;
            }
        }
        if !solved {
            return None;
        }
    }
    Some(values)
}

/// Up to `count` distinct verified curves from a family.
pub fn sample_family(trace: &EliminationTrace, cfg: &SearchConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Instance>> {
    let pool = cfg.pool_values()?;
    let mut out: Vec<Instance> = Vec::new();
    let mut seen = HashSet::new();
    for _ in 0..cfg.samples * cfg.attempts {
        if out.len() >= cfg.samples {
            break;
        }
        let Some(values) = draw(trace, &pool, rng) else { continue };
        match instantiate_curve(trace, &values) {
            Ok(inst) => {
                if seen.insert(inst.f.clone()) {
                    out.push(inst);
                }
            }
            Err(Error::RoundTripFailed(msg)) => return Err(Error::RoundTripFailed(msg)),
            Err(_) => continue,
        }
    }
    Ok(out)
}

fn trace_hash(t: &EliminationTrace) -> String {
    hex(&Sha256::digest(serde_json::to_string(t).expect("serializable").as_bytes()))
}

fn base_record(kind: RecordKind, spec: &PartitionSpec, trace: &str, steps: usize, verification: Report) -> CurveRecord {
    let mut degrees = vec![spec.g + 1];
    degrees.extend_from_slice(&spec.deltas);
    CurveRecord {
        kind,
        g: spec.g,
        n: spec.n,
        m: spec.m,
        partition: spec.clone(),
        degrees,
        f: None,
        kappa: if spec.m % 2 == 0 { "1".into() } else { "kappa".into() },
        free: Vec::new(),
        constraints: Vec::new(),
        witness: None,
        assignment: BTreeMap::new(),
        trace: trace.to_string(),
        steps,
        verified: verification.all_passed(),
        verification,
        note: None,
        created: Utc::now(),
    }
}

/// Record for a round-trip verified instance of a family.
pub fn concrete_record(trace: &EliminationTrace, inst: &Instance) -> CurveRecord {
    let mut rep = Report::new("round trip");
    rep.check("quasi-period", inst.expansion.m == Some(trace.spec.m), format!("m = {}", trace.spec.m));
    rep.check("skew value", inst.expansion.kappa.as_ref() == Some(&inst.kappa), format_rational(&inst.kappa));
    let order = crate::torsion::torsion_order(&inst.expansion, trace.spec.g);
    rep.check("torsion order", order.as_ref().ok() == Some(&trace.spec.n), format!("N = {}", trace.spec.n));
    let mut rec = base_record(RecordKind::Concrete, &trace.spec, &trace_hash(trace), trace.steps.len(), rep);
    rec.f = Some(inst.f.clone());
    rec.kappa = format_rational(&inst.kappa);
    rec.assignment = trace
        .free
        .iter()
        .filter_map(|v| inst.values.get(v).map(|x| (trace.alias_of(*v), format_rational(x))))
        .collect();
    rec
}

/// Processes one partition: eliminate, classify, and sample families.
pub fn search_partition(spec: &PartitionSpec, cfg: &SearchConfig) -> Vec<CurveRecord> {
    match search_partition_inner(spec, cfg) {
        Ok(r) => r,
        Err(e) => {
            let mut rep = Report::new("failed");
            rep.check("processed", false, e.to_string());
            let mut rec = base_record(RecordKind::Failed, spec, "", 0, rep);
            rec.note = Some(e.to_string());
            vec![rec]
        }
    }
}

fn search_partition_inner(spec: &PartitionSpec, cfg: &SearchConfig) -> Result<Vec<CurveRecord>> {
    let sys = build_system(spec)?;
    let trace = eliminate_with_budget(&sys, &cfg.policy(), cfg.max_terms)?;
    let replay = verify_trace(&sys, &trace)?;
    let hash = trace_hash(&trace);
    let alias = |p: &MultiPoly| trace.alias(p).to_string();
    let mut out = Vec::new();
    match &trace.verdict {
        Verdict::Impossible { power, witness } => {
            let mut rec = base_record(RecordKind::Impossible, spec, &hash, trace.steps.len(), replay);
            rec.witness = Some(alias(witness));
            rec.note = Some(format!("coefficient of x^{power}"));
            out.push(rec);
        }
        Verdict::Stuck { residual } => {
            let mut rec = base_record(RecordKind::Stuck, spec, &hash, trace.steps.len(), replay);
            rec.free = trace.free.iter().map(|v| trace.alias_of(*v)).collect();
            rec.constraints = residual.iter().map(alias).collect();
            if trace.exhausted {
                rec.note = Some("term budget exhausted".into());
            }
            out.push(rec);
        }
        Verdict::Family { constraints } => {
            let mut rec = base_record(RecordKind::Family, spec, &hash, trace.steps.len(), replay);
            rec.free = trace.free.iter().map(|v| trace.alias_of(*v)).collect();
            rec.constraints = constraints.iter().map(alias).collect();
            out.push(rec);
            let mut rng = ChaCha8Rng::seed_from_u64(seed_for(cfg, spec));
            for inst in sample_family(&trace, cfg, &mut rng)? {
                out.push(concrete_record(&trace, &inst));
            }
        }
    }
    Ok(out)
}

/// Runs the pipeline over every admissible partition selected by `cfg`.
/// Records come back sorted by partition, kind and curve.
pub fn run_search(cfg: &SearchConfig) -> Result<Vec<CurveRecord>> {
    cfg.validate()?;
    let parts: Vec<PartitionSpec> = enumerate_partitions(cfg.g, cfg.n)?
        .into_iter()
        .filter(|p| cfg.m.map_or(true, |m| p.m == m))
        .filter(|p| cfg.partition.as_ref().map_or(true, |d| &p.deltas == d))
        .collect();
    let job = || parts.par_iter().flat_map_iter(|p| search_partition(p, cfg)).collect::<Vec<_>>();
    let mut out = match cfg.threads {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?
            .install(job),
        None => job(),
    };
    out.sort_by(|a, b| {
        (&a.partition, a.kind, a.f.as_ref().map(|f| f.to_string())).cmp(&(
            &b.partition,
            b.kind,
            b.f.as_ref().map(|f| f.to_string()),
        ))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn binomial_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = crate::expr::parse("k^2*l^11 + 32").unwrap();
        let mut vals = HashMap::new();
        vals.insert(Var::new("k"), int(1));
        assert_eq!(solve_binomial(&c, Var::new("l"), &vals, &mut rng), None);
        vals.insert(Var::new("k"), Rational::new(1.into(), 8.into()));
        assert_eq!(solve_binomial(&c, Var::new("l"), &vals, &mut rng), Some(int(-2)));
        vals.insert(Var::new("l"), int(-2));
        let k = solve_binomial(&c, Var::new("k"), &vals, &mut rng).unwrap();
        assert_eq!(&k * &k, Rational::new(1.into(), 64.into()));
    }

    #[test]
    fn config_from_toml_defaults() {
        let cfg: SearchConfig = serde_json::from_str(r#"{"g": 3, "N": 9}"#).unwrap();
        assert_eq!((cfg.g, cfg.n, cfg.samples), (3, 9, 3));
        assert!(SearchConfig::new(1, 5).validate().is_err());
        assert!(SearchConfig::new(2, 2).validate().is_err());
        assert!(SearchConfig::new(10, 11).validate().is_ok());
    }
}
