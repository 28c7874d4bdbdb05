use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tvar_core::descent::split_cocycle;
use tvar_core::downgrade::{check_real_compatibility, downgrade_with};
use tvar_core::graded::{bijection_report, graded_piece, involution_orbits, piece_involution};
use tvar_core::num::ints;
use tvar_core::{AHDatum, Cone, Int, SignCharacter, SplitOutcome};

use crate::problem::*;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Engine(#[from] tvar_core::Error),
    #[error("{0}")]
    Input(String),
}

/// Sweep sizes for the verification loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub grid: u32,
    pub degree_bound: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            grid: 6,
            degree_bound: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, passed: bool, detail: Option<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub checks: Vec<Check>,
    pub result: Value,
    /// Human-readable summary; not part of the machine output.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.kind);
        for l in &self.lines {
            out.push_str(&format!("  {l}\n"));
        }
        for c in &self.checks {
            let status = if c.passed { "ok" } else { "FAILED" };
            match &c.detail {
                Some(d) => out.push_str(&format!("  check {}: {status} ({d})\n", c.name)),
                None => out.push_str(&format!("  check {}: {status}\n", c.name)),
            }
        }
        out
    }
}

fn show(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("engine types serialize")
}

/// Integer points of `[lo, hi]^dim` inside the cone, in lexicographic order.
fn grid_weights(cone: &Cone, lo: i64, hi: i64) -> Vec<Vec<Int>> {
    let dim = cone.ambient_dim();
    let mut out = Vec::new();
    let mut cur = vec![lo; dim];
    loop {
        let v = ints(&cur);
        if cone.contains(&v) {
            out.push(v);
        }
        let Some(i) = (0..dim).rev().find(|&i| cur[i] < hi) else {
            break;
        };
        cur[i] += 1;
        for c in cur.iter_mut().skip(i + 1) {
            *c = lo;
        }
    }
    out
}

fn explicit_weights(w: &[Vec<i64>], dim: usize) -> Result<Vec<Vec<Int>>, RunError> {
    w.iter()
        .map(|m| {
            if m.len() == dim {
                Ok(ints(m))
            } else {
                Err(RunError::Input(format!(
                    "weight {m:?} has length {}, expected {dim}",
                    m.len()
                )))
            }
        })
        .collect()
}

fn datum(source: &Source) -> Result<AHDatum, RunError> {
    match (&source.embedding, &source.datum) {
        (Some(e), None) => Ok(downgrade_with(e, &source.options)?),
        (None, Some(d)) => Ok(d.build()?),
        _ => Err(RunError::Input(
            "source needs exactly one of `embedding` or `datum`".into(),
        )),
    }
}

pub fn run(problem: &Problem, opts: &RunOptions) -> Result<Report, RunError> {
    let mut report = Report {
        kind: problem.kind().into(),
        checks: Vec::new(),
        result: Value::Null,
        lines: Vec::new(),
    };
    match problem {
        Problem::Classify(p) => classify(p, &mut report),
        Problem::Downgrade(p) => downgrade(p, &mut report)?,
        Problem::Evaluate(p) => evaluate(p, opts, &mut report)?,
        Problem::CheckPp(p) => check_pp(p, &mut report)?,
        Problem::CheckReal(p) => check_real(p, &mut report)?,
        Problem::Split(p) => split(p, &mut report)?,
        Problem::Sections(p) => sections(p, opts, &mut report)?,
        Problem::OracleCheck(p) => oracle_check(p, opts, &mut report)?,
    }
    Ok(report)
}

fn classify(p: &ClassifyProblem, r: &mut Report) {
    let t = p.matrix.classify();
    r.lines.push(format!(
        "split factors {}, circle factors {}, Weil restriction factors {}",
        t.n0, t.n1, t.n2
    ));
    r.lines.push(format!("quasi-split: {}", t.is_quasi_split()));
    r.result = to_value(&t);
}

fn describe_datum(a: &AHDatum, r: &mut Report) {
    let base = a.base();
    let rays: Vec<String> = base.rays().iter().map(|v| show(v)).collect();
    r.lines.push(format!("base rank {}, rays {}", base.rank(), rays.join(" ")));
    r.lines.push(format!("base cones {:?}", base.cones()));
    r.lines.push(format!("divisor {}", a.divisor()));
    r.lines.push(format!("tau_hat_y {}", a.tau_hat_y().matrix()));
    r.lines.push(format!("h exponent {}", a.h_exponent()));
    r.lines.push(format!("h sign {}", a.h_sign()));
    if let Some(amb) = a.ambient() {
        r.lines.push(format!("projection {}", amb.projection));
        r.lines.push(format!("cosection {}", amb.cosection));
        r.lines.push(format!("equivariant cosection: {}", amb.equivariant_cosection));
    }
}

fn compatibility_check(a: &AHDatum) -> Result<Vec<Check>, RunError> {
    let rep = check_real_compatibility(a)?;
    let detail = rep.failure.as_ref().map(|f| {
        format!("fails at m = {}: pullback {} vs twisted {}", show(&f.m), f.lhs, f.rhs)
    });
    Ok(vec![
        Check::new("real-compatibility", rep.failure.is_none(), detail),
        Check::new("cocycle-identity", rep.cocycle_identity, None),
        Check::new("sign-identity", rep.sign_identity, None),
    ])
}

fn downgrade(p: &DowngradeProblem, r: &mut Report) -> Result<(), RunError> {
    let a = downgrade_with(&p.embedding, &p.options)?;
    describe_datum(&a, r);
    r.checks.extend(compatibility_check(&a)?);
    let pp = a.divisor().pp_check()?;
    let detail = pp.first_failure().map(|s| format!("at m = {}", show(&s.weight)));
    r.checks.push(Check::new("pp-conditions", pp.passes(), detail));
    r.result = to_value(&a);
    Ok(())
}

fn evaluate(p: &EvaluateProblem, opts: &RunOptions, r: &mut Report) -> Result<(), RunError> {
    let d = &p.divisor;
    let cone = d.weight_cone();
    let weights = match &p.weights {
        Some(w) => explicit_weights(w, cone.ambient_dim())?,
        None => grid_weights(&cone, 0, opts.grid as i64),
    };
    let mut rows = Vec::with_capacity(weights.len());
    for m in &weights {
        let e = d.evaluate(m)?;
        r.lines.push(format!("D{} = {e}", show(m)));
        rows.push(json!({ "m": m.iter().map(ToString::to_string).collect::<Vec<_>>(), "divisor": to_value(&e) }));
    }
    let mut bad = None;
    'outer: for (i, m) in weights.iter().enumerate() {
        for m2 in &weights[i..] {
            if !d.superadditivity_check(m, m2)? {
                bad = Some(format!("at m = {}, m' = {}", show(m), show(m2)));
                break 'outer;
            }
        }
    }
    r.checks.push(Check::new("superadditivity", bad.is_none(), bad));
    r.result = Value::Array(rows);
    Ok(())
}

fn check_pp(p: &CheckPpProblem, r: &mut Report) -> Result<(), RunError> {
    let rep = p.divisor.pp_check()?;
    for c in &rep.chambers {
        let rays: Vec<String> = c.rays.iter().map(|v| show(v)).collect();
        let ok = c.samples.iter().all(|s| s.passes());
        r.lines.push(format!("chamber {}: {}", rays.join(" "), if ok { "pp" } else { "not pp" }));
    }
    let detail = rep.first_failure().map(|s| {
        format!(
            "at m = {}: q-cartier {}, semiample {}, big {}",
            show(&s.weight),
            s.q_cartier,
            s.semiample,
            s.big
        )
    });
    r.checks.push(Check::new("pp-conditions", rep.passes(), detail));
    r.result = to_value(&rep);
    Ok(())
}

fn check_real(p: &CheckRealProblem, r: &mut Report) -> Result<(), RunError> {
    let mut a = datum(&p.source)?;
    if p.h_exponent.is_some() || p.signs.is_some() {
        let h = p.h_exponent.clone().unwrap_or_else(|| a.h_exponent().clone());
        let signs = p
            .signs
            .clone()
            .unwrap_or_else(|| SignCharacter::trivial(a.tau_hat().rank()));
        a = a.with_h(h, signs)?;
    }
    describe_datum(&a, r);
    r.checks.extend(compatibility_check(&a)?);
    r.result = to_value(&check_real_compatibility(&a)?);
    Ok(())
}

fn split(p: &SplitProblem, r: &mut Report) -> Result<(), RunError> {
    let c = match (&p.cocycle, &p.source) {
        (Some(c), None) => c.clone(),
        (None, Some(s)) => datum(s)?.cocycle()?,
        _ => {
            return Err(RunError::Input(
                "split needs exactly one of `cocycle` or `source`".into(),
            ))
        }
    };
    let outcome = split_cocycle(&c);
    r.lines.push(format!("exponent {}", c.exponent()));
    r.lines.push(format!("sign {}", c.sign()));
    match &outcome {
        SplitOutcome::Split(s) => {
            r.lines.push(format!("splits with G = {}, quarter turns {}", s.g_exponent, show(&s.quarter_turns)));
            r.checks.push(Check::new("splitting-verified", s.verify(&c), None));
        }
        SplitOutcome::Obstructed(o) => r.lines.push(format!("obstructed: {o}")),
    }
    r.result = to_value(&outcome);
    Ok(())
}

fn sections(p: &SectionsProblem, opts: &RunOptions, r: &mut Report) -> Result<(), RunError> {
    let a = datum(&p.source)?;
    let n = opts.grid as i64;
    let weights = match &p.weights {
        Some(w) => explicit_weights(w, a.tau_hat().rank())?,
        None => grid_weights(a.weight_cone(), -n, n),
    };
    let radius = p.radius.unwrap_or(2 * n);
    let k = a.base().rank();
    let (lo, hi) = (vec![Int::from(-radius); k], vec![Int::from(radius); k]);
    let mut rows = Vec::new();
    let mut bad: Option<String> = None;
    let mut done = BTreeSet::new();
    for m in &weights {
        let piece = graded_piece(&a, m, &lo, &hi)?;
        for q in &piece.points {
            let once = piece_involution(&a, m, q)?;
            let ok = match piece_involution(&a, &once.weight, &once.point) {
                Ok(twice) => twice.weight == *m && twice.point == *q && once.sign * twice.sign == 1,
                Err(_) => false,
            };
            if !ok && bad.is_none() {
                bad = Some(format!("at m = {}, point {}", show(m), show(q)));
            }
        }
        let tm = a.tau_tilde().apply(m);
        let key = if tm < *m { (tm, m.clone()) } else { (m.clone(), tm) };
        let orbits = if done.insert(key) {
            Some(involution_orbits(&a, m, &lo, &hi)?)
        } else {
            None
        };
        r.lines.push(format!(
            "m = {}: {} points{}",
            show(m),
            piece.points.len(),
            orbits
                .as_ref()
                .map(|o| format!(", {} orbits ({} fixed)", o.len(), o.iter().filter(|x| x.is_fixed()).count()))
                .unwrap_or_default()
        ));
        let mut row = json!({ "piece": to_value(&piece) });
        if let Some(o) = orbits {
            row["orbits"] = to_value(&o);
        }
        rows.push(row);
    }
    r.checks.push(Check::new("involution-squares-to-identity", bad.is_none(), bad));
    r.result = Value::Array(rows);
    Ok(())
}

/// Distinct weights of the monomials of degree at most `bound`.
fn monomial_weights(rows: &[Vec<Int>], bound: u32) -> Vec<Vec<Int>> {
    let d = rows.first().map_or(0, Vec::len);
    let mut layer: BTreeSet<Vec<Int>> = BTreeSet::from([vec![Int::from(0); d]]);
    let mut all = layer.clone();
    for _ in 0..bound {
        layer = layer
            .iter()
            .flat_map(|m| rows.iter().map(move |w| m.iter().zip(w).map(|(x, y)| x + y).collect()))
            .collect();
        all.extend(layer.iter().cloned());
    }
    all.into_iter().collect()
}

fn oracle_check(p: &OracleCheckProblem, opts: &RunOptions, r: &mut Report) -> Result<(), RunError> {
    let a = downgrade_with(&p.embedding, &p.options)?;
    let weights = match &p.weights {
        Some(w) => explicit_weights(w, p.embedding.f.cols())?,
        None => monomial_weights(&p.embedding.f.row_vecs(), opts.degree_bound),
    };
    let mut rows = Vec::with_capacity(weights.len());
    let mut bad = None;
    for m in &weights {
        let rep = bijection_report(&a, m, opts.degree_bound)?;
        if !rep.bijective && bad.is_none() {
            bad = Some(format!(
                "at m = {}: {} monomials, {} piece points",
                show(m),
                rep.oracle_count,
                rep.piece_count
            ));
        }
        rows.push(to_value(&rep));
    }
    r.lines.push(format!(
        "{} weights checked with degree bound {}",
        weights.len(),
        opts.degree_bound
    ));
    r.checks.push(Check::new("bijection", bad.is_none(), bad));
    r.result = Value::Array(rows);
    Ok(())
}
