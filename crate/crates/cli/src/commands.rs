//! Argument validation and command execution.

use std::cmp::Ordering;

use chainlab_core::catalog::{
    catalog_csv, catalog_json, compute_cs, enumerate_defects, f_bounds, phi_exponents, q_empirical, sk_prefix,
    t_set_attainment, t_set_values, verify_knuth_stolarsky, verify_schonhage, verify_scholz_brauer, ScholzBrauerStatus, VerifyReport,
};
use chainlab_core::classifier::{classify_small_steps, cross_check, Bucket};
use chainlab_core::defect::{defect, leader_of, stability_probe, ExactDefect};
use chainlab_core::interval::fixed_rational;
use chainlab_core::ordinal::{compare, natural_sum, rwo1_bound, OrdinalCNF};
use chainlab_core::search::{smallest_drop, to_u64, DropScan, MAX_TARGET};
use chainlab_core::{Engine, LabError};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::json;

use crate::report::{value_json, Outcome, Report};
use crate::{Command, ConstantCmd, OrdinalCmd, Verifier};

/// A fully validated command; building one performs no search.
pub enum Plan {
    Chain(u64),
    Defect(u64),
    Stability(u64),
    Leader(u64),
    Classify(BigUint),
    ClassifyRange { lo: u64, hi: u64, verify: bool },
    Catalog { bound: BigRational, max: u64 },
    Q { bound: BigRational, max: u64 },
    Sk { k: usize, count: usize },
    Tset { form: u8, cap: u64, check: bool },
    Verify { which: Verifier, max: u64 },
    Cs(u32),
    F(u64),
    OrdinalSum(OrdinalCNF, OrdinalCNF),
    OrdinalCompare(OrdinalCNF, OrdinalCNF),
    OrdinalBound(u64),
    DropScan(u64),
}

fn invalid(msg: impl Into<String>) -> LabError {
    LabError::InvalidArgument(msg.into())
}

fn target(n: u64) -> Result<u64, LabError> {
    to_u64(&BigUint::from(n))
}

fn positive(name: &str, v: u64) -> Result<u64, LabError> {
    if v == 0 {
        return Err(invalid(format!("{name} must be at least 1")));
    }
    Ok(v)
}

/// Nonnegative decimal (`0.999`) or fraction (`7/10`).
pub fn parse_threshold(text: &str) -> Result<BigRational, LabError> {
    let bad = || invalid(format!("malformed threshold {text:?}"));
    let digits = |s: &str| -> Result<BigInt, LabError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse().map_err(|_| bad())
    };
    let value = if let Some((p, q)) = text.split_once('/') {
        let q = digits(q)?;
        if q.is_zero() {
            return Err(bad());
        }
        BigRational::new(digits(p)?, q)
    } else if let Some((int, frac)) = text.split_once('.') {
        let int = if int.is_empty() { BigInt::zero() } else { digits(int)? };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        BigRational::new(int * &scale + digits(frac)?, scale)
    } else {
        BigRational::from_integer(digits(text)?)
    };
    if value.is_negative() {
        return Err(bad());
    }
    Ok(value)
}

fn ordinal(text: &str) -> Result<OrdinalCNF, LabError> {
    text.parse()
        .map_err(|e| invalid(format!("ordinal {text:?}: {e}")))
}

pub fn plan(command: &Command) -> Result<Plan, LabError> {
    Ok(match command {
        Command::Chain { n } => Plan::Chain(target(*n)?),
        Command::Defect { n } => Plan::Defect(target(*n)?),
        Command::Stability { n } => Plan::Stability(target(*n)?),
        Command::Leader { n } => Plan::Leader(target(*n)?),
        Command::Classify { n } => {
            let n: BigUint = n
                .parse()
                .map_err(|_| invalid(format!("malformed number {n:?}")))?;
            if n.is_zero() {
                return Err(LabError::ZeroTarget);
            }
            Plan::Classify(n)
        }
        Command::ClassifyRange { lo, hi, verify } => {
            if lo > hi {
                return Err(invalid(format!("empty range {lo}..={hi}")));
            }
            target(*lo)?;
            target(*hi)?;
            Plan::ClassifyRange {
                lo: *lo,
                hi: *hi,
                verify: *verify,
            }
        }
        Command::Catalog { bound, max } => Plan::Catalog {
            bound: parse_threshold(bound)?,
            max: target(*max)?,
        },
        Command::Q { bound, max } => Plan::Q {
            bound: parse_threshold(bound)?,
            max: target(*max)?,
        },
        Command::Sk { k, count } => {
            if *k < 2 {
                return Err(invalid("k must be at least 2"));
            }
            Plan::Sk { k: *k, count: *count }
        }
        Command::Tset { form, cap, check } => {
            if !(1..=5).contains(form) {
                return Err(invalid(format!("form must be 1..=5, got {form}")));
            }
            Plan::Tset {
                form: *form,
                cap: *cap,
                check: *check,
            }
        }
        Command::Verify { which, max } => {
            let max = positive("--max", *max)?;
            match which {
                Verifier::ScholzBrauer if max >= 62 => return Err(LabError::TargetTooLarge(format!("2^{max} - 1"))),
                Verifier::ScholzBrauer => {}
                _ => {
                    target(max)?;
                }
            }
            Plan::Verify { which: *which, max }
        }
        Command::Constant { which } => match which {
            ConstantCmd::Cs { precision } => {
                if *precision < 16 {
                    return Err(LabError::PrecisionTooLow(*precision));
                }
                Plan::Cs(*precision)
            }
            ConstantCmd::F { k } => Plan::F(*k),
        },
        Command::Ordinal { op } => match op {
            OrdinalCmd::Sum { x, y } => Plan::OrdinalSum(ordinal(x)?, ordinal(y)?),
            OrdinalCmd::Compare { x, y } => Plan::OrdinalCompare(ordinal(x)?, ordinal(y)?),
            OrdinalCmd::Bound { q } => Plan::OrdinalBound(positive("q", *q)?),
        },
        Command::DropScan { max } => {
            let max = positive("--max", *max)?;
            if max >= MAX_TARGET / 2 {
                return Err(LabError::TargetTooLarge(format!("2 * {max}")));
            }
            Plan::DropScan(max)
        }
    })
}

pub fn execute(plan: Plan, engine: &Engine, horizon: u32) -> Result<Report, LabError> {
    match plan {
        Plan::Chain(n) => chain(n, engine),
        Plan::Defect(n) => defect_cmd(n, engine),
        Plan::Stability(n) => stability(n, engine, horizon),
        Plan::Leader(n) => leader(n, engine),
        Plan::Classify(n) => classify(&n),
        Plan::ClassifyRange { lo, hi, verify } => classify_range(lo, hi, verify, engine),
        Plan::Catalog { bound, max } => catalog(&bound, max, engine, horizon),
        Plan::Q { bound, max } => q(&bound, max, engine),
        Plan::Sk { k, count } => sk(k, count),
        Plan::Tset { form, cap, check: false } => tset(form, cap),
        Plan::Tset { form, cap, check: true } => tset_check(form, cap, engine),
        Plan::Verify { which, max } => verify(which, max, engine),
        Plan::Cs(precision) => cs(precision),
        Plan::F(k) => f(k),
        Plan::OrdinalSum(x, y) => ordinal_sum(&x, &y),
        Plan::OrdinalCompare(x, y) => ordinal_compare(&x, &y),
        Plan::OrdinalBound(q) => ordinal_bound(q),
        Plan::DropScan(max) => drop_scan(max, engine),
    }
}

fn elements(chain: &chainlab_core::AdditionChain) -> Vec<String> {
    chain.elements().iter().map(ToString::to_string).collect()
}

fn defect_fields(d: &ExactDefect) -> serde_json::Value {
    json!({
        "n": d.n().to_string(),
        "length": d.length(),
        "defect": value_json(&d.value()),
        "small_steps": d.small_steps(),
    })
}

fn chain(n: u64, engine: &Engine) -> Result<Report, LabError> {
    let (length, witness) = engine.solve(n)?.into_exact()?;
    let d = ExactDefect::new(length, BigUint::from(n), engine.class().tag())?;
    let mut r = Report::new(json!({
        "n": n,
        "class": engine.class().tag(),
        "length": length,
        "chain": elements(&witness),
        "defect": value_json(&d.value()),
        "small_steps": d.small_steps(),
    }));
    r.field("n", n)
        .field("class", engine.class())
        .field("length", length)
        .field("chain", &witness)
        .field("defect", d.value())
        .field("small steps", d.small_steps())
        .header(&["n", "class", "length", "chain", "defect", "small_steps"])
        .row(vec![
            n.to_string(),
            engine.class().tag().to_string(),
            length.to_string(),
            elements(&witness).join(" "),
            d.value().to_fixed(6),
            d.small_steps().to_string(),
        ]);
    Ok(r)
}

fn defect_cmd(n: u64, engine: &Engine) -> Result<Report, LabError> {
    let d = defect(n, engine)?;
    let v = d.value();
    let mut r = Report::new(json!({
        "n": n,
        "class": engine.class().tag(),
        "length": d.length(),
        "defect": value_json(&v),
        "small_steps": d.small_steps(),
        "integer": d.is_integer(),
    }));
    r.field("n", n)
        .field("class", engine.class())
        .field("length", d.length())
        .field("defect", &v)
        .field("exact", format!("{} - log2({})", d.length(), n))
        .field("small steps", d.small_steps())
        .header(&["n", "class", "length", "defect", "small_steps"])
        .row(vec![
            n.to_string(),
            engine.class().tag().to_string(),
            d.length().to_string(),
            v.to_fixed(6),
            d.small_steps().to_string(),
        ]);
    Ok(r)
}

fn stability(n: u64, engine: &Engine, horizon: u32) -> Result<Report, LabError> {
    let s = stability_probe(n, engine, horizon)?;
    let trajectory: Vec<_> = s
        .trajectory
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let mut row = defect_fields(d);
            row["k"] = json!(k);
            row
        })
        .collect();
    let mut r = Report::new(json!({
        "n": n,
        "class": s.class,
        "horizon": s.horizon,
        "verdict": s.verdict,
        "certified": s.certified,
        "leader": s.leader,
        "stable_length": s.stable_length,
        "stable_defect": value_json(&s.stable_defect.value()),
        "trajectory": trajectory,
    }));
    r.field("n", n)
        .field("class", &s.class)
        .field("verdict", s.verdict)
        .field("leader", s.leader)
        .field(
            "stable length",
            format!("{}{}", s.stable_length, if s.certified { "" } else { " (observed)" }),
        )
        .field(
            "stable defect",
            format!("{}{}", s.stable_defect.value(), if s.certified { "" } else { " (observed)" }),
        )
        .line("k  n  length  defect");
    r.header(&["k", "n", "length", "defect"]);
    for (k, d) in s.trajectory.iter().enumerate() {
        r.line(format!("{k}  {}  {}  {}", d.n(), d.length(), d.value()));
        r.row(vec![
            k.to_string(),
            d.n().to_string(),
            d.length().to_string(),
            d.value().to_fixed(6),
        ]);
    }
    Ok(r)
}

fn leader(n: u64, engine: &Engine) -> Result<Report, LabError> {
    let m = leader_of(n, engine)?;
    let d = defect(m, engine)?;
    let mut r = Report::new(json!({
        "n": n,
        "class": engine.class().tag(),
        "leader": m,
        "defect": value_json(&d.value()),
    }));
    r.field("n", n)
        .field("leader", m)
        .field("defect", d.value())
        .header(&["n", "leader", "defect"])
        .row(vec![n.to_string(), m.to_string(), d.value().to_fixed(6)]);
    Ok(r)
}

fn classify(n: &BigUint) -> Result<Report, LabError> {
    let b = classify_small_steps(n)?;
    let mut r = Report::new(serde_json::to_value(&b).expect("bucket serializes"));
    r.field("n", n)
        .field("bucket", &b.bucket)
        .header(&["n", "small_steps", "forms"])
        .row(vec![n.to_string(), small_steps_label(&b.bucket), forms_label(&b.bucket)]);
    Ok(r)
}

fn forms_label(b: &Bucket) -> String {
    match b {
        Bucket::Two { forms } => forms.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
        _ => String::new(),
    }
}

fn small_steps_label(b: &Bucket) -> String {
    match b.small_steps() {
        Some(s) => s.to_string(),
        None => ">=3".into(),
    }
}

fn classify_range(lo: u64, hi: u64, verify: bool, engine: &Engine) -> Result<Report, LabError> {
    if verify {
        let check = cross_check(lo..=hi, engine)?;
        let mut r = Report::new(json!({
            "lo": lo,
            "hi": hi,
            "class": engine.class().tag(),
            "checked": check.checked,
            "discrepancies": check.discrepancies,
            "unchecked": check.unchecked,
        }));
        r.field("range", format!("{lo}..={hi}"))
            .field("checked", check.checked)
            .field("discrepancies", check.discrepancies.len())
            .field("unchecked", check.unchecked.len())
            .header(&["n", "bucket", "searched_small_steps"]);
        for d in &check.discrepancies {
            let searched = d.searched.map_or(">=3".to_string(), |s| s.to_string());
            r.line(format!("discrepancy n={}: {} but search gives s={searched}", d.n, d.bucket));
            r.row(vec![d.n.to_string(), small_steps_label(&d.bucket), searched]);
        }
        let outcome = if !check.discrepancies.is_empty() {
            Outcome::Violations
        } else if !check.unchecked.is_empty() {
            Outcome::Incomplete
        } else {
            Outcome::Success
        };
        return Ok(r.with_outcome(outcome));
    }
    let mut rows = Vec::new();
    let mut r = Report::new(json!(null));
    r.header(&["n", "small_steps", "forms"]);
    for n in lo..=hi {
        let b = classify_small_steps(&BigUint::from(n))?;
        r.line(format!("{n}: {}", b.bucket));
        r.row(vec![n.to_string(), small_steps_label(&b.bucket), forms_label(&b.bucket)]);
        rows.push(b);
    }
    r.set_json(json!({ "lo": lo, "hi": hi, "rows": rows }));
    Ok(r)
}

fn catalog(bound: &BigRational, max: u64, engine: &Engine, horizon: u32) -> Result<Report, LabError> {
    let cat = enumerate_defects(bound, max, engine, horizon)?;
    let mut r = Report::new(serde_json::to_value(catalog_json(&cat)).expect("catalog serializes"));
    r.field("bound", &cat.r)
        .field("max", cat.n_max)
        .field("class", &cat.class)
        .line("value  leader  length  multiplicity  stability");
    for e in &cat.entries {
        r.line(format!(
            "{}  {}  {}  {}  {}",
            e.value(),
            e.leader,
            e.defect.length(),
            e.multiplicity,
            e.stability
        ));
    }
    let c = &cat.completeness;
    match &c.complete_below {
        Some(v) => r.field("complete below", v),
        None => r.field("complete below", "unknown"),
    };
    r.field("complete through bound", c.complete_through_r)
        .field("scan complete", c.scan_complete)
        .csv_text(catalog_csv(&cat));
    if !cat.unchecked.is_empty() {
        r.field("unchecked", join(&cat.unchecked));
        return Ok(r.with_outcome(Outcome::Incomplete));
    }
    Ok(r)
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn q(bound: &BigRational, max: u64, engine: &Engine) -> Result<Report, LabError> {
    let est = q_empirical(bound, max, engine)?;
    let mut r = Report::new(json!({
        "bound": bound.to_string(),
        "max": max,
        "class": engine.class().tag(),
        "q": est.q,
        "witness": est.witness,
        "unchecked": est.unchecked,
    }));
    r.field("bound", bound)
        .field("max", max)
        .field("q", est.q)
        .field("witness", est.witness)
        .header(&["bound", "max", "q", "witness"])
        .row(vec![bound.to_string(), max.to_string(), est.q.to_string(), est.witness.to_string()]);
    if !est.unchecked.is_empty() {
        r.field("unchecked", join(&est.unchecked));
        return Ok(r.with_outcome(Outcome::Incomplete));
    }
    Ok(r)
}

fn sk(k: usize, count: usize) -> Result<Report, LabError> {
    let values = sk_prefix(k, count)?;
    let mut rows = Vec::new();
    let mut r = Report::new(json!(null));
    r.header(&["index", "exponents", "value"]);
    for (j, v) in values.iter().enumerate() {
        let mut c = vec![0u64; k - 1];
        c[k - 2] = j as u64;
        let b = phi_exponents(&c);
        let b_text: Vec<String> = b.iter().map(ToString::to_string).collect();
        r.line(format!("{j}  b=({})  {v}", b_text.join(",")));
        r.row(vec![j.to_string(), b_text.join(" "), v.to_fixed(6)]);
        rows.push(json!({ "index": j, "exponents": b, "value": value_json(v) }));
    }
    r.set_json(json!({ "k": k, "values": rows }));
    Ok(r)
}

fn tset(form: u8, cap: u64) -> Result<Report, LabError> {
    let values = t_set_values(form, cap)?;
    let mut r = Report::new(json!({
        "form": form,
        "cap": cap,
        "values": values.iter().map(value_json).collect::<Vec<_>>(),
    }));
    r.header(&["index", "value"]);
    for (i, v) in values.iter().enumerate() {
        r.line(v.to_string());
        r.row(vec![i.to_string(), v.to_fixed(6)]);
    }
    Ok(r)
}

fn tset_check(form: u8, cap: u64, engine: &Engine) -> Result<Report, LabError> {
    let rows = t_set_attainment(form, cap, engine)?;
    let label = |a: Option<bool>| match a {
        Some(true) => "attained",
        Some(false) => "not attained",
        None => "unchecked",
    };
    let mut r = Report::new(json!({
        "form": form,
        "cap": cap,
        "values": rows
            .iter()
            .map(|t| json!({ "value": value_json(&t.value), "n": t.n, "attained": t.attained }))
            .collect::<Vec<_>>(),
    }));
    r.header(&["value", "n", "attained"]);
    for t in &rows {
        r.line(format!("{}  n={}  {}", t.value, t.n, label(t.attained)));
        r.row(vec![t.value.to_fixed(6), t.n.to_string(), label(t.attained).to_string()]);
    }
    if rows.iter().any(|t| t.attained.is_none()) {
        return Ok(r.with_outcome(Outcome::Incomplete));
    }
    Ok(r)
}

fn bound_report(rep: VerifyReport) -> Report {
    let mut r = Report::new(serde_json::to_value(&rep).expect("report serializes"));
    r.field("bound", &rep.bound)
        .field("max", rep.n_max)
        .field("checked", rep.checked)
        .field("violations", rep.violations.len())
        .field("unchecked", rep.unchecked.len())
        .header(&["n", "length", "required"]);
    for v in &rep.violations {
        r.line(format!("violation n={}: length {} < {}", v.n, v.length, v.required));
        r.row(vec![v.n.to_string(), v.length.to_string(), v.required.to_string()]);
    }
    if !rep.unchecked.is_empty() {
        r.field("unchecked n", join(&rep.unchecked));
    }
    let outcome = if !rep.violations.is_empty() {
        Outcome::Violations
    } else if !rep.unchecked.is_empty() {
        Outcome::Incomplete
    } else {
        Outcome::Success
    };
    r.with_outcome(outcome)
}

fn verify(which: Verifier, max: u64, engine: &Engine) -> Result<Report, LabError> {
    match which {
        Verifier::Schonhage => Ok(bound_report(verify_schonhage(max, engine)?)),
        Verifier::KnuthStolarsky => Ok(bound_report(verify_knuth_stolarsky(max, engine)?)),
        Verifier::ScholzBrauer => {
            let rows = verify_scholz_brauer(max as u32, engine)?;
            let opt = |x: Option<u32>| x.map_or("?".to_string(), |v| v.to_string());
            let mut r = Report::new(json!({ "bound": "scholz-brauer", "max": max, "rows": rows }));
            r.line("n  len(2^n-1)  n+len(n)-1  status")
                .header(&["n", "lhs", "rhs", "status", "slack"]);
            let mut outcome = Outcome::Success;
            for row in &rows {
                let status = match row.status {
                    ScholzBrauerStatus::Holds => "holds",
                    ScholzBrauerStatus::Violated => {
                        outcome = outcome.max(Outcome::Violations);
                        "violated"
                    }
                    ScholzBrauerStatus::Unchecked => {
                        outcome = outcome.max(Outcome::Incomplete);
                        "unchecked"
                    }
                };
                r.line(format!("{}  {}  {}  {status}", row.n, opt(row.lhs), opt(row.rhs)));
                r.row(vec![
                    row.n.to_string(),
                    opt(row.lhs),
                    opt(row.rhs),
                    status.to_string(),
                    row.slack.map_or(String::new(), |s| s.to_string()),
                ]);
            }
            Ok(r.with_outcome(outcome))
        }
    }
}

fn cs(precision: u32) -> Result<Report, LabError> {
    let e = compute_cs(precision)?;
    let iv = &e.interval;
    let mut r = Report::new(json!({
        "constant": "cs",
        "precision": precision,
        "lo": iv.lo().to_string(),
        "hi": iv.hi().to_string(),
        "lo_decimal": fixed_rational(iv.lo(), 15),
        "hi_decimal": fixed_rational(iv.hi(), 15),
        "series_terms": e.series_terms,
    }));
    r.field("precision", precision)
        .field("lo", fixed_rational(iv.lo(), 15))
        .field("hi", fixed_rational(iv.hi(), 15))
        .field("width", format!("{:e}", num_traits::ToPrimitive::to_f64(&iv.width()).unwrap_or(f64::NAN)))
        .header(&["precision", "lo", "hi"])
        .row(vec![
            precision.to_string(),
            fixed_rational(iv.lo(), 15),
            fixed_rational(iv.hi(), 15),
        ]);
    Ok(r)
}

fn f(k: u64) -> Result<Report, LabError> {
    let rep = f_bounds(k);
    let relation = if rep.exact {
        "="
    } else if matches!(rep.lower, chainlab_core::catalog::FLowerBound::Exact { .. }) {
        "<="
    } else {
        "<"
    };
    let mut r = Report::new(json!({
        "k": k,
        "lower": rep.lower,
        "lower_decimal": rep.lower.to_fixed(6),
        "upper": rep.upper,
        "exact": rep.exact,
    }));
    if rep.exact {
        r.line(format!("f({k}) = {}", rep.upper));
    } else {
        r.line(format!(
            "{} ({}) {relation} f({k}) <= {}",
            rep.lower.expression(),
            rep.lower.to_fixed(6),
            rep.upper
        ));
    }
    r.header(&["k", "lower", "upper", "exact"]).row(vec![
        k.to_string(),
        rep.lower.to_fixed(6),
        rep.upper.to_string(),
        rep.exact.to_string(),
    ]);
    Ok(r)
}

fn ordinal_sum(x: &OrdinalCNF, y: &OrdinalCNF) -> Result<Report, LabError> {
    let s = natural_sum(x, y);
    let mut r = Report::new(json!({ "x": x.to_string(), "y": y.to_string(), "sum": s.to_string() }));
    r.line(s.to_string()).header(&["x", "y", "sum"]).row(vec![
        x.to_string(),
        y.to_string(),
        s.to_string(),
    ]);
    Ok(r)
}

fn ordinal_compare(x: &OrdinalCNF, y: &OrdinalCNF) -> Result<Report, LabError> {
    let sign = match compare(x, y) {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    };
    let mut r = Report::new(json!({ "x": x.to_string(), "y": y.to_string(), "order": sign }));
    r.line(format!("{x} {sign} {y}"))
        .header(&["x", "y", "order"])
        .row(vec![x.to_string(), y.to_string(), sign.to_string()]);
    Ok(r)
}

fn ordinal_bound(q: u64) -> Result<Report, LabError> {
    let b = rwo1_bound(q)?;
    let mut r = Report::new(json!({
        "q": q,
        "bound": b.bound.to_string(),
        "below": b.below.to_string(),
        "ceiling": b.ceiling.to_string(),
    }));
    r.line(b.bound.to_string())
        .field("below", &b.below)
        .field("ceiling", &b.ceiling)
        .header(&["q", "bound", "below", "ceiling"])
        .row(vec![q.to_string(), b.bound.to_string(), b.below.to_string(), b.ceiling.to_string()]);
    Ok(r)
}

fn drop_scan(max: u64, engine: &Engine) -> Result<Report, LabError> {
    match smallest_drop(max, engine)? {
        DropScan::Found(w) => {
            let mut r = Report::new(json!({
                "max": max,
                "class": engine.class().tag(),
                "found": true,
                "n": w.n,
                "length": w.length,
                "chain": elements(&w.chain),
                "doubled_chain": elements(&w.doubled_chain),
            }));
            r.field("n", w.n)
                .field("length", w.length)
                .field("length of 2n", w.doubled_chain.length())
                .field("chain", &w.chain)
                .field("doubled chain", &w.doubled_chain)
                .header(&["n", "length", "chain", "doubled_chain"])
                .row(vec![
                    w.n.to_string(),
                    w.length.to_string(),
                    elements(&w.chain).join(" "),
                    elements(&w.doubled_chain).join(" "),
                ]);
            Ok(r)
        }
        DropScan::NoneUpTo(limit) => {
            let mut r = Report::new(json!({ "max": max, "class": engine.class().tag(), "found": false }));
            r.line(format!("no n <= {limit} has len(2n) = len(n)"))
                .header(&["n", "length", "chain", "doubled_chain"]);
            Ok(r)
        }
        DropScan::Uncertified { first_unchecked } => {
            let mut r = Report::new(json!({
                "max": max,
                "class": engine.class().tag(),
                "found": false,
                "first_unchecked": first_unchecked,
            }));
            r.line(format!("budget exhausted at n = {first_unchecked} before any drop"))
                .header(&["n", "length", "chain", "doubled_chain"]);
            Ok(r.with_outcome(Outcome::Incomplete))
        }
    }
}
