//! Subcommand bodies.

use std::time::Instant;

use serde_json::json;
use symcontain::criterion::{build_context_with_limits, build_h, build_v_with, char_guard, decide, Lift, Mode};
use symcontain::curves::{divisibility_criterion, herzog_matrix_in, Certificate, CurveSpec};
use symcontain::idealops::fedder::fedder_witness;
use symcontain::named;
use symcontain::polyring::{parse_poly, Field, PrimeField};
use symcontain::symbolic::{stable_propagation, sweep_table, ContainmentReport, Method, Outcome, SweepOptions, SymbolicContext};
use symcontain::{Error, Result};

use crate::input::{self, Loaded};
use crate::report::{outcome_fields, Report, Status};
use crate::{IdealSource, MethodArg, RunConfig};

/// Writes one line to stdout, exiting quietly once the reader has gone away.
pub fn out(line: impl std::fmt::Display) {
    use std::io::Write;
    if let Err(e) = writeln!(std::io::stdout().lock(), "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed printing to stdout: {e}");
    }
}

fn emit(cfg: &RunConfig, report: &Report, plain: impl FnOnce() -> String) {
    if cfg.json() {
        out(report.json());
    } else {
        out(plain());
    }
}

fn texts<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(|p| p.to_string()).collect()
}

pub fn gb<F: Field>(field: F, cfg: &RunConfig, spec: Option<&str>, src: &IdealSource) -> Result<Status> {
    let start = Instant::now();
    let loaded = input::load(&field, cfg, spec, src)?;
    let basis = loaded.ideal.gb()?;
    let mut r = Report::new(cfg, "gb");
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r.ideal = Some(loaded.ideal.to_string());
    r.data = json!({ "order": basis.order().to_string(), "basis": texts(basis.elements()) });
    emit(cfg, &r, || texts(basis.elements()).join("\n"));
    Ok(Status::default())
}

pub fn member<F: Field>(field: F, cfg: &RunConfig, f: &str, spec: Option<&str>, src: &IdealSource) -> Result<Status> {
    let start = Instant::now();
    let loaded = input::load(&field, cfg, spec, src)?;
    let p = parse_poly(f, loaded.ideal.ring())?;
    let inside = loaded.ideal.contains(&p)?;
    let mut r = Report::new(cfg, "member");
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r.ideal = Some(loaded.ideal.to_string());
    r.data = json!({ "polynomial": p.to_string(), "member": inside });
    emit(cfg, &r, || inside.to_string());
    Ok(Status::default())
}

pub fn sympower<F: Field>(field: F, cfg: &RunConfig, spec: Option<&str>, src: &IdealSource, n: u32) -> Result<Status> {
    if n == 0 {
        return Err(Error::InvalidArgument("symbolic power exponent must be positive".into()));
    }
    let start = Instant::now();
    let loaded = input::load(&field, cfg, spec, src)?;
    let ctx = SymbolicContext::new(&loaded.ideal)?;
    let power = ctx.symbolic_power(n)?;
    let mut r = Report::new(cfg, "sympower");
    r.query.n = Some(n);
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r.ideal = Some(loaded.ideal.to_string());
    r.data = json!({ "class": ctx.class().kind.as_str(), "generators": texts(power.gens()) });
    emit(cfg, &r, || texts(power.gens()).join("\n"));
    Ok(Status::default())
}

fn criterion_report<F: Field>(loaded: &Loaded<F>, cfg: &RunConfig, n: u32, m: u32, mode: Mode) -> Result<ContainmentReport<F>> {
    if loaded.complete_intersection {
        return Ok(ContainmentReport::new(n, m, Method::Criterion).with_note("complete intersection"));
    }
    let matrix = loaded
        .matrix
        .as_ref()
        .ok_or_else(|| Error::Unsupported("the criterion needs a presentation matrix (--curve or --matrix)".into()))?;
    match build_context_with_limits(matrix, cfg.limits.clone()) {
        Ok(ctx) => decide(&ctx, n, m, mode),
        Err(Error::ResourceLimit(k)) => {
            let mut r = ContainmentReport::new(n, m, Method::Criterion);
            r.outcome = Outcome::ResourceLimited(k);
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

/// Refuses criterion queries the characteristic rules out, before any work.
fn precheck_criterion<F: Field>(loaded: &Loaded<F>, cfg: &RunConfig, n: u32, m: u32) -> Result<()> {
    if loaded.complete_intersection {
        return Ok(());
    }
    if loaded.matrix.is_none() {
        return Err(Error::Unsupported("the criterion needs a presentation matrix (--curve or --matrix)".into()));
    }
    if n <= m {
        return Err(Error::InvalidArgument(format!("criterion needs n > m, got ({n}, {m})")));
    }
    let p = cfg.field.characteristic();
    if !char_guard(p, n, m).derivation_valid() {
        return Err(Error::CharacteristicGuard(format!(
            "characteristic {p} divides {n}!/{m}!; the criterion does not apply to ({n}, {m})"
        )));
    }
    Ok(())
}

fn run_containment<F: Field>(
    cfg: &RunConfig,
    kind: &str,
    loaded: &Loaded<F>,
    n: u32,
    m: u32,
    method: MethodArg,
    mode: Mode,
) -> Result<Status> {
    if m == 0 || n < m {
        return Err(Error::InvalidArgument(format!("containment query needs n ≥ m ≥ 1, got ({n}, {m})")));
    }
    let oracle = matches!(method, MethodArg::Oracle | MethodArg::Both);
    let criterion = matches!(method, MethodArg::Criterion | MethodArg::Both);
    if criterion {
        precheck_criterion(loaded, cfg, n, m)?;
    }
    let mut status = Status::default();
    let mut verdicts = Vec::new();
    let mut report = |r: ContainmentReport<F>, start: Instant| {
        let mut out = Report::containment(cfg, kind, &r, start.elapsed());
        out.ideal = Some(loaded.ideal.to_string());
        emit(cfg, &out, || out.plain_containment());
        status.record(r.outcome, cfg.expect);
        verdicts.push(r.outcome);
    };
    if oracle {
        let start = Instant::now();
        let r = SymbolicContext::new(&loaded.ideal)?.check(n, m)?;
        report(r, start);
    }
    if criterion {
        let start = Instant::now();
        let r = criterion_report(loaded, cfg, n, m, mode)?;
        report(r, start);
    }
    if let [a, b] = verdicts[..] {
        let decided = !matches!(a, Outcome::ResourceLimited(_)) && !matches!(b, Outcome::ResourceLimited(_));
        if decided && a != b {
            eprintln!("warning: the oracle and the criterion disagree on ({n}, {m})");
        }
        if decided && !cfg.json() {
            out(format!("methods agree: {}", if a == b { "yes" } else { "no" }));
        }
    }
    Ok(status)
}

#[allow(clippy::too_many_arguments)]
pub fn contain<F: Field>(
    field: F,
    cfg: &RunConfig,
    spec: Option<&str>,
    src: &IdealSource,
    n: u32,
    m: u32,
    method: MethodArg,
    exhaustive: bool,
) -> Result<Status> {
    let loaded = input::load(&field, cfg, spec, src)?;
    let mode = if exhaustive { Mode::Exhaustive } else { Mode::Deterministic };
    run_containment(cfg, "contain", &loaded, n, m, method, mode)
}

pub struct CurveOptions {
    pub matrix: bool,
    pub criteria: bool,
    pub strand: Option<u32>,
    pub lift: Option<(u32, u32)>,
    pub derivation: bool,
}

pub fn curve<F: Field>(field: F, cfg: &RunConfig, triple: &str, opts: &CurveOptions) -> Result<Status> {
    let start = Instant::now();
    let spec = CurveSpec::parse(triple)?;
    let ring = input::ring(&field, cfg, &["x", "y", "z"].map(String::from))?;
    let h = herzog_matrix_in(&spec, &ring, &cfg.limits)?;
    let mut lines = vec![
        format!("curve: {spec}"),
        format!("kernel: {}", h.kernel),
        format!("minimal generators: {}", texts(&h.minimal_generators).join(", ")),
        format!("complete intersection: {}", if h.complete_intersection { "yes" } else { "no" }),
    ];
    let mut data = json!({
        "curve": spec.exponents(),
        "kernel": texts(h.kernel.gens()),
        "minimal_generators": texts(&h.minimal_generators),
        "complete_intersection": h.complete_intersection,
    });
    let needs_matrix = opts.matrix || opts.criteria || opts.strand.is_some() || opts.lift.is_some();
    if needs_matrix && h.complete_intersection {
        lines.push("matrix: none (complete intersection)".into());
    }
    if let (true, Some(m)) = (needs_matrix, &h.matrix) {
        if opts.matrix {
            lines.push(format!("matrix: {m}"));
            data["matrix"] = m.to_string().into();
        }
        if opts.criteria {
            let certs = divisibility_criterion(m);
            if certs.is_empty() {
                lines.push("certificates: none".into());
            }
            let mut list = Vec::new();
            for c in &certs {
                let how = match &c.certificate {
                    Certificate::Pattern { pattern, matrix } => format!("pattern {} on {matrix}", pattern.as_str()),
                    Certificate::Frobenius { q } => format!("Frobenius power q = {q}"),
                };
                lines.push(format!("I^({}) ⊆ I^{}: {how}", c.n, c.m));
                list.push(json!({ "n": c.n, "m": c.m, "certificate": how }));
            }
            data["certificates"] = list.into();
        }
        if opts.strand.is_some() || opts.lift.is_some() {
            let ctx = build_context_with_limits(m, cfg.limits.clone())?;
            if let Some(n) = opts.strand {
                let grid = build_h(&ctx, n)?.to_string();
                lines.push(format!("H_{n}:\n{}", grid.trim_end()));
                data["strand"] = grid.into();
            }
            if let Some((n, mm)) = opts.lift {
                let lift = if opts.derivation { Lift::Derivation } else { Lift::Multinomial };
                let grid = build_v_with(&ctx, n, mm, lift)?.to_string();
                lines.push(format!("V_{{{n},{mm}}} ({}):\n{}", lift.as_str(), grid.trim_end()));
                data["lift"] = grid.into();
            }
        }
    }
    let mut r = Report::new(cfg, "curve");
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r.ideal = Some(h.kernel.to_string());
    r.data = data;
    emit(cfg, &r, || lines.join("\n"));
    Ok(Status::default())
}

pub fn sweep<F: Field>(
    field: F,
    cfg: &RunConfig,
    spec: Option<&str>,
    src: &IdealSource,
    amax: u32,
    bmax: u32,
) -> Result<Status> {
    let start = Instant::now();
    let loaded = input::load(&field, cfg, spec, src)?;
    let ctx = SymbolicContext::new(&loaded.ideal)?;
    let opts = SweepOptions { store: cfg.store_path.clone(), ..SweepOptions::new(amax, bmax) };
    let table = sweep_table(&ctx, &opts)?;
    let mut status = Status::default();
    let mut cells = Vec::new();
    for (&(a, b), c) in &table.cells {
        if matches!(c.outcome, Outcome::ResourceLimited(_)) {
            status.limited = true;
        }
        let (outcome, limit) = outcome_fields(c.outcome);
        cells.push(json!({
            "a": a, "b": b, "outcome": outcome, "limit": limit,
            "witness": c.witness, "elapsed_ms": c.elapsed_ms,
        }));
    }
    let resurgence = table.resurgence_lower.map(|r| r.to_string());
    let mut r = Report::new(cfg, "sweep");
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r.ideal = Some(loaded.ideal.to_string());
    r.data = json!({
        "fingerprint": table.fingerprint,
        "cells": cells,
        "resurgence_lower": resurgence,
        "resumed": table.resumed,
    });
    emit(cfg, &r, || {
        let mut out = String::from("a\\b");
        for b in 1..=bmax {
            out += &format!("\t{b}");
        }
        for a in 1..=amax {
            out += &format!("\n{a}");
            for b in 1..=bmax {
                let cell = match table.get(a, b).map(|c| c.outcome) {
                    Some(Outcome::Holds) => "holds".to_string(),
                    Some(Outcome::Fails) => "fails".to_string(),
                    Some(Outcome::ResourceLimited(k)) => format!("limit:{k}"),
                    None => "".to_string(),
                };
                out += &format!("\t{cell}");
            }
        }
        out += &format!("\nresurgence_lower = {}", resurgence.as_deref().unwrap_or("undetermined"));
        if table.resumed > 0 {
            out += &format!("\nresumed {} cell(s) from the store", table.resumed);
        }
        out
    });
    Ok(status)
}

pub fn fedder(field: PrimeField, cfg: &RunConfig, spec: Option<&str>, src: &IdealSource, p: u64) -> Result<Status> {
    let start = Instant::now();
    let loaded = input::load(&field, cfg, spec, src)?;
    let witness = fedder_witness(&loaded.ideal, p)?;
    let mut r = Report::new(cfg, "fedder");
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r.ideal = Some(loaded.ideal.to_string());
    r.witness = witness.as_ref().map(|w| w.to_string());
    r.data = json!({ "p": p, "fpure": witness.is_some() });
    emit(cfg, &r, || match &witness {
        Some(w) => format!("F-pure: true\n  witness: {w} ∈ (I^[{p}] : I) outside m^[{p}]"),
        None => "F-pure: false".into(),
    });
    Ok(Status::default())
}

pub fn stable(cfg: &RunConfig, h: u32, m: u32, upto: Option<u32>) -> Result<Status> {
    let s = stable_propagation(h, m)?;
    let last = upto.unwrap_or(s.k0 + 4).max(s.k0);
    let schedule = s.schedule(last)?;
    let mut lines = vec![
        format!("k0 = {}", s.k0),
        format!("base: I^({}) ⊆ I^{m} gives I^(hk−h) ⊆ I^k for all k ≥ {}", h * m - h, s.k0),
    ];
    let mut rows = Vec::new();
    for d in &schedule {
        let factors: Vec<String> = d.a.iter().map(|a| format!("I^({})", a + 1)).collect();
        let a: Vec<String> = d.a.iter().map(u32::to_string).collect();
        lines.push(format!(
            "k = {}: n = {}, a = ({}), I^({}) ⊆ {}",
            d.k,
            d.n,
            a.join(", "),
            d.symbolic_exponent,
            factors.join("·")
        ));
        rows.push(json!({ "k": d.k, "n": d.n, "a": d.a, "symbolic_exponent": d.symbolic_exponent }));
    }
    let mut r = Report::new(cfg, "stable");
    r.query.m = Some(m);
    r.data = json!({ "h": h, "m": m, "k0": s.k0, "schedule": rows });
    emit(cfg, &r, || lines.join("\n"));
    Ok(Status::default())
}

pub fn fermat<F: Field>(field: F, cfg: &RunConfig, n: Option<u32>, m: Option<u32>) -> Result<Status> {
    let ring = input::ring(&field, cfg, &["x", "y", "z"].map(String::from))?;
    let ideal = named::fermat(&ring)?.with_limits(cfg.limits.clone());
    let loaded = Loaded { ideal, matrix: None, complete_intersection: false };
    if !cfg.json() {
        out(format!("Fermat ideal: {}", loaded.ideal));
    }
    let queries = match (n, m) {
        (Some(n), Some(m)) => vec![(n, m)],
        (None, None) => vec![(3, 2), (4, 2)],
        _ => return Err(Error::InvalidArgument("give both n and m, or neither".into())),
    };
    let mut status = Status::default();
    for (n, m) in queries {
        let s = run_containment(cfg, "fermat", &loaded, n, m, MethodArg::Oracle, Mode::Deterministic)?;
        status.limited |= s.limited;
        status.mismatch |= s.mismatch;
    }
    Ok(status)
}
