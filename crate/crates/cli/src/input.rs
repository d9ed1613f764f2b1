//! Turning command-line text into rings, ideals and matrices.

use symcontain::curves::{herzog_matrix_in, semigroup_kernel_in, CurveMatrix, CurveSpec};
use symcontain::groebner::Ideal;
use symcontain::named;
use symcontain::polyring::{parse_poly_list, Field, Ring, RingRef};
use symcontain::{Error, Result};

use crate::{IdealSource, RunConfig};

pub const FERMAT: &str = "fermat";
pub const MONOMIAL_V: &str = "monomial-v";

/// An ideal together with what is known about where it came from.
pub struct Loaded<F: Field> {
    pub ideal: Ideal<F>,
    pub matrix: Option<CurveMatrix<F>>,
    pub complete_intersection: bool,
}

/// Splits `[IDEAL] n ...` into the optional ideal text and `count` numbers.
pub fn split_args(args: &[String], src: &IdealSource, count: usize) -> Result<(Option<String>, Vec<u32>)> {
    let flagged = src.curve.is_some() || src.matrix.is_some();
    let (spec, nums) = match args.len().checked_sub(count) {
        Some(0) => (None, args),
        Some(1) if !flagged => (Some(args[0].clone()), &args[1..]),
        Some(1) => return Err(Error::InvalidArgument("give the ideal positionally or by --curve/--matrix, not both".into())),
        _ => return Err(Error::InvalidArgument(format!("expected {count} numeric argument(s)"))),
    };
    let nums = nums
        .iter()
        .map(|s| s.parse::<u32>().map_err(|_| Error::InvalidArgument(format!("expected a number, got \"{s}\""))))
        .collect::<Result<Vec<_>>>()?;
    Ok((spec, nums))
}

/// Parses `n,m`.
pub fn parse_pair(text: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidArgument(format!("expected n,m, got \"{text}\""));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

pub fn ring<F: Field>(field: &F, cfg: &RunConfig, vars: &[String]) -> Result<RingRef<F>> {
    Ring::new(vars, field.clone(), cfg.order.clone())
}

fn xyz<F: Field>(field: &F, cfg: &RunConfig, src: &IdealSource) -> Result<RingRef<F>> {
    let default = ["x", "y", "z"].map(String::from).to_vec();
    let vars = src.vars.clone().unwrap_or(default);
    if vars.len() != 3 {
        return Err(Error::InvalidArgument("matrices and curves live in three variables".into()));
    }
    ring(field, cfg, &vars)
}

/// Resolves the ideal named by a positional spec or by `--curve`/`--matrix`.
pub fn load<F: Field>(field: &F, cfg: &RunConfig, spec: Option<&str>, src: &IdealSource) -> Result<Loaded<F>> {
    let plain = |ideal: Ideal<F>| Loaded { ideal, matrix: None, complete_intersection: false };
    let loaded = match (spec, &src.curve, &src.matrix) {
        (None, Some(c), None) => {
            let spec = CurveSpec::parse(c)?;
            let r = xyz(field, cfg, src)?;
            match herzog_matrix_in(&spec, &r, &cfg.limits) {
                Ok(h) => Loaded { ideal: h.kernel, matrix: h.matrix, complete_intersection: h.complete_intersection },
                Err(Error::NotFound(_)) => plain(semigroup_kernel_in(&spec, &r, &cfg.limits)?),
                Err(e) => return Err(e),
            }
        }
        (None, None, Some(text)) => {
            let m = CurveMatrix::parse(text, &xyz(field, cfg, src)?)?;
            Loaded { ideal: m.ideal()?, matrix: Some(m), complete_intersection: false }
        }
        (Some(text), None, None) => plain(parse_ideal(field, cfg, text, src)?),
        (None, None, None) => return Err(Error::InvalidArgument("no ideal given".into())),
        _ => return Err(Error::InvalidArgument("give exactly one of an ideal, --curve or --matrix".into())),
    };
    Ok(Loaded { ideal: loaded.ideal.with_limits(cfg.limits.clone()), ..loaded })
}

fn parse_ideal<F: Field>(field: &F, cfg: &RunConfig, text: &str, src: &IdealSource) -> Result<Ideal<F>> {
    let text = text.trim();
    if text == FERMAT {
        return named::fermat(&xyz(field, cfg, src)?);
    }
    if let Some(rest) = text.strip_prefix(MONOMIAL_V) {
        let v: usize = rest
            .strip_prefix(['=', ':'])
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("{MONOMIAL_V} needs the number of variables")))?;
        let names: Vec<String> = (1..=v).map(|i| format!("x{i}")).collect();
        return named::monomial_v(&ring(field, cfg, &names)?);
    }
    let default = ["x", "y", "z"].map(String::from).to_vec();
    let r = ring(field, cfg, src.vars.as_deref().unwrap_or(&default))?;
    Ideal::new(&r, parse_poly_list(text, &r)?)
}
