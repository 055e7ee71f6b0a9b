//! Shape mini-language: `name:key=val,key=val` plus `@file` for tabulated
//! two-column tables, so every figure dataset is scriptable.

use anyhow::{anyhow, bail, Context, Result};
use kgspectra::potentials::Tabulated;
use kgspectra::Shape;
use std::collections::BTreeMap;

pub fn parse_shape(spec: &str) -> Result<Shape> {
    if let Some(path) = spec.strip_prefix('@') {
        let tab = Tabulated::from_path(path)
            .with_context(|| format!("loading shape table {path}"))?;
        return Ok(Shape::Tabulated(tab));
    }
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n, p),
        None => (spec, ""),
    };
    let mut kv = BTreeMap::new();
    for part in params.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=val in {part:?}"))?;
        let num: f64 = v.parse().with_context(|| format!("parsing {part:?}"))?;
        kv.insert(k.to_string(), num);
    }
    let mut take = |k: &str| kv.remove(k);
    let shape = match name {
        "square-well" => {
            let t = take("t").ok_or_else(|| anyhow!("square-well needs t=<halfwidth>"))?;
            Shape::square_well(t)?
        }
        "shifted-square-well" => {
            let t = take("t").ok_or_else(|| anyhow!("shifted-square-well needs t="))?;
            let inner = take("inner").ok_or_else(|| anyhow!("shifted-square-well needs inner="))?;
            let floor = take("floor").unwrap_or(0.0);
            Shape::shifted_square_well(t, inner, floor)?
        }
        "woods-saxon" => {
            let radius = take("radius").unwrap_or(1.0);
            match (take("q"), take("b")) {
                (Some(q), None) => Shape::woods_saxon_with_radius(q, radius)?,
                (None, Some(b)) => Shape::woods_saxon_steepness(b, radius)?,
                (Some(_), Some(_)) => bail!("woods-saxon takes q= or b=, not both"),
                (None, None) => bail!("woods-saxon needs q=<range> or b=<steepness>"),
            }
        }
        "exponential" => {
            let a = take("a").ok_or_else(|| anyhow!("exponential needs a=<range>"))?;
            Shape::exponential(a)?
        }
        other => bail!(
            "unknown shape {other:?} (expected square-well, shifted-square-well, \
             woods-saxon, exponential, or @table-file)"
        ),
    };
    if let Some((k, _)) = kv.into_iter().next() {
        bail!("unknown parameter {k:?} for shape {name}");
    }
    Ok(shape)
}

/// Class validation with the flat-well exemption: floored square wells are
/// legitimate catalog members (envelopes), everything else must satisfy the
/// full class conditions including vanishing at infinity.
pub fn validate_for_solving(shape: &Shape) -> Result<()> {
    match shape {
        Shape::ShiftedSquareWell { .. } => Ok(()),
        other => other.validate().map_err(Into::into),
    }
}
