//! Closed-form curvature for edges of maximal outerplanar graphs from
//! local configurations, and the positive degree-pair classifier.
//!
//! Both formulas implement the general minimization displays (minimum of a
//! linear form over the 0/1 labels of the shared triangle apexes); the
//! published per-configuration tables are test vectors against these.

use thiserror::Error;

use crate::graph::Graph;
use crate::triangulation::{EdgeKind, MopWitness};
use crate::{rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("delta parameters must be 0 or 1")]
    InvalidDelta,
    #[error("degree {0} below the minimum {1} for this configuration")]
    DegreeTooSmall(usize, usize),
    #[error("degrees must satisfy d_x <= d_y")]
    UnorderedDegrees,
    #[error("structurally impossible configuration: {0}")]
    ImpossibleConfig(String),
}

/// Local data of an exterior edge `xy` (oriented so `d_x <= d_y`):
/// the unique common neighbor `z` and the counts
/// `delta_xz = |N(x,z)\{y}|`, `delta_yz = |N(y,z)\{x}|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorConfig {
    pub z: usize,
    pub delta_xz: u8,
    pub delta_yz: u8,
    pub d_x: usize,
    pub d_y: usize,
}

/// Local data of an interior edge `xy` (oriented so `d_x <= d_y`): the two
/// common neighbors `w`, `z`, canonically ordered so the delta tuple
/// `(delta_xw, delta_xz, delta_yw, delta_yz)` is lexicographically minimal
/// under the w/z swap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorConfig {
    pub w: usize,
    pub z: usize,
    pub delta_xw: u8,
    pub delta_xz: u8,
    pub delta_yw: u8,
    pub delta_yz: u8,
    pub d_x: usize,
    pub d_y: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalConfig {
    Exterior(ExteriorConfig),
    Interior(InteriorConfig),
}

impl LocalConfig {
    pub fn kind(&self) -> EdgeKind {
        match self {
            LocalConfig::Exterior(_) => EdgeKind::Exterior,
            LocalConfig::Interior(_) => EdgeKind::Interior,
        }
    }

    pub fn kappa(&self) -> Result<Rat, FormulaError> {
        match self {
            LocalConfig::Exterior(c) => exterior_kappa(c.d_x, c.d_y, c.delta_xz, c.delta_yz),
            LocalConfig::Interior(c) => {
                interior_kappa(c.d_x, c.d_y, c.delta_xw, c.delta_xz, c.delta_yw, c.delta_yz)
            }
        }
    }

    /// Compact delta-tuple string for reports.
    pub fn tuple_string(&self) -> String {
        match self {
            LocalConfig::Exterior(c) => format!("({},{})", c.delta_xz, c.delta_yz),
            LocalConfig::Interior(c) => format!(
                "({},{},{},{})",
                c.delta_xw, c.delta_xz, c.delta_yw, c.delta_yz
            ),
        }
    }
}

fn delta(g: &Graph, a: usize, b: usize, excluded: usize) -> Result<u8, FormulaError> {
    let count = g
        .common_neighbors(a, b)
        .into_iter()
        .filter(|&v| v != excluded)
        .count();
    if count > 1 {
        return Err(FormulaError::ImpossibleConfig(format!(
            "|N({a},{b})\\{{{excluded}}}| = {count} > 1"
        )));
    }
    Ok(count as u8)
}

/// Extract the local configuration of an edge of a maximal outerplanar
/// graph, orienting internally so `d_x <= d_y`. Structural impossibilities
/// (which cannot arise in a genuine maximal outerplanar graph) are rejected
/// with a diagnostic.
pub fn extract_config(
    g: &Graph,
    witness: &MopWitness,
    x: usize,
    y: usize,
) -> Result<LocalConfig, FormulaError> {
    if !g.has_edge(x, y) {
        return Err(FormulaError::NotAnEdge(x, y));
    }
    let (x, y) = if g.degree(x) <= g.degree(y) {
        (x, y)
    } else {
        (y, x)
    };
    let (d_x, d_y) = (g.degree(x), g.degree(y));
    let kind = witness
        .edge_kind(g, x, y)
        .map_err(|_| FormulaError::NotAnEdge(x, y))?;
    let common = g.common_neighbors(x, y);

    match kind {
        EdgeKind::Exterior => {
            let [z] = common[..] else {
                return Err(FormulaError::ImpossibleConfig(format!(
                    "exterior edge {x}-{y} has {} common neighbors",
                    common.len()
                )));
            };
            let delta_xz = delta(g, x, z, y)?;
            let delta_yz = delta(g, y, z, x)?;
            if delta_xz == 1 && delta_yz == 0 {
                return Err(FormulaError::ImpossibleConfig(
                    "exterior deltas (1,0) with d_x <= d_y".into(),
                ));
            }
            // A zero delta pins the matching degree to 2.
            if (delta_xz == 0 && d_x != 2) || (delta_yz == 0 && d_y != 2) {
                return Err(FormulaError::ImpossibleConfig(format!(
                    "exterior deltas ({delta_xz},{delta_yz}) with degrees ({d_x},{d_y})"
                )));
            }
            Ok(LocalConfig::Exterior(ExteriorConfig {
                z,
                delta_xz,
                delta_yz,
                d_x,
                d_y,
            }))
        }
        EdgeKind::Interior => {
            let [w, z] = common[..] else {
                return Err(FormulaError::ImpossibleConfig(format!(
                    "interior edge {x}-{y} has {} common neighbors",
                    common.len()
                )));
            };
            let (mut w, mut z) = (w, z);
            let tuple = |w: usize, z: usize| -> Result<(u8, u8, u8, u8), FormulaError> {
                Ok((
                    delta(g, x, w, y)?,
                    delta(g, x, z, y)?,
                    delta(g, y, w, x)?,
                    delta(g, y, z, x)?,
                ))
            };
            let t1 = tuple(w, z)?;
            let t2 = (t1.1, t1.0, t1.3, t1.2);
            if t2 < t1 {
                std::mem::swap(&mut w, &mut z);
            }
            let (delta_xw, delta_xz, delta_yw, delta_yz) = t1.min(t2);
            if delta_xw + delta_xz >= 1 && delta_yw == 0 && delta_yz == 0 {
                return Err(FormulaError::ImpossibleConfig(
                    "interior x-side delta without any y-side delta".into(),
                ));
            }
            // Each side's degree floor follows from its delta pattern:
            // 3 when both deltas vanish (then exactly 3), else 3 + count.
            let floor = |a: u8, b: u8| 3 + a as usize + b as usize;
            if (delta_xw == 0 && delta_xz == 0 && d_x != 3) || d_x < floor(delta_xw, delta_xz) {
                return Err(FormulaError::ImpossibleConfig(format!(
                    "interior x-deltas ({delta_xw},{delta_xz}) with d_x = {d_x}"
                )));
            }
            if (delta_yw == 0 && delta_yz == 0 && d_y != 3) || d_y < floor(delta_yw, delta_yz) {
                return Err(FormulaError::ImpossibleConfig(format!(
                    "interior y-deltas ({delta_yw},{delta_yz}) with d_y = {d_y}"
                )));
            }
            Ok(LocalConfig::Interior(InteriorConfig {
                w,
                z,
                delta_xw,
                delta_xz,
                delta_yw,
                delta_yz,
                d_x,
                d_y,
            }))
        }
    }
}

fn check_delta(d: u8) -> Result<(), FormulaError> {
    if d > 1 {
        Err(FormulaError::InvalidDelta)
    } else {
        Ok(())
    }
}

/// Exterior-edge curvature: minimum over `f(z) in {0, 1}` of
/// `((1+δxz)/dx - (1+δyz)/dy)·f(z) + 3/dx + (4+δyz)/dy - 2`.
pub fn exterior_kappa(
    d_x: usize,
    d_y: usize,
    delta_xz: u8,
    delta_yz: u8,
) -> Result<Rat, FormulaError> {
    check_delta(delta_xz)?;
    check_delta(delta_yz)?;
    if d_x > d_y {
        return Err(FormulaError::UnorderedDegrees);
    }
    if d_x < 2 {
        return Err(FormulaError::DegreeTooSmall(d_x, 2));
    }
    if delta_xz == 1 && delta_yz == 0 {
        return Err(FormulaError::ImpossibleConfig(
            "exterior deltas (1,0) with d_x <= d_y".into(),
        ));
    }
    let (dx, dy) = (d_x as i64, d_y as i64);
    let coeff = rat(1 + delta_xz as i64, dx) - rat(1 + delta_yz as i64, dy);
    let base = rat(3, dx) + rat(4 + delta_yz as i64, dy) - rat(2, 1);
    Ok([rat(0, 1), coeff]
        .into_iter()
        .map(|v| v + &base)
        .min()
        .unwrap())
}

/// Interior-edge curvature: minimum over `f(w), f(z) in {0, 1}` of
/// `((1+δxw)/dx - (1+δyw)/dy)·f(w) + ((1+δxz)/dx - (1+δyz)/dy)·f(z)
///  + 4/dx + (6+δyw+δyz)/dy - 2`.
pub fn interior_kappa(
    d_x: usize,
    d_y: usize,
    delta_xw: u8,
    delta_xz: u8,
    delta_yw: u8,
    delta_yz: u8,
) -> Result<Rat, FormulaError> {
    for d in [delta_xw, delta_xz, delta_yw, delta_yz] {
        check_delta(d)?;
    }
    if d_x > d_y {
        return Err(FormulaError::UnorderedDegrees);
    }
    if d_x < 3 {
        return Err(FormulaError::DegreeTooSmall(d_x, 3));
    }
    if delta_xw + delta_xz >= 1 && delta_yw == 0 && delta_yz == 0 {
        return Err(FormulaError::ImpossibleConfig(
            "interior x-side delta without any y-side delta".into(),
        ));
    }
    let (dx, dy) = (d_x as i64, d_y as i64);
    let coeff_w = rat(1 + delta_xw as i64, dx) - rat(1 + delta_yw as i64, dy);
    let coeff_z = rat(1 + delta_xz as i64, dx) - rat(1 + delta_yz as i64, dy);
    let base = rat(4, dx) + rat(6 + delta_yw as i64 + delta_yz as i64, dy) - rat(2, 1);
    let mut best: Option<Rat> = None;
    for fw in 0..=1i64 {
        for fz in 0..=1i64 {
            let v = &coeff_w * rat(fw, 1) + &coeff_z * rat(fz, 1) + &base;
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    Ok(best.unwrap())
}

/// Degree range admissible for one endpoint given its two delta values
/// (interior case): exactly 3 when both vanish, else at least 3 plus the
/// number of present deltas.
fn interior_degree_range(a: u8, b: u8) -> std::ops::RangeInclusive<usize> {
    if a == 0 && b == 0 {
        3..=3
    } else {
        (3 + a as usize + b as usize)..=9
    }
}

/// All degree pairs `(d_x, d_y)` with `d_x <= d_y <= 9` admissible for the
/// exterior configuration and carrying positive curvature. A zero delta
/// pins the matching degree to 2.
pub fn exterior_good_pairs(
    delta_xz: u8,
    delta_yz: u8,
) -> Result<Vec<(usize, usize)>, FormulaError> {
    check_delta(delta_xz)?;
    check_delta(delta_yz)?;
    let dx_range = if delta_xz == 0 { 2..=2 } else { 3..=9 };
    let dy_range = if delta_yz == 0 { 2..=2 } else { 3..=9 };
    let mut out = Vec::new();
    for d_x in dx_range {
        for d_y in dy_range.clone() {
            if d_x > d_y {
                continue;
            }
            match exterior_kappa(d_x, d_y, delta_xz, delta_yz) {
                Ok(k) if k > rat(0, 1) => out.push((d_x, d_y)),
                _ => {}
            }
        }
    }
    Ok(out)
}

/// Positive degree pairs for an interior configuration, over the degree
/// ranges its deltas admit (`d_x <= d_y <= 9`).
pub fn interior_good_pairs(
    delta_xw: u8,
    delta_xz: u8,
    delta_yw: u8,
    delta_yz: u8,
) -> Result<Vec<(usize, usize)>, FormulaError> {
    for d in [delta_xw, delta_xz, delta_yw, delta_yz] {
        check_delta(d)?;
    }
    let mut out = Vec::new();
    for d_x in interior_degree_range(delta_xw, delta_xz) {
        for d_y in interior_degree_range(delta_yw, delta_yz) {
            if d_x > d_y {
                continue;
            }
            match interior_kappa(d_x, d_y, delta_xw, delta_xz, delta_yw, delta_yz) {
                Ok(k) if k > rat(0, 1) => out.push((d_x, d_y)),
                _ => {}
            }
        }
    }
    Ok(out)
}

/// Whether the configuration's curvature is strictly positive.
pub fn is_good_pair(config: &LocalConfig) -> Result<bool, FormulaError> {
    Ok(config.kappa()? > rat(0, 1))
}

/// Closed-form curvature of an edge of a witnessed maximal outerplanar
/// graph (orientation-independent).
pub fn closed_form_kappa(
    g: &Graph,
    witness: &MopWitness,
    x: usize,
    y: usize,
) -> Result<Rat, FormulaError> {
    extract_config(g, witness, x, y)?.kappa()
}
