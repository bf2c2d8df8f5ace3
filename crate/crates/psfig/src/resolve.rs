//! Resolves point expressions into absolute coordinates.
//!
//! Each picture is walked in source order with a fresh node environment:
//! `\pnode` binds names, drawing commands look them up. All output stays in
//! user units with mathematical orientation (+y up); the unit scale is only
//! applied when rendering. Angles are degrees in the surface language and
//! are converted to radians exactly once, here.

use crate::ast::{Command, Dimension, Picture, PointExpr, Unit};
use crate::parser::parse_dimension;
use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};
use thiserror::Error;

/// Stroke width used when a drawing command carries no `linewidth` option.
pub const DEFAULT_LINEWIDTH: Dimension = Dimension { value: 0.8, unit: Unit::Pt };

/// An absolute 2-D point in user units, +y up.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AbsPoint {
    pub x: f64,
    pub y: f64,
}

impl AbsPoint {
    pub fn new(x: f64, y: f64) -> Self {
        AbsPoint { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for AbsPoint {
    type Output = AbsPoint;
    fn add(self, rhs: AbsPoint) -> AbsPoint {
        AbsPoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for AbsPoint {
    type Output = AbsPoint;
    fn sub(self, rhs: AbsPoint) -> AbsPoint {
        AbsPoint::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for AbsPoint {
    type Output = AbsPoint;
    fn mul(self, rhs: f64) -> AbsPoint {
        AbsPoint::new(self.x * rhs, self.y * rhs)
    }
}

/// Per-picture bindings from node name to resolved point.
///
/// Lookup of an undefined name is an error, never a default. Rebinding an
/// existing name succeeds with a recorded warning; the last binding wins.
#[derive(Clone, Debug, Default)]
pub struct NodeEnv {
    bindings: HashMap<String, AbsPoint>,
    pub warnings: Vec<String>,
}

impl NodeEnv {
    pub fn new() -> Self {
        NodeEnv::default()
    }

    pub fn bind(&mut self, name: &str, point: AbsPoint, line: usize) {
        if self.bindings.contains_key(name) {
            self.warnings.push(format!(
                "line {}: node '{}' rebound; the last binding wins",
                line, name
            ));
        }
        self.bindings.insert(name.to_string(), point);
    }

    pub fn lookup(&self, name: &str) -> Option<AbsPoint> {
        self.bindings.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Polyline,
    ClosedCurve,
}

/// A drawing command after resolution: absolute points in units plus the
/// stroke width in centimeters.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedElement {
    pub kind: ElementKind,
    pub points: Vec<AbsPoint>,
    pub linewidth_cm: f64,
}

/// A picture with every point resolved, ready for rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedPicture {
    pub bbox_lo: AbsPoint,
    pub bbox_hi: AbsPoint,
    pub elements: Vec<ResolvedElement>,
    /// Physical centimeters per coordinate unit.
    pub unit_cm: f64,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ResolveError {
    #[error("unbound node '{name}'{}", fmt_line(.line))]
    UnboundNode { name: String, line: Option<usize> },
    #[error("invalid linewidth: {detail}{}", fmt_line(.line))]
    BadLinewidth { detail: String, line: Option<usize> },
    #[error("point does not resolve to finite coordinates{}", fmt_line(.line))]
    NonFinite { line: Option<usize> },
}

fn fmt_line(line: &Option<usize>) -> String {
    match line {
        Some(n) => format!(" (line {})", n),
        None => String::new(),
    }
}

impl ResolveError {
    fn at_line(mut self, at: usize) -> Self {
        let slot = match &mut self {
            ResolveError::UnboundNode { line, .. } => line,
            ResolveError::BadLinewidth { line, .. } => line,
            ResolveError::NonFinite { line } => line,
        };
        slot.get_or_insert(at);
        self
    }
}

/// Converts a dimension to centimeters. `pt` is the TeX point, 72.27 per
/// inch.
pub fn convert_dimension(d: Dimension) -> f64 {
    match d.unit {
        Unit::Cm => d.value,
        Unit::Mm => d.value * 0.1,
        Unit::In => d.value * 2.54,
        Unit::Pt => d.value * (2.54 / 72.27),
    }
}

/// Evaluates one point expression against the current environment.
///
/// Cartesian points pass through, polar and offset forms convert their
/// angle from degrees, node references look up prior bindings.
pub fn resolve_point(expr: &PointExpr, env: &NodeEnv) -> Result<AbsPoint, ResolveError> {
    let point = match expr {
        PointExpr::Cartesian { x, y } => AbsPoint::new(*x, *y),
        PointExpr::Polar { r, theta } => {
            let rad = theta.to_radians();
            AbsPoint::new(r * rad.cos(), r * rad.sin())
        }
        PointExpr::NodeRef { name } => env.lookup(name).ok_or_else(|| {
            ResolveError::UnboundNode { name: name.clone(), line: None }
        })?,
        PointExpr::Offset { angle, nodesep, base } => {
            let origin = env.lookup(base).ok_or_else(|| {
                ResolveError::UnboundNode { name: base.clone(), line: None }
            })?;
            let rad = angle.to_radians();
            AbsPoint::new(origin.x + nodesep * rad.cos(), origin.y + nodesep * rad.sin())
        }
    };
    if !point.is_finite() {
        return Err(ResolveError::NonFinite { line: None });
    }
    Ok(point)
}

/// Walks a picture's commands in source order and resolves every element.
///
/// Returns the resolved picture together with the final node environment
/// (bindings and warnings). The environment starts empty: node scope is
/// strictly per picture. A picture-level `\psset` updates the default
/// linewidth for the remaining commands; `unit` cannot change mid-picture
/// and is warned about.
pub fn resolve_picture(
    picture: &Picture,
    unit_cm: f64,
) -> Result<(ResolvedPicture, NodeEnv), ResolveError> {
    debug_assert!(unit_cm > 0.0);
    let mut env = NodeEnv::new();
    let mut default_linewidth_cm = convert_dimension(DEFAULT_LINEWIDTH);
    let mut elements = Vec::new();
    for spanned in &picture.commands {
        let line = spanned.line;
        match &spanned.node {
            Command::PsSet { options } => {
                for (key, value) in options.entries() {
                    match key {
                        "linewidth" => {
                            default_linewidth_cm = linewidth_cm(value, line)?;
                        }
                        "unit" => env.warnings.push(format!(
                            "line {}: unit cannot change inside a picture; ignored",
                            line
                        )),
                        _ => {} // already warned at parse time
                    }
                }
            }
            Command::PNode { point, name } => {
                let resolved = resolve_point(point, &env).map_err(|e| e.at_line(line))?;
                env.bind(name, resolved, line);
            }
            Command::PsLine { options, points } => {
                elements.push(resolve_element(
                    ElementKind::Polyline,
                    options.get("linewidth"),
                    points,
                    &env,
                    default_linewidth_cm,
                    line,
                )?);
            }
            Command::PsCCurve { options, points } => {
                elements.push(resolve_element(
                    ElementKind::ClosedCurve,
                    options.get("linewidth"),
                    points,
                    &env,
                    default_linewidth_cm,
                    line,
                )?);
            }
        }
    }
    let resolved = ResolvedPicture {
        bbox_lo: AbsPoint::new(picture.bbox_lo.0, picture.bbox_lo.1),
        bbox_hi: AbsPoint::new(picture.bbox_hi.0, picture.bbox_hi.1),
        elements,
        unit_cm,
    };
    Ok((resolved, env))
}

fn resolve_element(
    kind: ElementKind,
    linewidth: Option<&str>,
    points: &[PointExpr],
    env: &NodeEnv,
    default_linewidth_cm: f64,
    line: usize,
) -> Result<ResolvedElement, ResolveError> {
    let linewidth_cm = match linewidth {
        Some(raw) => linewidth_cm(raw, line)?,
        None => default_linewidth_cm,
    };
    let points = points
        .iter()
        .map(|p| resolve_point(p, env).map_err(|e| e.at_line(line)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ResolvedElement { kind, points, linewidth_cm })
}

fn linewidth_cm(raw: &str, line: usize) -> Result<f64, ResolveError> {
    let dimension = parse_dimension(raw).map_err(|e| ResolveError::BadLinewidth {
        detail: e.to_string(),
        line: Some(line),
    })?;
    let cm = convert_dimension(dimension);
    if cm <= 0.0 {
        return Err(ResolveError::BadLinewidth {
            detail: format!("'{}' is not positive", raw),
            line: Some(line),
        });
    }
    Ok(cm)
}
