//! Deterministic SVG and JSON serialization of resolved pictures.
//!
//! The declared bounding box (optionally grown by a margin) becomes the
//! viewport; geometry is mapped to pixels by `unit_cm * px_per_cm` and the
//! y axis is flipped exactly once, by negation during serialization —
//! never with a transform attribute. All numbers are fixed-point with a
//! configurable number of decimals, `-0` normalized to `0`, so identical
//! inputs yield byte-identical output on every platform. Content outside
//! the bounding box is kept; overflow stays visible.

use crate::resolve::{AbsPoint, ElementKind, ResolvedPicture};
use crate::spline::BezierChain;
use std::fmt::Write;

/// CSS pixels per centimeter at the usual 96 dpi.
pub const DEFAULT_PX_PER_CM: f64 = 96.0 / 2.54;

#[derive(Clone, Copy, Debug)]
pub struct SvgConfig {
    /// Decimal places for every emitted coordinate, in [1, 12].
    pub precision: usize,
    /// Extra viewport space around the declared bounding box, in units.
    pub margin_units: f64,
    pub px_per_cm: f64,
}

impl Default for SvgConfig {
    fn default() -> Self {
        SvgConfig {
            precision: 4,
            margin_units: 0.0,
            px_per_cm: DEFAULT_PX_PER_CM,
        }
    }
}

/// Fixed-point formatting with `-0` normalized to `0` and no
/// trailing-zero stripping.
fn fmt_fixed(value: f64, precision: usize) -> String {
    let s = format!("{:.*}", precision, value);
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Decimal formatting with 12 significant digits, trailing zeros trimmed
/// down to at least one decimal place.
fn fmt_sig12(value: f64) -> String {
    if value == 0.0 {
        return "0.0".to_string();
    }
    let exponent = value.abs().log10().floor() as i32;
    let decimals = 11 - exponent;
    let s = if decimals >= 1 {
        format!("{:.*}", decimals as usize, value)
    } else {
        let factor = 10f64.powi(-decimals);
        format!("{:.1}", (value / factor).round() * factor)
    };
    let trimmed = s.trim_end_matches('0');
    let s = if trimmed.ends_with('.') {
        format!("{}0", trimmed)
    } else {
        trimmed.to_string()
    };
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Serializes one picture as a standalone SVG document.
///
/// `chains` holds the Bézier expansion of each closed-curve element, in
/// element order. Polylines become `M … L …` paths, closed curves become
/// `M … C … Z`; elements keep their resolved order.
pub fn emit_svg(picture: &ResolvedPicture, chains: &[BezierChain], config: &SvgConfig) -> String {
    let curve_count = picture
        .elements
        .iter()
        .filter(|e| e.kind == ElementKind::ClosedCurve)
        .count();
    assert_eq!(
        chains.len(),
        curve_count,
        "one Bézier chain is required per closed-curve element"
    );
    assert!((1..=12).contains(&config.precision));
    assert!(config.margin_units >= 0.0 && config.px_per_cm > 0.0);

    let prec = config.precision;
    let scale = picture.unit_cm * config.px_per_cm;
    let min_x = picture.bbox_lo.x - config.margin_units;
    let max_y = picture.bbox_hi.y + config.margin_units;
    let width = (picture.bbox_hi.x - picture.bbox_lo.x + 2.0 * config.margin_units) * scale;
    let height = (picture.bbox_hi.y - picture.bbox_lo.y + 2.0 * config.margin_units) * scale;
    // +y up in unit space, +y down in the image: negate once, right here.
    let map = |p: AbsPoint| ((p.x - min_x) * scale, (max_y - p.y) * scale);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" overflow=\"visible\">",
        w = fmt_fixed(width, prec),
        h = fmt_fixed(height, prec),
    );
    let mut next_chain = chains.iter();
    for element in &picture.elements {
        let mut data = String::new();
        match element.kind {
            ElementKind::Polyline => {
                for (i, &point) in element.points.iter().enumerate() {
                    let (x, y) = map(point);
                    let verb = if i == 0 { "M" } else { " L" };
                    let _ = write!(data, "{} {} {}", verb, fmt_fixed(x, prec), fmt_fixed(y, prec));
                }
            }
            ElementKind::ClosedCurve => {
                let chain = next_chain.next().unwrap();
                let (x0, y0) = map(chain.segments()[0].p0);
                let _ = write!(data, "M {} {}", fmt_fixed(x0, prec), fmt_fixed(y0, prec));
                for segment in chain.segments() {
                    let (c1x, c1y) = map(segment.c1);
                    let (c2x, c2y) = map(segment.c2);
                    let (x, y) = map(segment.p3);
                    let _ = write!(
                        data,
                        " C {} {} {} {} {} {}",
                        fmt_fixed(c1x, prec),
                        fmt_fixed(c1y, prec),
                        fmt_fixed(c2x, prec),
                        fmt_fixed(c2y, prec),
                        fmt_fixed(x, prec),
                        fmt_fixed(y, prec),
                    );
                }
                data.push_str(" Z");
            }
        }
        let _ = writeln!(
            out,
            "<path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>",
            data,
            fmt_fixed(element.linewidth_cm * config.px_per_cm, prec),
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Serializes resolved geometry as one JSON document, for diagnostics and
/// machine consumption.
///
/// Key order is fixed, numbers carry 12 significant digits and `beziers`
/// appears only on closed curves, so the output is byte-stable.
pub fn emit_resolved_json(
    unit_cm: f64,
    pictures: &[(&ResolvedPicture, &[BezierChain])],
) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"unit_cm\":{},\"pictures\":[", fmt_sig12(unit_cm));
    for (p_index, (picture, chains)) in pictures.iter().enumerate() {
        if p_index > 0 {
            out.push(',');
        }
        let _ = write!(
            out,
            "{{\"bbox\":[[{},{}],[{},{}]],\"elements\":[",
            fmt_sig12(picture.bbox_lo.x),
            fmt_sig12(picture.bbox_lo.y),
            fmt_sig12(picture.bbox_hi.x),
            fmt_sig12(picture.bbox_hi.y),
        );
        let mut next_chain = chains.iter();
        for (e_index, element) in picture.elements.iter().enumerate() {
            if e_index > 0 {
                out.push(',');
            }
            let kind = match element.kind {
                ElementKind::Polyline => "polyline",
                ElementKind::ClosedCurve => "closed_curve",
            };
            let _ = write!(
                out,
                "{{\"kind\":\"{}\",\"linewidth_cm\":{},\"points\":[",
                kind,
                fmt_sig12(element.linewidth_cm),
            );
            for (i, point) in element.points.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "[{},{}]", fmt_sig12(point.x), fmt_sig12(point.y));
            }
            out.push(']');
            if element.kind == ElementKind::ClosedCurve {
                let chain = next_chain.next().expect("chain per closed curve");
                out.push_str(",\"beziers\":[");
                for (i, segment) in chain.segments().iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    let _ = write!(
                        out,
                        "[[{},{}],[{},{}],[{},{}],[{},{}]]",
                        fmt_sig12(segment.p0.x),
                        fmt_sig12(segment.p0.y),
                        fmt_sig12(segment.c1.x),
                        fmt_sig12(segment.c1.y),
                        fmt_sig12(segment.c2.x),
                        fmt_sig12(segment.c2.y),
                        fmt_sig12(segment.p3.x),
                        fmt_sig12(segment.p3.y),
                    );
                }
                out.push(']');
            }
            out.push('}');
        }
        out.push_str("]}");
    }
    out.push_str("]}\n");
    out
}
