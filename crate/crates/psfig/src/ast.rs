//! Abstract syntax tree for the supported PSTricks subset.
//!
//! Everything here is plain immutable data. The parser builds these values,
//! the resolver consumes them; no behavior beyond construction, accessors and
//! source-form pretty printing lives in this module.

use std::fmt;

/// TeX length units accepted in dimension literals like `0.5cm` or `2pt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    Cm,
    Mm,
    Pt,
    In,
}

impl Unit {
    pub fn tag(self) -> &'static str {
        match self {
            Unit::Cm => "cm",
            Unit::Mm => "mm",
            Unit::Pt => "pt",
            Unit::In => "in",
        }
    }
}

/// A physical length: a finite value paired with its unit tag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dimension {
    pub value: f64,
    pub unit: Unit,
}

impl Dimension {
    pub fn new(value: f64, unit: Unit) -> Self {
        debug_assert!(value.is_finite());
        Dimension { value, unit }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, self.unit.tag())
    }
}

/// An unresolved coordinate expression, exactly as written in the source.
///
/// Angles are degrees, radii and offsets are in user units; nothing is
/// evaluated until resolution.
#[derive(Clone, Debug, PartialEq)]
pub enum PointExpr {
    /// `(x,y)`
    Cartesian { x: f64, y: f64 },
    /// `(r;theta)`
    Polar { r: f64, theta: f64 },
    /// `(Name)` — reference to a previously bound node.
    NodeRef { name: String },
    /// `([angle=a,nodesep=d]Name)` — displacement from a bound node.
    Offset { angle: f64, nodesep: f64, base: String },
}

impl fmt::Display for PointExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointExpr::Cartesian { x, y } => write!(f, "({},{})", x, y),
            PointExpr::Polar { r, theta } => write!(f, "({};{})", r, theta),
            PointExpr::NodeRef { name } => write!(f, "({})", name),
            PointExpr::Offset { angle, nodesep, base } => {
                write!(f, "([angle={},nodesep={}]{})", angle, nodesep, base)
            }
        }
    }
}

/// Ordered `key=value` pairs from a `[...]` or `{...}` option group.
///
/// Values are kept as raw text; interpretation (dimensions, numbers) happens
/// in the modules that consume the keys. Keys are unique within one list.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OptionList {
    entries: Vec<(String, String)>,
}

impl OptionList {
    pub fn new() -> Self {
        OptionList::default()
    }

    /// Appends an entry. Fails if the key is already present.
    pub fn push(&mut self, key: String, value: String) -> Result<(), String> {
        if self.entries.iter().any(|(k, _)| *k == key) {
            return Err(key);
        }
        self.entries.push((key, value));
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

impl fmt::Display for OptionList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.entries {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{}={}", k, v)?;
            first = false;
        }
        Ok(())
    }
}

/// One drawing or state command inside a picture.
#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    /// `\psline[opts](p1)(p2)...` — straight polyline, at least 2 points.
    PsLine { options: OptionList, points: Vec<PointExpr> },
    /// `\psccurve[opts](p1)(p2)(p3)...` — smooth closed curve, at least 3 points.
    PsCCurve { options: OptionList, points: Vec<PointExpr> },
    /// `\pnode(p){Name}` — binds a name to a resolved point.
    PNode { point: PointExpr, name: String },
    /// `\psset{k=v,...}` — picture-scoped settings.
    PsSet { options: OptionList },
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::PsLine { options, points } => {
                f.write_str("\\psline")?;
                if !options.is_empty() {
                    write!(f, "[{}]", options)?;
                }
                for p in points {
                    write!(f, "{}", p)?;
                }
                Ok(())
            }
            Command::PsCCurve { options, points } => {
                f.write_str("\\psccurve")?;
                if !options.is_empty() {
                    write!(f, "[{}]", options)?;
                }
                for p in points {
                    write!(f, "{}", p)?;
                }
                Ok(())
            }
            Command::PNode { point, name } => write!(f, "\\pnode{}{{{}}}", point, name),
            Command::PsSet { options } => write!(f, "\\psset{{{}}}", options),
        }
    }
}

/// A node paired with the 1-based source line it started on.
#[derive(Clone, Debug, PartialEq)]
pub struct Spanned<T> {
    pub node: T,
    pub line: usize,
}

impl<T> Spanned<T> {
    pub fn new(node: T, line: usize) -> Self {
        Spanned { node, line }
    }
}

/// One `pspicture` environment: declared bounding box plus its commands in
/// source order.
#[derive(Clone, Debug, PartialEq)]
pub struct Picture {
    /// Lower-left corner of the declared bounding box, in units.
    pub bbox_lo: (f64, f64),
    /// Upper-right corner, strictly above and right of `bbox_lo`.
    pub bbox_hi: (f64, f64),
    pub commands: Vec<Spanned<Command>>,
}

/// A parsed document: the effective global unit and the pictures in source
/// order.
#[derive(Clone, Debug, PartialEq)]
pub struct DocumentTree {
    /// Physical length of one coordinate unit, from `\psset{unit=...}`.
    pub unit: Dimension,
    pub pictures: Vec<Picture>,
}

impl DocumentTree {
    pub fn empty() -> Self {
        DocumentTree {
            unit: Dimension::new(1.0, Unit::Cm),
            pictures: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn option_list_rejects_duplicate_key() {
        let mut opts = OptionList::new();
        opts.push("angle".into(), "30".into()).unwrap();
        assert_eq!(opts.push("angle".into(), "45".into()), Err("angle".into()));
        assert_eq!(opts.get("angle"), Some("30"));
    }

    #[test]
    fn option_list_preserves_order() {
        let mut opts = OptionList::new();
        opts.push("nodesep".into(), "6".into()).unwrap();
        opts.push("angle".into(), "30".into()).unwrap();
        let keys: Vec<_> = opts.entries().map(|(k, _)| k).collect();
        assert_eq!(keys, ["nodesep", "angle"]);
    }

    #[test]
    fn display_matches_source_forms() {
        assert_eq!(
            PointExpr::Polar { r: 6.0, theta: 330.0 }.to_string(),
            "(6;330)"
        );
        assert_eq!(
            PointExpr::Cartesian { x: 0.0, y: 0.0 }.to_string(),
            "(0,0)"
        );
        assert_eq!(
            PointExpr::Offset { angle: 30.0, nodesep: 6.0, base: "V".into() }.to_string(),
            "([angle=30,nodesep=6]V)"
        );
        let node = Command::PNode {
            point: PointExpr::Polar { r: 7.5, theta: 90.0 },
            name: "A".into(),
        };
        assert_eq!(node.to_string(), "\\pnode(7.5;90){A}");
    }
}
