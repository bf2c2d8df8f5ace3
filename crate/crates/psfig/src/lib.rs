//! A parser and renderer for a small PSTricks figure language.
//!
//! The supported subset covers `pspicture` environments with declared
//! bounding boxes, straight polylines (`\psline`), named point nodes
//! (`\pnode`), smooth closed curves (`\psccurve`), `\psset` for the global
//! unit scale, and four point forms: Cartesian `(x,y)`, polar `(r;theta)`,
//! node references `(Name)` and angle/nodesep offsets
//! `([angle=a,nodesep=d]Name)`.
//!
//! The pipeline has four stages, each usable on its own:
//!
//! 1. [`parser`] turns source text into a [`DocumentTree`],
//! 2. [`resolve`] walks each picture and produces absolute geometry,
//! 3. [`spline`] fits closed interpolating curves as cubic Bézier chains,
//! 4. [`svg`] serializes pictures deterministically as SVG or JSON.
//!
//! [`process_document`] wires them together:
//!
//! ```
//! let source = r"
//! \begin{document}
//! \psset{unit=0.5cm}
//! \begin{pspicture}(-5,-5)(5,5)
//! \psline[linewidth=2pt](0,0)(5;90)
//! \psccurve(5;90)(4;210)(4;330)
//! \end{pspicture}
//! \end{document}";
//! let doc = psfig::process_document(source, psfig::ParseMode::Strict, 0.0).unwrap();
//! assert_eq!(doc.pictures.len(), 1);
//! assert_eq!(doc.pictures[0].resolved.elements.len(), 2);
//! let svg = psfig::emit_svg(
//!     &doc.pictures[0].resolved,
//!     &doc.pictures[0].chains,
//!     &psfig::SvgConfig::default(),
//! );
//! assert!(svg.starts_with("<?xml"));
//! ```

pub mod ast;
pub mod cli;
pub mod parser;
pub mod resolve;
pub mod spline;
pub mod svg;

pub use ast::{Command, Dimension, DocumentTree, OptionList, Picture, PointExpr, Spanned, Unit};
pub use parser::{
    parse_dimension, parse_document, parse_point, ParseError, ParseMode, ParsedDocument, Warning,
};
pub use resolve::{
    convert_dimension, resolve_picture, resolve_point, AbsPoint, ElementKind, NodeEnv,
    ResolveError, ResolvedElement, ResolvedPicture,
};
pub use spline::{closed_spline, sample_chain, BezierChain, BezierSegment, SplineError};
pub use svg::{emit_resolved_json, emit_svg, SvgConfig, DEFAULT_PX_PER_CM};

use thiserror::Error;

/// Any failure along the processing pipeline.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Resolve(#[from] ResolveError),
    #[error("picture {picture}: {source}")]
    Spline { picture: usize, source: SplineError },
}

/// One picture after resolution, with the Bézier expansion of each
/// closed-curve element (in element order) and the final node bindings.
#[derive(Clone, Debug)]
pub struct ProcessedPicture {
    pub resolved: ResolvedPicture,
    pub chains: Vec<BezierChain>,
    pub env: NodeEnv,
}

/// The full result of [`process_document`].
#[derive(Clone, Debug)]
pub struct ProcessedDocument {
    pub tree: DocumentTree,
    /// Centimeters per coordinate unit, from the document's `\psset`.
    pub unit_cm: f64,
    pub pictures: Vec<ProcessedPicture>,
    pub warnings: Vec<Warning>,
}

/// Parses, resolves and curve-fits a whole document.
///
/// `tension` in [0, 1) controls closed-curve tightness; 0 is the plain
/// interpolating spline.
pub fn process_document(
    source: &str,
    mode: ParseMode,
    tension: f64,
) -> Result<ProcessedDocument, Error> {
    let parsed = parse_document(source, mode)?;
    let unit_cm = convert_dimension(parsed.tree.unit);
    let mut pictures = Vec::with_capacity(parsed.tree.pictures.len());
    for (index, picture) in parsed.tree.pictures.iter().enumerate() {
        let (resolved, env) = resolve_picture(picture, unit_cm)?;
        let chains = resolved
            .elements
            .iter()
            .filter(|e| e.kind == ElementKind::ClosedCurve)
            .map(|e| closed_spline(&e.points, tension))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|source| Error::Spline { picture: index + 1, source })?;
        pictures.push(ProcessedPicture { resolved, chains, env });
    }
    Ok(ProcessedDocument {
        tree: parsed.tree,
        unit_cm,
        pictures,
        warnings: parsed.warnings,
    })
}
