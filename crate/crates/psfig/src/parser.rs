//! Recursive-descent parser for the PSTricks subset.
//!
//! The grammar is deliberately small: `\begin{document}`/`\end{document}`,
//! `pspicture` environments with a declared bounding box, `\psline`,
//! `\psccurve`, `\pnode`, `\psset` and `\newpage` between pictures. `%`
//! comments run to end of line and whitespace is insignificant between
//! tokens. Inside `(...)` the first character decides the point form: a
//! letter starts a node reference, `[` starts an angle/nodesep offset, and
//! anything else must be two numerals split by `,` (Cartesian) or `;`
//! (polar). A lone numeral is rejected.
//!
//! In strict mode an unknown command is an error; in lenient mode it is
//! recorded as a warning and skipped together with its bracket, brace and
//! paren argument groups. Unknown *option keys* only ever warn: options are
//! stylistic, commands are structural.

use crate::ast::{
    Command, Dimension, DocumentTree, OptionList, Picture, PointExpr, Spanned, Unit,
};
use thiserror::Error;

/// Syntax error with a 1-based source position and the offending text.
#[derive(Clone, Debug, PartialEq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Start of the offending line text, from `column` on (possibly empty).
    pub snippet: String,
}

/// Non-fatal diagnostic recorded while parsing.
#[derive(Clone, Debug, PartialEq)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseMode {
    /// Reject unknown commands.
    Strict,
    /// Skip unknown commands and stray text, recording warnings.
    Lenient,
}

/// Result of a successful parse: the tree plus any warnings.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedDocument {
    pub tree: DocumentTree,
    pub warnings: Vec<Warning>,
}

/// Failure to interpret a raw option value as a TeX dimension.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum DimensionError {
    #[error("empty dimension")]
    Empty,
    #[error("missing unit tag")]
    MissingUnit,
    #[error("unknown unit tag '{0}'")]
    UnknownUnit(String),
    #[error("invalid number '{0}'")]
    InvalidNumber(String),
    #[error("dimension value is not finite")]
    NonFinite,
}

/// Parses `<real><unit_tag>` where the tag is one of `cm`, `mm`, `pt`, `in`.
pub fn parse_dimension(raw: &str) -> Result<Dimension, DimensionError> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Err(DimensionError::Empty);
    }
    let split = raw
        .char_indices()
        .find(|(_, c)| !matches!(c, '0'..='9' | '.' | '+' | '-'))
        .map(|(i, _)| i)
        .unwrap_or(raw.len());
    let (number, tag) = raw.split_at(split);
    if tag.is_empty() {
        return Err(DimensionError::MissingUnit);
    }
    let value: f64 = number
        .parse()
        .map_err(|_| DimensionError::InvalidNumber(number.to_string()))?;
    if !value.is_finite() {
        return Err(DimensionError::NonFinite);
    }
    let unit = match tag.trim() {
        "cm" => Unit::Cm,
        "mm" => Unit::Mm,
        "pt" => Unit::Pt,
        "in" => Unit::In,
        other => return Err(DimensionError::UnknownUnit(other.to_string())),
    };
    Ok(Dimension::new(value, unit))
}

/// Parses one complete point expression, e.g. `(6;330)` or
/// `([angle=30,nodesep=6]V)`. Trailing input is an error.
pub fn parse_point(input: &str) -> Result<PointExpr, ParseError> {
    let mut parser = Parser::new(input, ParseMode::Strict);
    parser.cursor.skip_trivia();
    let point = parser.parse_point_expr()?;
    parser.cursor.skip_trivia();
    if !parser.cursor.at_eof() {
        return Err(parser.cursor.error_here("trailing input after point"));
    }
    Ok(point)
}

/// Parses a whole document in the given mode.
///
/// Commands and pictures come back in source order. Preamble before
/// `\begin{document}` is skipped with warnings in both modes; everything
/// after `\end{document}` is ignored.
pub fn parse_document(input: &str, mode: ParseMode) -> Result<ParsedDocument, ParseError> {
    Parser::new(input, mode).parse_document()
}

// Option keys each command understands; anything else warns.
const DRAW_KEYS: [&str; 1] = ["linewidth"];
const PSSET_KEYS: [&str; 2] = ["unit", "linewidth"];

struct Cursor<'a> {
    lines: Vec<&'a str>,
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            lines: src.lines().collect(),
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn at_eof(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn position(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    /// Skips whitespace and `%` comments (to end of line).
    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn expect_char(&mut self, expected: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == expected => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error_here(format!("expected '{}', found '{}'", expected, c))),
            None => Err(self.error_here(format!("expected '{}', found end of input", expected))),
        }
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.position();
        self.error_at(line, col, message)
    }

    /// Builds an error, clamping positions past the end of input back onto
    /// the last line so they always point into the source.
    fn error_at(&self, line: usize, col: usize, message: impl Into<String>) -> ParseError {
        let (line, col) = if self.lines.is_empty() {
            (1, 1)
        } else if line > self.lines.len() {
            let last = self.lines.len();
            (last, self.lines[last - 1].chars().count() + 1)
        } else {
            (line, col)
        };
        let snippet = self
            .lines
            .get(line - 1)
            .map(|l| l.chars().skip(col - 1).take(40).collect())
            .unwrap_or_default();
        ParseError {
            line,
            column: col,
            message: message.into(),
            snippet,
        }
    }
}

struct Parser<'a> {
    cursor: Cursor<'a>,
    mode: ParseMode,
    warnings: Vec<Warning>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, mode: ParseMode) -> Self {
        Parser {
            cursor: Cursor::new(src),
            mode,
            warnings: Vec::new(),
        }
    }

    fn warn(&mut self, line: usize, message: impl Into<String>) {
        self.warnings.push(Warning {
            line,
            message: message.into(),
        });
    }

    fn parse_document(mut self) -> Result<ParsedDocument, ParseError> {
        self.skip_preamble()?;
        let mut tree = DocumentTree::empty();
        loop {
            self.cursor.skip_trivia();
            if self.cursor.at_eof() {
                return Err(self.cursor.error_here("missing \\end{document}"));
            }
            if self.cursor.peek() == Some('\\') {
                let (name, line, col) = self.read_command_name()?;
                match name.as_str() {
                    "end" => {
                        let env = self.read_brace_ident()?;
                        if env == "document" {
                            break;
                        }
                        return Err(self.cursor.error_at(
                            line,
                            col,
                            format!("unbalanced \\end{{{}}} outside any environment", env),
                        ));
                    }
                    "begin" => {
                        let env = self.read_brace_ident()?;
                        if env == "pspicture" {
                            let picture = self.parse_picture(line, col)?;
                            tree.pictures.push(picture);
                        } else if self.mode == ParseMode::Strict {
                            return Err(self.cursor.error_at(
                                line,
                                col,
                                format!("unknown environment '{}'", env),
                            ));
                        } else {
                            self.warn(line, format!("skipped unknown environment '{}'", env));
                        }
                    }
                    "psset" => self.apply_document_psset(&mut tree, line)?,
                    "newpage" => {
                        // picture separator; nothing to record
                    }
                    other => self.handle_unknown_command(other, line, col)?,
                }
            } else {
                self.handle_stray_text()?;
            }
        }
        // Anything after \end{document} is ignored, as TeX would.
        Ok(ParsedDocument {
            tree,
            warnings: self.warnings,
        })
    }

    /// Consumes everything up to and including `\begin{document}`.
    /// Preamble commands are skipped with a warning in both modes.
    fn skip_preamble(&mut self) -> Result<(), ParseError> {
        loop {
            self.cursor.skip_trivia();
            match self.cursor.peek() {
                None => return Err(self.cursor.error_here("missing \\begin{document}")),
                Some('\\') => {
                    let (name, line, _col) = self.read_command_name()?;
                    if name == "begin" {
                        let env = self.read_brace_ident()?;
                        if env == "document" {
                            return Ok(());
                        }
                        self.warn(line, format!("preamble environment '{}' ignored", env));
                    } else {
                        self.warn(line, format!("preamble command '\\{}' ignored", name));
                        self.skip_argument_groups()?;
                    }
                }
                Some(_) => {
                    // Stray preamble text carries no meaning for us.
                    self.cursor.bump();
                }
            }
        }
    }

    fn parse_picture(&mut self, begin_line: usize, begin_col: usize) -> Result<Picture, ParseError> {
        self.cursor.skip_trivia();
        let (bbox_line, bbox_col) = self.cursor.position();
        let bbox_lo = self.parse_bbox_corner()?;
        self.cursor.skip_trivia();
        let bbox_hi = self.parse_bbox_corner()?;
        if !(bbox_lo.0 < bbox_hi.0 && bbox_lo.1 < bbox_hi.1) {
            return Err(self.cursor.error_at(
                bbox_line,
                bbox_col,
                "invalid bounding box: lower corner must be strictly below and left of upper corner",
            ));
        }
        let mut commands = Vec::new();
        loop {
            self.cursor.skip_trivia();
            if self.cursor.at_eof() {
                return Err(self.cursor.error_at(
                    begin_line,
                    begin_col,
                    "unbalanced environment: missing \\end{pspicture}",
                ));
            }
            if self.cursor.peek() != Some('\\') {
                self.handle_stray_text()?;
                continue;
            }
            let (name, line, col) = self.read_command_name()?;
            match name.as_str() {
                "end" => {
                    let env = self.read_brace_ident()?;
                    if env == "pspicture" {
                        break;
                    }
                    return Err(self.cursor.error_at(
                        line,
                        col,
                        format!("unbalanced \\end{{{}}} inside pspicture", env),
                    ));
                }
                "begin" => {
                    let env = self.read_brace_ident()?;
                    if self.mode == ParseMode::Strict {
                        return Err(self.cursor.error_at(
                            line,
                            col,
                            format!("nested environment '{}' inside pspicture", env),
                        ));
                    }
                    self.warn(line, format!("skipped nested environment '{}'", env));
                }
                "newpage" => {
                    return Err(self.cursor.error_at(
                        line,
                        col,
                        "\\newpage is not allowed inside pspicture",
                    ));
                }
                "psline" => {
                    let command = self.parse_draw_command("psline", 2, line, col)?;
                    commands.push(Spanned::new(command, line));
                }
                "psccurve" => {
                    let command = self.parse_draw_command("psccurve", 3, line, col)?;
                    commands.push(Spanned::new(command, line));
                }
                "pnode" => {
                    self.cursor.skip_trivia();
                    let point = self.parse_point_expr()?;
                    self.cursor.skip_trivia();
                    let name = self.read_brace_ident()?;
                    commands.push(Spanned::new(Command::PNode { point, name }, line));
                }
                "psset" => {
                    self.cursor.skip_trivia();
                    let options = self.parse_option_group('{', '}')?;
                    for (key, _) in options.entries() {
                        if !PSSET_KEYS.contains(&key) {
                            self.warn(line, format!("unknown option '{}' in \\psset", key));
                        }
                    }
                    commands.push(Spanned::new(Command::PsSet { options }, line));
                }
                other => self.handle_unknown_command(other, line, col)?,
            }
        }
        Ok(Picture {
            bbox_lo,
            bbox_hi,
            commands,
        })
    }

    fn parse_bbox_corner(&mut self) -> Result<(f64, f64), ParseError> {
        let (line, col) = self.cursor.position();
        match self.parse_point_expr()? {
            PointExpr::Cartesian { x, y } => Ok((x, y)),
            other => Err(self.cursor.error_at(
                line,
                col,
                format!("picture bounding box corner must be Cartesian, found {}", other),
            )),
        }
    }

    fn parse_draw_command(
        &mut self,
        name: &str,
        min_points: usize,
        line: usize,
        col: usize,
    ) -> Result<Command, ParseError> {
        self.cursor.skip_trivia();
        let options = if self.cursor.peek() == Some('[') {
            let options = self.parse_option_group('[', ']')?;
            for (key, _) in options.entries() {
                if !DRAW_KEYS.contains(&key) {
                    self.warn(line, format!("unknown option '{}' on \\{} (ignored)", key, name));
                }
            }
            options
        } else {
            OptionList::new()
        };
        let mut points = Vec::new();
        loop {
            self.cursor.skip_trivia();
            if self.cursor.peek() == Some('(') {
                points.push(self.parse_point_expr()?);
            } else {
                break;
            }
        }
        if points.len() < min_points {
            return Err(self.cursor.error_at(
                line,
                col,
                format!(
                    "\\{} requires at least {} points, found {}",
                    name,
                    min_points,
                    points.len()
                ),
            ));
        }
        Ok(match name {
            "psline" => Command::PsLine { options, points },
            _ => Command::PsCCurve { options, points },
        })
    }

    /// Point grammar, positioned at `(`: a leading letter means node
    /// reference, `[` means offset, otherwise two numerals split by `,`
    /// or `;`.
    fn parse_point_expr(&mut self) -> Result<PointExpr, ParseError> {
        self.cursor.expect_char('(')?;
        self.cursor.skip_trivia();
        match self.cursor.peek() {
            None => Err(self.cursor.error_here("unclosed point: expected ')'")),
            Some('[') => {
                let (line, col) = self.cursor.position();
                let options = self.parse_option_group('[', ']')?;
                let angle = self.offset_component(&options, "angle", line, col)?;
                let nodesep = self.offset_component(&options, "nodesep", line, col)?;
                if options.len() != 2 {
                    return Err(self.cursor.error_at(
                        line,
                        col,
                        "offset point accepts exactly the keys 'angle' and 'nodesep'",
                    ));
                }
                self.cursor.skip_trivia();
                let base = self.read_ident()?;
                self.cursor.skip_trivia();
                self.cursor.expect_char(')')?;
                Ok(PointExpr::Offset { angle, nodesep, base })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.read_ident()?;
                self.cursor.skip_trivia();
                self.cursor.expect_char(')')?;
                Ok(PointExpr::NodeRef { name })
            }
            Some(_) => {
                let first = self.read_number()?;
                self.cursor.skip_trivia();
                match self.cursor.peek() {
                    Some(',') => {
                        self.cursor.bump();
                        self.cursor.skip_trivia();
                        let second = self.read_number()?;
                        self.cursor.skip_trivia();
                        self.cursor.expect_char(')')?;
                        Ok(PointExpr::Cartesian { x: first, y: second })
                    }
                    Some(';') => {
                        self.cursor.bump();
                        self.cursor.skip_trivia();
                        let second = self.read_number()?;
                        self.cursor.skip_trivia();
                        self.cursor.expect_char(')')?;
                        Ok(PointExpr::Polar { r: first, theta: second })
                    }
                    Some(')') => Err(self
                        .cursor
                        .error_here("bare number is not a node name; expected ',' or ';'")),
                    Some(c) => Err(self
                        .cursor
                        .error_here(format!("expected ',', ';' or ')', found '{}'", c))),
                    None => Err(self.cursor.error_here("unclosed point: expected ')'")),
                }
            }
        }
    }

    fn offset_component(
        &self,
        options: &OptionList,
        key: &str,
        line: usize,
        col: usize,
    ) -> Result<f64, ParseError> {
        let raw = options.get(key).ok_or_else(|| {
            self.cursor
                .error_at(line, col, format!("offset point requires key '{}'", key))
        })?;
        let value: f64 = raw.parse().map_err(|_| {
            self.cursor.error_at(
                line,
                col,
                format!("non-numeric value '{}' for offset key '{}'", raw, key),
            )
        })?;
        if !value.is_finite() {
            return Err(self.cursor.error_at(
                line,
                col,
                format!("value for offset key '{}' is not finite", key),
            ));
        }
        Ok(value)
    }

    /// `[k=v,...]` or `{k=v,...}`; keys unique, values raw text.
    fn parse_option_group(&mut self, open: char, close: char) -> Result<OptionList, ParseError> {
        self.cursor.expect_char(open)?;
        let mut options = OptionList::new();
        self.cursor.skip_trivia();
        if self.cursor.peek() == Some(close) {
            self.cursor.bump();
            return Ok(options);
        }
        loop {
            self.cursor.skip_trivia();
            let (key_line, key_col) = self.cursor.position();
            let key = self.read_ident()?;
            self.cursor.skip_trivia();
            self.cursor.expect_char('=')?;
            let mut value = String::new();
            loop {
                match self.cursor.peek() {
                    None => {
                        return Err(self
                            .cursor
                            .error_here(format!("unclosed option list: expected '{}'", close)))
                    }
                    Some(c) if c == ',' || c == close => break,
                    Some(_) => value.push(self.cursor.bump().unwrap()),
                }
            }
            if options.push(key, value.trim().to_string()).is_err() {
                return Err(self.cursor.error_at(
                    key_line,
                    key_col,
                    "duplicate option key in one list",
                ));
            }
            if self.cursor.peek() == Some(',') {
                self.cursor.bump();
            } else {
                self.cursor.expect_char(close)?;
                break;
            }
        }
        Ok(options)
    }

    /// Document-level `\psset`: `unit` takes effect on the tree, every
    /// other key is warned about and dropped.
    fn apply_document_psset(
        &mut self,
        tree: &mut DocumentTree,
        line: usize,
    ) -> Result<(), ParseError> {
        self.cursor.skip_trivia();
        let (group_line, group_col) = self.cursor.position();
        let options = self.parse_option_group('{', '}')?;
        for (key, value) in options.entries() {
            match key {
                "unit" => {
                    let dimension = parse_dimension(value).map_err(|e| {
                        self.cursor
                            .error_at(group_line, group_col, format!("invalid unit: {}", e))
                    })?;
                    if dimension.value <= 0.0 {
                        return Err(self.cursor.error_at(
                            group_line,
                            group_col,
                            "unit must be positive",
                        ));
                    }
                    if !tree.pictures.is_empty() {
                        self.warn(
                            line,
                            "unit set after a picture; the last value applies to all pictures",
                        );
                    }
                    tree.unit = dimension;
                }
                other => {
                    self.warn(
                        line,
                        format!("option '{}' has no effect at document level", other),
                    );
                }
            }
        }
        Ok(())
    }

    fn handle_unknown_command(
        &mut self,
        name: &str,
        line: usize,
        col: usize,
    ) -> Result<(), ParseError> {
        if self.mode == ParseMode::Strict {
            return Err(self
                .cursor
                .error_at(line, col, format!("unknown command '\\{}'", name)));
        }
        self.warn(line, format!("skipped unknown command '\\{}'", name));
        self.skip_argument_groups()
    }

    fn handle_stray_text(&mut self) -> Result<(), ParseError> {
        let (line, col) = self.cursor.position();
        if self.mode == ParseMode::Strict {
            let c = self.cursor.peek().unwrap_or(' ');
            return Err(self
                .cursor
                .error_at(line, col, format!("unexpected text starting with '{}'", c)));
        }
        let mut skipped = String::new();
        while let Some(c) = self.cursor.peek() {
            if c.is_whitespace() || c == '\\' || c == '%' {
                break;
            }
            skipped.push(self.cursor.bump().unwrap());
        }
        self.warn(line, format!("ignored text '{}'", skipped));
        Ok(())
    }

    /// After an unknown command, consumes its immediate `[...]`, `{...}`
    /// and `(...)` argument groups so lenient parsing can resume cleanly.
    fn skip_argument_groups(&mut self) -> Result<(), ParseError> {
        loop {
            self.cursor.skip_trivia();
            let (open, close) = match self.cursor.peek() {
                Some('[') => ('[', ']'),
                Some('{') => ('{', '}'),
                Some('(') => ('(', ')'),
                _ => return Ok(()),
            };
            let mut depth = 0usize;
            loop {
                match self.cursor.bump() {
                    None => {
                        return Err(self
                            .cursor
                            .error_here(format!("unclosed '{}' group", open)))
                    }
                    Some(c) if c == open => depth += 1,
                    Some(c) if c == close => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    Some(_) => {}
                }
            }
        }
    }

    /// Reads `\name`, returning the name and the backslash position.
    fn read_command_name(&mut self) -> Result<(String, usize, usize), ParseError> {
        let (line, col) = self.cursor.position();
        self.cursor.expect_char('\\')?;
        let mut name = String::new();
        while let Some(c) = self.cursor.peek() {
            if c.is_ascii_alphabetic() {
                name.push(c);
                self.cursor.bump();
            } else {
                break;
            }
        }
        if name.is_empty() {
            return Err(self
                .cursor
                .error_at(line, col, "expected command name after '\\'"));
        }
        Ok((name, line, col))
    }

    /// `[A-Za-z][A-Za-z0-9]*`
    fn read_ident(&mut self) -> Result<String, ParseError> {
        match self.cursor.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => {
                return Err(self
                    .cursor
                    .error_here(format!("expected identifier, found '{}'", c)))
            }
            None => {
                return Err(self
                    .cursor
                    .error_here("expected identifier, found end of input"))
            }
        }
        let mut ident = String::new();
        while let Some(c) = self.cursor.peek() {
            if c.is_ascii_alphanumeric() {
                ident.push(c);
                self.cursor.bump();
            } else {
                break;
            }
        }
        Ok(ident)
    }

    fn read_brace_ident(&mut self) -> Result<String, ParseError> {
        self.cursor.skip_trivia();
        self.cursor.expect_char('{')?;
        self.cursor.skip_trivia();
        let ident = self.read_ident()?;
        self.cursor.skip_trivia();
        self.cursor.expect_char('}')?;
        Ok(ident)
    }

    /// Numeral: optional sign, decimal point allowed, no exponent form.
    fn read_number(&mut self) -> Result<f64, ParseError> {
        let (line, col) = self.cursor.position();
        let mut text = String::new();
        if matches!(self.cursor.peek(), Some('+') | Some('-')) {
            text.push(self.cursor.bump().unwrap());
        }
        let mut digits = 0;
        let mut seen_dot = false;
        while let Some(c) = self.cursor.peek() {
            match c {
                '0'..='9' => {
                    digits += 1;
                    text.push(self.cursor.bump().unwrap());
                }
                '.' if !seen_dot => {
                    seen_dot = true;
                    text.push(self.cursor.bump().unwrap());
                }
                _ => break,
            }
        }
        if digits == 0 {
            return Err(self.cursor.error_at(line, col, "expected number"));
        }
        let value: f64 = text
            .parse()
            .map_err(|_| self.cursor.error_at(line, col, format!("invalid number '{}'", text)))?;
        if !value.is_finite() {
            return Err(self.cursor.error_at(line, col, "number out of range"));
        }
        Ok(value)
    }
}
