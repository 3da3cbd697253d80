//! Text and JSON serialization of subsystem codes.
//!
//! The text format is
//!
//! ```text
//! n=3
//! layout: 1 3
//! 0 0 0 0
//! 1 0 2 0
//! 2 0 1 0
//! gauge:
//! X0 X2
//! X1 X2
//! Z2
//! ```
//!
//! The `layout:` block is optional. Its header may carry the grid extents;
//! without them the grid is the bounding box of the sites. Blank lines and
//! `#` comments are ignored.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::{Layout, Site};
use crate::pauli::PauliOp;
use crate::subsystem::SubsystemCode;

pub fn write_text(code: &SubsystemCode) -> String {
    let mut out = format!("n={}\n", code.num_qubits());
    if let Some(layout) = code.layout() {
        writeln!(out, "layout: {} {}", layout.rows(), layout.cols()).unwrap();
        for (q, s) in layout.sites().iter().enumerate() {
            writeln!(out, "{q} {} {} {}", s.row, s.col, s.layer).unwrap();
        }
    }
    out.push_str("gauge:\n");
    for g in code.generators() {
        writeln!(out, "{g}").unwrap();
    }
    out
}

enum Block {
    Header,
    Layout,
    Gauge,
}

pub fn parse_text(text: &str) -> Result<SubsystemCode> {
    let mut n: Option<usize> = None;
    let mut extents: Option<(usize, usize)> = None;
    let mut sites: Vec<Option<Site>> = Vec::new();
    let mut has_layout = false;
    let mut generators = Vec::new();
    let mut block = Block::Header;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("layout:") {
            let n = n.ok_or_else(|| Error::parse(line_no, "layout before n="))?;
            let dims: Vec<&str> = rest.split_whitespace().collect();
            extents = match dims.as_slice() {
                [] => None,
                [r, c] => Some((number(r, line_no)?, number(c, line_no)?)),
                _ => return Err(Error::parse(line_no, "layout header takes zero or two extents")),
            };
            sites = vec![None; n];
            has_layout = true;
            block = Block::Layout;
            continue;
        }
        if line == "gauge:" {
            if n.is_none() {
                return Err(Error::parse(line_no, "gauge before n="));
            }
            block = Block::Gauge;
            continue;
        }
        match block {
            Block::Header => {
                let value = line
                    .strip_prefix("n=")
                    .ok_or_else(|| Error::parse(line_no, format!("expected n=<int>, found {line:?}")))?;
                n = Some(number(value.trim(), line_no)?);
            }
            Block::Layout => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                let [q, r, c, l] = fields.as_slice() else {
                    return Err(Error::parse(line_no, "layout lines are <qubit> <row> <col> <layer>"));
                };
                let q = number(q, line_no)?;
                let layer = number(l, line_no)?;
                if layer > 1 {
                    return Err(Error::parse(line_no, format!("layer {layer} is not 0 or 1")));
                }
                let slot = sites
                    .get_mut(q)
                    .ok_or_else(|| Error::parse(line_no, format!("qubit {q} out of range")))?;
                if slot.is_some() {
                    return Err(Error::parse(line_no, format!("qubit {q} placed twice")));
                }
                *slot = Some(Site::new(number(r, line_no)?, number(c, line_no)?, layer as u8));
            }
            Block::Gauge => {
                let p = PauliOp::parse(line, n.unwrap()).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::parse(line_no, message),
                    Error::IndexOutOfRange { index, len } => {
                        Error::parse(line_no, format!("qubit {index} out of range for n={len}"))
                    }
                    other => other,
                })?;
                generators.push(p);
            }
        }
    }

    let n = n.ok_or_else(|| Error::parse(0, "missing n=<int>"))?;
    let layout = if has_layout {
        let sites = sites
            .into_iter()
            .enumerate()
            .map(|(q, s)| s.ok_or_else(|| Error::parse(0, format!("qubit {q} has no layout entry"))))
            .collect::<Result<Vec<_>>>()?;
        Some(match extents {
            Some((rows, cols)) => Layout::new(rows, cols, sites)?,
            None => Layout::fitted(sites)?,
        })
    } else {
        None
    };
    SubsystemCode::derive(n, generators, layout)
}

fn number(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::parse(line, format!("expected an integer, found {s:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub rows: usize,
    pub cols: usize,
    pub sites: Vec<Site>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derived {
    pub dim_s: usize,
    pub k: usize,
    pub g: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub distance: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub n: usize,
    pub layout: Option<LayoutJson>,
    pub gauge_generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub derived: Option<Derived>,
}

impl CodeJson {
    pub fn from_code(code: &SubsystemCode, distance: Option<usize>) -> Self {
        CodeJson {
            n: code.num_qubits(),
            layout: code.layout().map(|l| LayoutJson {
                rows: l.rows(),
                cols: l.cols(),
                sites: l.sites().to_vec(),
            }),
            gauge_generators: code.generators().iter().map(|g| g.to_string()).collect(),
            derived: Some(Derived {
                dim_s: code.stabilizer().dim(),
                k: code.logical_qubits(),
                g: code.gauge_qubits(),
                distance,
            }),
        }
    }

    /// Rebuilds the code; any stored `derived` block is ignored.
    pub fn to_code(&self) -> Result<SubsystemCode> {
        let generators = self
            .gauge_generators
            .iter()
            .map(|s| PauliOp::parse(s, self.n))
            .collect::<Result<Vec<_>>>()?;
        let layout = self
            .layout
            .as_ref()
            .map(|l| Layout::new(l.rows, l.cols, l.sites.clone()))
            .transpose()?;
        SubsystemCode::derive(self.n, generators, layout)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbs::GbsCode;
    use crate::gf2::BitMatrix;
    use crate::localize::{localize, pad_full};

    #[test]
    fn text_round_trip() {
        let gbs = GbsCode::build(&BitMatrix::from_rows_u8(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap();
        let local = pad_full(&localize(&gbs).unwrap()).unwrap();
        for code in [gbs.code(), local.code()] {
            let text = write_text(code);
            let back = parse_text(&text).unwrap();
            assert_eq!(back.generators(), code.generators());
            assert_eq!(back.layout(), code.layout());
            assert_eq!(back.logical_qubits(), code.logical_qubits());
        }
    }

    #[test]
    fn parse_without_layout_or_extents() {
        let code = parse_text("# comment\nn=2\ngauge:\nZ0 Z1\n").unwrap();
        assert!(code.layout().is_none());
        assert_eq!(code.logical_qubits(), 1);
        let code = parse_text("n=2\nlayout:\n0 0 0 0\n1 0 1 0\ngauge:\nX0 X1\n").unwrap();
        assert_eq!((code.layout().unwrap().rows(), code.layout().unwrap().cols()), (1, 2));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_text("n=2\ngauge:\nX0 Q1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_text("n=2\ngauge:\nX5\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_text("m=2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_text("n=1\nlayout:\n0 0 0 2\ngauge:\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_text("n=2\nlayout:\n0 0 0 0\ngauge:\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_text("n=2\nlayout:\n0 0 0 0\n1 0 0 0\ngauge:\n"),
            Err(Error::InvalidLayout(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let gbs = GbsCode::build(&BitMatrix::ones(2, 2)).unwrap();
        let json = CodeJson::from_code(gbs.code(), Some(2));
        let s = serde_json::to_string(&json).unwrap();
        let back: CodeJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back, json);
        let code = back.to_code().unwrap();
        assert_eq!(code.generators(), gbs.code().generators());
        assert_eq!(json.derived.unwrap(), Derived { dim_s: 2, k: 1, g: 1, distance: Some(2) });
    }
}
