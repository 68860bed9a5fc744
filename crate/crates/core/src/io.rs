//! Text formats: grid files and move scripts.
//!
//! A grid file holds `#` comments and three records, 0-indexed rows with the
//! origin at the bottom left:
//!
//! ```text
//! # 2x2 unknot
//! n 2
//! O 1 0
//! X 0 1
//! ```

use thiserror::Error;

use crate::grid::{GridDiagram, GridError};
use crate::moves::{Axis, Corner, Direction, MarkerKind, MoveSpec};
use crate::spin::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing record `{0}`")]
    Missing(&'static str),
    #[error("record `n` says {declared} but `{which}` has {found} entries")]
    SizeMismatch {
        declared: usize,
        which: char,
        found: usize,
    },
    #[error(transparent)]
    Grid(#[from] GridError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_indices(line: usize, fields: &[&str]) -> Result<Vec<usize>, ParseError> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| syntax(line, format!("`{f}` is not a row index")))
        })
        .collect()
}

pub fn parse_grid(text: &str) -> Result<GridDiagram, ParseError> {
    let mut n = None;
    let mut o = None;
    let mut x = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let slot = match fields[0] {
            "n" => {
                if fields.len() != 2 {
                    return Err(syntax(line, "`n` takes one integer"));
                }
                let v = fields[1]
                    .parse::<usize>()
                    .map_err(|_| syntax(line, "bad grid size"))?;
                if n.replace(v).is_some() {
                    return Err(syntax(line, "duplicate `n`"));
                }
                continue;
            }
            "O" => &mut o,
            "X" => &mut x,
            other => return Err(syntax(line, format!("unknown record `{other}`"))),
        };
        if slot.replace(parse_indices(line, &fields[1..])?).is_some() {
            return Err(syntax(line, format!("duplicate `{}`", fields[0])));
        }
    }
    let n = n.ok_or(ParseError::Missing("n"))?;
    let o = o.ok_or(ParseError::Missing("O"))?;
    let x = x.ok_or(ParseError::Missing("X"))?;
    for (which, v) in [('O', &o), ('X', &x)] {
        if v.len() != n {
            return Err(ParseError::SizeMismatch {
                declared: n,
                which,
                found: v.len(),
            });
        }
    }
    Ok(GridDiagram::new(o, x)?)
}

pub fn write_grid(g: &GridDiagram) -> String {
    let join = |v: &[usize]| {
        v.iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "n {}\nO {}\nX {}\n",
        g.size(),
        join(g.o_rows()),
        join(g.x_rows())
    )
}

/// Parses `"1 0 2"` into a permutation of the given size.
pub fn parse_generator(text: &str, n: usize) -> Result<Permutation, ParseError> {
    let images = parse_indices(1, &text.split_whitespace().collect::<Vec<_>>())?;
    if images.len() != n {
        return Err(syntax(
            1,
            format!("generator has {} entries, grid has size {n}", images.len()),
        ));
    }
    Permutation::new(images).map_err(|e| syntax(1, e.to_string()))
}

fn parse_move(line: usize, fields: &[&str]) -> Result<MoveSpec, ParseError> {
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| syntax(line, format!("`{s}` is not an index")))
    };
    match fields {
        ["cyclic", d] => {
            let d = match *d {
                "up" => Direction::Up,
                "down" => Direction::Down,
                "left" => Direction::Left,
                "right" => Direction::Right,
                _ => return Err(syntax(line, format!("unknown direction `{d}`"))),
            };
            Ok(MoveSpec::Cyclic(d))
        }
        ["commute", "cols" | "columns", i] => Ok(MoveSpec::CommuteColumns(num(i)?)),
        ["commute", "rows", j] => Ok(MoveSpec::CommuteRows(num(j)?)),
        ["stabilize", axis, pos, variant] => {
            let axis = match *axis {
                "row" => Axis::Row,
                "col" | "column" => Axis::Column,
                _ => {
                    return Err(syntax(
                        line,
                        format!("expected `row` or `col`, got `{axis}`"),
                    ))
                }
            };
            let kind = match variant.get(..1) {
                Some("O") => MarkerKind::O,
                Some("X") => MarkerKind::X,
                _ => return Err(syntax(line, format!("bad variant `{variant}`"))),
            };
            let empty = match variant.get(1..) {
                Some("NW") => Corner::NW,
                Some("NE") => Corner::NE,
                Some("SW") => Corner::SW,
                Some("SE") => Corner::SE,
                _ => return Err(syntax(line, format!("bad variant `{variant}`"))),
            };
            Ok(MoveSpec::Stabilize {
                kind,
                axis,
                position: num(pos)?,
                empty,
            })
        }
        ["destabilize", c, r] => Ok(MoveSpec::Destabilize {
            col: num(c)?,
            row: num(r)?,
        }),
        _ => Err(syntax(
            line,
            format!("unrecognised move `{}`", fields.join(" ")),
        )),
    }
}

pub fn parse_moves(text: &str) -> Result<Vec<MoveSpec>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        out.push(parse_move(
            idx + 1,
            &content.split_whitespace().collect::<Vec<_>>(),
        )?);
    }
    Ok(out)
}
