//! Line-oriented netlist format.
//!
//! ```text
//! revnet 1
//! width 7
//! label a 0..2
//! label b 3..5
//! label flag 6
//! ccx 0 6 3
//! mcx +0 -3 +4 : 6
//! ```
//!
//! `#` starts a comment. Register ranges are inclusive and listed LSB
//! first. Gate lines are `x <t>`, `cx <c> <t>`, `ccx <c1> <c2> <t>` and
//! `mcx <±w> .. : <t>`; the short forms only cover positive controls.

use std::fmt::Write as _;

use revadd_core::{Circuit, Control, Error as CoreError, Gate, RegisterLayout, WireId};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetlistError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: {source}")]
    Invalid { line: usize, source: CoreError },

    #[error("register {0} is not a contiguous ascending wire range")]
    NonContiguous(&'static str),
}

/// A parsed circuit plus the source line of every gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    pub circuit: Circuit,
    pub gate_lines: Vec<usize>,
}

impl Netlist {
    /// Source line of gate `index`, if it came from a file.
    pub fn line_of(&self, index: usize) -> Option<usize> {
        self.gate_lines.get(index).copied()
    }
}

fn syntax(line: usize, message: impl Into<String>) -> NetlistError {
    NetlistError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, NetlistError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, format!("expected a decimal integer, got `{tok}`")));
    }
    tok.parse()
        .map_err(|_| syntax(line, format!("integer `{tok}` is too large")))
}

fn parse_range(tok: &str, line: usize) -> Result<Vec<WireId>, NetlistError> {
    let (lo, hi) = tok
        .split_once("..")
        .ok_or_else(|| syntax(line, format!("expected `<lo>..<hi>`, got `{tok}`")))?;
    let (lo, hi) = (parse_usize(lo, line)?, parse_usize(hi, line)?);
    if hi < lo {
        return Err(syntax(line, format!("empty range `{tok}`")));
    }
    Ok((lo..=hi).map(WireId).collect())
}

fn parse_gate(keyword: &str, args: &[&str], line: usize) -> Result<Gate, NetlistError> {
    let wires = |expected: usize| -> Result<Vec<usize>, NetlistError> {
        if args.len() != expected {
            return Err(syntax(
                line,
                format!("`{keyword}` takes {expected} wire(s), got {}", args.len()),
            ));
        }
        args.iter().map(|t| parse_usize(t, line)).collect()
    };
    let invalid = |source| NetlistError::Invalid { line, source };
    match keyword {
        "x" => Ok(Gate::not(wires(1)?[0])),
        "cx" => {
            let w = wires(2)?;
            Gate::new(vec![Control::pos(w[0])], WireId(w[1])).map_err(invalid)
        }
        "ccx" => {
            let w = wires(3)?;
            Gate::new(vec![Control::pos(w[0]), Control::pos(w[1])], WireId(w[2])).map_err(invalid)
        }
        "mcx" => {
            let colon = args
                .iter()
                .position(|&t| t == ":")
                .ok_or_else(|| syntax(line, "`mcx` needs `: <target>`"))?;
            if colon + 2 != args.len() {
                return Err(syntax(line, "`mcx` needs exactly one target after `:`"));
            }
            let target = parse_usize(args[colon + 1], line)?;
            let controls = args[..colon]
                .iter()
                .map(|t| {
                    let (sign, rest) = t.split_at(t.len().min(1));
                    let wire = parse_usize(rest, line)?;
                    match sign {
                        "+" => Ok(Control::pos(wire)),
                        "-" => Ok(Control::neg(wire)),
                        _ => Err(syntax(line, format!("control `{t}` needs a `+` or `-` sign"))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            Gate::new(controls, WireId(target)).map_err(invalid)
        }
        other => Err(syntax(line, format!("unknown directive `{other}`"))),
    }
}

pub fn parse(text: &str) -> Result<Netlist, NetlistError> {
    let mut seen_version = false;
    let mut width: Option<usize> = None;
    let mut a: Option<Vec<WireId>> = None;
    let mut b: Option<Vec<WireId>> = None;
    let mut flag: Option<WireId> = None;
    let mut header_end = 0;
    let mut gates: Vec<(usize, Gate)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let (keyword, args) = (tokens[0], &tokens[1..]);

        if !seen_version {
            if keyword != "revnet" {
                return Err(syntax(line, "netlist must start with `revnet <version>`"));
            }
            match args {
                [v] if parse_usize(v, line)? == FORMAT_VERSION as usize => {}
                _ => return Err(syntax(line, format!("unsupported format version `{}`", args.join(" ")))),
            }
            seen_version = true;
            continue;
        }

        match keyword {
            "revnet" => return Err(syntax(line, "repeated `revnet` header")),
            "width" | "label" if !gates.is_empty() => {
                return Err(syntax(line, format!("`{keyword}` must come before the first gate")));
            }
            "width" => {
                if width.is_some() {
                    return Err(syntax(line, "repeated `width`"));
                }
                match args {
                    [w] => width = Some(parse_usize(w, line)?),
                    _ => return Err(syntax(line, "`width` takes one integer")),
                }
                header_end = line;
            }
            "label" => {
                match args {
                    ["a", range] if a.is_none() => a = Some(parse_range(range, line)?),
                    ["b", range] if b.is_none() => b = Some(parse_range(range, line)?),
                    ["flag", w] if flag.is_none() => flag = Some(WireId(parse_usize(w, line)?)),
                    [name @ ("a" | "b" | "flag"), _] => {
                        return Err(syntax(line, format!("repeated label `{name}`")));
                    }
                    _ => return Err(syntax(line, format!("bad label `{}`", args.join(" ")))),
                }
                header_end = line;
            }
            _ => {
                if width.is_none() {
                    return Err(syntax(line, "`width` must come before the first gate"));
                }
                gates.push((line, parse_gate(keyword, args, line)?));
            }
        }
    }

    if !seen_version {
        return Err(syntax(1, "empty netlist"));
    }
    let width = width.ok_or_else(|| syntax(header_end.max(1), "missing `width`"))?;
    let invalid = |line, source| NetlistError::Invalid { line, source };
    let layout = RegisterLayout::new(a.unwrap_or_default(), b.unwrap_or_default(), flag)
        .map_err(|e| invalid(header_end, e))?;
    let mut circuit = Circuit::new(width, layout).map_err(|e| invalid(header_end, e))?;
    let mut gate_lines = Vec::with_capacity(gates.len());
    for (line, gate) in gates {
        circuit.append(gate).map_err(|e| invalid(line, e))?;
        gate_lines.push(line);
    }
    Ok(Netlist {
        circuit,
        gate_lines,
    })
}

fn range_label(name: &'static str, wires: &[WireId]) -> Result<Option<String>, NetlistError> {
    let Some(first) = wires.first() else {
        return Ok(None);
    };
    if wires.iter().enumerate().any(|(i, w)| w.0 != first.0 + i) {
        return Err(NetlistError::NonContiguous(name));
    }
    Ok(Some(format!(
        "label {name} {}..{}",
        first.0,
        first.0 + wires.len() - 1
    )))
}

/// Writes the canonical text: fixed header order, short forms for gates
/// with at most two positive controls.
pub fn serialize(circuit: &Circuit) -> Result<String, NetlistError> {
    let mut out = String::new();
    let layout = circuit.layout();
    writeln!(out, "revnet {FORMAT_VERSION}").unwrap();
    writeln!(out, "width {}", circuit.width()).unwrap();
    for label in [range_label("a", &layout.a)?, range_label("b", &layout.b)?]
        .into_iter()
        .flatten()
    {
        writeln!(out, "{label}").unwrap();
    }
    if let Some(f) = layout.flag {
        writeln!(out, "label flag {f}").unwrap();
    }
    for gate in circuit.gates() {
        writeln!(out, "{}", gate_line(gate)).unwrap();
    }
    Ok(out)
}

pub fn gate_line(gate: &Gate) -> String {
    let t = gate.target();
    let c = gate.controls();
    if gate.is_elementary() {
        match c {
            [] => return format!("x {t}"),
            [c0] => return format!("cx {} {t}", c0.wire),
            [c0, c1] => return format!("ccx {} {} {t}", c0.wire, c1.wire),
            _ => {}
        }
    }
    gate.to_string()
}
