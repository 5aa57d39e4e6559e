//! Wire diagrams. One column per placement, tokens left-aligned in their
//! column and padded with wire, so column starts can be recovered from
//! the text.

use vqc_core::circuit::{Arity, Circuit, GateId, GatePlacement, Qubits};
use vqc_core::optimizer::wrap_angle;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Unicode,
    Ascii,
}

struct Glyphs {
    wire: char,
    control: char,
    target: char,
    cross: char,
    pi: &'static str,
}

const UNICODE: Glyphs = Glyphs {
    wire: '─',
    control: '●',
    target: '⊕',
    cross: '┼',
    pi: "π",
};

const ASCII: Glyphs = Glyphs {
    wire: '-',
    control: '*',
    target: '+',
    cross: '|',
    pi: "pi",
};

impl Style {
    fn glyphs(self) -> &'static Glyphs {
        match self {
            Style::Unicode => &UNICODE,
            Style::Ascii => &ASCII,
        }
    }
}

fn angle(x: f64, precision: usize) -> String {
    format!("{:.*}", precision, wrap_angle(x))
}

/// Per-row tokens of one placement; `None` is bare wire.
fn column(g: &GatePlacement<f64>, n: usize, gl: &Glyphs, precision: usize) -> Vec<Option<String>> {
    let mut rows = vec![None; n];
    match g.gate {
        GateId::Rz | GateId::Ry => {
            let name = if g.gate == GateId::Rz { "Rz" } else { "Ry" };
            rows[g.qubits.get(0)] = Some(format!("{name}({})", angle(g.theta[0], precision)));
        }
        GateId::RxHalfPi => rows[g.qubits.get(0)] = Some(format!("Rx({}/2)", gl.pi)),
        GateId::Cnot => {
            let (c, t) = (g.qubits.get(0), g.qubits.get(1));
            for row in rows.iter_mut().take(c.max(t)).skip(c.min(t) + 1) {
                *row = Some(gl.cross.to_string());
            }
            rows[c] = Some(gl.control.to_string());
            rows[t] = Some(gl.target.to_string());
        }
        GateId::RzBlock | GateId::RyBlock => {
            for (q, row) in rows.iter_mut().enumerate() {
                *row = Some(format!("{}({})", g.gate.name(), angle(g.theta[q], precision)));
            }
        }
        other => {
            for row in rows.iter_mut() {
                *row = Some(format!("[{}]", other.name()));
            }
        }
    }
    rows
}

/// Deterministic diagram of `c`; row `q<i>` is qubit `i`.
pub fn render(c: &Circuit<f64>, style: Style, precision: usize) -> String {
    let gl = style.glyphs();
    let n = c.n;
    let labels: Vec<String> = (0..n).map(|q| format!("q{q}:")).collect();
    let label_w = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut lines: Vec<String> = labels
        .iter()
        .map(|l| format!("{l:<label_w$} {}", gl.wire))
        .collect();
    for g in &c.gates {
        let col = column(g, n, gl, precision);
        let w = col
            .iter()
            .flatten()
            .map(|t| t.chars().count())
            .max()
            .unwrap_or(1);
        for (line, tok) in lines.iter_mut().zip(&col) {
            let tok = tok.as_deref().unwrap_or("");
            line.push_str(tok);
            for _ in tok.chars().count()..w + 2 {
                line.push(gl.wire);
            }
        }
    }
    for line in &mut lines {
        line.push(gl.wire);
        line.push('\n');
    }
    lines.concat()
}

fn is_wire(ch: char) -> bool {
    ch == '─' || ch == '-'
}

/// Reads a diagram produced by [`render`] back into a circuit. Angles
/// carry the rendered precision.
pub fn parse(text: &str) -> CliResult<Circuit<f64>> {
    let bad = |m: String| CliError::Parse(m);
    let mut rows: Vec<Vec<char>> = Vec::new();
    for (i, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        let (label, body) = line
            .split_once(':')
            .ok_or_else(|| bad(format!("line {i}: missing `q{i}:` label")))?;
        if label.trim() != format!("q{i}") {
            return Err(bad(format!("line {i}: expected label q{i}, got {label}")));
        }
        rows.push(body.trim_start_matches(' ').chars().collect());
    }
    let n = rows.len();
    if n == 0 {
        return Err(bad("empty diagram".into()));
    }
    // tokens as (start, text) per row
    let mut tokens: Vec<Vec<(usize, String)>> = Vec::with_capacity(n);
    for row in &rows {
        let mut toks = Vec::new();
        let mut k = 0;
        while k < row.len() {
            if is_wire(row[k]) {
                k += 1;
                continue;
            }
            let start = k;
            while k < row.len() && !is_wire(row[k]) {
                k += 1;
            }
            toks.push((start, row[start..k].iter().collect()));
        }
        tokens.push(toks);
    }
    let mut starts: Vec<usize> = tokens.iter().flatten().map(|(s, _)| *s).collect();
    starts.sort_unstable();
    starts.dedup();

    let mut gates = Vec::with_capacity(starts.len());
    for (ci, &start) in starts.iter().enumerate() {
        let col: Vec<Option<&str>> = tokens
            .iter()
            .map(|t| t.iter().find(|(s, _)| *s == start).map(|(_, x)| x.as_str()))
            .collect();
        gates.push(parse_column(&col, n).map_err(|m| bad(format!("column {ci}: {m}")))?);
    }
    let c = Circuit { n, gates };
    c.validate()?;
    Ok(c)
}

fn parse_angle(tok: &str, prefix: &str) -> Result<f64, String> {
    tok.strip_prefix(prefix)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("bad token {tok}"))?
        .parse()
        .map_err(|_| format!("bad angle in {tok}"))
}

fn parse_column(col: &[Option<&str>], n: usize) -> Result<GatePlacement<f64>, String> {
    let find = |set: &[&str]| col.iter().position(|t| t.is_some_and(|t| set.contains(&t)));
    if let (Some(c), Some(t)) = (find(&["●", "*"]), find(&["⊕", "+"])) {
        return Ok(GatePlacement::cnot(c, t));
    }
    let present: Vec<(usize, &str)> = col
        .iter()
        .enumerate()
        .filter_map(|(q, t)| t.map(|t| (q, t)))
        .collect();
    let (q, first) = *present.first().ok_or("empty column")?;
    if let Some(name) = first.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let gate: GateId = name.parse().map_err(|_| format!("unknown block {name}"))?;
        if gate.arity() != Arity::Block {
            return Err(format!("{name} is not a block"));
        }
        return Ok(GatePlacement::block(gate, vec![]));
    }
    for gate in [GateId::RzBlock, GateId::RyBlock] {
        if first.starts_with(gate.name()) {
            if present.len() != n {
                return Err(format!("{} needs a token on every row", gate.name()));
            }
            let theta = present
                .iter()
                .map(|(_, t)| parse_angle(t, gate.name()))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(GatePlacement::block(gate, theta));
        }
    }
    if present.len() != 1 {
        return Err(format!("expected one gate token, found {}", present.len()));
    }
    match first {
        "Rx(π/2)" | "Rx(pi/2)" => Ok(GatePlacement::new(GateId::RxHalfPi, Qubits::one(q), vec![])),
        t if t.starts_with("Rz(") => Ok(GatePlacement::rz(q, parse_angle(t, "Rz")?)),
        t if t.starts_with("Ry(") => Ok(GatePlacement::ry(q, parse_angle(t, "Ry")?)),
        t => Err(format!("unknown token {t}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_rz() {
        let c = Circuit {
            n: 1,
            gates: vec![GatePlacement::rz(0, 1.0)],
        };
        assert_eq!(render(&c, Style::Unicode, 4), "q0: ─Rz(1.0000)───\n");
    }

    #[test]
    fn cnot_glyphs() {
        let c = Circuit {
            n: 3,
            gates: vec![GatePlacement::cnot(0, 2), GatePlacement::rx_half_pi(1)],
        };
        let s = render(&c, Style::Unicode, 4);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], format!("q0: ─●{}", "─".repeat(12)));
        assert_eq!(lines[1], "q1: ─┼──Rx(π/2)───");
        assert_eq!(lines[2], format!("q2: ─⊕{}", "─".repeat(12)));
        let back = parse(&s).unwrap();
        assert_eq!(back.gates[0].qubits, Qubits::two(0, 2));
        assert_eq!(back.gates[1].gate, GateId::RxHalfPi);
    }

    #[test]
    fn ascii_round_trip_with_blocks() {
        let c = Circuit {
            n: 3,
            gates: vec![
                GatePlacement::block(GateId::RzBlock, vec![0.5, 1.5, 2.5]),
                GatePlacement::block(GateId::CnotEven, vec![]),
                GatePlacement::cnot(2, 0),
                GatePlacement::ry(2, 6.0),
            ],
        };
        let s = render(&c, Style::Ascii, 3);
        assert!(s.is_ascii());
        let back = parse(&s).unwrap();
        assert_eq!(back.gates.len(), 4);
        for (a, b) in back.gates.iter().zip(&c.gates) {
            assert_eq!((a.gate, a.qubits), (b.gate, b.qubits));
        }
        assert!((back.gates[0].theta[2] - 2.5).abs() < 1e-3);
    }

    #[test]
    fn malformed_diagrams() {
        assert!(parse("").is_err());
        assert!(parse("q1: ──\n").is_err());
        assert!(parse("q0: ─Foo──\n").is_err());
    }
}
