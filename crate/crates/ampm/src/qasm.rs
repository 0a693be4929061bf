//! OpenQASM 2.0 export and a reader for the subset this crate emits.

use std::f64::consts::PI;
use std::fmt::Write as _;

use ampm_core::{Gate, GateCircuit};

#[derive(Debug, thiserror::Error)]
pub enum QasmError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Core(#[from] ampm_core::Error),
}

const PI_TOLERANCE: f64 = 1e-12;
const MAX_PI_DENOMINATOR: i64 = 16;

/// Formats an angle as a multiple of `pi` when it is one with denominator at
/// most 16, otherwise as a decimal with 15 significant digits.
pub fn format_angle(angle: f64) -> String {
    for den in 1..=MAX_PI_DENOMINATOR {
        let num = (angle / PI * den as f64).round();
        if (angle - num * PI / den as f64).abs() > PI_TOLERANCE {
            continue;
        }
        let num = num as i64;
        let head = match num {
            0 => return "0".to_string(),
            1 => "pi".to_string(),
            -1 => "-pi".to_string(),
            _ => format!("{num}*pi"),
        };
        return if den == 1 { head } else { format!("{head}/{den}") };
    }
    if angle != 0.0 && angle.abs() < 1e-4 {
        return format!("{angle:.14e}");
    }
    let magnitude = angle.abs().log10().floor() as i32;
    let decimals = (14 - magnitude).max(0) as usize;
    format!("{angle:.decimals$}")
}

fn operand(circuit: &GateCircuit, qubit: usize) -> String {
    let query = circuit.query_qubits() as usize;
    if qubit < query {
        format!("q[{qubit}]")
    } else {
        format!("a[{}]", qubit - query)
    }
}

/// Emits the circuit followed by measurements of the query register.
pub fn to_qasm(circuit: &GateCircuit) -> Result<String, QasmError> {
    let n = circuit.query_qubits();
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{n}];").unwrap();
    if circuit.ancilla_qubits() > 0 {
        writeln!(out, "qreg a[{}];", circuit.ancilla_qubits()).unwrap();
    }
    writeln!(out, "creg c[{n}];").unwrap();
    let r = |q: usize| operand(circuit, q);
    for gate in circuit.gates() {
        match gate {
            Gate::H(q) => writeln!(out, "h {};", r(*q)),
            Gate::X(q) => writeln!(out, "x {};", r(*q)),
            Gate::U1 { angle, target } => {
                writeln!(out, "u1({}) {};", format_angle(*angle), r(*target))
            }
            Gate::Cx { control, target } => writeln!(out, "cx {}, {};", r(*control), r(*target)),
            Gate::Mcx { controls, target } => match controls.as_slice() {
                [c] => writeln!(out, "cx {}, {};", r(*c), r(*target)),
                [c0, c1] => writeln!(out, "ccx {}, {}, {};", r(*c0), r(*c1), r(*target)),
                _ => return Err(QasmError::Unsupported(format!("mcx with {} controls", controls.len()))),
            },
            Gate::Mcu1 { angle, controls, target } => match controls.as_slice() {
                [] => writeln!(out, "u1({}) {};", format_angle(*angle), r(*target)),
                [c] => writeln!(out, "cu1({}) {}, {};", format_angle(*angle), r(*c), r(*target)),
                [c0, c1] => {
                    // Doubly controlled phase from three cu1 and two cx.
                    let (c0, c1, t) = (r(*c0), r(*c1), r(*target));
                    let half = format_angle(angle / 2.0);
                    let neg_half = format_angle(-angle / 2.0);
                    writeln!(out, "cu1({half}) {c1}, {t};").unwrap();
                    writeln!(out, "cx {c0}, {c1};").unwrap();
                    writeln!(out, "cu1({neg_half}) {c1}, {t};").unwrap();
                    writeln!(out, "cx {c0}, {c1};").unwrap();
                    writeln!(out, "cu1({half}) {c0}, {t};")
                }
                _ => return Err(QasmError::Unsupported(format!("mcu1 with {} controls", controls.len()))),
            },
        }
        .unwrap();
    }
    for i in 0..n {
        writeln!(out, "measure q[{i}] -> c[{i}];").unwrap();
    }
    Ok(out)
}

struct Register {
    name: String,
    size: usize,
    offset: usize,
}

struct Reader {
    qregs: Vec<Register>,
    gates: Vec<Gate>,
    line: usize,
}

impl Reader {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, QasmError> {
        Err(QasmError::Syntax { line: self.line, message: message.into() })
    }

    fn width(&self) -> usize {
        self.qregs.iter().map(|r| r.size).sum()
    }

    fn statement(&mut self, stmt: &str) -> Result<(), QasmError> {
        let (head, rest) = split_head(stmt);
        match head {
            "OPENQASM" => {
                if rest.trim() != "2.0" {
                    return self.err(format!("unsupported version `{}`", rest.trim()));
                }
            }
            "include" | "creg" | "measure" | "barrier" => {}
            "qreg" => {
                let (name, size) = self.declaration(rest)?;
                if self.qregs.iter().any(|r| r.name == name) {
                    return self.err(format!("register `{name}` declared twice"));
                }
                let offset = self.width();
                self.qregs.push(Register { name, size, offset });
            }
            _ => self.gate(stmt)?,
        }
        Ok(())
    }

    fn declaration(&self, text: &str) -> Result<(String, usize), QasmError> {
        let text = text.trim();
        let Some((name, rest)) = text.split_once('[') else {
            return self.err(format!("bad declaration `{text}`"));
        };
        let Some(size) = rest.strip_suffix(']').and_then(|s| s.trim().parse().ok()) else {
            return self.err(format!("bad register size in `{text}`"));
        };
        Ok((name.trim().to_string(), size))
    }

    fn qubit(&self, text: &str) -> Result<usize, QasmError> {
        let (name, index) = self.declaration(text)?;
        match self.qregs.iter().find(|r| r.name == name) {
            Some(r) if index < r.size => Ok(r.offset + index),
            Some(_) => self.err(format!("index out of range in `{}`", text.trim())),
            None => self.err(format!("unknown register `{name}`")),
        }
    }

    fn gate(&mut self, stmt: &str) -> Result<(), QasmError> {
        let name_end = stmt.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(stmt.len());
        let name = &stmt[..name_end];
        let mut rest = stmt[name_end..].trim_start();
        let mut params = Vec::new();
        if let Some(inner) = rest.strip_prefix('(') {
            let Some(close) = matching_paren(inner) else {
                return self.err("unbalanced parenthesis");
            };
            for p in split_top_level(&inner[..close]) {
                match eval_expr(p) {
                    Some(v) => params.push(v),
                    None => return self.err(format!("bad parameter `{}`", p.trim())),
                }
            }
            rest = &inner[close + 1..];
        }
        let qubits = rest
            .split(',')
            .map(|a| self.qubit(a))
            .collect::<Result<Vec<_>, _>>()?;
        let gate = match (name, params.as_slice(), qubits.as_slice()) {
            ("h", [], &[q]) => Gate::H(q),
            ("x", [], &[q]) => Gate::X(q),
            ("u1", &[angle], &[target]) => Gate::U1 { angle, target },
            ("cx", [], &[control, target]) => Gate::Cx { control, target },
            ("ccx", [], &[c0, c1, target]) => Gate::Mcx { controls: vec![c0, c1], target },
            ("cu1", &[angle], &[c, target]) => Gate::Mcu1 { angle, controls: vec![c], target },
            ("h" | "x" | "u1" | "cx" | "ccx" | "cu1", _, _) => {
                return self.err(format!("wrong operands for `{name}`"))
            }
            _ => return Err(QasmError::Unsupported(format!("gate `{name}`"))),
        };
        self.gates.push(gate);
        Ok(())
    }
}

fn split_head(stmt: &str) -> (&str, &str) {
    match stmt.find(char::is_whitespace) {
        Some(i) => (&stmt[..i], &stmt[i..]),
        None => (stmt, ""),
    }
}

/// Index of the `)` closing an already opened parenthesis.
fn matching_paren(text: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' if depth == 0 => return Some(i),
            ')' => depth -= 1,
            _ => {}
        }
    }
    None
}

fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0usize, 0);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Evaluates `+ - * /`, parentheses, decimal literals and `pi`.
fn eval_expr(text: &str) -> Option<f64> {
    let mut p = ExprParser { s: text.as_bytes(), pos: 0 };
    let v = p.sum()?;
    p.skip_ws();
    (p.pos == p.s.len()).then_some(v)
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Option<f64> {
        let mut v = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            v = if op == b'+' { v + rhs } else { v - rhs };
        }
        Some(v)
    }

    fn product(&mut self) -> Option<f64> {
        let mut v = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            v = if op == b'*' { v * rhs } else { v / rhs };
        }
        Some(v)
    }

    fn unary(&mut self) -> Option<f64> {
        match self.peek()? {
            b'-' => {
                self.pos += 1;
                Some(-self.unary()?)
            }
            b'+' => {
                self.pos += 1;
                self.unary()
            }
            b'(' => {
                self.pos += 1;
                let v = self.sum()?;
                (self.peek()? == b')').then(|| self.pos += 1)?;
                Some(v)
            }
            _ if self.s[self.pos..].starts_with(b"pi") => {
                self.pos += 2;
                Some(PI)
            }
            _ => self.number(),
        }
    }

    fn number(&mut self) -> Option<f64> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.s.get(p.pos).is_some_and(u8::is_ascii_digit) {
                p.pos += 1;
            }
        };
        digits(self);
        if self.s.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            digits(self);
        }
        if matches!(self.s.get(self.pos), Some(b'e' | b'E')) {
            self.pos += 1;
            if matches!(self.s.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            digits(self);
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }
}

/// Reads QASM produced by [`to_qasm`]. The first `qreg` is the query
/// register and any later ones form the ancilla.
pub fn parse_qasm(text: &str) -> Result<GateCircuit, QasmError> {
    let mut reader = Reader { qregs: Vec::new(), gates: Vec::new(), line: 0 };
    let mut pending = String::new();
    let mut seen_header = false;
    for (idx, raw) in text.lines().enumerate() {
        reader.line = idx + 1;
        let code = raw.split("//").next().unwrap_or("");
        pending.push_str(code);
        pending.push(' ');
        while let Some(end) = pending.find(';') {
            let stmt = pending[..end].trim().to_string();
            pending.drain(..=end);
            if stmt.is_empty() {
                continue;
            }
            if !seen_header {
                if !stmt.starts_with("OPENQASM") {
                    return reader.err("missing OPENQASM header");
                }
                seen_header = true;
            }
            reader.statement(&stmt)?;
        }
    }
    if !pending.trim().is_empty() {
        return reader.err("unterminated statement");
    }
    if !seen_header {
        return reader.err("missing OPENQASM header");
    }
    let Some(query) = reader.qregs.first() else {
        return reader.err("no qreg declared");
    };
    let query = query.size as u32;
    let ancilla = (reader.width() as u32) - query;
    let mut circuit = GateCircuit::new(query, ancilla)?;
    for gate in reader.gates {
        circuit.push(gate)?;
    }
    Ok(circuit)
}
