//! Line-oriented problem files.
//!
//! ```text
//! ring p=2 vars=x,y order=degrevlex
//! matrix A 1 1
//! x
//! matrix U 1 1
//! x
//! ideal J
//! x^2 + y^3
//! ```
//!
//! `matrix NAME ROWS COLS` is followed by `ROWS * COLS` polynomial lines in
//! row-major order; `ideal NAME` by one polynomial per line up to a blank
//! line. Lines starting with `#` are comments.

use lcsupport::ring::{MonomialOrder, Poly, PolyMatrix, Ring};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ProblemError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ProblemError {
    ProblemError {
        line,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub ring: Ring,
    pub matrices: Vec<(String, PolyMatrix)>,
    pub ideals: Vec<(String, Vec<Poly>)>,
}

impl ProblemFile {
    pub fn new(ring: Ring) -> Self {
        ProblemFile {
            ring,
            matrices: Vec::new(),
            ideals: Vec::new(),
        }
    }

    pub fn matrix(&self, name: &str) -> Option<&PolyMatrix> {
        self.matrices.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn ideal(&self, name: &str) -> Option<&[Poly]> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    /// The first ideal in the file, if any.
    pub fn first_ideal(&self) -> Option<&[Poly]> {
        self.ideals.first().map(|(_, v)| v.as_slice())
    }

    pub fn format(&self) -> String {
        let r = &self.ring;
        let mut out = format!("ring p={} vars={} order={}\n", r.p(), r.names().join(","), r.order().name());
        for (name, m) in &self.matrices {
            out.push_str(&format!("matrix {name} {} {}\n", m.rows(), m.cols()));
            for f in m.entries() {
                out.push_str(&r.format(f));
                out.push('\n');
            }
        }
        for (name, gens) in &self.ideals {
            out.push_str(&format!("ideal {name}\n"));
            for f in gens {
                out.push_str(&r.format(f));
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }
}

fn parse_ring(line: usize, words: &[&str]) -> Result<Ring, ProblemError> {
    let mut p = None;
    let mut vars = None;
    let mut order = MonomialOrder::DegRevLex;
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| err(line, format!("expected key=value, got `{w}`")))?;
        match k {
            "p" => p = Some(v.parse::<u64>().map_err(|_| err(line, format!("bad characteristic `{v}`")))?),
            "vars" => vars = Some(v.split(',').map(str::trim).filter(|s| !s.is_empty()).collect::<Vec<_>>()),
            "order" => order = MonomialOrder::from_name(v).ok_or_else(|| err(line, format!("unknown order `{v}`")))?,
            _ => return Err(err(line, format!("unknown ring field `{k}`"))),
        }
    }
    let p = p.ok_or_else(|| err(line, "ring header needs p="))?;
    let vars = vars.ok_or_else(|| err(line, "ring header needs vars="))?;
    Ring::new(p, &vars, order).map_err(|e| err(line, e.to_string()))
}

/// Parses a problem file and checks the shapes of `A` and `U` when present.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).collect();
    let mut i = 0;
    let mut problem: Option<ProblemFile> = None;
    while i < lines.len() {
        let (ln, line) = lines[i];
        i += 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "ring" => {
                if problem.is_some() {
                    return Err(err(ln, "duplicate ring header"));
                }
                problem = Some(ProblemFile::new(parse_ring(ln, &words[1..])?));
            }
            "matrix" => {
                let pf = problem.as_mut().ok_or_else(|| err(ln, "matrix before ring header"))?;
                let [_, name, rows, cols] = words[..] else {
                    return Err(err(ln, "expected `matrix NAME ROWS COLS`"));
                };
                let rows: usize = rows.parse().map_err(|_| err(ln, format!("bad row count `{rows}`")))?;
                let cols: usize = cols.parse().map_err(|_| err(ln, format!("bad column count `{cols}`")))?;
                let mut m = PolyMatrix::zeros(rows, cols);
                let mut k = 0;
                while k < rows * cols {
                    let Some(&(eln, entry)) = lines.get(i) else {
                        return Err(err(ln, format!("matrix {name} needs {} entries, found {k}", rows * cols)));
                    };
                    i += 1;
                    if entry.is_empty() || entry.starts_with('#') {
                        continue;
                    }
                    let f = pf.ring.parse(entry).map_err(|e| err(eln, e.to_string()))?;
                    m.set(k / cols, k % cols, f);
                    k += 1;
                }
                if pf.matrix(name).is_some() {
                    return Err(err(ln, format!("duplicate matrix {name}")));
                }
                pf.matrices.push((name.to_string(), m));
            }
            "ideal" => {
                let pf = problem.as_mut().ok_or_else(|| err(ln, "ideal before ring header"))?;
                let [_, name] = words[..] else {
                    return Err(err(ln, "expected `ideal NAME`"));
                };
                let mut gens = Vec::new();
                while let Some(&(eln, entry)) = lines.get(i) {
                    i += 1;
                    if entry.is_empty() {
                        break;
                    }
                    if entry.starts_with('#') {
                        continue;
                    }
                    gens.push(pf.ring.parse(entry).map_err(|e| err(eln, e.to_string()))?);
                }
                if pf.ideal(name).is_some() {
                    return Err(err(ln, format!("duplicate ideal {name}")));
                }
                pf.ideals.push((name.to_string(), gens));
            }
            other => return Err(err(ln, format!("unknown directive `{other}`"))),
        }
    }
    let pf = problem.ok_or_else(|| err(1, "missing ring header"))?;
    validate(&pf, text)?;
    Ok(pf)
}

fn header_line(text: &str, name: &str) -> usize {
    text.lines()
        .position(|l| {
            let w: Vec<&str> = l.split_whitespace().collect();
            w.len() >= 2 && w[0] == "matrix" && w[1] == name
        })
        .map_or(1, |i| i + 1)
}

fn validate(pf: &ProblemFile, text: &str) -> Result<(), ProblemError> {
    if let Some(u) = pf.matrix("U") {
        if u.rows() != u.cols() {
            return Err(err(
                header_line(text, "U"),
                format!("U must be square, declared {}x{}", u.rows(), u.cols()),
            ));
        }
        if let Some(a) = pf.matrix("A") {
            if a.rows() != u.rows() {
                return Err(err(
                    header_line(text, "A"),
                    format!("A has {} rows but U is {}x{}", a.rows(), u.rows(), u.cols()),
                ));
            }
        }
    }
    Ok(())
}
