//! Plain-text formats: code spec files and ε grids.
//!
//! A spec file lists `n k`, then the information indices, then one
//! `i : s1 s2 …` line per frozen index (empty support for a static zero).
//! Indices are 1-based. Lines starting with `#` are comments; a comment of
//! the form `# label: text` carries the spec's label.
//!
//! ```text
//! # label: RM(0,2)
//! 4 1
//! 4
//! 1 :
//! 2 :
//! 3 :
//! ```

use std::fmt::Write as _;

use crate::code::{CodeSpec, FrozenConstraint};
use crate::error::{Error, Result};
use crate::gf2::MAX_DIM;

const LABEL_PREFIX: &str = "label:";
const MAX_GRID_POINTS: usize = 1_000_000;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_index(tok: &str, n: usize, line: usize) -> Result<usize> {
    let i: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("expected a positive index, found {tok:?}")))?;
    if i == 0 || i > n {
        return Err(parse_err(line, format!("index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

/// Parses a spec file; the result satisfies every [`CodeSpec`] invariant.
pub fn parse_code_spec(text: &str) -> Result<CodeSpec> {
    let mut label = String::new();
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if let Some(c) = t.strip_prefix('#') {
            if let Some(l) = c.trim_start().strip_prefix(LABEL_PREFIX) {
                label = l.trim().to_string();
            }
        } else if !t.is_empty() {
            lines.push((no + 1, t));
        }
    }
    let mut it = lines.into_iter();
    let (hl, header) = it.next().ok_or_else(|| parse_err(1, "missing \"n k\" header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [n, k] = dims[..] else {
        return Err(parse_err(hl, "header must be \"n k\""));
    };
    let n: usize = n.parse().map_err(|_| parse_err(hl, "n is not a number"))?;
    let k: usize = k.parse().map_err(|_| parse_err(hl, "k is not a number"))?;
    if n > MAX_DIM {
        return Err(Error::SizeGuard {
            requested: n,
            max: MAX_DIM,
        });
    }
    if !n.is_power_of_two() || k == 0 || k > n {
        return Err(parse_err(hl, format!("invalid dimensions n={n} k={k}")));
    }

    let (il, info_line) = it
        .next()
        .ok_or_else(|| parse_err(hl + 1, "missing information index line"))?;
    let info = info_line
        .split_whitespace()
        .map(|t| parse_index(t, n, il))
        .collect::<Result<Vec<_>>>()?;
    if info.len() != k {
        return Err(parse_err(il, format!("expected {k} information indices, found {}", info.len())));
    }
    if info.windows(2).any(|w| w[0] >= w[1]) {
        return Err(parse_err(il, "information indices must be strictly ascending"));
    }

    let mut constraints = Vec::with_capacity(n - k);
    for (ln, t) in it {
        let (idx, rest) = t
            .split_once(':')
            .ok_or_else(|| parse_err(ln, "frozen line must look like \"i : s1 s2 ...\""))?;
        let index = parse_index(idx.trim(), n, ln)?;
        let support = rest
            .split_whitespace()
            .map(|s| parse_index(s, n, ln))
            .collect::<Result<Vec<_>>>()?;
        constraints.push(FrozenConstraint { index, support });
    }
    if constraints.len() != n - k {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("expected {} frozen lines, found {}", n - k, constraints.len()),
        ));
    }
    CodeSpec::new(n, info, constraints, label)
}

/// Renders a spec in the format read by [`parse_code_spec`].
pub fn format_code_spec(spec: &CodeSpec) -> String {
    let mut out = String::new();
    let label = spec.label().replace(['\n', '\r'], " ");
    let label = label.trim();
    if !label.is_empty() {
        let _ = writeln!(out, "# {LABEL_PREFIX} {label}");
    }
    let _ = writeln!(out, "{} {}", spec.n(), spec.k());
    let info: Vec<String> = spec.info_set().iter().map(|i| (i + 1).to_string()).collect();
    let _ = writeln!(out, "{}", info.join(" "));
    for c in spec.constraints() {
        let _ = write!(out, "{} :", c.index + 1);
        for s in c.support {
            let _ = write!(out, " {}", s + 1);
        }
        out.push('\n');
    }
    out
}

fn parse_prob(tok: &str) -> Result<f64> {
    let v: f64 = tok
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("not a number: {tok:?}")))?;
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidParameter(format!("{v} is outside [0, 1]")));
    }
    Ok(v)
}

/// Parses `start:stop:step` (inclusive, `step > 0`) or a comma-separated
/// list of values in `[0, 1]`. Range points are rounded to 12 decimals.
pub fn parse_eps_grid(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::InvalidParameter("empty epsilon grid".into()));
    }
    let parts: Vec<&str> = text.split(':').collect();
    match parts[..] {
        [single] => single.split(',').map(parse_prob).collect(),
        [a, b, step] => {
            let (a, b) = (parse_prob(a)?, parse_prob(b)?);
            let step: f64 = step
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad step {step:?}")))?;
            if !(step > 0.0 && step.is_finite()) {
                return Err(Error::InvalidParameter("step must be positive".into()));
            }
            if b < a {
                return Err(Error::InvalidParameter("range end precedes its start".into()));
            }
            let count = ((b - a) / step + 1e-9).floor() + 1.0;
            if count > MAX_GRID_POINTS as f64 {
                return Err(Error::SizeGuard {
                    requested: count as usize,
                    max: MAX_GRID_POINTS,
                });
            }
            Ok((0..count as usize)
                .map(|i| ((a + i as f64 * step) * 1e12).round() / 1e12)
                .map(|v| v.min(1.0))
                .collect())
        }
        _ => Err(Error::InvalidParameter(
            "grid must be a:b:step or a comma-separated list".into(),
        )),
    }
}
