//! Line-oriented operator document format.
//!
//! ```text
//! vars: x1,x2
//! in: eta[2]
//! out: zeta[1]
//! entry 1 1: d{1,0} - (x2)
//! entry 1 2: d{0,1}
//! ```
//!
//! `in`/`out` lines take an optional ` weights=w1,...` tail (default 1).
//! Entry terms are `(coeff) d{e1,...,eN}`; a missing d-part means order 0, a
//! missing coefficient means 1. Printing is canonical: rows, then columns,
//! then graded-lex descending on the multi-index; identical operators print
//! byte-identically.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::coeff::{parse_coeff, Rat, RatFunc};
use crate::error::{Error, Result};
use crate::op::{DiffOp, MultiIndex, SpaceSpec, WeylPoly};

/// Parsed form of an operator document.
#[derive(Debug, Clone)]
pub struct OperatorDocument {
    pub n_vars: usize,
    pub src: SpaceSpec,
    pub dst: SpaceSpec,
    /// (row, col, operator entry), 0-based
    pub entries: Vec<(usize, usize, WeylPoly)>,
}

impl OperatorDocument {
    pub fn into_op(self) -> DiffOp {
        let mut op = DiffOp::zero(self.src, self.dst, self.n_vars);
        for (r, c, p) in self.entries {
            op.set_entry(r, c, p);
        }
        op
    }
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Parse an operator document.
pub fn parse_operator(text: &str) -> Result<DiffOp> {
    let mut n_vars: Option<usize> = None;
    let mut src: Option<SpaceSpec> = None;
    let mut dst: Option<SpaceSpec> = None;
    let mut entries: Vec<(usize, usize, WeylPoly)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            let names: Vec<&str> = rest.split(',').map(str::trim).collect();
            for (k, name) in names.iter().enumerate() {
                let expect = format!("x{}", k + 1);
                if *name != expect {
                    return Err(perr(lineno, 1, format!("expected variable {expect}, found {name}")));
                }
            }
            n_vars = Some(names.len());
        } else if let Some(rest) = line.strip_prefix("in:") {
            src = Some(parse_space(rest, lineno)?);
        } else if let Some(rest) = line.strip_prefix("out:") {
            dst = Some(parse_space(rest, lineno)?);
        } else if let Some(rest) = line.strip_prefix("entry") {
            let n = n_vars.ok_or_else(|| perr(lineno, 1, "entry before vars: line"))?;
            let src = src.as_ref().ok_or_else(|| perr(lineno, 1, "entry before in: line"))?;
            let dst = dst.as_ref().ok_or_else(|| perr(lineno, 1, "entry before out: line"))?;
            let (head, body) = rest
                .split_once(':')
                .ok_or_else(|| perr(lineno, 1, "expected `entry R C: terms`"))?;
            let coords: Vec<&str> = head.split_whitespace().collect();
            if coords.len() != 2 {
                return Err(perr(lineno, 1, "expected two entry coordinates"));
            }
            let r: usize = coords[0]
                .parse()
                .map_err(|_| perr(lineno, 1, "bad row index"))?;
            let c: usize = coords[1]
                .parse()
                .map_err(|_| perr(lineno, 1, "bad column index"))?;
            if r == 0 || r > dst.dim() {
                return Err(perr(lineno, 1, format!("row {r} outside output space of dimension {}", dst.dim())));
            }
            if c == 0 || c > src.dim() {
                return Err(perr(lineno, 1, format!("column {c} outside input space of dimension {}", src.dim())));
            }
            let p = parse_entry(body, n, lineno)?;
            entries.push((r - 1, c - 1, p));
        } else {
            return Err(perr(lineno, 1, format!("unrecognized line: {line}")));
        }
    }
    let n_vars = n_vars.ok_or_else(|| perr(1, 1, "missing vars: line"))?;
    let src = src.ok_or_else(|| perr(1, 1, "missing in: line"))?;
    let dst = dst.ok_or_else(|| perr(1, 1, "missing out: line"))?;
    let mut op = DiffOp::zero(src, dst, n_vars);
    for (r, c, p) in entries {
        let mut acc = op.entry(r, c).clone();
        acc.add_assign(&p);
        op.set_entry(r, c, acc);
    }
    Ok(op)
}

/// `NAME[dim]` with optional ` weights=1,2,1`.
fn parse_space(rest: &str, lineno: usize) -> Result<SpaceSpec> {
    let rest = rest.trim();
    let (decl, weights_part) = match rest.split_once("weights=") {
        Some((d, w)) => (d.trim(), Some(w.trim())),
        None => (rest, None),
    };
    let open = decl.find('[').ok_or_else(|| perr(lineno, 1, "expected NAME[dim]"))?;
    let close = decl.find(']').ok_or_else(|| perr(lineno, 1, "expected closing ]"))?;
    let name = decl[..open].trim();
    if name.is_empty() {
        return Err(perr(lineno, 1, "space name is empty"));
    }
    let dim: usize = decl[open + 1..close]
        .trim()
        .parse()
        .map_err(|_| perr(lineno, 1, "bad dimension"))?;
    if dim == 0 {
        return Err(perr(lineno, 1, "spaces have positive dimension"));
    }
    let weights: Vec<Rat> = match weights_part {
        None => vec![Rat::one(); dim],
        Some(w) => {
            let parts: Vec<&str> = w.split(',').map(str::trim).collect();
            if parts.len() != dim {
                return Err(perr(lineno, 1, format!("expected {dim} weights, found {}", parts.len())));
            }
            let mut out = Vec::with_capacity(dim);
            for p in parts {
                out.push(parse_weight(p, lineno)?);
            }
            out
        }
    };
    let labels = (1..=dim).map(|i| format!("{name}{i}")).collect();
    Ok(SpaceSpec::new(name, labels, weights))
}

fn parse_weight(s: &str, lineno: usize) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| perr(lineno, 1, format!("bad weight {t}")))
    };
    let w = match s.split_once('/') {
        Some((a, b)) => BigRational::new(parse_int(a)?, parse_int(b)?),
        None => BigRational::from_integer(parse_int(s)?),
    };
    if !w.is_positive() {
        return Err(perr(lineno, 1, "weights are positive"));
    }
    Ok(w)
}

/// One entry: TERM (('+'|'-') TERM)*, TERM = [coeff] [d{e,...}].
fn parse_entry(body: &str, n_vars: usize, lineno: usize) -> Result<WeylPoly> {
    let mut p = WeylPoly::zero(n_vars);
    for (sign, term) in split_terms(body) {
        let term = term.trim();
        if term.is_empty() {
            return Err(perr(lineno, 1, "empty term"));
        }
        let (coeff_text, mu) = match term.find("d{") {
            Some(pos) => {
                let close = term[pos..]
                    .find('}')
                    .ok_or_else(|| perr(lineno, 1, "unterminated d{...}"))?;
                let exps_text = &term[pos + 2..pos + close];
                let tail = term[pos + close + 1..].trim();
                if !tail.is_empty() {
                    return Err(perr(lineno, 1, format!("trailing input after d-part: {tail}")));
                }
                let exps: Vec<u16> = exps_text
                    .split(',')
                    .map(|e| e.trim().parse::<u16>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| perr(lineno, 1, "bad derivative exponent"))?;
                if exps.len() != n_vars {
                    return Err(perr(lineno, 1, format!("expected {n_vars} exponents in d-part")));
                }
                (term[..pos].trim(), MultiIndex::from_exponents(exps))
            }
            None => (term, MultiIndex::zero(n_vars)),
        };
        let coeff = if coeff_text.is_empty() {
            RatFunc::one(n_vars)
        } else {
            parse_coeff(coeff_text, n_vars).map_err(|e| match e {
                Error::Parse { col, msg, .. } => perr(lineno, col, msg),
                other => other,
            })?
        };
        let coeff = if sign { coeff.neg() } else { coeff };
        p.add_term(mu, coeff);
    }
    Ok(p)
}

/// Split at top-level + and - (respecting parentheses); bool marks minus.
fn split_terms(body: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = false;
    let mut seen_content = false;
    for ch in body.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
                seen_content = true;
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && seen_content && !cur.trim().is_empty() => {
                out.push((sign, std::mem::take(&mut cur)));
                sign = ch == '-';
            }
            '-' if depth == 0 && cur.trim().is_empty() => {
                // leading minus of the (next) term
                sign = !sign;
            }
            _ => {
                if !ch.is_whitespace() {
                    seen_content = true;
                }
                cur.push(ch);
            }
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur));
    }
    out
}

/// Canonical text form. parse(print(d)) reproduces the operator structurally
/// (labels regenerate from the space name).
pub fn print_operator(d: &DiffOp) -> String {
    let mut out = String::new();
    out.push_str("vars: ");
    for i in 0..d.n_vars() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("x{}", i + 1));
    }
    out.push('\n');
    out.push_str(&format!("in: {}\n", space_decl(d.src())));
    out.push_str(&format!("out: {}\n", space_decl(d.dst())));
    for r in 0..d.dst().dim() {
        for c in 0..d.src().dim() {
            let p = d.entry(r, c);
            if p.is_zero() {
                continue;
            }
            out.push_str(&format!("entry {} {}: {}\n", r + 1, c + 1, entry_to_text(p)));
        }
    }
    out
}

fn space_decl(s: &SpaceSpec) -> String {
    let all_unit = s.weights().iter().all(|w| w.is_one());
    if all_unit {
        format!("{}[{}]", s.name(), s.dim())
    } else {
        let ws: Vec<String> = s.weights().iter().map(fmt_rat).collect();
        format!("{}[{}] weights={}", s.name(), s.dim(), ws.join(","))
    }
}

fn fmt_rat(w: &Rat) -> String {
    if w.denom().is_one() {
        format!("{}", w.numer())
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

/// Canonical one-line text of a single operator entry.
pub fn entry_to_text(p: &WeylPoly) -> String {
    let mut terms: Vec<(&MultiIndex, &RatFunc)> = p.terms().collect();
    terms.sort_by(|a, b| b.0.cmp_graded_lex(a.0));
    let mut out = String::new();
    for (k, (mu, c)) in terms.iter().enumerate() {
        let neg = leading_sign_negative(c);
        let mag = if neg { c.neg() } else { (*c).clone() };
        if k == 0 {
            if neg {
                out.push_str("- ");
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff_str = if mag.is_one() { None } else { Some(format!("({})", mag)) };
        match (coeff_str, mu.is_zero()) {
            (None, true) => out.push('1'),
            (None, false) => out.push_str(&mu.to_string()),
            (Some(cs), true) => out.push_str(&cs),
            (Some(cs), false) => {
                out.push_str(&cs);
                out.push(' ');
                out.push_str(&mu.to_string());
            }
        }
    }
    out
}

fn leading_sign_negative(c: &RatFunc) -> bool {
    c.numerator().leading_coeff().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example23 as ex;

    #[test]
    fn parses_the_reference_document() {
        let doc = "vars: x1,x2\nin: eta[2]\nout: zeta[1]\nentry 1 1: d{1,0} - x2\nentry 1 2: d{0,1}\n";
        let op = parse_operator(doc).unwrap();
        assert!(op.entries_eq(&ex::d1()));
        assert_eq!(op.src().name(), "eta");
    }

    #[test]
    fn print_parse_roundtrip() {
        for op in [ex::d1(), ex::nu_rows(), ex::parametrization(), ex::d1().adjoint()] {
            let text = print_operator(&op);
            let back = parse_operator(&text).unwrap();
            assert_eq!(back, op, "roundtrip of:\n{text}");
            assert_eq!(print_operator(&back), text, "canonical print is stable");
        }
    }

    #[test]
    fn zero_operator_prints_header_only() {
        let z = DiffOp::zero(SpaceSpec::vector("a", 2), SpaceSpec::vector("b", 2), 2);
        let text = print_operator(&z);
        assert_eq!(text, "vars: x1,x2\nin: a[2]\nout: b[2]\n");
        assert!(parse_operator(&text).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let doc = "vars: x1,x2\nin: eta[2]\nout: zeta[1]\nentry 1 3: d{0,1}\n";
        let err = parse_operator(doc).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    }

    #[test]
    fn weighted_spaces_roundtrip() {
        let m = crate::gallery::Metric::minkowski(3);
        let k = crate::gallery::lie_operator(&m, false).unwrap();
        let text = print_operator(&k);
        assert!(text.contains("weights=1,2,2,1,2,1"));
        let back = parse_operator(&text).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn adjoint_prints_displayed_rows() {
        let text = print_operator(&ex::d1().adjoint());
        assert!(text.contains("entry 1 1: - d{1,0} - (x2)"), "{text}");
        assert!(text.contains("entry 2 1: - d{0,1}"), "{text}");
    }
}
