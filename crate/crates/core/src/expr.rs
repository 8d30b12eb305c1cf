//! Parsers for class expressions such as `7E+7F`, `18H-5/2B` or
//! `2F - 1/2 B`, and for surface specs such as `p2`, `fr:1`, `k3:8` or
//! `blowup:p2:3`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hilbpic::HilbDivClass;
use crate::nslattice::{make_hirzebruch, make_k3, make_p2, SurfaceClass, SurfaceKind, SurfaceLattice};
use crate::rational::{parse_q, q, Q};

pub fn parse_surface(spec: &str) -> Result<SurfaceLattice> {
    let spec = spec.trim();
    let int = |s: &str| -> Result<i64> { s.trim().parse().map_err(|_| Error::Parse(format!("expected an integer in surface spec {spec:?}, got {s:?}"))) };
    if spec == "p2" {
        return Ok(make_p2());
    }
    if let Some(r) = spec.strip_prefix("fr:") {
        return make_hirzebruch(int(r)?);
    }
    if let Some(d) = spec.strip_prefix("k3:") {
        return make_k3(int(d)?);
    }
    if let Some(rest) = spec.strip_prefix("blowup:") {
        let (parent, k) = rest.rsplit_once(':').ok_or_else(|| Error::Parse(format!("expected blowup:<surface>:<k>, got {spec:?}")))?;
        let k = u32::try_from(int(k)?).map_err(|_| Error::Parse(format!("negative blowup count in {spec:?}")))?;
        return parse_surface(parent)?.blow_up(k);
    }
    Err(Error::Parse(format!("unknown surface {spec:?}; expected p2, fr:<r>, k3:<deg> or blowup:<surface>:<k>")))
}

/// A symbol usable in expressions, with its coordinate vector.
pub type Symbol = (String, Vec<Q>);

fn unit(k: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); k];
    v[i] = Q::one();
    v
}

/// One symbol per coordinate label.
pub fn coordinate_symbols(labels: &[String]) -> Vec<Symbol> {
    labels.iter().enumerate().map(|(i, l)| (l.clone(), unit(labels.len(), i))).collect()
}

/// Surface basis, plus `H = E + rF` on `F_r`. With `with_b`, a trailing
/// `B` coordinate is added.
pub fn surface_symbols(s: &SurfaceLattice, with_b: bool) -> Vec<Symbol> {
    let mut labels = s.labels().to_vec();
    if with_b {
        labels.push("B".into());
    }
    let mut syms = coordinate_symbols(&labels);
    if let SurfaceKind::Hirzebruch { r } = s.kind() {
        let mut h = vec![q(1), q(*r as i64)];
        if with_b {
            h.push(Q::zero());
        }
        syms.push(("H".into(), h));
    }
    syms
}

/// Symbols for a fixture or wall set: its coordinate labels, plus `H` when
/// the basis is `E, F, B` on `fr:<r>`.
pub fn wallset_symbols(surface: &str, basis: &[String]) -> Vec<Symbol> {
    let mut syms = coordinate_symbols(basis);
    if basis == ["E", "F", "B"] {
        if let Some(r) = surface.strip_prefix("fr:").and_then(|r| r.parse::<i64>().ok()) {
            syms.push(("H".into(), vec![q(1), q(r), q(0)]));
        }
    }
    syms
}

fn normalize(expr: &str) -> String {
    expr.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '\u{2212}' { '-' } else { c }).collect()
}

/// Parse a sum of `[sign][rational][*]label` terms into a coordinate vector.
/// Labels are matched longest first.
pub fn parse_expr(expr: &str, symbols: &[Symbol]) -> Result<Vec<Q>> {
    let dim = symbols.first().map_or(0, |s| s.1.len());
    let text = normalize(expr);
    if text.is_empty() {
        return Err(Error::Parse("empty class expression".into()));
    }
    if text == "0" {
        return Ok(vec![Q::zero(); dim]);
    }
    let mut by_len: Vec<&Symbol> = symbols.iter().collect();
    by_len.sort_by_key(|s| std::cmp::Reverse(s.0.len()));
    let mut acc = vec![Q::zero(); dim];
    let mut rest = text.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = Q::one();
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
        } else if !first {
            return Err(Error::Parse(format!("expected + or - in {expr:?} before {rest:?}")));
        }
        first = false;
        let num_len = rest.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(rest.len());
        let coeff = if num_len == 0 { Q::one() } else { parse_q(&rest[..num_len])? };
        rest = &rest[num_len..];
        rest = rest.strip_prefix('*').unwrap_or(rest);
        let sym = by_len
            .iter()
            .find(|s| rest.starts_with(s.0.as_str()))
            .ok_or_else(|| Error::Parse(format!("unknown label at {rest:?} in {expr:?}; known labels: {}", label_list(symbols))))?;
        for (a, x) in acc.iter_mut().zip(&sym.1) {
            *a += &sign * &coeff * x;
        }
        rest = &rest[sym.0.len()..];
    }
    Ok(acc)
}

fn label_list(symbols: &[Symbol]) -> String {
    symbols.iter().map(|s| s.0.as_str()).collect::<Vec<_>>().join(", ")
}

pub fn parse_surface_class(s: &SurfaceLattice, expr: &str) -> Result<SurfaceClass> {
    Ok(SurfaceClass::new(parse_expr(expr, &surface_symbols(s, false))?))
}

pub fn parse_hilb_class(s: &SurfaceLattice, expr: &str, n: u32) -> Result<HilbDivClass> {
    HilbDivClass::from_coords(s.labels().to_vec(), &parse_expr(expr, &surface_symbols(s, true))?, n)
}

/// Split a comma-separated list, ignoring commas inside braces so labels
/// like `X_{2,0}` survive.
pub fn split_list(list: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in list.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur);
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Labels used across `exprs`, in order of first appearance with `B` moved
/// last.
pub fn infer_labels(exprs: &[String]) -> Vec<String> {
    let mut labels: Vec<String> = Vec::new();
    for e in exprs {
        let t = normalize(e);
        let mut chars = t.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            if c.is_ascii_alphabetic() {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let l = &t[i..end];
                if !labels.iter().any(|x| x == l) {
                    labels.push(l.to_string());
                }
            }
        }
    }
    if let Some(i) = labels.iter().position(|l| l == "B") {
        let b = labels.remove(i);
        labels.push(b);
    }
    labels
}
