//! Text forms for symbolic elements: `(a, p/q)` for `Z ∝ Q` and
//! `(a, {i,j,...})` for `Z ×' ⊕F_2`, and `[u1,u2; w1,w2]` for vectors of
//! `(Z ∝ Q)^m`. The element printers are the core `Display` impls.
//! Finite-ring elements are coefficient vectors `(c1, c2, ...)`.

use anyhow::{anyhow, bail, Context};
use num_bigint::BigInt;
use num_rational::BigRational;
use trivext_core::symtriv::uze::UZEElement;
use trivext_core::symtriv::zq::ZQElement;
use trivext_core::symtriv::zqmod::ZQVector;

fn split_pair(s: &str) -> anyhow::Result<(&str, &str)> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| anyhow!("expected `(a, e)`, got `{s}`"))?;
    let comma = inner.find(',').ok_or_else(|| anyhow!("missing comma in `{s}`"))?;
    Ok((inner[..comma].trim(), inner[comma + 1..].trim()))
}

pub fn parse_rational(s: &str) -> anyhow::Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().with_context(|| format!("bad numerator in `{s}`"))?;
            let d: BigInt = d.trim().parse().with_context(|| format!("bad denominator in `{s}`"))?;
            if d == BigInt::from(0) {
                bail!("zero denominator in `{s}`");
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().with_context(|| format!("bad rational `{s}`"))?)),
    }
}

pub fn parse_zq(s: &str) -> anyhow::Result<ZQElement> {
    let (a, q) = split_pair(s)?;
    Ok(ZQElement::new(
        a.parse::<BigInt>().with_context(|| format!("bad integer part in `{s}`"))?,
        parse_rational(q)?,
    ))
}

pub fn parse_uze(s: &str) -> anyhow::Result<UZEElement> {
    let (a, e) = split_pair(s)?;
    let set = e
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| anyhow!("expected a set `{{i,j}}` in `{s}`"))?;
    let idx = set
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().with_context(|| format!("bad index `{t}`")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(UZEElement::new(a.parse::<BigInt>().with_context(|| format!("bad integer part in `{s}`"))?, idx))
}

pub fn format_zqvec(v: &ZQVector) -> String {
    let u: Vec<String> = v.u.iter().map(|x| x.to_string()).collect();
    let w: Vec<String> = v.w.iter().map(|x| x.to_string()).collect();
    format!("[{}; {}]", u.join(", "), w.join(", "))
}

pub fn parse_zqvec(s: &str) -> anyhow::Result<ZQVector> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| anyhow!("expected `[u; w]`, got `{s}`"))?;
    let (u, w) = inner.split_once(';').ok_or_else(|| anyhow!("missing `;` in `{s}`"))?;
    let items = |t: &str| -> Vec<String> {
        t.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
    };
    let u = items(u)
        .iter()
        .map(|x| x.parse::<BigInt>().with_context(|| format!("bad integer `{x}`")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let w = items(w).iter().map(|x| parse_rational(x)).collect::<anyhow::Result<Vec<_>>>()?;
    if u.len() != w.len() {
        bail!("`{s}` has parts of different lengths");
    }
    Ok(ZQVector { u, w })
}

/// `(c1, c2, ...)` or `[c1, c2, ...]`.
pub fn parse_coeffs(s: &str) -> anyhow::Result<Vec<i64>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|x| x.strip_suffix(']')))
        .ok_or_else(|| anyhow!("expected `(c1, c2, ...)`, got `{s}`"))?;
    inner
        .split(',')
        .map(str::trim)
        .map(|x| x.parse::<i64>().with_context(|| format!("bad coefficient `{x}` in `{s}`")))
        .collect()
}

pub fn format_coeffs(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Split `{x, y, ...}` (braces optional) at the commas outside brackets.
pub fn split_list(s: &str) -> anyhow::Result<Vec<String>> {
    let t = s.trim();
    let inner = match t.strip_prefix('{') {
        Some(x) => x.strip_suffix('}').ok_or_else(|| anyhow!("unbalanced braces in `{s}`"))?,
        None => t,
    };
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            bail!("unbalanced brackets in `{s}`");
        }
        cur.push(ch);
    }
    if depth != 0 {
        bail!("unbalanced brackets in `{s}`");
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let x = parse_zq("(2, -1/3)").unwrap();
        assert_eq!(parse_zq(&x.to_string()).unwrap(), x);
        assert_eq!(x.q, BigRational::new((-1).into(), 3.into()));
        let y = parse_uze("(-4, {0, 3})").unwrap();
        assert_eq!(parse_uze(&y.to_string()).unwrap(), y);
        assert_eq!(parse_uze("(1, {})").unwrap(), UZEElement::one());
        assert!(parse_zq("(1, 1/0)").is_err());
        assert!(parse_zq("1, 2").is_err());
        let v = parse_zqvec("[1, -2; 1/2, 0]").unwrap();
        assert_eq!(format_zqvec(&v), "[1, -2; 1/2, 0]");
        assert!(parse_zqvec("[1; 1/2, 0]").is_err());
    }

    #[test]
    fn coefficient_vectors_and_lists() {
        assert_eq!(parse_coeffs("(2, 1)").unwrap(), vec![2, 1]);
        assert_eq!(parse_coeffs("[0,1]").unwrap(), vec![0, 1]);
        assert_eq!(format_coeffs(&[2, 0]), "(2, 0)");
        assert!(parse_coeffs("2, 1").is_err());
        assert_eq!(split_list("{(2, 0), (1, {3, 4})}").unwrap(), vec!["(2, 0)", "(1, {3, 4})"]);
        assert_eq!(split_list("(2,1)").unwrap(), vec!["(2,1)"]);
        assert!(split_list("{(2, 0}").is_err());
    }
}
