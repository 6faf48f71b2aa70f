use std::fmt::Write as _;

use super::StructureTensor;
use crate::error::{Error, Result};
use crate::linear::{Module, Partition, Side};

/// Parse the structure-constant text format:
///
/// ```text
/// # comment
/// p=3 n=3 lambda=1,1,1 side=ring
/// 1 2 3 1
/// 2 1 3 2
/// ```
///
/// Entry lines are `i j l value` with 1-based indices; absent entries are zero.
pub fn parse_tensor(text: &str) -> Result<StructureTensor> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header line"))?;
    let (mut p, mut n, mut lambda, mut side) = (None, None, None, None);
    for tok in header.split_whitespace() {
        let (k, v) =
            tok.split_once('=').ok_or_else(|| Error::parse(hline, format!("expected key=value, got {tok:?}")))?;
        match k {
            "p" => p = Some(v.parse::<u64>().map_err(|_| Error::parse(hline, format!("bad p {v:?}")))?),
            "n" => n = Some(v.parse::<usize>().map_err(|_| Error::parse(hline, format!("bad n {v:?}")))?),
            "lambda" => lambda = Some(v.parse::<Partition>().map_err(|e| Error::parse(hline, e.to_string()))?),
            "side" => side = Some(v.parse::<Side>().map_err(|e| Error::parse(hline, e.to_string()))?),
            _ => return Err(Error::parse(hline, format!("unknown header key {k:?}"))),
        }
    }
    let missing = |k: &str| Error::parse(hline, format!("header lacks {k}"));
    let p = p.ok_or_else(|| missing("p"))?;
    let lambda = lambda.ok_or_else(|| missing("lambda"))?;
    let side = side.ok_or_else(|| missing("side"))?;
    if let Some(n) = n {
        if n != lambda.n() {
            return Err(Error::parse(hline, format!("n={n} but lambda sums to {}", lambda.n())));
        }
    }
    let module = Module::new(p, lambda, side).map_err(|e| Error::parse(hline, e.to_string()))?;
    let t = module.t();
    let mut tensor = StructureTensor::zero(module);
    let mut seen = vec![false; t * t * t];

    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(Error::parse(line, format!("expected `i j l value`, got {body:?}")));
        }
        let idx = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| Error::parse(line, format!("bad index {s:?}")))?;
            if v == 0 || v > t {
                return Err(Error::parse(line, format!("index {v} outside 1..={t}")));
            }
            Ok(v - 1)
        };
        let (i, j, l) = (idx(toks[0])?, idx(toks[1])?, idx(toks[2])?);
        let v: i64 = toks[3].parse().map_err(|_| Error::parse(line, format!("bad value {:?}", toks[3])))?;
        let k = (i * t + j) * t + l;
        if seen[k] {
            return Err(Error::parse(line, format!("duplicate entry {} {} {}", i + 1, j + 1, l + 1)));
        }
        seen[k] = true;
        tensor.set(i, j, l, v)?;
    }
    Ok(tensor)
}

/// Canonical rendering: header, then nonzero entries in `(i, j, l)` order.
pub fn write_tensor(t: &StructureTensor) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p={} n={} lambda={} side={}", t.p(), t.shape().n(), t.shape(), t.side());
    let n = t.t();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let v = t.get(i, j, l);
                if v != 0 {
                    let _ = writeln!(s, "{} {} {} {}", i + 1, j + 1, l + 1, v);
                }
            }
        }
    }
    s
}
