//! Plain-text instance files.
//!
//! ```text
//! RMQ <q> <l> <w> <m> <seed>
//! planted <j_0> ... <j_{w-1}>        (optional, 1-based positions)
//! <c> | <hex linear> | <hex cross>   (m lines)
//! ```
//!
//! Coefficient bit `k` is bit `k % 8` of byte `k / 8`; bytes are written in
//! order as two lowercase hex digits each. Linear bit `k` is coordinate
//! `(k / l, k % l)`; cross bits follow the layout of [`QuadraticPoly`].

use std::fmt::Write as _;

use super::{QuadraticPoly, RegularVector, RmqInstance};
use crate::algebra::words_for;
use crate::error::{Error, Result};

fn to_hex(words: &[u64], nbits: usize) -> String {
    let nbytes = nbits.div_ceil(8);
    let mut s = String::with_capacity(2 * nbytes);
    for b in 0..nbytes {
        let byte = (words[b / 8] >> (8 * (b % 8))) & 0xff;
        write!(s, "{byte:02x}").expect("writing to a String cannot fail");
    }
    s
}

fn from_hex(s: &str, nbits: usize, what: &str) -> Result<Vec<u64>> {
    let nbytes = nbits.div_ceil(8);
    if s.len() != 2 * nbytes
        || !s
            .bytes()
            .all(|c| c.is_ascii_digit() || (b'a'..=b'f').contains(&c))
    {
        return Err(Error::Parse(format!(
            "{what}: expected {} lowercase hex digits",
            2 * nbytes
        )));
    }
    let mut words = vec![0u64; words_for(nbits)];
    for b in 0..nbytes {
        let byte = u64::from_str_radix(&s[2 * b..2 * b + 2], 16).expect("validated hex");
        words[b / 8] |= byte << (8 * (b % 8));
    }
    Ok(words)
}

pub fn render_instance(inst: &RmqInstance) -> String {
    let mut out = format!(
        "RMQ {} {} {} {} {}\n",
        inst.q,
        inst.l,
        inst.w,
        inst.m(),
        inst.seed
    );
    if let Some(v) = &inst.planted {
        let _ = writeln!(out, "planted {v}");
    }
    for p in &inst.polys {
        let _ = writeln!(
            out,
            "{} | {} | {}",
            p.constant() as u8,
            to_hex(p.linear_words(), p.n()),
            to_hex(p.cross_words(), p.cross_len())
        );
    }
    out
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T> {
    tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}")))
}

pub fn parse_instance(text: &str) -> Result<RmqInstance> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("RMQ") {
        return Err(Error::Parse("header must start with RMQ".into()));
    }
    let q: u64 = parse_num(tok.next(), "q")?;
    let l: usize = parse_num(tok.next(), "l")?;
    let w: usize = parse_num(tok.next(), "w")?;
    let m: usize = parse_num(tok.next(), "m")?;
    let seed: u64 = parse_num(tok.next(), "seed")?;
    if q != 2 {
        return Err(Error::Parse(format!(
            "only q = 2 instances can be stored, got q = {q}"
        )));
    }
    let mut planted = None;
    let mut polys = Vec::with_capacity(m);
    for line in lines {
        if let Some(rest) = line.strip_prefix("planted") {
            let pos = rest
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse("bad planted position".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            if pos.len() != w {
                return Err(Error::Parse(format!(
                    "planted line has {} entries, w = {w}",
                    pos.len()
                )));
            }
            planted = Some(RegularVector::new(l, pos)?);
            continue;
        }
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "polynomial line needs 3 fields: {line}"
            )));
        }
        let c = match parts[0] {
            "0" => false,
            "1" => true,
            _ => return Err(Error::Parse("constant must be 0 or 1".into())),
        };
        let shape = QuadraticPoly::zero(l, w);
        let lin = from_hex(parts[1], shape.n(), "linear part")?;
        let cross = from_hex(parts[2], shape.cross_len(), "cross part")?;
        polys.push(QuadraticPoly::from_parts(l, w, c, lin, cross)?);
    }
    if polys.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} polynomials, found {}",
            polys.len()
        )));
    }
    RmqInstance::new(l, w, polys, planted, seed)
}
