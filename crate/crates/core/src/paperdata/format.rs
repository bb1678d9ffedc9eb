// Record syntax, per kind (fields after the anchor):
//   polynomial    c0,c1,... ; at1=N ; at2=N
//   series        val=v ; trunc=t ; c_v,c_v+1,...
//   operator      i:[num]/[den] ; ...
//   curve         vars=A,B ; i,j:c ; ...
//   ratfunc-pair  var=t ; A=[num]/[den] ; ...
//   ratfunc       [num]/[den]

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{Curve, Fixture, Kind, Payload, RawRatFunc};
use crate::exactnum::{parse_rational, Rational};

type Res<T> = Result<T, String>;

fn ints(s: &str) -> Res<Vec<BigInt>> {
    s.split(',').map(|c| c.trim().parse::<BigInt>().map_err(|_| format!("bad integer {c:?}"))).collect()
}

fn bracketed(s: &str) -> Res<Vec<BigInt>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("expected [..], got {s:?}"))?;
    ints(inner)
}

fn raw_ratfunc(s: &str) -> Res<RawRatFunc> {
    let (n, d) = s.split_once("]/[").ok_or_else(|| format!("expected [num]/[den], got {s:?}"))?;
    Ok(RawRatFunc { num: bracketed(&format!("{n}]"))?, den: bracketed(&format!("[{d}"))? })
}

fn key_value<'a>(s: &'a str, key: &str) -> Res<&'a str> {
    s.trim().strip_prefix(key).and_then(|r| r.strip_prefix('=')).ok_or_else(|| format!("expected {key}=..., got {s:?}"))
}

pub(super) fn parse_record(line: &str) -> Res<Fixture> {
    let fields: Vec<&str> = line.split(" | ").collect();
    let [name, kind, anchor, data] = fields[..] else {
        return Err(format!("expected 4 fields separated by ' | ', got {}", fields.len()));
    };
    let kind = Kind::parse(kind).ok_or_else(|| format!("unknown kind {kind:?}"))?;
    let parts: Vec<&str> = data.split(" ; ").collect();
    let payload = match kind {
        Kind::Polynomial => {
            let [cs, a1, a2] = parts[..] else { return Err("polynomial needs coefficients, at1, at2".into()) };
            let at = |s: &str, k: &str| key_value(s, k)?.parse::<BigInt>().map_err(|_| format!("bad {k}"));
            Payload::Polynomial { coeffs: ints(cs)?, at1: at(a1, "at1")?, at2: at(a2, "at2")? }
        }
        Kind::Series => {
            let [v, t, cs] = parts[..] else { return Err("series needs val, trunc, coefficients".into()) };
            let num = |s: &str, k: &str| key_value(s, k)?.parse::<i64>().map_err(|_| format!("bad {k}"));
            let coeffs: Vec<Rational> =
                cs.split(',').map(|c| parse_rational(c).map_err(|e| e.to_string())).collect::<Res<_>>()?;
            let (valuation, trunc) = (num(v, "val")?, num(t, "trunc")?);
            if trunc - valuation != coeffs.len() as i64 {
                return Err(format!("{name}: {} coefficients do not span {valuation}..{trunc}", coeffs.len()));
            }
            Payload::Series { valuation, trunc, coeffs }
        }
        Kind::Operator => {
            let mut out = Vec::new();
            for p in parts {
                let (i, r) = p.split_once(':').ok_or_else(|| format!("expected i:[..]/[..], got {p:?}"))?;
                out.push((i.trim().parse().map_err(|_| format!("bad derivative index {i:?}"))?, raw_ratfunc(r)?));
            }
            Payload::Operator(out)
        }
        Kind::Curve => {
            let vars: Vec<String> = key_value(parts[0], "vars")?.split(',').map(|v| v.trim().to_string()).collect();
            let [a, b] = &vars[..] else { return Err("curve needs exactly two variables".into()) };
            let mut terms = BTreeMap::new();
            for p in &parts[1..] {
                let (m, c) = p.split_once(':').ok_or_else(|| format!("expected i,j:c, got {p:?}"))?;
                let e = ints(m)?;
                let [i, j] = &e[..] else { return Err(format!("bad monomial {m:?}")) };
                let ij = (u32::try_from(i).map_err(|_| "bad exponent")?, u32::try_from(j).map_err(|_| "bad exponent")?);
                terms.insert(ij, c.trim().parse().map_err(|_| format!("bad coefficient {c:?}"))?);
            }
            Payload::Curve(Curve { vars: [a.clone(), b.clone()], terms })
        }
        Kind::RatfuncPair => {
            let var = key_value(parts[0], "var")?.to_string();
            let mut entries = Vec::new();
            for p in &parts[1..] {
                let (k, r) = p.split_once('=').ok_or_else(|| format!("expected K=[..]/[..], got {p:?}"))?;
                entries.push((k.trim().to_string(), raw_ratfunc(r)?));
            }
            Payload::RatfuncPair { var, entries }
        }
        Kind::Ratfunc => Payload::Ratfunc(raw_ratfunc(data)?),
    };
    Ok(Fixture { name: name.into(), source: anchor.into(), payload })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn write_raw(r: &RawRatFunc) -> String {
    format!("[{}]/[{}]", join(&r.num), join(&r.den))
}

pub(super) fn write_record(f: &Fixture) -> String {
    let data = match &f.payload {
        Payload::Polynomial { coeffs, at1, at2 } => format!("{} ; at1={at1} ; at2={at2}", join(coeffs)),
        Payload::Series { valuation, trunc, coeffs } => format!("val={valuation} ; trunc={trunc} ; {}", join(coeffs)),
        Payload::Operator(parts) => {
            parts.iter().map(|(i, r)| format!("{i}:{}", write_raw(r))).collect::<Vec<_>>().join(" ; ")
        }
        Payload::Curve(c) => {
            let mut s = format!("vars={},{}", c.vars[0], c.vars[1]);
            for ((i, j), coef) in &c.terms {
                s.push_str(&format!(" ; {i},{j}:{coef}"));
            }
            s
        }
        Payload::RatfuncPair { var, entries } => {
            let mut s = format!("var={var}");
            for (k, r) in entries {
                s.push_str(&format!(" ; {k}={}", write_raw(r)));
            }
            s
        }
        Payload::Ratfunc(r) => write_raw(r),
    };
    format!("{} | {} | {} | {}", f.name, f.kind(), f.source, data)
}
