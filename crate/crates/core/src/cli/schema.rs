//! The JSON spec format.
//!
//! ```json
//! {"kind": "cyclic", "p": 2, "n": 2, "g_base": 0, "m": [2, 3],
//!  "places": [{"phi": [1, 3]}, {"phi": [0, 1], "e": 1}]}
//! ```
//!
//! `kind` is `cyclic`, `elementary_abelian` or `tame`. Places are
//! `{"phi": [..], "e": e}` (cyclic, `e` defaults to `n`), `{"phi": k}`
//! (elementary abelian) or `{"vu": k}` (tame, where `n` is the Kummer
//! degree). Integers may be JSON numbers or decimal strings; `m` is an
//! integer, a list, or a range string such as `"1..4"`. Emitted specs use
//! decimal strings throughout.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::extension::{CyclicPlace, ElabPlace, ExtensionSpec, GroupParams, TamePlace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecDocument {
    pub spec: ExtensionSpec,
    pub orders: Option<Vec<u32>>,
}

fn int(v: &Value, what: &str) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| format!("{what}: {n} is not an integer")),
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| format!("{what}: {s:?} is not a decimal integer")),
        other => Err(format!("{what}: expected an integer, got {other}")),
    }
}

fn small<T: TryFrom<i64>>(v: &BigInt, what: &str) -> Result<T, String> {
    v.to_i64().and_then(|x| T::try_from(x).ok()).ok_or_else(|| format!("{what}: {v} is out of range"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, String> {
    obj.get(key).ok_or_else(|| format!("missing field {key:?}"))
}

/// `"2"`, `"1..4"` (inclusive) or a comma list such as `"1,3"`.
pub fn parse_orders(s: &str) -> Result<Vec<u32>, String> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad order {t:?}"));
    let out: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (lo, hi) = (parse(a)?, parse(b)?);
        if lo > hi {
            return Err(format!("empty order range {s:?}"));
        }
        (lo..=hi).collect()
    } else {
        s.split(',').map(parse).collect::<Result<_, _>>()?
    };
    if out.contains(&0) {
        return Err("orders m must be at least 1".into());
    }
    Ok(out)
}

fn orders(v: &Value) -> Result<Vec<u32>, String> {
    match v {
        Value::Array(items) => items.iter().map(|x| small::<u32>(&int(x, "m")?, "m")).collect::<Result<Vec<_>, _>>().and_then(|o| {
            if o.is_empty() || o.contains(&0) {
                Err("orders m must be a nonempty list of positive integers".into())
            } else {
                Ok(o)
            }
        }),
        Value::String(s) => parse_orders(s),
        other => {
            let m = small::<u32>(&int(other, "m")?, "m")?;
            parse_orders(&m.to_string())
        }
    }
}

pub fn parse_spec(text: &str) -> Result<SpecDocument, String> {
    let root: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let obj = root.as_object().ok_or("spec must be a JSON object")?;
    let kind = field(obj, "kind")?.as_str().ok_or("kind must be a string")?;
    let p = int(field(obj, "p")?, "p")?;
    let n_big = int(field(obj, "n")?, "n")?;
    let g_base = obj.get("g_base").map(|v| int(v, "g_base")).transpose()?.unwrap_or_default();
    let places = field(obj, "places")?.as_array().ok_or("places must be an array")?;
    let place_obj = |i: usize, v: &'_ Value| -> Result<Map<String, Value>, String> {
        v.as_object().cloned().ok_or_else(|| format!("place {i} must be an object"))
    };

    let spec = match kind {
        "cyclic" => {
            let n: u32 = small(&n_big, "n")?;
            let group = GroupParams::new(p, n);
            let places = places
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let o = place_obj(i, v)?;
                    let phi = field(&o, "phi")?
                        .as_array()
                        .ok_or_else(|| format!("place {i}: cyclic phi must be an array"))?
                        .iter()
                        .map(|x| int(x, "phi"))
                        .collect::<Result<Vec<_>, _>>()?;
                    let e = match o.get("e") {
                        Some(v) => small(&int(v, "e")?, "e")?,
                        None => n,
                    };
                    Ok(CyclicPlace::new(e, phi))
                })
                .collect::<Result<_, String>>()?;
            ExtensionSpec::CyclicTower { group, places, g_base }
        }
        "elementary_abelian" | "elab" => {
            if g_base != BigInt::from(0) {
                return Err("elementary abelian extensions are over a rational base (g_base = 0)".into());
            }
            let group = GroupParams::new(p, small(&n_big, "n")?);
            let places = places
                .iter()
                .enumerate()
                .map(|(i, v)| Ok(ElabPlace::new(int(field(&place_obj(i, v)?, "phi")?, "phi")?)))
                .collect::<Result<_, String>>()?;
            ExtensionSpec::ElementaryAbelian { group, places }
        }
        "tame" => {
            let places = places
                .iter()
                .enumerate()
                .map(|(i, v)| Ok(TamePlace::new(int(field(&place_obj(i, v)?, "vu")?, "vu")?, &n_big)))
                .collect::<Result<_, String>>()?;
            ExtensionSpec::TameKummer { n_deg: n_big, p, places, g_base }
        }
        other => return Err(format!("unknown kind {other:?}")),
    };
    let orders = obj.get("m").map(orders).transpose()?;
    Ok(SpecDocument { spec, orders })
}

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

pub fn spec_to_json(spec: &ExtensionSpec) -> Value {
    match spec {
        ExtensionSpec::CyclicTower { group, places, g_base } => json!({
            "kind": spec.kind().name(),
            "p": s(group.p()),
            "n": s(group.n()),
            "g_base": s(g_base),
            "places": places.iter().map(|pl| json!({
                "e": s(pl.e),
                "phi": pl.phi.iter().map(s).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
        ExtensionSpec::ElementaryAbelian { group, places } => json!({
            "kind": spec.kind().name(),
            "p": s(group.p()),
            "n": s(group.n()),
            "g_base": s(0),
            "places": places.iter().map(|pl| json!({"phi": s(&pl.phi)})).collect::<Vec<_>>(),
        }),
        ExtensionSpec::TameKummer { n_deg, p, places, g_base } => json!({
            "kind": spec.kind().name(),
            "p": s(p),
            "n": s(n_deg),
            "g_base": s(g_base),
            "places": places.iter().map(|pl| json!({"vu": s(&pl.vu)})).collect::<Vec<_>>(),
        }),
    }
}

pub fn document_to_json(doc: &SpecDocument) -> Value {
    let mut v = spec_to_json(&doc.spec);
    if let (Some(orders), Some(obj)) = (&doc.orders, v.as_object_mut()) {
        obj.insert("m".into(), Value::Array(orders.iter().map(s).collect()));
    }
    v
}
