//! JSON encodings of backends, elements, sets, types and flows.
//!
//! Every `*_to_json` output parses back to an equal value with the matching
//! `parse_*` function. Parsers also accept a few shorthands for sets:
//! `"evens"`, `"odds"`, `"all"`, `"empty"`, `{"ge": k}`, `{"le": k}`,
//! `{"residues": [..], "mod": m}`, a bare element list, and Boolean
//! combinations `{"union": [..]}`, `{"intersection": [..]}`,
//! `{"complement": s}`.

use serde_json::{json, Map, Value};

use crate::defsets::{DefinableSet, PresburgerSet};
use crate::error::{Error, Result};
use crate::flows::{FiniteFlow, FlowAction};
use crate::group::{catalog, FiniteGroup, GroupContext, GroupElement};
use crate::typespace::{Sign, TypePoint};

fn bad(what: &str, v: &Value) -> Error {
    Error::Invalid(format!("cannot read {what} from {v}"))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(what, v))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad(what, v))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    usize::try_from(as_u64(v, what)?).map_err(|_| bad(what, v))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Invalid(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

fn u64_list(v: &Value, what: &str) -> Result<Vec<u64>> {
    array(v, what)?.iter().map(|x| as_u64(x, what)).collect()
}

fn usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    array(v, what)?.iter().map(|x| as_usize(x, what)).collect()
}

// ---- groups ----

/// `"integers"`, `{"cyclic": n}`, `{"named": "D4"}`, `{"table": [[..]]}`
/// or `{"product": [left, right]}`.
pub fn parse_group(v: &Value) -> Result<GroupContext> {
    if let Some(s) = v.as_str() {
        return match s {
            "integers" | "Z" => Ok(GroupContext::Integers),
            "trivial" => GroupContext::cyclic(1),
            name => catalog::by_name(name)
                .map(GroupContext::Finite)
                .ok_or_else(|| Error::Invalid(format!("unknown group \"{name}\""))),
        };
    }
    let obj = v.as_object().ok_or_else(|| bad("group", v))?;
    if let Some(n) = obj.get("cyclic") {
        return GroupContext::cyclic(as_usize(n, "cyclic order")?);
    }
    if let Some(name) = obj.get("named") {
        return parse_group(name);
    }
    if let Some(rows) = obj.get("table") {
        let rows = array(rows, "table")?;
        let order = rows.len();
        let mut table = Vec::with_capacity(order * order);
        for row in rows {
            let row = usize_list(row, "table row")?;
            if row.len() != order {
                return Err(Error::NotAGroup("table is not square".into()));
            }
            table.extend(row);
        }
        return GroupContext::finite(order, table);
    }
    if let Some(pair) = obj.get("product") {
        let pair = array(pair, "product")?;
        if pair.len() != 2 {
            return Err(bad("product of two groups", v));
        }
        return GroupContext::product(parse_group(&pair[0])?, parse_group(&pair[1])?);
    }
    Err(bad("group", v))
}

fn finite_group_to_json(g: &FiniteGroup) -> Value {
    if catalog::cyclic(g.order()).map_or(false, |c| &c == g) {
        return json!({ "cyclic": g.order() });
    }
    if let Some((name, _)) = catalog::bundled().into_iter().find(|(_, h)| h == g) {
        return json!({ "named": name });
    }
    let n = g.order();
    let rows: Vec<&[usize]> = g.table().chunks(n).collect();
    json!({ "table": rows })
}

pub fn group_to_json(ctx: &GroupContext) -> Value {
    match ctx {
        GroupContext::Integers => json!("integers"),
        GroupContext::Finite(g) => finite_group_to_json(g),
        GroupContext::Product(a, b) => json!({ "product": [group_to_json(a), group_to_json(b)] }),
    }
}

// ---- elements ----

/// An integer, an element index, or a two-element array for products.
pub fn parse_element(ctx: &GroupContext, v: &Value) -> Result<GroupElement> {
    let g = match ctx {
        GroupContext::Integers => GroupElement::Int(as_i64(v, "integer")?),
        GroupContext::Finite(_) => GroupElement::Index(as_usize(v, "element index")?),
        GroupContext::Product(a, b) => {
            let pair = array(v, "pair")?;
            if pair.len() != 2 {
                return Err(bad("pair", v));
            }
            GroupElement::pair(parse_element(a, &pair[0])?, parse_element(b, &pair[1])?)
        }
    };
    ctx.check(&g)?;
    Ok(g)
}

pub fn element_to_json(g: &GroupElement) -> Value {
    match g {
        GroupElement::Int(x) => json!(x),
        GroupElement::Index(i) => json!(i),
        GroupElement::Pair(a, b) => json!([element_to_json(a), element_to_json(b)]),
    }
}

// ---- sets ----

fn residue_mask(modulus: u64, residues: &[u64]) -> Result<Vec<bool>> {
    let mut mask = vec![false; modulus as usize];
    for &r in residues {
        if r >= modulus {
            return Err(Error::Invalid(format!("residue {r} not below modulus {modulus}")));
        }
        mask[r as usize] = true;
    }
    Ok(mask)
}

fn parse_presburger(obj: &Map<String, Value>) -> Result<PresburgerSet> {
    let modulus = as_u64(field(obj, "mod")?, "modulus")?;
    if modulus == 0 || modulus > crate::defsets::modulus_guard() {
        return Err(Error::ModulusGuard { modulus, guard: crate::defsets::modulus_guard() });
    }
    if let Some(res) = obj.get("residues") {
        return PresburgerSet::periodic(modulus, &u64_list(res, "residues")?);
    }
    let up = residue_mask(modulus, &u64_list(field(obj, "up")?, "up residues")?)?;
    let down = residue_mask(modulus, &u64_list(field(obj, "down")?, "down residues")?)?;
    let (lo, hi, bits) = match obj.get("window") {
        None => (0, -1, Vec::new()),
        Some(w) => {
            let w = w.as_object().ok_or_else(|| bad("window", w))?;
            let lo = as_i64(field(w, "lo")?, "window start")?;
            let hi = as_i64(field(w, "hi")?, "window end")?;
            if hi < lo.saturating_sub(1) || hi.saturating_sub(lo) >= crate::defsets::MAX_WINDOW {
                return Err(Error::Invalid(format!("bad window [{lo}, {hi}]")));
            }
            let mut bits = vec![false; (hi - lo + 1) as usize];
            for x in array(field(w, "members")?, "window members")? {
                let x = as_i64(x, "window member")?;
                if x < lo || x > hi {
                    return Err(Error::Invalid(format!("window member {x} outside [{lo}, {hi}]")));
                }
                bits[(x - lo) as usize] = true;
            }
            (lo, hi, bits)
        }
    };
    PresburgerSet::new(modulus, up, down, lo, hi, bits)
}

fn fold(ctx: &GroupContext, parts: &Value, union: bool) -> Result<DefinableSet> {
    let mut acc = if union { DefinableSet::empty(ctx) } else { DefinableSet::full(ctx) };
    for part in array(parts, "set list")? {
        let s = parse_set(ctx, part)?;
        acc = if union { acc.union(&s)? } else { acc.intersection(&s)? };
    }
    Ok(acc)
}

/// Reads a definable set over `ctx`.
pub fn parse_set(ctx: &GroupContext, v: &Value) -> Result<DefinableSet> {
    if let Some(s) = v.as_str() {
        return match (s, ctx) {
            ("all", _) => Ok(DefinableSet::full(ctx)),
            ("empty", _) => Ok(DefinableSet::empty(ctx)),
            ("evens", GroupContext::Integers) => Ok(PresburgerSet::evens().into()),
            ("odds", GroupContext::Integers) => Ok(PresburgerSet::odds().into()),
            _ => Err(bad("set", v)),
        };
    }
    if let Some(items) = v.as_array() {
        let elements = items.iter().map(|x| parse_element(ctx, x)).collect::<Result<Vec<_>>>()?;
        return DefinableSet::from_elements(ctx, &elements);
    }
    let obj = v.as_object().ok_or_else(|| bad("set", v))?;
    if let Some(items) = obj.get("elements") {
        return parse_set(ctx, items);
    }
    if let Some(parts) = obj.get("union") {
        return fold(ctx, parts, true);
    }
    if let Some(parts) = obj.get("intersection") {
        return fold(ctx, parts, false);
    }
    if let Some(inner) = obj.get("complement") {
        return parse_set(ctx, inner)?.complement();
    }
    match ctx {
        GroupContext::Integers => {
            if let Some(k) = obj.get("ge") {
                return Ok(PresburgerSet::at_least(as_i64(k, "bound")?)?.into());
            }
            if let Some(k) = obj.get("le") {
                return Ok(PresburgerSet::at_most(as_i64(k, "bound")?)?.into());
            }
            Ok(parse_presburger(obj)?.into())
        }
        GroupContext::Product(a, b) => {
            let rects = array(field(obj, "rects")?, "rectangles")?
                .iter()
                .map(|r| {
                    let r = array(r, "rectangle")?;
                    if r.len() != 2 {
                        return Err(Error::Invalid("a rectangle has two sides".into()));
                    }
                    Ok((parse_set(a, &r[0])?, parse_set(b, &r[1])?))
                })
                .collect::<Result<Vec<_>>>()?;
            DefinableSet::rectangles(ctx, rects)
        }
        GroupContext::Finite(_) => Err(bad("finite-group set", v)),
    }
}

fn residues(mask: &[bool]) -> Vec<usize> {
    (0..mask.len()).filter(|&r| mask[r]).collect()
}

/// Canonical JSON for a set: explicit fields, no shorthands.
pub fn set_to_json(s: &DefinableSet) -> Value {
    match s {
        DefinableSet::Finite(f) => json!({ "elements": f.elements() }),
        DefinableSet::Presburger(p) => {
            let (lo, hi) = p.window();
            let members: Vec<i64> = (lo..=hi).filter(|&x| p.bits()[(x - lo) as usize]).collect();
            json!({
                "mod": p.modulus(),
                "up": residues(p.up()),
                "down": residues(p.down()),
                "window": { "lo": lo, "hi": hi, "members": members },
            })
        }
        DefinableSet::Product(p) => {
            let rects: Vec<Value> = p.rects().iter().map(|(a, b)| json!([set_to_json(a), set_to_json(b)])).collect();
            json!({ "rects": rects })
        }
    }
}

// ---- types ----

fn parse_sign(v: &Value) -> Result<Sign> {
    match v.as_str() {
        Some("+") => Ok(Sign::Plus),
        Some("-") => Ok(Sign::Minus),
        _ => Err(bad("sign", v)),
    }
}

/// `{"kind": "realized", "value": g}`, `{"kind": "limit", "sign": "+",
/// "res": r, "mod": n}` or `{"kind": "pair", "left": p, "right": q}`.
pub fn parse_type(ctx: &GroupContext, v: &Value) -> Result<TypePoint> {
    let obj = v.as_object().ok_or_else(|| bad("type", v))?;
    let kind = field(obj, "kind")?.as_str().ok_or_else(|| bad("type kind", v))?;
    let p = match kind {
        "realized" => TypePoint::realized(parse_element(ctx, field(obj, "value")?)?),
        "limit" => {
            let sign = parse_sign(field(obj, "sign")?)?;
            let modulus = as_u64(field(obj, "mod")?, "level")?;
            let residue = as_u64(field(obj, "res")?, "residue")?;
            if modulus == 0 || residue >= modulus {
                return Err(bad("limit type", v));
            }
            TypePoint::Limit { sign, residue, modulus }
        }
        "pair" => {
            let GroupContext::Product(a, b) = ctx else {
                return Err(Error::ContextMismatch("pair type outside a product".into()));
            };
            TypePoint::pair(parse_type(a, field(obj, "left")?)?, parse_type(b, field(obj, "right")?)?)
        }
        _ => return Err(bad("type kind", v)),
    };
    p.check(ctx)?;
    Ok(p)
}

pub fn type_to_json(p: &TypePoint) -> Value {
    match p {
        TypePoint::Realized(g) => json!({ "kind": "realized", "value": element_to_json(g) }),
        TypePoint::Limit { sign, residue, modulus } => {
            json!({ "kind": "limit", "sign": sign.to_string(), "res": residue, "mod": modulus })
        }
        TypePoint::Pair(a, b) => json!({ "kind": "pair", "left": type_to_json(a), "right": type_to_json(b) }),
    }
}

// ---- flows ----

/// `{"carrier": k, "pi": [..], "base": i}` over the integers, or
/// `{"carrier": k, "table": [[..]], "base": i}` over a finite group. The
/// base point is optional.
pub fn parse_flow(ctx: &GroupContext, v: &Value) -> Result<FiniteFlow> {
    let obj = v.as_object().ok_or_else(|| bad("flow", v))?;
    let base = match obj.get("base") {
        None | Some(Value::Null) => None,
        Some(b) => Some(as_usize(b, "base point")?),
    };
    let action = if let Some(pi) = obj.get("pi") {
        FlowAction::Shift(usize_list(pi, "permutation")?)
    } else {
        let rows = array(field(obj, "table")?, "action table")?;
        FlowAction::Table(rows.iter().map(|r| usize_list(r, "action row")).collect::<Result<_>>()?)
    };
    let carrier = match obj.get("carrier") {
        Some(k) => as_usize(k, "carrier size")?,
        None => match &action {
            FlowAction::Shift(pi) => pi.len(),
            FlowAction::Table(rows) => rows.first().map_or(0, |r| r.len()),
        },
    };
    FiniteFlow::new(ctx.clone(), carrier, action, base)
}

pub fn flow_to_json(flow: &FiniteFlow) -> Value {
    let mut obj = Map::new();
    obj.insert("carrier".into(), json!(flow.carrier()));
    match flow.action() {
        FlowAction::Shift(pi) => obj.insert("pi".into(), json!(pi)),
        FlowAction::Table(rows) => obj.insert("table".into(), json!(rows)),
    };
    if let Some(b) = flow.base() {
        obj.insert("base".into(), json!(b));
    }
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> GroupContext {
        GroupContext::Integers
    }

    fn round_trip_set(ctx: &GroupContext, s: &DefinableSet) {
        assert_eq!(&parse_set(ctx, &set_to_json(s)).unwrap(), s);
    }

    #[test]
    fn set_shorthands() {
        let evens = parse_set(&z(), &json!("evens")).unwrap();
        assert_eq!(evens, PresburgerSet::evens().into());
        let explicit = parse_set(&z(), &json!({"mod": 2, "up": [0], "down": [0]})).unwrap();
        assert_eq!(explicit, evens);
        let ge = parse_set(&z(), &json!({"ge": 3})).unwrap();
        assert!(ge.contains_element(&GroupElement::Int(3)).unwrap());
        assert!(!ge.contains_element(&GroupElement::Int(2)).unwrap());
        let comb = parse_set(&z(), &json!({"union": ["evens", {"elements": [1]}]})).unwrap();
        assert!(comb.contains_element(&GroupElement::Int(1)).unwrap());
        assert!(!comb.contains_element(&GroupElement::Int(3)).unwrap());
        let c = parse_set(&z(), &json!({"complement": "evens"})).unwrap();
        assert_eq!(c, PresburgerSet::odds().into());
        assert!(parse_set(&z(), &json!({"mod": 0, "up": [], "down": []})).is_err());
        assert!(parse_set(&z(), &json!("evenz")).is_err());
    }

    #[test]
    fn sets_round_trip() {
        let sets = [
            json!("evens"),
            json!("empty"),
            json!("all"),
            json!({"ge": -4}),
            json!({"mod": 6, "up": [1, 4], "down": [0], "window": {"lo": -3, "hi": 5, "members": [-3, 0, 5]}}),
            json!([7, -2, 11]),
        ];
        for s in &sets {
            round_trip_set(&z(), &parse_set(&z(), s).unwrap());
        }
        let c6 = parse_group(&json!({"cyclic": 6})).unwrap();
        round_trip_set(&c6, &parse_set(&c6, &json!([1, 4])).unwrap());
        let prod = parse_group(&json!({"product": ["integers", {"cyclic": 2}]})).unwrap();
        let s = parse_set(&prod, &json!({"rects": [["evens", [0]], [{"ge": 5}, "all"]]})).unwrap();
        round_trip_set(&prod, &s);
    }

    #[test]
    fn groups_round_trip() {
        for v in [
            json!("integers"),
            json!({"cyclic": 5}),
            json!({"named": "Q8"}),
            json!({"product": [{"named": "S3"}, "integers"]}),
        ] {
            let g = parse_group(&v).unwrap();
            assert_eq!(group_to_json(&g), v);
            assert_eq!(parse_group(&group_to_json(&g)).unwrap(), g);
        }
        let t = parse_group(&json!({"table": [[0, 1], [1, 0]]})).unwrap();
        assert_eq!(group_to_json(&t), json!({"cyclic": 2}));
        assert!(parse_group(&json!({"table": [[0, 0], [1, 0]]})).is_err());
        assert!(parse_group(&json!("nope")).is_err());
    }

    #[test]
    fn types_round_trip() {
        let v = json!({"kind": "limit", "sign": "+", "res": 1, "mod": 4});
        let p = parse_type(&z(), &v).unwrap();
        assert_eq!(p, TypePoint::Limit { sign: Sign::Plus, residue: 1, modulus: 4 });
        assert_eq!(type_to_json(&p), v);
        let r = parse_type(&z(), &json!({"kind": "realized", "value": 7})).unwrap();
        assert_eq!(r, TypePoint::Realized(GroupElement::Int(7)));
        assert_eq!(parse_type(&z(), &type_to_json(&r)).unwrap(), r);
        let prod = parse_group(&json!({"product": ["integers", {"cyclic": 3}]})).unwrap();
        let pair = json!({"kind": "pair",
            "left": {"kind": "limit", "sign": "-", "res": 0, "mod": 2},
            "right": {"kind": "realized", "value": 2}});
        let q = parse_type(&prod, &pair).unwrap();
        assert_eq!(type_to_json(&q), pair);
        assert!(parse_type(&z(), &json!({"kind": "limit", "sign": "+", "res": 4, "mod": 4})).is_err());
    }

    #[test]
    fn flows_round_trip() {
        let v = json!({"carrier": 3, "pi": [1, 2, 0], "base": 0});
        let f = parse_flow(&z(), &v).unwrap();
        assert_eq!(flow_to_json(&f), v);
        let c2 = parse_group(&json!({"cyclic": 2})).unwrap();
        let t = json!({"carrier": 2, "table": [[0, 1], [1, 0]]});
        assert_eq!(flow_to_json(&parse_flow(&c2, &t).unwrap()), t);
        assert!(parse_flow(&z(), &json!({"pi": [0], "base": 3})).is_err());
    }
}
