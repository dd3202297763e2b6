//! Brute-force re-runs behind `--with-oracle`.

use defdyn::defsets::{is_left_generic, DefinableSet};
use defdyn::ellis;
use defdyn::flows;
use defdyn::group::{GroupContext, GroupElement};
use defdyn::oracle::{self, WindowUniverse};
use defdyn::typespace::TypePoint;
use serde_json::{json, Value};

use crate::task::{Subject, Task};

const SHIFT_BOUND: i64 = 20;

fn skipped(reason: &str) -> Value {
    json!({ "checked": false, "reason": reason })
}

fn verdict(agrees: bool, detail: Value) -> Value {
    json!({ "checked": true, "agrees": agrees, "detail": detail })
}

fn member(y: &DefinableSet, x: i64) -> defdyn::Result<bool> {
    y.contains_element(&GroupElement::Int(x))
}

fn sorted_subflows(mut s: Vec<Vec<TypePoint>>) -> Vec<Vec<TypePoint>> {
    for part in &mut s {
        part.sort();
    }
    s.sort();
    s
}

/// `Some` for tasks that have an independent counterpart.
pub fn cross_check(ctx: &GroupContext, task: &Task) -> Option<defdyn::Result<Value>> {
    let run = || -> defdyn::Result<Value> {
        Ok(match (ctx, task) {
            (GroupContext::Integers, Task::DifferenceSet(y)) => {
                let u = match WindowUniverse::for_set(y, 1) {
                    Ok(u) if u.radius <= 2000 => u,
                    _ => return Ok(skipped("window universe too large")),
                };
                let brute = oracle::oracle_difference_set(y, u);
                let d = y.difference_set(ctx)?;
                let half = u.radius / 2;
                let mut structured = Vec::new();
                for x in -half..=half {
                    if member(&d, x)? {
                        structured.push(x);
                    }
                }
                verdict(brute == structured, json!({ "window": half, "points": brute.len() }))
            }
            (GroupContext::Finite(g), Task::DifferenceSet(y)) => {
                let members = y.as_finite().map(|f| f.elements()).unwrap_or_default();
                let brute = oracle::oracle_difference_set_finite(g, &members);
                let d = y.difference_set(ctx)?;
                let structured = d.as_finite().map(|f| f.elements()).unwrap_or_default();
                verdict(brute == structured, json!({ "elements": brute }))
            }
            (GroupContext::Integers, Task::IsLeftGeneric(y)) => {
                // the universe must dwarf the shift range or a shifted ray covers it
                let u = match WindowUniverse::for_set(y, SHIFT_BOUND) {
                    Ok(u) if u.radius <= 4000 => u,
                    _ => return Ok(skipped("window universe too large")),
                };
                let structured = is_left_generic(ctx, y)?.is_generic();
                let found = oracle::oracle_generic(y, 6, SHIFT_BOUND, u);
                // a bounded search that finds nothing says nothing about a
                // generic verdict
                let conclusive = found.is_some() || !structured;
                verdict(found.is_none() || structured, json!({ "cover": found, "conclusive": conclusive }))
            }
            (GroupContext::Finite(g), Task::IsLeftGeneric(y)) => {
                let members = y.as_finite().map(|f| f.elements()).unwrap_or_default();
                let found = oracle::oracle_generic_finite(g, &members, g.order());
                let structured = is_left_generic(ctx, y)?.is_generic();
                verdict(found.is_some() == structured, json!({ "cover": found }))
            }
            (GroupContext::Integers, Task::Star(p, q)) => {
                let level = p.level().max(q.level()).max(1);
                let same_level = [p, q].iter().all(|t| t.is_realized() || t.level() == level);
                if level > 1000 {
                    return Ok(skipped("numeric realization stops at level 1000"));
                }
                if !same_level {
                    return Ok(skipped("numeric realization needs both limit types at one level"));
                }
                let brute = oracle::oracle_star(p, q, level, 1_000, 1_000_000_000 * level as i64)?;
                let structured = ellis::star(ctx, p, q)?;
                verdict(brute == structured, json!({ "type": defdyn::json::type_to_json(&brute) }))
            }
            (GroupContext::Integers, Task::MinimalSubflows(Subject::Space(space))) => {
                let n = space.level().get();
                if n > 8 {
                    return Ok(skipped("exhaustive search stops at level 8"));
                }
                let brute = sorted_subflows(oracle::oracle_minimal_subflows(n)?);
                let structured = sorted_subflows(flows::minimal_subflows(space)?);
                verdict(brute == structured, json!({ "count": brute.len() }))
            }
            (GroupContext::Integers, Task::FindIdempotents(space)) => {
                let n = space.level().get();
                if n > 8 {
                    return Ok(skipped("exhaustive search stops at level 8"));
                }
                let mut brute = oracle::oracle_idempotents(n)?;
                let mut structured = ellis::find_idempotents(space)?;
                brute.sort();
                structured.sort();
                verdict(brute == structured, json!({ "count": brute.len() }))
            }
            _ => return Ok(Value::Null),
        })
    };
    match run() {
        Ok(Value::Null) => None,
        other => Some(other),
    }
}
