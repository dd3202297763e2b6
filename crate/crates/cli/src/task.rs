//! Typed tasks: parameters are read and validated before anything runs.

use defdyn::amenability::{self, InvariantMeasure, PestovVerdict, SetFamily};
use defdyn::compactify::{self, BoundedEquivalence, CompactQuotient, CompactificationTarget};
use defdyn::defsets::{is_left_generic, BoolOp, DefinableSet, Genericity, Obstruction};
use defdyn::ellis;
use defdyn::flows::{self, DefinableMap, FiniteFlow, Subgroup};
use defdyn::group::{FiniteGroup, GroupContext, GroupElement};
use defdyn::json::{
    element_to_json, group_to_json, parse_element, parse_flow, parse_group, parse_set, parse_type, set_to_json,
    type_to_json,
};
use defdyn::typespace::{self, Level, LevelTypeSpace, Sign, TypePoint};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::catalog::{self, OpSpec};

/// Where a level-or-flow task runs.
#[derive(Clone, Debug)]
pub enum Subject {
    Space(LevelTypeSpace),
    Flow(FiniteFlow),
}

#[derive(Clone, Debug)]
pub enum Task {
    Compose(GroupElement, GroupElement),
    Invert(GroupElement),
    BooleanOp(BoolOp, DefinableSet, Option<DefinableSet>),
    Translate(GroupElement, DefinableSet),
    DifferenceSet(DefinableSet),
    IsLeftGeneric(DefinableSet),
    Contains(TypePoint, DefinableSet),
    Restrict(TypePoint, Level),
    ApplyGroup(GroupElement, TypePoint),
    ActingSet(TypePoint, DefinableSet),
    LimitOf { sign: Sign, residue: i64, level: Level, count: usize },
    Star(TypePoint, TypePoint),
    StarViaSchema(TypePoint, TypePoint),
    RightTranslation(LevelTypeSpace, TypePoint),
    FindIdempotents(LevelTypeSpace),
    CheckDefinableFlow(FiniteFlow),
    UniversalAmbitMorphism(LevelTypeSpace, FiniteFlow),
    MinimalSubflows(Subject),
    IsLeftIdeal(LevelTypeSpace, Vec<TypePoint>),
    UniversalMinimalFlow(LevelTypeSpace),
    ExtendDefinableMap(LevelTypeSpace, DefinableMap),
    KernelOfAction(Subject),
    InvariantMeasure(Subject),
    FixedPoints(Subject),
    PestovCheck(SetFamily),
    KernelIntersection(SetFamily),
    SingletonMinimalCriterion(LevelTypeSpace, SetFamily),
    MeasureDefinabilityCheck(LevelTypeSpace, SetFamily),
    PestovConsistency(Vec<Level>, SetFamily),
    LogicQuotient(BoundedEquivalence),
    G00AtLevel(Level),
    UniversalCompactification(Level, Vec<CompactificationTarget>),
    InverseSystem(Vec<Level>),
    DefinableHomomorphismCheck(FiniteGroup, DefinableMap, Option<Level>),
}

/// Scenario-wide settings visible to every task.
#[derive(Clone, Debug)]
pub struct Defaults {
    pub ctx: GroupContext,
    pub level: Option<Level>,
    pub levels: Option<Vec<Level>>,
    pub level_guard: u64,
}

pub type SchemaResult<T> = std::result::Result<T, String>;

struct Params<'a> {
    spec: &'static OpSpec,
    obj: &'a Map<String, Value>,
    defaults: &'a Defaults,
}

fn core<T>(r: defdyn::Result<T>) -> SchemaResult<T> {
    r.map_err(|e| e.to_string())
}

impl<'a> Params<'a> {
    fn get(&self, key: &str) -> Option<&'a Value> {
        self.obj.get(key)
    }

    fn need(&self, key: &str) -> SchemaResult<&'a Value> {
        self.get(key).ok_or_else(|| format!("{}: missing parameter \"{key}\"", self.spec.name))
    }

    fn ctx(&self) -> &GroupContext {
        &self.defaults.ctx
    }

    fn element(&self, key: &str) -> SchemaResult<GroupElement> {
        core(parse_element(self.ctx(), self.need(key)?))
    }

    fn set(&self, key: &str) -> SchemaResult<DefinableSet> {
        core(parse_set(self.ctx(), self.need(key)?))
    }

    fn tp(&self, key: &str) -> SchemaResult<TypePoint> {
        core(parse_type(self.ctx(), self.need(key)?))
    }

    fn flow(&self, key: &str) -> SchemaResult<FiniteFlow> {
        core(parse_flow(self.ctx(), self.need(key)?))
    }

    fn int(&self, key: &str) -> SchemaResult<Option<i64>> {
        self.get(key)
            .map(|v| v.as_i64().ok_or_else(|| format!("{}: \"{key}\" must be an integer", self.spec.name)))
            .transpose()
    }

    fn level_value(&self, v: &Value) -> SchemaResult<Level> {
        let n = v.as_u64().ok_or_else(|| format!("{}: a level must be a positive integer", self.spec.name))?;
        if n > self.defaults.level_guard {
            return Err(format!("{}: level {n} exceeds the level guard {}", self.spec.name, self.defaults.level_guard));
        }
        core(Level::new(n))
    }

    /// The task's level, the scenario level, or 1 on backends without the
    /// integers.
    fn level(&self) -> SchemaResult<Level> {
        if let Some(v) = self.get("level") {
            return self.level_value(v);
        }
        if let Some(l) = self.defaults.level {
            return Ok(l);
        }
        if self.ctx().has_integers() {
            Err(format!("{}: no level given", self.spec.name))
        } else {
            Ok(Level::new(1).expect("positive"))
        }
    }

    fn space(&self) -> SchemaResult<LevelTypeSpace> {
        Ok(LevelTypeSpace::new(self.ctx().clone(), self.level()?))
    }

    fn levels(&self, key: &str) -> SchemaResult<Vec<Level>> {
        match self.get(key) {
            Some(Value::Array(items)) => items.iter().map(|v| self.level_value(v)).collect(),
            Some(_) => Err(format!("{}: \"{key}\" must be a list of levels", self.spec.name)),
            None => self.defaults.levels.clone().ok_or_else(|| format!("{}: no levels given", self.spec.name)),
        }
    }

    fn subject(&self) -> SchemaResult<Subject> {
        if self.get("flow").is_some() {
            if self.get("level").is_some() {
                return Err(format!("{}: give either a level or a flow", self.spec.name));
            }
            return Ok(Subject::Flow(self.flow("flow")?));
        }
        Ok(Subject::Space(self.space()?))
    }

    fn family(&self) -> SchemaResult<SetFamily> {
        let moduli = self.int("moduli")?.unwrap_or(6);
        if !(1..=16).contains(&moduli) {
            return Err(format!("{}: moduli must lie in 1..=16", self.spec.name));
        }
        let window = self.int("window")?;
        match (self.ctx(), window) {
            (GroupContext::Integers, Some(r)) => {
                Ok(SetFamily::Integers { max_modulus: moduli as u64, window_radius: Some(r) })
            }
            (_, Some(_)) => Err(format!("{}: window bounds apply to the integers only", self.spec.name)),
            (ctx, None) => Ok(SetFamily::standard(ctx, moduli as u64)),
        }
    }

    fn map(&self, key: &str) -> SchemaResult<DefinableMap> {
        serde_json::from_value(self.need(key)?.clone()).map_err(|e| format!("{}: bad map: {e}", self.spec.name))
    }
}

fn op_name_and_params(v: &Value) -> SchemaResult<(&str, Map<String, Value>)> {
    match v {
        Value::String(name) => Ok((name, Map::new())),
        Value::Object(obj) => {
            let name = obj.get("op").and_then(Value::as_str).ok_or("a task needs an \"op\" name")?;
            let mut params = Map::new();
            for (k, val) in obj {
                match (k.as_str(), val) {
                    ("op", _) => {}
                    ("params", Value::Object(inner)) => params.extend(inner.clone()),
                    _ => {
                        params.insert(k.clone(), val.clone());
                    }
                }
            }
            Ok((name, params))
        }
        _ => Err("a task is an operation name or an object".into()),
    }
}

/// Reads one task entry of a scenario.
pub fn parse_task(v: &Value, defaults: &Defaults) -> SchemaResult<(&'static str, Task)> {
    let (name, obj) = op_name_and_params(v)?;
    let spec = catalog::find(name).ok_or_else(|| format!("unknown operation \"{name}\""))?;
    for key in obj.keys() {
        if !spec.params.iter().any(|p| p.name == key) {
            return Err(format!("{name}: unknown parameter \"{key}\""));
        }
    }
    let p = Params { spec, obj: &obj, defaults };
    let task = match name {
        "compose" => Task::Compose(p.element("g")?, p.element("h")?),
        "invert" => Task::Invert(p.element("g")?),
        "boolean-op" => {
            let kind = match p.need("kind")?.as_str() {
                Some("union") => BoolOp::Union,
                Some("intersection") => BoolOp::Intersection,
                Some("complement") => BoolOp::Complement,
                _ => return Err("boolean-op: kind is union, intersection or complement".into()),
            };
            let b = if p.get("b").is_some() { Some(p.set("b")?) } else { None };
            if (kind == BoolOp::Complement) != b.is_none() {
                return Err("boolean-op: complement takes one set, the others two".into());
            }
            Task::BooleanOp(kind, p.set("a")?, b)
        }
        "translate" => Task::Translate(p.element("g")?, p.set("set")?),
        "difference-set" => Task::DifferenceSet(p.set("set")?),
        "is-left-generic" => Task::IsLeftGeneric(p.set("set")?),
        "contains" => Task::Contains(p.tp("p")?, p.set("set")?),
        "restrict" => Task::Restrict(p.tp("p")?, p.level_value(p.need("to")?)?),
        "apply-group" => Task::ApplyGroup(p.element("g")?, p.tp("p")?),
        "acting-set" => Task::ActingSet(p.tp("p")?, p.set("set")?),
        "limit-of" => {
            if !p.ctx().is_integers() {
                return Err("limit-of: limit types exist on the integers only".into());
            }
            let sign = match p.need("sign")?.as_str() {
                Some("+") => Sign::Plus,
                Some("-") => Sign::Minus,
                _ => return Err("limit-of: sign is \"+\" or \"-\"".into()),
            };
            let residue = p.int("residue")?.ok_or("limit-of: missing parameter \"residue\"")?;
            let count = p.int("count")?.unwrap_or(8);
            if !(0..=1000).contains(&count) {
                return Err("limit-of: count must lie in 0..=1000".into());
            }
            Task::LimitOf { sign, residue, level: p.level()?, count: count as usize }
        }
        "star" => Task::Star(p.tp("p")?, p.tp("q")?),
        "star-via-schema" => Task::StarViaSchema(p.tp("p")?, p.tp("q")?),
        "right-translation" => Task::RightTranslation(p.space()?, p.tp("q")?),
        "find-idempotents" => Task::FindIdempotents(p.space()?),
        "check-definable-flow" => Task::CheckDefinableFlow(p.flow("flow")?),
        "universal-ambit-morphism" => Task::UniversalAmbitMorphism(p.space()?, p.flow("flow")?),
        "minimal-subflows" => Task::MinimalSubflows(p.subject()?),
        "is-left-ideal" => {
            let items = p.need("subset")?.as_array().ok_or("is-left-ideal: subset must be a list of types")?;
            let subset = items.iter().map(|v| core(parse_type(p.ctx(), v))).collect::<SchemaResult<_>>()?;
            Task::IsLeftIdeal(p.space()?, subset)
        }
        "universal-minimal-flow" => Task::UniversalMinimalFlow(p.space()?),
        "extend-definable-map" => Task::ExtendDefinableMap(p.space()?, p.map("map")?),
        "kernel-of-action" => Task::KernelOfAction(p.subject()?),
        "invariant-measure" => Task::InvariantMeasure(p.subject()?),
        "fixed-points" => Task::FixedPoints(p.subject()?),
        "pestov-check" => Task::PestovCheck(p.family()?),
        "kernel-intersection" => Task::KernelIntersection(p.family()?),
        "singleton-minimal-criterion" => Task::SingletonMinimalCriterion(p.space()?, p.family()?),
        "measure-definability-check" => Task::MeasureDefinabilityCheck(p.space()?, p.family()?),
        "pestov-consistency" => Task::PestovConsistency(p.levels("levels")?, p.family()?),
        "logic-quotient" => {
            let e = match (p.int("modulus")?, p.get("classes")) {
                (Some(n), None) if n >= 1 && n as u64 <= p.defaults.level_guard => {
                    BoundedEquivalence::Congruence(n as u64)
                }
                (None, Some(Value::Array(items))) => BoundedEquivalence::Partition(
                    items.iter().map(|v| core(parse_set(p.ctx(), v))).collect::<SchemaResult<_>>()?,
                ),
                _ => return Err("logic-quotient: give a positive modulus within the guard or a list of classes".into()),
            };
            Task::LogicQuotient(e)
        }
        "g00-at-level" => Task::G00AtLevel(p.level()?),
        "universal-compactification" => {
            let family = match p.get("family") {
                None => Vec::new(),
                Some(Value::Array(items)) => items.iter().map(parse_target).collect::<SchemaResult<_>>()?,
                Some(_) => return Err("universal-compactification: family must be a list".into()),
            };
            Task::UniversalCompactification(p.level()?, family)
        }
        "inverse-system" => Task::InverseSystem(p.levels("levels")?),
        "definable-homomorphism-check" => {
            let target = match core(parse_group(p.need("target")?))? {
                GroupContext::Finite(g) => g,
                _ => return Err("definable-homomorphism-check: the target must be a finite group".into()),
            };
            let level = if p.get("level").is_some() || p.defaults.level.is_some() { Some(p.level()?) } else { None };
            Task::DefinableHomomorphismCheck(target, p.map("map")?, level)
        }
        other => unreachable!("catalog entry {other} without a parser"),
    };
    Ok((spec.name, task))
}

fn parse_target(v: &Value) -> SchemaResult<CompactificationTarget> {
    let obj = v.as_object().ok_or("a compactification target is an object")?;
    if let Some(m) = obj.get("cyclic") {
        let m = m.as_u64().filter(|&m| m >= 1).ok_or("cyclic target needs a positive order")?;
        return Ok(CompactificationTarget::Cyclic(m));
    }
    if let Some(Value::Array(items)) = obj.get("quotient") {
        let elems = items
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or("quotient elements are indices"))
            .collect::<std::result::Result<_, _>>()?;
        return Ok(CompactificationTarget::Quotient(elems));
    }
    Err("a compactification target is {\"cyclic\": m} or {\"quotient\": [..]}".into())
}

// ---- output encoding ----

fn types(ps: &[TypePoint]) -> Value {
    Value::Array(ps.iter().map(type_to_json).collect())
}

fn elements(gs: &[GroupElement]) -> Value {
    Value::Array(gs.iter().map(element_to_json).collect())
}

pub fn rational(q: &BigRational) -> Value {
    json!(q.to_string())
}

fn measure<P>(mu: &InvariantMeasure<P>, point: impl Fn(&P) -> Value) -> Value {
    let weights: Vec<Value> = mu.weights.iter().map(rational).collect();
    json!({ "points": mu.points.iter().map(point).collect::<Vec<_>>(), "weights": weights })
}

fn subgroup(s: &Subgroup) -> Value {
    serde_json::to_value(s).expect("subgroups serialize")
}

fn quotient(q: &CompactQuotient) -> Value {
    let group = q.group().map(|g| group_to_json(&GroupContext::Finite(g.clone())));
    json!({
        "size": q.len(),
        "classes": q.classes().iter().map(set_to_json).collect::<Vec<_>>(),
        "discrete": q.is_discrete(),
        "group": group,
    })
}

fn target(t: &CompactificationTarget) -> Value {
    match t {
        CompactificationTarget::Cyclic(m) => json!({ "cyclic": m }),
        CompactificationTarget::Quotient(e) => json!({ "quotient": e }),
    }
}

fn obstruction(o: &Obstruction) -> Value {
    match o {
        Obstruction::MissingDirection(s) => json!({ "missing_direction": s.to_string() }),
        Obstruction::Empty => json!("empty"),
        Obstruction::MissingShape(shape) => json!({ "missing_shape": format!("{shape:?}") }),
    }
}

fn subflows_of_space(subflows: &[Vec<TypePoint>]) -> Value {
    json!({ "count": subflows.len(), "subflows": subflows.iter().map(|s| types(s)).collect::<Vec<_>>() })
}

/// Runs a parsed task.
pub fn execute(ctx: &GroupContext, task: &Task) -> defdyn::Result<Value> {
    Ok(match task {
        Task::Compose(g, h) => json!({ "element": element_to_json(&ctx.compose(g, h)?) }),
        Task::Invert(g) => json!({ "element": element_to_json(&ctx.invert(g)?) }),
        Task::BooleanOp(kind, a, b) => json!({ "set": set_to_json(&DefinableSet::boolean_op(*kind, a, b.as_ref())?) }),
        Task::Translate(g, y) => json!({ "set": set_to_json(&y.translate(ctx, g)?) }),
        Task::DifferenceSet(y) => json!({ "set": set_to_json(&y.difference_set(ctx)?) }),
        Task::IsLeftGeneric(y) => match is_left_generic(ctx, y)? {
            Genericity::Generic { translates } => json!({ "generic": true, "translates": elements(&translates) }),
            Genericity::NotGeneric { obstruction: o } => json!({ "generic": false, "obstruction": obstruction(&o) }),
        },
        Task::Contains(p, y) => json!({ "contains": typespace::contains(p, y)? }),
        Task::Restrict(p, m) => json!({ "type": type_to_json(&typespace::restrict(p, *m)?) }),
        Task::ApplyGroup(g, p) => json!({ "type": type_to_json(&typespace::apply_group(ctx, g, p)?) }),
        Task::ActingSet(p, y) => json!({ "set": set_to_json(&typespace::acting_set(ctx, p, y)?) }),
        Task::LimitOf { sign, residue, level, count } => {
            let (p, seq) = typespace::limit_of(*sign, *residue, *level);
            json!({ "type": type_to_json(&p), "witnesses": seq.take(*count).collect::<Vec<i64>>() })
        }
        Task::Star(p, q) => json!({ "type": type_to_json(&ellis::star(ctx, p, q)?) }),
        Task::StarViaSchema(p, q) => json!({ "type": type_to_json(&ellis::star_via_schema(ctx, p, q)?) }),
        Task::RightTranslation(space, q) => {
            let r = ellis::right_translation(space, q)?;
            let image: Vec<Value> =
                r.core_image()?.iter().map(|(a, b)| json!([type_to_json(a), type_to_json(b)])).collect();
            let certified = r.certify();
            json!({
                "target": type_to_json(r.target()),
                "core_image": image,
                "certified": certified.is_ok(),
                "certificate_error": certified.err().map(|e| e.to_string()),
            })
        }
        Task::FindIdempotents(space) => json!({ "idempotents": types(&ellis::find_idempotents(space)?) }),
        Task::CheckDefinableFlow(flow) => {
            let v = flows::check_definable_flow(flow)?;
            json!({ "orbit_levels": v.orbit_levels, "orbits": v.orbits, "is_ambit": v.is_ambit })
        }
        Task::UniversalAmbitMorphism(space, flow) => {
            let h = flows::universal_ambit_morphism(space, flow)?;
            let values: Vec<Value> = h.core_values().iter().map(|(p, x)| json!([type_to_json(p), x])).collect();
            json!({ "core_values": values })
        }
        Task::MinimalSubflows(Subject::Space(space)) => subflows_of_space(&flows::minimal_subflows(space)?),
        Task::MinimalSubflows(Subject::Flow(flow)) => {
            let s = flows::minimal_subflows_of_flow(flow)?;
            json!({ "count": s.len(), "subflows": s })
        }
        Task::IsLeftIdeal(space, subset) => json!({ "left_ideal": flows::is_left_ideal(space, subset)? }),
        Task::UniversalMinimalFlow(space) => {
            let m = flows::universal_minimal_flow(space)?;
            let mut own = m.subflow().to_vec();
            own.sort();
            let mut isos = Vec::new();
            for other in flows::minimal_subflows(space)? {
                let mut sorted = other.clone();
                sorted.sort();
                if sorted == own {
                    continue;
                }
                let iso = m.isomorphism_to(&other, None)?;
                let forward: Vec<Value> =
                    iso.forward.iter().map(|(a, b)| json!([type_to_json(a), type_to_json(b)])).collect();
                isos.push(json!({
                    "target": types(&other),
                    "via": type_to_json(&iso.via),
                    "inverse_via": type_to_json(&iso.inverse_via),
                    "forward": forward,
                }));
            }
            json!({ "subflow": types(m.subflow()), "idempotent": type_to_json(m.idempotent()), "isomorphisms": isos })
        }
        Task::ExtendDefinableMap(space, map) => {
            let ext = flows::extend_definable_map(ctx, map, space.level())?;
            let values = space
                .core_points()
                .iter()
                .map(|p| Ok(json!([type_to_json(p), ext.apply(p)?])))
                .collect::<defdyn::Result<Vec<_>>>()?;
            let nbhd: Vec<Value> = ext
                .neighbourhood_images()?
                .into_iter()
                .map(|(p, imgs)| json!([type_to_json(&p), imgs.into_iter().collect::<Vec<_>>()]))
                .collect();
            json!({ "core_values": values, "neighbourhood_images": nbhd })
        }
        Task::KernelOfAction(Subject::Space(space)) => json!({ "subgroup": subgroup(&flows::kernel_of_action(space)?) }),
        Task::KernelOfAction(Subject::Flow(flow)) => json!({ "subgroup": subgroup(&flows::kernel_of_flow(flow)?) }),
        Task::InvariantMeasure(Subject::Space(space)) => {
            let mu = amenability::invariant_measure(space)?;
            json!({
                "measure": measure(&mu, type_to_json),
                "invariant": amenability::is_invariant(space, &mu)?,
                "lp_feasible": amenability::lp_invariant_measure(space)?.is_some(),
            })
        }
        Task::InvariantMeasure(Subject::Flow(flow)) => {
            let mu = amenability::flow_invariant_measure(flow)?;
            json!({
                "measure": measure(&mu, |x| json!(x)),
                "invariant": amenability::is_flow_invariant(flow, &mu),
                "lp_feasible": amenability::lp_flow_measure(flow).is_some(),
            })
        }
        Task::FixedPoints(Subject::Space(space)) => json!({ "fixed_points": types(&amenability::fixed_points(space)?) }),
        Task::FixedPoints(Subject::Flow(flow)) => json!({ "fixed_points": amenability::flow_fixed_points(flow) }),
        Task::PestovCheck(family) => match amenability::pestov_check(ctx, family)? {
            PestovVerdict::Certificate(c) => json!({
                "verdict": "certificate",
                "set": set_to_json(&c.set),
                "translates": elements(&c.translates),
                "difference": set_to_json(&c.difference),
                "missed": element_to_json(&c.missed),
            }),
            PestovVerdict::Exhausted { examined, generic, note } => {
                json!({ "verdict": "exhausted", "examined": examined, "generic": generic, "note": note })
            }
        },
        Task::KernelIntersection(family) => {
            let k = amenability::kernel_intersection(ctx, family)?;
            json!({
                "set": set_to_json(&k.set),
                "subgroup": k.subgroup.as_ref().map(subgroup),
                "generic_sets": k.generic_sets,
                "action_kernel": subgroup(&k.action_kernel),
                "level": k.level,
                "matches_action_kernel": k.matches_action_kernel(),
            })
        }
        Task::SingletonMinimalCriterion(space, family) => {
            let r = amenability::singleton_minimal_criterion(space, family)?;
            json!({
                "minimal_subflows_are_points": r.minimal_subflows_are_points,
                "differences_are_full": r.differences_are_full,
                "agree": r.agree,
                "witness": r.witness.as_ref().map(set_to_json),
                "examined": r.examined,
            })
        }
        Task::MeasureDefinabilityCheck(space, family) => {
            let mu = amenability::invariant_measure(space)?;
            let r = amenability::measure_definability_check(space, &mu, family)?;
            let profiles: Vec<Value> = r
                .profiles
                .iter()
                .map(|pr| {
                    let values: Vec<Value> =
                        pr.values.iter().map(|(g, v)| json!([element_to_json(g), rational(v)])).collect();
                    let seps: Vec<Value> = pr
                        .separations
                        .iter()
                        .map(|s| {
                            json!({
                                "below": rational(&s.below),
                                "above": rational(&s.above),
                                "separator": set_to_json(&s.separator),
                            })
                        })
                        .collect();
                    json!({ "set": set_to_json(&pr.set), "values": values, "separations": seps })
                })
                .collect();
            json!({ "passed": r.passed, "skipped": r.skipped, "profiles": profiles })
        }
        Task::PestovConsistency(levels, family) => {
            let r = amenability::pestov_consistency(ctx, levels, family)?;
            json!({
                "levels": r.levels,
                "fixed_point_counts": r.fixed_point_counts,
                "certificate": r.certificate.as_ref().map(set_to_json),
                "consistent": r.consistent,
            })
        }
        Task::LogicQuotient(e) => json!({ "quotient": quotient(&compactify::logic_quotient(ctx, e)?) }),
        Task::G00AtLevel(level) => json!({ "subgroup": subgroup(&compactify::g00_at_level(ctx, *level)) }),
        Task::UniversalCompactification(level, family) => {
            let u = compactify::universal_compactification(ctx, *level, family)?;
            let maps: Vec<Value> = u
                .maps
                .iter()
                .map(|m| json!({ "target": target(&m.target), "target_size": m.target_quotient.len(), "values": m.values }))
                .collect();
            json!({ "level": u.level, "quotient": quotient(&u.quotient), "maps": maps })
        }
        Task::InverseSystem(levels) => {
            let maps: Vec<Value> = compactify::inverse_system(levels)?
                .into_iter()
                .map(|(from, to, map)| json!({ "from": from, "to": to, "map": map }))
                .collect();
            json!({ "maps": maps })
        }
        Task::DefinableHomomorphismCheck(target_group, map, level) => {
            let v = compactify::definable_homomorphism_check(ctx, target_group, map, *level)?;
            json!({
                "generator_image": v.generator_image,
                "fibers": v.fibers.iter().map(set_to_json).collect::<Vec<_>>(),
                "factor_level": v.factor_level,
                "factor_map": v.factor_map,
                "closure_checks": v.closure_checks,
            })
        }
    })
}
