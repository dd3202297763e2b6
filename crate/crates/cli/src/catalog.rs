//! The operation catalog: task names, parameters and their JSON kinds.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Param {
    pub name: &'static str,
    /// One of `element`, `set`, `type`, `types`, `level`, `levels`,
    /// `integer`, `sign`, `flow`, `map`, `group`, `targets`, `classes`,
    /// `string`.
    pub kind: &'static str,
    pub required: bool,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct OpSpec {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [Param],
}

const fn req(name: &'static str, kind: &'static str) -> Param {
    Param { name, kind, required: true }
}

const fn opt(name: &'static str, kind: &'static str) -> Param {
    Param { name, kind, required: false }
}

/// Every operation. Tasks that take a `level` fall back to the scenario
/// level; finite backends default to level 1.
pub const OPS: &[OpSpec] = &[
    OpSpec { name: "compose", summary: "group product g·h", params: &[req("g", "element"), req("h", "element")] },
    OpSpec { name: "invert", summary: "group inverse", params: &[req("g", "element")] },
    OpSpec {
        name: "boolean-op",
        summary: "union, intersection or complement of definable sets",
        params: &[req("kind", "string"), req("a", "set"), opt("b", "set")],
    },
    OpSpec { name: "translate", summary: "left translate g·Y", params: &[req("g", "element"), req("set", "set")] },
    OpSpec { name: "difference-set", summary: "Y·Y⁻¹", params: &[req("set", "set")] },
    OpSpec {
        name: "is-left-generic",
        summary: "whether finitely many left translates cover the group, with a cover",
        params: &[req("set", "set")],
    },
    OpSpec { name: "contains", summary: "whether Y belongs to the type p", params: &[req("p", "type"), req("set", "set")] },
    OpSpec { name: "restrict", summary: "image of a type at a coarser level", params: &[req("p", "type"), req("to", "level")] },
    OpSpec { name: "apply-group", summary: "the type g·p", params: &[req("g", "element"), req("p", "type")] },
    OpSpec { name: "acting-set", summary: "{g : Y ∈ g·p}", params: &[req("p", "type"), req("set", "set")] },
    OpSpec {
        name: "limit-of",
        summary: "a limit type with the first terms of a converging sequence",
        params: &[req("sign", "sign"), req("residue", "integer"), opt("level", "level"), opt("count", "integer")],
    },
    OpSpec { name: "star", summary: "Ellis product p*q", params: &[req("p", "type"), req("q", "type")] },
    OpSpec {
        name: "star-via-schema",
        summary: "Ellis product through the definability schema of q",
        params: &[req("p", "type"), req("q", "type")],
    },
    OpSpec {
        name: "right-translation",
        summary: "the map p ↦ p*q on the core, certified",
        params: &[req("q", "type"), opt("level", "level")],
    },
    OpSpec { name: "find-idempotents", summary: "idempotents of the level space", params: &[opt("level", "level")] },
    OpSpec { name: "check-definable-flow", summary: "validate a finite flow", params: &[req("flow", "flow")] },
    OpSpec {
        name: "universal-ambit-morphism",
        summary: "the map from the level space onto an ambit",
        params: &[req("flow", "flow"), opt("level", "level")],
    },
    OpSpec {
        name: "minimal-subflows",
        summary: "minimal subflows of the level space or of a flow",
        params: &[opt("level", "level"), opt("flow", "flow")],
    },
    OpSpec {
        name: "is-left-ideal",
        summary: "whether a subset of the core is a left ideal",
        params: &[req("subset", "types"), opt("level", "level")],
    },
    OpSpec {
        name: "universal-minimal-flow",
        summary: "a minimal subflow, its idempotent and isomorphisms onto the others",
        params: &[opt("level", "level")],
    },
    OpSpec {
        name: "extend-definable-map",
        summary: "continuous extension of a definable map to the level space",
        params: &[req("map", "map"), opt("level", "level")],
    },
    OpSpec {
        name: "kernel-of-action",
        summary: "elements acting trivially on a minimal subflow or flow",
        params: &[opt("level", "level"), opt("flow", "flow")],
    },
    OpSpec {
        name: "invariant-measure",
        summary: "canonical invariant measure with an exact feasibility cross-check",
        params: &[opt("level", "level"), opt("flow", "flow")],
    },
    OpSpec { name: "fixed-points", summary: "points fixed by the group", params: &[opt("level", "level"), opt("flow", "flow")] },
    OpSpec {
        name: "pestov-check",
        summary: "search a set family for a generic Y with Y·Y⁻¹ ≠ G",
        params: &[opt("moduli", "integer"), opt("window", "integer")],
    },
    OpSpec {
        name: "kernel-intersection",
        summary: "intersection of Y·Y⁻¹ over the generic sets of a family",
        params: &[opt("moduli", "integer"), opt("window", "integer")],
    },
    OpSpec {
        name: "singleton-minimal-criterion",
        summary: "minimal subflows are points iff every generic Y has Y·Y⁻¹ = G",
        params: &[opt("level", "level"), opt("moduli", "integer"), opt("window", "integer")],
    },
    OpSpec {
        name: "measure-definability-check",
        summary: "whether g ↦ μ(g·Y) is definable for the canonical measure",
        params: &[opt("level", "level"), opt("moduli", "integer"), opt("window", "integer")],
    },
    OpSpec {
        name: "pestov-consistency",
        summary: "fixed points along a divisor chain against the certificate search",
        params: &[req("levels", "levels"), opt("moduli", "integer"), opt("window", "integer")],
    },
    OpSpec {
        name: "logic-quotient",
        summary: "quotient by a congruence or an explicit definable partition",
        params: &[opt("modulus", "integer"), opt("classes", "classes")],
    },
    OpSpec { name: "g00-at-level", summary: "the smallest bounded-index subgroup at a level", params: &[opt("level", "level")] },
    OpSpec {
        name: "universal-compactification",
        summary: "the universal quotient at a level with reduction maps onto a family",
        params: &[opt("level", "level"), opt("family", "targets")],
    },
    OpSpec { name: "inverse-system", summary: "reduction maps along a divisor chain", params: &[req("levels", "levels")] },
    OpSpec {
        name: "definable-homomorphism-check",
        summary: "whether a definable map into a finite group is a compactification",
        params: &[req("target", "group"), req("map", "map"), opt("level", "level")],
    },
];

pub fn find(name: &str) -> Option<&'static OpSpec> {
    OPS.iter().find(|op| op.name == name)
}

/// The machine-readable catalog, in fixed order.
pub fn list_capabilities() -> Value {
    serde_json::json!({
        "tool": "defdyn",
        "version": env!("CARGO_PKG_VERSION"),
        "schema": crate::SCHEMA_VERSION,
        "operations": OPS,
    })
}
