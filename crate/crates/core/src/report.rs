//! Lattice reports: the subgroup lattice of a theory with fixed-field data
//! and scalar-semiring tags, emitted as DOT or JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::fields::{context_from_spec, FieldSpec};
use crate::group::{all_subgroups, fixed_field};
use crate::poly::{sturm_root_count, Bound};

/// Scalar-semiring tag of a decohered subtheory, following the norm-closure
/// characterizations: totally real fixed fields keep only totally positive
/// scalars, fields with no real embedding keep everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemiringTag {
    WholeField,
    TotallyPositive,
    MixedSignature,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeNode {
    pub index: usize,
    pub generators: Vec<String>,
    pub order: usize,
    pub fixed_degree: usize,
    /// Minimal polynomial of the fixed field's primitive element (char 0),
    /// or the subfield name for finite fields.
    pub fixed_field: String,
    pub real_roots: Option<usize>,
    pub tag: SemiringTag,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub exact: bool,
    pub field: FieldSpec,
    pub nodes: Vec<LatticeNode>,
    pub edges: Vec<(usize, usize)>,
}

/// Builds the subgroup-lattice report for a field spec.
pub fn lattice_report(spec: &FieldSpec) -> Result<LatticeReport> {
    let ctx = context_from_spec(spec)?;
    let group = ctx.galois_group().clone();
    let lattice = all_subgroups(&group)?;
    let mut nodes = Vec::new();
    for (i, sub) in lattice.subgroups().iter().enumerate() {
        // a single generator when the subgroup is cyclic, else greedy
        let mut gens: Vec<usize> = Vec::new();
        for &m in sub.members() {
            if crate::group::Subgroup::generated(&group, &[m]) == *sub {
                gens.push(m);
                break;
            }
        }
        if gens.is_empty() {
            let mut closure = crate::group::Subgroup::trivial(&group);
            for &m in sub.members() {
                if !closure.contains(m) {
                    gens.push(m);
                    let mut g2 = closure.members().to_vec();
                    g2.push(m);
                    closure = crate::group::Subgroup::generated(&group, &g2);
                }
            }
        }
        let generators: Vec<String> =
            gens.iter().map(|&g| group.element(g).to_string()).collect();
        let (fixed_field_str, real_roots, tag, fixed_degree) = match spec {
            FieldSpec::Finite { p, .. } => {
                let j = group.order() / sub.order();
                (format!("GF({}^{})", p, j), None, SemiringTag::WholeField, j)
            }
            _ => {
                let (_, mp) = fixed_field(sub)?;
                let deg = mp.degree().unwrap_or(0);
                let real = sturm_root_count(&mp, &Bound::NegInf, &Bound::PosInf)?;
                let tag = if sub.is_trivial() {
                    // the undecohered top theory keeps the whole field
                    SemiringTag::WholeField
                } else if real == deg {
                    SemiringTag::TotallyPositive
                } else if real == 0 {
                    SemiringTag::WholeField
                } else {
                    SemiringTag::MixedSignature
                };
                (mp.to_string(), Some(real), tag, deg)
            }
        };
        nodes.push(LatticeNode {
            index: i,
            generators,
            order: sub.order(),
            fixed_degree,
            fixed_field: fixed_field_str,
            real_roots,
            tag,
        });
    }
    Ok(LatticeReport {
        exact: true,
        field: spec.clone(),
        nodes,
        edges: lattice.covering_edges(),
    })
}

pub fn lattice_json(spec: &FieldSpec) -> Result<String> {
    let report = lattice_report(spec)?;
    Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
}

/// DOT text: one node per subgroup labeled with order, fixed field and
/// semiring tag; edges are the covering relations of the inclusion order,
/// drawn so the undecohered theory (trivial subgroup) sits on top.
pub fn lattice_dot(spec: &FieldSpec) -> Result<String> {
    let report = lattice_report(spec)?;
    let mut out = String::new();
    writeln!(out, "digraph lattice {{").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for node in &report.nodes {
        let gens = if node.generators.is_empty() {
            "1".to_string()
        } else {
            node.generators.join(",")
        };
        let tag = match node.tag {
            SemiringTag::WholeField => "whole-field",
            SemiringTag::TotallyPositive => "totally-positive",
            SemiringTag::MixedSignature => "mixed-signature",
        };
        writeln!(
            out,
            "  s{} [label=\"H=<{}> |H|={}\\nFix: {} (deg {})\\n{}\"];",
            node.index, gens, node.order, node.fixed_field, node.fixed_degree, tag
        )
        .unwrap();
    }
    for (a, b) in &report.edges {
        writeln!(out, "  s{a} -> s{b};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}
