use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Decomposition;
use crate::cyclofield::Cyc;
use crate::omega::OmegaVec;
use crate::ratfunc::Moebius;
use crate::verify::Assertion;

#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    pub include_elements: bool,
    pub emit_projectors: bool,
    pub approx: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub conductor: u32,
    pub points: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: usize,
    #[serde(rename = "type")]
    pub group_type: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Moebius>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub class: String,
    pub class_size: usize,
    pub order: usize,
    pub representative: Moebius,
    pub value: Cyc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub degree: usize,
    pub multiplicity: usize,
    pub basis: Vec<OmegaVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorEntry {
    pub name: String,
    pub matrix: Vec<Vec<Cyc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub config: ConfigEcho,
    pub field_conductor: u32,
    pub group: GroupSummary,
    pub character: Vec<CharacterEntry>,
    pub components: Vec<Component>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projectors: Option<Vec<ProjectorEntry>>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<Assertion>>,
}

pub(crate) fn format_approx(x: &Cyc) -> String {
    let z = x.approx();
    let clean = |v: f64| if v.abs() < 5e-13 { 0.0 } else { v };
    format!("{:.6}{:+.6}i", clean(z.re), clean(z.im))
}

impl Decomposition {
    pub fn report(&self, opts: ReportOptions) -> DecompositionReport {
        let table = &self.table;
        let character = (0..table.column_labels.len())
            .map(|c| {
                let rep = self.representative(c);
                CharacterEntry {
                    class: table.column_labels[c].clone(),
                    class_size: table.class_sizes[c],
                    order: table.element_orders[c],
                    representative: self.group.element(rep).clone(),
                    value: self.character[c].clone(),
                    approx: opts.approx.then(|| format_approx(&self.character[c])),
                }
            })
            .collect();
        let components = (0..table.names.len())
            .map(|i| Component {
                name: table.names[i].clone(),
                degree: table.degrees[i],
                multiplicity: self.multiplicities[i],
                basis: self.bases[i].clone(),
            })
            .collect();
        let projectors = opts.emit_projectors.then(|| {
            self.projectors
                .iter()
                .zip(&table.names)
                .map(|(p, name)| ProjectorEntry {
                    name: name.clone(),
                    matrix: p.to_rows(),
                })
                .collect()
        });
        let mut notes = Vec::new();
        if !self.alternative_alignments.is_empty() {
            notes.push(format!(
                "{} further class alignment(s) also give valid multiplicities; the one matching the rotation character was used",
                self.alternative_alignments.len()
            ));
        }
        DecompositionReport {
            config: ConfigEcho {
                conductor: self.original.conductor(),
                points: self.original.points().iter().map(ToString::to_string).collect(),
            },
            field_conductor: self.field(),
            group: GroupSummary {
                order: self.group.order(),
                group_type: self.group_type.to_string(),
                elements: opts.include_elements.then(|| self.group.elements().to_vec()),
            },
            character,
            components,
            projectors,
            notes,
            verification: None,
        }
    }
}

fn vector(v: &[Cyc]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

impl DecompositionReport {
    /// Plain-text rendering using the expression grammar.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "config: conductor {}, points [{}]",
            self.config.conductor,
            self.config.points.join(", ")
        );
        let _ = writeln!(out, "field: Q(zeta_{})", self.field_conductor);
        let _ = writeln!(out, "group: {} (order {})", self.group.group_type, self.group.order);
        if let Some(elements) = &self.group.elements {
            for (i, m) in elements.iter().enumerate() {
                let _ = writeln!(out, "  g{i:<3} {m}");
            }
        }
        let _ = writeln!(out, "\ncharacter:");
        let _ = writeln!(out, "  {:<12} {:>5} {:>6}  {:<28} value", "class", "size", "order", "representative");
        for e in &self.character {
            let _ = write!(
                out,
                "  {:<12} {:>5} {:>6}  {:<28} {}",
                e.class,
                e.class_size,
                e.order,
                e.representative.to_string(),
                e.value
            );
            if let Some(a) = &e.approx {
                let _ = write!(out, "    ~ {a}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "\ncomponents:");
        for c in &self.components {
            let _ = writeln!(
                out,
                "  {:<12} degree {}  multiplicity {}",
                c.name, c.degree, c.multiplicity
            );
            for v in &c.basis {
                let _ = writeln!(out, "    {}", vector(&v.coeffs));
            }
        }
        if let Some(projectors) = &self.projectors {
            let _ = writeln!(out, "\nprojectors:");
            for p in projectors {
                let _ = writeln!(out, "  {}:", p.name);
                for row in &p.matrix {
                    let _ = writeln!(out, "    {}", vector(row));
                }
            }
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "\nnotes:");
            for n in &self.notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        if let Some(checks) = &self.verification {
            let passed = checks.iter().filter(|a| a.passed).count();
            let _ = writeln!(out, "\nverification: {passed}/{} passed", checks.len());
            for a in checks.iter().filter(|a| !a.passed) {
                let _ = writeln!(out, "  FAIL {}: {}", a.name, a.detail);
            }
        }
        out
    }
}
