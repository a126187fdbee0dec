//! Report schemas (JSON) and their human renderings. All indices in reports
//! are 1-based; rationals are printed exactly as `p` or `p/q`.

use serde::{Deserialize, Serialize};

use goldie_core::analysis::{Analysis, GoldieFamily};
use goldie_core::arrangement::ArrangementSpec;
use goldie_core::oracle::OracleResult;
use goldie_core::rat::{fmt_rat, Rat};

use crate::instance::InstanceFile;

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn join(v: &[String]) -> String {
    v.join(", ")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CombinationEntry {
    pub index: usize,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PartitionReport {
    pub bounded: Vec<usize>,
    pub receding: Vec<usize>,
    pub direction: Vec<String>,
    pub combination: Vec<CombinationEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SignsReport {
    pub nonneg: Vec<usize>,
    pub negative: Vec<usize>,
    pub free: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AssumptionReport {
    pub holds: bool,
    pub rank_bounded: usize,
    pub rank_free: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FibersReport {
    pub h_basis: Vec<Vec<String>>,
    pub characters: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AnalysisReport {
    pub instance: InstanceFile,
    pub interesting_indices: Vec<usize>,
    pub partition: PartitionReport,
    pub signs: SignsReport,
    pub spanning: AssumptionReport,
    pub component_count: usize,
    pub goldie_rank: usize,
    pub fibers: FibersReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dset: Option<Vec<Vec<String>>>,
}

pub fn analysis_report(
    spec: &ArrangementSpec,
    alpha: &[Rat],
    a: &Analysis,
    with_dset: bool,
) -> AnalysisReport {
    AnalysisReport {
        instance: crate::instance::echo(spec, alpha),
        interesting_indices: one_based(&a.constraint.indices()),
        partition: PartitionReport {
            bounded: one_based(&a.certificate.bounded),
            receding: one_based(&a.certificate.receding),
            direction: rats(&a.certificate.direction),
            combination: a
                .certificate
                .combination
                .iter()
                .map(|(i, z)| CombinationEntry {
                    index: i + 1,
                    value: fmt_rat(z),
                })
                .collect(),
        },
        signs: SignsReport {
            nonneg: one_based(&a.signs.nonneg),
            negative: one_based(&a.signs.negative),
            free: one_based(&a.signs.free),
        },
        spanning: AssumptionReport {
            holds: a.assumption.holds,
            rank_bounded: a.assumption.rank_bounded,
            rank_free: a.assumption.rank_free,
            dim: a.assumption.dim,
        },
        component_count: a.rank,
        goldie_rank: a.rank,
        fibers: FibersReport {
            h_basis: a.fibers.h_basis.iter().map(|v| rats(v)).collect(),
            characters: a.fibers.characters.iter().map(|v| rats(v)).collect(),
        },
        dset: with_dset.then(|| a.dset.reps.iter().map(|v| rats(v)).collect()),
    }
}

pub fn render_analysis(rep: &AnalysisReport) -> String {
    let mut out = String::new();
    let inst = &rep.instance;
    out += &format!("instance: n={} r={} d={}\n", inst.n, inst.r, inst.g_basis.len());
    for row in &inst.g_basis {
        out += &format!("  basis row: [{}]\n", join(row));
    }
    out += &format!("chi: [{}]\n", join(inst.chi.as_deref().unwrap_or(&[])));
    out += &format!("alpha: [{}]\n", join(inst.alpha.as_deref().unwrap_or(&[])));
    out += &format!("interesting indices: {:?}\n", rep.interesting_indices);
    out += &format!(
        "partition: bounded={:?} receding={:?}\n",
        rep.partition.bounded, rep.partition.receding
    );
    let combo: Vec<String> = rep
        .partition
        .combination
        .iter()
        .map(|c| format!("z_{}={}", c.index, c.value))
        .collect();
    out += &format!("  combination: [{}]\n", combo.join(", "));
    out += &format!("  direction: [{}]\n", join(&rep.partition.direction));
    out += &format!(
        "signs: nonneg={:?} negative={:?} free={:?}\n",
        rep.signs.nonneg, rep.signs.negative, rep.signs.free
    );
    out += &format!(
        "spanning assumption: {} (rank bounded {} + rank free {} vs dim {})\n",
        if rep.spanning.holds { "holds" } else { "violated" },
        rep.spanning.rank_bounded,
        rep.spanning.rank_free,
        rep.spanning.dim
    );
    out += &format!("components: {}\n", rep.component_count);
    out += &format!("goldie rank: {}\n", rep.goldie_rank);
    for basis in &rep.fibers.h_basis {
        out += &format!("  h basis: [{}]\n", join(basis));
    }
    for ch in &rep.fibers.characters {
        out += &format!("  character: ({})\n", join(ch));
    }
    if let Some(dset) = &rep.dset {
        for rep_pt in dset {
            out += &format!("  representative: [{}]\n", join(rep_pt));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RescalingReport {
    pub numer: String,
    pub offset: String,
    pub scale: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuasiReport {
    pub period: u64,
    /// One coefficient row per residue class, constant term first.
    pub coeffs: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FamilyRowReport {
    pub x: u64,
    pub admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FamilyReport {
    pub instance: InstanceFile,
    pub degenerate: bool,
    pub no_axis: bool,
    pub closed_form: bool,
    pub apex: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rescaling: Option<RescalingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_vertices: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi: Option<QuasiReport>,
    pub blocked_denominators: Vec<String>,
    pub rows: Vec<FamilyRowReport>,
}

pub fn family_report(spec: &ArrangementSpec, fam: &GoldieFamily) -> FamilyReport {
    FamilyReport {
        instance: crate::instance::echo(spec, &fam.alpha),
        degenerate: fam.degenerate,
        no_axis: fam.no_axis,
        closed_form: fam.closed_form(),
        apex: rats(&fam.apex),
        a0: fam.a0.as_ref().map(fmt_rat),
        rescaling: fam.rescaling.as_ref().map(|r| RescalingReport {
            numer: r.numer.to_string(),
            offset: r.offset.to_string(),
            scale: r.scale().to_string(),
        }),
        reference_vertices: fam
            .reference
            .as_ref()
            .map(|q| q.vertices.iter().map(|v| rats(v)).collect()),
        quasi: fam.quasi.as_ref().map(|q| QuasiReport {
            period: q.period,
            coeffs: q.coeffs.iter().map(|row| rats(row)).collect(),
        }),
        blocked_denominators: fam
            .blocked_denominators
            .iter()
            .map(|d| d.to_string())
            .collect(),
        rows: fam
            .rows
            .iter()
            .map(|r| FamilyRowReport {
                x: r.x,
                admissible: r.admissible,
                predicted: r.predicted,
                direct: r.direct,
            })
            .collect(),
    }
}

pub fn render_family(rep: &FamilyReport) -> String {
    let mut out = String::new();
    out += &format!(
        "family: degenerate={} no_axis={} closed_form={}\n",
        rep.degenerate, rep.no_axis, rep.closed_form
    );
    out += &format!("apex: [{}]\n", join(&rep.apex));
    if let Some(a0) = &rep.a0 {
        out += &format!("a0: {a0}\n");
    }
    if let Some(r) = &rep.rescaling {
        let sign = if r.offset.starts_with('-') {
            format!("+ {}", &r.offset[1..])
        } else {
            format!("- {}", r.offset)
        };
        out += &format!("rescaling: s(x) = {}x {}, scale {}\n", r.numer, sign, r.scale);
    }
    if let Some(vs) = &rep.reference_vertices {
        let rendered: Vec<String> = vs.iter().map(|v| format!("[{}]", join(v))).collect();
        out += &format!("reference vertices: {}\n", rendered.join(" "));
    }
    if let Some(q) = &rep.quasi {
        out += &format!("quasi-polynomial: period {}\n", q.period);
        for (res, row) in q.coeffs.iter().enumerate() {
            let terms: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if k == 0 {
                        c.clone()
                    } else if k == 1 {
                        format!("{c}*t")
                    } else {
                        format!("{c}*t^{k}")
                    }
                })
                .collect();
            out += &format!("  residue {}: {}\n", res, terms.join(" + "));
        }
    } else {
        out += "no closed form derived; direct counts tabulated\n";
    }
    if !rep.blocked_denominators.is_empty() {
        out += &format!(
            "inadmissible factors: multiples of {{{}}}\n",
            rep.blocked_denominators.join(", ")
        );
    }
    out += "x | admissible | predicted | direct\n";
    for row in &rep.rows {
        let p = row
            .predicted
            .map_or_else(|| "-".to_string(), |v| v.to_string());
        let d = row.direct.map_or_else(|| "-".to_string(), |v| v.to_string());
        out += &format!(
            "{} | {} | {} | {}\n",
            row.x,
            if row.admissible { "yes" } else { "no" },
            p,
            d
        );
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OracleStepReport {
    pub radius: u32,
    pub support_points: usize,
    pub classes: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OracleReport {
    pub instance: InstanceFile,
    pub radius_used: u32,
    pub span_dim: usize,
    pub component_count: usize,
    pub stabilized: bool,
    pub history: Vec<OracleStepReport>,
}

pub fn oracle_report(spec: &ArrangementSpec, alpha: &[Rat], res: &OracleResult) -> OracleReport {
    OracleReport {
        instance: crate::instance::echo(spec, alpha),
        radius_used: res.radius_used,
        span_dim: res.span_dim,
        component_count: res.component_count,
        stabilized: res.stabilized,
        history: res
            .history
            .iter()
            .map(|s| OracleStepReport {
                radius: s.radius,
                support_points: s.support_points,
                classes: s.classes,
            })
            .collect(),
    }
}

pub fn render_oracle(rep: &OracleReport) -> String {
    let mut out = String::new();
    for step in &rep.history {
        out += &format!(
            "radius {}: {} support points, {} classes\n",
            step.radius, step.support_points, step.classes
        );
    }
    out += &format!(
        "radius used: {}\nunbounded span dim: {}\ncomponent count: {}\nstabilized: {}\n",
        rep.radius_used, rep.span_dim, rep.component_count, rep.stabilized
    );
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IncludeReport {
    /// closure(A) contained in closure(B)
    pub forward: bool,
    /// closure(B) contained in closure(A)
    pub reverse: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RankReport {
    pub instance: InstanceFile,
    pub goldie_rank: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WeylCheckReport {
    pub n: usize,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub box_radius: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights_checked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<String>,
    pub ok: bool,
}
