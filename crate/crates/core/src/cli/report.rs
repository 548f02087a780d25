use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::classify::{breadth_profile, theorem_verdict, BreadthProfile, TheoremVerdict};
use crate::error::{Error, Result};
use crate::gfp::Fp;
use crate::image::{report_from_image, word_image, Budgets, ImageReport};
use crate::liecore::{LieAlgebra, StructureReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sections {
    pub breadth: bool,
    pub image: bool,
    pub verdict: bool,
    pub timings: bool,
}

impl Sections {
    pub fn all() -> Self {
        Sections {
            breadth: true,
            image: true,
            verdict: true,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub name: Option<String>,
    pub p: u32,
    pub structure: StructureReport,
    pub breadth: Option<BreadthProfile>,
    pub image: Option<ImageReport>,
    pub verdict: Option<TheoremVerdict>,
    /// Milliseconds per phase; only with `--timings`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
}

fn timed<T>(timings: &mut BTreeMap<String, u64>, phase: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f()?;
    timings.insert(phase.to_string(), start.elapsed().as_millis() as u64);
    Ok(out)
}

pub fn analyze(l: &LieAlgebra, sections: Sections, budgets: &Budgets) -> Result<ReportDocument> {
    let mut timings = BTreeMap::new();
    let structure = timed(&mut timings, "structure", || Ok(l.structure_report()))?;
    if !structure.nilpotent {
        return Err(Error::NotNilpotent(*structure.lcs_dims.last().unwrap_or(&0)));
    }
    let breadth = if sections.breadth {
        Some(timed(&mut timings, "breadth", || breadth_profile(l, budgets.image))?)
    } else {
        None
    };
    let image = if sections.image {
        Some(timed(&mut timings, "image", || {
            let img = word_image(l, budgets)?;
            report_from_image(l, &img, budgets)
        })?)
    } else {
        None
    };
    let verdict = if sections.verdict {
        Some(timed(&mut timings, "verdict", || theorem_verdict(l, budgets))?)
    } else {
        None
    };
    Ok(ReportDocument {
        name: l.name().map(str::to_string),
        p: l.field().modulus(),
        structure,
        breadth,
        image,
        verdict,
        timings: sections.timings.then_some(timings),
    })
}

pub fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(T::to_string).collect();
    format!("({})", parts.join(","))
}

fn vector(v: &[Fp]) -> String {
    tuple(v)
}

fn snake<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v).expect("serializes") {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering carrying the same numbers as the JSON form.
    pub fn render(&self) -> String {
        let mut o = String::new();
        let s = &self.structure;
        let name = self.name.as_deref().unwrap_or("(unnamed)");
        let _ = writeln!(o, "algebra: {name} over F_{} dim={}", self.p, s.dim);
        let _ = writeln!(
            o,
            "structure: lcs={} derived_dim={} class={} center_dim={} stem={} min_generators={}",
            tuple(&s.lcs_dims),
            s.derived_dim,
            s.class.map_or("-".to_string(), |c| c.to_string()),
            s.center_dim,
            s.is_stem,
            s.min_generators
        );
        if let Some(b) = &self.breadth {
            let counts: Vec<String> = b.counts.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            let _ = writeln!(
                o,
                "breadth: b={} type={} counts={{{}}}",
                b.b_max,
                tuple(&b.type_set),
                counts.join(",")
            );
        }
        if let Some(im) = &self.image {
            let _ = writeln!(
                o,
                "image: w_size={} derived_size={} equals_derived={} sum_depth={} sumsets={}",
                im.w_size,
                im.derived_size,
                im.equals_derived,
                im.sum_depth,
                tuple(&im.sumset_sizes)
            );
            if let Some(w) = &im.witness_missing {
                let _ = writeln!(o, "  witness_missing={}", vector(w));
            }
            if let Some(terms) = &im.witness_decomposition {
                for t in terms {
                    let _ = writeln!(
                        o,
                        "  + [{}, {}] = {}",
                        vector(&t.x),
                        vector(&t.y),
                        vector(&t.value)
                    );
                }
            }
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(
                o,
                "verdict: rule={} branch={} predicted={} computed_w_neq={} agree={}",
                snake(&v.rule),
                v.branch.map_or("-".to_string(), |b| snake(&b)),
                snake(&v.predicted),
                v.computed_w_neq.map_or("-".to_string(), |c| c.to_string()),
                v.agree
            );
            let e = &v.evidence;
            let _ = writeln!(
                o,
                "  evidence: class={} dim={} center_dim={} stem_dim={} stem_center_dim={} abelian_dim={} breadth_type={}",
                e.class,
                e.dim,
                e.center_dim,
                e.stem_dim,
                e.stem_center_dim,
                e.abelian_dim,
                tuple(&e.breadth_type)
            );
            if let Some(q) = &e.quad {
                let _ = writeln!(o, "  quad: {}", serde_json::to_string(q).expect("serializes"));
            }
            for msg in &e.inconsistencies {
                let _ = writeln!(o, "  INCONSISTENT: {msg}");
            }
        }
        if let Some(t) = &self.timings {
            let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k}={v}ms")).collect();
            let _ = writeln!(o, "timings: {}", parts.join(" "));
        }
        o
    }
}
