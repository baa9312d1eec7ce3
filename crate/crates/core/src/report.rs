//! JSON rendering of dimension reports and independent re-verification of
//! their witnesses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::admissible::{verify_teaching_set, PreferenceRelation};
use crate::class::{is_consistent, ExampleDoc, FiniteClass, LabeledExample, Sample, Sign};
use crate::dims::{self, Budget, Dim, DimensionReport, Witness};
use crate::error::{Error, Result};

/// The dimension a report claims to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Td,
    TdMin,
    Rtd,
    RtdPlus,
    Pbtd,
    PbtdPlus,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::Td,
        Measure::TdMin,
        Measure::Rtd,
        Measure::RtdPlus,
        Measure::Pbtd,
        Measure::PbtdPlus,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Measure::Td => "td",
            Measure::TdMin => "td_min",
            Measure::Rtd => "rtd",
            Measure::RtdPlus => "rtd_plus",
            Measure::Pbtd => "pbtd",
            Measure::PbtdPlus => "pbtd_plus",
        }
    }

    pub fn from_key(key: &str) -> Option<Measure> {
        Measure::ALL.into_iter().find(|m| m.key() == key)
    }

    fn positive(self) -> bool {
        matches!(self, Measure::RtdPlus | Measure::PbtdPlus)
    }

    pub fn compute(self, class: &FiniteClass, budget: &Budget) -> Result<DimensionReport> {
        match self {
            Measure::Td => dims::td_report(class, false),
            Measure::TdMin => dims::td_report(class, true),
            Measure::Rtd => dims::rtd(class),
            Measure::RtdPlus => dims::rtd_plus(class),
            Measure::Pbtd => dims::pbtd_bruteforce(class, budget),
            Measure::PbtdPlus => dims::pbtd_plus_bruteforce(class, budget),
        }
    }
}

fn sets_json(class: &FiniteClass, sets: &[Sample]) -> Value {
    let map: serde_json::Map<String, Value> = sets
        .iter()
        .enumerate()
        .map(|(c, t)| (class.name(c).to_string(), json!(class.render_sample(t))))
        .collect();
    Value::Object(map)
}

fn names(class: &FiniteClass, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&c| class.name(c).to_string()).collect()
}

pub fn report_to_json(class: &FiniteClass, r: &DimensionReport) -> Value {
    let witness = match &r.witness {
        Witness::TeachingSets { sets } => json!({"kind": "teaching_sets", "sets": sets_json(class, sets)}),
        Witness::Sequence { layers, sets } => json!({
            "kind": "sequence",
            "layers": layers.iter().map(|l| names(class, l)).collect::<Vec<_>>(),
            "sets": sets_json(class, sets),
        }),
        Witness::Order { preferred_first, sets } => json!({
            "kind": "order",
            "preferred_first": names(class, preferred_first),
            "sets": sets_json(class, sets),
        }),
    };
    json!({"value": r.value, "method": r.method, "witness": witness})
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum WitnessDoc {
    TeachingSets {
        sets: BTreeMap<String, Vec<ExampleDoc>>,
    },
    Sequence {
        layers: Vec<Vec<String>>,
        sets: BTreeMap<String, Vec<ExampleDoc>>,
    },
    Order {
        preferred_first: Vec<String>,
        sets: BTreeMap<String, Vec<ExampleDoc>>,
    },
}

#[derive(Deserialize)]
struct ReportDoc {
    value: Dim,
    #[serde(default)]
    method: String,
    witness: WitnessDoc,
}

fn lookup(class: &FiniteClass, name: &str) -> Result<usize> {
    class
        .index_of_name(name)
        .ok_or_else(|| Error::parse(format!("unknown concept {name:?}")))
}

fn parse_sets(class: &FiniteClass, sets: &BTreeMap<String, Vec<ExampleDoc>>) -> Result<Vec<Sample>> {
    let mut out = vec![None; class.len()];
    for (name, docs) in sets {
        out[lookup(class, name)?] = Some(class.parse_sample(docs)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(c, t)| t.ok_or_else(|| Error::parse(format!("no sample for concept {:?}", class.name(c)))))
        .collect()
}

fn parse_permutation(class: &FiniteClass, list: &[String]) -> Result<Vec<usize>> {
    let idx = list.iter().map(|n| lookup(class, n)).collect::<Result<Vec<_>>>()?;
    let mut seen = vec![false; class.len()];
    for &c in &idx {
        if std::mem::replace(&mut seen[c], true) {
            return Err(Error::parse(format!("concept {:?} listed twice", class.name(c))));
        }
    }
    if idx.len() != class.len() {
        return Err(Error::parse("witness does not cover every concept"));
    }
    Ok(idx)
}

/// Parses a report produced by [`report_to_json`].
pub fn report_from_json(class: &FiniteClass, v: &Value) -> Result<DimensionReport> {
    let doc: ReportDoc =
        serde_json::from_value(v.clone()).map_err(|e| Error::parse(format!("malformed report: {e}")))?;
    let witness = match doc.witness {
        WitnessDoc::TeachingSets { sets } => Witness::TeachingSets {
            sets: parse_sets(class, &sets)?,
        },
        WitnessDoc::Sequence { layers, sets } => {
            let layers = layers
                .iter()
                .map(|l| l.iter().map(|n| lookup(class, n)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let flat: Vec<String> = layers.iter().flatten().map(|&c| class.name(c).to_string()).collect();
            parse_permutation(class, &flat)?;
            Witness::Sequence {
                layers,
                sets: parse_sets(class, &sets)?,
            }
        }
        WitnessDoc::Order { preferred_first, sets } => Witness::Order {
            preferred_first: parse_permutation(class, &preferred_first)?,
            sets: parse_sets(class, &sets)?,
        },
    };
    Ok(DimensionReport {
        value: doc.value,
        witness,
        method: doc.method,
    })
}

/// Outcome of re-checking one reported dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub measure: Measure,
    /// The witness is well formed and attains the reported value.
    pub witness_ok: bool,
    /// The reported value matches a recomputation by a different solver;
    /// `None` when the class is too large for the alternate route.
    pub optimal: Option<bool>,
    pub detail: String,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.witness_ok && self.optimal != Some(false)
    }
}

fn fail(measure: Measure, detail: impl Into<String>) -> Verification {
    Verification {
        measure,
        witness_ok: false,
        optimal: None,
        detail: detail.into(),
    }
}

fn teaches_classically(class: &FiniteClass, c: usize, t: &Sample, members: &[usize]) -> Result<bool> {
    if !is_consistent(class.concept(c), t)? {
        return Ok(false);
    }
    for &o in members {
        if o != c && is_consistent(class.concept(o), t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-validates `report` as a value of `measure` on `class`.
pub fn verify_report(
    class: &FiniteClass,
    measure: Measure,
    report: &DimensionReport,
    budget: &Budget,
) -> Result<Verification> {
    class.require_nonempty()?;
    let all: Vec<usize> = (0..class.len()).collect();
    let achieved = match (&report.witness, measure) {
        (Witness::TeachingSets { sets }, Measure::Td | Measure::TdMin) => {
            let mut sizes = Vec::with_capacity(class.len());
            for (c, t) in sets.iter().enumerate() {
                if !teaches_classically(class, c, t, &all)? {
                    return Ok(fail(measure, format!("sample for {:?} is not a teaching set", class.name(c))));
                }
                sizes.push(t.len());
            }
            let v = if measure == Measure::Td { sizes.iter().max() } else { sizes.iter().min() };
            Dim::Finite(*v.unwrap_or(&0))
        }
        (Witness::Sequence { layers, sets }, Measure::Rtd | Measure::RtdPlus) => {
            let mut order = 0;
            for (i, layer) in layers.iter().enumerate() {
                if layer.is_empty() {
                    return Ok(fail(measure, "empty layer in teaching sequence"));
                }
                let rest: Vec<usize> = layers[i..].iter().flatten().copied().collect();
                for &c in layer {
                    let t = &sets[c];
                    if measure.positive() && !t.is_positive() {
                        return Ok(fail(measure, format!("negative example for {:?}", class.name(c))));
                    }
                    if !teaches_classically(class, c, t, &rest)? {
                        return Ok(fail(measure, format!("sample for {:?} does not teach its layer", class.name(c))));
                    }
                    order = order.max(t.len());
                }
            }
            Dim::Finite(order)
        }
        (Witness::Order { preferred_first, sets }, Measure::Pbtd | Measure::PbtdPlus) => {
            let pref = PreferenceRelation::linear(preferred_first)
                .map_err(|_| Error::parse("order witness is not a permutation"))?;
            let mut value = Dim::Finite(0);
            for (pos, &c) in preferred_first.iter().enumerate() {
                let t = &sets[c];
                let ok = (!measure.positive() || t.is_positive()) && verify_teaching_set(c, class, &pref, t)?;
                let here = if ok {
                    Dim::Finite(t.len())
                } else if measure.positive()
                    && preferred_first[..pos]
                        .iter()
                        .any(|&o| class.concept(c).is_proper_subset(class.concept(o)))
                {
                    Dim::Infinite
                } else {
                    return Ok(fail(measure, format!("sample for {:?} fails under the order", class.name(c))));
                };
                value = value.max(here);
            }
            value
        }
        _ => return Ok(fail(measure, "witness kind does not match the measure")),
    };
    if achieved != report.value {
        return Ok(fail(
            measure,
            format!("witness attains {achieved}, report claims {}", report.value),
        ));
    }
    let (optimal, route) = alternate_value(class, measure, budget)?;
    let optimal = optimal.map(|v| v == report.value);
    let detail = match optimal {
        Some(true) => format!("confirmed by {route}"),
        Some(false) => format!("{route} disagrees with the reported value"),
        None => "witness checked; class too large for a second solver".into(),
    };
    Ok(Verification {
        measure,
        witness_ok: true,
        optimal,
        detail,
    })
}

/// The measure computed by a solver other than the one behind [`Measure::compute`].
fn alternate_value(class: &FiniteClass, measure: Measure, budget: &Budget) -> Result<(Option<Dim>, &'static str)> {
    let n = class.len();
    let small_universe = class.universe().size() <= 20;
    Ok(match measure {
        Measure::Td | Measure::TdMin if small_universe => {
            let all: Vec<usize> = (0..n).collect();
            let sizes = (0..n)
                .map(|c| dims::brute_force_td(class, c, &all))
                .collect::<Result<Vec<_>>>()?;
            let v = if measure == Measure::Td { sizes.iter().max() } else { sizes.iter().min() };
            (Some(Dim::Finite(*v.unwrap_or(&0))), "subset enumeration")
        }
        Measure::Rtd | Measure::Pbtd if n <= budget.max_sequence_concepts => {
            (Some(dims::rtd_bruteforce(class, budget)?), "teaching-sequence enumeration")
        }
        Measure::RtdPlus | Measure::PbtdPlus if n <= budget.max_sequence_concepts => {
            (Some(dims::rtd_plus_bruteforce(class, budget)?), "teaching-sequence enumeration")
        }
        Measure::Rtd if n <= budget.max_order_concepts => {
            (Some(dims::pbtd_bruteforce(class, budget)?.value), "preference-order search")
        }
        Measure::RtdPlus if n <= budget.max_order_concepts => {
            (Some(dims::pbtd_plus_bruteforce(class, budget)?.value), "preference-order search")
        }
        Measure::Pbtd => (Some(dims::rtd(class)?.value), "greedy teaching plan"),
        Measure::PbtdPlus => (Some(dims::rtd_plus(class)?.value), "greedy teaching plan"),
        _ => (None, ""),
    })
}

/// Replays a PBTD-1 / PBTD⁺-1 witness document
/// (`{order, chooser, labels}`) through the preference-based teaching check.
pub fn verify_pbtd1_witness(class: &FiniteClass, doc: &Value, positive_only: bool) -> Result<bool> {
    #[derive(Deserialize)]
    struct Doc {
        order: Vec<String>,
        chooser: BTreeMap<String, String>,
        labels: BTreeMap<String, Sign>,
    }
    let doc: Doc = serde_json::from_value(doc.clone()).map_err(|e| Error::parse(format!("malformed witness: {e}")))?;
    let order = parse_permutation(class, &doc.order)?;
    let pref = PreferenceRelation::linear(&order).map_err(|_| Error::parse("order is not a permutation"))?;
    for c in 0..class.len() {
        let name = class.name(c);
        let t = match doc.chooser.get(name) {
            None => Sample::empty(),
            Some(label) => {
                let x = class
                    .universe()
                    .index_of(label)
                    .ok_or_else(|| Error::parse(format!("unknown element {label:?}")))?;
                let sign = *doc
                    .labels
                    .get(name)
                    .ok_or_else(|| Error::parse(format!("no label for {name:?}")))?;
                Sample::new([LabeledExample::new(x, sign)])?
            }
        };
        if positive_only && !t.is_positive() {
            return Ok(false);
        }
        if !verify_teaching_set(c, class, &pref, &t)? {
            return Ok(false);
        }
    }
    Ok(true)
}
