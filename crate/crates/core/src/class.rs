//! Universes, concepts, labeled examples and finite concept classes.
//!
//! Concepts are extensional membership bitvectors over an indexed universe.
//! Names attached to concepts are metadata and never take part in equality.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Ordered list of distinct element labels; element `i` is `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(label.as_str(), i) {
                return Err(Error::parse(format!(
                    "universe label {label:?} appears at positions {j} and {i}"
                )));
            }
        }
        Ok(Universe { labels })
    }

    /// Universe whose elements are the decimal renderings of `values`.
    pub fn numeric<I: IntoIterator<Item = u64>>(values: I) -> Result<Self> {
        Self::new(values.into_iter().map(|v| v.to_string()).collect())
    }

    /// The universe `{1, ..., k}`.
    pub fn range1(k: usize) -> Self {
        Universe {
            labels: (1..=k).map(|i| i.to_string()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Membership bitvector of a concept.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Concept {
    bits: FixedBitSet,
}

impl Concept {
    pub fn empty(universe_size: usize) -> Self {
        Concept {
            bits: FixedBitSet::with_capacity(universe_size),
        }
    }

    pub fn full(universe_size: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe_size);
        bits.insert_range(..);
        Concept { bits }
    }

    /// Builds a concept from member indices. Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe_size: usize, members: I) -> Self {
        let mut c = Self::empty(universe_size);
        for i in members {
            assert!(i < universe_size, "element {i} outside universe of size {universe_size}");
            c.bits.insert(i);
        }
        c
    }

    /// Builds a concept from the low `universe_size` bits of `mask`.
    pub fn from_mask(universe_size: usize, mask: u64) -> Self {
        Self::from_indices(universe_size, (0..universe_size).filter(|i| mask >> i & 1 == 1))
    }

    pub fn universe_size(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.bits.contains(element)
    }

    pub fn cardinality(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subset(&self, other: &Concept) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_proper_subset(&self, other: &Concept) -> bool {
        self.is_subset(other) && self != other
    }

    /// Elements on which the two concepts disagree.
    pub fn disagreement(&self, other: &Concept) -> FixedBitSet {
        let mut d = self.bits.clone();
        d.symmetric_difference_with(&other.bits);
        d
    }

    /// Elements of `self` missing from `other`.
    pub fn difference(&self, other: &Concept) -> FixedBitSet {
        let mut d = self.bits.clone();
        d.difference_with(&other.bits);
        d
    }

    pub fn symmetric_difference(&self, mask: &FixedBitSet) -> Concept {
        let mut bits = self.bits.clone();
        bits.symmetric_difference_with(mask);
        Concept { bits }
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn label_of(&self, element: usize) -> Sign {
        Sign::from_bool(self.contains(element))
    }

    pub fn to_row(&self) -> Vec<u8> {
        (0..self.universe_size()).map(|i| self.contains(i) as u8).collect()
    }
}

impl fmt::Debug for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "+")]
    Positive,
}

impl Sign {
    pub fn from_bool(member: bool) -> Self {
        if member {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledExample {
    pub element: usize,
    pub sign: Sign,
}

impl LabeledExample {
    pub fn new(element: usize, sign: Sign) -> Self {
        LabeledExample { element, sign }
    }

    pub fn positive(element: usize) -> Self {
        Self::new(element, Sign::Positive)
    }

    pub fn negative(element: usize) -> Self {
        Self::new(element, Sign::Negative)
    }

    pub fn agrees_with(&self, c: &Concept) -> bool {
        c.contains(self.element) == self.sign.is_positive()
    }
}

/// A set of labeled examples, kept sorted by `(element, sign)`.
///
/// No element may carry both signs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sample {
    examples: BTreeSet<LabeledExample>,
}

impl Sample {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = LabeledExample>>(examples: I) -> Result<Self> {
        let examples: BTreeSet<_> = examples.into_iter().collect();
        let mut prev: Option<usize> = None;
        for ex in &examples {
            if prev == Some(ex.element) {
                return Err(Error::arg(format!(
                    "element {} labeled both positive and negative",
                    ex.element
                )));
            }
            prev = Some(ex.element);
        }
        Ok(Sample { examples })
    }

    pub fn positive<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        Sample {
            examples: elements.into_iter().map(LabeledExample::positive).collect(),
        }
    }

    /// The sample `{(x, c(x)) : x in elements}`.
    pub fn labeled_by<I: IntoIterator<Item = usize>>(c: &Concept, elements: I) -> Self {
        Sample {
            examples: elements
                .into_iter()
                .map(|x| LabeledExample::new(x, c.label_of(x)))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LabeledExample> + '_ {
        self.examples.iter()
    }

    pub fn contains(&self, ex: &LabeledExample) -> bool {
        self.examples.contains(ex)
    }

    /// `T⁺`: elements labeled positive.
    pub fn positives(&self) -> impl Iterator<Item = usize> + '_ {
        self.iter().filter(|e| e.sign.is_positive()).map(|e| e.element)
    }

    /// `T⁻`: elements labeled negative.
    pub fn negatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.iter().filter(|e| !e.sign.is_positive()).map(|e| e.element)
    }

    pub fn is_positive(&self) -> bool {
        self.negatives().next().is_none()
    }

    pub fn max_element(&self) -> Option<usize> {
        self.examples.iter().next_back().map(|e| e.element)
    }

    pub fn with(&self, ex: LabeledExample) -> Result<Self> {
        Sample::new(self.examples.iter().copied().chain(std::iter::once(ex)))
    }

    pub fn without(&self, ex: &LabeledExample) -> Self {
        let mut examples = self.examples.clone();
        examples.remove(ex);
        Sample { examples }
    }
}

impl<'a> IntoIterator for &'a Sample {
    type Item = &'a LabeledExample;
    type IntoIter = std::collections::btree_set::Iter<'a, LabeledExample>;

    fn into_iter(self) -> Self::IntoIter {
        self.examples.iter()
    }
}

fn check_indices(c: &Concept, t: &Sample) -> Result<()> {
    match t.max_element() {
        Some(m) if m >= c.universe_size() => Err(Error::Structural(format!(
            "example element {m} outside universe of size {}",
            c.universe_size()
        ))),
        _ => Ok(()),
    }
}

/// True iff `T⁺ ⊆ c` and `T⁻ ∩ c = ∅`.
pub fn is_consistent(c: &Concept, t: &Sample) -> Result<bool> {
    check_indices(c, t)?;
    Ok(t.iter().all(|ex| ex.agrees_with(c)))
}

/// True iff `t` is consistent with `l` but not with `l2`.
pub fn distinguishes(t: &Sample, l: &Concept, l2: &Concept) -> Result<bool> {
    check_indices(l2, t)?;
    Ok(is_consistent(l, t)? && !is_consistent(l2, t)?)
}

/// The examples `(x, l(x))` for every `x` on which `l` and `l2` differ.
pub fn difference_witnesses(l: &Concept, l2: &Concept) -> Result<Sample> {
    if l.universe_size() != l2.universe_size() {
        return Err(Error::Structural("concepts over different universes".into()));
    }
    if l == l2 {
        return Err(Error::arg("difference witnesses of a concept with itself"));
    }
    Ok(Sample::labeled_by(l, l.disagreement(l2).ones()))
}

/// A finite family of pairwise distinct, uniquely named concepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteClass {
    universe: Universe,
    names: Vec<String>,
    concepts: Vec<Concept>,
}

impl FiniteClass {
    pub fn new(universe: Universe, named: Vec<(String, Concept)>) -> Result<Self> {
        let mut names = Vec::with_capacity(named.len());
        let mut concepts = Vec::with_capacity(named.len());
        let mut by_name: HashMap<String, usize> = HashMap::new();
        let mut by_row: HashMap<Concept, usize> = HashMap::new();
        for (i, (name, c)) in named.into_iter().enumerate() {
            if c.universe_size() != universe.size() {
                return Err(Error::parse(format!(
                    "row {name:?} has length {}, expected {}",
                    c.universe_size(),
                    universe.size()
                )));
            }
            if by_name.insert(name.clone(), i).is_some() {
                return Err(Error::parse(format!("duplicate concept name {name:?}")));
            }
            if let Some(j) = by_row.insert(c.clone(), i) {
                return Err(Error::parse(format!(
                    "row {name:?} duplicates the membership row of {:?}",
                    names[j]
                )));
            }
            names.push(name);
            concepts.push(c);
        }
        Ok(FiniteClass {
            universe,
            names,
            concepts,
        })
    }

    /// Class over `universe` with concepts named `C0, C1, ...`.
    pub fn unnamed(universe: Universe, concepts: Vec<Concept>) -> Result<Self> {
        let named = concepts
            .into_iter()
            .enumerate()
            .map(|(i, c)| (format!("C{i}"), c))
            .collect();
        Self::new(universe, named)
    }

    /// Concepts over `{1..=k}` from bit masks (bit `i` is element `i+1`).
    pub fn from_masks(k: usize, masks: &[u64]) -> Result<Self> {
        Self::unnamed(
            Universe::range1(k),
            masks.iter().map(|&m| Concept::from_mask(k, m)).collect(),
        )
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concept(&self, i: usize) -> &Concept {
        &self.concepts[i]
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn index_of(&self, c: &Concept) -> Option<usize> {
        self.concepts.iter().position(|x| x == c)
    }

    /// Subclass made of the concepts at `indices`, keeping names.
    pub fn subclass(&self, indices: &[usize]) -> Result<Self> {
        let named = indices
            .iter()
            .map(|&i| (self.names[i].clone(), self.concepts[i].clone()))
            .collect();
        Self::new(self.universe.clone(), named)
    }

    pub fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::arg("concept class is empty"))
        } else {
            Ok(())
        }
    }

    pub fn require_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::arg(format!("concept index {i} not in class of size {}", self.len())))
        }
    }

    /// Renders a sample with universe labels.
    pub fn render_sample(&self, t: &Sample) -> Vec<ExampleDoc> {
        t.iter()
            .map(|e| ExampleDoc {
                x: self.universe.label(e.element).to_string(),
                y: e.sign,
            })
            .collect()
    }

    /// Parses a labeled sample written with universe labels.
    pub fn parse_sample(&self, docs: &[ExampleDoc]) -> Result<Sample> {
        let examples = docs
            .iter()
            .map(|d| {
                self.universe
                    .index_of(&d.x)
                    .map(|i| LabeledExample::new(i, d.y))
                    .ok_or_else(|| Error::parse(format!("unknown universe element {:?}", d.x)))
            })
            .collect::<Result<Vec<_>>>()?;
        Sample::new(examples)
    }
}

/// A labeled example in documents: `{"x": "<label>", "y": "+"|"-"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleDoc {
    pub x: String,
    pub y: Sign,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassDoc {
    universe: Vec<String>,
    concepts: RawRows,
}

/// Concept rows in document order, duplicates preserved for validation.
struct RawRows(Vec<(String, Vec<i64>)>);

impl<'de> Deserialize<'de> for RawRows {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RowsVisitor;

        impl<'de> Visitor<'de> for RowsVisitor {
            type Value = RawRows;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping concept names to 0/1 arrays")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<RawRows, A::Error> {
                let mut rows = Vec::new();
                while let Some((name, row)) = map.next_entry::<String, Vec<i64>>()? {
                    rows.push((name, row));
                }
                Ok(RawRows(rows))
            }
        }

        deserializer.deserialize_map(RowsVisitor)
    }
}

struct RowsOut<'a>(&'a FiniteClass);

impl Serialize for RowsOut<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let class = self.0;
        let mut map = serializer.serialize_map(Some(class.len()))?;
        for (name, c) in class.names.iter().zip(&class.concepts) {
            map.serialize_entry(name, &c.to_row())?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct ClassDocOut<'a> {
    universe: &'a [String],
    concepts: RowsOut<'a>,
}

/// Parses the finite-class JSON document.
pub fn load_class(bytes: &[u8]) -> Result<FiniteClass> {
    let doc: ClassDoc =
        serde_json::from_slice(bytes).map_err(|e| Error::parse(format!("malformed class document: {e}")))?;
    let universe = Universe::new(doc.universe)?;
    let n = universe.size();
    let mut named = Vec::with_capacity(doc.concepts.0.len());
    for (name, row) in doc.concepts.0 {
        if row.len() != n {
            return Err(Error::parse(format!(
                "row {name:?} has length {}, expected {n}",
                row.len()
            )));
        }
        let mut c = Concept::empty(n);
        for (i, &v) in row.iter().enumerate() {
            match v {
                0 => {}
                1 => c.bits.insert(i),
                other => {
                    return Err(Error::parse(format!(
                        "row {name:?} has entry {other} at position {i}; expected 0 or 1"
                    )))
                }
            }
        }
        named.push((name, c));
    }
    FiniteClass::new(universe, named)
}

/// Serializes a class to the finite-class JSON document.
pub fn save_class(class: &FiniteClass) -> Vec<u8> {
    let doc = ClassDocOut {
        universe: class.universe.labels(),
        concepts: RowsOut(class),
    };
    serde_json::to_vec_pretty(&doc).expect("class serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, xs: &[usize]) -> Concept {
        Concept::from_indices(n, xs.iter().copied())
    }

    // Universe {1,2,3} is indexed 0..3.
    #[test]
    fn consistency_examples() {
        let l = c(3, &[0, 1]);
        let t = Sample::new([LabeledExample::positive(0), LabeledExample::negative(2)]).unwrap();
        assert!(is_consistent(&l, &t).unwrap());
        let t = Sample::new([LabeledExample::negative(1)]).unwrap();
        assert!(!is_consistent(&l, &t).unwrap());
        assert!(is_consistent(&c(3, &[]), &Sample::empty()).unwrap());
    }

    #[test]
    fn out_of_range_example_is_structural() {
        let t = Sample::positive([5]);
        assert!(matches!(is_consistent(&c(3, &[]), &t), Err(Error::Structural(_))));
    }

    #[test]
    fn conflicting_sample_rejected() {
        assert!(Sample::new([LabeledExample::positive(1), LabeledExample::negative(1)]).is_err());
    }

    #[test]
    fn distinguishes_examples() {
        let t = Sample::positive([0]);
        assert!(distinguishes(&t, &c(2, &[0]), &c(2, &[])).unwrap());
        assert!(!distinguishes(&Sample::empty(), &c(2, &[0]), &c(2, &[1])).unwrap());
        let t = Sample::new([LabeledExample::negative(1)]).unwrap();
        assert!(distinguishes(&t, &c(2, &[0]), &c(2, &[0, 1])).unwrap());
    }

    #[test]
    fn difference_witness_examples() {
        let w = difference_witnesses(&c(2, &[0]), &c(2, &[1])).unwrap();
        assert_eq!(
            w,
            Sample::new([LabeledExample::positive(0), LabeledExample::negative(1)]).unwrap()
        );
        let w = difference_witnesses(&c(2, &[0, 1]), &c(2, &[0])).unwrap();
        assert_eq!(w, Sample::positive([1]));
        let w = difference_witnesses(&c(3, &[]), &c(3, &[0, 1, 2])).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.negatives().eq([0, 1, 2]));
        assert!(difference_witnesses(&c(2, &[0]), &c(2, &[0])).is_err());
    }

    #[test]
    fn load_minimal_document() {
        let class = load_class(br#"{"universe": ["a","b"], "concepts": {"L1": [1,0]}}"#).unwrap();
        assert_eq!(class.len(), 1);
        assert_eq!(class.name(0), "L1");
        assert!(class.concept(0).contains(0));
        assert!(!class.concept(0).contains(1));
    }

    #[test]
    fn load_rejects_bad_rows() {
        let dup = br#"{"universe": ["a","b"], "concepts": {"L1": [1,0], "L2": [1,0]}}"#;
        let err = load_class(dup).unwrap_err().to_string();
        assert!(err.contains("L2"), "{err}");
        let short = br#"{"universe": ["a","b"], "concepts": {"X": [1]}}"#;
        assert!(load_class(short).unwrap_err().to_string().contains("\"X\""));
        let bad = br#"{"universe": ["a"], "concepts": {"Y": [2]}}"#;
        assert!(load_class(bad).unwrap_err().to_string().contains("\"Y\""));
        let dup_name = br#"{"universe": ["a"], "concepts": {"Z": [1], "Z": [0]}}"#;
        assert!(load_class(dup_name).is_err());
        let dup_label = br#"{"universe": ["a","a"], "concepts": {}}"#;
        assert!(load_class(dup_label).is_err());
        assert!(load_class(b"{").is_err());
    }

    #[test]
    fn powerset_round_trip() {
        let masks: Vec<u64> = (0..8).collect();
        let class = FiniteClass::from_masks(3, &masks).unwrap();
        let back = load_class(&save_class(&class)).unwrap();
        assert_eq!(back, class);
    }
}
