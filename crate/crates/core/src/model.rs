//! Panel data domain types.
//!
//! An ordinal panel data instance assigns every subject one category at each
//! of `m + 1` timestamps, and optionally orders the categories by a linear
//! ordering `sigma`. Subjects and categories keep their string labels at the
//! boundary; everything algorithmic works on dense indices.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("duplicate category label {0:?}")]
    DuplicateCategory(String),
    #[error("sigma is not a permutation of 0..{k}: {order:?}")]
    InvalidSigma { k: usize, order: Vec<usize> },
    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),
    #[error("element at position {position} of the subset does not occur in the permutation")]
    NotInPermutation { position: usize },
    #[error("permutation {index} is not a bijection over 0..{n}")]
    NotAPermutation { index: usize, n: usize },
    #[error("layout has {layout_timestamps} timestamps over {layout_subjects} subjects, instance has {instance_timestamps} over {instance_subjects}")]
    DimensionMismatch {
        layout_timestamps: usize,
        layout_subjects: usize,
        instance_timestamps: usize,
        instance_subjects: usize,
    },
    #[error("instance has no category ordering (sigma)")]
    MissingSigma,
    #[error("unknown category label {0:?}")]
    UnknownCategory(String),
}

/// The distinct category labels of an instance, indexed `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategorySet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl CategorySet {
    pub fn new<I, S>(labels: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(ModelError::DuplicateCategory(label.clone()));
            }
        }
        Ok(Self { labels, index })
    }

    /// Categories labelled `C1..Ck`.
    pub fn numbered(k: usize) -> Self {
        Self::new((1..=k).map(|i| format!("C{i}"))).expect("numbered labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }
}

/// A linear ordering of the categories.
///
/// Stored both ways: `order[p]` is the category at position `p` (lowest
/// first) and `rank[c]` is the position of category `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaOrdering {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl SigmaOrdering {
    pub fn identity(k: usize) -> Self {
        Self { order: (0..k).collect(), rank: (0..k).collect() }
    }

    /// Builds the ordering from categories listed lowest first.
    pub fn from_order(order: Vec<usize>) -> Result<Self, ModelError> {
        let k = order.len();
        let mut rank = vec![usize::MAX; k];
        for (p, &c) in order.iter().enumerate() {
            if c >= k || rank[c] != usize::MAX {
                return Err(ModelError::InvalidSigma { k, order });
            }
            rank[c] = p;
        }
        Ok(Self { order, rank })
    }

    /// Builds the ordering from the rank of every category.
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self, ModelError> {
        let inverse = Self::from_order(rank)?;
        Ok(Self { order: inverse.rank, rank: inverse.order })
    }

    pub fn reversed(&self) -> Self {
        let k = self.order.len();
        let order: Vec<usize> = self.order.iter().rev().copied().collect();
        let rank = self.rank.iter().map(|&r| k - 1 - r).collect();
        Self { order, rank }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn rank(&self, category: usize) -> usize {
        self.rank[category]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Categories from lowest to highest.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `true` iff `a` comes strictly before `b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }
}

/// One problem found by [`validate_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooFewTimestamps { found: usize },
    NoCategories,
    DuplicateCategory { label: String },
    DuplicateSubject { label: String, first: usize, second: usize },
    RaggedTest { timestamp: usize, expected: usize, found: usize },
    InvalidCategoryIndex { timestamp: usize, subject: usize, index: usize, categories: usize },
    InvalidSigma { order: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewTimestamps { found } => {
                write!(f, "need at least 2 timestamps, found {found}")
            }
            Violation::NoCategories => write!(f, "no categories"),
            Violation::DuplicateCategory { label } => write!(f, "duplicate category {label:?}"),
            Violation::DuplicateSubject { label, first, second } => {
                write!(f, "duplicate subject {label:?} (subjects {first} and {second})")
            }
            Violation::RaggedTest { timestamp, expected, found } => {
                write!(f, "test at timestamp {timestamp} assigns {found} subjects, expected {expected}")
            }
            Violation::InvalidCategoryIndex { timestamp, subject, index, categories } => write!(
                f,
                "invalid category index {index} for subject {subject} at timestamp {timestamp} (k = {categories})"
            ),
            Violation::InvalidSigma { order } => write!(f, "sigma {order:?} is not a permutation"),
        }
    }
}

/// Every invariant violation of a raw instance. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Unvalidated instance data, as read from a file or assembled by hand.
///
/// `tests[i][j]` is the category index of subject `j` at timestamp `i`;
/// `sigma`, when present, lists category indices lowest first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawInstance {
    pub subjects: Vec<String>,
    pub categories: Vec<String>,
    pub tests: Vec<Vec<usize>>,
    pub sigma: Option<Vec<usize>>,
}

pub fn validate_instance(raw: &RawInstance) -> ValidationReport {
    let mut violations = Vec::new();
    let k = raw.categories.len();
    let n = raw.subjects.len();

    if raw.tests.len() < 2 {
        violations.push(Violation::TooFewTimestamps { found: raw.tests.len() });
    }
    if k == 0 {
        violations.push(Violation::NoCategories);
    }

    let mut seen: HashMap<&str, usize> = HashMap::new();
    for label in &raw.categories {
        if seen.insert(label, 0).is_some() {
            violations.push(Violation::DuplicateCategory { label: label.clone() });
        }
    }

    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (j, label) in raw.subjects.iter().enumerate() {
        if let Some(&first) = seen.get(label.as_str()) {
            violations.push(Violation::DuplicateSubject { label: label.clone(), first, second: j });
        } else {
            seen.insert(label, j);
        }
    }

    for (i, row) in raw.tests.iter().enumerate() {
        if row.len() != n {
            violations.push(Violation::RaggedTest { timestamp: i, expected: n, found: row.len() });
        }
        for (j, &c) in row.iter().enumerate() {
            if c >= k {
                violations.push(Violation::InvalidCategoryIndex { timestamp: i, subject: j, index: c, categories: k });
            }
        }
    }

    if let Some(order) = &raw.sigma {
        if order.len() != k || SigmaOrdering::from_order(order.clone()).is_err() {
            violations.push(Violation::InvalidSigma { order: order.clone() });
        }
    }

    ValidationReport { violations }
}

/// A validated ordinal panel data instance `(S, C, T, sigma)`.
///
/// Immutable once built; `sigma` is optional because the category-order
/// optimizer works on plain panel data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpdInstance {
    subjects: Vec<String>,
    categories: CategorySet,
    tests: Vec<Vec<usize>>,
    sigma: Option<SigmaOrdering>,
}

impl TryFrom<RawInstance> for OpdInstance {
    type Error = ModelError;

    fn try_from(raw: RawInstance) -> Result<Self, ModelError> {
        let report = validate_instance(&raw);
        if !report.is_empty() {
            return Err(ModelError::InvalidInstance(report));
        }
        let categories = CategorySet::new(raw.categories)?;
        let sigma = raw.sigma.map(SigmaOrdering::from_order).transpose()?;
        Ok(Self { subjects: raw.subjects, categories, tests: raw.tests, sigma })
    }
}

impl OpdInstance {
    pub fn new(
        subjects: Vec<String>,
        categories: CategorySet,
        tests: Vec<Vec<usize>>,
        sigma: Option<SigmaOrdering>,
    ) -> Result<Self, ModelError> {
        OpdInstance::try_from(RawInstance {
            subjects,
            categories: categories.labels,
            tests,
            sigma: sigma.map(|s| s.order),
        })
    }

    /// Instance with subjects `s1..sn`, categories `C1..Ck` and identity sigma.
    pub fn from_matrix(k: usize, tests: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        let n = tests.first().map_or(0, Vec::len);
        Self::new(
            (1..=n).map(|j| format!("s{j}")).collect(),
            CategorySet::numbered(k),
            tests,
            Some(SigmaOrdering::identity(k)),
        )
    }

    /// Builds an instance from per-subject trajectories of category labels,
    /// with categories ordered as given.
    pub fn from_trajectories(categories: &[&str], trajectories: &[(&str, &[&str])]) -> Result<Self, ModelError> {
        let set = CategorySet::new(categories.iter().copied())?;
        let steps = trajectories.iter().map(|(_, t)| t.len()).max().unwrap_or(0);
        let tests = (0..steps)
            .map(|i| {
                trajectories
                    .iter()
                    .filter_map(|(_, t)| t.get(i))
                    .map(|label| set.index_of(label).ok_or_else(|| ModelError::UnknownCategory(label.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let k = set.len();
        Self::new(
            trajectories.iter().map(|(s, _)| s.to_string()).collect(),
            set,
            tests,
            Some(SigmaOrdering::identity(k)),
        )
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            subjects: self.subjects.clone(),
            categories: self.categories.labels.clone(),
            tests: self.tests.clone(),
            sigma: self.sigma.as_ref().map(|s| s.order.clone()),
        }
    }

    pub fn with_sigma(&self, sigma: SigmaOrdering) -> Result<Self, ModelError> {
        if sigma.len() != self.categories.len() {
            return Err(ModelError::InvalidSigma { k: self.categories.len(), order: sigma.order });
        }
        Ok(Self { sigma: Some(sigma), ..self.clone() })
    }

    pub fn without_sigma(&self) -> Self {
        Self { sigma: None, ..self.clone() }
    }

    /// Relabels subjects: subject `j` of the result is subject `perm[j]` of `self`.
    pub fn permute_subjects(&self, perm: &[usize]) -> Result<Self, ModelError> {
        check_permutation(perm, self.num_subjects(), 0)?;
        Ok(Self {
            subjects: perm.iter().map(|&j| self.subjects[j].clone()).collect(),
            tests: self.tests.iter().map(|row| perm.iter().map(|&j| row[j]).collect()).collect(),
            ..self.clone()
        })
    }

    pub fn subjects(&self) -> &[String] {
        &self.subjects
    }

    pub fn categories(&self) -> &CategorySet {
        &self.categories
    }

    pub fn tests(&self) -> &[Vec<usize>] {
        &self.tests
    }

    pub fn sigma(&self) -> Option<&SigmaOrdering> {
        self.sigma.as_ref()
    }

    pub fn require_sigma(&self) -> Result<&SigmaOrdering, ModelError> {
        self.sigma.as_ref().ok_or(ModelError::MissingSigma)
    }

    /// `t_i(s)`.
    pub fn category(&self, timestamp: usize, subject: usize) -> usize {
        self.tests[timestamp][subject]
    }

    /// Number of subjects `n`.
    pub fn num_subjects(&self) -> usize {
        self.subjects.len()
    }

    /// Number of categories `k`.
    pub fn num_categories(&self) -> usize {
        self.categories.len()
    }

    /// Number of timestamps `m + 1`.
    pub fn num_timestamps(&self) -> usize {
        self.tests.len()
    }

    /// Number of intervals `m`.
    pub fn num_intervals(&self) -> usize {
        self.tests.len() - 1
    }

    /// `true` iff no subject ever moves to a lower category.
    pub fn is_consistent(&self) -> Result<bool, ModelError> {
        let sigma = self.require_sigma()?;
        Ok(self.tests.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(&a, &b)| sigma.rank(a) <= sigma.rank(b))))
    }
}

/// One subject permutation per timestamp, listed from the lowest position up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombinatorialLayout {
    pis: Vec<Vec<usize>>,
}

impl CombinatorialLayout {
    pub fn new(pis: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        let n = pis.first().map_or(0, Vec::len);
        for (i, pi) in pis.iter().enumerate() {
            check_permutation(pi, n, i)?;
        }
        Ok(Self { pis })
    }

    pub fn pis(&self) -> &[Vec<usize>] {
        &self.pis
    }

    pub fn pi(&self, timestamp: usize) -> &[usize] {
        &self.pis[timestamp]
    }

    pub fn num_timestamps(&self) -> usize {
        self.pis.len()
    }

    pub fn num_subjects(&self) -> usize {
        self.pis.first().map_or(0, Vec::len)
    }

    pub fn into_pis(self) -> Vec<Vec<usize>> {
        self.pis
    }
}

fn check_permutation(pi: &[usize], n: usize, index: usize) -> Result<(), ModelError> {
    if pi.len() != n {
        return Err(ModelError::NotAPermutation { index, n });
    }
    let mut seen = vec![false; n];
    for &s in pi {
        if s >= n || std::mem::replace(&mut seen[s], true) {
            return Err(ModelError::NotAPermutation { index, n });
        }
    }
    Ok(())
}

/// `pi[Y]`: the elements of `subset` in the relative order given by `pi`.
pub fn induced_permutation<T>(pi: &[T], subset: &[T]) -> Result<Vec<T>, ModelError>
where
    T: Eq + Hash + Clone,
{
    let position: HashMap<&T, usize> = pi.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut keyed = subset
        .iter()
        .enumerate()
        .map(|(at, y)| position.get(y).map(|&p| (p, y.clone())).ok_or(ModelError::NotInPermutation { position: at }))
        .collect::<Result<Vec<_>, _>>()?;
    keyed.sort_by_key(|&(p, _)| p);
    Ok(keyed.into_iter().map(|(_, y)| y).collect())
}

pub(crate) fn check_dimensions(inst: &OpdInstance, layout: &CombinatorialLayout) -> Result<(), ModelError> {
    if layout.num_timestamps() != inst.num_timestamps() || layout.num_subjects() != inst.num_subjects() {
        return Err(ModelError::DimensionMismatch {
            layout_timestamps: layout.num_timestamps(),
            layout_subjects: layout.num_subjects(),
            instance_timestamps: inst.num_timestamps(),
            instance_subjects: inst.num_subjects(),
        });
    }
    Ok(())
}

/// Checks category consistency: at every timestamp, subjects in lower
/// categories come before subjects in higher ones.
pub fn layout_is_valid(inst: &OpdInstance, layout: &CombinatorialLayout) -> Result<bool, ModelError> {
    let sigma = inst.require_sigma()?;
    check_dimensions(inst, layout)?;
    Ok(layout
        .pis()
        .iter()
        .zip(inst.tests())
        .all(|(pi, test)| pi.windows(2).all(|w| sigma.rank(test[w[0]]) <= sigma.rank(test[w[1]]))))
}

/// `S(t_i, C)` in subject-index order.
pub fn subjects_in_category(inst: &OpdInstance, timestamp: usize, category: usize) -> Vec<usize> {
    inst.tests()[timestamp].iter().enumerate().filter_map(|(s, &c)| (c == category).then_some(s)).collect()
}
