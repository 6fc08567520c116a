//! Problem data model: classes of items with sampled weights, capacity and
//! confidence level, plus validation and JSON (de)serialization.
//!
//! Instances are immutable after load and safe to share across threads.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One selectable item: a fixed cost and `L` weight samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub cost: f64,
    /// Weight samples in original order.
    pub samples: Vec<f64>,
    /// Same values sorted non-increasing, ties kept in original order.
    /// Required by the exact evaluator and fast screening.
    pub samples_desc: Vec<f64>,
}

impl Item {
    pub fn new(cost: f64, samples: Vec<f64>) -> Self {
        let mut order: Vec<usize> = (0..samples.len()).collect();
        // Stable descending sort; ties broken by original sample index.
        order.sort_by(|&a, &b| samples[b].total_cmp(&samples[a]).then(a.cmp(&b)));
        let samples_desc = order.iter().map(|&i| samples[i]).collect();
        Self { cost, samples, samples_desc }
    }

    pub fn min_sample(&self) -> f64 {
        *self.samples_desc.last().expect("non-empty samples")
    }

    pub fn max_sample(&self) -> f64 {
        self.samples_desc[0]
    }
}

/// A class of items from which exactly one must be picked.
#[derive(Debug, Clone, PartialEq)]
pub struct Class {
    pub items: Vec<Item>,
}

impl Class {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// A DDCCMCKP instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub num_classes: usize,
    pub classes: Vec<Class>,
    /// Capacity, same unit as the samples.
    pub capacity: f64,
    /// Required confidence level, in (0,1).
    pub confidence_level: f64,
    /// Number of samples per item, identical for every item.
    pub sample_count: usize,
}

/// A candidate solution: one picked item index per class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub picks: Vec<usize>,
}

impl Solution {
    pub fn new(picks: Vec<usize>) -> Self {
        Self { picks }
    }
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
}

impl InstanceError {
    fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Validation { path: path.into(), message: message.into() }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("solution has {got} picks, instance has {expected} classes")]
    WrongLength { got: usize, expected: usize },
    #[error("class {class}: pick {pick} out of range (class has {size} items)")]
    PickOutOfRange { class: usize, pick: usize, size: usize },
}

// Wire format. Unknown keys are rejected; field order is irrelevant.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    m: usize,
    #[serde(rename = "W")]
    w: f64,
    #[serde(rename = "P0")]
    p0: f64,
    #[serde(rename = "L")]
    l: usize,
    classes: Vec<Vec<ItemDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItemDoc {
    cost: f64,
    samples: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionDoc {
    picks: Vec<usize>,
}

/// Load and validate an instance from its JSON document.
pub fn load_instance(source: &[u8]) -> Result<Instance, InstanceError> {
    let doc: InstanceDoc = serde_json::from_slice(source)?;
    let classes = doc
        .classes
        .into_iter()
        .map(|items| Class {
            items: items.into_iter().map(|i| Item::new(i.cost, i.samples)).collect(),
        })
        .collect();
    let instance = Instance {
        num_classes: doc.m,
        classes,
        capacity: doc.w,
        confidence_level: doc.p0,
        sample_count: doc.l,
    };
    instance.validate()?;
    Ok(instance)
}

/// Serialize an instance to its JSON document.
pub fn serialize_instance(instance: &Instance) -> Vec<u8> {
    let doc = InstanceDoc {
        m: instance.num_classes,
        w: instance.capacity,
        p0: instance.confidence_level,
        l: instance.sample_count,
        classes: instance
            .classes
            .iter()
            .map(|c| {
                c.items
                    .iter()
                    .map(|i| ItemDoc { cost: i.cost, samples: i.samples.clone() })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_vec_pretty(&doc).expect("instance serializes")
}

pub fn load_solution(source: &[u8]) -> Result<Solution, InstanceError> {
    let doc: SolutionDoc = serde_json::from_slice(source)?;
    Ok(Solution::new(doc.picks))
}

pub fn serialize_solution(solution: &Solution) -> Vec<u8> {
    serde_json::to_vec(&SolutionDoc { picks: solution.picks.clone() }).expect("solution serializes")
}

impl Instance {
    /// Check every structural invariant, including the non-triviality band
    /// on the capacity.
    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.num_classes == 0 {
            return Err(InstanceError::invalid("m", "must be positive"));
        }
        if self.classes.len() != self.num_classes {
            return Err(InstanceError::invalid(
                "classes",
                format!("expected {} classes, found {}", self.num_classes, self.classes.len()),
            ));
        }
        if self.sample_count == 0 {
            return Err(InstanceError::invalid("L", "must be positive"));
        }
        if !self.capacity.is_finite() || self.capacity < 0.0 {
            return Err(InstanceError::invalid("W", "must be a finite nonnegative number"));
        }
        if !(self.confidence_level > 0.0 && self.confidence_level < 1.0) {
            return Err(InstanceError::invalid("P0", "must lie strictly between 0 and 1"));
        }
        for (ci, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(InstanceError::invalid(format!("classes[{ci}]"), "class is empty"));
            }
            for (ji, item) in class.items.iter().enumerate() {
                let path = format!("classes[{ci}][{ji}]");
                if !item.cost.is_finite() || item.cost < 0.0 {
                    return Err(InstanceError::invalid(
                        format!("{path}.cost"),
                        "must be a finite nonnegative number",
                    ));
                }
                if item.samples.len() != self.sample_count {
                    return Err(InstanceError::invalid(
                        format!("{path}.samples"),
                        format!("expected {} samples, found {}", self.sample_count, item.samples.len()),
                    ));
                }
                if let Some(bad) = item.samples.iter().find(|s| !s.is_finite() || **s < 0.0) {
                    return Err(InstanceError::invalid(
                        format!("{path}.samples"),
                        format!("sample {bad} is not a finite nonnegative number"),
                    ));
                }
            }
        }
        let (lo, hi) = self.nontriviality_bounds();
        if self.capacity < lo {
            return Err(InstanceError::invalid(
                "W",
                format!("capacity {} below non-triviality lower bound {lo} (sum of per-class minima)", self.capacity),
            ));
        }
        if self.capacity > hi {
            return Err(InstanceError::invalid(
                "W",
                format!("capacity {} above non-triviality upper bound {hi} (sum of per-class maxima)", self.capacity),
            ));
        }
        Ok(())
    }

    /// The legal capacity band: sum of per-class minimum samples to sum of
    /// per-class maximum samples.
    pub fn nontriviality_bounds(&self) -> (f64, f64) {
        let lo = self
            .classes
            .iter()
            .map(|c| c.items.iter().map(Item::min_sample).fold(f64::INFINITY, f64::min))
            .sum();
        let hi = self
            .classes
            .iter()
            .map(|c| c.items.iter().map(Item::max_sample).fold(f64::NEG_INFINITY, f64::max))
            .sum();
        (lo, hi)
    }

    /// `true` iff picks length matches and every pick index is in range.
    pub fn validate_solution(&self, solution: &Solution) -> Result<(), SolutionError> {
        if solution.picks.len() != self.num_classes {
            return Err(SolutionError::WrongLength {
                got: solution.picks.len(),
                expected: self.num_classes,
            });
        }
        for (class, &pick) in solution.picks.iter().enumerate() {
            let size = self.classes[class].len();
            if pick >= size {
                return Err(SolutionError::PickOutOfRange { class, pick, size });
            }
        }
        Ok(())
    }

    /// Total cost of the picked items.
    pub fn total_cost(&self, solution: &Solution) -> Result<f64, SolutionError> {
        self.validate_solution(solution)?;
        Ok(solution
            .picks
            .iter()
            .enumerate()
            .map(|(class, &pick)| self.classes[class].items[pick].cost)
            .sum())
    }

    pub fn picked_item(&self, solution: &Solution, class: usize) -> &Item {
        &self.classes[class].items[solution.picks[class]]
    }

    /// Class sizes, in order.
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Class::len).collect()
    }

    /// `L^m` as f64 (may be astronomically large; exact for small instances).
    pub fn combination_count(&self) -> f64 {
        (self.sample_count as f64).powi(self.num_classes as i32)
    }
}
