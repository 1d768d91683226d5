use std::collections::BTreeSet;
use std::fmt;
use std::io;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sets::{build_relation, column_std_devs, FuzzyRelation, FuzzySet};

/// Which CSV column holds the class label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum LabelColumn {
    #[default]
    Last,
    Index(usize),
    Name(String),
}

impl FromStr for LabelColumn {
    type Err = Error;

    /// A number is a 0-based index, `last` the final column, anything else
    /// a header name.
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("last") {
            Ok(LabelColumn::Last)
        } else if let Ok(i) = s.parse::<usize>() {
            Ok(LabelColumn::Index(i))
        } else {
            Ok(LabelColumn::Name(s.to_string()))
        }
    }
}

#[derive(Clone, Debug)]
pub struct LoadOptions {
    pub delimiter: u8,
    pub label: LabelColumn,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            delimiter: b',',
            label: LabelColumn::Last,
        }
    }
}

/// Per-attribute scale `σ_a` used when building the similarity relation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scale {
    /// Population standard deviation of each feature column.
    StdDev,
    /// The same fixed scale for every attribute.
    Fixed(f64),
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("std") {
            return Ok(Scale::StdDev);
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => Ok(Scale::Fixed(v)),
            _ => Err(Error::InvalidParameter(format!(
                "scale must be 'std' or a positive number, got '{s}'"
            ))),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scale::StdDev => f.write_str("std"),
            Scale::Fixed(v) => write!(f, "{v}"),
        }
    }
}

/// A numeric classification dataset.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    name: String,
    feature_names: Vec<String>,
    features: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl Dataset {
    pub fn new(
        name: impl Into<String>,
        feature_names: Vec<String>,
        features: Vec<Vec<f64>>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let n = features.len();
        if n < 2 {
            return Err(Error::Dataset(format!(
                "need at least 2 instances, got {n}"
            )));
        }
        if labels.len() != n {
            return Err(Error::UniverseMismatch {
                expected: n,
                found: labels.len(),
            });
        }
        let m = feature_names.len();
        if m == 0 {
            return Err(Error::Dataset("no feature columns".into()));
        }
        for (i, row) in features.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Dataset(format!(
                    "instance {i} has {} features, expected {m}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Dataset(format!(
                    "instance {i} has a non-finite value"
                )));
            }
        }
        let ds = Self {
            name: name.into(),
            feature_names,
            features,
            labels,
        };
        if ds.classes().len() < 2 {
            return Err(Error::Dataset(
                "all instances carry the same class label".into(),
            ));
        }
        Ok(ds)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Distinct class labels in lexicographic order.
    pub fn classes(&self) -> Vec<String> {
        self.labels
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Crisp indicator set of one class.
    pub fn class_set(&self, label: &str) -> Result<FuzzySet> {
        if !self.labels.iter().any(|l| l == label) {
            return Err(Error::Dataset(format!("unknown class '{label}'")));
        }
        let degrees = self
            .labels
            .iter()
            .map(|l| if l == label { 1.0 } else { 0.0 })
            .collect();
        FuzzySet::new(degrees)
    }

    /// One crisp decision set per class, in [`classes`](Self::classes) order.
    pub fn decision_sets(&self) -> Vec<(String, FuzzySet)> {
        self.classes()
            .into_iter()
            .map(|c| {
                let set = self.class_set(&c).expect("class taken from labels");
                (c, set)
            })
            .collect()
    }

    pub fn std_devs(&self) -> Vec<f64> {
        column_std_devs(&self.features)
    }

    pub fn relation(&self, scale: Scale) -> Result<FuzzyRelation> {
        let sigmas = match scale {
            Scale::StdDev => self.std_devs(),
            Scale::Fixed(v) => vec![v; self.feature_names.len()],
        };
        build_relation(&self.features, &sigmas)
    }

    /// Parses CSV with a header row. `source` names the input in errors.
    pub fn from_reader<R: io::Read>(
        name: impl Into<String>,
        source: &str,
        reader: R,
        options: &LoadOptions,
    ) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new()
            .delimiter(options.delimiter)
            .has_headers(true)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let headers: Vec<String> = csv.headers()?.iter().map(str::to_string).collect();
        if headers.len() < 2 {
            return Err(Error::Dataset(format!(
                "{source}: need a label column and at least one feature column"
            )));
        }
        let label_idx = match &options.label {
            LabelColumn::Last => headers.len() - 1,
            LabelColumn::Index(i) if *i < headers.len() => *i,
            LabelColumn::Index(i) => {
                return Err(Error::Dataset(format!(
                    "{source}: label column index {i} out of range ({} columns)",
                    headers.len()
                )))
            }
            LabelColumn::Name(name) => headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::Dataset(format!("{source}: no column named '{name}'")))?,
        };
        let feature_names: Vec<String> = headers
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != label_idx)
            .map(|(_, h)| h.clone())
            .collect();

        let mut features = Vec::new();
        let mut labels = Vec::new();
        for record in csv.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let cell_error = |col: usize, message: String| Error::Ingestion {
                path: source.to_string(),
                row: line,
                column: headers[col].clone(),
                message,
            };
            if record.len() != headers.len() {
                let col = record.len().min(headers.len() - 1);
                return Err(cell_error(
                    col,
                    format!("expected {} cells, found {}", headers.len(), record.len()),
                ));
            }
            let mut row = Vec::with_capacity(feature_names.len());
            for (col, cell) in record.iter().enumerate() {
                if cell.is_empty() {
                    return Err(cell_error(col, "missing value".into()));
                }
                if col == label_idx {
                    labels.push(cell.to_string());
                    continue;
                }
                match cell.parse::<f64>() {
                    Ok(v) if v.is_finite() => row.push(v),
                    _ => return Err(cell_error(col, format!("'{cell}' is not a finite number"))),
                }
            }
            features.push(row);
        }
        Self::new(name, feature_names, features, labels)
    }
}

/// Loads a CSV dataset; the file stem becomes the dataset name.
pub fn load_dataset(path: impl AsRef<Path>, options: &LoadOptions) -> Result<Dataset> {
    let path = path.as_ref();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".into());
    let file = std::fs::File::open(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })?;
    Dataset::from_reader(name, &path.display().to_string(), file, options)
}
