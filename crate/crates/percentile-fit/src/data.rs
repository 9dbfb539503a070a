use crate::error::{Error, Result};

/// One observation: a feature vector and an optional scalar label.
///
/// Regression families read the label; location families (centroids, enclosing
/// balls) use the feature vector alone.
#[derive(Clone, Debug, PartialEq)]
pub struct DataPoint {
    feature: Vec<f64>,
    label: Option<f64>,
}

impl DataPoint {
    pub fn new(feature: Vec<f64>, label: Option<f64>) -> Result<Self> {
        if feature.is_empty() {
            return Err(Error::DimensionMismatch {
                context: "data point feature",
                expected: 1,
                actual: 0,
            });
        }
        if !feature.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "data point feature",
            });
        }
        if let Some(y) = label {
            if !y.is_finite() {
                return Err(Error::NonFinite {
                    context: "data point label",
                });
            }
        }
        Ok(Self { feature, label })
    }

    pub fn feature(&self) -> &[f64] {
        &self.feature
    }

    pub fn label(&self) -> Option<f64> {
        self.label
    }
}

/// An ordered collection of points with uniform dimension and labeling.
///
/// Point indices are 0-based and stable under iteration; user-facing output
/// shifts them to 1-based at the serialization boundary.
#[derive(Clone, Debug)]
pub struct Dataset {
    points: Vec<DataPoint>,
    dim: usize,
    labeled: bool,
}

impl Dataset {
    pub fn new(points: Vec<DataPoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyDataset)?;
        let dim = first.feature().len();
        let labeled = first.label().is_some();
        for p in &points {
            if p.feature().len() != dim {
                return Err(Error::RaggedFeatures);
            }
            if p.label().is_some() != labeled {
                return Err(Error::MixedLabels);
            }
        }
        Ok(Self {
            points,
            dim,
            labeled,
        })
    }

    /// Unlabeled dataset from raw feature rows.
    pub fn from_features(rows: Vec<Vec<f64>>) -> Result<Self> {
        let points = rows
            .into_iter()
            .map(|row| DataPoint::new(row, None))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    /// Labeled dataset from feature rows and matching labels.
    pub fn from_rows(rows: Vec<Vec<f64>>, labels: Vec<f64>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                context: "labels",
                expected: rows.len(),
                actual: labels.len(),
            });
        }
        let points = rows
            .into_iter()
            .zip(labels)
            .map(|(row, y)| DataPoint::new(row, Some(y)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn feature_dim(&self) -> usize {
        self.dim
    }

    pub fn labeled(&self) -> bool {
        self.labeled
    }

    pub fn point(&self, index: usize) -> &DataPoint {
        &self.points[index]
    }

    pub fn points(&self) -> &[DataPoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DataPoint> {
        self.points.iter()
    }

    /// Checks that `subset` holds strictly increasing, in-range indices.
    pub(crate) fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut prev: Option<usize> = None;
        for &i in subset {
            if i >= self.points.len() {
                return Err(Error::SubsetIndexOutOfRange {
                    index: i,
                    len: self.points.len(),
                });
            }
            if let Some(p) = prev {
                if i == p {
                    return Err(Error::DuplicateSubsetIndex { index: i });
                }
                if i < p {
                    // Accept any order but reject duplicates: sort a scratch copy.
                    let mut sorted = subset.to_vec();
                    sorted.sort_unstable();
                    for w in sorted.windows(2) {
                        if w[0] == w[1] {
                            return Err(Error::DuplicateSubsetIndex { index: w[0] });
                        }
                    }
                    return Ok(());
                }
            }
            prev = Some(i);
        }
        Ok(())
    }
}
