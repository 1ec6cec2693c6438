//! Scoring predictions against gold labels and the per-category
//! Precision / Recall / F-measure report.
//!
//! * `P  = responded / total`
//! * `R  = right / total`
//! * `FM = 2·P·R / (P + R)`, and 0 when `P + R = 0`
//!
//! A category with no sentences has all three as `NA`. Values are kept as
//! exact fractions and only rounded when rendered: two decimals, halves
//! rounded away from zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label of the aggregate row.
pub const OVERALL: &str = "OVER ALL";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldRecord {
    pub id: String,
    #[serde(default)]
    pub text: String,
    pub class_id: String,
    pub category: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub right: u64,
    pub wrong: u64,
}

/// Right/wrong counts for one category, bucketed by gold class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryCounts {
    pub category: String,
    pub total: u64,
    /// In class declaration order.
    pub per_class: Vec<(String, ClassCounts)>,
    /// Instances the system produced any answer for.
    pub responded: u64,
}

impl CategoryCounts {
    pub fn total_right(&self) -> u64 {
        self.per_class.iter().map(|(_, c)| c.right).sum()
    }

    pub fn total_wrong(&self) -> u64 {
        self.per_class.iter().map(|(_, c)| c.wrong).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub class_ids: Vec<String>,
    /// Sorted by category name.
    pub categories: Vec<CategoryCounts>,
}

/// Buckets every gold instance by category and gold class. A prediction is
/// right iff its class equals the gold class; gold instances without a
/// prediction count as wrong and as not responded.
pub fn score(
    predictions: &[(String, String)],
    gold: &[GoldRecord],
    class_ids: &[String],
) -> Result<CountTable> {
    let mut gold_ids = BTreeSet::new();
    for g in gold {
        if !gold_ids.insert(g.id.as_str()) {
            return Err(Error::Integrity(format!("duplicate gold id `{}`", g.id)));
        }
        if !class_ids.contains(&g.class_id) {
            return Err(Error::Integrity(format!(
                "gold id `{}` has unknown class `{}`",
                g.id, g.class_id
            )));
        }
    }

    let mut predicted: BTreeMap<&str, &str> = BTreeMap::new();
    let mut unknown = Vec::new();
    for (id, class_id) in predictions {
        if !gold_ids.contains(id.as_str()) {
            unknown.push(id.as_str());
        } else if predicted.insert(id, class_id).is_some() {
            return Err(Error::Integrity(format!(
                "duplicate prediction for id `{id}`"
            )));
        }
    }
    if !unknown.is_empty() {
        return Err(Error::Integrity(format!(
            "predictions for unknown ids: {}",
            unknown.join(", ")
        )));
    }

    let mut categories: BTreeMap<&str, CategoryCounts> = BTreeMap::new();
    for g in gold {
        let entry = categories
            .entry(&g.category)
            .or_insert_with(|| CategoryCounts {
                category: g.category.clone(),
                total: 0,
                per_class: class_ids
                    .iter()
                    .map(|c| (c.clone(), ClassCounts::default()))
                    .collect(),
                responded: 0,
            });
        entry.total += 1;
        let answer = predicted.get(g.id.as_str());
        if answer.is_some() {
            entry.responded += 1;
        }
        let bucket = &mut entry
            .per_class
            .iter_mut()
            .find(|(c, _)| *c == g.class_id)
            .expect("checked above")
            .1;
        if answer == Some(&g.class_id.as_str()) {
            bucket.right += 1;
        } else {
            bucket.wrong += 1;
        }
    }

    Ok(CountTable {
        class_ids: class_ids.to_vec(),
        categories: categories.into_values().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryMetrics {
    pub category: String,
    pub total: u64,
    pub per_class: Vec<(String, ClassCounts)>,
    pub total_right: u64,
    pub total_wrong: u64,
    pub responded: u64,
    pub precision: Option<Ratio<u64>>,
    pub recall: Option<Ratio<u64>>,
    pub f_measure: Option<Ratio<u64>>,
}

fn to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl CategoryMetrics {
    pub fn precision_f64(&self) -> Option<f64> {
        self.precision.map(to_f64)
    }

    pub fn recall_f64(&self) -> Option<f64> {
        self.recall.map(to_f64)
    }

    pub fn f_measure_f64(&self) -> Option<f64> {
        self.f_measure.map(to_f64)
    }

    /// Right answers among the gold instances of one class. Not part of
    /// P/R/FM; reported as an extra column.
    pub fn class_accuracy(&self, class_id: &str) -> Option<Ratio<u64>> {
        let (_, c) = self.per_class.iter().find(|(id, _)| id == class_id)?;
        let n = c.right + c.wrong;
        (n > 0).then(|| Ratio::new(c.right, n))
    }
}

/// `2PR / (P + R)`, or 0 when both are 0.
pub fn f_measure(p: Ratio<u64>, r: Ratio<u64>) -> Ratio<u64> {
    let sum = p + r;
    if sum == Ratio::from_integer(0) {
        Ratio::from_integer(0)
    } else {
        Ratio::from_integer(2) * p * r / sum
    }
}

pub fn compute_metrics(counts: &CategoryCounts, responded: u64) -> Result<CategoryMetrics> {
    let total_right = counts.total_right();
    let total_wrong = counts.total_wrong();
    if total_right + total_wrong != counts.total {
        return Err(Error::InvalidArgument(format!(
            "{}: right {total_right} + wrong {total_wrong} != total {}",
            counts.category, counts.total
        )));
    }
    if responded > counts.total {
        return Err(Error::InvalidArgument(format!(
            "{}: responded {responded} exceeds total {}",
            counts.category, counts.total
        )));
    }

    let (precision, recall, f) = if counts.total == 0 {
        (None, None, None)
    } else {
        let p = Ratio::new(responded, counts.total);
        let r = Ratio::new(total_right, counts.total);
        (Some(p), Some(r), Some(f_measure(p, r)))
    };

    Ok(CategoryMetrics {
        category: counts.category.clone(),
        total: counts.total,
        per_class: counts.per_class.clone(),
        total_right,
        total_wrong,
        responded,
        precision,
        recall,
        f_measure: f,
    })
}

/// Two decimals, halves away from zero, computed on the exact fraction.
pub fn round2(value: Ratio<u64>) -> String {
    let (n, d) = (*value.numer() as u128, *value.denom() as u128);
    let hundredths = (200 * n + d) / (2 * d);
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

fn cell(value: Option<Ratio<u64>>) -> String {
    value.map(round2).unwrap_or_else(|| "NA".to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationReport {
    pub class_ids: Vec<String>,
    /// Sorted by category name.
    pub rows: Vec<CategoryMetrics>,
    pub overall: CategoryMetrics,
}

pub fn build_report(
    metrics: Vec<CategoryMetrics>,
    class_ids: &[String],
) -> Result<EvaluationReport> {
    let mut rows = metrics;
    rows.sort_by(|a, b| a.category.cmp(&b.category));
    if let Some(w) = rows.windows(2).find(|w| w[0].category == w[1].category) {
        return Err(Error::Integrity(format!(
            "duplicate category `{}`",
            w[0].category
        )));
    }

    let mut per_class: Vec<(String, ClassCounts)> = class_ids
        .iter()
        .map(|c| (c.clone(), ClassCounts::default()))
        .collect();
    for row in &rows {
        for (class_id, counts) in &row.per_class {
            let slot = per_class
                .iter_mut()
                .find(|(c, _)| c == class_id)
                .ok_or_else(|| {
                    Error::Integrity(format!("{}: unknown class `{class_id}`", row.category))
                })?;
            slot.1.right += counts.right;
            slot.1.wrong += counts.wrong;
        }
    }
    let aggregate = CategoryCounts {
        category: OVERALL.to_string(),
        total: rows.iter().map(|r| r.total).sum(),
        per_class,
        responded: rows.iter().map(|r| r.responded).sum(),
    };
    let overall = compute_metrics(&aggregate, aggregate.responded)?;

    Ok(EvaluationReport {
        class_ids: class_ids.to_vec(),
        rows,
        overall,
    })
}

/// Scores and reports in one go.
pub fn evaluate(
    predictions: &[(String, String)],
    gold: &[GoldRecord],
    class_ids: &[String],
) -> Result<EvaluationReport> {
    let table = score(predictions, gold, class_ids)?;
    let metrics = table
        .categories
        .iter()
        .map(|c| compute_metrics(c, c.responded))
        .collect::<Result<Vec<_>>>()?;
    build_report(metrics, &table.class_ids)
}

impl EvaluationReport {
    pub fn header(&self) -> Vec<String> {
        let mut header = vec!["category".to_string(), "total".to_string()];
        for c in &self.class_ids {
            header.push(format!("right_{c}"));
            header.push(format!("wrong_{c}"));
        }
        header.extend(["total_right", "total_wrong", "P", "R", "FM"].map(String::from));
        header
    }

    fn record(&self, m: &CategoryMetrics) -> Vec<String> {
        let mut record = vec![m.category.clone(), m.total.to_string()];
        for c in &self.class_ids {
            let counts = m
                .per_class
                .iter()
                .find(|(id, _)| id == c)
                .map(|(_, n)| *n)
                .unwrap_or_default();
            record.push(counts.right.to_string());
            record.push(counts.wrong.to_string());
        }
        record.push(m.total_right.to_string());
        record.push(m.total_wrong.to_string());
        record.push(cell(m.precision));
        record.push(cell(m.recall));
        record.push(cell(m.f_measure));
        record
    }

    fn all_rows(&self) -> impl Iterator<Item = &CategoryMetrics> {
        self.rows.iter().chain(std::iter::once(&self.overall))
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(self.header()).expect("in-memory write");
        for m in self.all_rows() {
            writer
                .write_record(self.record(m))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("UTF-8 input")
    }

    /// Space-aligned table, followed by per-class accuracy as a separate
    /// block.
    pub fn to_table(&self) -> String {
        let mut grid = vec![self.header()];
        grid.extend(self.all_rows().map(|m| self.record(m)));
        let mut out = render_grid(&grid);

        out.push('\n');
        let mut extra = vec![std::iter::once("category".to_string())
            .chain(self.class_ids.iter().map(|c| format!("acc_{c}")))
            .collect::<Vec<_>>()];
        for m in self.all_rows() {
            extra.push(
                std::iter::once(m.category.clone())
                    .chain(self.class_ids.iter().map(|c| cell(m.class_accuracy(c))))
                    .collect(),
            );
        }
        out.push_str("extra: per-class accuracy (right / gold instances of the class)\n");
        out.push_str(&render_grid(&extra));
        out
    }

    pub fn summary_line(&self) -> String {
        format!(
            "P={} R={} FM={}",
            cell(self.overall.precision),
            cell(self.overall.recall),
            cell(self.overall.f_measure)
        )
    }
}

fn render_grid(grid: &[Vec<String>]) -> String {
    let columns = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|i| {
            grid.iter()
                .filter_map(|r| r.get(i))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in grid {
        let mut line = String::new();
        for (i, value) in row.iter().enumerate() {
            let pad = widths[i] - value.chars().count();
            if i == 0 {
                let _ = write!(line, "{value}{}", " ".repeat(pad));
            } else {
                let _ = write!(line, "  {}{value}", " ".repeat(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Reads a count table in the report's CSV layout. Only `category`, `total`
/// and the `right_<class>` / `wrong_<class>` columns are used, plus an
/// optional `responded` column (defaults to `total`); anything else is
/// ignored. Class order follows the `right_` columns.
pub fn parse_count_table(text: &str) -> Result<CountTable> {
    let text = text.strip_prefix('\u{FEFF}').unwrap_or(text);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::format(None, 1, e.to_string()))?
        .clone();
    let column = |name: &str| header.iter().position(|h| h == name);
    let category_col =
        column("category").ok_or_else(|| Error::format(None, 1, "missing `category` column"))?;
    let total_col =
        column("total").ok_or_else(|| Error::format(None, 1, "missing `total` column"))?;
    let responded_col = column("responded");

    let mut class_cols = Vec::new();
    for (i, h) in header.iter().enumerate() {
        if let Some(class_id) = h.strip_prefix("right_") {
            let wrong = column(&format!("wrong_{class_id}")).ok_or_else(|| {
                Error::format(None, 1, format!("missing `wrong_{class_id}` column"))
            })?;
            class_cols.push((class_id.to_string(), i, wrong));
        }
    }

    let mut categories = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let line = row + 2;
        let record = record.map_err(|e| Error::format(None, line, e.to_string()))?;
        let number = |col: usize| -> Result<u64> {
            let raw = record.get(col).unwrap_or("");
            raw.trim().parse().map_err(|_| {
                Error::format(None, line, format!("`{raw}` is not a non-negative count"))
            })
        };
        let total = number(total_col)?;
        let per_class = class_cols
            .iter()
            .map(|(c, r, w)| {
                Ok((
                    c.clone(),
                    ClassCounts {
                        right: number(*r)?,
                        wrong: number(*w)?,
                    },
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        categories.push(CategoryCounts {
            category: record.get(category_col).unwrap_or("").to_string(),
            total,
            per_class,
            responded: responded_col.map(number).transpose()?.unwrap_or(total),
        });
    }
    categories.sort_by(|a, b| a.category.cmp(&b.category));

    Ok(CountTable {
        class_ids: class_cols.into_iter().map(|(c, _, _)| c).collect(),
        categories,
    })
}
