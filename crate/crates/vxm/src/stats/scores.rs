use std::collections::BTreeMap;
use std::fmt;

use crate::io::ScoreRecord;

use super::StatsError;

/// The human judging categories plus the derived overall score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreCategory {
    Overall,
    Adaptability,
    Functionality,
    Narrative,
    Aesthetic,
}

impl ScoreCategory {
    pub const ALL: [ScoreCategory; 5] = [
        ScoreCategory::Overall,
        ScoreCategory::Adaptability,
        ScoreCategory::Functionality,
        ScoreCategory::Narrative,
        ScoreCategory::Aesthetic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScoreCategory::Overall => "overall",
            ScoreCategory::Adaptability => "adaptability",
            ScoreCategory::Functionality => "functionality",
            ScoreCategory::Narrative => "narrative",
            ScoreCategory::Aesthetic => "aesthetic",
        }
    }
}

impl fmt::Display for ScoreCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-generator category means over all judges, with the overall score as
/// the mean of the four category means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreMeans {
    pub adaptability: f64,
    pub functionality: f64,
    pub narrative: f64,
    pub aesthetic: f64,
    pub overall: f64,
    pub judges: usize,
}

impl ScoreMeans {
    pub fn value(&self, category: ScoreCategory) -> f64 {
        match category {
            ScoreCategory::Overall => self.overall,
            ScoreCategory::Adaptability => self.adaptability,
            ScoreCategory::Functionality => self.functionality,
            ScoreCategory::Narrative => self.narrative,
            ScoreCategory::Aesthetic => self.aesthetic,
        }
    }
}

/// Judge score means keyed by generator.
#[derive(Debug, Clone, Default)]
pub struct HumanScores {
    per_generator: BTreeMap<String, ScoreMeans>,
}

impl HumanScores {
    pub fn get(&self, generator: &str) -> Option<&ScoreMeans> {
        self.per_generator.get(generator)
    }

    /// Sorted generator ids.
    pub fn generators(&self) -> Vec<&str> {
        self.per_generator.keys().map(|k| k.as_str()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ScoreMeans)> {
        self.per_generator.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.per_generator.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_generator.is_empty()
    }
}

/// Average the judges per generator: a simple mean per category across all
/// of a generator's records, then the overall score as the mean of the four
/// category means.
pub fn overall_score(records: &[ScoreRecord]) -> Result<HumanScores, StatsError> {
    if records.is_empty() {
        return Err(StatsError::Empty);
    }
    let mut grouped: BTreeMap<&str, Vec<&ScoreRecord>> = BTreeMap::new();
    for record in records {
        grouped.entry(record.generator.as_str()).or_default().push(record);
    }
    let per_generator = grouped
        .into_iter()
        .map(|(generator, records)| {
            let n = records.len() as f64;
            let mean = |f: fn(&ScoreRecord) -> f64| records.iter().map(|r| f(r)).sum::<f64>() / n;
            let adaptability = mean(|r| r.adaptability);
            let functionality = mean(|r| r.functionality);
            let narrative = mean(|r| r.narrative);
            let aesthetic = mean(|r| r.aesthetic);
            let means = ScoreMeans {
                adaptability,
                functionality,
                narrative,
                aesthetic,
                overall: (adaptability + functionality + narrative + aesthetic) / 4.0,
                judges: records.len(),
            };
            (generator.to_string(), means)
        })
        .collect();
    Ok(HumanScores { per_generator })
}

/// Like [`overall_score`], but every requested generator must have at least
/// one record.
pub fn overall_score_for(
    records: &[ScoreRecord],
    generators: &[&str],
) -> Result<HumanScores, StatsError> {
    let scores = overall_score(records)?;
    for &generator in generators {
        if scores.get(generator).is_none() {
            return Err(StatsError::MissingGenerator(generator.to_string()));
        }
    }
    Ok(scores)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(generator: &str, judge: &str, scores: [f64; 4]) -> ScoreRecord {
        ScoreRecord {
            generator: generator.to_string(),
            judge: judge.to_string(),
            year: 2020,
            adaptability: scores[0],
            functionality: scores[1],
            narrative: scores[2],
            aesthetic: scores[3],
        }
    }

    #[test]
    fn overall_is_mean_of_four() {
        let scores = overall_score(&[record("g", "j1", [8.0, 6.0, 4.0, 2.0])]).unwrap();
        assert_eq!(scores.get("g").unwrap().overall, 5.0);
    }

    #[test]
    fn judges_average_per_category() {
        let scores = overall_score(&[
            record("g", "j1", [4.0, 4.0, 4.0, 4.0]),
            record("g", "j2", [6.0, 6.0, 6.0, 6.0]),
        ])
        .unwrap();
        let means = scores.get("g").unwrap();
        assert_eq!(means.adaptability, 5.0);
        assert_eq!(means.overall, 5.0);
        assert_eq!(means.judges, 2);
    }

    #[test]
    fn uneven_judge_counts_are_simple_means() {
        // Three judges for one generator, one for the other; each
        // generator's mean uses only its own judges.
        let scores = overall_score(&[
            record("a", "j1", [2.0, 2.0, 2.0, 2.0]),
            record("a", "j2", [4.0, 4.0, 4.0, 4.0]),
            record("a", "j3", [6.0, 6.0, 6.0, 6.0]),
            record("b", "j1", [9.0, 9.0, 9.0, 9.0]),
        ])
        .unwrap();
        assert_eq!(scores.get("a").unwrap().overall, 4.0);
        assert_eq!(scores.get("b").unwrap().overall, 9.0);
    }

    #[test]
    fn missing_generator_reported() {
        let records = [record("a", "j1", [5.0, 5.0, 5.0, 5.0])];
        let err = overall_score_for(&records, &["a", "ghost"]).unwrap_err();
        assert!(matches!(err, StatsError::MissingGenerator(name) if name == "ghost"));
    }

    #[test]
    fn empty_records_error() {
        assert!(matches!(overall_score(&[]), Err(StatsError::Empty)));
    }
}
